#include "cli_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hermite/errors.hpp"

namespace hermlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string ConfigSection::raw(const std::string& key) {
  used_.insert(key);
  auto it = kv_.find(key);
  if (it == kv_.end())
    throw hermite::ParameterError("config [" + name_ + "]: missing key '" +
                                  key + "'");
  return it->second;
}

std::string ConfigSection::get_string(const std::string& key,
                                      const std::string& dflt) {
  used_.insert(key);
  auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

std::string ConfigSection::require_string(const std::string& key) {
  return raw(key);
}

double ConfigSection::get_double(const std::string& key, double dflt) {
  used_.insert(key);
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw hermite::ParameterError("config [" + name_ + "]: key '" + key +
                                  "' is not a number: " + it->second);
  }
}

long ConfigSection::get_long(const std::string& key, long dflt) {
  used_.insert(key);
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    std::size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw hermite::ParameterError("config [" + name_ + "]: key '" + key +
                                  "' is not an integer: " + it->second);
  }
}

std::uint64_t ConfigSection::get_seed(const std::string& key,
                                      std::uint64_t dflt) {
  const long v = get_long(key, static_cast<long>(dflt));
  if (v < 0)
    throw hermite::ParameterError("config [" + name_ + "]: seed must be >= 0");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> ConfigSection::get_double_list(const std::string& key,
                                                   std::vector<double> dflt) {
  used_.insert(key);
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw hermite::ParameterError("config [" + name_ + "]: bad list entry '" +
                                    item + "' for key '" + key + "'");
    }
  }
  if (out.empty())
    throw hermite::ParameterError("config [" + name_ + "]: empty list for '" +
                                  key + "'");
  return out;
}

std::vector<int> ConfigSection::get_int_list(const std::string& key,
                                             std::vector<int> dflt) {
  std::vector<double> dd(dflt.begin(), dflt.end());
  std::vector<int> out;
  for (double v : get_double_list(key, dd)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw hermite::ParameterError("config [" + name_ + "]: key '" + key +
                                    "' expects integers");
    out.push_back(i);
  }
  return out;
}

void ConfigSection::reject_unknown() const {
  std::string extra;
  for (const auto& [k, v] : kv_)
    if (!used_.count(k)) extra += (extra.empty() ? "" : ", ") + k;
  if (!extra.empty())
    throw hermite::ParameterError("config [" + name_ + "]: unknown keys: " +
                                  extra);
}

ConfigSection load_config(const std::string& path, const std::string& section) {
  std::ifstream in(path);
  if (!in)
    throw hermite::ParameterError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line, current;
  bool seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw hermite::ParameterError("config: malformed section at line " +
                                      std::to_string(lineno));
      current = trim(line.substr(1, line.size() - 2));
      if (current == section) seen = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw hermite::ParameterError("config: expected key = value at line " +
                                    std::to_string(lineno));
    if (current != section) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw hermite::ParameterError("config: empty key at line " +
                                    std::to_string(lineno));
    if (kv.count(key))
      throw hermite::ParameterError("config: duplicate key '" + key +
                                    "' in [" + section + "]");
    kv[key] = val;
  }
  if (!seen)
    throw hermite::ParameterError("config: no [" + section + "] section in " +
                                  path);
  return ConfigSection(section, std::move(kv));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

TableWriter::TableWriter(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {}

void TableWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw hermite::ShapeError("table row width mismatch");
  rows_.push_back(cells);
}

void TableWriter::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hermite::ParameterError("cannot write " + path);
  out << "# schema: " << schema_ << "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c)
    out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
  for (const auto& row : rows_)
    for (std::size_t c = 0; c < row.size(); ++c)
      out << row[c] << (c + 1 < row.size() ? "," : "\n");
}

void TableWriter::write_json(const std::string& path) const {
  nlohmann::ordered_json doc;
  doc["schema"] = schema_;
  doc["columns"] = columns_;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows_) doc["rows"].push_back(row);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hermite::ParameterError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

void TableWriter::write(const std::string& path,
                        const std::string& format) const {
  if (format == "csv")
    write_csv(path);
  else if (format == "json")
    write_json(path);
  else
    throw hermite::ParameterError("unknown output format: " + format);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hermite::ParameterError("cannot write " + path);
  out << content;
}

std::string summary_path(const std::string& out_path) {
  const auto dot = out_path.find_last_of('.');
  const auto slash = out_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + ".summary.txt";
  return out_path.substr(0, dot) + ".summary.txt";
}

int worker_count(ConfigSection& cfg) {
  long dflt = 1;
  if (const char* env = std::getenv("HERMLAB_WORKERS")) {
    try {
      dflt = std::max(1L, std::stol(env));
    } catch (const std::exception&) {
      dflt = 1;
    }
  }
  const long w = cfg.get_long("workers", dflt);
  if (w < 1)
    throw hermite::ParameterError("workers must be >= 1");
  return static_cast<int>(w);
}

}  // namespace hermlab
