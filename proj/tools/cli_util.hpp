#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace hermlab {

// One [section] of a flat key = value config file. Keys are tracked as they
// are read; leftover keys are rejected so typos cannot silently change runs.
class ConfigSection {
 public:
  ConfigSection() = default;
  ConfigSection(std::string name, std::map<std::string, std::string> kv)
      : name_(std::move(name)), kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& dflt);
  std::string require_string(const std::string& key);
  double get_double(const std::string& key, double dflt);
  long get_long(const std::string& key, long dflt);
  std::uint64_t get_seed(const std::string& key, std::uint64_t dflt);
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> dflt);
  std::vector<int> get_int_list(const std::string& key, std::vector<int> dflt);

  // Throws if any key was never consumed.
  void reject_unknown() const;
  const std::string& name() const { return name_; }

 private:
  std::string raw(const std::string& key);
  std::string name_;
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

// Parses "key = value" lines under [section] headers; '#' and ';' comment.
ConfigSection load_config(const std::string& path, const std::string& section);

// Deterministic formatting: doubles as %.17g so reruns are byte-identical.
std::string format_double(double v);

class TableWriter {
 public:
  TableWriter(std::string schema, std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;
  void write(const std::string& path, const std::string& format) const;

 private:
  std::string schema_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);

// Summary path for a data file: data.csv -> data.summary.txt
std::string summary_path(const std::string& out_path);

int worker_count(ConfigSection& cfg);

}  // namespace hermlab
