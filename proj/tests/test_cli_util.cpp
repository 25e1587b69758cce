#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cli_util.hpp"
#include "hermite/errors.hpp"

namespace {

std::string write_temp(const std::string& content) {
  const std::string path = "cli_util_test.ini";
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("config sections, types, and unknown-key rejection") {
  const auto path = write_temp(
      "# comment\n"
      "[series]\n"
      "z_re = -0.5\n"
      "t_count = 31\n"
      "J = 1, 2, 4\n"
      "out = x.csv\n"
      "\n"
      "[other]\n"
      "z_re = 99\n");
  auto cfg = hermlab::load_config(path, "series");
  CHECK(cfg.get_double("z_re", 0.0) == -0.5);
  CHECK(cfg.get_long("t_count", 0) == 31);
  CHECK(cfg.get_int_list("J", {}) == std::vector<int>{1, 2, 4});
  CHECK(cfg.require_string("out") == "x.csv");
  CHECK_NOTHROW(cfg.reject_unknown());

  auto cfg2 = hermlab::load_config(path, "series");
  cfg2.get_double("z_re", 0.0);
  CHECK_THROWS_AS(cfg2.reject_unknown(), hermite::ParameterError);

  CHECK_THROWS_AS(hermlab::load_config(path, "missing"), hermite::ParameterError);
  CHECK_THROWS_AS(hermlab::load_config("no_such_file.ini", "series"),
                  hermite::ParameterError);
  std::remove(path.c_str());
}

TEST_CASE("malformed configs") {
  const auto path = write_temp("[a]\nkey value\n");
  CHECK_THROWS_AS(hermlab::load_config(path, "a"), hermite::ParameterError);
  std::remove(path.c_str());
  const auto dup = write_temp("[a]\nk = 1\nk = 2\n");
  CHECK_THROWS_AS(hermlab::load_config(dup, "a"), hermite::ParameterError);
  std::remove(dup.c_str());
}

TEST_CASE("number formatting round-trips") {
  for (double v : {1.0, -0.1, 3.141592653589793, 1e-300, 12345.6789012345678}) {
    const std::string s = hermlab::format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("summary path derivation") {
  CHECK(hermlab::summary_path("out/run.csv") == "out/run.summary.txt");
  CHECK(hermlab::summary_path("run") == "run.summary.txt");
  CHECK(hermlab::summary_path("a.b/run") == "a.b/run.summary.txt");
}
