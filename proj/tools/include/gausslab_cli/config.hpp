#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gausslab/gaussian.hpp"

namespace gausslab::cli {

enum class Command { constants, gsum, hsum, apt, ssum, congruence, model, appendix, largesieve, omega };
enum class Format { csv, json };

std::string to_string(Command c);
std::string to_string(Format f);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::constants;
  std::vector<std::uint64_t> x_list;
  int r = 1;
  std::uint64_t pmax = 10'000'000;
  std::uint64_t pmax_raw = 100'000'000;
  std::uint64_t d_max = 25;
  std::vector<std::uint64_t> d_list;
  std::uint64_t D = 100;
  unsigned threads = 1;
  std::uint64_t seed = 42;
  std::string out = "-";
  Format format = Format::csv;
  double ramp_delta = 0.0;  // 0 selects (log x)^-5
  std::string lambda = "delta1";
  std::size_t trials = 1000;
  std::uint64_t h_max = 10;
  std::uint64_t X_max = 1000;
  std::uint64_t N_max = 1000;
  GaussInt m1{1, 2};
  GaussInt m2{3, 2};
  std::int64_t h = 1;
  std::uint64_t l_max = 2000;
  bool timing = false;
  bool reference_without_r = false;
};

// "1e6", "2.5e7", "1000000" -> exact integer; ConfigError on junk, fractions or overflow.
std::uint64_t parse_scale(const std::string& text);
std::vector<std::uint64_t> parse_scale_list(const std::string& text);
// "1+2i", "3-2i", "-4+i", "5"
GaussInt parse_gauss(const std::string& text);

struct ParseOutcome {
  std::optional<RunConfig> config;  // empty when the parser already handled the request (--help)
  int exit_code = 0;
  std::string message;
};

// Threads: --threads wins, then GAUSSLAB_THREADS, then hardware concurrency.
ParseOutcome parse_args(int argc, const char* const* argv);

// Effective configuration as a flat JSON object (for the audit trail).
std::string config_json(const RunConfig& cfg);

}  // namespace gausslab::cli
