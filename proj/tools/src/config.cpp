#include "gausslab_cli/config.hpp"

#include <cstdlib>
#include <regex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

namespace gausslab::cli {

std::string to_string(Command c) {
  switch (c) {
    case Command::constants: return "constants";
    case Command::gsum: return "gsum";
    case Command::hsum: return "hsum";
    case Command::apt: return "apt";
    case Command::ssum: return "ssum";
    case Command::congruence: return "congruence";
    case Command::model: return "model";
    case Command::appendix: return "appendix";
    case Command::largesieve: return "largesieve";
    case Command::omega: return "omega";
  }
  return "unknown";
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

std::uint64_t parse_scale(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)(?:\.(\d*))?(?:[eE]\+?(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ConfigError("not a non-negative scale: '" + text + "'");
  std::string digits = m[1].str() + m[2].str();
  long exponent = m[3].matched ? std::stol(m[3].str()) : 0;
  exponent -= static_cast<long>(m[2].length());
  while (exponent < 0) {
    if (digits.empty() || digits.back() != '0') throw ConfigError("scale is not an integer: '" + text + "'");
    digits.pop_back();
    ++exponent;
  }
  unsigned __int128 v = 0;
  const unsigned __int128 cap = UINT64_MAX;
  for (char ch : digits) {
    v = v * 10 + static_cast<unsigned>(ch - '0');
    if (v > cap) throw ConfigError("scale overflows 64 bits: '" + text + "'");
  }
  for (long i = 0; i < exponent; ++i) {
    v *= 10;
    if (v > cap) throw ConfigError("scale overflows 64 bits: '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_scale_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scale(item));
  if (out.empty()) throw ConfigError("empty scale list");
  return out;
}

GaussInt parse_gauss(const std::string& text) {
  static const std::regex full(R"(^\s*([+-]?\d+)\s*([+-])\s*(\d*)\s*i\s*$)");
  static const std::regex imag(R"(^\s*([+-]?)(\d*)\s*i\s*$)");
  static const std::regex real(R"(^\s*([+-]?\d+)\s*$)");
  std::smatch m;
  try {
    if (std::regex_match(text, m, full)) {
      std::int64_t b = m[3].length() ? std::stoll(m[3].str()) : 1;
      return {std::stoll(m[1].str()), m[2].str() == "-" ? -b : b};
    }
    if (std::regex_match(text, m, imag)) {
      std::int64_t b = m[2].length() ? std::stoll(m[2].str()) : 1;
      return {0, m[1].str() == "-" ? -b : b};
    }
    if (std::regex_match(text, m, real)) return {std::stoll(m[1].str()), 0};
  } catch (const std::out_of_range&) {
    throw ConfigError("Gaussian integer out of range: '" + text + "'");
  }
  throw ConfigError("not a Gaussian integer: '" + text + "'");
}

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("GAUSSLAB_THREADS"); env && *env) {
    std::uint64_t v = 0;
    try {
      v = parse_scale(env);
    } catch (const ConfigError&) {
      throw ConfigError("GAUSSLAB_THREADS must be a positive integer");
    }
    if (v == 0 || v > 1024) throw ConfigError("GAUSSLAB_THREADS must lie in [1, 1024]");
    return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct Raw {
  std::string x;
  std::string pmax = "1e7";
  std::string pmax_raw = "1e8";
  std::string d_max = "25";
  std::string d_list;
  std::string D = "100";
  std::string trials = "1000";
  std::string seed = "42";
  std::string h_max = "10";
  std::string X_max = "1000";
  std::string N_max = "1000";
  std::string m1 = "1+2i";
  std::string m2 = "3+2i";
  std::string l_max = "2000";
  std::string format = "csv";
  int threads = 0;
};

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  Raw raw;
  CLI::App app{"gausslab: coordinate distribution of Gaussian primes"};
  app.set_version_flag("--version", std::string(GAUSSLAB_VERSION_STRING));
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", raw.threads, "worker threads (overrides GAUSSLAB_THREADS)")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--out,-o", cfg.out, "output file, '-' for stdout");
    sub->add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timing", cfg.timing, "fill the seconds column with wall-clock time");
  };
  auto scales = [&](CLI::App* sub, const std::string& def) {
    raw.x = def;
    sub->add_option("--x", raw.x, "comma-separated scales, e.g. 1e6,1e7")->default_str(def);
  };

  std::vector<std::pair<CLI::App*, Command>> subs;
  auto* constants = app.add_subcommand("constants", "Euler products c, kappa, H with tail bounds");
  constants->add_option("--pmax", raw.pmax, "prime cutoff for c and kappa");
  constants->add_option("--pmax-raw", raw.pmax_raw, "prime cutoff for the conditionally convergent H");
  subs.emplace_back(constants, Command::constants);

  auto* gsum = app.add_subcommand("gsum", "G_r(x) = sum Lambda_r(k) Lambda(l) Lambda(4k^2+l^2)");
  gsum->add_option("--r", cfg.r, "order of Lambda_r on k")->check(CLI::Range(1, 7));
  gsum->add_flag("--reference-without-r", cfg.reference_without_r, "drop the factor r from the reference");
  subs.emplace_back(gsum, Command::gsum);

  auto* hsum = app.add_subcommand("hsum", "H_r(x) = sum Lambda(k) Lambda(l) Lambda_r(4k^2+l^2)");
  hsum->add_option("--r", cfg.r, "order of Lambda_r on 4k^2+l^2")->check(CLI::Range(1, 7));
  subs.emplace_back(hsum, Command::hsum);

  auto* apt = app.add_subcommand("apt", "sum beta_k Lambda(l) Lambda(4k^2+l^2) over almost-prime k");
  subs.emplace_back(apt, Command::apt);

  auto* ssum = app.add_subcommand("ssum", "crop-weighted sum S(x) and its companion kappa V int f");
  subs.emplace_back(ssum, Command::ssum);

  auto* congruence = app.add_subcommand("congruence", "A_d(x), main terms and R(x, D)");
  congruence->add_option("--D", raw.D, "largest odd modulus");
  subs.emplace_back(congruence, Command::congruence);

  auto* model = app.add_subcommand("model", "model sequence B_d(x) against its main term");
  model->add_option("--d", raw.d_list, "comma-separated odd moduli (default 5,13,25)");
  subs.emplace_back(model, Command::model);

  auto* appendix = app.add_subcommand("appendix", "sums of Lambda(k) Lambda(l) over d | 4k^2+l^2");
  appendix->add_option("--d-max", raw.d_max, "largest odd modulus");
  subs.emplace_back(appendix, Command::appendix);

  auto* largesieve = app.add_subcommand("largesieve", "seeded large sieve trials");
  largesieve->add_option("--trials", raw.trials, "number of trials");
  largesieve->add_option("--seed", raw.seed, "root seed");
  largesieve->add_option("--h-max", raw.h_max, "largest h");
  largesieve->add_option("--X-max", raw.X_max, "largest X");
  largesieve->add_option("--N-max", raw.N_max, "largest N");
  subs.emplace_back(largesieve, Command::largesieve);

  auto* omega = app.add_subcommand("omega", "omega class, system check and D = E + R for m1, m2");
  omega->add_option("--m1", raw.m1, "first modulus, e.g. 1+2i");
  omega->add_option("--m2", raw.m2, "second modulus, e.g. 3+2i");
  omega->set_help_flag("--help", "print this help message and exit");
  omega->add_option("--h", cfg.h, "h >= 1")->check(CLI::PositiveNumber);
  omega->add_option("--l-max", raw.l_max, "prime bound for the system check");
  subs.emplace_back(omega, Command::omega);

  for (auto& [sub, cmd] : subs) {
    common(sub);
    switch (cmd) {
      case Command::gsum:
      case Command::hsum:
      case Command::apt: scales(sub, "1e6"); break;
      case Command::ssum:
      case Command::congruence: scales(sub, "1e6"); break;
      case Command::model: scales(sub, "1e7"); break;
      case Command::appendix: scales(sub, "1e5"); break;
      case Command::omega: scales(sub, "1e6"); break;
      default: break;
    }
    if (cmd == Command::ssum || cmd == Command::congruence) {
      sub->add_option("--ramp-delta", cfg.ramp_delta, "crop ramp fraction in (0, 1/4); default (log x)^-5");
    }
    if (cmd == Command::ssum || cmd == Command::congruence || cmd == Command::model) {
      sub->add_option("--lambda", cfg.lambda, "sieve weights: delta1, mobius:Y or ones:Y");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    int code = app.exit(e, out, err);
    ParseOutcome o;
    o.exit_code = code == 0 ? 0 : 1;
    o.message = out.str() + err.str();
    return o;
  }

  for (auto& [sub, cmd] : subs) {
    if (sub->parsed()) cfg.command = cmd;
  }
  cfg.format = raw.format == "json" ? Format::json : Format::csv;
  cfg.threads = raw.threads > 0 ? static_cast<unsigned>(raw.threads) : default_threads();
  if (!raw.x.empty()) cfg.x_list = parse_scale_list(raw.x);
  cfg.pmax = parse_scale(raw.pmax);
  cfg.pmax_raw = parse_scale(raw.pmax_raw);
  cfg.d_max = parse_scale(raw.d_max);
  cfg.d_list = raw.d_list.empty() ? std::vector<std::uint64_t>{5, 13, 25} : parse_scale_list(raw.d_list);
  cfg.D = parse_scale(raw.D);
  cfg.trials = parse_scale(raw.trials);
  cfg.seed = parse_scale(raw.seed);
  cfg.h_max = parse_scale(raw.h_max);
  cfg.X_max = parse_scale(raw.X_max);
  cfg.N_max = parse_scale(raw.N_max);
  cfg.m1 = parse_gauss(raw.m1);
  cfg.m2 = parse_gauss(raw.m2);
  cfg.l_max = parse_scale(raw.l_max);
  if (cfg.ramp_delta != 0.0 && !(cfg.ramp_delta > 0.0 && cfg.ramp_delta < 0.25)) {
    throw ConfigError("--ramp-delta must lie in (0, 1/4)");
  }
  ParseOutcome o;
  o.config = cfg;
  return o;
}

std::string config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["version"] = GAUSSLAB_VERSION_STRING;
  j["command"] = to_string(cfg.command);
  j["x"] = cfg.x_list;
  j["r"] = cfg.r;
  j["pmax"] = cfg.pmax;
  j["pmax_raw"] = cfg.pmax_raw;
  j["d_max"] = cfg.d_max;
  j["d"] = cfg.d_list;
  j["D"] = cfg.D;
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["format"] = to_string(cfg.format);
  j["ramp_delta"] = cfg.ramp_delta;
  j["lambda"] = cfg.lambda;
  j["trials"] = cfg.trials;
  j["h_max"] = cfg.h_max;
  j["X_max"] = cfg.X_max;
  j["N_max"] = cfg.N_max;
  j["m1"] = to_string(cfg.m1);
  j["m2"] = to_string(cfg.m2);
  j["h"] = cfg.h;
  j["l_max"] = cfg.l_max;
  j["timing"] = cfg.timing;
  j["reference_without_r"] = cfg.reference_without_r;
  return j.dump();
}

}  // namespace gausslab::cli
