#include "gausslab_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "gausslab/congruence.hpp"
#include "gausslab/constants.hpp"
#include "gausslab/errors.hpp"
#include "gausslab/exact_sum.hpp"
#include "gausslab/gaussian.hpp"
#include "gausslab/large_sieve.hpp"
#include "gausslab/prime_sums.hpp"
#include "gausslab/roots.hpp"

namespace gausslab::cli {

namespace {

constexpr std::uint64_t kMaxLambdaLevel = 1'000'000;
constexpr std::uint64_t kMaxTableLimit = 2'000'000'000ULL;

std::uint64_t max_x(const RunConfig& cfg) {
  if (cfg.x_list.empty()) throw ConfigError("--x needs at least one scale");
  return *std::max_element(cfg.x_list.begin(), cfg.x_list.end());
}

FactorTable make_table(std::uint64_t limit) {
  if (limit > kMaxTableLimit) throw GuardError("factor table limit beyond 2e9");
  return FactorTable(std::max<std::uint64_t>(limit, 16));
}

std::uint64_t lambda_level(const std::string& text) {
  if (text == "delta1") return 1;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown --lambda '" + text + "'");
  const std::uint64_t y = parse_scale(text.substr(colon + 1));
  if (y == 0 || y > kMaxLambdaLevel) throw ConfigError("--lambda level must lie in [1, 1e6]");
  return y;
}

SieveWeights make_lambda(const std::string& text, const FactorTable& table) {
  if (text == "delta1") return SieveWeights::delta_one();
  const std::string kind = text.substr(0, text.find(':'));
  const std::uint64_t y = lambda_level(text);
  if (kind == "mobius") return SieveWeights::mobius(y, table);
  if (kind == "ones") return SieveWeights::ones(y, table);
  throw ConfigError("unknown --lambda '" + text + "'");
}

CropFunction make_crop(const RunConfig& cfg, std::uint64_t x) {
  const double xd = static_cast<double>(x);
  return cfg.ramp_delta > 0.0 ? crop_build(xd, cfg.ramp_delta) : crop_build(xd);
}

double shown_seconds(const RunConfig& cfg, double s) { return cfg.timing ? s : 0.0; }

Report constants_report(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  rep.columns = {"name", "value", "pmax", "tail_bound"};
  const auto c = c_constant(cfg.pmax);
  const auto k = kappa(cfg.pmax);
  const auto hk = H_constant(cfg.pmax, HMode::via_kappa);
  const auto hr = H_constant(cfg.pmax_raw, HMode::raw);
  const auto a2 = a2_identity_check(cfg.pmax);
  rep.add({std::string("c"), c.value, c.pmax, c.tail_bound});
  rep.add({std::string("kappa"), k.value, k.pmax, k.tail_bound});
  rep.add({std::string("H_via_kappa"), hk.value, hk.pmax, hk.tail_bound});
  rep.add({std::string("H_raw"), hr.value, hr.pmax, hr.tail_bound});
  rep.add({std::string("c_via_kappa_product"), a2.rhs, c.pmax, c.tail_bound});
  log << fmt::format("|c - kappa prod| = {:.3g}; |kappa - (pi/4) H_raw| = {:.3g}\n", a2.diff,
                     std::abs(k.value - 0.25 * std::numbers::pi * hr.value));
  return rep;
}

Report lattice_report(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  const bool with_r = cfg.command != Command::apt;
  rep.columns = with_r ? std::vector<std::string>{"x", "r", "sum", "reference", "ratio", "pairs", "seconds"}
                       : std::vector<std::string>{"x", "sum", "reference", "ratio", "pairs", "seconds"};
  const FactorTable table = make_table(prime_sum_table_limit(max_x(cfg)));
  const Parallelism par{cfg.threads};
  for (std::uint64_t x : cfg.x_list) {
    SumReport s;
    if (cfg.command == Command::gsum) {
      s = sum_G(x, cfg.r, table, par);
      log << fmt::format("gsum x={} r={}: reference with r = {:.12g}, without r = {:.12g}\n", x, cfg.r,
                         s.reference, s.reference_alt);
      if (cfg.reference_without_r) {
        std::swap(s.reference, s.reference_alt);
        s.ratio = s.reference != 0.0 ? s.sum / s.reference : 0.0;
      }
    } else if (cfg.command == Command::hsum) {
      s = sum_H(x, cfg.r, table, par);
    } else {
      s = sum_APT(x, table, par);
    }
    if (cfg.timing) log << fmt::format("{} x={}: {:.3f} s\n", to_string(cfg.command), x, s.seconds);
    if (with_r) {
      rep.add({s.x, static_cast<std::int64_t>(s.r), s.sum, s.reference, s.ratio, s.pairs,
               shown_seconds(cfg, s.seconds)});
    } else {
      rep.add({s.x, s.sum, s.reference, s.ratio, s.pairs, shown_seconds(cfg, s.seconds)});
    }
  }
  return rep;
}

Report ssum_report(const RunConfig& cfg, std::ostream&) {
  Report rep;
  rep.columns = {"x", "ramp_delta", "sigma", "S", "companion", "ratio", "terms", "W", "W_target"};
  const FactorTable table =
      make_table(std::max(prime_sum_table_limit(max_x(cfg)), lambda_level(cfg.lambda)));
  const SieveWeights lambda = make_lambda(cfg.lambda, table);
  const GammaWeights gamma = GammaWeights::log_on_odd_primes();
  const Parallelism par{cfg.threads};
  for (std::uint64_t x : cfg.x_list) {
    const CropFunction f = make_crop(cfg, x);
    const SReport s = sum_S(f, lambda, gamma, table, par);
    const WReport w = W_and_I(f, gamma, par);
    rep.add({x, f.ramp_delta(), f.sigma(), s.S, s.companion,
             s.companion != 0.0 ? s.S / s.companion : 0.0, s.terms, w.W, w.target});
  }
  return rep;
}

Report congruence_report(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  rep.columns = {"x", "D", "d", "rho", "A_d", "main", "r_d", "R_partial", "bound"};
  if (cfg.D == 0) throw ConfigError("--D must be positive");
  const FactorTable table =
      make_table(std::max({prime_sum_table_limit(max_x(cfg)), lambda_level(cfg.lambda), cfg.D + 1}));
  const SieveWeights lambda = make_lambda(cfg.lambda, table);
  const GammaWeights gamma = GammaWeights::log_on_odd_primes();
  const Parallelism par{cfg.threads};
  for (std::uint64_t x : cfg.x_list) {
    const CropFunction f = make_crop(cfg, x);
    const RemainderReport rr = remainder_R(f, cfg.D, lambda, gamma, table, par);
    ExactSum partial;
    for (const auto& row : rr.rows) {
      partial.add(std::abs(row.r));
      rep.add({x, cfg.D, row.d, row.rho, row.A, row.main, row.r, partial.value(), rr.bound});
    }
    log << fmt::format("congruence x={} D={}: R = {:.6g}, R/bound = {:.6g}\n", x, cfg.D, rr.R, rr.R / rr.bound);
  }
  return rep;
}

Report model_report(const RunConfig& cfg, std::ostream&) {
  Report rep;
  rep.columns = {"x", "d", "rho", "B_d", "main", "ratio", "normalized_error"};
  const FactorTable table = make_table(std::max(max_x(cfg), lambda_level(cfg.lambda)));
  const SieveWeights lambda = make_lambda(cfg.lambda, table);
  const CropW w = crop_w_build();
  const Parallelism par{cfg.threads};
  for (std::uint64_t x : cfg.x_list) {
    for (std::uint64_t d : cfg.d_list) {
      if (d == 0) throw ConfigError("moduli must be positive");
      const double B = B_d(x, d, lambda, w, table, par);
      const double main = B_d_main(x, d, lambda, table);
      const double xd = static_cast<double>(x);
      const double scale = std::sqrt(static_cast<double>(d) * xd) * std::log(xd);
      const std::uint64_t r = d % 2 == 0 ? 0 : rho(d, table);
      rep.add({x, d, r, B, main, main != 0.0 ? B / main : 0.0, (B - main) / scale});
    }
  }
  return rep;
}

Report appendix_report(const RunConfig& cfg, std::ostream&) {
  Report rep;
  rep.columns = {"x", "d", "rho", "A_d", "main", "r_d"};
  const FactorTable table = make_table(std::max(max_x(cfg), cfg.d_max + 1));
  const Parallelism par{cfg.threads};
  for (std::uint64_t x : cfg.x_list) {
    for (std::uint64_t d = 1; d <= cfg.d_max; d += 2) {
      const AppendixRow row = appendix_Ad(x, d, table, par);
      rep.add({x, d, rho(d, table), row.A, row.main, row.r});
    }
  }
  return rep;
}

RunResult largesieve_report(const RunConfig& cfg, std::ostream& log) {
  RunResult out;
  out.report.columns = {"trial", "h", "X", "N", "kind", "lhs", "rhs", "ratio"};
  const FactorTable table = make_table(2 * cfg.X_max + 1);
  const LSCampaign camp =
      ls_campaign(cfg.trials, LSRanges{cfg.h_max, cfg.X_max, cfg.N_max}, cfg.seed, table, Parallelism{cfg.threads});
  for (std::size_t i = 0; i < camp.trials.size(); ++i) {
    const LSTrial& t = camp.trials[i];
    out.report.add({static_cast<std::uint64_t>(i), t.h, t.X, t.N, to_string(t.kind), t.lhs, t.rhs, t.ratio});
    if (t.ratio > 1.0) out.violation = true;
  }
  log << fmt::format("largesieve: {} trials, max ratio {:.6g} (trial {})\n", camp.trials.size(), camp.max_ratio,
                     camp.argmax);
  return out;
}

Report omega_report(const RunConfig& cfg, std::ostream& log) {
  Report rep;
  rep.columns = {"m1", "m2", "h", "delta", "modulus", "omega", "pairs", "mismatches",
                 "x", "D", "D_system", "E", "R"};
  const OmegaClass oc = solve_omega(cfg.m1, cfg.m2, cfg.h);
  if (cfg.l_max > 1'000'000) throw GuardError("--l-max beyond 1e6");
  std::vector<std::uint32_t> primes;
  for (auto p : primes_up_to(cfg.l_max)) {
    if (p != 2) primes.push_back(p);
  }
  std::set<std::pair<std::uint64_t, std::uint64_t>> system_pairs;
  std::set<std::pair<std::uint64_t, std::uint64_t>> predicted;
  for (auto l1 : primes) {
    for (auto l2 : primes) {
      if (solve_system(l1, l2, cfg.m1, cfg.m2, cfg.h)) system_pairs.insert({l1, l2});
      if (mul_mod(oc.omega, l1, oc.modulus) == l2 % oc.modulus && try_quad_form_n(l1, l2, cfg.m1, cfg.m2)) {
        predicted.insert({l1, l2});
      }
    }
  }
  std::uint64_t mismatches = 0;
  for (const auto& p : system_pairs) mismatches += predicted.count(p) == 0;
  for (const auto& p : predicted) mismatches += system_pairs.count(p) == 0;
  const GammaWeights gamma = GammaWeights::log_on_odd_primes();
  for (std::uint64_t x : cfg.x_list) {
    const CropFunction f = crop_build(static_cast<double>(x), cfg.ramp_delta > 0.0 ? cfg.ramp_delta : 0.2);
    const DformSplit split = dform_split(cfg.m1, cfg.m2, cfg.h, f, gamma);
    const double direct = dform_sum(cfg.m1, cfg.m2, cfg.h, f, gamma);
    rep.add({to_string(cfg.m1), to_string(cfg.m2), cfg.h, oc.delta, oc.modulus, oc.omega,
             static_cast<std::uint64_t>(system_pairs.size()), mismatches, x, split.D, direct, split.E, split.R});
  }
  log << fmt::format("omega {} mod {}: {} system pairs, {} mismatches\n", oc.omega, oc.modulus,
                     system_pairs.size(), mismatches);
  return rep;
}

}  // namespace

RunResult build_report(const RunConfig& cfg, std::ostream& log) {
  switch (cfg.command) {
    case Command::constants: return {constants_report(cfg, log), false};
    case Command::gsum:
    case Command::hsum:
    case Command::apt: return {lattice_report(cfg, log), false};
    case Command::ssum: return {ssum_report(cfg, log), false};
    case Command::congruence: return {congruence_report(cfg, log), false};
    case Command::model: return {model_report(cfg, log), false};
    case Command::appendix: return {appendix_report(cfg, log), false};
    case Command::largesieve: return largesieve_report(cfg, log);
    case Command::omega: {
      Report rep = omega_report(cfg, log);
      // Column 7 holds the mismatch count; any mismatch is an internal failure.
      bool bad = !rep.rows.empty() && std::get<std::uint64_t>(rep.rows.front()[7]) != 0;
      return {std::move(rep), bad};
    }
  }
  throw InvariantError("unhandled command");
}

int run(const RunConfig& cfg, std::ostream& stdout_stream, std::ostream& log) {
  RunResult result;
  try {
    result = build_report(cfg, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const DomainError& e) {
    log << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const GuardError& e) {
    log << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const std::bad_alloc&) {
    log << "guard: out of memory\n";
    return kGuard;
  } catch (const InvariantError& e) {
    log << "internal: " << e.what() << "\n";
    return kInternal;
  } catch (const ConvergenceError& e) {
    log << "internal: " << e.what() << "\n";
    return kInternal;
  }

  const std::string body =
      cfg.format == Format::csv ? emit_csv(result.report) : emit_json(result.report);
  const std::string meta = config_json(cfg);
  if (cfg.out.empty() || cfg.out == "-") {
    stdout_stream << body;
    stdout_stream.flush();
    log << "meta: " << meta << "\n";
  } else {
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    file << body;
    std::ofstream side(cfg.out + ".meta.json", std::ios::binary | std::ios::trunc);
    side << meta << "\n";
    if (!file || !side) {
      log << "error: cannot write " << cfg.out << "\n";
      return kGuard;
    }
  }
  if (result.violation) {
    log << "internal: a checked inequality or identity failed\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace gausslab::cli
