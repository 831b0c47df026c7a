// Acceptance run: one PASS/FAIL line per criterion, measurement tables after.
// Usage: gausslab_acceptance [criterion numbers...]   (default: all ten)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "gausslab/congruence.hpp"
#include "gausslab/constants.hpp"
#include "gausslab/gaussian.hpp"
#include "gausslab/large_sieve.hpp"
#include "gausslab/prime_sums.hpp"
#include "gausslab/roots.hpp"
#include "gausslab_cli/config.hpp"
#include "gausslab_cli/run.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace gausslab;

namespace {

// --- pinned tolerances and budgets ---------------------------------------------------
constexpr double kA2Tol = 1e-10;
constexpr double kKappaHTol = 1e-2;
constexpr double kKappaTail = 1e-6;
constexpr double kParsevalTol = 1e-6;
constexpr double kPoissonSlack = 1e-6;
constexpr double kPoissonRamp = 0.2;
constexpr double kModelBand = 0.02;
constexpr double kModelErrorConstant = 1.0;  // |B_d - main| <= C sqrt(d x) log x
constexpr double kGBandLo = 0.2, kGBandHi = 3.0;
constexpr double kDoublingDrift = 0.25;
constexpr double kBudget1 = 60, kBudget2 = 120, kBudget3 = 120, kBudget4 = 300, kBudget5 = 300,
                 kBudget8 = 600;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string table;  // optional multi-line measurement block
};

Parallelism par() { return Parallelism::hardware(); }

// 1 ----------------------------------------------------------------------------------
Outcome constants_identities() {
  const auto t0 = Clock::now();
  const A2Check a2 = a2_identity_check(10'000'000);
  const EulerProductResult k = kappa(10'000'000);
  const EulerProductResult raw = H_constant(100'000'000, HMode::raw);
  const double gap = std::abs(k.value - std::numbers::pi / 4 * raw.value);
  const double secs = since(t0);
  Outcome o;
  o.pass = a2.diff <= kA2Tol && gap <= kKappaHTol && k.tail_bound <= kKappaTail && secs <= kBudget1;
  o.detail = fmt::format("|c - c_A2| = {:.3g} (<= {:g}); |kappa - (pi/4) H_raw(1e8)| = {:.3g} (<= {:g}); "
                         "kappa tail = {:.3g} (<= {:g}); {:.1f} s (<= {:g})",
                         a2.diff, kA2Tol, gap, kKappaHTol, k.tail_bound, kKappaTail, secs, kBudget1);
  o.table = fmt::format("  c(1e7) = {:.12f}\n  kappa(1e7) = {:.12f}\n  H_raw(1e8) = {:.12f}\n  4 kappa/pi = {:.12f}\n",
                        a2.lhs, k.value, raw.value, 4 * k.value / std::numbers::pi);
  return o;
}

// 2 ----------------------------------------------------------------------------------
Outcome root_machinery() {
  const auto t0 = Clock::now();
  const FactorTable table(200'000);
  std::uint64_t bad_rho = 0, bad_brute = 0, bad_hensel = 0, bad_crt = 0, bad_parseval = 0;
  std::uint64_t crt_pairs = 0;
  double worst_parseval = 0.0;
  for (std::uint64_t d = 1; d <= 100'000; d += 2) {
    const RootSet rs = roots_mod(d, table);
    bad_rho += rs.rho() != rho(d, table);
    for (auto v : rs.roots) bad_rho += (mul_mod(v, v, d) + 1) % d != 0;
    if (d <= 5000) bad_brute += rs.roots != oracle::roots_brute(d);
  }
  for (auto p : table.primes()) {
    if (p > 10'000) break;
    if (p % 4 != 1) continue;
    const std::uint64_t r = sqrt_mod_prime(p - 1, p);
    std::uint64_t pa = p;
    for (int a = 1; a <= 3; ++a, pa *= p) {
      const std::uint64_t lifted = hensel_lift(r, p, a);
      bad_hensel += lifted % p != r || (mul_mod(lifted, lifted, pa) + 1) % pa != 0;
    }
  }
  for (std::uint64_t d1 = 3; d1 <= 315; d1 += 2) {
    for (std::uint64_t d2 = d1 + 2; d1 * d2 <= 100'000; d2 += 2) {
      if (std::gcd(d1, d2) != 1) continue;
      ++crt_pairs;
      bad_crt += crt_combine(roots_mod(d1, table), roots_mod(d2, table)).roots != roots_mod(d1 * d2, table).roots;
    }
  }
  for (std::uint64_t d = 1; d <= 2000; d += 2) {
    const RootSet rs = roots_mod(d, table);
    double total = 0.0;
    for (std::uint64_t c = 0; c < d; ++c) total += std::norm(weyl_sum(static_cast<std::int64_t>(c), rs));
    const double err = std::abs(total - static_cast<double>(d * rs.rho()));
    worst_parseval = std::max(worst_parseval, err);
    bad_parseval += err > kParsevalTol;
  }
  const double secs = since(t0);
  Outcome o;
  o.pass = bad_rho + bad_brute + bad_hensel + bad_crt + bad_parseval == 0 && secs <= kBudget2;
  o.detail = fmt::format("rho mismatches {} (odd d <= 1e5), brute-force mismatches {} (d <= 5000), "
                         "Hensel failures {}, CRT failures {} of {} pairs, Parseval worst {:.2g} (<= {:g}); "
                         "{:.1f} s (<= {:g})",
                         bad_rho, bad_brute, bad_hensel, bad_crt, crt_pairs, worst_parseval, kParsevalTol, secs,
                         kBudget2);
  return o;
}

// 3 ----------------------------------------------------------------------------------
Outcome large_sieve() {
  const auto t0 = Clock::now();
  const FactorTable table(2001);
  const LSCampaign c = ls_campaign(1000, LSRanges{10, 1000, 1000}, 42, table, par());
  std::size_t over = 0;
  for (const auto& t : c.trials) over += !(t.ratio <= 1.0);
  const double secs = since(t0);
  const LSTrial& w = c.trials[c.argmax];
  Outcome o;
  o.pass = c.trials.size() == 1000 && over == 0 && secs <= kBudget3;
  o.detail = fmt::format("{} trials, {} above the bound, max ratio {:.4g} (trial {}: h={}, X={}, N={}, {}); "
                         "{:.1f} s (<= {:g})",
                         c.trials.size(), over, c.max_ratio, c.argmax, w.h, w.X, w.N, to_string(w.kind), secs,
                         kBudget3);
  std::map<AlphaKind, double> by_kind;
  for (const auto& t : c.trials) by_kind[t.kind] = std::max(by_kind[t.kind], t.ratio);
  for (const auto& [k, r] : by_kind) o.table += fmt::format("  max ratio, {} coefficients: {:.4g}\n", to_string(k), r);
  return o;
}

// 4 ----------------------------------------------------------------------------------
Outcome poisson_identity() {
  const auto t0 = Clock::now();
  const FactorTable table(1000);
  gausslab::testing::Rng rng(20240601);
  std::vector<std::uint32_t> ells;
  for (auto p : table.primes()) {
    if (p != 2 && p <= 100) ells.push_back(p);
  }
  const CropFunction f4(1e4, kPoissonRamp), f6(1e6, kPoissonRamp);
  int failures = 0, samples = 0;
  double worst_excess = -1e300, max_tail = 0.0;
  std::uint64_t max_S = 0;
  while (samples < 50) {
    const std::uint64_t d = rng.odd(1, 50), h = rng.uniform(1, 5);
    if (std::gcd(d, h) != 1) continue;
    const RootSet rs = roots_mod(d, table);
    if (rs.roots.empty()) continue;
    const std::uint64_t l = ells[rng.uniform(0, ells.size() - 1)];
    const std::uint64_t nu = rs.roots[rng.uniform(0, rs.roots.size() - 1)];
    const CropFunction& f = samples % 2 ? f6 : f4;
    const PoissonResult p = poisson_expand(d, h, l, nu, f);
    const double err = std::abs(p.direct - p.fourier);
    worst_excess = std::max(worst_excess, err - p.tail_bound);
    max_tail = std::max(max_tail, p.tail_bound);
    max_S = std::max(max_S, p.S);
    failures += !(err <= p.tail_bound + kPoissonSlack);
    ++samples;
  }
  const double secs = since(t0);
  Outcome o;
  o.pass = failures == 0 && secs <= kBudget4;
  o.detail = fmt::format("{} samples (x in {{1e4, 1e6}}, ramp {:g}), {} outside tail + {:g}; "
                         "max(err - tail) = {:.3g}, max tail {:.3g}, max S {}; {:.1f} s (<= {:g})",
                         samples, kPoissonRamp, failures, kPoissonSlack, worst_excess, max_tail, max_S, secs, kBudget4);
  return o;
}

// 5 ----------------------------------------------------------------------------------
Outcome congruence_system() {
  const auto t0 = Clock::now();
  constexpr std::uint64_t kLMax = 2000;
  std::vector<std::uint32_t> primes;
  for (auto p : primes_up_to(kLMax)) {
    if (p != 2) primes.push_back(p);
  }
  gausslab::testing::Rng rng(8110);
  std::uint64_t mismatches = 0, solver_mismatches = 0, pairs = 0, shared_factor = 0;
  for (int i = 0; i < 200; ++i) {
    const auto t = gausslab::testing::random_admissible(rng, 10'000, 5);
    shared_factor += norm(gauss_gcd(t.m1, t.m2)) > 1;
    const OmegaClass oc = solve_omega(t.m1, t.m2, t.h);
    std::set<std::pair<std::uint64_t, std::uint64_t>> solver, predicted;
    for (auto l1 : primes) {
      const std::uint64_t target = mul_mod(oc.omega, l1, oc.modulus);
      for (auto l2 : primes) {
        if (solve_system(l1, l2, t.m1, t.m2, t.h)) solver.insert({l1, l2});
        if (l2 % oc.modulus == target && try_quad_form_n(l1, l2, t.m1, t.m2)) predicted.insert({l1, l2});
      }
    }
    const auto walk = oracle::system_pairs(t.m1, t.m2, t.h, kLMax);
    pairs += walk.size();
    for (const auto& p : walk) mismatches += !predicted.count(p);
    for (const auto& p : predicted) mismatches += !walk.count(p);
    solver_mismatches += solver != walk;
  }
  const double secs = since(t0);
  Outcome o;
  o.pass = mismatches == 0 && solver_mismatches == 0 && secs <= kBudget5;
  o.detail = fmt::format("200 triples ({} with a common factor), {} system pairs, {} mismatches against the "
                         "omega prediction, {} triples where the direct solver disagrees; {:.1f} s (<= {:g})",
                         shared_factor, pairs, mismatches, solver_mismatches, secs, kBudget5);
  return o;
}

// 6 ----------------------------------------------------------------------------------
Outcome oracle_equivalence() {
  const FactorTable table(10'000);
  const auto gamma = GammaWeights::log_on_odd_primes();
  const std::vector<SieveWeights> lambdas = {SieveWeights::delta_one(), SieveWeights::mobius(30, table)};
  const CropW w;
  int checks = 0;
  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  };
  for (std::uint64_t x : {1000, 4321, 10000}) {
    for (int r = 1; r <= 3; ++r) {
      check(sum_G(x, r, table, par()).sum == oracle::sum_G(x, r, table), fmt::format("G x={} r={}", x, r));
      check(sum_H(x, r, table, par()).sum == oracle::sum_H(x, r, table), fmt::format("H x={} r={}", x, r));
    }
    check(sum_APT(x, table, par()).sum == oracle::sum_APT(x, table), fmt::format("APT x={}", x));
    const CropFunction f(static_cast<double>(x), 0.2);
    for (const auto& lam : lambdas) {
      check(sum_S(f, lam, gamma, table, par()).S == oracle::sum_S(f, lam, gamma, table),
            fmt::format("S x={} {}", x, lam.describe()));
      for (std::uint64_t d = 1; d <= 25; ++d) {
        check(A_d(f, d, lam, gamma, table, par()) == oracle::A_d(f, d, lam, gamma, table),
              fmt::format("A_d x={} d={} {}", x, d, lam.describe()));
        check(B_d(x, d, lam, w, table, par()) == oracle::B_d(x, d, lam, table),
              fmt::format("B_d x={} d={} {}", x, d, lam.describe()));
      }
    }
    for (std::uint64_t d = 1; d <= 25; d += 2) {
      check(appendix_Ad(x, d, table, par()).A == oracle::appendix_A(x, d, table),
            fmt::format("appendix x={} d={}", x, d));
    }
  }
  Outcome o;
  o.pass = failures.empty();
  o.detail = fmt::format("{} bitwise comparisons at x <= 1e4, r <= 3, d <= 25; {} differ{}", checks, failures.size(),
                         failures.empty() ? "" : " (first: " + failures.front() + ")");
  return o;
}

// 7 ----------------------------------------------------------------------------------
Outcome model_proposition() {
  constexpr std::uint64_t x = 10'000'000;
  const FactorTable table(x);
  const auto one = SieveWeights::delta_one();
  const CropW w;
  Outcome o;
  double ratio5 = 0.0;
  bool errors_ok = true;
  o.table = "  d   B_d(1e7)            main                ratio         |B-main|/(sqrt(d x) log x)\n";
  for (std::uint64_t d : {5, 13, 25}) {
    const double b = B_d(x, d, one, w, table, par());
    const double m = B_d_main(x, d, one, table);
    const double scale = std::sqrt(double(d) * double(x)) * std::log(double(x));
    const double norm_err = std::abs(b - m) / scale;
    if (d == 5) ratio5 = b / m;
    errors_ok = errors_ok && norm_err <= kModelErrorConstant;
    o.table += fmt::format("  {:<3} {:<19.12g} {:<19.12g} {:<13.8f} {:.4g}\n", d, b, m, b / m, norm_err);
  }
  o.pass = std::abs(ratio5 - 1.0) <= kModelBand && errors_ok;
  o.detail = fmt::format("B_5(1e7)/main = {:.6f} (band 1 +- {:g}); normalized error <= {:g} for d in {{5, 13, 25}}: {}",
                         ratio5, kModelBand, kModelErrorConstant, errors_ok ? "yes" : "no");
  return o;
}

// 8 ----------------------------------------------------------------------------------
Outcome gpc_table() {
  const auto t0 = Clock::now();
  const FactorTable table(prime_sum_table_limit(1'000'000'000));
  const double c = c_reference_constant();
  Outcome o;
  bool in_band = true;
  o.table = "  x        G_1(x)              c x                 G_1/(c x)    pairs     seconds\n";
  for (std::uint64_t x : {1'000'000ULL, 10'000'000ULL, 100'000'000ULL, 1'000'000'000ULL}) {
    const SumReport r = sum_G(x, 1, table, par());
    const double ratio = r.sum / (c * double(x));
    in_band = in_band && ratio >= kGBandLo && ratio <= kGBandHi;
    o.table += fmt::format("  {:<8.0e} {:<19.12g} {:<19.12g} {:<12.8f} {:<9} {:.2f}\n", double(x), r.sum, c * double(x),
                           ratio, r.pairs, r.seconds);
  }
  const double secs = since(t0);
  o.pass = in_band && secs <= kBudget8;
  o.detail = fmt::format("all ratios in [{:g}, {:g}]: {}; {:.1f} s on {} thread(s) (<= {:g})", kGBandLo, kGBandHi,
                         in_band ? "yes" : "no", secs, par().threads, kBudget8);
  return o;
}

// 9 ----------------------------------------------------------------------------------
Outcome h3_apt_stability() {
  const FactorTable table(prime_sum_table_limit(100'000'000));
  const std::vector<std::uint64_t> scales = {100'000, 1'000'000, 5'000'000, 10'000'000, 50'000'000, 100'000'000};
  std::map<std::uint64_t, double> h3, apt;
  Outcome o;
  o.table = "  x        H_3/(x log^2 x)   APT log x / x\n";
  for (auto x : scales) {
    const double lx = std::log(double(x));
    h3[x] = sum_H(x, 3, table, par()).sum / (double(x) * lx * lx);
    apt[x] = sum_APT(x, table, par()).sum * lx / double(x);
    o.table += fmt::format("  {:<8.1e} {:<17.8f} {:.8f}\n", double(x), h3[x], apt[x]);
  }
  double worst = 0.0;
  std::string drift;
  for (std::uint64_t top : {10'000'000ULL, 100'000'000ULL}) {
    const double dh = std::abs(h3[top] / h3[top / 2] - 1.0);
    const double da = std::abs(apt[top] / apt[top / 2] - 1.0);
    worst = std::max({worst, dh, da});
    drift += fmt::format(" x={:.0e}: H_3 {:.2f}%, APT {:.2f}%;", double(top), 100 * dh, 100 * da);
  }
  o.pass = worst <= kDoublingDrift;
  o.detail = fmt::format("drift from x/2 to x at the top two scales:{} max {:.2f}% (<= {:g}%)", drift, 100 * worst,
                         100 * kDoublingDrift);
  return o;
}

// 10 ---------------------------------------------------------------------------------
Outcome cli_determinism() {
  using namespace gausslab::cli;
  const std::vector<std::vector<std::string>> commands = {
      {"constants", "--pmax", "1e6", "--pmax-raw", "1e7"},
      {"gsum", "--x", "1e6,1e7", "--r", "1"},
      {"gsum", "--x", "1e6", "--r", "3", "--format", "json"},
      {"hsum", "--x", "1e6", "--r", "3"},
      {"apt", "--x", "1e6"},
      {"ssum", "--x", "1e6", "--lambda", "mobius:100"},
      {"congruence", "--x", "1e6", "--D", "100"},
      {"model", "--x", "1e6"},
      {"appendix", "--x", "1e5", "--d-max", "25"},
      {"largesieve", "--trials", "1000", "--seed", "42"},
      {"omega", "--x", "1e6"},
  };
  int differ = 0, failed = 0;
  std::string names;
  for (const auto& args : commands) {
    std::string outputs[2];
    int k = 0;
    for (const char* threads : {"1", "4"}) {
      std::vector<std::string> full = {"gausslab"};
      full.insert(full.end(), args.begin(), args.end());
      full.insert(full.end(), {"--threads", threads});
      std::vector<const char*> argv;
      for (auto& a : full) argv.push_back(a.c_str());
      const ParseOutcome p = parse_args(static_cast<int>(argv.size()), argv.data());
      std::ostringstream out, log;
      failed += !p.config || run(*p.config, out, log) != kOk;
      outputs[k++] = out.str();
    }
    if (outputs[0] != outputs[1] || outputs[0].empty()) {
      ++differ;
      names += " " + args[0];
    }
  }
  Outcome o;
  o.pass = differ == 0 && failed == 0;
  o.detail = fmt::format("{} command configurations run with 1 and 4 threads: {} differ{}, {} runs failed",
                         commands.size(), differ, names, failed);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "constants identities", constants_identities},
      {2, "root machinery", root_machinery},
      {3, "large sieve bound", large_sieve},
      {4, "Poisson identity", poisson_identity},
      {5, "off-diagonal congruence system", congruence_system},
      {6, "oracle equivalence", oracle_equivalence},
      {7, "model sequence vs main term", model_proposition},
      {8, "G_1 table", gpc_table},
      {9, "H_3 and APT stability", h3_apt_stability},
      {10, "CLI determinism", cli_determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  std::string tables;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    fmt::print("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail);
    std::fflush(stdout);
    if (!o.table.empty()) tables += fmt::format("\n[{}] {}\n{}", c.id, c.title, o.table);
  }
  fmt::print("{}", tables);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
