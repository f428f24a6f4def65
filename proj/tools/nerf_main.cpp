// Command-line surface: analytic certificates, sweep curves, Monte Carlo
// erasure simulation, and the self-check suite.
//
// Exit codes: 0 success, 1 verification failure, 2 vacuous certificate,
// 64 usage, 65 domain error, 66 enumeration cap refusal.

#include <CLI11.hpp>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "nerf/nerf.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitVacuous = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDomain = 65;
constexpr int kExitCap = 66;

nerf::Field parse_field(const std::string& s) {
  return s == "complex" ? nerf::Field::Complex : nerf::Field::Real;
}

nerf::ConstantConvention parse_convention(const std::string& s) {
  return s == "theorem" ? nerf::ConstantConvention::TheoremStatement
                        : nerf::ConstantConvention::DerivationEq29;
}

struct BoundsArgs {
  std::int64_t n = 0, bigN = 0, bigK = 0;
  double tau0 = 0.25;
  std::string field = "real";
  std::string convention = "derivation";
};

int cmd_bounds(const BoundsArgs& a) {
  nerf::NerfQuery q;
  q.n = a.n;
  q.bigN = a.bigN;
  q.bigK = a.bigK;
  q.tau0 = a.tau0;
  q.field = parse_field(a.field);
  q.convention = parse_convention(a.convention);
  nerf::NerfCertificate cert = nerf::nerf_certificate(q);
  std::cout << nerf::certificate_to_json(cert, q) << "\n";
  std::cerr << "keep " << a.bigK << " of " << a.bigN << " vectors in dimension " << a.n
            << ": alpha=" << nerf::format_g17(cert.alpha)
            << " beta=" << nerf::format_g17(cert.beta)
            << " beta/alpha=" << nerf::format_g17(cert.beta / cert.alpha)
            << " failure probability <= "
            << nerf::format_g17(std::exp(std::min(cert.log_failure_prob, 0.0))) << "\n";
  return kExitOk;
}

struct CurveArgs {
  std::string mode = "fixed_K";
  double ratio = 0.0;
  int points = 200;
  double s_min = 0.0;
  double s_max = 0.99;
  double tau0 = 0.25;
  std::string field = "real";
  std::string convention = "derivation";
};

int cmd_curve(const CurveArgs& a) {
  nerf::SweepSpec spec;
  spec.mode = (a.mode == "fixed_N") ? nerf::SweepMode::FixedNVaryK
                                    : nerf::SweepMode::FixedKVaryN;
  spec.ratio = a.ratio;
  spec.points = a.points;
  spec.s_min = a.s_min;
  spec.s_max = a.s_max;
  spec.tau0 = a.tau0;
  spec.field = parse_field(a.field);
  spec.convention = parse_convention(a.convention);
  std::vector<nerf::CurvePoint> pts = nerf::bounds_curve(spec);
  nerf::write_curve_csv(std::cout, pts);
  return kExitOk;
}

struct SimulateArgs {
  std::int64_t n = 0, bigN = 0, bigK = 0;
  std::int64_t frames = 1;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  double tau0 = 0.25;
  std::string mode = "exhaustive";
  std::string field = "real";
  std::string convention = "derivation";
  double alpha = 0.0, beta = 0.0;
  bool have_bounds = false;
};

int cmd_simulate(const SimulateArgs& a) {
  nerf::Field field = parse_field(a.field);
  nerf::ReportMode mode = (a.mode == "sampled") ? nerf::ReportMode::Sampled
                                                : nerf::ReportMode::Exhaustive;
  double alpha = a.alpha, beta = a.beta;
  if (!a.have_bounds) {
    nerf::NerfQuery q;
    q.n = a.n;
    q.bigN = a.bigN;
    q.bigK = a.bigK;
    q.tau0 = a.tau0;
    q.field = field;
    q.convention = parse_convention(a.convention);
    nerf::NerfCertificate cert = nerf::nerf_certificate(q);
    alpha = cert.alpha;
    beta = cert.beta;
  }
  if (a.frames < 1) throw nerf::DomainError("simulate: frames must be positive");

  nerf::RngStream root(a.seed);
  std::vector<std::string> frame_docs;
  frame_docs.reserve(std::size_t(a.frames));
  std::int64_t violating_frames = 0;
  double worst = 0.0;
  double min_smin = std::numeric_limits<double>::infinity();
  double max_smax = 0.0;
  for (std::int64_t i = 0; i < a.frames; ++i) {
    nerf::FrameMatrix f = nerf::frame_from_gaussian(
        root.substream(2 * std::uint64_t(i)), a.n, a.bigN, field);
    nerf::ErasureReport rep = nerf::nerf_check(
        f, a.bigK, alpha, beta, mode, a.trials, root.substream(2 * std::uint64_t(i) + 1));
    if (rep.violations > 0) ++violating_frames;
    worst = std::max(worst, rep.worst_condition);
    min_smin = std::min(min_smin, rep.min_sigma_min);
    max_smax = std::max(max_smax, rep.max_sigma_max);
    frame_docs.push_back(nerf::report_to_json(rep));
  }

  nerf::JsonWriter w;
  w.begin_object();
  w.key("command").string("simulate");
  w.key("params").begin_object();
  w.key("n").integer(a.n);
  w.key("N").integer(a.bigN);
  w.key("K").integer(a.bigK);
  w.key("frames").integer(a.frames);
  w.key("mode").string(mode == nerf::ReportMode::Sampled ? "sampled" : "exhaustive");
  if (mode == nerf::ReportMode::Sampled)
    w.key("trials").integer(a.trials);
  else
    w.key("trials").null();
  w.key("seed").uinteger(a.seed);
  w.key("tau0").number(a.tau0);
  w.key("field").string(nerf::to_string(field));
  w.key("alpha").number(alpha);
  w.key("beta").number(beta);
  w.end_object();
  w.key("frames").begin_array();
  for (const std::string& d : frame_docs) w.raw(d);
  w.end_array();
  w.key("aggregate").begin_object();
  w.key("frames").integer(a.frames);
  w.key("violating_frames").integer(violating_frames);
  w.key("worst_condition").number(worst);
  w.key("min_sigma_min").number(min_smin);
  w.key("max_sigma_max").number(max_smax);
  w.end_object();
  w.end_object();
  std::cout << w.str() << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string check = "all";
  std::int64_t max_n = 30;
  std::int64_t n = 50, bigN = 200;
  std::int64_t trials = 1000;
  std::uint64_t seed = 20260822;
};

struct CheckPrinter {
  bool all_pass = true;

  void report(const std::string& name, const std::string& what, double observed,
              double bound, bool pass) {
    all_pass = all_pass && pass;
    std::printf("check %-10s %-46s observed=%-14.6g bound=%-14.6g margin=%-11.3g %s\n",
                name.c_str(), what.c_str(), observed, bound, bound - observed,
                pass ? "PASS" : "FAIL");
  }
};

void verify_binomial(CheckPrinter& out, std::int64_t max_n) {
  // exact integer binomials are the oracle; the entropy form must dominate
  double worst_gap = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::int64_t n = 0; n <= max_n; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      double exact = std::log(double(nerf::subset_count(n, k)));
      double bound = nerf::binomial_log_bound(n, k);
      double gap = bound - exact;
      if (k == 0 || k == n) {
        if (std::fabs(gap) > 1e-12) ok = false;
      } else if (gap < 0) {
        ok = false;
      }
      worst_gap = std::min(worst_gap, gap);
    }
  }
  out.report("binomial", "entropy bound dominates ln C(N,K), N <= " + std::to_string(max_n),
             -worst_gap, 0.0, ok);
}

void verify_ctilde(CheckPrinter& out, std::int64_t draws, std::uint64_t seed) {
  nerf::RngStream rng(seed, 101);
  double worst = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::int64_t i = 0; i < draws; ++i) {
    double lambda = 1.0 + 99.0 * std::max(rng.next_uniform(), 1e-12);
    double mu = 100.0 * std::max(rng.next_uniform(), 1e-12);
    double bigC = nerf::sigma_max_constant(lambda, mu, nerf::Field::Real,
                                           nerf::ConstantConvention::DerivationEq29);
    double ell = nerf::ell_constant(lambda, mu, nerf::Field::Real);
    nerf::PhiParams p{lambda, bigC, ell};
    nerf::PhiMaximum m = nerf::maximize_phi(p);
    nerf::CTildeApprox ap = nerf::approx_c_tilde(p);
    double excess = ap.c_tilde - m.c;
    worst = std::max(worst, excess);
    if (excess > 1e-12 * std::max(1.0, std::fabs(m.c))) ok = false;
  }
  out.report("ctilde", "phi(t0) <= sup phi over " + std::to_string(draws) + " draws",
             worst, 0.0, ok);
}

void verify_extremes(CheckPrinter& out, std::int64_t n, std::int64_t bigN,
                     std::int64_t trials, std::uint64_t seed) {
  nerf::ExtremesSummary s =
      nerf::empirical_extremes(n, bigN, nerf::Field::Real, trials, nerf::RngStream(seed, 7));
  double hi_ref = std::sqrt(double(bigN)) + std::sqrt(double(n));
  double lo_ref = std::sqrt(double(bigN)) - std::sqrt(double(n));
  double hi_dev = std::fabs(s.sigma_max.mean - hi_ref) / hi_ref;
  double lo_dev = std::fabs(s.sigma_min.mean - lo_ref) / lo_ref;
  out.report("extremes", "mean sigma_1 near sqrt(N)+sqrt(n)", hi_dev, 0.05, hi_dev <= 0.05);
  out.report("extremes", "mean sigma_n near sqrt(N)-sqrt(n)", lo_dev, 0.05, lo_dev <= 0.05);
}

void verify_gamma(CheckPrinter& out, std::int64_t n, std::int64_t bigN,
                  std::int64_t trials, std::uint64_t seed) {
  double lam = double(bigN) / double(n);
  double deltas[3] = {lam / (4.0 * std::numbers::e), lam / (2.0 * std::numbers::e), lam};
  const char* names[3] = {"delta=lambda/(4e)", "delta=lambda/(2e)", "delta=lambda"};
  for (int i = 0; i < 3; ++i) {
    double freq = nerf::empirical_gamma_tail(deltas[i], n, bigN, nerf::Field::Real, trials,
                                             nerf::RngStream(seed, 11 + std::uint64_t(i)));
    double p_bound = nerf::gamma_tail_bound(deltas[i], n, bigN, nerf::Field::Real).probability();
    double se = std::sqrt(std::max(p_bound * (1.0 - p_bound), 1e-12) / double(trials));
    double limit = std::min(1.0, p_bound + 3.0 * se);
    out.report("gamma", names[i], freq, limit, freq <= limit);
  }
}

void verify_rotation(CheckPrinter& out, std::int64_t n, std::int64_t bigN,
                     std::int64_t trials, std::uint64_t seed) {
  // two-sample KS between ||A* e1|| and ||A* v|| for a fixed random unit v
  nerf::RngStream vstream(seed, 31);
  std::vector<double> v(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  for (auto& x : v) {
    x = vstream.next_normal();
    norm2 += x * x;
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;

  std::vector<double> a(static_cast<std::size_t>(trials));
  std::vector<double> b(static_cast<std::size_t>(trials));
  nerf::RngStream rng(seed, 37);
  for (std::int64_t t = 0; t < trials; ++t) {
    nerf::RngStream s = rng.substream(std::uint64_t(t));
    double sum = 0.0;
    for (std::int64_t j = 0; j < bigN; ++j) {
      double x = s.next_normal();
      sum += x * x;
    }
    a[std::size_t(t)] = std::sqrt(sum);
    nerf::DenseMatrix m =
        nerf::gaussian_matrix(rng.substream(0x80000000ULL + std::uint64_t(t)), n, bigN,
                              nerf::Field::Real);
    double sum2 = 0.0;
    for (std::int64_t j = 0; j < bigN; ++j) {
      double dot = 0.0;
      for (std::int64_t i = 0; i < n; ++i) dot += v[std::size_t(i)] * m.real_at(i, j);
      sum2 += dot * dot;
    }
    b[std::size_t(t)] = std::sqrt(sum2);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(double(i) / double(a.size()) - double(j) / double(b.size())));
  }
  // critical value at the 1% level
  double crit = 1.6276236307187332 *
                std::sqrt(double(a.size() + b.size()) / double(a.size() * b.size()));
  out.report("rotation", "KS distance, e1 vs fixed random direction", d, crit, d <= crit);
}

int cmd_verify(const VerifyArgs& a) {
  CheckPrinter out;
  bool all = a.check == "all";
  if (all || a.check == "binomial") verify_binomial(out, a.max_n);
  if (all || a.check == "ctilde") verify_ctilde(out, 1000, a.seed);
  if (all || a.check == "extremes") verify_extremes(out, a.n, a.bigN, a.trials, a.seed);
  if (all || a.check == "gamma") verify_gamma(out, 10, 40, 100000, a.seed);
  if (all || a.check == "rotation") verify_rotation(out, 10, 40, 10000, a.seed);
  if (!out.all_pass) {
    std::printf("verification FAILED\n");
    return kExitVerifyFailed;
  }
  std::printf("all checks passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"erasure-robustness certificates for random Gaussian frames"};
  app.require_subcommand(1);

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand("bounds", "analytic certificate for one (n, N, K)");
  bounds->add_option("--n", ba.n, "ambient dimension")->required();
  bounds->add_option("--N", ba.bigN, "number of frame vectors")->required();
  bounds->add_option("--K", ba.bigK, "retained vectors, must exceed n")->required();
  bounds->add_option("--tau0", ba.tau0, "confidence exponent (default 0.25)");
  bounds->add_option("--field", ba.field, "real or complex")
      ->check(CLI::IsMember({"real", "complex"}));
  bounds->add_option("--convention", ba.convention, "derivation or theorem")
      ->check(CLI::IsMember({"derivation", "theorem"}));

  CurveArgs ca;
  CLI::App* curve = app.add_subcommand("curve", "certificate sweep as CSV");
  curve->add_option("--mode", ca.mode, "fixed_K or fixed_N")
      ->required()
      ->check(CLI::IsMember({"fixed_K", "fixed_N"}));
  curve->add_option("--ratio", ca.ratio, "K/n (fixed_K) or N/n (fixed_N)")->required();
  curve->add_option("--points", ca.points, "grid size (default 200)");
  curve->add_option("--s-min", ca.s_min, "smallest erasure proportion (default 0)");
  curve->add_option("--s-max", ca.s_max, "largest erasure proportion (default 0.99)");
  curve->add_option("--tau0", ca.tau0, "confidence exponent (default 0.25)");
  curve->add_option("--field", ca.field, "real or complex")
      ->check(CLI::IsMember({"real", "complex"}));
  curve->add_option("--convention", ca.convention, "derivation or theorem")
      ->check(CLI::IsMember({"derivation", "theorem"}));

  SimulateArgs sa;
  CLI::App* simulate =
      app.add_subcommand("simulate", "sample frames and check them against a certificate");
  simulate->add_option("--n", sa.n, "ambient dimension")->required();
  simulate->add_option("--N", sa.bigN, "number of frame vectors")->required();
  simulate->add_option("--K", sa.bigK, "retained vectors")->required();
  simulate->add_option("--frames", sa.frames, "independent frames to draw (default 1)");
  simulate->add_option("--trials", sa.trials, "sampled-mode subset draws (default 10000)");
  simulate->add_option("--seed", sa.seed, "stream seed (default 0)");
  simulate->add_option("--tau0", sa.tau0, "certificate confidence exponent (default 0.25)");
  simulate->add_option("--mode", sa.mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  simulate->add_option("--field", sa.field, "real or complex")
      ->check(CLI::IsMember({"real", "complex"}));
  simulate->add_option("--convention", sa.convention, "derivation or theorem")
      ->check(CLI::IsMember({"derivation", "theorem"}));
  CLI::Option* ao = simulate->add_option("--alpha", sa.alpha, "override certificate alpha");
  CLI::Option* bo = simulate->add_option("--beta", sa.beta, "override certificate beta");
  ao->needs(bo);
  bo->needs(ao);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "run the built-in validation suite");
  verify->add_option("--check", va.check, "all, binomial, ctilde, extremes, gamma, rotation")
      ->check(CLI::IsMember({"all", "binomial", "ctilde", "extremes", "gamma", "rotation"}));
  verify->add_option("--max-n", va.max_n, "binomial check range (default 30)");
  verify->add_option("--n", va.n, "extremes check rows (default 50)");
  verify->add_option("--N", va.bigN, "extremes check columns (default 200)");
  verify->add_option("--trials", va.trials, "extremes check trials (default 1000)");
  verify->add_option("--seed", va.seed, "stream seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(ba);
    if (curve->parsed()) return cmd_curve(ca);
    if (simulate->parsed()) {
      sa.have_bounds = ao->count() > 0;
      return cmd_simulate(sa);
    }
    if (verify->parsed()) return cmd_verify(va);
  } catch (const nerf::VacuousCertificate& e) {
    std::cerr << e.what() << "\n";
    return kExitVacuous;
  } catch (const nerf::EnumerationCapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitCap;
  } catch (const nerf::DomainError& e) {
    std::cerr << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
