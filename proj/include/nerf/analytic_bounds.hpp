#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nerf/types.hpp"

namespace nerf {

// Binary entropy in nats at retention fraction p. Defined as 0 at p = 1 by
// continuity; peaks at ln 2 for p = 1/2.
inline double shannon_entropy_nat(double p) {
  if (!(p > 0.0) || p > 1.0) throw DomainError("entropy: p must lie in (0, 1]");
  if (p == 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

// N * s_{K/N}, an upper bound on ln C(N, K). Exactly 0 at K = 0 and K = N.
inline double binomial_log_bound(std::int64_t bigN, std::int64_t bigK) {
  if (bigK < 0 || bigK > bigN) throw DomainError("binomial_log_bound: K outside [0, N]");
  if (bigK == 0 || bigK == bigN) return 0.0;
  double p = double(bigK) / double(bigN);
  return double(bigN) * shannon_entropy_nat(p);
}

namespace detail {

inline void check_shape(std::int64_t n, std::int64_t bigN) {
  if (n < 1 || bigN < n) throw DomainError("shape: need N >= n >= 1");
}

inline double log_sum_exp(double a, double b) {
  double hi = std::max(a, b), lo = std::min(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace detail

// Tail of the largest singular value beyond sqrt(N) + sqrt(n) + t. The
// complex case goes through the stacked real n x 2N matrix B with
// sigma1(A) <= sqrt(2) sigma1(B), so the threshold picks up the sqrt(2).
inline TailBound sigma_max_tail(std::int64_t n, std::int64_t bigN, double t, Field field) {
  detail::check_shape(n, bigN);
  if (t < 0.0) throw DomainError("sigma_max_tail: t must be nonnegative");
  TailBound b;
  b.name = "sigma_max_tail";
  b.log_prob_bound = -0.5 * t * t;
  double sn = std::sqrt(double(n));
  if (field == Field::Real) {
    b.threshold = std::sqrt(double(bigN)) + sn + t;
  } else {
    b.threshold = std::numbers::sqrt2 * (std::sqrt(2.0 * double(bigN)) + sn + t);
  }
  b.params = {{"n", double(n)}, {"N", double(bigN)}, {"t", t}};
  return b;
}

// Classical lower tail: P(sigma_n < sqrt(N) - sqrt(n) - t) <= e^{-t^2/2}.
// Real field only. A nonpositive threshold makes the event empty; the bound
// is still reported, flagged vacuous.
inline TailBound classical_sigma_min_tail(std::int64_t n, std::int64_t bigN, double t) {
  detail::check_shape(n, bigN);
  if (bigN <= n) throw DomainError("classical_sigma_min_tail: need N > n");
  if (t < 0.0) throw DomainError("classical_sigma_min_tail: t must be nonnegative");
  TailBound b;
  b.name = "classical_sigma_min_tail";
  b.log_prob_bound = -0.5 * t * t;
  b.threshold = std::sqrt(double(bigN)) - std::sqrt(double(n)) - t;
  b.vacuous_threshold = !(b.threshold > 0.0);
  b.params = {{"n", double(n)}, {"N", double(bigN)}, {"t", t}};
  return b;
}

// P(||A* v|| <= sqrt(delta n)) <= (2 e delta / lambda)^{N/2}, exponent N for
// the complex field. Grouped as log(delta) - log(lambda/(2e)) so that
// delta = lambda/(2e) cancels exactly to a zero log bound.
inline TailBound gamma_tail_bound(double delta, std::int64_t n, std::int64_t bigN, Field field) {
  detail::check_shape(n, bigN);
  if (!(delta > 0.0)) throw DomainError("gamma_tail_bound: delta must be positive");
  double lam = double(bigN) / double(n);
  double log_base = std::log(delta) - std::log(lam / (2.0 * std::numbers::e));
  double expo = (field == Field::Real) ? 0.5 * double(bigN) : double(bigN);
  TailBound b;
  b.name = "gamma_tail_bound";
  b.log_prob_bound = expo * log_base;
  b.threshold = std::sqrt(delta * double(n));
  b.params = {{"delta", delta}, {"n", double(n)}, {"N", double(bigN)}};
  return b;
}

// ln of the covering number of the unit sphere at mesh epsilon:
// n ln(1 + 2/eps), doubled for the complex sphere.
inline double net_cardinality_bound(double epsilon, std::int64_t n, Field field) {
  if (!(epsilon > 0.0)) throw DomainError("net_cardinality_bound: epsilon must be positive");
  if (n < 1) throw DomainError("net_cardinality_bound: n must be positive");
  double per_dim = std::log1p(2.0 / epsilon);
  return (field == Field::Real ? double(n) : 2.0 * double(n)) * per_dim;
}

// Union bound for P(sigma_n(A) <= c sqrt(n)): the net cardinality multiplies
// the sum of the gamma-tail term at delta = (c + eps C)^2 and the sigma_max
// tail at level C sqrt(n). Evaluated fully in log domain.
inline TailBound union_tail_bound(double c, double bigC, double epsilon, std::int64_t n,
                                  double lambda, Field field) {
  if (!(lambda > 1.0)) throw DomainError("union_tail_bound: lambda must exceed 1");
  if (c < 0.0) throw DomainError("union_tail_bound: c must be nonnegative");
  if (!(epsilon > 0.0)) throw DomainError("union_tail_bound: epsilon must be positive");
  if (n < 1) throw DomainError("union_tail_bound: n must be positive");
  double sqrt_lam = std::sqrt(lambda);
  if (field == Field::Real) {
    if (bigC < 1.0 + sqrt_lam)
      throw DomainError("union_tail_bound: need C >= 1 + sqrt(lambda)");
  } else {
    if (bigC < std::numbers::sqrt2 + 2.0 * sqrt_lam)
      throw DomainError("union_tail_bound: need C >= sqrt(2) + 2 sqrt(lambda)");
  }

  double net = net_cardinality_bound(epsilon, n, field);
  double bigNreal = lambda * double(n);
  double reach = c + epsilon * bigC;
  double log_base = std::log(2.0 * std::numbers::e / lambda) + 2.0 * std::log(reach);
  double gamma_expo = (field == Field::Real) ? 0.5 * bigNreal : bigNreal;
  double s_gamma = gamma_expo * log_base;

  double dev = (field == Field::Real)
                   ? bigC - 1.0 - sqrt_lam
                   : bigC / std::numbers::sqrt2 - std::sqrt(2.0 * lambda) - 1.0;
  double s_max = -0.5 * double(n) * dev * dev;

  TailBound b;
  b.name = "union_tail_bound";
  b.log_prob_bound = net + detail::log_sum_exp(s_gamma, s_max);
  b.threshold = c * std::sqrt(double(n));
  b.params = {{"c", c}, {"C", bigC}, {"epsilon", epsilon},
              {"n", double(n)}, {"lambda", lambda}};
  return b;
}

// Upper singular value constant C for decay exponent mu.
inline double sigma_max_constant(double lambda, double mu, Field field,
                                 ConstantConvention convention) {
  if (!(lambda > 1.0)) throw DomainError("sigma_max_constant: lambda must exceed 1");
  if (!(mu > 0.0)) throw DomainError("sigma_max_constant: mu must be positive");
  double sqrt_lam = std::sqrt(lambda);
  if (field == Field::Complex)
    return std::numbers::sqrt2 + 2.0 * sqrt_lam + 2.0 * std::sqrt(mu);
  if (convention == ConstantConvention::DerivationEq29)
    return 1.0 + sqrt_lam + std::sqrt(2.0 * mu);
  return 1.0 + sqrt_lam + std::sqrt(mu);
}

// Scale constant L: ln L = ln(2e/lambda)/2 + mu/lambda, the mu term halved
// for the complex field. mu = 0 is accepted so the boundary L = 1 at
// lambda = 2e is testable.
inline double ell_constant(double lambda, double mu, Field field) {
  if (!(lambda > 1.0)) throw DomainError("ell_constant: lambda must exceed 1");
  if (mu < 0.0) throw DomainError("ell_constant: mu must be nonnegative");
  double log_l = 0.5 * std::log((2.0 * std::numbers::e) / lambda);
  log_l += (field == Field::Real) ? mu / lambda : mu / (2.0 * lambda);
  return std::exp(log_l);
}

namespace detail {

inline void check_phi_params(const PhiParams& p) {
  if (!(p.lambda > 1.0)) throw DomainError("phi: lambda must exceed 1");
  if (!(p.bigC > 0.0)) throw DomainError("phi: C must be positive");
  if (!(p.ell > 0.0)) throw DomainError("phi: L must be positive");
}

}  // namespace detail

// phi(t) = t^{1/lambda} / L - 2 C t / (1 - t) on (0, 1).
inline double phi(double t, const PhiParams& p) {
  detail::check_phi_params(p);
  if (!(t > 0.0) || !(t < 1.0)) throw DomainError("phi: t must lie in (0, 1)");
  double first = std::exp(std::log(t) / p.lambda) / p.ell;
  return first - 2.0 * p.bigC * t / (1.0 - t);
}

struct PhiMaximum {
  double t_star = 0.0;
  double c = 0.0;
};

struct CTildeApprox {
  double t0 = 0.0;
  double c_tilde = 0.0;       // phi evaluated at t0
  double closed_form = 0.0;   // (1 - 1/lambda) (2 C lambda L^lambda)^{-1/(lambda-1)}
};

namespace detail {

inline double log_t0(const PhiParams& p) {
  return -(p.lambda / (p.lambda - 1.0)) * std::log(2.0 * p.bigC * p.lambda * p.ell);
}

// phi with the argument in log form; returns 0 when t underflows, the limit
// value at t -> 0+.
inline double phi_log_arg(double u, const PhiParams& p) {
  double t = std::exp(u);
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return -std::numeric_limits<double>::infinity();
  return std::exp(u / p.lambda) / p.ell - 2.0 * p.bigC * t / (1.0 - t);
}

}  // namespace detail

// Supremum of phi over (0, 1). phi is concave (t^{1/lambda} and -2Ct/(1-t)
// both are), so phi(e^u) is unimodal in u and a golden-section bracket around
// the closed-form warm start u0 = ln t0 suffices; |ln t* - ln t0| < 1 for all
// admissible parameters, far inside the +-20 bracket. The warm start itself
// is kept as a candidate so the returned c never falls below phi(t0).
inline PhiMaximum maximize_phi(const PhiParams& p) {
  detail::check_phi_params(p);
  double u0 = detail::log_t0(p);
  double lo = u0 - 20.0;
  double hi = std::min(u0 + 20.0, -1e-8);
  if (lo >= hi) lo = hi - 40.0;

  const double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = detail::phi_log_arg(x1, p);
  double f2 = detail::phi_log_arg(x2, p);

  double best_u = (f1 >= f2) ? x1 : x2;
  double best_f = std::max(f1, f2);

  for (int iter = 0; iter < 256 && hi - lo > 1e-12; ++iter) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = detail::phi_log_arg(x1, p);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = detail::phi_log_arg(x2, p);
    }
    if (f1 > best_f) { best_f = f1; best_u = x1; }
    if (f2 > best_f) { best_f = f2; best_u = x2; }
  }

  double f0 = (u0 < 0.0) ? detail::phi_log_arg(u0, p) : -std::numeric_limits<double>::infinity();
  if (f0 > best_f) { best_f = f0; best_u = u0; }

  PhiMaximum m;
  m.t_star = std::exp(best_u);
  m.c = best_f;
  return m;
}

// Closed-form warm start t0 = (2 C lambda L)^{-lambda/(lambda-1)} and the two
// companion values: phi(t0), which satisfies c_tilde <= sup phi, and the pure
// closed form, which omits the (1-t0)^{-1} factor and can slightly exceed the
// supremum. Their relative gap is below 2 t0 / (1 - t0).
inline CTildeApprox approx_c_tilde(const PhiParams& p) {
  detail::check_phi_params(p);
  CTildeApprox a;
  double u0 = detail::log_t0(p);
  a.t0 = std::exp(u0);
  a.c_tilde = detail::phi_log_arg(u0, p);
  double log_closed = -(std::log(2.0 * p.bigC * p.lambda) + p.lambda * std::log(p.ell)) /
                          (p.lambda - 1.0) +
                      std::log1p(-1.0 / p.lambda);
  a.closed_form = std::exp(log_closed);
  return a;
}

struct SmallestSvConstants {
  double c = 0.0;
  double bigC = 0.0;
  double ell = 0.0;
  double t_star = 0.0;
  bool vacuous = false;  // c <= 0: the two-sided bound is uninformative
};

// Two-sided constants (c, C) such that c sqrt(n) <= sigma_n <= sigma_1 <=
// C sqrt(n) holds with probability at least 1 - 3 e^{-mu n}.
inline SmallestSvConstants smallest_sv_constant(double lambda, double mu, Field field,
                                                ConstantConvention convention) {
  SmallestSvConstants r;
  r.bigC = sigma_max_constant(lambda, mu, field, convention);
  r.ell = ell_constant(lambda, mu, field);
  PhiMaximum m = maximize_phi({lambda, r.bigC, r.ell});
  r.c = m.c;
  r.t_star = m.t_star;
  r.vacuous = !(r.c > 0.0);
  return r;
}

// Certificate pipeline on dimensionless ratios. alpha and beta depend only on
// (lambda, lambda_eff, tau0); the ambient dimension enters the failure
// probability alone. Throws VacuousCertificate when sup phi <= 0.
inline NerfCertificate ratio_certificate(double lambda, double lambda_eff, double tau0,
                                         Field field, ConstantConvention convention,
                                         double n_for_prob) {
  if (!(lambda_eff > 1.0))
    throw DomainError("certificate: need K > n (effective aspect ratio above 1)");
  if (!(lambda >= lambda_eff)) throw DomainError("certificate: need K <= N");
  if (!(tau0 > 0.0)) throw DomainError("certificate: tau0 must be positive");

  NerfCertificate cert;
  cert.lambda = lambda;
  cert.lambda_eff = lambda_eff;
  cert.field = field;
  cert.constant_convention = convention;
  double p = lambda_eff / lambda;
  cert.s_p = shannon_entropy_nat(std::min(p, 1.0));
  cert.mu = lambda * cert.s_p + tau0;

  SmallestSvConstants sv = smallest_sv_constant(lambda_eff, cert.mu, field, convention);
  cert.bigC = sv.bigC;
  cert.ell = sv.ell;
  cert.c = sv.c;
  cert.t_star = sv.t_star;
  cert.c_tilde = approx_c_tilde({lambda_eff, sv.bigC, sv.ell}).c_tilde;
  cert.alpha = sv.c;
  cert.beta = sv.bigC;
  cert.log_failure_prob = std::log(3.0) - tau0 * n_for_prob;
  if (sv.vacuous)
    throw VacuousCertificate("certificate is vacuous: sup phi <= 0 at these ratios");
  return cert;
}

// Certificate for retaining K of N frame vectors in dimension n, holding with
// probability at least 1 - 3 e^{-tau0 n}.
inline NerfCertificate nerf_certificate(const NerfQuery& q) {
  if (q.n < 1) throw DomainError("certificate: n must be positive");
  if (q.bigK <= q.n) throw DomainError("certificate: need K > n");
  if (q.bigK > q.bigN) throw DomainError("certificate: need K <= N");
  double lambda = double(q.bigN) / double(q.n);
  double lambda_eff = double(q.bigK) / double(q.n);
  return ratio_certificate(lambda, lambda_eff, q.tau0, q.field, q.convention, double(q.n));
}

}  // namespace nerf
