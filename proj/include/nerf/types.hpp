#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nerf {

enum class Field { Real, Complex };

// Two defensible choices for the upper singular value constant; the default
// follows the derivation (sqrt(2*mu) term), the alternative the looser
// statement form (sqrt(mu) term). Complex constants coincide for both.
enum class ConstantConvention { DerivationEq29, TheoremStatement };

inline const char* to_string(Field f) {
  return f == Field::Real ? "real" : "complex";
}

inline const char* to_string(ConstantConvention c) {
  return c == ConstantConvention::DerivationEq29 ? "DerivationEq29" : "TheoremStatement";
}

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when sup phi <= 0: the analytic lower bound carries no information.
struct VacuousCertificate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an exhaustive subset walk would exceed the configured cap.
struct EnumerationCapExceeded : std::runtime_error {
  EnumerationCapExceeded(std::string msg, std::uint64_t count, bool saturated)
      : std::runtime_error(std::move(msg)), subset_count(count), count_saturated(saturated) {}
  std::uint64_t subset_count;  // exact when !count_saturated
  bool count_saturated;
};

struct SvdFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PhiParams {
  double lambda;  // aspect ratio, > 1
  double bigC;    // upper constant C, > 0
  double ell;     // scale constant L, > 0
};

struct NerfQuery {
  std::int64_t n = 0;     // ambient dimension
  std::int64_t bigN = 0;  // frame vectors
  std::int64_t bigK = 0;  // retained vectors, n < K <= N
  double tau0 = 0.25;     // confidence exponent, > 0
  Field field = Field::Real;
  ConstantConvention convention = ConstantConvention::DerivationEq29;
};

struct NerfCertificate {
  double alpha = 0.0;  // lower frame constant, = c
  double beta = 0.0;   // upper frame constant, = C
  double log_failure_prob = 0.0;  // ln 3 - tau0 * n
  double lambda = 0.0;      // N / n
  double lambda_eff = 0.0;  // K / n
  double s_p = 0.0;         // entropy of the retention fraction, nats
  double mu = 0.0;          // lambda * s_p + tau0
  double bigC = 0.0;
  double ell = 0.0;
  double t_star = 0.0;  // maximizer of phi
  double c = 0.0;       // sup phi
  double c_tilde = 0.0; // phi at the closed-form warm start t0
  Field field = Field::Real;
  ConstantConvention constant_convention = ConstantConvention::DerivationEq29;
};

// Named log-domain probability bound. log_prob_bound may exceed 0; it is
// clamped only when reported as a probability.
struct TailBound {
  std::string name;
  double log_prob_bound = 0.0;
  std::vector<std::pair<std::string, double>> params;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool vacuous_threshold = false;  // threshold <= 0: the event is empty

  double probability() const { return std::exp(std::min(log_prob_bound, 0.0)); }
};

struct SingularExtremes {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double residual = 0.0;  // backward-error estimate, <= 1e-8 * sigma_max when accepted
};

}  // namespace nerf
