#pragma once

#include <cmath>
#include <cstdint>

#include "nerf/dense_matrix.hpp"
#include "nerf/rng.hpp"
#include "nerf/singular_values.hpp"
#include "nerf/types.hpp"

namespace nerf {

// i.i.d. standard normal entries; complex entries are X + iY with X, Y
// independent standard normals. The stream is taken by value, so calling
// twice with the same stream yields bit-identical matrices.
inline DenseMatrix gaussian_matrix(RngStream rng, std::int64_t n, std::int64_t bigN,
                                   Field field) {
  if (n < 1 || bigN < 1) throw DomainError("gaussian_matrix: shape must be positive");
  DenseMatrix m(n, bigN, field);
  double* d = m.data();
  std::size_t count = m.value_count();
  for (std::size_t i = 0; i < count; ++i) d[i] = rng.next_normal();
  return m;
}

// Empirical frequency of {||A* v|| <= sqrt(delta n)} with v = e1, which by
// rotation invariance matches any fixed unit v; only the first row is drawn.
inline double empirical_gamma_tail(double delta, std::int64_t n, std::int64_t bigN,
                                   Field field, std::int64_t trials, const RngStream& rng) {
  if (!(delta > 0.0)) throw DomainError("empirical_gamma_tail: delta must be positive");
  if (trials < 1) throw DomainError("empirical_gamma_tail: trials must be positive");
  double level = delta * double(n);
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    RngStream s = rng.substream(std::uint64_t(t));
    double sum = 0.0;
    std::size_t reals = std::size_t(bigN) * (field == Field::Complex ? 2 : 1);
    for (std::size_t j = 0; j < reals; ++j) {
      double x = s.next_normal();
      sum += x * x;
    }
    if (sum <= level) ++hits;
  }
  return double(hits) / double(trials);
}

struct SampleStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct ExtremesSummary {
  SampleStats sigma_max;
  SampleStats sigma_min;
  std::int64_t trials = 0;
};

// Sample statistics of the extremal singular values over independent draws.
inline ExtremesSummary empirical_extremes(std::int64_t n, std::int64_t bigN, Field field,
                                          std::int64_t trials, const RngStream& rng) {
  if (trials < 1) throw DomainError("empirical_extremes: trials must be positive");
  ExtremesSummary out;
  out.trials = trials;
  double sum_hi = 0.0, sum_lo = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    DenseMatrix m = gaussian_matrix(rng.substream(std::uint64_t(t)), n, bigN, field);
    SingularExtremes se = extremal_singular_values(m);
    sum_hi += se.sigma_max;
    sum_lo += se.sigma_min;
    if (t == 0) {
      out.sigma_max.min = out.sigma_max.max = se.sigma_max;
      out.sigma_min.min = out.sigma_min.max = se.sigma_min;
    } else {
      out.sigma_max.min = std::min(out.sigma_max.min, se.sigma_max);
      out.sigma_max.max = std::max(out.sigma_max.max, se.sigma_max);
      out.sigma_min.min = std::min(out.sigma_min.min, se.sigma_min);
      out.sigma_min.max = std::max(out.sigma_min.max, se.sigma_min);
    }
  }
  out.sigma_max.mean = sum_hi / double(trials);
  out.sigma_min.mean = sum_lo / double(trials);
  return out;
}

}  // namespace nerf
