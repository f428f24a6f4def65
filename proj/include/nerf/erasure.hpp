#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nerf/dense_matrix.hpp"
#include "nerf/random_matrix.hpp"
#include "nerf/rng.hpp"
#include "nerf/singular_values.hpp"
#include "nerf/types.hpp"

namespace nerf {

// Frame matrix F = A / sqrt(n). The raw matrix is stored and the scale is
// applied at column extraction, so spectra of F relate to spectra of A by an
// exact scalar factor.
class FrameMatrix {
 public:
  FrameMatrix(DenseMatrix base, bool normalized)
      : base_(std::move(base)), normalized_(normalized) {
    scale_ = normalized_ ? 1.0 / std::sqrt(double(base_.rows())) : 1.0;
    if (base_.cols() >= base_.rows()) {
      // full rank is part of the contract when the shape allows it
      SingularExtremes se = extremal_singular_values(base_);
      if (!(se.sigma_min > 0.0))
        throw DomainError("FrameMatrix: base matrix is rank deficient");
    }
  }

  const DenseMatrix& base() const { return base_; }
  bool normalized() const { return normalized_; }
  double scale() const { return scale_; }
  std::int64_t n() const { return base_.rows(); }
  std::int64_t frame_count() const { return base_.cols(); }

 private:
  DenseMatrix base_;
  bool normalized_;
  double scale_;
};

inline FrameMatrix frame_from_gaussian(RngStream rng, std::int64_t n, std::int64_t bigN,
                                       Field field) {
  return FrameMatrix(gaussian_matrix(rng, n, bigN, field), true);
}

// Strictly increasing kept-column indices, 0-based.
struct ErasurePattern {
  std::vector<std::int64_t> kept;

  void validate(std::int64_t bigN) const {
    if (kept.empty()) throw DomainError("ErasurePattern: at least one column required");
    std::int64_t prev = -1;
    for (std::int64_t k : kept) {
      if (k <= prev || k >= bigN)
        throw DomainError("ErasurePattern: indices must be strictly increasing and in range");
      prev = k;
    }
  }
};

// Columns of F selected by the pattern, scale applied entrywise.
inline DenseMatrix submatrix(const FrameMatrix& f, const ErasurePattern& s) {
  s.validate(f.frame_count());
  const DenseMatrix& b = f.base();
  std::int64_t n = b.rows();
  std::int64_t k = std::int64_t(s.kept.size());
  DenseMatrix out(n, k, b.field());
  double g = f.scale();
  if (b.field() == Field::Real) {
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < k; ++j)
        out.real_at(i, j) = b.real_at(i, s.kept[std::size_t(j)]) * g;
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < k; ++j) {
        auto v = b.cplx_at(i, s.kept[std::size_t(j)]);
        out.set_cplx(i, j, {v.real() * g, v.imag() * g});
      }
  }
  return out;
}

inline constexpr std::uint64_t kSubsetCountSaturated =
    std::numeric_limits<std::uint64_t>::max();

// Exact C(N, K); returns kSubsetCountSaturated above ~4e18.
inline std::uint64_t subset_count(std::int64_t bigN, std::int64_t bigK) {
  if (bigK < 0 || bigK > bigN) throw DomainError("subset_count: K outside [0, N]");
  std::int64_t k = std::min(bigK, bigN - bigK);
  const std::uint64_t limit = 4'000'000'000'000'000'000ULL;
  __uint128_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (__uint128_t)(std::uint64_t)(bigN - k + i) / (__uint128_t)(std::uint64_t)i;
    if (r > limit) return kSubsetCountSaturated;
  }
  return (std::uint64_t)r;
}

// Enumeration cap for exhaustive scans; NERF_ENUM_CAP overrides the default.
inline std::uint64_t enumeration_cap() {
  if (const char* env = std::getenv("NERF_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ULL;
}

// All K-subsets of {0..N-1} in lexicographic order, O(K) state.
class SubsetIterator {
 public:
  SubsetIterator(std::int64_t bigN, std::int64_t bigK) : bigN_(bigN) {
    cur_.kept.resize(std::size_t(bigK));
    for (std::int64_t i = 0; i < bigK; ++i) cur_.kept[std::size_t(i)] = i;
  }

  const ErasurePattern& current() const { return cur_; }
  bool done() const { return done_; }

  void advance() {
    auto& v = cur_.kept;
    std::int64_t k = std::int64_t(v.size());
    std::int64_t i = k - 1;
    while (i >= 0 && v[std::size_t(i)] == bigN_ - k + i) --i;
    if (i < 0) {
      done_ = true;
      return;
    }
    ++v[std::size_t(i)];
    for (std::int64_t j = i + 1; j < k; ++j) v[std::size_t(j)] = v[std::size_t(j - 1)] + 1;
  }

 private:
  std::int64_t bigN_;
  ErasurePattern cur_;
  bool done_ = false;
};

// Iterator over all K-subsets, refused when C(N, K) exceeds the cap.
inline SubsetIterator subsets_lex(std::int64_t bigN, std::int64_t bigK) {
  if (bigK < 1 || bigK > bigN) throw DomainError("subsets_lex: need 0 < K <= N");
  std::uint64_t total = subset_count(bigN, bigK);
  std::uint64_t cap = enumeration_cap();
  if (total == kSubsetCountSaturated || total > cap) {
    std::string count_str = (total == kSubsetCountSaturated)
                                ? std::string("more than 4e18")
                                : std::to_string(total);
    throw EnumerationCapExceeded(
        "exhaustive enumeration refused: C(" + std::to_string(bigN) + ", " +
            std::to_string(bigK) + ") = " + count_str + " subsets exceeds cap " +
            std::to_string(cap) + "; use sampled mode",
        total, total == kSubsetCountSaturated);
  }
  return SubsetIterator(bigN, bigK);
}

enum class ReportMode { Exhaustive, Sampled };

struct ConditionQuantiles {
  double q50 = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
};

struct ErasureReport {
  ReportMode mode = ReportMode::Exhaustive;
  std::uint64_t total = 0;  // subsets visited
  double worst_condition = 0.0;
  std::vector<std::int64_t> worst_pattern;
  double min_sigma_min = 0.0;
  double max_sigma_max = 0.0;
  std::int64_t violations = 0;
  bool checked_bounds = false;
  double alpha = 0.0;
  double beta = 0.0;
  ConditionQuantiles quantiles;
  std::optional<std::uint64_t> seed;
};

namespace detail {

constexpr std::size_t kQuantileSampleCap = 8192;

struct ScanState {
  std::uint64_t index = 0;
  std::uint64_t stride = 1;
  std::vector<double> cond_sample;
  double worst = 0.0;
  std::vector<std::int64_t> worst_pattern;
  double min_smin = std::numeric_limits<double>::infinity();
  double max_smax = 0.0;
  std::int64_t violations = 0;
};

// Spectra of one kept-column pattern folded into the running report.
// A pattern with fewer kept columns than ambient dimensions has smallest
// singular value 0 over the ambient sphere, hence infinite condition.
inline void scan_accumulate(ScanState& st, const FrameMatrix& f, const ErasurePattern& pat,
                            const double* alpha, const double* beta) {
  DenseMatrix sub = submatrix(f, pat);
  SingularExtremes se = extremal_singular_values(sub);
  double smin = (std::int64_t(pat.kept.size()) < f.n()) ? 0.0 : se.sigma_min;
  double cond = (smin <= 1e-12 * se.sigma_max)
                    ? std::numeric_limits<double>::infinity()
                    : se.sigma_max / smin;
  if (st.worst_pattern.empty() || cond > st.worst) {
    st.worst = cond;
    st.worst_pattern = pat.kept;
  }
  st.min_smin = std::min(st.min_smin, smin);
  st.max_smax = std::max(st.max_smax, se.sigma_max);
  if (alpha && beta && (smin < *alpha || se.sigma_max > *beta)) ++st.violations;
  if (st.index % st.stride == 0) st.cond_sample.push_back(cond);
  ++st.index;
}

inline ErasureReport finish_scan(ScanState& st, ReportMode mode, std::uint64_t total,
                                 const double* alpha, const double* beta,
                                 std::optional<std::uint64_t> seed) {
  ErasureReport r;
  r.mode = mode;
  r.total = total;
  r.worst_condition = st.worst;
  r.worst_pattern = std::move(st.worst_pattern);
  r.min_sigma_min = st.min_smin;
  r.max_sigma_max = st.max_smax;
  r.violations = st.violations;
  if (alpha && beta) {
    r.checked_bounds = true;
    r.alpha = *alpha;
    r.beta = *beta;
  }
  std::sort(st.cond_sample.begin(), st.cond_sample.end());
  std::size_t m = st.cond_sample.size();
  auto at = [&](double q) { return st.cond_sample[std::size_t(q * double(m - 1))]; };
  r.quantiles = {at(0.5), at(0.9), at(0.99)};
  r.seed = seed;
  return r;
}

inline ErasureReport exhaustive_scan(const FrameMatrix& f, std::int64_t bigK,
                                     const double* alpha, const double* beta) {
  SubsetIterator it = subsets_lex(f.frame_count(), bigK);
  std::uint64_t total = subset_count(f.frame_count(), bigK);
  ScanState st;
  st.stride = std::max<std::uint64_t>(1, total / kQuantileSampleCap);
  for (; !it.done(); it.advance()) scan_accumulate(st, f, it.current(), alpha, beta);
  return finish_scan(st, ReportMode::Exhaustive, total, alpha, beta, std::nullopt);
}

inline ErasureReport sampled_scan(const FrameMatrix& f, std::int64_t bigK,
                                  std::int64_t trials, const RngStream& rng,
                                  const double* alpha, const double* beta) {
  if (trials < 1) throw DomainError("sampled scan: trials must be positive");
  if (bigK < 1 || bigK > f.frame_count())
    throw DomainError("sampled scan: need 0 < K <= N");
  std::int64_t bigN = f.frame_count();
  std::vector<std::int64_t> idx(static_cast<std::size_t>(bigN));
  ScanState st;
  st.stride = std::max<std::uint64_t>(1, std::uint64_t(trials) / kQuantileSampleCap);
  ErasurePattern pat;
  for (std::int64_t t = 0; t < trials; ++t) {
    RngStream s = rng.substream(std::uint64_t(t));
    for (std::int64_t i = 0; i < bigN; ++i) idx[std::size_t(i)] = i;
    // partial Fisher-Yates: the first K slots become a uniform K-subset
    for (std::int64_t i = 0; i < bigK; ++i) {
      std::int64_t j = i + std::int64_t(s.next_below(std::uint64_t(bigN - i)));
      std::swap(idx[std::size_t(i)], idx[std::size_t(j)]);
    }
    pat.kept.assign(idx.begin(), idx.begin() + bigK);
    std::sort(pat.kept.begin(), pat.kept.end());
    scan_accumulate(st, f, pat, alpha, beta);
  }
  return finish_scan(st, ReportMode::Sampled, std::uint64_t(trials), alpha, beta,
                     rng.seed());
}

}  // namespace detail

// Exact worst condition number over every K-subset of frame columns.
inline ErasureReport worst_condition_exhaustive(const FrameMatrix& f, std::int64_t bigK) {
  return detail::exhaustive_scan(f, bigK, nullptr, nullptr);
}

// Monte Carlo lower-bound estimate of the same maximum over uniformly sampled
// K-subsets; deterministic given the stream.
inline ErasureReport worst_condition_sampled(const FrameMatrix& f, std::int64_t bigK,
                                             std::int64_t trials, const RngStream& rng) {
  return detail::sampled_scan(f, bigK, trials, rng, nullptr, nullptr);
}

// Count patterns violating alpha <= sigma_min(F_S) and sigma_1(F_S) <= beta.
// Zero violations in exhaustive mode certifies the sampled frame.
inline ErasureReport nerf_check(const FrameMatrix& f, std::int64_t bigK, double alpha,
                                double beta, ReportMode mode, std::int64_t budget,
                                const RngStream& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw DomainError("nerf_check: alpha and beta must be positive");
  if (mode == ReportMode::Exhaustive)
    return detail::exhaustive_scan(f, bigK, &alpha, &beta);
  return detail::sampled_scan(f, bigK, budget, rng, &alpha, &beta);
}

}  // namespace nerf
