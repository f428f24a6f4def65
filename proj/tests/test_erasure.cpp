#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "nerf/nerf.hpp"

using nerf::ErasurePattern;
using nerf::Field;
using nerf::FrameMatrix;
using nerf::RngStream;

TEST_CASE("subset counts are exact until they saturate", "[erasure]") {
  CHECK(nerf::subset_count(12, 6) == 924);
  CHECK(nerf::subset_count(24, 16) == 735471);
  CHECK(nerf::subset_count(30, 10) == 30045015);
  CHECK(nerf::subset_count(40, 20) == 137846528820ULL);
  CHECK(nerf::subset_count(0, 0) == 1);
  CHECK(nerf::subset_count(5, 0) == 1);
  CHECK(nerf::subset_count(5, 5) == 1);
  CHECK(nerf::subset_count(80, 40) == nerf::kSubsetCountSaturated);
  CHECK_THROWS_AS(nerf::subset_count(5, 6), nerf::DomainError);
  CHECK_THROWS_AS(nerf::subset_count(5, -1), nerf::DomainError);
}

TEST_CASE("lexicographic subset generation", "[erasure]") {
  nerf::SubsetIterator it = nerf::subsets_lex(5, 3);
  std::vector<std::vector<std::int64_t>> seen;
  for (; !it.done(); it.advance()) seen.push_back(it.current().kept);
  REQUIRE(seen.size() == 10);
  CHECK(seen.front() == std::vector<std::int64_t>{0, 1, 2});
  CHECK(seen.back() == std::vector<std::int64_t>{2, 3, 4});
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
}

TEST_CASE("enumeration cap refuses oversized scans with the exact count", "[erasure]") {
  SECTION("default cap stops the forty choose twenty scan") {
    try {
      nerf::subsets_lex(40, 20);
      FAIL("expected EnumerationCapExceeded");
    } catch (const nerf::EnumerationCapExceeded& e) {
      CHECK(e.subset_count == 137846528820ULL);
      CHECK_FALSE(e.count_saturated);
      CHECK(std::string(e.what()).find("137846528820") != std::string::npos);
      CHECK(std::string(e.what()).find("sampled") != std::string::npos);
    }
  }

  SECTION("environment override tightens the cap") {
    ::setenv("NERF_ENUM_CAP", "100", 1);
    CHECK(nerf::enumeration_cap() == 100);
    try {
      nerf::subsets_lex(12, 6);
      ::unsetenv("NERF_ENUM_CAP");
      FAIL("expected EnumerationCapExceeded");
    } catch (const nerf::EnumerationCapExceeded& e) {
      CHECK(std::string(e.what()).find("924") != std::string::npos);
    }
    ::unsetenv("NERF_ENUM_CAP");
    CHECK(nerf::enumeration_cap() == 10000000ULL);
  }

  SECTION("garbage override falls back to the default") {
    ::setenv("NERF_ENUM_CAP", "not-a-number", 1);
    CHECK(nerf::enumeration_cap() == 10000000ULL);
    ::unsetenv("NERF_ENUM_CAP");
  }
}

TEST_CASE("frame matrices carry an exact normalization scale", "[erasure]") {
  FrameMatrix f = nerf::frame_from_gaussian(RngStream(42, 0), 4, 12, Field::Real);
  CHECK(f.n() == 4);
  CHECK(f.frame_count() == 12);
  CHECK(f.normalized());
  CHECK(f.scale() == 0.5);  // 1/sqrt(4), a power of two

  SECTION("submatrix applies the scale entrywise") {
    ErasurePattern p{{0, 2, 5}};
    nerf::DenseMatrix sub = nerf::submatrix(f, p);
    REQUIRE(sub.rows() == 4);
    REQUIRE(sub.cols() == 3);
    for (int i = 0; i < 4; ++i) {
      CHECK(sub.real_at(i, 0) == f.base().real_at(i, 0) * 0.5);
      CHECK(sub.real_at(i, 1) == f.base().real_at(i, 2) * 0.5);
      CHECK(sub.real_at(i, 2) == f.base().real_at(i, 5) * 0.5);
    }
  }

  SECTION("pattern validation") {
    CHECK_THROWS_AS(nerf::submatrix(f, ErasurePattern{{}}), nerf::DomainError);
    CHECK_THROWS_AS(nerf::submatrix(f, ErasurePattern{{3, 3}}), nerf::DomainError);
    CHECK_THROWS_AS(nerf::submatrix(f, ErasurePattern{{5, 2}}), nerf::DomainError);
    CHECK_THROWS_AS(nerf::submatrix(f, ErasurePattern{{0, 12}}), nerf::DomainError);
  }

  SECTION("rank-deficient bases are rejected") {
    nerf::DenseMatrix flat(2, 4, Field::Real);
    flat.real_at(0, 0) = 1.0;
    flat.real_at(0, 1) = 1.0;
    flat.real_at(1, 0) = 2.0;
    flat.real_at(1, 1) = 2.0;
    CHECK_THROWS_AS(FrameMatrix(flat, true), nerf::DomainError);
  }
}

TEST_CASE("exhaustive scan matches an independent enumeration", "[erasure]") {
  FrameMatrix f = nerf::frame_from_gaussian(RngStream(42, 1), 3, 6, Field::Real);
  nerf::ErasureReport rep = nerf::worst_condition_exhaustive(f, 3);
  REQUIRE(rep.total == 20);
  REQUIRE(rep.mode == nerf::ReportMode::Exhaustive);
  CHECK_FALSE(rep.seed.has_value());

  double worst = 0.0;
  std::vector<std::int64_t> worst_pat;
  double min_smin = std::numeric_limits<double>::infinity();
  double max_smax = 0.0;
  for (std::int64_t a = 0; a < 6; ++a)
    for (std::int64_t b = a + 1; b < 6; ++b)
      for (std::int64_t c = b + 1; c < 6; ++c) {
        ErasurePattern p{{a, b, c}};
        nerf::SingularExtremes se = nerf::extremal_singular_values(nerf::submatrix(f, p));
        double cond = (se.sigma_min <= 1e-12 * se.sigma_max)
                          ? std::numeric_limits<double>::infinity()
                          : se.sigma_max / se.sigma_min;
        if (worst_pat.empty() || cond > worst) {
          worst = cond;
          worst_pat = p.kept;
        }
        min_smin = std::min(min_smin, se.sigma_min);
        max_smax = std::max(max_smax, se.sigma_max);
      }

  // same arithmetic path, so the agreement is exact, not approximate
  CHECK(rep.worst_condition == worst);
  CHECK(rep.worst_pattern == worst_pat);
  CHECK(rep.min_sigma_min == min_smin);
  CHECK(rep.max_sigma_max == max_smax);

  SECTION("quantiles are ordered and below the maximum") {
    CHECK(rep.quantiles.q50 <= rep.quantiles.q90);
    CHECK(rep.quantiles.q90 <= rep.quantiles.q99);
    CHECK(rep.quantiles.q99 <= rep.worst_condition);
  }
}

TEST_CASE("sampled scan is a lower bound that saturates small spaces", "[erasure]") {
  FrameMatrix f = nerf::frame_from_gaussian(RngStream(42, 2), 3, 6, Field::Real);
  nerf::ErasureReport ex = nerf::worst_condition_exhaustive(f, 3);
  nerf::ErasureReport sm = nerf::worst_condition_sampled(f, 3, 10000, RngStream(99, 0));

  CHECK(sm.mode == nerf::ReportMode::Sampled);
  CHECK(sm.total == 10000);
  REQUIRE(sm.seed.has_value());
  CHECK(*sm.seed == 99);
  CHECK(sm.worst_condition <= ex.worst_condition);
  // 10^4 uniform draws over 20 subsets miss one with probability ~ e^{-500}
  CHECK(sm.worst_condition == ex.worst_condition);
  CHECK(sm.worst_pattern == ex.worst_pattern);

  SECTION("replaying the stream replays the report") {
    nerf::ErasureReport again = nerf::worst_condition_sampled(f, 3, 10000, RngStream(99, 0));
    CHECK(again.worst_condition == sm.worst_condition);
    CHECK(again.quantiles.q50 == sm.quantiles.q50);
  }
}

TEST_CASE("patterns thinner than the ambient dimension are degenerate", "[erasure]") {
  FrameMatrix f = nerf::frame_from_gaussian(RngStream(42, 3), 3, 6, Field::Real);
  nerf::ErasureReport rep = nerf::nerf_check(f, 2, 0.1, 10.0, nerf::ReportMode::Exhaustive, 0,
                                             RngStream(0));
  CHECK(rep.total == 15);
  CHECK(rep.min_sigma_min == 0.0);
  CHECK(std::isinf(rep.worst_condition));
  CHECK(rep.violations == 15);  // sigma_min 0 breaches any positive alpha
}

TEST_CASE("subset extremes are monotone in the retained count", "[erasure]") {
  FrameMatrix f = nerf::frame_from_gaussian(RngStream(42, 4), 3, 7, Field::Real);
  double prev_min = -1.0, prev_max = -1.0;
  for (std::int64_t k = 3; k <= 7; ++k) {
    nerf::ErasureReport rep = nerf::worst_condition_exhaustive(f, k);
    // adding a column can only grow sigma_max and can only grow the minimum
    // over patterns of sigma_min
    CHECK(rep.min_sigma_min >= prev_min - 1e-10);
    CHECK(rep.max_sigma_max >= prev_max - 1e-10);
    prev_min = rep.min_sigma_min;
    prev_max = rep.max_sigma_max;
  }
}

TEST_CASE("bound checking marks violations and echoes the bounds", "[erasure]") {
  FrameMatrix f = nerf::frame_from_gaussian(RngStream(42, 5), 3, 6, Field::Real);

  SECTION("generous envelope sees no violations") {
    nerf::ErasureReport rep = nerf::nerf_check(f, 3, 1e-12, 1e6, nerf::ReportMode::Exhaustive,
                                               0, RngStream(0));
    CHECK(rep.violations == 0);
    CHECK(rep.checked_bounds);
    CHECK(rep.alpha == 1e-12);
    CHECK(rep.beta == 1e6);
  }

  SECTION("impossible envelope flags every pattern") {
    nerf::ErasureReport rep = nerf::nerf_check(f, 3, 100.0, 200.0, nerf::ReportMode::Exhaustive,
                                               0, RngStream(0));
    CHECK(rep.violations == std::int64_t(rep.total));
  }

  SECTION("bounds must be positive") {
    CHECK_THROWS_AS(
        nerf::nerf_check(f, 3, 0.0, 1.0, nerf::ReportMode::Exhaustive, 0, RngStream(0)),
        nerf::DomainError);
    CHECK_THROWS_AS(
        nerf::nerf_check(f, 3, 0.1, -1.0, nerf::ReportMode::Exhaustive, 0, RngStream(0)),
        nerf::DomainError);
  }
}

TEST_CASE("complex frames run the same pipeline", "[erasure]") {
  FrameMatrix f = nerf::frame_from_gaussian(RngStream(43, 0), 3, 6, Field::Complex);
  nerf::ErasureReport rep = nerf::worst_condition_exhaustive(f, 4);
  CHECK(rep.total == 15);
  CHECK(rep.worst_condition >= 1.0);
  CHECK(std::isfinite(rep.worst_condition));
  CHECK(rep.min_sigma_min > 0.0);
}
