#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "nerf/analytic_bounds.hpp"
#include "nerf/json_io.hpp"
#include "nerf/types.hpp"

namespace nerf {

enum class SweepMode {
  FixedKVaryN,  // K/n held, erasure proportion s grows with N
  FixedNVaryK,  // N/n held, s grows as K shrinks
};

struct SweepSpec {
  SweepMode mode = SweepMode::FixedKVaryN;
  double ratio = 2.0;  // K/n (fixed_K) or N/n (fixed_N), > 1
  int points = 200;
  double s_min = 0.0;
  double s_max = 0.99;
  double tau0 = 0.25;
  Field field = Field::Real;
  ConstantConvention convention = ConstantConvention::DerivationEq29;
};

enum class PointFlag { Ok, KNotAboveN, Vacuous };

struct CurvePoint {
  double s = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double log2_ratio = 0.0;
  double neg_log2_alpha = 0.0;
  PointFlag flag = PointFlag::Ok;
};

inline const char* to_string(PointFlag f) {
  switch (f) {
    case PointFlag::Ok: return "";
    case PointFlag::KNotAboveN: return "k_not_above_n";
    default: return "vacuous";
  }
}

// Certificate constants along an erasure-proportion grid. fixed_K walks
// N/K log-spaced (the interesting growth is multiplicative), fixed_N walks s
// linearly. Grid points where K would not exceed n are flagged, not dropped.
inline std::vector<CurvePoint> bounds_curve(const SweepSpec& spec) {
  if (!(spec.ratio > 1.0)) throw DomainError("sweep: ratio must exceed 1");
  if (spec.points < 2) throw DomainError("sweep: need at least 2 grid points");
  if (!(spec.s_min >= 0.0) || !(spec.s_max < 1.0) || !(spec.s_min < spec.s_max))
    throw DomainError("sweep: need 0 <= s_min < s_max < 1");

  std::vector<CurvePoint> out;
  out.reserve(std::size_t(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    double frac = double(i) / double(spec.points - 1);
    CurvePoint pt;
    double lambda, lambda_eff;
    if (spec.mode == SweepMode::FixedKVaryN) {
      double m0 = 1.0 / (1.0 - spec.s_min);
      double m1 = 1.0 / (1.0 - spec.s_max);
      double m = std::exp(std::log(m0) + frac * (std::log(m1) - std::log(m0)));
      pt.s = 1.0 - 1.0 / m;
      lambda_eff = spec.ratio;
      lambda = spec.ratio * m;
    } else {
      pt.s = spec.s_min + frac * (spec.s_max - spec.s_min);
      lambda = spec.ratio;
      lambda_eff = spec.ratio * (1.0 - pt.s);
    }
    if (!(lambda_eff > 1.0)) {
      pt.flag = PointFlag::KNotAboveN;
      out.push_back(pt);
      continue;
    }
    try {
      NerfCertificate cert = ratio_certificate(lambda, lambda_eff, spec.tau0, spec.field,
                                               spec.convention, 0.0);
      pt.alpha = cert.alpha;
      pt.beta = cert.beta;
      pt.log2_ratio = std::log2(cert.beta / cert.alpha);
      pt.neg_log2_alpha = -std::log2(cert.alpha);
    } catch (const VacuousCertificate&) {
      pt.flag = PointFlag::Vacuous;
    }
    out.push_back(pt);
  }
  return out;
}

inline void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& points) {
  os << "s,alpha,beta,log2_ratio,neg_log2_alpha,flag\n";
  for (const CurvePoint& p : points) {
    os << format_g17(p.s) << ',';
    if (p.flag == PointFlag::Ok) {
      os << format_g17(p.alpha) << ',' << format_g17(p.beta) << ','
         << format_g17(p.log2_ratio) << ',' << format_g17(p.neg_log2_alpha) << ',';
    } else {
      os << ",,,,";
    }
    os << to_string(p.flag) << '\n';
  }
}

}  // namespace nerf
