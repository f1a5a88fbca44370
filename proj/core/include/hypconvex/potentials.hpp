#pragma once

#include <span>
#include <vector>

#include "hypconvex/decomposition.hpp"

namespace hypconvex {

// Candidate plurisubharmonic functions at infinity built from a frame.
//   peak_sum     -Re sum_j 1/(L_j - a_j + 1)
//   peak_max     max_j -Re 1/(L_j - a_j + 1)
//   antipeak_log -sum_j log|L_j - a_j + 1|
enum class PotentialKind { peak_sum, peak_max, antipeak_log };

const char* to_string(PotentialKind kind);

enum class LimitVerdict { limit_zero, limit_minus_infinity, limit_other };

const char* to_string(LimitVerdict verdict);

struct RaySample {
  double radius;
  double value;
};

struct PotentialReport {
  PotentialKind kind;
  std::vector<RaySample> samples;
  LimitVerdict verdict;
  double limit;         // last sample for limit_other, 0 or -inf otherwise
  double fitted_rate;   // b in c + b/r (peaks) or c - b log r (antipeak)
  double fitted_offset; // c
};

// All three throw DomainError when z is outside the closure of the frame's
// half-spaces.
double peak_sum(const Frame& frame, const CVector& z);
double peak_max(const Frame& frame, const CVector& z);
double antipeak_log(const Frame& frame, const CVector& z);

double evaluate(PotentialKind kind, const Frame& frame, const CVector& z);

// Samples the potential at base + r * direction for increasing radii.
PotentialReport scan_ray(PotentialKind kind, const Frame& frame, const CVector& base,
                         const CVector& direction, std::span<const double> radii);

// Radii 10^lo, ..., 10^hi with `per_decade` samples per decade.
std::vector<double> log_radii(int lo_decade, int hi_decade, int per_decade = 1);

// Mean of the potential over the circle center + radius e^{i theta} direction
// (n-point trapezoid) minus its value at the center. Nonnegative for
// plurisubharmonic functions; zero for pluriharmonic ones.
double submean_check(PotentialKind kind, const Frame& frame, const DomainSpec& domain,
                     const CVector& center, const CVector& direction, double radius,
                     int n = 256);

}  // namespace hypconvex
