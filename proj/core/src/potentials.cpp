#include "hypconvex/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hypconvex {

namespace {

// Values L_j(z) - a_j + 1, each with real part >= 1 on the closure.
std::vector<Cplx> shifted_values(const Frame& frame, const CVector& z) {
  const double tol = membership_tol(z);
  std::vector<Cplx> out;
  out.reserve(frame.entries.size());
  for (const auto& h : frame.entries) {
    const Cplx l = h.functional(z);
    if (l.real() - h.threshold < -tol) throw DomainError("potential: point outside the closure");
    out.push_back(l - h.threshold + 1.0);
  }
  return out;
}

// Least squares for y = c + b x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return {sy / n, 0.0};
  const double b = (n * sxy - sx * sy) / det;
  return {(sy - b * sx) / n, b};
}

}  // namespace

const char* to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::peak_sum: return "peak_sum";
    case PotentialKind::peak_max: return "peak_max";
    case PotentialKind::antipeak_log: return "antipeak_log";
  }
  return "?";
}

const char* to_string(LimitVerdict verdict) {
  switch (verdict) {
    case LimitVerdict::limit_zero: return "limit_zero";
    case LimitVerdict::limit_minus_infinity: return "limit_minus_infinity";
    case LimitVerdict::limit_other: return "limit_other";
  }
  return "?";
}

double peak_sum(const Frame& frame, const CVector& z) {
  double sum = 0.0;
  for (const Cplx s : shifted_values(frame, z)) sum += (1.0 / s).real();
  return -sum;
}

double peak_max(const Frame& frame, const CVector& z) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Cplx s : shifted_values(frame, z)) best = std::max(best, -(1.0 / s).real());
  return best;
}

double antipeak_log(const Frame& frame, const CVector& z) {
  double sum = 0.0;
  for (const Cplx s : shifted_values(frame, z)) sum += std::log(std::abs(s));
  return -sum;
}

double evaluate(PotentialKind kind, const Frame& frame, const CVector& z) {
  switch (kind) {
    case PotentialKind::peak_sum: return peak_sum(frame, z);
    case PotentialKind::peak_max: return peak_max(frame, z);
    case PotentialKind::antipeak_log: return antipeak_log(frame, z);
  }
  throw DomainError("unknown potential kind");
}

std::vector<double> log_radii(int lo_decade, int hi_decade, int per_decade) {
  std::vector<double> radii;
  for (int i = lo_decade * per_decade; i <= hi_decade * per_decade; ++i) {
    radii.push_back(std::pow(10.0, static_cast<double>(i) / per_decade));
  }
  return radii;
}

PotentialReport scan_ray(PotentialKind kind, const Frame& frame, const CVector& base,
                         const CVector& direction, std::span<const double> radii) {
  if (radii.size() < 2) throw DomainError("scan_ray: need at least two radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw DomainError("scan_ray: radii must be strictly increasing");
  }
  if (!(radii.front() > 0.0)) throw DomainError("scan_ray: radii must be positive");

  PotentialReport report{kind, {}, LimitVerdict::limit_other, 0.0, 0.0, 0.0};
  std::vector<double> xs, ys;
  for (const double r : radii) {
    const CVector p = base + r * direction;
    double value = 0.0;
    try {
      value = evaluate(kind, frame, p);
    } catch (const DomainError&) {
      throw DomainError("scan_ray: ray leaves the closure at radius " + std::to_string(r));
    }
    report.samples.push_back({r, value});
    xs.push_back(kind == PotentialKind::antipeak_log ? std::log(r) : 1.0 / r);
    ys.push_back(value);
  }
  auto [c, b] = fit_line(xs, ys);
  report.fitted_offset = c;
  report.fitted_rate = kind == PotentialKind::antipeak_log ? -b : b;

  const double last_r = radii.back();
  const double last = report.samples.back().value;
  // Monotone approach over the final three decades.
  bool abs_decreasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < report.samples.size(); ++i) {
    if (report.samples[i - 1].radius < last_r * 1e-3) continue;
    const double prev = report.samples[i - 1].value;
    const double cur = report.samples[i].value;
    if (std::abs(cur) > std::abs(prev)) abs_decreasing = false;
    if (cur > prev) decreasing = false;
  }
  if (std::abs(last) < 1e-4 && abs_decreasing) {
    report.verdict = LimitVerdict::limit_zero;
    report.limit = 0.0;
  } else if (last < -10.0 && decreasing) {
    report.verdict = LimitVerdict::limit_minus_infinity;
    report.limit = -std::numeric_limits<double>::infinity();
  } else {
    report.verdict = LimitVerdict::limit_other;
    report.limit = last;
  }
  return report;
}

double submean_check(PotentialKind kind, const Frame& frame, const DomainSpec& domain,
                     const CVector& center, const CVector& direction, double radius, int n) {
  if (n < 3) throw DomainError("submean_check: need at least 3 nodes");
  if (!(radius > 0.0)) throw DomainError("submean_check: radius must be positive");
  if (!is_interior(domain, center)) throw DomainError("submean_check: center is not interior");
  const CVector v = direction / direction.norm();
  const double scaled = radius * direction.norm();
  if (!(scaled < directional_disc_radius(domain, center, v))) {
    throw DomainError("submean_check: disc leaves the domain");
  }
  double mean = 0.0;
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    const Cplx e = std::polar(radius, theta);
    mean += evaluate(kind, frame, center + e * direction);
  }
  mean /= n;
  return mean - evaluate(kind, frame, center);
}

}  // namespace hypconvex
