#include "hypconvex/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hypconvex {

namespace {

constexpr double kPeriodTol = 1e-9;
constexpr double kConvergeTol = 1e-10;
constexpr double kFixedPointTol = 1e-8;
constexpr std::size_t kMinRecord = 16;
constexpr std::size_t kSlackRun = 8;

double dist(const CVector& a, const CVector& b) { return sup_norm(a - b); }

std::optional<OrbitClassification> converging(const OrbitRecord& rec) {
  const auto& p = rec.points;
  const std::size_t n = p.size();
  const double d1 = dist(p[n - 1], p[n - 2]);
  const double d2 = dist(p[n - 2], p[n - 3]);
  // A limit on the boundary is an escape, not convergence.
  const bool interior_limit = rec.slacks[n - 1] >= 1e-8 * (1.0 + rec.norms[n - 1]);
  if (d1 < kConvergeTol && d1 <= d2 && interior_limit) {
    std::ostringstream ev;
    ev << "successive difference " << d1 << " < " << kConvergeTol;
    return OrbitClassification{OrbitKind::converging, 0, p.back(), ev.str()};
  }
  return std::nullopt;
}

std::optional<OrbitClassification> periodic(const OrbitRecord& rec) {
  const auto& p = rec.points;
  const std::size_t n = p.size();
  for (std::size_t q = 2; q <= n / 4; ++q) {
    for (std::size_t s = 0; s + 3 * q <= n; ++s) {
      bool repeats = true;
      double worst = 0.0;
      for (std::size_t i = s; i + q < s + 3 * q && repeats; ++i) {
        const double d = dist(p[i + q], p[i]);
        worst = std::max(worst, d);
        repeats = d <= kPeriodTol;
      }
      if (!repeats) continue;
      // A window of identical points is a fixed point, not a q-cycle.
      double spread = 0.0;
      for (std::size_t i = s + 1; i < s + q; ++i) spread = std::max(spread, dist(p[i], p[s]));
      if (spread <= kPeriodTol) continue;
      std::ostringstream ev;
      ev << "iterates " << s << ".." << s + 3 * q - 1 << " repeat with period " << q
         << " (max gap " << worst << ")";
      return OrbitClassification{OrbitKind::periodic, q, std::nullopt, ev.str()};
    }
  }
  return std::nullopt;
}

std::optional<OrbitClassification> escaping(const OrbitRecord& rec) {
  const auto& p = rec.points;
  const std::size_t n = p.size();
  const double peak = *std::max_element(rec.norms.begin(), rec.norms.end());
  if (peak > kEscapeNorm || rec.stop == OrbitStop::escape_cap) {
    std::ostringstream ev;
    ev << "norm " << peak << " exceeds " << kEscapeNorm;
    return OrbitClassification{OrbitKind::escaping, 0, std::nullopt, ev.str()};
  }
  if (n >= kSlackRun) {
    bool thin = true;
    for (std::size_t i = n - kSlackRun; i < n && thin; ++i) {
      thin = rec.slacks[i] < 1e-8 * (1.0 + rec.norms[i]);
    }
    if (thin) {
      return OrbitClassification{OrbitKind::escaping, 0, std::nullopt,
                                 "boundary slack below 1e-8 (1 + |p|) for the last 8 iterates"};
    }
  }
  // Norms strictly increasing over the second half with increments that do not
  // decay: the orbit is moving off at a steady rate.
  const std::size_t half = n / 2;
  bool growing = true;
  for (std::size_t i = half + 1; i < n && growing; ++i) growing = rec.norms[i] > rec.norms[i - 1];
  if (growing && n - half >= 3) {
    const double first = rec.norms[half + 1] - rec.norms[half];
    const double last = rec.norms[n - 1] - rec.norms[n - 2];
    if (last >= 0.5 * first) {
      std::ostringstream ev;
      ev << "norms increase steadily over the last half (increment " << last << ")";
      return OrbitClassification{OrbitKind::escaping, 0, std::nullopt, ev.str()};
    }
  }
  return std::nullopt;
}

}  // namespace

SelfMap::SelfMap(std::size_t k, std::size_t m, std::vector<MapExpr> phi, std::vector<MapExpr> psi)
    : k_(k), m_(m), phi_(std::move(phi)), psi_(std::move(psi)) {
  if (k_ + m_ == 0) throw DomainError("self-map: dimension must be positive");
  if (phi_.size() != k_) throw DomainError("self-map: phi must have k components");
  if (psi_.size() != m_) throw DomainError("self-map: psi must have m components");
  for (std::size_t j = 0; j < phi_.size(); ++j) {
    if (phi_[j].arity() > k_) {
      throw DomainError("self-map: phi[" + std::to_string(j) +
                        "] references a flat variable (index >= " + std::to_string(k_) + ")");
    }
  }
  for (std::size_t j = 0; j < psi_.size(); ++j) {
    if (psi_[j].arity() > k_ + m_) {
      throw DomainError("self-map: psi[" + std::to_string(j) + "] references an unknown variable");
    }
  }
}

CVector SelfMap::operator()(const CVector& p) const {
  if (static_cast<std::size_t>(p.size()) != dim()) throw DomainError("self-map: dimension mismatch");
  CVector out(static_cast<Eigen::Index>(dim()));
  for (std::size_t j = 0; j < k_; ++j) out[static_cast<Eigen::Index>(j)] = phi_[j].evaluate(p);
  for (std::size_t j = 0; j < m_; ++j) out[static_cast<Eigen::Index>(k_ + j)] = psi_[j].evaluate(p);
  return out;
}

CVector SelfMap::factor_map(const CVector& z) const {
  if (static_cast<std::size_t>(z.size()) != k_) throw DomainError("self-map: factor dimension mismatch");
  CVector out(static_cast<Eigen::Index>(k_));
  for (std::size_t j = 0; j < k_; ++j) out[static_cast<Eigen::Index>(j)] = phi_[j].evaluate(z);
  return out;
}

SelfMap build_map(std::size_t k, std::size_t m, std::vector<MapExpr> phi, std::vector<MapExpr> psi,
                  const Decomposition& decomposition) {
  if (k != decomposition.k || m != decomposition.m) {
    throw DomainError("self-map: (k, m) = (" + std::to_string(k) + ", " + std::to_string(m) +
                      ") does not match the decomposition (" + std::to_string(decomposition.k) +
                      ", " + std::to_string(decomposition.m) + ")");
  }
  return SelfMap(k, m, std::move(phi), std::move(psi));
}

void require_split_coordinates(const DomainSpec& domain, const SelfMap& map) {
  if (domain.dim() != map.dim()) throw DomainError("self-map: dimension does not match the domain");
  const auto k = static_cast<Eigen::Index>(map.k());
  for (const auto& h : domain.halfspaces()) {
    const auto& c = h.functional.coeffs();
    const double tail = c.tail(c.size() - k).norm();
    if (tail > kRankTol * c.norm()) {
      throw DomainError("self-map: domain constraints depend on the flat variables; "
                        "rewrite the domain in split coordinates first");
    }
  }
}

SelfMap exp_translation_map(std::size_t k, std::size_t m) {
  if (m == 0) throw DomainError("exp_translation_map: needs at least one flat variable");
  std::vector<MapExpr> phi, psi;
  for (std::size_t j = 0; j < k; ++j) phi.push_back(MapExpr::variable(j));
  for (std::size_t j = 0; j + 1 < m; ++j) psi.push_back(MapExpr::variable(k + j));
  const auto w = MapExpr::variable(k + m - 1);
  psi.push_back(exp(w) + w);
  return SelfMap(k, m, std::move(phi), std::move(psi));
}

Cplx exp_translation_period_two_point() {
  return std::log(Cplx{0.0, std::numbers::pi});
}

const char* to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::escaping: return "escaping";
    case OrbitKind::periodic: return "periodic";
    case OrbitKind::converging: return "converging";
    case OrbitKind::undecided: return "undecided";
  }
  return "?";
}

const char* to_string(OrbitStop stop) {
  switch (stop) {
    case OrbitStop::completed: return "completed";
    case OrbitStop::left_domain: return "left_domain";
    case OrbitStop::escape_cap: return "escape_cap";
  }
  return "?";
}

OrbitRecord iterate(const SelfMap& map, const CVector& start, std::size_t n,
                    const DomainSpec& domain) {
  if (domain.dim() != map.dim()) throw DomainError("iterate: map and domain dimensions differ");
  if (!is_interior(domain, start)) throw DomainError("iterate: start point is not interior");
  OrbitRecord rec;
  rec.points.push_back(start);
  rec.slacks.push_back(min_slack(domain, start));
  rec.norms.push_back(sup_norm(start));
  for (std::size_t i = 0; i < n; ++i) {
    CVector next = map(rec.points.back());
    const double slack = min_slack(domain, next);
    if (slack < -membership_tol(next)) {
      rec.stop = OrbitStop::left_domain;
      rec.exit_point = std::move(next);
      break;
    }
    const double norm = sup_norm(next);
    rec.points.push_back(std::move(next));
    rec.slacks.push_back(slack);
    rec.norms.push_back(norm);
    if (norm > kEscapeNorm) {
      rec.stop = OrbitStop::escape_cap;
      break;
    }
  }
  return rec;
}

OrbitClassification classify_orbit(const OrbitRecord& record, const DomainSpec& domain) {
  if (record.points.empty()) throw DomainError("classify_orbit: empty record");
  if (!record.points.empty() && static_cast<std::size_t>(record.points.front().size()) != domain.dim()) {
    throw DomainError("classify_orbit: record and domain dimensions differ");
  }
  if (record.stop == OrbitStop::escape_cap) return *escaping(record);
  if (record.points.size() < kMinRecord) {
    throw DomainError("classify_orbit: need at least " + std::to_string(kMinRecord) + " iterates");
  }
  if (auto c = converging(record)) return *c;
  if (auto c = periodic(record)) return *c;
  if (auto c = escaping(record)) return *c;
  return {OrbitKind::undecided, 0, std::nullopt, "no rule matched"};
}

std::optional<FixedPoint> fixed_point_search(const SelfMap& map, const DomainSpec& factor,
                                             std::span<const CVector> seeds, std::size_t budget) {
  if (factor.dim() != map.k()) throw DomainError("fixed_point_search: factor dimension differs from k");
  for (const auto& seed : seeds) {
    if (!is_interior(factor, seed)) throw DomainError("fixed_point_search: seed is not interior");
  }
  for (const auto& seed : seeds) {
    for (const double damping : {1.0, 0.5, 0.25}) {
      CVector p = seed;
      for (std::size_t it = 0; it < budget; ++it) {
        CVector fp;
        try {
          fp = map.factor_map(p);
        } catch (const EvaluationError&) {
          break;
        }
        if (sup_norm(fp - p) <= kFixedPointTol) {
          const double residual = sup_norm(map.factor_map(p) - p);
          if (residual <= kFixedPointTol) return FixedPoint{p, residual, damping, it};
        }
        p = (1.0 - damping) * p + damping * fp;
        if (!is_interior(factor, p)) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace hypconvex
