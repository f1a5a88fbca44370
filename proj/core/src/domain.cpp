#include "hypconvex/domain.hpp"

#include <cmath>
#include <sstream>

namespace hypconvex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const CVector& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j].real()) || !std::isfinite(v[j].imag())) return false;
  }
  return true;
}

std::string join(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid domain:";
  for (const auto& v : violations) out << "\n  " << v.field << ": " << v.message;
  return out.str();
}

}  // namespace

CFunctional::CFunctional(CVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw DomainError("functional has no coefficients");
  if (!all_finite(coeffs_)) throw DomainError("functional has non-finite coefficients");
  if (coeffs_.norm() == 0.0) throw DomainError("functional is identically zero");
}

Cplx CFunctional::operator()(const CVector& z) const {
  if (z.size() != coeffs_.size()) {
    throw DomainError("dimension mismatch: functional has " + std::to_string(coeffs_.size()) +
                      " coefficients, point has " + std::to_string(z.size()));
  }
  Cplx sum{0.0, 0.0};
  for (Eigen::Index j = 0; j < z.size(); ++j) sum += coeffs_[j] * z[j];
  return sum;
}

std::vector<Violation> validate(const DomainDraft& draft) {
  std::vector<Violation> out;
  const auto n = static_cast<Eigen::Index>(draft.dim);
  if (draft.witness.size() != n) {
    out.push_back({"witness", "length " + std::to_string(draft.witness.size()) +
                                  " does not match dim " + std::to_string(draft.dim)});
  } else if (!all_finite(draft.witness)) {
    out.push_back({"witness", "non-finite entry"});
  }
  const bool witness_ok = out.empty();
  const double tol = witness_ok ? membership_tol(draft.witness) : 0.0;

  for (std::size_t i = 0; i < draft.halfspaces.size(); ++i) {
    const auto& [c, a] = draft.halfspaces[i];
    const std::string field = "halfspaces[" + std::to_string(i) + "]";
    if (c.size() != n) {
      out.push_back({field + ".c", "length " + std::to_string(c.size()) +
                                       " does not match dim " + std::to_string(draft.dim)});
      continue;
    }
    if (!all_finite(c) || !std::isfinite(a)) {
      out.push_back({field, "non-finite entry"});
      continue;
    }
    if (c.norm() == 0.0) {
      out.push_back({field + ".c", "zero functional"});
      continue;
    }
    if (witness_ok) {
      Cplx value{0.0, 0.0};
      for (Eigen::Index j = 0; j < n; ++j) value += c[j] * draft.witness[j];
      const double slack = value.real() - a;
      if (!(slack > tol)) {
        std::ostringstream msg;
        msg << "witness slack " << slack << " <= tol " << tol;
        out.push_back({field, msg.str()});
      }
    }
  }
  return out;
}

DomainSpec::DomainSpec(std::size_t dim, std::vector<HalfSpace> halfspaces, CVector witness)
    : dim_(dim), halfspaces_(std::move(halfspaces)), witness_(std::move(witness)) {
  auto violations = validate(draft());
  if (!violations.empty()) throw DomainError(join(violations));
}

DomainSpec::DomainSpec(const DomainDraft& draft) : dim_(draft.dim), witness_(draft.witness) {
  auto violations = validate(draft);
  if (!violations.empty()) throw DomainError(join(violations));
  halfspaces_.reserve(draft.halfspaces.size());
  for (const auto& [c, a] : draft.halfspaces) halfspaces_.push_back({CFunctional(c), a});
}

DomainDraft DomainSpec::draft() const {
  DomainDraft d;
  d.dim = dim_;
  d.witness = witness_;
  for (const auto& h : halfspaces_) d.halfspaces.emplace_back(h.functional.coeffs(), h.threshold);
  return d;
}

std::vector<Violation> validate(const DomainSpec& domain) { return validate(domain.draft()); }

const char* to_string(PointTag tag) {
  switch (tag) {
    case PointTag::interior: return "interior";
    case PointTag::boundary: return "boundary";
    case PointTag::exterior: return "exterior";
  }
  return "?";
}

double membership_tol(const CVector& z) { return kMembershipTol * (1.0 + z.norm()); }

Cplx eval_functional(const CFunctional& functional, const CVector& z) { return functional(z); }

double min_slack(const DomainSpec& domain, const CVector& z) {
  if (static_cast<std::size_t>(z.size()) != domain.dim()) {
    throw DomainError("dimension mismatch: domain dim " + std::to_string(domain.dim()) +
                      ", point length " + std::to_string(z.size()));
  }
  double slack = kInf;
  for (const auto& h : domain.halfspaces()) slack = std::min(slack, h.slack(z));
  return slack;
}

PointClass classify_point(const DomainSpec& domain, const CVector& z) {
  const double slack = min_slack(domain, z);
  const double tol = membership_tol(z);
  if (slack > tol) return {PointTag::interior, slack};
  if (slack >= -tol) return {PointTag::boundary, slack};
  return {PointTag::exterior, slack};
}

bool is_interior(const DomainSpec& domain, const CVector& z) {
  return classify_point(domain, z).tag == PointTag::interior;
}

double euclid_boundary_dist(const DomainSpec& domain, const CVector& z) {
  if (!is_interior(domain, z)) throw DomainError("euclid_boundary_dist: point is not interior");
  double r = kInf;
  for (const auto& h : domain.halfspaces()) r = std::min(r, h.slack(z) / h.functional.norm());
  return r;
}

bool annihilates(const CFunctional& functional, const CVector& unit_direction) {
  return std::abs(functional(unit_direction)) <= kRankTol * functional.norm();
}

double directional_disc_radius(const DomainSpec& domain, const CVector& z,
                               const CVector& unit_direction) {
  double r = kInf;
  for (const auto& h : domain.halfspaces()) {
    if (annihilates(h.functional, unit_direction)) continue;
    r = std::min(r, h.slack(z) / std::abs(h.functional(unit_direction)));
  }
  return r;
}

DomainSpec truncate(const DomainSpec& domain, double radius) {
  if (!(radius > 0.0)) throw DomainError("truncate: radius must be positive");
  const auto n = static_cast<Eigen::Index>(domain.dim());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Cplx w = domain.witness()[j];
    if (!(std::abs(w.real()) < radius && std::abs(w.imag()) < radius)) {
      throw DomainError("truncate: witness lies outside the box of half-width " +
                        std::to_string(radius));
    }
  }
  std::vector<HalfSpace> hs = domain.halfspaces();
  const Cplx i{0.0, 1.0};
  // Re z > -R, -Re z > -R, Im z = Re(-i z) > -R, -Im z = Re(i z) > -R.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const Cplx c : {Cplx{1.0, 0.0}, Cplx{-1.0, 0.0}, -i, i}) {
      CVector coeffs = CVector::Zero(n);
      coeffs[j] = c;
      hs.push_back({CFunctional(std::move(coeffs)), -radius});
    }
  }
  return DomainSpec(domain.dim(), std::move(hs), domain.witness());
}

}  // namespace hypconvex
