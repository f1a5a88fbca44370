#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hypconvex/types.hpp"

namespace hypconvex {

// Relative width of the boundary band used by classify_point.
inline constexpr double kMembershipTol = 1e-9;
// Relative threshold below which singular values and functional residuals
// count as zero.
inline constexpr double kRankTol = 1e-10;

// Complex-linear functional L(z) = sum_j c_j z_j (no conjugation).
class CFunctional {
 public:
  // Throws DomainError on an empty or identically zero coefficient vector.
  explicit CFunctional(CVector coeffs);

  const CVector& coeffs() const { return coeffs_; }
  std::size_t dim() const { return static_cast<std::size_t>(coeffs_.size()); }
  double norm() const { return coeffs_.norm(); }

  Cplx operator()(const CVector& z) const;

 private:
  CVector coeffs_;
};

// Open half-space {z : Re L(z) > threshold}.
struct HalfSpace {
  CFunctional functional;
  double threshold;

  double slack(const CVector& z) const {
    return functional(z).real() - threshold;
  }
};

// Unchecked description of a domain, as read from a file. validate() reports
// everything that would stop it from becoming a DomainSpec.
struct DomainDraft {
  std::size_t dim = 0;
  std::vector<std::pair<CVector, double>> halfspaces;
  CVector witness;
};

struct Violation {
  std::string field;
  std::string message;
};

std::vector<Violation> validate(const DomainDraft& draft);

// Finite intersection of open half-spaces in C^N with a strictly interior
// witness. An empty list is the whole space. Immutable once built.
class DomainSpec {
 public:
  // Throws DomainError listing every violation.
  DomainSpec(std::size_t dim, std::vector<HalfSpace> halfspaces, CVector witness);
  explicit DomainSpec(const DomainDraft& draft);

  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const CVector& witness() const { return witness_; }
  bool is_whole_space() const { return halfspaces_.empty(); }

  DomainDraft draft() const;

 private:
  std::size_t dim_;
  std::vector<HalfSpace> halfspaces_;
  CVector witness_;
};

std::vector<Violation> validate(const DomainSpec& domain);

enum class PointTag { interior, boundary, exterior };

const char* to_string(PointTag tag);

struct PointClass {
  PointTag tag;
  double slack;  // +inf when the domain has no constraints
};

// Boundary band half-width at z: kMembershipTol * (1 + |z|_2).
double membership_tol(const CVector& z);

Cplx eval_functional(const CFunctional& functional, const CVector& z);

// min_j (Re L_j(z) - a_j), +inf for C^N.
double min_slack(const DomainSpec& domain, const CVector& z);

PointClass classify_point(const DomainSpec& domain, const CVector& z);

bool is_interior(const DomainSpec& domain, const CVector& z);

// Radius of the largest Euclidean ball around z inside the domain.
double euclid_boundary_dist(const DomainSpec& domain, const CVector& z);

// Radius of the largest complex disc {z + t v : |t| < r} inside the domain
// for a unit direction v. Constraints constant along v impose nothing.
double directional_disc_radius(const DomainSpec& domain, const CVector& z,
                               const CVector& unit_direction);

// Intersection with the box |Re z_j| < R, |Im z_j| < R (4N extra constraints).
DomainSpec truncate(const DomainSpec& domain, double radius);

// Whether |L(v)| is negligible relative to |c| for a unit direction v.
bool annihilates(const CFunctional& functional, const CVector& unit_direction);

}  // namespace hypconvex
