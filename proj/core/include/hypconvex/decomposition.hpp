#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypconvex/domain.hpp"

namespace hypconvex {

// A complex affine line base + C*direction contained in the domain.
struct LineWitness {
  CVector base;
  CVector direction;  // unit length
  double residual;    // max_j |L_j(direction)|
};

// N constraints of the domain with linearly independent functionals.
struct Frame {
  std::vector<HalfSpace> entries;
  double min_singular_value;
  std::vector<std::size_t> indices;  // positions in the source constraint list

  std::size_t dim() const { return entries.size(); }
};

// Thrown by separating_frame when the domain contains a complex line.
class RankDeficientError : public DomainError {
 public:
  RankDeficientError(const std::string& what, LineWitness witness)
      : DomainError(what), witness_(std::move(witness)) {}
  const LineWitness& witness() const { return witness_; }

 private:
  LineWitness witness_;
};

// z -> (1 / (L_j(z) - a_j + 1))_j, sending the domain into the closed unit
// polydisc.
class BoundedRealization {
 public:
  explicit BoundedRealization(Frame frame);

  const Frame& frame() const { return frame_; }
  // Entries a_j - 1.
  const Eigen::VectorXd& shift() const { return shift_; }

  // Requires Re L_j(z) >= a_j (up to membership tolerance) for every j.
  CVector apply(const CVector& z) const;
  // Solves L_j(z) = 1/u_j + a_j - 1. Throws when some u_j = 0.
  CVector invert(const CVector& u) const;

 private:
  Frame frame_;
  Eigen::VectorXd shift_;
  CMatrix coeff_;  // rows are frame coefficient vectors
  Eigen::PartialPivLU<CMatrix> lu_;
};

// D = D' x C^m in the unitary coordinates zeta = T z.
struct Decomposition {
  std::size_t k = 0;
  std::size_t m = 0;
  CMatrix transform;     // T, unitary
  CMatrix kernel_basis;  // N x m orthonormal columns spanning the lineality space
  DomainSpec factor;     // D' in C^k
  double condition_number = 1.0;

  // First k T-coordinates of z.
  CVector project(const CVector& z) const;
};

struct FacetLines {
  std::size_t dimension;
  std::optional<CVector> direction;
};

struct HyperbolicityReport {
  bool hyperbolic;
  bool bergman_admissible;  // equals hyperbolic
  Decomposition decomposition;
  std::optional<LineWitness> line;
  std::optional<Frame> frame;
  std::optional<BoundedRealization> realization;
};

// M x N matrix whose rows are the constraint coefficient vectors.
CMatrix coefficient_matrix(const DomainSpec& domain);

std::size_t complex_rank(const DomainSpec& domain);
std::optional<LineWitness> contains_complex_line(const DomainSpec& domain);
Decomposition decompose(const DomainSpec& domain);
Frame separating_frame(const DomainSpec& domain);
BoundedRealization realize_bounded(Frame frame);
FacetLines facet_complex_lines(const DomainSpec& domain, std::size_t index);
HyperbolicityReport hyperbolicity_report(const DomainSpec& domain);

}  // namespace hypconvex
