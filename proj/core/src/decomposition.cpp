#include "hypconvex/decomposition.hpp"

#include <algorithm>
#include <cmath>

namespace hypconvex {

namespace {

struct RankData {
  std::size_t rank;
  CMatrix v;  // N x N, right singular vectors; columns rank.. span the kernel
};

// SVD of the row-normalized coefficient matrix. Rows are scaled to unit norm
// so the relative threshold does not depend on how constraints are written.
RankData rank_data(const DomainSpec& domain) {
  const auto n = static_cast<Eigen::Index>(domain.dim());
  if (domain.halfspaces().empty() || n == 0) return {0, CMatrix::Identity(n, n)};
  CMatrix a = coefficient_matrix(domain);
  for (Eigen::Index r = 0; r < a.rows(); ++r) a.row(r) /= a.row(r).norm();
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::size_t rank = 0;
  const double cutoff = kRankTol * s[0];
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cutoff) ++rank;
  }
  return {rank, svd.matrixV()};
}

double max_residual(const DomainSpec& domain, const CVector& v) {
  double r = 0.0;
  for (const auto& h : domain.halfspaces()) r = std::max(r, std::abs(h.functional(v)));
  return r;
}

double singular_ratio(const CMatrix& m, double* smallest = nullptr) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (smallest) *smallest = s[s.size() - 1];
  return s[0] / s[s.size() - 1];
}

}  // namespace

CMatrix coefficient_matrix(const DomainSpec& domain) {
  const auto n = static_cast<Eigen::Index>(domain.dim());
  CMatrix a(static_cast<Eigen::Index>(domain.halfspaces().size()), n);
  for (std::size_t r = 0; r < domain.halfspaces().size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = domain.halfspaces()[r].functional.coeffs().transpose();
  }
  return a;
}

CVector Decomposition::project(const CVector& z) const {
  return (transform * z).head(static_cast<Eigen::Index>(k));
}

std::size_t complex_rank(const DomainSpec& domain) { return rank_data(domain).rank; }

std::optional<LineWitness> contains_complex_line(const DomainSpec& domain) {
  const auto data = rank_data(domain);
  if (data.rank == domain.dim()) return std::nullopt;
  CVector v = data.v.col(static_cast<Eigen::Index>(data.rank));
  v /= v.norm();
  return LineWitness{domain.witness(), v, max_residual(domain, v)};
}

Decomposition decompose(const DomainSpec& domain) {
  const auto data = rank_data(domain);
  const auto n = static_cast<Eigen::Index>(domain.dim());
  const auto k = static_cast<Eigen::Index>(data.rank);
  // zeta = V^H z, z = V zeta, so L(z) = c^T V zeta.
  CMatrix t = data.v.adjoint();
  std::vector<HalfSpace> factor_hs;
  factor_hs.reserve(domain.halfspaces().size());
  if (k > 0) {
    for (const auto& h : domain.halfspaces()) {
      CVector c = (data.v.transpose() * h.functional.coeffs()).head(k);
      factor_hs.push_back({CFunctional(std::move(c)), h.threshold});
    }
  }
  CVector witness = (t * domain.witness()).head(k);
  DomainSpec factor(static_cast<std::size_t>(k), std::move(factor_hs), std::move(witness));
  const double cond = n > 0 ? singular_ratio(t) : 1.0;
  return Decomposition{data.rank, domain.dim() - data.rank, t,
                       data.v.rightCols(n - k), std::move(factor), cond};
}

Frame separating_frame(const DomainSpec& domain) {
  const auto data = rank_data(domain);
  if (data.rank < domain.dim()) {
    auto line = contains_complex_line(domain);
    throw RankDeficientError("separating_frame: complex rank " + std::to_string(data.rank) +
                                 " < " + std::to_string(domain.dim()) +
                                 "; the domain contains a complex line",
                             *line);
  }
  // Column pivoting on the normalized transposed matrix picks the N best
  // conditioned constraints first.
  CMatrix at = coefficient_matrix(domain).transpose();
  for (Eigen::Index c = 0; c < at.cols(); ++c) at.col(c) /= at.col(c).norm();
  Eigen::ColPivHouseholderQR<CMatrix> qr(at);
  const auto& perm = qr.colsPermutation().indices();
  const auto n = static_cast<Eigen::Index>(domain.dim());
  std::vector<Eigen::Index> picked(perm.data(), perm.data() + n);
  std::sort(picked.begin(), picked.end());

  Frame frame{{}, 0.0, {}};
  CMatrix rows(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& h = domain.halfspaces()[static_cast<std::size_t>(picked[static_cast<std::size_t>(i)])];
    frame.entries.push_back(h);
    frame.indices.push_back(static_cast<std::size_t>(picked[static_cast<std::size_t>(i)]));
    rows.row(i) = h.functional.coeffs().transpose() / h.functional.norm();
  }
  double smallest = 0.0;
  singular_ratio(rows, &smallest);
  frame.min_singular_value = smallest;
  if (!(smallest > kRankTol)) throw DomainError("separating_frame: selected functionals are dependent");
  return frame;
}

BoundedRealization::BoundedRealization(Frame frame) : frame_(std::move(frame)) {
  const auto n = static_cast<Eigen::Index>(frame_.entries.size());
  if (n == 0) throw DomainError("realization: empty frame");
  shift_.resize(n);
  coeff_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& h = frame_.entries[static_cast<std::size_t>(j)];
    if (static_cast<Eigen::Index>(h.functional.dim()) != n) {
      throw DomainError("realization: frame must have as many entries as the dimension");
    }
    shift_[j] = h.threshold - 1.0;
    coeff_.row(j) = h.functional.coeffs().transpose();
  }
  lu_.compute(coeff_);
}

CVector BoundedRealization::apply(const CVector& z) const {
  const auto n = coeff_.rows();
  if (z.size() != n) throw DomainError("realization: dimension mismatch");
  const double tol = membership_tol(z);
  CVector u(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& h = frame_.entries[static_cast<std::size_t>(j)];
    if (h.slack(z) < -tol) throw DomainError("realization: point outside the closure");
    u[j] = 1.0 / (h.functional(z) - shift_[j]);
  }
  return u;
}

CVector BoundedRealization::invert(const CVector& u) const {
  const auto n = coeff_.rows();
  if (u.size() != n) throw DomainError("realization: dimension mismatch");
  CVector rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (u[j] == Cplx{0.0, 0.0}) throw DomainError("realization: coordinate 0 is a point at infinity");
    rhs[j] = 1.0 / u[j] + shift_[j];
  }
  return lu_.solve(rhs);
}

BoundedRealization realize_bounded(Frame frame) { return BoundedRealization(std::move(frame)); }

FacetLines facet_complex_lines(const DomainSpec& domain, std::size_t index) {
  if (index >= domain.halfspaces().size()) {
    throw DomainError("facet index " + std::to_string(index) + " out of range");
  }
  // A complex line inside a face is a complex line inside the closure, so its
  // direction annihilates every functional.
  auto line = contains_complex_line(domain);
  const std::size_t m = domain.dim() - complex_rank(domain);
  if (!line) return {0, std::nullopt};
  return {m, line->direction};
}

HyperbolicityReport hyperbolicity_report(const DomainSpec& domain) {
  Decomposition dec = decompose(domain);
  const bool hyperbolic = dec.k == domain.dim();
  HyperbolicityReport report{hyperbolic, hyperbolic, std::move(dec), std::nullopt, std::nullopt,
                             std::nullopt};
  if (hyperbolic) {
    report.frame = separating_frame(domain);
    report.realization.emplace(*report.frame);
  } else {
    report.line = contains_complex_line(domain);
  }
  return report;
}

}  // namespace hypconvex
