#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypconvex/decomposition.hpp"
#include "hypconvex/map_expr.hpp"

namespace hypconvex {

// Holomorphic self-map of D' x C^m in split form
//   (z, w) -> (phi(z), psi(z, w)),
// with phi independent of the m flat variables.
class SelfMap {
 public:
  // Throws DomainError when the component counts are wrong or phi references a
  // flat variable or psi references a variable past k + m.
  SelfMap(std::size_t k, std::size_t m, std::vector<MapExpr> phi, std::vector<MapExpr> psi);

  std::size_t k() const { return k_; }
  std::size_t m() const { return m_; }
  std::size_t dim() const { return k_ + m_; }
  const std::vector<MapExpr>& phi() const { return phi_; }
  const std::vector<MapExpr>& psi() const { return psi_; }

  CVector operator()(const CVector& p) const;
  // phi alone, acting on C^k.
  CVector factor_map(const CVector& z) const;

 private:
  std::size_t k_, m_;
  std::vector<MapExpr> phi_, psi_;
};

// Checks the map against a decomposition (matching k and m).
SelfMap build_map(std::size_t k, std::size_t m, std::vector<MapExpr> phi,
                  std::vector<MapExpr> psi, const Decomposition& decomposition);

// Checks that the domain is already written in split coordinates: no
// constraint touches the last m variables, and k + m = N.
void require_split_coordinates(const DomainSpec& domain, const SelfMap& map);

// Identity on the first k + m - 1 coordinates, w -> e^w + w on the last one.
// Has no fixed point, yet the orbit of w0 = log(i pi) has period two.
SelfMap exp_translation_map(std::size_t k, std::size_t m);

// Principal log(i pi) = ln(pi) + i pi/2.
Cplx exp_translation_period_two_point();

enum class OrbitKind { escaping, periodic, converging, undecided };

const char* to_string(OrbitKind kind);

struct OrbitClassification {
  OrbitKind kind = OrbitKind::undecided;
  std::size_t period = 0;       // periodic
  std::optional<CVector> limit; // converging
  std::string evidence;
};

enum class OrbitStop { completed, left_domain, escape_cap };

const char* to_string(OrbitStop stop);

struct OrbitRecord {
  std::vector<CVector> points;
  std::vector<double> slacks;
  std::vector<double> norms;
  OrbitStop stop = OrbitStop::completed;
  std::optional<CVector> exit_point;  // left_domain: the first iterate outside D
  OrbitClassification classification;
};

// Norm above which an orbit is considered to have left every compact set.
inline constexpr double kEscapeNorm = 1e8;

// Up to n iterates p, f(p), ..., f^n(p). Stops early when an iterate leaves
// the domain or exceeds kEscapeNorm. Evaluation errors propagate.
OrbitRecord iterate(const SelfMap& map, const CVector& start, std::size_t n,
                    const DomainSpec& domain);

// Heuristic classification; needs at least 16 points unless the orbit hit the
// escape cap.
OrbitClassification classify_orbit(const OrbitRecord& record, const DomainSpec& domain);

struct FixedPoint {
  CVector point;
  double residual;
  double damping;
  std::size_t iterations;
};

// Averaged iteration p <- (1 - l) p + l phi(p), l in {1, 1/2, 1/4}, from each
// seed in turn with `budget` steps per attempt. nullopt is inconclusive.
std::optional<FixedPoint> fixed_point_search(const SelfMap& map, const DomainSpec& factor,
                                             std::span<const CVector> seeds, std::size_t budget);

}  // namespace hypconvex
