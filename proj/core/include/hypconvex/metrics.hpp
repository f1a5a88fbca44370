#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hypconvex/domain.hpp"

namespace hypconvex {

// Distances use the normalization arctanh(t) for the unit disc, so that
// d(0, t) = arctanh t.

// Pseudo-hyperbolic distance on the unit disc.
double disc_distance(Cplx a, Cplx b);

// Distance in the right half-plane {Re w > 0}:
// arctanh |w1 - w2| / |w1 + conj(w2)|.
double halfplane_distance(Cplx w1, Cplx w2);

// Distance in the vertical strip {0 < Re s < width}.
double strip_distance(Cplx s1, Cplx s2, double width);

enum class BoundMethod {
  degenerate_flat,
  caratheodory_halfplane,
  slice_whole_plane,
  slice_halfplane,
  slice_strip,
  chain,
};

const char* to_string(BoundMethod method);

struct DistanceBracket {
  double lower;
  double upper;
  BoundMethod lower_method;
  BoundMethod upper_method;
};

// {zeta : Re(alpha zeta) > beta} pulled back along zeta -> z + zeta (w - z).
struct SliceConstraint {
  Cplx alpha;
  double beta;
};

struct PlanarSlice {
  std::vector<SliceConstraint> constraints;
};

enum class ModelShape { whole_plane, half_plane, strip, bounded_polygon };

const char* to_string(ModelShape shape);

// max_j of the half-plane distance between L_j(z) - a_j and L_j(w) - a_j.
double cara_lower(const DomainSpec& domain, const CVector& z, const CVector& w);

PlanarSlice slice(const DomainSpec& domain, const CVector& z, const CVector& w);
ModelShape classify_slice(const PlanarSlice& slice);

// Distance from 0 to 1 in the slice, when it is a model shape. Throws for
// bounded_polygon.
double model_slice_distance(const PlanarSlice& slice);

// Triangle-inequality bound along the segment [z, w] split into n steps, each
// step bounded by arctanh(step / r) where r is the radius of the largest
// complex disc in the segment's direction at both step endpoints. Steps are
// bisected until shorter than r/2.
double chain_upper(const DomainSpec& domain, const CVector& z, const CVector& w, std::size_t n);

// Limit of chain_upper as n grows: the length of the segment in the metric
// |dz| / r, with r the directional disc radius, integrated in closed form.
double chain_upper_limit(const DomainSpec& domain, const CVector& z, const CVector& w);

double slice_upper(const DomainSpec& domain, const CVector& z, const CVector& w);

DistanceBracket distance_bracket(const DomainSpec& domain, const CVector& z, const CVector& w);

// Whether w - z lies in the common complex kernel of the constraints.
bool is_flat_pair(const DomainSpec& domain, const CVector& z, const CVector& w);

enum class BallMembership { certified_in, certified_out, unknown };

const char* to_string(BallMembership m);

BallMembership ball_probe(const DomainSpec& domain, const CVector& center, double radius,
                          const CVector& z);

struct ExhaustionPoint {
  double radius;
  double lower;
};

std::vector<ExhaustionPoint> exhaustion_curve(const DomainSpec& domain, const CVector& z,
                                              const CVector& w, std::span<const double> radii);

}  // namespace hypconvex
