#include "hypconvex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hypconvex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAngularTol = 1e-10;
constexpr int kMaxBisections = 60;

void require_interior(const DomainSpec& domain, const CVector& z, const char* who) {
  if (!is_interior(domain, z)) throw DomainError(std::string(who) + ": point is not interior");
}

// Slack of each constraint along t -> z + t (w - z) is s0 + t * ds; the
// complex disc in direction (w - z) has radius min_j slack_j / |L_j(v)|.
struct SegmentRadius {
  std::vector<double> s0, ds, inv_speed;

  SegmentRadius(const DomainSpec& domain, const CVector& z, const CVector& w) {
    const CVector diff = w - z;
    const CVector v = diff / diff.norm();
    for (const auto& h : domain.halfspaces()) {
      if (annihilates(h.functional, v)) continue;
      s0.push_back(h.slack(z));
      ds.push_back(h.functional(diff).real());
      inv_speed.push_back(1.0 / std::abs(h.functional(v)));
    }
  }

  bool unconstrained() const { return s0.empty(); }

  double operator()(double t) const {
    double r = kInf;
    for (std::size_t j = 0; j < s0.size(); ++j) r = std::min(r, (s0[j] + t * ds[j]) * inv_speed[j]);
    return r;
  }

  // Integral of length / r(t) over [0, 1]. r is a minimum of affine functions,
  // so it is affine between consecutive crossings and each piece integrates
  // to a logarithm.
  double inverse_integral(double length) const {
    std::vector<double> cuts{0.0, 1.0};
    for (std::size_t j = 0; j < s0.size(); ++j) {
      for (std::size_t l = j + 1; l < s0.size(); ++l) {
        const double db = ds[j] * inv_speed[j] - ds[l] * inv_speed[l];
        if (db == 0.0) continue;
        const double t = (s0[l] * inv_speed[l] - s0[j] * inv_speed[j]) / db;
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double t0 = cuts[i], t1 = cuts[i + 1];
      const double dt = t1 - t0;
      if (dt <= 0.0) continue;
      const double tm = 0.5 * (t0 + t1);
      std::size_t best = 0;
      for (std::size_t j = 1; j < s0.size(); ++j) {
        if ((s0[j] + tm * ds[j]) * inv_speed[j] < (s0[best] + tm * ds[best]) * inv_speed[best]) best = j;
      }
      const double a = (s0[best] + t0 * ds[best]) * inv_speed[best];
      const double b = ds[best] * inv_speed[best];
      if (!(a > 0.0) || !(a + b * dt > 0.0)) throw DomainError("chain_upper: segment touches the boundary");
      const double x = b * dt / a;
      total += std::abs(x) < 1e-8 ? dt / a * (1.0 - 0.5 * x) : std::log1p(x) / b;
    }
    return length * total;
  }
};

double chain_step(const SegmentRadius& radius, double length, double t0, double t1, double r0,
                  double r1, int depth) {
  const double step = length * (t1 - t0);
  const double r = std::min(r0, r1);
  if (!(r > 0.0)) throw DomainError("chain_upper: segment touches the boundary");
  if (step < 0.5 * r) return std::atanh(step / r);
  if (depth >= kMaxBisections) throw DomainError("chain_upper: refinement did not terminate");
  const double tm = 0.5 * (t0 + t1);
  const double rm = radius(tm);
  return chain_step(radius, length, t0, tm, r0, rm, depth + 1) +
         chain_step(radius, length, tm, t1, rm, r1, depth + 1);
}

struct NormalizedConstraint {
  Cplx dir;
  double beta;
};

std::vector<NormalizedConstraint> normalized(const PlanarSlice& s) {
  std::vector<NormalizedConstraint> out;
  for (const auto& c : s.constraints) {
    const double a = std::abs(c.alpha);
    out.push_back({c.alpha / a, c.beta / a});
  }
  return out;
}

// Direction classes with the tightest threshold in each.
std::vector<NormalizedConstraint> direction_classes(const PlanarSlice& s) {
  std::vector<NormalizedConstraint> classes;
  for (const auto& c : normalized(s)) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const NormalizedConstraint& k) {
      return std::abs(k.dir - c.dir) <= kAngularTol;
    });
    if (it == classes.end()) {
      classes.push_back(c);
    } else {
      it->beta = std::max(it->beta, c.beta);
    }
  }
  return classes;
}

struct SliceBound {
  double value;
  BoundMethod method;
};

SliceBound slice_bound(const DomainSpec& domain, const CVector& z, const CVector& w) {
  const PlanarSlice s = slice(domain, z, w);
  switch (classify_slice(s)) {
    case ModelShape::whole_plane: return {0.0, BoundMethod::slice_whole_plane};
    case ModelShape::half_plane: return {model_slice_distance(s), BoundMethod::slice_halfplane};
    case ModelShape::strip: return {model_slice_distance(s), BoundMethod::slice_strip};
    case ModelShape::bounded_polygon: break;
  }
  // The chain along [z, w] only sees the slice, so this is a chain in it.
  return {chain_upper_limit(domain, z, w), BoundMethod::chain};
}

}  // namespace

const char* to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::degenerate_flat: return "degenerate_flat";
    case BoundMethod::caratheodory_halfplane: return "caratheodory_halfplane";
    case BoundMethod::slice_whole_plane: return "slice_whole_plane";
    case BoundMethod::slice_halfplane: return "slice_halfplane";
    case BoundMethod::slice_strip: return "slice_strip";
    case BoundMethod::chain: return "chain";
  }
  return "?";
}

const char* to_string(ModelShape shape) {
  switch (shape) {
    case ModelShape::whole_plane: return "whole_plane";
    case ModelShape::half_plane: return "half_plane";
    case ModelShape::strip: return "strip";
    case ModelShape::bounded_polygon: return "bounded_polygon";
  }
  return "?";
}

const char* to_string(BallMembership m) {
  switch (m) {
    case BallMembership::certified_in: return "certified_in";
    case BallMembership::certified_out: return "certified_out";
    case BallMembership::unknown: return "unknown";
  }
  return "?";
}

double disc_distance(Cplx a, Cplx b) {
  const double na = std::norm(a), nb = std::norm(b);
  if (!(na < 1.0) || !(nb < 1.0)) throw DomainError("disc_distance: point not inside the unit disc");
  // arctanh t = log((|1 - conj(b) a| + |a - b|) / sqrt((1-|a|^2)(1-|b|^2)))
  const double num = std::abs(1.0 - std::conj(b) * a) + std::abs(a - b);
  return std::log(num / std::sqrt((1.0 - na) * (1.0 - nb)));
}

double halfplane_distance(Cplx w1, Cplx w2) {
  if (!(w1.real() > 0.0) || !(w2.real() > 0.0)) {
    throw DomainError("halfplane_distance: point not in the open right half-plane");
  }
  // |w1 + conj w2|^2 - |w1 - w2|^2 = 4 Re w1 Re w2
  const double num = std::abs(w1 + std::conj(w2)) + std::abs(w1 - w2);
  return std::log(num / (2.0 * std::sqrt(w1.real() * w2.real())));
}

double strip_distance(Cplx s1, Cplx s2, double width) {
  if (!(width > 0.0)) throw DomainError("strip_distance: width must be positive");
  for (const Cplx s : {s1, s2}) {
    if (!(s.real() > 0.0 && s.real() < width)) throw DomainError("strip_distance: point outside strip");
  }
  // Vertical translation is an isometry; center the pair before exponentiating.
  const Cplx shift{0.0, 0.5 * (s1.imag() + s2.imag())};
  const Cplx i{0.0, 1.0};
  const double k = std::numbers::pi / width;
  auto to_halfplane = [&](Cplx s) { return -i * std::exp(i * k * (s - shift)); };
  return halfplane_distance(to_halfplane(s1), to_halfplane(s2));
}

double cara_lower(const DomainSpec& domain, const CVector& z, const CVector& w) {
  require_interior(domain, z, "cara_lower");
  require_interior(domain, w, "cara_lower");
  double best = 0.0;
  for (const auto& h : domain.halfspaces()) {
    best = std::max(best, halfplane_distance(h.functional(z) - h.threshold,
                                             h.functional(w) - h.threshold));
  }
  return best;
}

PlanarSlice slice(const DomainSpec& domain, const CVector& z, const CVector& w) {
  require_interior(domain, z, "slice");
  require_interior(domain, w, "slice");
  const CVector diff = w - z;
  if (diff.norm() == 0.0) throw DomainError("slice: points coincide");
  const CVector v = diff / diff.norm();
  PlanarSlice out;
  for (const auto& h : domain.halfspaces()) {
    if (annihilates(h.functional, v)) continue;  // constant on the slice, and positive at z
    const SliceConstraint c{h.functional(diff), h.threshold - h.functional(z).real()};
    const bool duplicate =
        std::any_of(out.constraints.begin(), out.constraints.end(), [&](const SliceConstraint& o) {
          const double ao = std::abs(o.alpha), ac = std::abs(c.alpha);
          return std::abs(o.alpha / ao - c.alpha / ac) <= 1e-12 &&
                 std::abs(o.beta / ao - c.beta / ac) <= 1e-12 * (1.0 + std::abs(c.beta / ac));
        });
    if (!duplicate) out.constraints.push_back(c);
  }
  return out;
}

ModelShape classify_slice(const PlanarSlice& s) {
  if (s.constraints.empty()) return ModelShape::whole_plane;
  const auto classes = direction_classes(s);
  if (classes.size() == 1) return ModelShape::half_plane;
  if (classes.size() == 2 && std::abs(classes[0].dir + classes[1].dir) <= kAngularTol) {
    return ModelShape::strip;
  }
  return ModelShape::bounded_polygon;
}

double model_slice_distance(const PlanarSlice& s) {
  switch (classify_slice(s)) {
    case ModelShape::whole_plane: return 0.0;
    case ModelShape::half_plane: {
      const auto c = direction_classes(s).front();
      // u = dir * zeta - beta maps the slice onto {Re u > 0}.
      return halfplane_distance(-c.beta, c.dir - c.beta);
    }
    case ModelShape::strip: {
      const auto classes = direction_classes(s);
      const auto& lo = classes[0];
      const auto& hi = classes[1];
      // beta_lo < Re(dir zeta) < -beta_hi
      const double width = -hi.beta - lo.beta;
      return strip_distance(-lo.beta, lo.dir - lo.beta, width);
    }
    case ModelShape::bounded_polygon: break;
  }
  throw DomainError("model_slice_distance: slice is not a model shape");
}

double chain_upper(const DomainSpec& domain, const CVector& z, const CVector& w, std::size_t n) {
  require_interior(domain, z, "chain_upper");
  require_interior(domain, w, "chain_upper");
  if (n == 0) throw DomainError("chain_upper: need at least one step");
  const double length = (w - z).norm();
  if (length == 0.0) return 0.0;
  const SegmentRadius radius(domain, z, w);
  if (radius.unconstrained()) return 0.0;
  double total = 0.0;
  double r_prev = radius(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = static_cast<double>(i) / static_cast<double>(n);
    const double t1 = static_cast<double>(i + 1) / static_cast<double>(n);
    const double r_next = radius(t1);
    total += chain_step(radius, length, t0, t1, r_prev, r_next, 0);
    r_prev = r_next;
  }
  return total;
}

double chain_upper_limit(const DomainSpec& domain, const CVector& z, const CVector& w) {
  require_interior(domain, z, "chain_upper");
  require_interior(domain, w, "chain_upper");
  const double length = (w - z).norm();
  if (length == 0.0) return 0.0;
  const SegmentRadius radius(domain, z, w);
  if (radius.unconstrained()) return 0.0;
  return radius.inverse_integral(length);
}

double slice_upper(const DomainSpec& domain, const CVector& z, const CVector& w) {
  if ((w - z).norm() == 0.0) throw DomainError("slice_upper: points coincide");
  return slice_bound(domain, z, w).value;
}

bool is_flat_pair(const DomainSpec& domain, const CVector& z, const CVector& w) {
  const CVector diff = w - z;
  const double len = diff.norm();
  if (len == 0.0) return true;
  const CVector v = diff / len;
  return std::all_of(domain.halfspaces().begin(), domain.halfspaces().end(),
                     [&](const HalfSpace& h) { return annihilates(h.functional, v); });
}

DistanceBracket distance_bracket(const DomainSpec& domain, const CVector& z, const CVector& w) {
  require_interior(domain, z, "distance_bracket");
  require_interior(domain, w, "distance_bracket");
  if (is_flat_pair(domain, z, w)) {
    return {0.0, 0.0, BoundMethod::degenerate_flat, BoundMethod::degenerate_flat};
  }
  DistanceBracket b{cara_lower(domain, z, w), kInf, BoundMethod::caratheodory_halfplane,
                    BoundMethod::chain};
  const SliceBound s = slice_bound(domain, z, w);
  b.upper = s.value;
  b.upper_method = s.method;
  if (s.method != BoundMethod::chain) {
    const double chained = chain_upper_limit(domain, z, w);
    if (chained < b.upper) {
      b.upper = chained;
      b.upper_method = BoundMethod::chain;
    }
  }
  if (b.lower > b.upper) {
    // Closed forms on both sides can disagree in the last bits.
    if (b.lower - b.upper > 1e-12 * (1.0 + b.upper)) {
      throw std::logic_error("distance_bracket: lower bound exceeds upper bound");
    }
    b.upper = b.lower;
  }
  return b;
}

BallMembership ball_probe(const DomainSpec& domain, const CVector& center, double radius,
                          const CVector& z) {
  if (!(radius > 0.0)) throw DomainError("ball_probe: radius must be positive");
  const auto b = distance_bracket(domain, center, z);
  if (b.upper <= radius) return BallMembership::certified_in;
  if (b.lower > radius) return BallMembership::certified_out;
  return BallMembership::unknown;
}

std::vector<ExhaustionPoint> exhaustion_curve(const DomainSpec& domain, const CVector& z,
                                              const CVector& w, std::span<const double> radii) {
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw DomainError("exhaustion_curve: radii must increase");
  }
  std::vector<ExhaustionPoint> out;
  out.reserve(radii.size());
  for (const double r : radii) out.push_back({r, cara_lower(truncate(domain, r), z, w)});
  return out;
}

}  // namespace hypconvex
