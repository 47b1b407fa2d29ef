#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "common.hpp"

namespace kinstatic {

/// Element (v, x, t) of the one-dimensional Static group, i.e. (R^3, +).
struct GroupElement
{
  double v = 0.0;
  double x = 0.0;
  double t = 0.0;

  static GroupElement identity() { return {}; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Value of a 2-cocycle in the central slots (xi, zeta, y).
struct CocycleValue
{
  double xi = 0.0;
  double zeta = 0.0;
  double y = 0.0;

  friend CocycleValue operator+(const CocycleValue& a, const CocycleValue& b)
  {
    return {a.xi + b.xi, a.zeta + b.zeta, a.y + b.y};
  }
  friend CocycleValue operator-(const CocycleValue& a, const CocycleValue& b)
  {
    return {a.xi - b.xi, a.zeta - b.zeta, a.y - b.y};
  }
  friend bool operator==(const CocycleValue&, const CocycleValue&) = default;

  double max_abs() const { return std::max({std::abs(xi), std::abs(zeta), std::abs(y)}); }
};

/// Element (xi, zeta, y; v, x, t) of the central extension.
struct ExtGroupElement
{
  double xi = 0.0;
  double zeta = 0.0;
  double y = 0.0;
  GroupElement g;

  static ExtGroupElement identity() { return {}; }

  friend bool operator==(const ExtGroupElement&, const ExtGroupElement&) = default;
};

inline GroupElement multiply(const GroupElement& g, const GroupElement& h)
{
  return {g.v + h.v, g.x + h.x, g.t + h.t};
}

inline GroupElement inverse(const GroupElement& g) { return {-g.v, -g.x, -g.t}; }

enum class CocycleKind
{
  c1,  ///< antisymmetric cocycle produced by BCH
  c2,  ///< symmetric cocycle, coboundary of b
  c,   ///< c1 + c2, the one used by the extended law
  zero ///< the trivial cocycle, for equivalence checks
};

inline std::string_view to_string(CocycleKind kind)
{
  switch (kind) {
  case CocycleKind::c1: return "c1";
  case CocycleKind::c2: return "c2";
  case CocycleKind::c: return "c";
  case CocycleKind::zero: return "zero";
  }
  return "?";
}

inline CocycleKind parse_cocycle_kind(std::string_view s)
{
  if (s == "c1") return CocycleKind::c1;
  if (s == "c2") return CocycleKind::c2;
  if (s == "c") return CocycleKind::c;
  if (s == "zero") return CocycleKind::zero;
  throw Error("unknown cocycle kind '" + std::string(s) + "'");
}

// Middle slot uses xt' - x't; the printed "xt' - t'x" vanishes identically (E1).
inline CocycleValue cocycle(CocycleKind kind, const GroupElement& g, const GroupElement& h)
{
  switch (kind) {
  case CocycleKind::c1:
    return {0.5 * (g.v * h.x - h.v * g.x), 0.5 * (g.x * h.t - h.x * g.t), 0.5 * (g.v * h.t - h.v * g.t)};
  case CocycleKind::c2:
    return {0.5 * (g.v * h.x + h.v * g.x), 0.5 * (g.x * h.t + h.x * g.t), 0.5 * (g.v * h.t + h.v * g.t)};
  case CocycleKind::c:
    return {g.v * h.x, g.x * h.t, g.v * h.t};
  case CocycleKind::zero:
    return {};
  }
  throw Error("unknown cocycle kind");
}

/// Trivializing map b(g) = (vx, xt, vt) / 2.
inline CocycleValue b_map(const GroupElement& g) { return {0.5 * g.v * g.x, 0.5 * g.x * g.t, 0.5 * g.v * g.t}; }

/// Coboundary of b: b(gh) - b(g) - b(h).
inline CocycleValue coboundary_of_b(const GroupElement& g, const GroupElement& h)
{
  return b_map(multiply(g, h)) - b_map(g) - b_map(h);
}

/// c(g1,g2) + c(g1 g2, g3) - c(g1, g2 g3) - c(g2, g3); zero for a 2-cocycle.
inline CocycleValue verify_cocycle_identity(CocycleKind kind, const GroupElement& g1, const GroupElement& g2,
                                            const GroupElement& g3)
{
  return cocycle(kind, g1, g2) + cocycle(kind, multiply(g1, g2), g3) - cocycle(kind, g1, multiply(g2, g3)) -
         cocycle(kind, g2, g3);
}

/// Sample elements for checks: the integer grid {-2..2}^3.
inline std::vector<GroupElement> integer_grid(int lo = -2, int hi = 2)
{
  std::vector<GroupElement> out;
  for (int v = lo; v <= hi; ++v) {
    for (int x = lo; x <= hi; ++x) {
      for (int t = lo; t <= hi; ++t) {
        out.push_back({double(v), double(x), double(t)});
      }
    }
  }
  return out;
}

struct EquivalenceReport
{
  bool equivalent = true;
  double residual = 0.0;
  GroupElement worst_g;
  GroupElement worst_h;
};

/**
 * @brief Checks a(g,h) - b(g,h) = b(gh) - b(g) - b(h) over the given samples.
 *
 * Only equivalence through the fixed map b is tested; a failure means the
 * two cocycles do not differ by the coboundary of b.
 */
inline EquivalenceReport coboundary_equivalent(CocycleKind a, CocycleKind b, const std::vector<GroupElement>& samples,
                                               double tol = kDefaultTol)
{
  EquivalenceReport report;
  for (const auto& g : samples) {
    for (const auto& h : samples) {
      const double r = ((cocycle(a, g, h) - cocycle(b, g, h)) - coboundary_of_b(g, h)).max_abs();
      if (r > report.residual) {
        report.residual = r;
        report.worst_g = g;
        report.worst_h = h;
      }
    }
  }
  report.equivalent = report.residual <= tol;
  return report;
}

/// Extended law: central parts add plus c(g, g'); base parts add.
inline ExtGroupElement ext_multiply(const ExtGroupElement& a, const ExtGroupElement& b)
{
  const CocycleValue c = cocycle(CocycleKind::c, a.g, b.g);
  return {a.xi + b.xi + c.xi, a.zeta + b.zeta + c.zeta, a.y + b.y + c.y, multiply(a.g, b.g)};
}

inline ExtGroupElement ext_inverse(const ExtGroupElement& a)
{
  const GroupElement& g = a.g;
  return {-a.xi + g.v * g.x, -a.zeta + g.x * g.t, -a.y + g.v * g.t, inverse(g)};
}

/// Adjoint action of g on the extended algebra, coordinates (xi, zeta, y, v, x, t).
inline AlgebraVector adjoint(const GroupElement& g, const AlgebraVector& d)
{
  if (d.size() != static_cast<Eigen::Index>(static_ext::kDim)) {
    throw Error("adjoint expects a 6-component vector of the extended algebra, got " + std::to_string(d.size()));
  }
  using namespace static_ext;
  AlgebraVector out = d;
  out[M] += g.v * d[P] - g.x * d[K];
  out[F] += g.x * d[E] - g.t * d[P];
  out[Y] += g.v * d[E] - g.t * d[K];
  return out;
}

/// Embeds g as the algebra element vK + xP + tE of the extended algebra.
inline AlgebraVector to_algebra(const GroupElement& g)
{
  AlgebraVector a = AlgebraVector::Zero(static_ext::kDim);
  a[static_ext::K] = g.v;
  a[static_ext::P] = g.x;
  a[static_ext::E] = g.t;
  return a;
}

} // namespace kinstatic
