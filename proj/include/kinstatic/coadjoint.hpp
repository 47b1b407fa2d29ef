#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "algebra.hpp"
#include "common.hpp"
#include "group.hpp"

namespace kinstatic {

/// Point (m, f, I, k, p, e) of the dual of the extended algebra.
struct DualVector
{
  double m = 0.0; ///< mass
  double f = 0.0; ///< force
  double I = 0.0; ///< impetus
  double k = 0.0; ///< static momentum
  double p = 0.0; ///< linear momentum
  double e = 0.0; ///< energy

  std::array<double, 6> as_array() const { return {m, f, I, k, p, e}; }

  friend DualVector operator*(double s, const DualVector& a) { return {s * a.m, s * a.f, s * a.I, s * a.k, s * a.p, s * a.e}; }
  friend bool operator==(const DualVector&, const DualVector&) = default;
};

inline double max_abs_diff(const DualVector& a, const DualVector& b)
{
  const auto x = a.as_array();
  const auto y = b.as_array();
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r = std::max(r, std::abs(x[i] - y[i]));
  }
  return r;
}

/// The eight orbit classes. _M / _0 separate the massive and massless
/// systems that share the acronyms BFS and FSS.
enum class OrbitClass
{
  ABS,
  ASS,
  BFS_M,
  FSS_M,
  BSF,
  SSF,
  BFS_0,
  FSS_0
};

inline constexpr std::array<OrbitClass, 8> kAllClasses{OrbitClass::ABS, OrbitClass::ASS, OrbitClass::BFS_M,
                                                       OrbitClass::FSS_M, OrbitClass::BSF, OrbitClass::SSF,
                                                       OrbitClass::BFS_0, OrbitClass::FSS_0};

inline std::string_view to_string(OrbitClass c)
{
  switch (c) {
  case OrbitClass::ABS: return "ABS";
  case OrbitClass::ASS: return "ASS";
  case OrbitClass::BFS_M: return "BFS_M";
  case OrbitClass::FSS_M: return "FSS_M";
  case OrbitClass::BSF: return "BSF";
  case OrbitClass::SSF: return "SSF";
  case OrbitClass::BFS_0: return "BFS_0";
  case OrbitClass::FSS_0: return "FSS_0";
  }
  return "?";
}

inline OrbitClass parse_orbit_class(std::string_view s)
{
  for (OrbitClass c : kAllClasses) {
    if (to_string(c) == s) {
      return c;
    }
  }
  throw Error("unknown orbit class '" + std::string(s) + "'");
}

inline bool is_massive(OrbitClass c)
{
  return c == OrbitClass::ABS || c == OrbitClass::ASS || c == OrbitClass::BFS_M || c == OrbitClass::FSS_M;
}

enum class ChartKind
{
  PQ,   ///< (p, q), sigma = dp ^ dq
  ETAU, ///< (e, tau), sigma = de ^ dtau
  POINT ///< zero-dimensional orbit
};

inline std::string_view to_string(ChartKind k)
{
  switch (k) {
  case ChartKind::PQ: return "PQ";
  case ChartKind::ETAU: return "ETAU";
  case ChartKind::POINT: return "POINT";
  }
  return "?";
}

/// Names of the two chart coordinates, e.g. {"p", "q"}.
inline std::array<std::string_view, 2> coordinate_names(ChartKind k)
{
  if (k == ChartKind::ETAU) {
    return {"e", "tau"};
  }
  return {"p", "q"};
}

struct ChartPoint
{
  ChartKind kind = ChartKind::POINT;
  std::array<double, 2> c{0.0, 0.0};

  static ChartPoint pq(double p, double q) { return {ChartKind::PQ, {p, q}}; }
  static ChartPoint etau(double e, double tau) { return {ChartKind::ETAU, {e, tau}}; }
  static ChartPoint point() { return {}; }

  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

/**
 * @brief A classified coadjoint orbit.
 *
 * m, f, I are always stored; the remaining fields hold the class-specific
 * invariant and are zero when the class does not use them.
 */
struct Orbit
{
  OrbitClass cls = OrbitClass::FSS_0;
  double m = 0.0;
  double f = 0.0;
  double I = 0.0;
  double U = 0.0;  ///< internal energy (ABS, ASS, BFS_M)
  double k0 = 0.0; ///< BSF
  double k = 0.0;  ///< SSF, FSS_0
  double p = 0.0;  ///< BFS_0, FSS_0
  double e = 0.0;  ///< FSS_M, FSS_0
  double tol = kDefaultClassifyTol;

  double u() const { return m != 0.0 ? I / m : 0.0; }
  double a() const { return m != 0.0 ? f / m : 0.0; }
  double omega() const { return I != 0.0 ? f / I : 0.0; }

  ChartKind chart_kind() const
  {
    if (cls == OrbitClass::FSS_0) return ChartKind::POINT;
    if (cls == OrbitClass::BFS_0) return ChartKind::ETAU;
    return ChartKind::PQ;
  }

  int dim() const { return cls == OrbitClass::FSS_0 ? 0 : 2; }

  NamedValues invariants() const
  {
    switch (cls) {
    case OrbitClass::ABS: return {{"m", m}, {"f", f}, {"I", I}, {"U", U}};
    case OrbitClass::ASS: return {{"m", m}, {"f", f}, {"U", U}};
    case OrbitClass::BFS_M: return {{"m", m}, {"I", I}, {"U", U}};
    case OrbitClass::FSS_M: return {{"m", m}, {"e", e}};
    case OrbitClass::BSF: return {{"f", f}, {"I", I}, {"k0", k0}};
    case OrbitClass::SSF: return {{"f", f}, {"k", k}};
    case OrbitClass::BFS_0: return {{"I", I}, {"p", p}};
    case OrbitClass::FSS_0: return {{"k", k}, {"p", p}, {"e", e}};
    }
    return {};
  }

  NamedValues derived() const
  {
    switch (cls) {
    case OrbitClass::ABS: return {{"u", u()}, {"a", a()}};
    case OrbitClass::ASS: return {{"a", a()}};
    case OrbitClass::BFS_M: return {{"u", u()}};
    case OrbitClass::BSF: return {{"omega", omega()}};
    default: return {};
    }
  }
};

/// Builds an orbit directly from its class and invariant record.
inline Orbit make_orbit(OrbitClass cls, const NamedValues& record)
{
  Orbit o;
  o.cls = cls;
  auto want = o.invariants();
  for (const auto& [name, value] : record) {
    bool known = false;
    for (const auto& w : want) {
      known = known || w.first == name;
    }
    if (!known) {
      throw Error("invariant '" + name + "' does not belong to class " + std::string(to_string(cls)));
    }
    if (name == "m") o.m = value;
    else if (name == "f") o.f = value;
    else if (name == "I") o.I = value;
    else if (name == "U") o.U = value;
    else if (name == "k0") o.k0 = value;
    else if (name == "k") o.k = value;
    else if (name == "p") o.p = value;
    else if (name == "e") o.e = value;
  }
  return o;
}

/// Duality pairing m dxi + f dzeta + I dy + k dv + p dx + e dt.
inline double pair(const DualVector& mu, const AlgebraVector& d)
{
  if (d.size() != static_cast<Eigen::Index>(static_ext::kDim)) {
    throw Error("pairing expects a 6-component vector of the extended algebra, got " + std::to_string(d.size()));
  }
  const auto a = mu.as_array();
  double s = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    s += a[static_cast<std::size_t>(i)] * d[i];
  }
  return s;
}

inline DualVector coadjoint_act(const GroupElement& g, const DualVector& mu)
{
  return {mu.m,
          mu.f,
          mu.I,
          mu.k + mu.m * g.x + mu.I * g.t,
          mu.p - mu.m * g.v + mu.f * g.t,
          mu.e - mu.f * g.x - mu.I * g.v};
}

/// Kirillov form over (K, P, E): entry (i, j) = <mu, [e_i, e_j]>, computed
/// from the structure constants of the extended algebra.
inline Eigen::Matrix3d kirillov(const DualVector& mu)
{
  static const BracketTable ext = registry_get("StaticExt");
  const std::array<std::size_t, 3> kpe{static_ext::K, static_ext::P, static_ext::E};
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out(i, j) = pair(mu, bracket(ext, ext.basis(kpe[i]), ext.basis(kpe[j])));
    }
  }
  return out;
}

inline int matrix_rank(const Eigen::MatrixXd& a, double tol)
{
  if (a.size() == 0) {
    return 0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    r += svd.singularValues()[i] > tol ? 1 : 0;
  }
  return r;
}

inline int kirillov_rank(const DualVector& mu, double tol = kDefaultClassifyTol) { return matrix_rank(kirillov(mu), tol); }

/// Internal energy of the ABS orbit: U = e - p u + f q with q = k/m.
inline double casimir_U_abs(const DualVector& mu) { return mu.e - mu.p * mu.I / mu.m + mu.f * mu.k / mu.m; }

/// Internal energy of the ASS orbit, U = e + f k/m (the I = 0 limit of the ABS form).
inline double casimir_U_ass(const DualVector& mu) { return mu.e + mu.f * mu.k / mu.m; }

/// The ASS invariant as printed, e - f k/m. Not invariant: it shifts by -2 f x.
inline double printed_U_ass(const DualVector& mu) { return mu.e - mu.f * mu.k / mu.m; }

inline double casimir_U_bfs(const DualVector& mu) { return mu.e - mu.p * mu.I / mu.m; }

/// k0 = k - p / omega with omega = f / I.
inline double casimir_k0(const DualVector& mu) { return mu.k - mu.p * mu.I / mu.f; }

/// Classifies mu by the zero pattern of (m, f, I); |x| > tol counts as nonzero.
inline Orbit classify(const DualVector& mu, double tol = kDefaultClassifyTol)
{
  if (!(tol >= 0.0)) {
    throw Error("classify tolerance must be >= 0");
  }
  const bool hm = std::abs(mu.m) > tol;
  const bool hf = std::abs(mu.f) > tol;
  const bool hi = std::abs(mu.I) > tol;

  Orbit o;
  o.tol = tol;
  o.m = hm ? mu.m : 0.0;
  o.f = hf ? mu.f : 0.0;
  o.I = hi ? mu.I : 0.0;

  if (hm) {
    if (hf && hi) {
      o.cls = OrbitClass::ABS;
      o.U = casimir_U_abs(mu);
    } else if (hf) {
      o.cls = OrbitClass::ASS;
      o.U = casimir_U_ass(mu);
    } else if (hi) {
      o.cls = OrbitClass::BFS_M;
      o.U = casimir_U_bfs(mu);
    } else {
      o.cls = OrbitClass::FSS_M;
      o.e = mu.e;
    }
  } else if (hf && hi) {
    o.cls = OrbitClass::BSF;
    o.k0 = casimir_k0(mu);
  } else if (hf) {
    o.cls = OrbitClass::SSF;
    o.k = mu.k;
  } else if (hi) {
    o.cls = OrbitClass::BFS_0;
    o.p = mu.p;
  } else {
    o.cls = OrbitClass::FSS_0;
    o.k = mu.k;
    o.p = mu.p;
    o.e = mu.e;
  }
  return o;
}

/// Canonical chart coordinates of mu on its orbit.
inline ChartPoint to_chart(const Orbit& orbit, const DualVector& mu)
{
  const OrbitClass actual = classify(mu, orbit.tol).cls;
  if (actual != orbit.cls) {
    throw Error("dual vector belongs to class " + std::string(to_string(actual)) + ", not " +
                std::string(to_string(orbit.cls)));
  }
  switch (orbit.cls) {
  case OrbitClass::ABS:
  case OrbitClass::ASS:
  case OrbitClass::BFS_M:
  case OrbitClass::FSS_M: return ChartPoint::pq(mu.p, mu.k / orbit.m);
  case OrbitClass::BSF:
  case OrbitClass::SSF: return ChartPoint::pq(mu.p, -mu.e / orbit.f);
  case OrbitClass::BFS_0: return ChartPoint::etau(mu.e, mu.k / orbit.I);
  case OrbitClass::FSS_0: return ChartPoint::point();
  }
  throw Error("unreachable orbit class");
}

/// Embedding of chart coordinates back into the dual.
inline DualVector from_chart(const Orbit& o, const ChartPoint& z)
{
  if (z.kind != o.chart_kind()) {
    throw Error("chart kind " + std::string(to_string(z.kind)) + " does not match class " +
                std::string(to_string(o.cls)));
  }
  const double c1 = z.c[0];
  const double c2 = z.c[1];
  switch (o.cls) {
  case OrbitClass::ABS: return {o.m, o.f, o.I, o.m * c2, c1, o.U + c1 * o.u() - o.f * c2};
  case OrbitClass::ASS: return {o.m, o.f, 0.0, o.m * c2, c1, o.U - o.f * c2};
  case OrbitClass::BFS_M: return {o.m, 0.0, o.I, o.m * c2, c1, o.U + c1 * o.u()};
  case OrbitClass::FSS_M: return {o.m, 0.0, 0.0, o.m * c2, c1, o.e};
  case OrbitClass::BSF: return {0.0, o.f, o.I, o.k0 + c1 / o.omega(), c1, -o.f * c2};
  case OrbitClass::SSF: return {0.0, o.f, 0.0, o.k, c1, -o.f * c2};
  case OrbitClass::BFS_0: return {0.0, 0.0, o.I, o.I * c2, o.p, c1};
  case OrbitClass::FSS_0: return {0.0, 0.0, 0.0, o.k, o.p, o.e};
  }
  throw Error("unreachable orbit class");
}

/**
 * @brief Finds g with coadjoint_act(g, from) == to, if one exists.
 *
 * The (k, p, e) part of the action is the Kirillov matrix applied to
 * (v, x, t), so the affine system is solved in the least-squares sense and
 * the candidate is accepted only if it reproduces `to` within tol.
 */
inline std::optional<GroupElement> find_transport(const DualVector& from, const DualVector& to, double tol = kDefaultTol)
{
  if (from.m != to.m || from.f != to.f || from.I != to.I) {
    return std::nullopt;
  }
  const Eigen::Matrix3d k = kirillov(from);
  const Eigen::Vector3d rhs(to.k - from.k, to.p - from.p, to.e - from.e);
  const Eigen::Vector3d sol = k.completeOrthogonalDecomposition().solve(rhs);
  const GroupElement g{sol[0], sol[1], sol[2]};
  if (max_abs_diff(coadjoint_act(g, from), to) > tol) {
    return std::nullopt;
  }
  return g;
}

} // namespace kinstatic
