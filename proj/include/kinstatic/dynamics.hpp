#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "coadjoint.hpp"
#include "common.hpp"
#include "group.hpp"
#include "integrate.hpp"

namespace kinstatic {

/// alpha * c1 + beta * c2 + gamma on a chart with coordinates (c1, c2).
struct AffineObservable
{
  ChartKind kind = ChartKind::PQ;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  static AffineObservable constant(ChartKind kind, double value) { return {kind, 0.0, 0.0, value}; }
  static AffineObservable coordinate(ChartKind kind, int index)
  {
    return index == 0 ? AffineObservable{kind, 1.0, 0.0, 0.0} : AffineObservable{kind, 0.0, 1.0, 0.0};
  }

  double operator()(const ChartPoint& z) const { return alpha * z.c[0] + beta * z.c[1] + gamma; }

  friend bool operator==(const AffineObservable&, const AffineObservable&) = default;
};

enum class Generator
{
  K,
  P,
  E
};

inline constexpr std::array<Generator, 3> kGenerators{Generator::K, Generator::P, Generator::E};

inline std::string_view to_string(Generator g)
{
  switch (g) {
  case Generator::K: return "K";
  case Generator::P: return "P";
  case Generator::E: return "E";
  }
  return "?";
}

/**
 * @brief Symplectic realization of the Static group on one orbit chart.
 *
 * Stores the argument map of (D_g psi)(z) = psi(pullback_g(z)):
 * pullback_g(z)[i] = z[i] + coeff[i][0] v + coeff[i][1] x + coeff[i][2] t.
 * The physical point action is the pullback of the inverse element.
 */
struct Realization
{
  Orbit orbit;
  ChartKind kind = ChartKind::POINT;
  std::array<std::array<double, 3>, 2> coeff{};

  int chart_dim() const { return kind == ChartKind::POINT ? 0 : 2; }
};

inline Realization realize(const Orbit& o)
{
  Realization r;
  r.orbit = o;
  r.kind = o.chart_kind();
  const double m = o.m;
  const double f = o.f;
  const double u = o.u();
  switch (o.cls) {
  case OrbitClass::ABS: r.coeff = {{{m, 0.0, -f}, {0.0, -1.0, -u}}}; break;
  case OrbitClass::ASS: r.coeff = {{{m, 0.0, -f}, {0.0, -1.0, 0.0}}}; break;
  case OrbitClass::BFS_M: r.coeff = {{{m, 0.0, 0.0}, {0.0, -1.0, -u}}}; break;
  case OrbitClass::FSS_M: r.coeff = {{{m, 0.0, 0.0}, {0.0, -1.0, 0.0}}}; break;
  case OrbitClass::BSF: r.coeff = {{{0.0, 0.0, -f}, {-1.0 / o.omega(), -1.0, 0.0}}}; break;
  case OrbitClass::SSF: r.coeff = {{{0.0, 0.0, -f}, {0.0, -1.0, 0.0}}}; break;
  case OrbitClass::BFS_0: r.coeff = {{{o.I, 0.0, 0.0}, {0.0, 0.0, -1.0}}}; break;
  case OrbitClass::FSS_0: break;
  }
  return r;
}

namespace detail {

inline void require_kind(ChartKind expected, ChartKind got)
{
  if (expected != got) {
    throw Error("chart kind mismatch: expected " + std::string(to_string(expected)) + ", got " +
                std::string(to_string(got)));
  }
}

inline void require_nontrivial(const Orbit& o, std::string_view what)
{
  if (o.chart_kind() == ChartKind::POINT) {
    throw Error(std::string(what) + " is undefined on the point orbit FSS_0");
  }
}

} // namespace detail

/// Argument map of D_g: z -> pullback_g(z).
inline ChartPoint pullback(const Realization& r, const GroupElement& g, const ChartPoint& z)
{
  detail::require_kind(r.kind, z.kind);
  ChartPoint out = z;
  for (int i = 0; i < r.chart_dim(); ++i) {
    out.c[i] += r.coeff[i][0] * g.v + r.coeff[i][1] * g.x + r.coeff[i][2] * g.t;
  }
  return out;
}

/// Point action g . z, the inverse of the pullback argument.
inline ChartPoint act_point(const Realization& r, const GroupElement& g, const ChartPoint& z)
{
  return pullback(r, inverse(g), z);
}

inline ChartPoint act_point(const Orbit& o, const GroupElement& g, const ChartPoint& z)
{
  return act_point(realize(o), g, z);
}

/// Orbit with its additive energy constant U set to zero.
inline Orbit normalized(Orbit o)
{
  o.U = 0.0;
  return o;
}

/// Momentum component mu(X) as an affine observable, read off the chart
/// embedding of the normalized orbit.
inline AffineObservable momentum_component(const Orbit& o, Generator x)
{
  detail::require_nontrivial(o, "momentum map");
  const Orbit n = normalized(o);
  // Same orbit with every additive constant zeroed, for the linear part.
  Orbit lin = n;
  lin.k0 = lin.k = lin.p = lin.e = 0.0;
  const ChartKind kind = o.chart_kind();
  auto slot = [x](const DualVector& mu) {
    switch (x) {
    case Generator::K: return mu.k;
    case Generator::P: return mu.p;
    case Generator::E: return mu.e;
    }
    return 0.0;
  };
  return {kind, slot(from_chart(lin, {kind, {1.0, 0.0}})), slot(from_chart(lin, {kind, {0.0, 1.0}})),
          slot(from_chart(n, {kind, {0.0, 0.0}}))};
}

/// (mu(K), mu(P), mu(E)) at z.
inline std::array<double, 3> momentum_map(const Orbit& o, const ChartPoint& z)
{
  detail::require_nontrivial(o, "momentum map");
  detail::require_kind(o.chart_kind(), z.kind);
  const DualVector mu = from_chart(normalized(o), z);
  return {mu.k, mu.p, mu.e};
}

/// Hamiltonian per orbit class, with the additive constant U dropped.
inline AffineObservable hamiltonian(const Orbit& o)
{
  detail::require_nontrivial(o, "hamiltonian");
  const ChartKind kind = o.chart_kind();
  switch (o.cls) {
  case OrbitClass::ABS: return {kind, o.u(), -o.f, 0.0};
  case OrbitClass::ASS: return {kind, 0.0, -o.f, 0.0};
  case OrbitClass::BFS_M: return {kind, o.u(), 0.0, 0.0};
  case OrbitClass::FSS_M: return AffineObservable::constant(kind, o.e);
  case OrbitClass::BSF:
  case OrbitClass::SSF: return {kind, 0.0, -o.f, 0.0};
  case OrbitClass::BFS_0: return {kind, 1.0, 0.0, 0.0};
  case OrbitClass::FSS_0: break;
  }
  throw Error("hamiltonian is undefined on the point orbit FSS_0");
}

/// Infinitesimal generator D(X): derivative of the pullback argument map
/// in the parameter of X at the identity.
inline std::array<double, 2> vector_field(const Orbit& o, Generator x)
{
  detail::require_nontrivial(o, "vector field");
  const Realization r = realize(o);
  const auto col = static_cast<std::size_t>(x);
  return {r.coeff[0][col], r.coeff[1][col]};
}

/// {F, G} = dF/dc2 dG/dc1 - dF/dc1 dG/dc2; constant for affine observables.
inline AffineObservable poisson(const AffineObservable& f, const AffineObservable& g)
{
  detail::require_kind(f.kind, g.kind);
  return AffineObservable::constant(f.kind, f.beta * g.alpha - f.alpha * g.beta);
}

/// Hamiltonian velocity (dc1/dt, dc2/dt) = ({c1, H}, {c2, H}).
inline std::array<double, 2> hamiltonian_velocity(const AffineObservable& h)
{
  return {poisson(AffineObservable::coordinate(h.kind, 0), h).gamma,
          poisson(AffineObservable::coordinate(h.kind, 1), h).gamma};
}

enum class FlowMethod
{
  exact,
  euler,
  rk4
};

inline FlowMethod parse_flow_method(std::string_view s)
{
  if (s == "exact") return FlowMethod::exact;
  if (s == "euler") return FlowMethod::euler;
  if (s == "rk4") return FlowMethod::rk4;
  throw Error("unknown flow method '" + std::string(s) + "'");
}

struct TrajectorySample
{
  double t = 0.0;
  ChartPoint z;
};

/**
 * @brief Samples the Hamiltonian flow at steps+1 uniform times in [0, duration].
 *
 * `exact` evaluates time translation through the point action at each
 * sample time; the numeric methods integrate the Hamiltonian vector field
 * with fixed step duration/steps. A zero duration yields one sample.
 */
inline std::vector<TrajectorySample> flow_trajectory(const Orbit& o, const ChartPoint& z0, double duration,
                                                     int steps, FlowMethod method)
{
  detail::require_nontrivial(o, "flow");
  detail::require_kind(o.chart_kind(), z0.kind);
  if (steps < 1) {
    throw Error("flow needs steps >= 1");
  }
  std::vector<TrajectorySample> out{{0.0, z0}};
  if (duration == 0.0) {
    return out;
  }
  const double h = duration / steps;
  const Realization r = realize(o);
  const AffineObservable ham = hamiltonian(o);
  auto rhs = [&ham](const ode::State<2>&) { return hamiltonian_velocity(ham); };

  ode::State<2> z = z0.c;
  for (int i = 1; i <= steps; ++i) {
    const double ti = i == steps ? duration : i * h;
    switch (method) {
    case FlowMethod::exact: z = act_point(r, {0.0, 0.0, ti}, z0).c; break;
    case FlowMethod::euler: z = ode::euler_step(rhs, z, h); break;
    case FlowMethod::rk4: z = ode::rk4_step(rhs, z, h); break;
    }
    out.push_back({ti, {z0.kind, z}});
  }
  return out;
}

inline ChartPoint flow(const Orbit& o, const ChartPoint& z0, double duration, int steps, FlowMethod method)
{
  return flow_trajectory(o, z0, duration, steps, method).back().z;
}

struct KernelReport
{
  int dim = 0;
  std::vector<std::array<double, 3>> basis;
};

/// Kernel of g -> translation of the point action, with an orthonormal
/// basis. Each basis vector is signed so its first nonzero entry is positive.
inline KernelReport action_kernel(const Orbit& o, double tol = kDefaultClassifyTol)
{
  const Realization r = realize(o);
  KernelReport rep;
  if (r.chart_dim() == 0) {
    rep.dim = 3;
    rep.basis = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    return rep;
  }
  Eigen::Matrix<double, 2, 3> a;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      a(i, j) = r.coeff[i][j];
    }
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(a), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    rank += sv[i] > tol * scale ? 1 : 0;
  }
  rep.dim = 3 - rank;
  for (int col = rank; col < 3; ++col) {
    Eigen::Vector3d b = svd.matrixV().col(col);
    for (int i = 0; i < 3; ++i) {
      if (std::abs(b[i]) > 1e-12) {
        if (b[i] < 0.0) {
          b = -b;
        }
        break;
      }
    }
    rep.basis.push_back({b[0], b[1], b[2]});
  }
  return rep;
}

} // namespace kinstatic
