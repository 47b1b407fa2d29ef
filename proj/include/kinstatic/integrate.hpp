#pragma once

#include <array>
#include <cstddef>

namespace kinstatic::ode {

/// Fixed-step integrators for small autonomous systems dz/dt = f(z).
/// They only add whole multiples of the step; there is no error control.

template<std::size_t N>
using State = std::array<double, N>;

template<std::size_t N>
State<N> axpy(const State<N>& z, double h, const State<N>& dz)
{
  State<N> out = z;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] += h * dz[i];
  }
  return out;
}

template<std::size_t N, typename Rhs>
State<N> euler_step(const Rhs& f, const State<N>& z, double h)
{
  return axpy(z, h, f(z));
}

template<std::size_t N, typename Rhs>
State<N> rk4_step(const Rhs& f, const State<N>& z, double h)
{
  const State<N> k1 = f(z);
  const State<N> k2 = f(axpy(z, 0.5 * h, k1));
  const State<N> k3 = f(axpy(z, 0.5 * h, k2));
  const State<N> k4 = f(axpy(z, h, k3));
  State<N> out = z;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

} // namespace kinstatic::ode
