#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "common.hpp"

namespace kinstatic {

/// Coordinates of a Lie algebra element in the basis of its owning table.
using AlgebraVector = Eigen::VectorXd;

/// Named real parameters of a bracket table ("c_vel", "omega", "s").
using AlgebraParams = std::map<std::string, double>;

/**
 * @brief Structure constants of a finite-dimensional real Lie algebra.
 *
 * Entry (i, j, k) is the coefficient of basis vector k in [e_i, e_j].
 * Entries are only ever written in antisymmetric pairs, so the table is
 * antisymmetric in (i, j) by construction.
 */
class BracketTable
{
public:
  BracketTable() = default;

  BracketTable(std::string name, std::vector<std::string> basis_labels, AlgebraParams params = {})
    : m_name(std::move(name)),
      m_labels(std::move(basis_labels)),
      m_params(std::move(params)),
      m_c(m_labels.size() * m_labels.size() * m_labels.size(), 0.0)
  {
    if (m_labels.empty()) {
      throw Error("bracket table needs a non-empty basis");
    }
  }

  const std::string& name() const { return m_name; }
  std::size_t dim() const { return m_labels.size(); }
  const std::vector<std::string>& basis_labels() const { return m_labels; }
  const AlgebraParams& params() const { return m_params; }

  /// Physical-dimension labels per basis vector. Metadata only.
  const std::map<std::string, std::string>& dimension_labels() const { return m_dimensions; }
  void set_dimension_label(const std::string& basis, std::string label) { m_dimensions[basis] = std::move(label); }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return m_c[index(i, j, k)]; }

  /// Sets [e_i, e_j] to have coefficient `value` on e_k (and [e_j, e_i] to -value).
  void set(std::size_t i, std::size_t j, std::size_t k, double value)
  {
    if (i == j && value != 0.0) {
      throw Error("bracket of a basis vector with itself must vanish");
    }
    m_c[index(i, j, k)] = value;
    m_c[index(j, i, k)] = -value;
  }

  void set(std::string_view a, std::string_view b, std::string_view k, double value)
  {
    set(label_index(a), label_index(b), label_index(k), value);
  }

  std::size_t label_index(std::string_view label) const
  {
    auto it = std::find(m_labels.begin(), m_labels.end(), label);
    if (it == m_labels.end()) {
      throw Error("unknown basis label '" + std::string(label) + "' in table " + m_name);
    }
    return static_cast<std::size_t>(it - m_labels.begin());
  }

  /// Unit vector along the named basis element.
  AlgebraVector basis(std::string_view label) const { return basis(label_index(label)); }

  AlgebraVector basis(std::size_t i) const
  {
    AlgebraVector e = AlgebraVector::Zero(static_cast<Eigen::Index>(dim()));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    return e;
  }

  AlgebraVector zero() const { return AlgebraVector::Zero(static_cast<Eigen::Index>(dim())); }

private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const
  {
    const std::size_t n = dim();
    if (i >= n || j >= n || k >= n) {
      throw Error("structure-constant index out of range");
    }
    return (i * n + j) * n + k;
  }

  std::string m_name;
  std::vector<std::string> m_labels;
  AlgebraParams m_params;
  std::map<std::string, std::string> m_dimensions;
  std::vector<double> m_c;
};

/// Basis slots of the six-dimensional central extension, ordered so that
/// the coordinates read (xi, zeta, y, v, x, t).
namespace static_ext {
inline constexpr std::size_t M = 0;
inline constexpr std::size_t F = 1;
inline constexpr std::size_t Y = 2;
inline constexpr std::size_t K = 3;
inline constexpr std::size_t P = 4;
inline constexpr std::size_t E = 5;
inline constexpr std::size_t kDim = 6;
} // namespace static_ext

/// The eleven kinematical algebras plus the central extension of Static.
inline const std::vector<std::string>& registry_names()
{
  static const std::vector<std::string> names{
    "dS+",     "dS-",     "NH+",         "NH-",    "Poincare", "ParaPoincare+",
    "ParaPoincare-", "Galilei", "Carroll", "ParaGalilei", "Static", "StaticExt"};
  return names;
}

namespace detail {

inline double require_param(const AlgebraParams& params, const std::string& algebra, const std::string& key)
{
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error("algebra " + algebra + " requires parameter '" + key + "'");
  }
  if (!std::isfinite(it->second) || it->second <= 0.0) {
    throw Error("parameter '" + key + "' of " + algebra + " must be finite and > 0");
  }
  return it->second;
}

} // namespace detail

/**
 * @brief Builds a registry table by identifier.
 *
 * Kinematical algebras use basis (K, P, E). Parameters "c_vel" and "omega"
 * are required exactly where the brackets use them; signed variants carry
 * their sign as parameter "s".
 */
inline BracketTable registry_get(const std::string& name, const AlgebraParams& params = {})
{
  const std::vector<std::string> kpe{"K", "P", "E"};

  if (name == "StaticExt") {
    BracketTable tbl(name, {"M", "F", "Y", "K", "P", "E"});
    tbl.set("K", "P", "M", 1.0);
    tbl.set("K", "E", "Y", 1.0);
    tbl.set("P", "E", "F", 1.0);
    tbl.set_dimension_label("M", "L^-2 T");
    tbl.set_dimension_label("F", "L^-1 T^-1");
    tbl.set_dimension_label("Y", "L^-1");
    return tbl;
  }
  if (name == "Static") {
    return BracketTable(name, kpe);
  }

  const bool has_sign = name.back() == '+' || name.back() == '-';
  const double sign = name.back() == '-' ? -1.0 : 1.0;
  const std::string family = has_sign ? name.substr(0, name.size() - 1) : name;

  // Which of the three brackets are switched on: [K,P]=E/c^2, [K,E]=P, [P,E]=s w^2 K.
  bool kp = false;
  bool ke = false;
  bool pe = false;
  if (family == "dS" && has_sign) {
    kp = ke = pe = true;
  } else if (family == "NH" && has_sign) {
    ke = pe = true;
  } else if (family == "Poincare" && !has_sign) {
    kp = ke = true;
  } else if (family == "ParaPoincare" && has_sign) {
    kp = pe = true;
  } else if (family == "Galilei" && !has_sign) {
    ke = true;
  } else if (family == "Carroll" && !has_sign) {
    kp = true;
  } else if (family == "ParaGalilei" && !has_sign) {
    pe = true;
  } else {
    throw Error("unknown algebra '" + name + "'");
  }

  AlgebraParams used;
  if (kp) {
    used["c_vel"] = detail::require_param(params, name, "c_vel");
  }
  if (pe) {
    used["omega"] = detail::require_param(params, name, "omega");
  }
  if (has_sign) {
    used["s"] = sign;
  }

  BracketTable tbl(name, kpe, used);
  if (kp) {
    const double c = used["c_vel"];
    tbl.set("K", "P", "E", 1.0 / (c * c));
  }
  if (ke) {
    tbl.set("K", "E", "P", 1.0);
  }
  if (pe) {
    const double w = used["omega"];
    tbl.set("P", "E", "K", sign * w * w);
  }
  return tbl;
}

inline void require_conformant(const BracketTable& tbl, const AlgebraVector& v)
{
  if (static_cast<std::size_t>(v.size()) != tbl.dim()) {
    throw Error("vector of dimension " + std::to_string(v.size()) + " does not conform to " + tbl.name() +
                " (dimension " + std::to_string(tbl.dim()) + ")");
  }
}

/// Bilinear extension of the table: result[k] = sum_ij a[i] b[j] c(i,j,k).
inline AlgebraVector bracket(const BracketTable& tbl, const AlgebraVector& a, const AlgebraVector& b)
{
  require_conformant(tbl, a);
  require_conformant(tbl, b);
  const std::size_t n = tbl.dim();
  AlgebraVector out = tbl.zero();
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a[static_cast<Eigen::Index>(i)];
    if (ai == 0.0) {
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double bj = b[static_cast<Eigen::Index>(j)];
      if (bj == 0.0) {
        continue;
      }
      for (std::size_t k = 0; k < n; ++k) {
        out[static_cast<Eigen::Index>(k)] += ai * bj * tbl(i, j, k);
      }
    }
  }
  return out;
}

struct JacobiReport
{
  double residual = 0.0;
  std::array<std::size_t, 3> worst{0, 0, 0};
  bool pass = true;
};

/// Max-norm Jacobiator over all basis triples.
inline JacobiReport check_jacobi(const BracketTable& tbl, double tol = kDefaultTol)
{
  JacobiReport report;
  const std::size_t n = tbl.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const AlgebraVector ei = tbl.basis(i);
        const AlgebraVector ej = tbl.basis(j);
        const AlgebraVector ek = tbl.basis(k);
        const AlgebraVector jac = bracket(tbl, ei, bracket(tbl, ej, ek)) + bracket(tbl, ej, bracket(tbl, ek, ei)) +
                                  bracket(tbl, ek, bracket(tbl, ei, ej));
        const double r = jac.cwiseAbs().maxCoeff();
        if (r > report.residual) {
          report.residual = r;
          report.worst = {i, j, k};
        }
      }
    }
  }
  report.pass = report.residual <= tol;
  return report;
}

/// True when every double bracket [[e_i, e_j], e_k] vanishes exactly.
inline bool is_step2_nilpotent(const BracketTable& tbl, std::array<std::size_t, 3>* witness = nullptr)
{
  const std::size_t n = tbl.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const AlgebraVector ij = bracket(tbl, tbl.basis(i), tbl.basis(j));
      for (std::size_t k = 0; k < n; ++k) {
        if (!bracket(tbl, ij, tbl.basis(k)).isZero(0.0)) {
          if (witness != nullptr) {
            *witness = {i, j, k};
          }
          return false;
        }
      }
    }
  }
  return true;
}

/**
 * @brief Baker-Campbell-Hausdorff product truncated after the first bracket.
 *
 * Exact for step-2 nilpotent algebras; any other table is refused rather
 * than silently truncated.
 */
inline AlgebraVector bch2(const BracketTable& tbl, const AlgebraVector& a, const AlgebraVector& b)
{
  require_conformant(tbl, a);
  require_conformant(tbl, b);
  std::array<std::size_t, 3> w{};
  if (!is_step2_nilpotent(tbl, &w)) {
    const auto& l = tbl.basis_labels();
    throw Error(tbl.name() + " is not step-2 nilpotent: [[" + l[w[0]] + "," + l[w[1]] + "]," + l[w[2]] + "] != 0");
  }
  return a + b + 0.5 * bracket(tbl, a, b);
}

/// Matrix of ad_X; column j is [X, e_j].
inline Eigen::MatrixXd ad_matrix(const BracketTable& tbl, const AlgebraVector& x)
{
  require_conformant(tbl, x);
  const auto n = static_cast<Eigen::Index>(tbl.dim());
  Eigen::MatrixXd ad(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ad.col(j) = bracket(tbl, x, tbl.basis(static_cast<std::size_t>(j)));
  }
  return ad;
}

} // namespace kinstatic
