#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coadjoint.hpp"
#include "common.hpp"

namespace kinstatic {

/// A documented deviation from the printed source formulas.
struct Erratum
{
  std::string id;
  std::string printed;
  std::string corrected;
  std::string reason;
};

inline const std::vector<Erratum>& errata()
{
  static const std::vector<Erratum> list{
    {"E1", "2c1 middle slot: xt'-t'x", "xt'-x't",
     "printed form vanishes identically; coboundary of b and the BCH central part both give xt'-x't"},
    {"E2", "ASS: U=e-fq", "U=e+fq",
     "e-fq shifts by -2fx under (0,x,0); e+fq is the I=0 limit of the ABS invariant"},
    {"E3-a", "ABS: D(E)=-f d/dp - u d/q", "D(E)=-f d/dp - u d/dq", "derivative of the ABS realization in t"},
    {"E3-b", "summary tables: f=dp/dq (ABS, ASS, BSF, SSF); dtau/dt=0 (massless BFS)", "f=dp/dt; dtau/dt=1",
     "motion equations of the orbit sections; H=e with sigma=de^dtau gives dtau/dt=1"},
    {"E4", "acronyms BFS and FSS used for both massive and massless systems", "BFS_M, FSS_M, BFS_0, FSS_0",
     "class tags must be unique"},
  };
  return list;
}

/// Sign and normalization conventions fixed where the source is silent.
inline const std::vector<std::pair<std::string, std::string>>& conventions()
{
  static const std::vector<std::pair<std::string, std::string>> list{
    {"E5", "{F,G} = dF/dq dG/dp - dF/dp dG/dq; central charges come out as (+m, +I, +f)"},
    {"E6", "momentum map and hamiltonian drop the additive constant U; U is reported as an invariant"},
  };
  return list;
}

struct TableCell
{
  std::string text;    ///< emitted content
  std::string printed; ///< source content when it differs from text
  std::string erratum; ///< erratum id when corrected

  bool corrected() const { return !erratum.empty(); }
};

struct TableRow
{
  OrbitClass cls;
  std::string system;
  TableCell realization;
  TableCell motion;
  TableCell hamiltonian;
  std::string note;
};

struct SummaryTable
{
  std::string title;
  std::string chart_header;
  std::vector<TableRow> rows;
};

namespace detail {

inline TableCell cell(std::string text) { return {std::move(text), {}, {}}; }

inline TableCell fixed(std::string text, std::string printed, std::string id)
{
  return {std::move(text), std::move(printed), std::move(id)};
}

} // namespace detail

inline SummaryTable massive_table()
{
  using detail::cell;
  using detail::fixed;
  return {"massive systems",
          "(D_(v,x,t) psi)(p,q)",
          {
            {OrbitClass::ABS, "ABS", cell("psi(p+mv-ft,q-ut-x)"),
             fixed("f=dp/dt, I=m dq/dt", "f=dp/dq, I=m dq/dt", "E3-b"), cell("H=pu-fq"), ""},
            {OrbitClass::ASS, "ASS", cell("psi(p+mv-ft,q-x)"), fixed("f=dp/dt, dq/dt=0", "f=dp/dq, dq/dt=0", "E3-b"),
             cell("H=-fq"), ""},
            {OrbitClass::BFS_M, "BFS", cell("psi(p+mv,q-ut-x)"), cell("dp/dq=0, I=m dq/dt"), cell("H=pu"), ""},
            {OrbitClass::FSS_M, "FSS", cell("psi(p+mv,q-x)"), cell("dp/dq=0, dq/dt=0"), cell("H=e"), ""},
          }};
}

inline SummaryTable massless_table()
{
  using detail::cell;
  using detail::fixed;
  return {"massless systems",
          "(D_(v,x,t) psi)(p,q)",
          {
            {OrbitClass::BSF, "BSF", cell("psi(p-ft,q-v/omega-x)"), fixed("f=dp/dt, dq/dt=0", "f=dp/dq, dq/dt=0", "E3-b"),
             cell("H=-fq"), ""},
            {OrbitClass::SSF, "SSF", cell("psi(p-ft,q-x)"), fixed("f=dp/dt, dq/dt=0", "f=dp/dq, dq/dt=0", "E3-b"),
             cell("H=-fq"), ""},
            {OrbitClass::BFS_0, "BFS", cell("psi(e+Iv,tau-t)"), fixed("de/dt=0, dtau/dt=1", "de/dt=0, dtau/dt=0", "E3-b"),
             cell("H=e"), ""},
            {OrbitClass::FSS_0, "FSS", cell("psi"), cell("fixed point"), cell("-"),
             "added: the point orbit is absent from the printed table; the group acts trivially"},
          }};
}

/**
 * @brief Evaluates a symbolic affine/monomial expression such as "pu-fq".
 *
 * Terms are separated by + or -, each an optional decimal coefficient
 * followed by a product of symbols. Symbols are single letters except the
 * multi-letter names "tau" and "omega". A leading "H=" is ignored.
 */
inline double evaluate_symbolic(std::string_view expr, const std::map<std::string, double>& bindings)
{
  if (auto eq = expr.find('='); eq != std::string_view::npos) {
    expr = expr.substr(eq + 1);
  }
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < expr.size() && std::isspace(static_cast<unsigned char>(expr[pos]))) ++pos;
  };
  auto lookup = [&](const std::string& name) {
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw Error("unbound symbol '" + name + "' in expression '" + std::string(expr) + "'");
    }
    return it->second;
  };

  double total = 0.0;
  bool first = true;
  skip_ws();
  while (pos < expr.size()) {
    double sign = 1.0;
    if (expr[pos] == '+' || expr[pos] == '-') {
      sign = expr[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip_ws();
    } else if (!first) {
      throw Error("expected + or - in expression '" + std::string(expr) + "'");
    }
    double term = sign;
    bool any = false;
    if (pos < expr.size() && (std::isdigit(static_cast<unsigned char>(expr[pos])) || expr[pos] == '.')) {
      std::size_t end = pos;
      while (end < expr.size() && (std::isdigit(static_cast<unsigned char>(expr[end])) || expr[end] == '.')) ++end;
      term *= std::stod(std::string(expr.substr(pos, end - pos)));
      pos = end;
      any = true;
    }
    while (pos < expr.size() && (std::isalpha(static_cast<unsigned char>(expr[pos])) || expr[pos] == '*')) {
      if (expr[pos] == '*') {
        ++pos;
        continue;
      }
      std::string name(1, expr[pos]);
      for (std::string_view longname : {"omega", "tau"}) {
        if (expr.substr(pos, longname.size()) == longname) {
          name = std::string(longname);
        }
      }
      term *= lookup(name);
      pos += name.size();
      any = true;
    }
    if (!any) {
      throw Error("empty term in expression '" + std::string(expr) + "'");
    }
    total += term;
    first = false;
    skip_ws();
  }
  if (first) {
    throw Error("empty expression");
  }
  return total;
}

/// Symbol bindings for evaluating table formulas of an orbit at chart point z.
inline std::map<std::string, double> table_bindings(const Orbit& o, const ChartPoint& z)
{
  std::map<std::string, double> b{{"m", o.m}, {"f", o.f}, {"I", o.I}, {"u", o.u()},
                                  {"a", o.a()}, {"omega", o.omega()}, {"e", o.e}};
  const auto names = coordinate_names(z.kind);
  if (z.kind != ChartKind::POINT) {
    b[std::string(names[0])] = z.c[0];
    b[std::string(names[1])] = z.c[1];
  }
  return b;
}

} // namespace kinstatic
