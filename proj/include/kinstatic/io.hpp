#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "algebra.hpp"
#include "coadjoint.hpp"
#include "common.hpp"
#include "dynamics.hpp"
#include "group.hpp"
#include "tables.hpp"

namespace kinstatic::io {

using nlohmann::json;

/// Maps -0.0 to 0.0 so emitted numbers do not depend on the sign of zero.
inline double clean(double x) { return x == 0.0 ? 0.0 : x; }

// ---------------------------------------------------------------------------
// Bracket tables
// ---------------------------------------------------------------------------

inline json to_json(const BracketTable& tbl)
{
  json out;
  out["name"] = tbl.name();
  out["basis"] = tbl.basis_labels();
  json brackets = json::array();
  const auto& labels = tbl.basis_labels();
  for (std::size_t i = 0; i < tbl.dim(); ++i) {
    for (std::size_t j = i + 1; j < tbl.dim(); ++j) {
      json coeffs = json::object();
      for (std::size_t k = 0; k < tbl.dim(); ++k) {
        if (tbl(i, j, k) != 0.0) {
          coeffs[labels[k]] = tbl(i, j, k);
        }
      }
      if (!coeffs.empty()) {
        brackets.push_back({{"i", labels[i]}, {"j", labels[j]}, {"coeffs", coeffs}});
      }
    }
  }
  out["brackets"] = brackets;
  out["params"] = json::object();
  for (const auto& [k, v] : tbl.params()) {
    out["params"][k] = v;
  }
  if (!tbl.dimension_labels().empty()) {
    out["dimensions"] = tbl.dimension_labels();
  }
  return out;
}

inline BracketTable table_from_json(const json& j)
{
  try {
    AlgebraParams params;
    if (j.contains("params")) {
      for (const auto& [k, v] : j.at("params").items()) {
        params[k] = v.get<double>();
      }
    }
    BracketTable tbl(j.value("name", std::string("custom")), j.at("basis").get<std::vector<std::string>>(), params);
    for (const auto& br : j.at("brackets")) {
      const auto a = br.at("i").get<std::string>();
      const auto b = br.at("j").get<std::string>();
      for (const auto& [k, v] : br.at("coeffs").items()) {
        tbl.set(a, b, k, v.get<double>());
      }
    }
    return tbl;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed bracket table JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Group elements and dual vectors
// ---------------------------------------------------------------------------

namespace detail {

/// Reads numeric fields from a JSON object; missing keys stay at zero and
/// keys outside `allowed` are rejected.
template<typename Setter>
void read_fields(const json& j, const std::set<std::string>& allowed, const std::string& what, Setter&& set)
{
  if (!j.is_object()) {
    throw Error(what + " must be a JSON object");
  }
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) {
      throw Error("unexpected key '" + k + "' in " + what);
    }
    if (!v.is_number()) {
      throw Error("field '" + k + "' of " + what + " must be a number");
    }
    set(k, v.template get<double>());
  }
}

} // namespace detail

inline json to_json(const GroupElement& g) { return {{"v", clean(g.v)}, {"x", clean(g.x)}, {"t", clean(g.t)}}; }

inline json to_json(const ExtGroupElement& g)
{
  return {{"xi", clean(g.xi)}, {"zeta", clean(g.zeta)}, {"y", clean(g.y)},
          {"v", clean(g.g.v)}, {"x", clean(g.g.x)},     {"t", clean(g.g.t)}};
}

inline json to_json(const CocycleValue& c) { return {{"xi", clean(c.xi)}, {"zeta", clean(c.zeta)}, {"y", clean(c.y)}}; }

inline json to_json(const DualVector& mu)
{
  return {{"m", clean(mu.m)}, {"f", clean(mu.f)}, {"I", clean(mu.I)},
          {"k", clean(mu.k)}, {"p", clean(mu.p)}, {"e", clean(mu.e)}};
}

inline GroupElement group_element_from_json(const json& j)
{
  GroupElement g;
  detail::read_fields(j, {"v", "x", "t"}, "group element", [&](const std::string& k, double v) {
    if (k == "v") g.v = v;
    else if (k == "x") g.x = v;
    else g.t = v;
  });
  return g;
}

inline ExtGroupElement ext_group_element_from_json(const json& j)
{
  ExtGroupElement g;
  detail::read_fields(j, {"xi", "zeta", "y", "v", "x", "t"}, "extended group element",
                      [&](const std::string& k, double v) {
                        if (k == "xi") g.xi = v;
                        else if (k == "zeta") g.zeta = v;
                        else if (k == "y") g.y = v;
                        else if (k == "v") g.g.v = v;
                        else if (k == "x") g.g.x = v;
                        else g.g.t = v;
                      });
  return g;
}

inline DualVector dual_from_json(const json& j)
{
  DualVector mu;
  detail::read_fields(j, {"m", "f", "I", "k", "p", "e"}, "dual vector", [&](const std::string& k, double v) {
    if (k == "m") mu.m = v;
    else if (k == "f") mu.f = v;
    else if (k == "I") mu.I = v;
    else if (k == "k") mu.k = v;
    else if (k == "p") mu.p = v;
    else mu.e = v;
  });
  return mu;
}

/// {"class": "ABS", "invariants": {"m":1, ...}}
inline Orbit orbit_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("class") || !j.at("class").is_string()) {
    throw Error("orbit JSON needs a string field 'class'");
  }
  const OrbitClass cls = parse_orbit_class(j.at("class").get<std::string>());
  NamedValues record;
  if (j.contains("invariants")) {
    for (const auto& [k, v] : j.at("invariants").items()) {
      if (!v.is_number()) {
        throw Error("invariant '" + k + "' must be a number");
      }
      record.emplace_back(k, v.get<double>());
    }
  }
  return make_orbit(cls, record);
}

inline ChartPoint chart_point_from_json(ChartKind kind, const json& j)
{
  if (kind == ChartKind::POINT) {
    return ChartPoint::point();
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error("chart point must be a JSON array of two numbers");
  }
  return {kind, {j[0].get<double>(), j[1].get<double>()}};
}

inline json to_json(const ChartPoint& z)
{
  json out{{"kind", std::string(to_string(z.kind))}};
  if (z.kind != ChartKind::POINT) {
    const auto names = coordinate_names(z.kind);
    out["coords"] = {{std::string(names[0]), clean(z.c[0])}, {std::string(names[1]), clean(z.c[1])}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json named_object(const NamedValues& values)
{
  json out = json::object();
  for (const auto& [k, v] : values) {
    out[k] = clean(v);
  }
  return out;
}

inline json to_json(const KernelReport& k)
{
  json basis = json::array();
  for (const auto& b : k.basis) {
    basis.push_back({clean(b[0]), clean(b[1]), clean(b[2])});
  }
  return {{"dim", k.dim}, {"basis", basis}};
}

inline json orbit_report(const Orbit& o)
{
  return {{"class", std::string(to_string(o.cls))},
          {"invariants", named_object(o.invariants())},
          {"derived", named_object(o.derived())},
          {"chart_kind", std::string(to_string(o.chart_kind()))},
          {"orbit_dim", o.dim()},
          {"kernel", to_json(action_kernel(o))}};
}

inline json realization_report(const Realization& r)
{
  json out{{"class", std::string(to_string(r.orbit.cls))}, {"chart_kind", std::string(to_string(r.kind))}};
  json pb = json::object();
  if (r.chart_dim() == 2) {
    const auto names = coordinate_names(r.kind);
    for (int i = 0; i < 2; ++i) {
      pb["c" + std::to_string(i + 1)] = {{"coord", std::string(names[i])},
                                         {"self", 1.0},
                                         {"dv", clean(r.coeff[i][0])},
                                         {"dx", clean(r.coeff[i][1])},
                                         {"dt", clean(r.coeff[i][2])}};
    }
  }
  out["pullback"] = pb;
  out["kernel"] = to_json(action_kernel(r.orbit));
  return out;
}

inline json to_json(const TableCell& c)
{
  json out{{"text", c.text}};
  if (c.corrected()) {
    out["printed"] = c.printed;
    out["erratum"] = c.erratum;
  }
  return out;
}

inline json to_json(const SummaryTable& t)
{
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row{{"class", std::string(to_string(r.cls))},
             {"system", r.system},
             {"realization", to_json(r.realization)},
             {"motion", to_json(r.motion)},
             {"hamiltonian", to_json(r.hamiltonian)}};
    if (!r.note.empty()) {
      row["note"] = r.note;
    }
    rows.push_back(row);
  }
  return {{"title", t.title}, {"chart", t.chart_header}, {"rows", rows}};
}

} // namespace kinstatic::io
