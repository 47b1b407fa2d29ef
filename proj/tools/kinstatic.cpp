// kinstatic: command-line front end for the Static-group coadjoint orbit library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <kinstatic/kinstatic.hpp>

namespace {

using kinstatic::io::json;
using namespace kinstatic;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string num(double x) { return fmt::format("{}", io::clean(x)); }

std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json parse_json(const std::string& text, const std::string& what)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("malformed JSON for " + what + ": " + e.what());
  }
}

std::string read_stdin()
{
  return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
}

struct Options
{
  Config cfg;
  std::string format;
  std::string out_path;
  std::string config_path;
  std::optional<double> tol;
  std::optional<double> classify_tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;

  /// Applies the config file (explicit or ./kinstatic.toml) and then flags.
  void resolve()
  {
    if (!config_path.empty()) {
      load_config_file(config_path, cfg);
    } else if (std::filesystem::exists("kinstatic.toml")) {
      load_config_file("kinstatic.toml", cfg);
    }
    if (tol) cfg.tolerance = *tol;
    if (classify_tol) cfg.classify_tol = *classify_tol;
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (!format.empty()) {
      cfg.format = parse_output_format(format);
      cfg.format_set = true;
    }
    cfg.validate();
  }

  OutputFormat format_or(OutputFormat fallback) const { return cfg.format_set ? cfg.format : fallback; }
};

class Output
{
public:
  explicit Output(const std::string& path)
  {
    if (!path.empty()) {
      m_file.open(path);
      if (!m_file) {
        throw Error("cannot open output file " + path);
      }
    }
  }

  std::ostream& stream() { return m_file.is_open() ? m_file : std::cout; }

private:
  std::ofstream m_file;
};

// ---------------------------------------------------------------------------
// algebras
// ---------------------------------------------------------------------------

struct AlgebraArgs
{
  std::string sub;
  std::string name;
  double cvel = 1.0;
  double omega = 1.0;
};

int cmd_algebras(const AlgebraArgs& a, const Options& opt)
{
  Output out(opt.out_path);
  const AlgebraParams params{{"c_vel", a.cvel}, {"omega", a.omega}};
  const OutputFormat fmt = opt.format_or(OutputFormat::json);

  if (a.sub == "list") {
    if (fmt == OutputFormat::json) {
      out.stream() << json(registry_names()).dump(2) << "\n";
    } else {
      for (const auto& n : registry_names()) out.stream() << n << "\n";
    }
    return kExitOk;
  }
  if (a.sub == "dump") {
    if (a.name.empty()) throw Error("algebras dump needs --name");
    out.stream() << io::to_json(registry_get(a.name, params)).dump(2) << "\n";
    return kExitOk;
  }
  // check
  std::vector<std::string> names = a.name.empty() ? registry_names() : std::vector<std::string>{a.name};
  bool all_pass = true;
  json rows = json::array();
  for (const auto& n : names) {
    const auto rep = check_jacobi(registry_get(n, params), opt.cfg.tolerance);
    all_pass = all_pass && rep.pass;
    rows.push_back({{"name", n}, {"residual", rep.residual}, {"pass", rep.pass}});
  }
  if (fmt == OutputFormat::json) {
    out.stream() << json{{"tolerance", opt.cfg.tolerance}, {"tables", rows}, {"pass", all_pass}}.dump(2) << "\n";
  } else if (fmt == OutputFormat::csv) {
    out.stream() << "name,residual,pass\n";
    for (const auto& r : rows) {
      out.stream() << r["name"].get<std::string>() << "," << num(r["residual"].get<double>()) << ","
                   << (r["pass"].get<bool>() ? "true" : "false") << "\n";
    }
  } else {
    for (const auto& r : rows) {
      out.stream() << fmt::format("{:<5} {:<14} jacobi residual {}\n", r["pass"].get<bool>() ? "PASS" : "FAIL",
                                  r["name"].get<std::string>(), num(r["residual"].get<double>()));
    }
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// group
// ---------------------------------------------------------------------------

struct GroupArgs
{
  std::string sub;
  std::string g = "{}";
  std::string h = "{}";
  std::string g3 = "{}";
  std::string kind = "c";
  std::string delta;
};

int cmd_group(const GroupArgs& a, const Options& opt)
{
  Output out(opt.out_path);
  json result;
  if (a.sub == "multiply") {
    result = io::to_json(multiply(io::group_element_from_json(parse_json(a.g, "--g")),
                                  io::group_element_from_json(parse_json(a.h, "--h"))));
  } else if (a.sub == "ext-multiply") {
    result = io::to_json(ext_multiply(io::ext_group_element_from_json(parse_json(a.g, "--g")),
                                      io::ext_group_element_from_json(parse_json(a.h, "--h"))));
  } else if (a.sub == "ext-inverse") {
    result = io::to_json(ext_inverse(io::ext_group_element_from_json(parse_json(a.g, "--g"))));
  } else if (a.sub == "cocycle") {
    result = io::to_json(cocycle(parse_cocycle_kind(a.kind), io::group_element_from_json(parse_json(a.g, "--g")),
                                 io::group_element_from_json(parse_json(a.h, "--h"))));
  } else if (a.sub == "b") {
    result = io::to_json(b_map(io::group_element_from_json(parse_json(a.g, "--g"))));
  } else if (a.sub == "cocycle-identity") {
    result = io::to_json(verify_cocycle_identity(parse_cocycle_kind(a.kind),
                                                 io::group_element_from_json(parse_json(a.g, "--g")),
                                                 io::group_element_from_json(parse_json(a.h, "--h")),
                                                 io::group_element_from_json(parse_json(a.g3, "--g3"))));
  } else {
    // adjoint
    const json d = parse_json(a.delta.empty() ? read_stdin() : a.delta, "--delta");
    if (!d.is_array() || d.size() != 6) {
      throw Error("--delta must be an array of six numbers (xi, zeta, y, v, x, t)");
    }
    AlgebraVector v(6);
    for (int i = 0; i < 6; ++i) {
      if (!d[i].is_number()) throw Error("--delta entries must be numbers");
      v[i] = d[i].get<double>();
    }
    const AlgebraVector r = adjoint(io::group_element_from_json(parse_json(a.g, "--g")), v);
    result = json::array();
    for (int i = 0; i < 6; ++i) result.push_back(io::clean(r[i]));
  }
  out.stream() << result.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// classify, act, realize
// ---------------------------------------------------------------------------

DualVector read_mu(const std::string& flag)
{
  const std::string text = flag.empty() ? read_stdin() : flag;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error("no dual vector given (use --mu or stdin)");
  }
  return io::dual_from_json(parse_json(text, "dual vector"));
}

void print_key_values(std::ostream& os, const json& j, const std::string& prefix = "")
{
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      print_key_values(os, v, prefix + k + ".");
    } else {
      os << prefix << k << " = " << v.dump() << "\n";
    }
  }
}

void emit_report(std::ostream& os, const json& j, OutputFormat fmt)
{
  if (fmt == OutputFormat::table) {
    print_key_values(os, j);
  } else {
    os << j.dump(2) << "\n";
  }
}

int cmd_classify(const std::string& mu_text, const Options& opt)
{
  const DualVector mu = read_mu(mu_text);
  const Orbit o = classify(mu, opt.cfg.classify_tol);
  json report = io::orbit_report(o);
  report["chart_point"] = io::to_json(to_chart(o, mu));
  Output out(opt.out_path);
  emit_report(out.stream(), report, opt.format_or(OutputFormat::json));
  return kExitOk;
}

int cmd_act(const std::string& mu_text, const std::string& g_text, const Options& opt)
{
  const DualVector mu = read_mu(mu_text);
  const GroupElement g = io::group_element_from_json(parse_json(g_text, "--g"));
  const DualVector moved = coadjoint_act(g, mu);
  const Orbit o = classify(mu, opt.cfg.classify_tol);
  json report{{"g", io::to_json(g)},
              {"mu", io::to_json(mu)},
              {"result", io::to_json(moved)},
              {"class", std::string(to_string(o.cls))},
              {"chart_before", io::to_json(to_chart(o, mu))},
              {"chart_after", io::to_json(to_chart(o, moved))}};
  Output out(opt.out_path);
  emit_report(out.stream(), report, opt.format_or(OutputFormat::json));
  return kExitOk;
}

/// Orbit and initial chart point from either --mu or --orbit/--z.
std::pair<Orbit, ChartPoint> read_orbit_point(const std::string& mu_text, const std::string& orbit_text,
                                              const std::string& z_text, const Options& opt)
{
  if (!orbit_text.empty()) {
    const Orbit o = io::orbit_from_json(parse_json(orbit_text, "--orbit"));
    const ChartPoint z =
      z_text.empty() ? ChartPoint{o.chart_kind(), {0.0, 0.0}} : io::chart_point_from_json(o.chart_kind(), parse_json(z_text, "--z"));
    return {o, z};
  }
  const DualVector mu = read_mu(mu_text);
  const Orbit o = classify(mu, opt.cfg.classify_tol);
  return {o, to_chart(o, mu)};
}

int cmd_realize(const std::string& mu_text, const std::string& orbit_text, const Options& opt)
{
  const auto [o, z] = read_orbit_point(mu_text, orbit_text, "", opt);
  json report = io::realization_report(realize(o));
  if (o.dim() > 0) {
    json ham{{"alpha", io::clean(hamiltonian(o).alpha)},
             {"beta", io::clean(hamiltonian(o).beta)},
             {"gamma", io::clean(hamiltonian(o).gamma)}};
    report["hamiltonian"] = ham;
    json fields = json::object();
    for (Generator x : kGenerators) {
      const auto f = vector_field(o, x);
      fields[std::string(to_string(x))] = {io::clean(f[0]), io::clean(f[1])};
    }
    report["vector_fields"] = fields;
  }
  Output out(opt.out_path);
  emit_report(out.stream(), report, opt.format_or(OutputFormat::json));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

struct FlowArgs
{
  std::string mu;
  std::string orbit;
  std::string z;
  double t = 1.0;
  int steps = 10;
  std::string method = "exact";
};

int cmd_flow(const FlowArgs& a, const Options& opt)
{
  const auto [o, z0] = read_orbit_point(a.mu, a.orbit, a.z, opt);
  if (o.dim() == 0) {
    throw Error("flow is undefined on the point orbit FSS_0");
  }
  const auto traj = flow_trajectory(o, z0, a.t, a.steps, parse_flow_method(a.method));
  const AffineObservable ham = hamiltonian(o);
  const auto names = coordinate_names(o.chart_kind());

  Output out(opt.out_path);
  if (opt.format_or(OutputFormat::csv) == OutputFormat::json) {
    json rows = json::array();
    for (const auto& s : traj) {
      rows.push_back({{"t", io::clean(s.t)},
                      {std::string(names[0]), io::clean(s.z.c[0])},
                      {std::string(names[1]), io::clean(s.z.c[1])},
                      {"H", io::clean(ham(s.z))}});
    }
    out.stream() << json{{"class", std::string(to_string(o.cls))}, {"method", a.method}, {"trajectory", rows}}.dump(2)
                 << "\n";
  } else {
    out.stream() << "t," << names[0] << "," << names[1] << ",H\n";
    for (const auto& s : traj) {
      out.stream() << num(s.t) << "," << num(s.z.c[0]) << "," << num(s.z.c[1]) << "," << num(ham(s.z)) << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const Options& opt)
{
  const verify::Report rep = verify::run(suite, opt.cfg);
  Output out(opt.out_path);
  std::ostream& os = out.stream();

  if (opt.format_or(OutputFormat::table) == OutputFormat::json) {
    json checks = json::array();
    json failures = json::array();
    for (const auto& c : rep.checks) {
      json j{{"suite", c.suite}, {"name", c.name},           {"pass", c.pass},
             {"residual", c.residual}, {"threshold", c.threshold}, {"expected_failure", c.expected_failure}};
      if (!c.note.empty()) j["note"] = c.note;
      checks.push_back(j);
      if (!c.pass) failures.push_back(c.suite + "/" + c.name);
    }
    json cc = json::array();
    for (const auto& r : rep.central_charges) {
      cc.push_back({{"class", std::string(to_string(r.cls))},
                    {"brackets", {io::clean(r.brackets[0]), io::clean(r.brackets[1]), io::clean(r.brackets[2])}},
                    {"expected", {io::clean(r.expected[0]), io::clean(r.expected[1]), io::clean(r.expected[2])}}});
    }
    json errata = json::array();
    for (const auto& e : kinstatic::errata()) {
      errata.push_back({{"id", e.id}, {"printed", e.printed}, {"corrected", e.corrected}, {"reason", e.reason}});
    }
    os << json{{"suite", suite},          {"seed", opt.cfg.seed},   {"trials", opt.cfg.trials},
               {"checks", checks},        {"failures", failures},   {"central_charges", cc},
               {"errata", errata},        {"ok", rep.ok()}}
            .dump(2)
       << "\n";
  } else {
    for (const auto& c : rep.checks) {
      const char* status = c.expected_failure ? (c.pass ? "XFAIL" : "FAIL") : (c.pass ? "PASS" : "FAIL");
      os << fmt::format("{:<5} {:<9} {:<44} residual {} (<= {})", status, c.suite, c.name, num(c.residual),
                        num(c.threshold));
      if (!c.note.empty()) os << "  # " << c.note;
      os << "\n";
    }
    if (!rep.central_charges.empty()) {
      os << "\ncentral charges ({muK,muP}, {muK,muE}, {muP,muE}) vs (m, I, f):\n";
      for (const auto& r : rep.central_charges) {
        os << fmt::format("  {:<6} ({}, {}, {}) vs ({}, {}, {})\n", to_string(r.cls), num(r.brackets[0]),
                          num(r.brackets[1]), num(r.brackets[2]), num(r.expected[0]), num(r.expected[1]),
                          num(r.expected[2]));
      }
    }
    os << "\nerrata:\n";
    for (const auto& e : kinstatic::errata()) {
      os << "  " << e.id << ": printed \"" << e.printed << "\" -> \"" << e.corrected << "\" (" << e.reason << ")\n";
    }
    os << "conventions:\n";
    for (const auto& [id, text] : kinstatic::conventions()) {
      os << "  " << id << ": " << text << "\n";
    }
    std::size_t failed = 0;
    for (const auto& c : rep.checks) failed += c.pass ? 0 : 1;
    os << fmt::format("\n{} checks, {} failed, seed {}, trials {}\n", rep.checks.size(), failed, opt.cfg.seed,
                      opt.cfg.trials);
  }
  return rep.ok() ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

std::string marked(const TableCell& c) { return c.corrected() ? c.text + " [" + c.erratum + "]" : c.text; }

int cmd_tables(const Options& opt)
{
  const std::vector<SummaryTable> tables{massive_table(), massless_table()};
  Output out(opt.out_path);
  std::ostream& os = out.stream();
  const OutputFormat fmt = opt.format_or(OutputFormat::table);

  if (fmt == OutputFormat::json) {
    json errata = json::array();
    for (const auto& e : kinstatic::errata()) {
      errata.push_back({{"id", e.id}, {"printed", e.printed}, {"corrected", e.corrected}});
    }
    os << json{{"massive", io::to_json(tables[0])}, {"massless", io::to_json(tables[1])}, {"errata", errata}}.dump(2)
       << "\n";
  } else if (fmt == OutputFormat::csv) {
    os << "table,class,system,realization,motion,hamiltonian,erratum,printed,note\n";
    for (const auto& t : tables) {
      for (const auto& r : t.rows) {
        std::string erratum;
        std::string printed;
        for (const TableCell* c : {&r.realization, &r.motion, &r.hamiltonian}) {
          if (c->corrected()) {
            erratum = c->erratum;
            printed = c->printed;
          }
        }
        os << csv_field(t.title) << "," << to_string(r.cls) << "," << r.system << "," << csv_field(r.realization.text)
           << "," << csv_field(r.motion.text) << "," << csv_field(r.hamiltonian.text) << "," << erratum << ","
           << csv_field(printed) << "," << csv_field(r.note) << "\n";
      }
    }
  } else {
    for (const auto& t : tables) {
      os << t.title << "\n";
      os << fmt::format("  {:<7} {:<7} {:<26} {:<30} {}\n", "system", "class", t.chart_header, "motion equations",
                        "hamiltonian");
      for (const auto& r : t.rows) {
        os << fmt::format("  {:<7} {:<7} {:<26} {:<30} {}", r.system, to_string(r.cls), marked(r.realization),
                          marked(r.motion), marked(r.hamiltonian));
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << "\n";
      }
      os << "\n";
    }
    os << "corrected cells:\n";
    for (const auto& t : tables) {
      for (const auto& r : t.rows) {
        for (const TableCell* c : {&r.realization, &r.motion, &r.hamiltonian}) {
          if (c->corrected()) {
            os << "  [" << c->erratum << "] " << r.system << " (" << to_string(r.cls) << "): printed \"" << c->printed
               << "\"\n";
          }
        }
      }
    }
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"kinstatic: coadjoint orbits and symplectic realizations of the 1D Static kinematical group"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--format", opt.format, "Output format: json, csv or table");
  app.add_option("--tol", opt.tol, "Comparison tolerance (default 1e-9)");
  app.add_option("--classify-tol", opt.classify_tol, "Zero tolerance for orbit classification (default 1e-12)");
  app.add_option("--seed", opt.seed, "Seed for randomized suites (default 42)");
  app.add_option("--trials", opt.trials, "Trials per randomized check (default 1000)");
  app.add_option("--out", opt.out_path, "Write data to this file instead of stdout");
  app.add_option("--config", opt.config_path, "key=value config file (default ./kinstatic.toml if present)");

  AlgebraArgs alg;
  auto* algebras = app.add_subcommand("algebras", "List, dump or Jacobi-check the algebra registry");
  algebras->add_option("action", alg.sub, "list | dump | check")->required()->check(CLI::IsMember({"list", "dump", "check"}));
  algebras->add_option("--name", alg.name, "Algebra identifier");
  algebras->add_option("--cvel", alg.cvel, "Velocity constant c (default 1)");
  algebras->add_option("--omega", alg.omega, "Frequency constant omega (default 1)");

  GroupArgs grp;
  auto* group = app.add_subcommand("group", "Group law, cocycles and adjoint action");
  group->set_help_flag("--help", "Print this help message and exit");
  group->add_option("action", grp.sub, "multiply | ext-multiply | ext-inverse | cocycle | b | cocycle-identity | adjoint")
    ->required()
    ->check(CLI::IsMember({"multiply", "ext-multiply", "ext-inverse", "cocycle", "b", "cocycle-identity", "adjoint"}));
  group->add_option("--g", grp.g, "Group element JSON");
  group->add_option("--h", grp.h, "Second group element JSON");
  group->add_option("--g3", grp.g3, "Third group element JSON (cocycle-identity)");
  group->add_option("--kind", grp.kind, "Cocycle kind: c1, c2, c");
  group->add_option("--delta", grp.delta, "Algebra vector [xi,zeta,y,v,x,t] (adjoint)");

  std::string mu_text;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a dual vector into its orbit");
  classify_cmd->add_option("--mu", mu_text, "Dual vector JSON (default: read stdin)");

  std::string act_g = "{}";
  auto* act = app.add_subcommand("act", "Coadjoint action of a group element on a dual vector");
  act->add_option("--mu", mu_text, "Dual vector JSON (default: read stdin)");
  act->add_option("--g", act_g, "Group element JSON");

  std::string orbit_text;
  auto* realize_cmd = app.add_subcommand("realize", "Realization report of an orbit");
  realize_cmd->add_option("--mu", mu_text, "Dual vector JSON (default: read stdin)");
  realize_cmd->add_option("--orbit", orbit_text, "Orbit JSON {\"class\":..., \"invariants\":{...}}");

  FlowArgs fl;
  auto* flow_cmd = app.add_subcommand("flow", "Hamiltonian flow trajectory");
  flow_cmd->add_option("--mu", fl.mu, "Initial dual vector JSON (default: read stdin)");
  flow_cmd->add_option("--orbit", fl.orbit, "Orbit JSON, used with --z instead of --mu");
  flow_cmd->add_option("--z", fl.z, "Initial chart point [c1, c2]");
  flow_cmd->add_option("--t", fl.t, "Duration (default 1)");
  flow_cmd->add_option("--steps", fl.steps, "Number of steps (default 10)");
  flow_cmd->add_option("--method", fl.method, "exact | euler | rk4")->check(CLI::IsMember({"exact", "euler", "rk4"}));

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run the property verification suites");
  verify_cmd->add_option("--suite", suite, "algebra | group | cocycle | coadjoint | dynamics | all")
    ->check(CLI::IsMember({"algebra", "group", "cocycle", "coadjoint", "dynamics", "all"}));

  auto* tables_cmd = app.add_subcommand("tables", "Summary tables of the orbit classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    opt.resolve();
    if (algebras->parsed()) return cmd_algebras(alg, opt);
    if (group->parsed()) return cmd_group(grp, opt);
    if (classify_cmd->parsed()) return cmd_classify(mu_text, opt);
    if (act->parsed()) return cmd_act(mu_text, act_g, opt);
    if (realize_cmd->parsed()) return cmd_realize(mu_text, orbit_text, opt);
    if (flow_cmd->parsed()) return cmd_flow(fl, opt);
    if (verify_cmd->parsed()) return cmd_verify(suite, opt);
    if (tables_cmd->parsed()) return cmd_tables(opt);
  } catch (const std::exception& e) {
    std::cerr << "kinstatic: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
