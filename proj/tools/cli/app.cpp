#include "app.hpp"

#include "report.hpp"
#include "suites.hpp"

#include "hyplap/catalog.hpp"
#include "hyplap/csv.hpp"
#include "hyplap/errors.hpp"
#include "hyplap/halfspace.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/quadrature.hpp"
#include "hyplap/regularity.hpp"
#include "hyplap/solver.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifndef HYPLAP_VERSION
#define HYPLAP_VERSION "unknown"
#endif

namespace hyplap::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised after a condition report has been printed.
struct ConditionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_vector(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed " + what + " '" + text + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError("malformed " + what + " '" + text + "'");
    out.push_back(v);
  }
  if (out.empty() || (!text.empty() && text.back() == ',')) throw UsageError("malformed " + what + " '" + text + "'");
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

Vector parse_point(const std::string& text, const std::string& what, int n) {
  Vector v = to_vector(parse_vector(text, what));
  if (n > 0 && v.size() != n) {
    throw UsageError(what + " '" + text + "' has " + std::to_string(v.size()) + " coordinates, expected " +
                     std::to_string(n));
  }
  return v;
}

/// Point construction with domain errors reported as usage errors.
template <class P>
P checked(const Vector& v, const std::string& what) {
  try {
    return P(v);
  } catch (const DomainError& e) {
    throw UsageError(what + ": " + e.what());
  }
}

CatalogParams parse_params(const std::vector<std::string>& items) {
  CatalogParams out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + item + "' is not key=value");
    out[item.substr(0, eq)] = parse_vector(item.substr(eq + 1), "parameter value").at(0);
  }
  return out;
}

PoissonKernelKind parse_kernel(const std::string& s) {
  if (s == "hyperbolic") return PoissonKernelKind::hyperbolic;
  if (s == "euclidean") return PoissonKernelKind::euclidean;
  throw UsageError("unknown kernel '" + s + "'");
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    atomic_write(out_path, content);
  }
}

Json base_report(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["tool"] = "hyplap";
  j["version"] = HYPLAP_VERSION;
  j["command"] = command;
  return j;
}

// ---------------------------------------------------------------- kernel

struct KernelArgs {
  bool ball = false;
  bool green = false;
  bool halfspace = false;
  int n = 0;
  std::string x;
  std::string t;
  std::string y;
  double height = 0.0;
  std::string kernel = "hyperbolic";
};

int cmd_kernel(const KernelArgs& a, std::ostream& out) {
  const int picks = int(a.ball) + int(a.green) + int(a.halfspace);
  if (picks != 1) throw UsageError("choose exactly one of --ball, --green, --halfspace");
  if (a.x.empty()) throw UsageError("--x is required");
  std::ostringstream os;
  CsvWriter w(os, {"quantity", "value"});
  auto row = [&w](const std::string& name, double v) { w.field(name).field(v).end_row(); };

  if (a.halfspace) {
    if (a.height <= 0.0) throw UsageError("--height must be positive");
    const Vector x = parse_point(a.x, "--x", a.n > 0 ? a.n - 1 : 0);
    const auto kind = parse_kernel(a.kernel);
    row("P", poisson_kernel_halfspace(x, a.height, kind));
    for (int i = 0; i < x.size(); ++i) row("dP/dx_" + std::to_string(i + 1), poisson_kernel_halfspace_dx(x, a.height, i, kind));
    row("dP/dy", poisson_kernel_halfspace_dy(x, a.height, kind));
    out << os.str();
    return kExitOk;
  }

  const Vector xv = parse_point(a.x, "--x", a.n);
  const int n = static_cast<int>(xv.size());
  const BallPoint x = checked<BallPoint>(xv, "--x");
  if (a.ball) {
    if (a.t.empty()) throw UsageError("--t is required with --ball");
    const Vector tv = parse_point(a.t, "--t", n);
    const SpherePoint t = checked<SpherePoint>(tv, "--t");
    const auto kind = parse_kernel(a.kernel);
    const bool hyp = kind == PoissonKernelKind::hyperbolic;
    row(hyp ? "P_h" : "P", hyp ? poisson_kernel_ball(x, t) : euclidean_poisson_kernel_ball(x, t));
    const Vector g = hyp ? poisson_kernel_ball_gradient(x, t) : euclidean_poisson_kernel_ball_gradient(x, t);
    for (int i = 0; i < n; ++i) row(std::string(hyp ? "dP_h" : "dP") + "/dx_" + std::to_string(i + 1), g(i));
  } else {
    if (a.y.empty()) throw UsageError("--y is required with --green");
    const Vector yv = parse_point(a.y, "--y", n);
    const BallPoint y = checked<BallPoint>(yv, "--y");
    if ((x.v() - y.v()).norm() == 0.0) throw UsageError("--x and --y coincide (Green function singularity)");
    row("g(|T_y x|)", green_radial(n, pseudo_hyperbolic_distance(x.v(), y.v())));
    row("G_h", green_function(x, y));
    const Vector g = green_gradient(x, y);
    for (int i = 0; i < n; ++i) row("dG_h/dx_" + std::to_string(i + 1), g(i));
  }
  out << os.str();
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string config;
  int n = 3;
  std::string boundary = "constant";
  std::vector<std::string> bparams;
  std::string source;
  std::vector<std::string> sparams;
  std::vector<std::string> atoms;
  int manufactured_degree = -1;
  std::vector<std::string> points;
  std::string condition = "intCondMu";
  std::uint64_t seed = 1;
  std::string out;
};

/// Resolved solve configuration; every name is checked before any quadrature runs.
struct SolvePlan {
  int n = 3;
  BoundaryData phi;
  Source source;
  std::optional<Polynomial> exact;
  std::vector<Vector> points;
  ConditionTag condition = ConditionTag::int_cond_mu;
};

void load_solve_config(SolveArgs& a) {
  std::ifstream f(a.config);
  if (!f) throw UsageError("cannot read config '" + a.config + "'");
  Json j;
  try {
    j = Json::parse(f);
  } catch (const std::exception& e) {
    throw UsageError("config '" + a.config + "': " + e.what());
  }
  if (!j.contains("schema") || j["schema"] != 1) throw UsageError("config must declare \"schema\": 1");
  static const std::vector<std::string> known{"schema", "n", "boundary", "source", "atoms", "points",
                                              "condition", "seed", "manufactured_degree"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw UsageError("unknown config key '" + it.key() + "'");
    }
  }
  auto kv = [](const Json& params) {
    std::vector<std::string> out;
    for (auto it = params.begin(); it != params.end(); ++it) {
      out.push_back(it.key() + "=" + csv_number(it.value().get<double>()));
    }
    return out;
  };
  auto join = [](const Json& arr) {
    std::string s;
    for (const auto& v : arr) s += (s.empty() ? "" : ",") + csv_number(v.get<double>());
    return s;
  };
  try {
    if (j.contains("n")) a.n = j["n"].get<int>();
    if (j.contains("seed")) a.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("condition")) a.condition = j["condition"].get<std::string>();
    if (j.contains("manufactured_degree")) a.manufactured_degree = j["manufactured_degree"].get<int>();
    if (j.contains("boundary")) {
      a.boundary = j["boundary"].at("name").get<std::string>();
      if (j["boundary"].contains("params")) a.bparams = kv(j["boundary"]["params"]);
    }
    if (j.contains("source")) {
      a.source = j["source"].at("name").get<std::string>();
      if (j["source"].contains("params")) a.sparams = kv(j["source"]["params"]);
    }
    if (j.contains("atoms")) {
      for (const auto& atom : j["atoms"]) {
        a.atoms.push_back(join(atom.at("point")) + ":" + csv_number(atom.at("weight").get<double>()));
      }
    }
    if (j.contains("points")) {
      for (const auto& p : j["points"]) a.points.push_back(join(p));
    }
  } catch (const Json::exception& e) {
    throw UsageError("config '" + a.config + "': " + e.what());
  }
}

SolvePlan plan_solve(SolveArgs a) {
  if (!a.config.empty()) load_solve_config(a);
  SolvePlan plan;
  plan.n = a.n;
  if (a.n < 2 || a.n > 12) throw UsageError("-n must be in 2..12");
  try {
    plan.condition = condition_tag_from_string(a.condition);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  try {
    if (a.manufactured_degree >= 0) {
      if (a.boundary != "constant" || !a.bparams.empty() || !a.source.empty() || !a.atoms.empty()) {
        throw UsageError("--manufactured-degree replaces the boundary and source selections");
      }
      Rng rng(a.seed);
      Polynomial u0 = Polynomial::random(a.n, a.manufactured_degree, rng);
      u0.add_term(Polynomial::Exponents(static_cast<std::size_t>(a.n), 0), 4.0);
      plan.phi = boundary_polynomial(u0);
      plan.source = source_manufactured(u0);
      plan.exact = u0;
    } else {
      plan.phi = boundary_from_catalog(a.boundary, a.n, parse_params(a.bparams));
      if (!a.source.empty() && !a.atoms.empty()) throw UsageError("--source and --atom are exclusive");
      if (!a.source.empty()) plan.source = source_from_catalog(a.source, a.n, parse_params(a.sparams));
      if (!a.atoms.empty()) {
        std::vector<Atom> atoms;
        for (const auto& text : a.atoms) {
          const auto colon = text.rfind(':');
          if (colon == std::string::npos) throw UsageError("atom '" + text + "' is not x1,...,xn:weight");
          const Vector p = parse_point(text.substr(0, colon), "atom point", a.n);
          const double w = parse_vector(text.substr(colon + 1), "atom weight").at(0);
          atoms.push_back(Atom{p, w});
        }
        plan.source = DiscreteMeasure(std::move(atoms));
      }
    }
    if (a.points.empty()) {
      for (double r : {0.0, 0.25, 0.5, 0.75, 0.9}) plan.points.push_back(r * unit_vector(a.n, a.n - 1));
    }
    for (const auto& p : a.points) {
      const Vector v = parse_point(p, "--point", a.n);
      (void)BallPoint(v);
      plan.points.push_back(v);
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return plan;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const SolvePlan plan = plan_solve(args);
  if (const auto* psi = std::get_if<SourceDensity>(&plan.source)) {
    ConditionParams cp;
    cp.seed = args.seed;
    const ConditionReport rep = check_condition(*psi, plan.condition, cp);
    if (!rep.pass) {
      err << to_json(rep) << "\n";
      throw ConditionFailure("source '" + psi->name + "' fails " + to_string(plan.condition));
    }
  }
  const SolutionField field(plan.phi, plan.source);
  std::vector<std::string> header;
  for (int k = 0; k < plan.n; ++k) header.push_back("x" + std::to_string(k + 1));
  for (const char* h : {"u", "Phi", "Psi", "residual"}) header.emplace_back(h);
  if (plan.exact) {
    for (const char* h : {"exact", "abs_error", "tolerance"}) header.emplace_back(h);
  }
  std::ostringstream os;
  CsvWriter w(os, header);
  for (const auto& p : plan.points) {
    const BallPoint x(p);
    const SolutionValue v = field.evaluate(x);
    for (int k = 0; k < plan.n; ++k) w.field(p(k));
    w.field(v.u).field(v.poisson).field(v.green).field(field.residual(x));
    if (plan.exact) {
      const double e = (*plan.exact)(p);
      w.field(e).field(std::abs(v.u - e)).field(1e-3 * std::max(1.0, std::abs(e)));
    }
    w.end_row();
  }
  emit(os.str(), args.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  int n = 0;
  std::uint64_t seed = 1;
  std::vector<double> alphas;
  bool negative_control = false;
  std::string format = "json";
  std::string out;
  bool timing = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.suite != "all" && !is_suite(a.suite)) throw UsageError("unknown suite '" + a.suite + "'");
  if (a.format != "json" && a.format != "csv") throw UsageError("--format must be json or csv");
  if (a.n != 0 && (a.n < 2 || a.n > 8)) throw UsageError("-n must be in 2..8");
  for (double al : a.alphas) {
    if (!(al > 0.0 && al <= 1.0)) throw UsageError("--alpha must lie in (0, 1]");
  }
  VerifyConfig cfg;
  cfg.suite = a.suite;
  if (a.n != 0) cfg.n = a.n;
  cfg.seed = a.seed;
  cfg.alphas = a.alphas;
  cfg.negative_control = a.negative_control;

  std::vector<SuiteResult> results;
  Json timing = Json::object();
  const std::vector<std::string> names = a.suite == "all" ? suite_names() : std::vector<std::string>{a.suite};
  VerifyConfig run_cfg = cfg;
  if (a.suite == "all") run_cfg.negative_control = true;
  for (const auto& name : names) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      results.push_back(run_suite(name, run_cfg));
    } catch (const std::exception& e) {
      throw IntegrationError("suite " + name + ": " + e.what());
    }
    timing[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  bool pass = true;
  for (const auto& r : results) pass = pass && r.pass();

  std::string content;
  if (a.format == "csv") {
    std::ostringstream os;
    write_scans_csv(os, results);
    content = os.str();
  } else {
    Json j = base_report("verify");
    Json c;
    c["suite"] = a.suite;
    c["n"] = cfg.n ? Json(*cfg.n) : Json(nullptr);
    c["seed"] = cfg.seed;
    Json al = Json::array();
    for (double v : cfg.alphas.empty() ? std::vector<double>{0.5, 1.0} : cfg.alphas) al.push_back(v);
    c["alpha"] = al;
    c["negative_control"] = run_cfg.negative_control;
    j["config"] = c;
    Json suites = Json::array();
    for (const auto& r : results) suites.push_back(suite_to_json(r));
    j["suites"] = suites;
    j["pass"] = pass;
    if (a.timing) j["timing_seconds"] = timing;
    content = j.dump(2) + "\n";
  }
  emit(content, a.out, out);
  return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  std::string name;
  int n = 3;
  double alpha = 1.0;
  double m = -1.0;
  double s = -1.0;
  double delta = 0.5;
  int k = -1;
  int jmin = -1;
  int jmax = -1;
  int level = 16;
  std::string kernel = "hyperbolic";
  std::string format = "csv";
  std::string expect;
  std::string out;
};

const std::vector<std::string>& scan_names() {
  static const std::vector<std::string> names{"holder", "I_alpha", "I_omega", "A", "B", "I_m", "green-gradient",
                                              "holder-green", "halfspace-normal", "I_s", "J_delta"};
  return names;
}

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  const auto& names = scan_names();
  if (std::find(names.begin(), names.end(), a.name) == names.end()) throw UsageError("unknown scan '" + a.name + "'");
  if (a.format != "json" && a.format != "csv") throw UsageError("--format must be json or csv");
  if (!a.expect.empty() && a.expect != "bounded" && a.expect != "unbounded" && a.expect != "vanishes") {
    throw UsageError("--expect must be bounded, unbounded or vanishes");
  }
  if (a.n < 2 || a.n > 8) throw UsageError("-n must be in 2..8");
  const int n = a.n;
  const auto kind = parse_kernel(a.kernel);
  const bool half = a.name == "halfspace-normal" || a.name == "I_s" || a.name == "J_delta";
  const int jmin = a.jmin >= 0 ? a.jmin : (half ? 0 : 1);
  const int jmax = a.jmax >= 0 ? a.jmax : (half ? 14 : 12);
  if (jmax <= jmin || jmax > 40) throw UsageError("need jmin < jmax <= 40");

  BoundScan scan;
  try {
    if (half) {
      const auto ys = geometric_y_grid(jmin, jmax);
      if (a.name == "halfspace-normal") {
        HalfSpaceOptions opts;
        opts.kernel = kind;
        scan = normal_derivative_scan(halfspace_bump(n, 1.0, Vector::Zero(n - 1)), Vector::Zero(n - 1), ys, opts);
      } else if (a.name == "I_s") {
        scan = integral_I_s_alpha_scan(a.s > 0 ? a.s : n + 0.5, a.alpha, n, ys, std::max(a.level, 24));
      } else {
        scan = integral_J_delta_scan(a.delta, n, ys, std::max(a.level, 24));
      }
    } else {
      const auto rs = geometric_r_grid(jmin, jmax);
      const SpherePoint pole(unit_vector(n, n - 1));
      if (a.name == "holder") {
        HolderScanOptions opts;
        opts.poisson.kernel = kind;
        scan = holder_radial_scan(boundary_holder_spike(n, a.alpha, pole.v()), a.alpha, pole, rs, opts);
      } else if (a.name == "I_alpha") {
        scan = integral_I_alpha_scan(a.alpha, n, rs, a.level);
      } else if (a.name == "I_omega") {
        const double al = a.alpha;
        scan = integral_I_omega_scan([al](double t) { return std::pow(t, al); }, n, rs, a.level);
      } else if (a.name == "A") {
        scan = integral_A_scan(n, rs, a.level);
      } else if (a.name == "B") {
        scan = integral_B_scan(n, rs, a.level);
      } else if (a.name == "I_m") {
        scan = integral_I_m_scan(a.m >= 0 ? a.m : n - 1.0, n, rs, a.level);
      } else if (a.name == "green-gradient") {
        scan = green_gradient_scan(source_defect(n, 1.0), rs, a.k >= 0 ? a.k : n - 1);
      } else {
        scan = holder_radial_green(source_defect_power(n, 3.0), a.alpha, pole, rs).scan;
      }
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  bool ok = true;
  if (a.expect == "bounded") ok = scan.bounded;
  if (a.expect == "unbounded") ok = !scan.bounded;
  if (a.expect == "vanishes") ok = scan_vanishes(scan);

  std::string content;
  if (a.format == "csv") {
    std::ostringstream os;
    write_scan_csv(os, scan);
    content = os.str();
  } else {
    Json j = base_report("scan");
    Json c;
    c["scan"] = a.name;
    c["n"] = n;
    c["alpha"] = a.alpha;
    c["kernel"] = a.kernel;
    c["jmin"] = jmin;
    c["jmax"] = jmax;
    c["level"] = a.level;
    j["config"] = c;
    j["result"] = scan_to_json(scan);
    j["vanishes"] = scan_vanishes(scan);
    if (!a.expect.empty()) j["expect"] = a.expect;
    j["pass"] = ok;
    content = j.dump(2) + "\n";
  }
  emit(content, a.out, out);
  return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- rules

struct RulesArgs {
  std::string cache_dir;
  std::string domain = "sphere";
  int n = 3;
  int level = 16;
  double r_max = 0.9;
  std::string name;
};

fs::path cache_dir(const RulesArgs& a) {
  if (!a.cache_dir.empty()) return a.cache_dir;
  if (const char* env = std::getenv("HYPLAP_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "hyplap";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "hyplap";
  throw UsageError("no cache directory: set HYPLAP_CACHE_DIR");
}

std::string rule_file_name(RuleDomain d, int n, int level, double r_max) {
  std::string name = to_string(d) + "-n" + std::to_string(n) + "-l" + std::to_string(level);
  if (d == RuleDomain::ball_tau) name += "-r" + csv_number(r_max);
  return name + ".rule";
}

std::vector<fs::path> cached_rules(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".rule") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuadratureRule load_rule(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw UsageError("cannot read rule file " + p.string());
  return read_rule(f);
}

int cmd_rules(const std::string& action, const RulesArgs& a, std::ostream& out) {
  const fs::path dir = cache_dir(a);
  if (action == "build") {
    RuleDomain d{};
    try {
      d = rule_domain_from_string(a.domain);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    if (d == RuleDomain::halfspace_slab) throw UsageError("halfspace-slab rules are built per integrand and not cached");
    if (a.n < 2 || a.level < 1) throw UsageError("need -n >= 2 and --level >= 1");
    if (d == RuleDomain::ball_tau && !(a.r_max > 0.0 && a.r_max < 1.0)) throw UsageError("--r-max must lie in (0, 1)");
    fs::create_directories(dir);
    const fs::path path = dir / rule_file_name(d, a.n, a.level, a.r_max);
    std::string status = "cached";
    std::size_t nodes = 0;
    bool rebuild = !fs::exists(path);
    if (!rebuild) {
      try {
        nodes = load_rule(path).size();
      } catch (const std::exception&) {
        rebuild = true;
        status = "rebuilt";
      }
    }
    if (rebuild) {
      const QuadratureRule rule = d == RuleDomain::sphere ? sphere_rule(a.n, a.level)
                                                          : ball_tau_rule(a.n, a.level, a.level, a.r_max);
      std::ostringstream os;
      write_rule(os, rule);
      atomic_write(path.string(), os.str());
      nodes = rule.size();
      if (status == "cached") status = "built";
    }
    CsvWriter w(out, {"path", "nodes", "status"});
    w.field(path.string()).field(static_cast<long long>(nodes)).field(status).end_row();
    return kExitOk;
  }
  if (action == "list") {
    CsvWriter w(out, {"file", "domain", "dim", "level", "nodes"});
    for (const auto& p : cached_rules(dir)) {
      try {
        const QuadratureRule r = load_rule(p);
        w.field(p.filename().string()).field(to_string(r.domain)).field(static_cast<long long>(r.dim));
        w.field(static_cast<long long>(r.level)).field(static_cast<long long>(r.size())).end_row();
      } catch (const std::exception&) {
        w.field(p.filename().string()).field("unreadable").field(0LL).field(0LL).field(0LL).end_row();
      }
    }
    return kExitOk;
  }
  if (action == "show") {
    if (a.name.empty()) throw UsageError("rules show needs a file name");
    fs::path p = a.name;
    if (!fs::exists(p)) p = dir / a.name;
    if (!fs::exists(p)) throw UsageError("no cached rule '" + a.name + "'");
    const QuadratureRule r = load_rule(p);
    CsvWriter w(out, {"quantity", "value"});
    w.field("domain").field(to_string(r.domain)).end_row();
    w.field("dim").field(static_cast<long long>(r.dim)).end_row();
    w.field("level").field(static_cast<long long>(r.level)).end_row();
    w.field("nodes").field(static_cast<long long>(r.size())).end_row();
    w.field("total_weight").field(r.total_weight()).end_row();
    return kExitOk;
  }
  // clear
  std::size_t removed = 0;
  for (const auto& p : cached_rules(dir)) removed += fs::remove(p) ? 1 : 0;
  out << "removed " << removed << " rule file(s) from " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic potential theory on the unit ball and upper half-space", "hyplap"};
  app.set_version_flag("--version", HYPLAP_VERSION);
  app.require_subcommand(1);

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "Evaluate Poisson and Green kernels with gradients");
  kernel->add_flag("--ball", ka.ball, "Poisson kernel of the ball at (--x, --t)");
  kernel->add_flag("--green", ka.green, "Green function of the ball at (--x, --y)");
  kernel->add_flag("--halfspace", ka.halfspace, "half-space Poisson kernel at (--x, --height)");
  kernel->add_option("-n", ka.n, "dimension (checked against the points)");
  kernel->add_option("--x", ka.x, "evaluation point, comma separated");
  kernel->add_option("--t", ka.t, "boundary point on the sphere");
  kernel->add_option("--y", ka.y, "second ball point (Green function pole)");
  kernel->add_option("--height", ka.height, "half-space height y > 0");
  kernel->add_option("--kernel", ka.kernel, "hyperbolic or euclidean");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve the Dirichlet problem u = P_h[phi] - G_h[psi]");
  solve->add_option("--config", sa.config, "JSON configuration (schema 1)");
  solve->add_option("-n", sa.n, "dimension");
  solve->add_option("--boundary", sa.boundary, "boundary data: constant, linear, holder-spike, zonal-bump");
  solve->add_option("--bparam", sa.bparams, "boundary parameter key=value")->allow_extra_args(false);
  solve->add_option("--source", sa.source, "source density: defect, defect-power, unit");
  solve->add_option("--sparam", sa.sparams, "source parameter key=value")->allow_extra_args(false);
  solve->add_option("--atom", sa.atoms, "point mass x1,...,xn:weight")->allow_extra_args(false);
  solve->add_option("--manufactured-degree", sa.manufactured_degree, "manufactured polynomial solution of this degree");
  solve->add_option("--point", sa.points, "evaluation point")->allow_extra_args(false);
  solve->add_option("--condition", sa.condition, "condition checked on density sources (h3, h3-1, h4, intCondMu)");
  solve->add_option("--seed", sa.seed, "seed for sampling");
  solve->add_option("--out", sa.out, "output CSV path (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit a report");
  verify->add_option("suite", va.suite, "mobius, kernels, dirichlet, holder, green-gradient, riesz, halfspace, all")
      ->required();
  verify->add_option("-n", va.n, "dimension (default: per suite)");
  verify->add_option("--seed", va.seed, "seed for sampled checks");
  verify->add_option("--alpha", va.alphas, "Hoelder exponents")->allow_extra_args(false);
  verify->add_flag("--negative-control", va.negative_control, "include the negative-control scans");
  verify->add_option("--format", va.format, "json or csv");
  verify->add_option("--out", va.out, "output path (default stdout)");
  verify->add_flag("--timing", va.timing, "add per-suite wall-clock seconds to the JSON report");

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "Run one boundary scan");
  scan->add_option("name", sc.name,
                   "holder, I_alpha, I_omega, A, B, I_m, green-gradient, holder-green, halfspace-normal, I_s, J_delta")
      ->required();
  scan->add_option("-n", sc.n, "dimension");
  scan->add_option("--alpha", sc.alpha, "Hoelder exponent");
  scan->add_option("--m", sc.m, "exponent of I_m (default n-1)");
  scan->add_option("--s", sc.s, "exponent of I_s (default n+1/2)");
  scan->add_option("--delta", sc.delta, "cut radius of J_delta");
  scan->add_option("--k", sc.k, "coordinate of the Green gradient, 0-based (default n-1)");
  scan->add_option("--jmin", sc.jmin, "first grid index");
  scan->add_option("--jmax", sc.jmax, "last grid index");
  scan->add_option("--level", sc.level, "quadrature level");
  scan->add_option("--kernel", sc.kernel, "hyperbolic or euclidean");
  scan->add_option("--format", sc.format, "csv or json");
  scan->add_option("--expect", sc.expect, "bounded, unbounded or vanishes; exit 1 on mismatch");
  scan->add_option("--out", sc.out, "output path (default stdout)");

  RulesArgs ra;
  auto* rules = app.add_subcommand("rules", "Manage the quadrature rule cache (HYPLAP_CACHE_DIR)");
  rules->add_option("--cache-dir", ra.cache_dir, "cache directory (overrides HYPLAP_CACHE_DIR)");
  rules->require_subcommand(1);
  auto* rbuild = rules->add_subcommand("build", "build a rule unless cached");
  rbuild->add_option("--domain", ra.domain, "sphere or ball-tau");
  rbuild->add_option("-n", ra.n, "dimension");
  rbuild->add_option("--level", ra.level, "rule level");
  rbuild->add_option("--r-max", ra.r_max, "outer radius of ball-tau rules");
  rules->add_subcommand("list", "list cached rules");
  auto* rshow = rules->add_subcommand("show", "summarize one cached rule");
  rshow->add_option("file", ra.name, "file name in the cache or a path")->required();
  rules->add_subcommand("clear", "delete cached rules");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(ka, out);
    if (solve->parsed()) return cmd_solve(sa, out, err);
    if (verify->parsed()) return cmd_verify(va, out);
    if (scan->parsed()) return cmd_scan(sc, out);
    for (const char* action : {"build", "list", "show", "clear"}) {
      if (rules->get_subcommand(action)->parsed()) return cmd_rules(action, ra, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConditionFailure& e) {
    err << "condition failure: " << e.what() << "\n";
    return kExitCondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace hyplap::cli
