#include "hyplap/regularity.hpp"

#include "hyplap/csv.hpp"
#include "hyplap/errors.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/summation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace hyplap {

namespace {

double half_angle_sq(double th) {
  const double s = std::sin(0.5 * th);
  return s * s;
}

// |r e_n - t|^2 for t at polar angle th, without cancellation near t = e_n.
double dist_sq(double r, double th) { return (1.0 - r) * (1.0 - r) + 4.0 * r * half_angle_sq(th); }

// [r e_n, rho xi]^2 = (1 - rho r)^2 + 4 rho r sin^2(th/2).
double bracket_sq_zonal(double r, double rho, double th) {
  const double a = 1.0 - rho * r;
  return a * a + 4.0 * rho * r * half_angle_sq(th);
}

const ZonalReduction& zonal(int n, int level) {
  // Small cache keyed by (n, level); scans reuse the same reductions many times.
  static thread_local std::map<std::pair<int, int>, ZonalReduction> cache;
  auto it = cache.find({n, level});
  if (it == cache.end()) it = cache.emplace(std::make_pair(n, level), ZonalReduction(n, level)).first;
  return it->second;
}

void require_unit_interval(double r, const char* what) {
  if (!(r >= 0.0) || !(r < 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1)");
}

template <class F>
RefinedIntegral refine_in_rho(double r, int level, F&& integrand_at_level) {
  auto run = [&](int lv) {
    const std::vector<double> breaks = graded_breaks(0.0, 1.0, 1.0, std::max(0.25 * (1.0 - r), 1e-12), 0.125);
    const LineRule rule = composite_gauss(breaks, lv);
    CompensatedSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * integrand_at_level(rule.nodes[i], lv);
    return s.value();
  };
  RefinedIntegral out;
  out.value = run(level);
  out.refined = run(2 * level);
  out.relative_change = std::abs(out.refined - out.value) / std::max(std::abs(out.refined), 1e-300);
  out.stable = std::isfinite(out.refined) && out.relative_change <= 0.1;
  return out;
}

BoundScan scan_over(const std::string& name, const std::vector<double>& r_grid, double exponent,
                    const std::function<std::pair<double, double>(double)>& raw_and_scaled) {
  BoundScan scan;
  scan.name = name;
  scan.scaling_exponent = exponent;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    scan.grid.push_back(r);
    scan.steps.push_back(r < 1.0 && r > 0.0 ? -std::log2(1.0 - r) : static_cast<double>(i));
    const auto [raw, scaled] = raw_and_scaled(r);
    scan.raw.push_back(raw);
    scan.scaled.push_back(scaled);
  }
  finalize_scan(scan);
  return scan;
}

std::vector<double> rho_probe_grid() {
  std::vector<double> rho;
  for (int k = 20; k >= 2; --k) rho.push_back(std::ldexp(1.0, -k));
  for (int k = 1; k <= 20; ++k) rho.push_back(1.0 - std::ldexp(1.0, -k));
  return rho;
}

}  // namespace

std::vector<double> BoundScan::cumulative_max() const {
  std::vector<double> out;
  double m = -INFINITY;
  for (double v : scaled) {
    m = std::max(m, v);
    out.push_back(m);
  }
  return out;
}

double tail_slope(const std::vector<double>& steps, const std::vector<double>& values, std::size_t tail) {
  if (steps.size() != values.size()) throw DomainError("tail slope needs matching vectors");
  const std::size_t k = std::min(tail, steps.size());
  if (k < 2) return 0.0;
  const std::size_t start = steps.size() - k;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = start; i < steps.size(); ++i) {
    mx += steps[i];
    my += values[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = start; i < steps.size(); ++i) {
    sxy += (steps[i] - mx) * (values[i] - my);
    sxx += (steps[i] - mx) * (steps[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

void finalize_scan(BoundScan& scan, const BoundCriterion& criterion) {
  if (scan.steps.size() != scan.scaled.size() || scan.raw.size() != scan.scaled.size()) {
    throw DomainError("scan columns differ in length");
  }
  for (std::size_t i = 1; i < scan.steps.size(); ++i) {
    if (!(scan.steps[i] > scan.steps[i - 1])) throw DomainError("scan grid must be strictly increasing");
  }
  for (double v : scan.scaled) {
    if (!std::isfinite(v)) throw IntegrationError("non-finite value in scan '" + scan.name + "'");
  }
  if (scan.scaled.empty()) return;
  // The criterion is applied to the running maximum: a scaled quantity that
  // peaks early and then decays is bounded.
  const std::vector<double> running = scan.cumulative_max();
  scan.max = running.back();
  std::vector<double> sorted = running;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  scan.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  scan.trend_slope = tail_slope(scan.steps, running, criterion.tail);
  const bool ratio_ok = scan.max <= criterion.max_over_median * std::abs(scan.median) || scan.max == 0.0;
  scan.bounded = scan.trend_slope <= criterion.max_slope && ratio_ok;
}

void write_scan_csv(std::ostream& os, const BoundScan& scan) {
  CsvWriter csv(os, {"grid_value", "raw", "scaled", "cumulative_max"});
  const auto cm = scan.cumulative_max();
  for (std::size_t i = 0; i < scan.grid.size(); ++i) {
    csv.field(scan.grid[i]).field(scan.raw[i]).field(scan.scaled[i]).field(cm[i]);
    csv.end_row();
  }
}

std::vector<double> geometric_r_grid(int j_min, int j_max) {
  if (j_min < 0 || j_max < j_min || j_max > 50) throw DomainError("invalid geometric grid bounds");
  std::vector<double> out;
  for (int j = j_min; j <= j_max; ++j) out.push_back(1.0 - std::ldexp(1.0, -j));
  return out;
}

double integral_I_alpha(double r, double alpha, int n, int level) {
  if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("alpha must lie in (0, 1]");
  return integral_I_omega(r, [alpha](double s) { return std::pow(s, alpha); }, n, level);
}

double integral_I_omega(double r, const std::function<double(double)>& omega, int n, int level) {
  require_unit_interval(r, "r");
  if (n < 3) throw DomainError("I_alpha is defined for n >= 3");
  const double d = (1.0 - r) * (1.0 + r);
  const double v = zonal(n, level).integrate([&](double th) {
    return omega(2.0 * std::sin(0.5 * th)) / std::pow(dist_sq(r, th), n - 1);
  });
  return std::pow(d, n - 2) * v;
}

double integral_A(double r, double rho, int n, int level) {
  require_unit_interval(r, "r");
  if (!(rho >= 0.0) || rho > 1.0) throw DomainError("rho must lie in [0, 1]");
  return zonal(n, level).integrate([&](double th) { return 1.0 / std::sqrt(bracket_sq_zonal(r, rho, th)); });
}

double integral_B(double r, double rho, int n, int level) {
  require_unit_interval(r, "r");
  if (!(rho >= 0.0) || rho > 1.0) throw DomainError("rho must lie in [0, 1]");
  return zonal(n, level).integrate([&](double th) { return 1.0 / bracket_sq_zonal(r, rho, th); });
}

double integral_I_m(double r, double m, int n, int level) {
  require_unit_interval(r, "r");
  if (!(m > 0.0)) throw DomainError("m must be positive");
  return zonal(n, level).integrate([&](double th) { return std::pow(dist_sq(r, th), -0.5 * m); });
}

RefinedIntegral integral_B_total(double r, int n, int level) {
  if (r < 0.5 || r >= 1.0) throw DomainError("integral_B_total needs 1/2 <= r < 1");
  return refine_in_rho(r, level, [&](double rho, int lv) { return integral_B(r, rho, n, lv); });
}

RefinedIntegral integral_J3(double r, double m_const, int n, int level) {
  RefinedIntegral out = refine_in_rho(r, level, [&](double rho, int lv) { return integral_A(r, rho, n, lv); });
  out.value *= n * m_const;
  out.refined *= n * m_const;
  return out;
}

RefinedIntegral integral_J4(double r, double m_const, int n, int level) {
  RefinedIntegral out = refine_in_rho(r, level, [&](double rho, int lv) { return rho * integral_B(r, rho, n, lv); });
  out.value *= n * m_const;
  out.refined *= n * m_const;
  return out;
}

BoundScan integral_I_m_scan(double m, int n, const std::vector<double>& r_grid, int level) {
  const double crit = n - 1.0;
  std::string regime = m < crit ? "bounded" : (m == crit ? "log" : "power");
  return scan_over("I_m[" + regime + "]", r_grid, m > crit ? m - crit : 0.0, [&](double r) {
    const double v = integral_I_m(r, m, n, level);
    double scaled = v;
    if (m == crit) scaled = v / std::max(std::log(1.0 / (1.0 - r)), 1.0);
    if (m > crit) scaled = v * std::pow(1.0 - r, m - crit);
    return std::make_pair(v, scaled);
  });
}

BoundScan integral_I_alpha_scan(double alpha, int n, const std::vector<double>& r_grid, int level) {
  return scan_over("I_alpha", r_grid, 1.0 - alpha, [&](double r) {
    const double v = integral_I_alpha(r, alpha, n, level);
    return std::make_pair(v, std::pow(1.0 - r, 1.0 - alpha) * v);
  });
}

BoundScan integral_I_omega_scan(const std::function<double(double)>& omega, int n, const std::vector<double>& r_grid,
                                int level) {
  return scan_over("I_omega", r_grid, 0.0, [&](double r) {
    const double v = integral_I_omega(r, omega, n, level);
    const double delta = (1.0 - r) * (1.0 + r);
    return std::make_pair(v, v * delta / omega(delta));
  });
}

BoundScan integral_A_scan(int n, const std::vector<double>& r_grid, int level) {
  const auto rhos = rho_probe_grid();
  return scan_over("A", r_grid, 0.5, [&](double r) {
    double raw = 0.0;
    double scaled = 0.0;
    for (double rho : rhos) {
      const double a = integral_A(r, rho, n, level);
      raw = std::max(raw, a);
      scaled = std::max(scaled, std::sqrt(rho) * a);
    }
    return std::make_pair(raw, scaled);
  });
}

BoundScan integral_B_scan(int n, const std::vector<double>& r_grid, int level) {
  const auto rhos = rho_probe_grid();
  return scan_over("B", r_grid, 0.0, [&](double r) {
    double raw = 0.0;
    double scaled = 0.0;
    for (double rho : rhos) {
      const double b = integral_B(r, rho, n, level);
      raw = std::max(raw, b);
      scaled = std::max(scaled, b / (1.0 - std::log1p(-rho)));
    }
    return std::make_pair(raw, scaled);
  });
}

BoundScan holder_radial_scan(const BoundaryData& phi, double alpha, const SpherePoint& x0,
                             const std::vector<double>& r_grid, const HolderScanOptions& opts) {
  if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("alpha must lie in (0, 1]");
  const std::string kind = opts.poisson.kernel == PoissonKernelKind::hyperbolic ? "hyperbolic" : "euclidean";
  // Subtracting phi(x0) leaves the gradient unchanged and removes the constant
  // part from the FD quotient.
  BoundaryData shifted = phi;
  const double base = phi.eval(x0.v());
  shifted.eval = [&phi, base](const Vector& t) { return phi.eval(t) - base; };
  return scan_over("holder_radial[" + kind + "]", r_grid, 1.0 - alpha, [&](double r) {
    const BallPoint x(r * x0.v());
    const QuadratureRule rule = poisson_rule(x, opts.poisson);
    const ScalarField u = [&](const Vector& y) { return poisson_integral(shifted, BallPoint(y), rule, opts.poisson.kernel); };
    const double g = gradient_fd(u, x).norm();
    return std::make_pair(g, std::pow(1.0 - r, 1.0 - alpha) * g);
  });
}

BoundScan green_gradient_scan(const SourceDensity& psi, const std::vector<double>& r_grid, int k,
                              const GreenOptions& opts) {
  if (k < 0 || k >= psi.dim) throw DomainError("coordinate index out of range");
  const int n = psi.dim;
  return scan_over("green_gradient", r_grid, 0.0, [&](double r) {
    const BallPoint x(r * unit_vector(n, n - 1));
    const QuadratureRule rule = green_rule(x, psi.radial, opts);
    const double h = std::min(default_fd_step(x), 0.25 * (1.0 - r));
    Vector p = x.v();
    p(k) += h;
    const double up = green_potential(psi, BallPoint(p), rule);
    p(k) -= 2.0 * h;
    const double um = green_potential(psi, BallPoint(p), rule);
    const double d = std::abs(up - um) / (2.0 * h);
    return std::make_pair(d, d);
  });
}

double riesz_potential(const ScalarField& f, double mu, const BallPoint& x, const RieszOptions& opts) {
  if (!(mu > 0.0) || !(mu < 1.0)) throw DomainError("Riesz exponent mu must lie in (0, 1)");
  const int n = x.dim();
  const double nm = n * mu;
  const double rx = x.v().norm();
  const Vector axis = rx > 0.0 ? Vector(x.v() / rx) : unit_vector(n, n - 1);
  const QuadratureRule dirs =
      sphere_rule_axial(n, axis, 0.25 * (1.0 - rx), opts.sphere_level, std::max(2, opts.sphere_level / 2));
  const double defect = x.defect();
  // s = rho^{n mu} turns n rho^{n mu - 1} d rho into ds / mu.
  CompensatedSum total;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const Vector w = dirs.nodes.col(static_cast<Eigen::Index>(j));
    const double b = x.v().dot(w);
    const double rho_max = defect / (b + std::sqrt(b * b + defect));
    const double s_max = std::pow(rho_max, nm);
    std::vector<double> breaks = graded_breaks(0.0, s_max, s_max, 1e-10 * s_max, 0.25 * s_max);
    const double s_delta = std::pow(opts.delta, nm);
    if (s_delta < s_max) breaks.push_back(s_delta);
    const LineRule rule = composite_gauss(merge_breaks(std::move(breaks)), opts.radial_level);
    CompensatedSum inner;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = std::pow(rule.nodes[i], 1.0 / nm);
      Vector y = x.v() + rho * w;
      // Nodes within rounding of the sphere are pulled back inside.
      const double ny = y.norm();
      if (ny >= 1.0) y *= std::nextafter(1.0, 0.0) / ny;
      const double v = f(y);
      if (!std::isfinite(v)) throw IntegrationError("non-finite Riesz integrand");
      inner += rule.weights[i] * v;
    }
    total += dirs.weights[j] * inner.value();
  }
  return total.value() / mu;
}

std::string to_string(ConditionTag tag) {
  switch (tag) {
    case ConditionTag::h3:
      return "h3";
    case ConditionTag::h3_1:
      return "h3-1";
    case ConditionTag::h4:
      return "h4";
    case ConditionTag::int_cond_mu:
      return "intCondMu";
  }
  return "h3";
}

ConditionTag condition_tag_from_string(const std::string& s) {
  if (s == "h3") return ConditionTag::h3;
  if (s == "h3-1") return ConditionTag::h3_1;
  if (s == "h4") return ConditionTag::h4;
  if (s == "intCondMu") return ConditionTag::int_cond_mu;
  throw DomainError("unknown condition tag '" + s + "'");
}

namespace {

// Shell integrals of |psi w|^p d nu over t = 1 - |x| in [2^{-j-1}, 2^{-j}]
// (shell 0 is the inner ball |x| <= 1/2) where w = (1-|x|^2)^{weight_exp}.
std::vector<double> shell_contributions(const SourceDensity& psi, double weight_exp, double p, int shells,
                                        std::string& failure) {
  const int n = psi.dim;
  const QuadratureRule dirs = sphere_rule(n, psi.radial ? 0 : 6);
  std::vector<double> out;
  for (int j = 0; j < shells; ++j) {
    const double t_hi = j == 0 ? 1.0 : std::ldexp(1.0, -j);
    const double t_lo = std::ldexp(1.0, -j - 1);
    const std::vector<double> breaks = j == 0 ? graded_breaks(t_lo, t_hi, t_hi, 0.05, 0.125)
                                              : std::vector<double>{t_lo, t_hi};
    const LineRule rule = composite_gauss(breaks, 16);
    CompensatedSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = rule.nodes[i];
      const double r = 1.0 - t;
      const double defect = t * (2.0 - t);
      const double radial_w = rule.weights[i] * n * std::pow(r, n - 1);
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        const Vector x = r * dirs.nodes.col(static_cast<Eigen::Index>(d));
        const double v = std::pow(std::abs(psi(x)) * std::pow(defect, weight_exp), p);
        if (!std::isfinite(v)) {
          failure = "non-finite sample at |x| = " + csv_number(r);
          return out;
        }
        s += radial_w * dirs.weights[d] * v;
      }
    }
    out.push_back(s.value());
  }
  return out;
}

void lp_report(ConditionReport& rep, const SourceDensity& psi, double weight_exp, double p, int shells) {
  std::string failure;
  const auto c = shell_contributions(psi, weight_exp, p, shells, failure);
  if (!failure.empty()) {
    rep.pass = false;
    rep.constant = INFINITY;
    rep.detail = failure;
    return;
  }
  const std::size_t m = c.size();
  // Trailing ratio: a convergent tail shrinks geometrically, a divergent one does not.
  double ratio = 0.0;
  if (c[m - 2] > 0.0) ratio = c[m - 1] / c[m - 2];
  else if (c[m - 1] > 0.0) ratio = INFINITY;
  const bool converges = ratio <= 0.98;
  const double head = std::accumulate(c.begin(), c.end(), 0.0);
  const double tail = converges && ratio > 0.0 ? c[m - 1] * ratio / (1.0 - ratio) : 0.0;
  rep.params["trailing_ratio"] = ratio;
  rep.constant = converges ? std::pow(head + tail, 1.0 / p) : INFINITY;
  rep.pass = converges;
  rep.detail = converges ? "shell contributions decay geometrically" : "shell contributions do not decay";
}

}  // namespace

ConditionReport check_condition(const SourceDensity& psi, ConditionTag tag, const ConditionParams& params) {
  if (!psi.eval || psi.dim < 2) throw DomainError("source density needs an evaluator and dimension");
  if (params.shells < 6) throw DomainError("condition checks need at least 6 shells");
  const int n = psi.dim;
  ConditionReport rep;
  rep.tag = tag;
  rep.params["seed"] = static_cast<double>(params.seed);
  rep.params["shells"] = params.shells;
  const double p = params.p > 0.0 ? params.p : n + 1.0;
  switch (tag) {
    case ConditionTag::h3: {
      Rng rng(params.seed);
      std::vector<double> shell_max;
      Vector x(n);
      for (int j = 0; j <= params.shells; ++j) {
        const double t = j == 0 ? 1.0 : std::ldexp(1.0, -j);
        double m = 0.0;
        for (int d = 0; d < params.directions; ++d) {
          for (int k = 0; k < n; ++k) x(k) = rng.normal();
          const double tt = j == 0 ? rng.uniform(0.5, 1.0) : t * rng.uniform(0.5, 1.0);
          x *= (1.0 - tt) / x.norm();
          const double v = std::abs(psi(x)) / (tt * (2.0 - tt));
          if (!std::isfinite(v)) {
            rep.pass = false;
            rep.constant = INFINITY;
            rep.detail = "non-finite sample at |x| = " + csv_number(1.0 - tt);
            return rep;
          }
          m = std::max(m, v);
        }
        shell_max.push_back(m);
      }
      const double sup = *std::max_element(shell_max.begin(), shell_max.end());
      const double late = *std::max_element(shell_max.end() - 4, shell_max.end());
      const double early = *std::max_element(shell_max.end() - 8, shell_max.end() - 4);
      const double growth = early > 0.0 ? late / early : (late > 0.0 ? INFINITY : 1.0);
      rep.params["growth"] = growth;
      rep.pass = growth <= 1.05;
      rep.constant = rep.pass ? sup : INFINITY;
      rep.detail = rep.pass ? "sup |psi|/(1-|x|^2) stabilizes toward the boundary"
                            : "|psi|/(1-|x|^2) keeps growing toward the boundary";
      break;
    }
    case ConditionTag::h3_1:
      rep.params["p"] = p;
      lp_report(rep, psi, -2.0, p, params.shells);
      if (!(p > n)) {
        rep.pass = false;
        rep.detail = "(h3-1) needs p > n";
      }
      break;
    case ConditionTag::h4:
      rep.params["p"] = p;
      rep.params["alpha"] = params.alpha;
      lp_report(rep, psi, -1.0 - params.alpha, p, params.shells);
      break;
    case ConditionTag::int_cond_mu:
      lp_report(rep, psi, -1.0, 1.0, params.shells);
      break;
  }
  return rep;
}

std::string to_json(const ConditionReport& report) {
  nlohmann::ordered_json j;
  j["tag"] = to_string(report.tag);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(csv_number(v));
  j["params"] = params;
  j["constant"] = std::isfinite(report.constant) ? nlohmann::ordered_json(report.constant)
                                                 : nlohmann::ordered_json(csv_number(report.constant));
  j["pass"] = report.pass;
  j["detail"] = report.detail;
  return j.dump();
}

std::vector<PointPair> sample_pairs(int n, std::size_t count, std::uint64_t seed, double r_max) {
  if (!(r_max > 0.0) || r_max >= 1.0) throw DomainError("r_max must lie in (0, 1)");
  Rng rng(seed);
  std::vector<PointPair> out;
  out.reserve(count);
  auto direction = [&] {
    Vector v(n);
    for (int k = 0; k < n; ++k) v(k) = rng.normal();
    return Vector(v.normalized());
  };
  auto point = [&] {
    const double r = std::min(r_max, 1.0 - std::pow(10.0, -3.0 * rng.uniform()));
    return Vector(r * direction());
  };
  for (std::size_t i = 0; i < count; ++i) {
    const Vector x = point();
    Vector y;
    if (i % 2 == 0) {
      y = point();
    } else {
      const double eps = std::pow(10.0, -1.0 - 3.0 * rng.uniform()) * (1.0 - x.norm());
      y = x + eps * direction();
      if (y.norm() > r_max) y *= r_max / y.norm();
    }
    out.emplace_back(x, y);
  }
  return out;
}

double lipschitz_estimate(const ScalarField& u, const std::vector<PointPair>& pairs) {
  double best = 0.0;
  for (const auto& [x, y] : pairs) {
    const double d = (x - y).norm();
    if (!(d > 0.0)) continue;
    best = std::max(best, std::abs(u(x) - u(y)) / d);
  }
  return best;
}

HolderGreenResult holder_radial_green(const SourceDensity& psi, double alpha, const SpherePoint& x0,
                                      const std::vector<double>& r_grid, const GreenOptions& opts) {
  if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("alpha must lie in (0, 1]");
  std::vector<double> values;
  HolderGreenResult out;
  out.scan = scan_over("holder_radial_green", r_grid, 1.0 - alpha, [&](double r) {
    const double g = green_potential(psi, BallPoint(r * x0.v()), opts);
    values.push_back(g);
    return std::make_pair(std::abs(g), std::pow(1.0 - r, 1.0 - alpha) * std::abs(g));
  });
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    for (std::size_t j = i + 1; j < r_grid.size(); ++j) {
      const double q = std::abs(values[i] - values[j]) / std::pow(std::abs(r_grid[i] - r_grid[j]), alpha);
      out.two_point_quotient = std::max(out.two_point_quotient, q);
    }
  }
  return out;
}

}  // namespace hyplap
