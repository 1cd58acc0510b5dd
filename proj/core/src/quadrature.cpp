#include "hyplap/quadrature.hpp"

#include "hyplap/errors.hpp"
#include "hyplap/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hyplap {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
}

// Normalized weights (sum 1) of the iterated rule on S^{k-1}, written into
// the caller-provided columns. Returns node count.
void build_iterated(int k, int level, Matrix& nodes, std::vector<double>& weights) {
  if (k == 2) {
    const int count = level + 1;
    nodes.resize(2, count);
    weights.assign(count, 1.0 / count);
    for (int j = 0; j < count; ++j) {
      const double phi = 2.0 * kPi * j / count;
      nodes(0, j) = std::cos(phi);
      nodes(1, j) = std::sin(phi);
    }
    return;
  }
  Matrix inner;
  std::vector<double> inner_w;
  build_iterated(k - 1, level, inner, inner_w);
  const int m = (level + 2) / 2;
  const LineRule z = gauss_jacobi_symmetric(m, 0.5 * (k - 3));
  double mu0 = 0.0;
  for (double w : z.weights) mu0 += w;
  const auto inner_count = static_cast<Eigen::Index>(inner_w.size());
  nodes.resize(k, m * inner_count);
  weights.resize(static_cast<std::size_t>(m * inner_count));
  Eigen::Index col = 0;
  for (int i = 0; i < m; ++i) {
    const double zi = z.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - zi * zi));
    for (Eigen::Index j = 0; j < inner_count; ++j, ++col) {
      nodes.block(0, col, k - 1, 1) = s * inner.col(j);
      nodes(k - 1, col) = zi;
      weights[static_cast<std::size_t>(col)] = z.weights[i] / mu0 * inner_w[static_cast<std::size_t>(j)];
    }
  }
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

std::uint64_t nth_prime(int k) {
  static constexpr std::uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                             41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  if (k < 0 || k >= static_cast<int>(std::size(primes))) throw ResourceError("QMC dimension too large");
  return primes[k];
}

}  // namespace

LineRule gauss_legendre(int m) {
  if (m < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  LineRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

LineRule gauss_jacobi_symmetric(int m, double alpha) {
  if (m < 1) throw DomainError("Gauss-Jacobi rule needs at least one node");
  if (!(alpha > -1.0)) throw DomainError("Gauss-Jacobi exponent must exceed -1");
  if (alpha == 0.0) return gauss_legendre(m);
  const double mu0 = std::exp((2.0 * alpha + 1.0) * std::log(2.0) + 2.0 * std::lgamma(alpha + 1.0) -
                              std::lgamma(2.0 * alpha + 2.0));
  Matrix jac = Matrix::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double kk = k;
    // First coefficient written separately: the general form is 0/0 at alpha = -1/2.
    const double b2 = k == 1 ? 1.0 / (3.0 + 2.0 * alpha)
                             : kk * (kk + 2.0 * alpha) /
                                   ((2.0 * kk + 2.0 * alpha + 1.0) * (2.0 * kk + 2.0 * alpha - 1.0));
    jac(k, k - 1) = jac(k - 1, k) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(jac);
  LineRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  // Symmetrize: the weight is even, so nodes come in +/- pairs.
  for (int i = 0; i < m / 2; ++i) {
    const double x = 0.5 * (rule.nodes[m - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[m - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

LineRule composite_gauss(const std::vector<double>& breaks, int level) {
  if (breaks.size() < 2) throw DomainError("composite rule needs at least one panel");
  const LineRule ref = gauss_legendre(level);
  LineRule out;
  out.nodes.reserve((breaks.size() - 1) * ref.nodes.size());
  out.weights.reserve(out.nodes.capacity());
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    if (!(b > a)) throw DomainError("composite rule breaks must increase");
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
      out.nodes.push_back(mid + half * ref.nodes[i]);
      out.weights.push_back(half * ref.weights[i]);
    }
  }
  return out;
}

std::vector<double> graded_breaks(double a, double b, double c, double h, double max_width) {
  if (!(b > a)) throw DomainError("graded breaks need a < b");
  c = std::clamp(c, a, b);
  h = std::max(h, 1e-300);
  std::vector<double> pts{a, b};
  if (c > a && c < b) pts.push_back(c);
  for (double d = h; c - d > a; d *= 2.0) pts.push_back(c - d);
  for (double d = h; c + d < b; d *= 2.0) pts.push_back(c + d);
  pts = merge_breaks(std::move(pts));
  std::vector<double> out{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double len = pts[i] - pts[i - 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / max_width - 1e-12)));
    for (int k = 1; k < pieces; ++k) out.push_back(pts[i - 1] + len * k / pieces);
    out.push_back(pts[i]);
  }
  return out;
}

std::vector<double> merge_breaks(std::vector<double> breaks) {
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> out;
  for (double v : breaks) {
    if (out.empty() || v - out.back() > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v))) {
      out.push_back(v);
    }
  }
  return out;
}

double surface_area(int n) {
  require_dim(n > 0 ? std::max(n, 2) : n);
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) { return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

double sigma_star(int n) {
  require_dim(n);
  return std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1))) / std::sqrt(kPi);
}

std::string to_string(RuleDomain d) {
  switch (d) {
    case RuleDomain::sphere:
      return "sphere";
    case RuleDomain::ball_tau:
      return "ball-tau";
    case RuleDomain::halfspace_slab:
      return "halfspace-slab";
  }
  return "sphere";
}

RuleDomain rule_domain_from_string(const std::string& s) {
  if (s == "sphere") return RuleDomain::sphere;
  if (s == "ball-tau") return RuleDomain::ball_tau;
  if (s == "halfspace-slab") return RuleDomain::halfspace_slab;
  throw DomainError("unknown rule domain '" + s + "'");
}

double QuadratureRule::total_weight() const {
  CompensatedSum s;
  for (double w : weights) s += w;
  return s.value();
}

std::size_t sphere_rule_size(int n, int level) {
  require_dim(n);
  if (level < 0) throw DomainError("negative rule level");
  double count = level + 1.0;
  const double m = (level + 2) / 2;
  for (int k = 3; k <= n; ++k) count *= m;
  return count > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(count);
}

QuadratureRule sphere_rule(int n, int level) {
  require_dim(n);
  const std::size_t size = sphere_rule_size(n, level);
  if (size > kSphereNodeBudget) {
    QuadratureRule qmc = qmc_sphere_rule(n, kSphereNodeBudget);
    qmc.level = level;
    return qmc;
  }
  QuadratureRule rule;
  rule.domain = RuleDomain::sphere;
  rule.dim = n;
  rule.level = level;
  build_iterated(n, level, rule.nodes, rule.weights);
  return rule;
}

QuadratureRule qmc_sphere_rule(int n, std::size_t count) {
  require_dim(n);
  if (count > kMaxRuleNodes) throw ResourceError("QMC rule exceeds node cap");
  const std::size_t half = std::max<std::size_t>(1, (count + 1) / 2);
  QuadratureRule rule;
  rule.domain = RuleDomain::sphere;
  rule.dim = n;
  rule.level = -1;
  rule.nodes.resize(n, static_cast<Eigen::Index>(2 * half));
  rule.weights.assign(2 * half, 1.0 / static_cast<double>(2 * half));
  const int pairs = (n + 1) / 2;
  Vector g(2 * pairs);
  for (std::size_t i = 0; i < half; ++i) {
    for (int p = 0; p < pairs; ++p) {
      // Offset by one so that no coordinate is exactly zero.
      double u1 = radical_inverse(i + 1, nth_prime(2 * p));
      const double u2 = radical_inverse(i + 1, nth_prime(2 * p + 1));
      if (u1 <= 0.0) u1 = 0.5;
      const double rad = std::sqrt(-2.0 * std::log(u1));
      g(2 * p) = rad * std::cos(2.0 * kPi * u2);
      g(2 * p + 1) = rad * std::sin(2.0 * kPi * u2);
    }
    const Vector dir = g.head(n).normalized();
    rule.nodes.col(static_cast<Eigen::Index>(2 * i)) = dir;
    rule.nodes.col(static_cast<Eigen::Index>(2 * i + 1)) = -dir;
  }
  return rule;
}

QuadratureRule sphere_rule_axial(int n, const Vector& axis, double polar_scale, int polar_level,
                                 int inner_level) {
  require_dim(n);
  if (n == 2) {
    QuadratureRule pair;
    pair.dim = 1;
    pair.nodes.resize(1, 2);
    pair.nodes << 1.0, -1.0;
    pair.weights = {0.5, 0.5};
    return sphere_rule_axial(n, axis, polar_scale, polar_level, pair);
  }
  return sphere_rule_axial(n, axis, polar_scale, polar_level, sphere_rule(n - 1, inner_level));
}

QuadratureRule sphere_rule_axial(int n, const Vector& axis, double polar_scale, int polar_level,
                                 const QuadratureRule& fibre) {
  require_dim(n);
  if (axis.size() != n) throw DomainError("axis dimension mismatch");
  if (fibre.nodes.rows() != n - 1) throw DomainError("fibre rule dimension mismatch");
  const Matrix frame = orthonormal_frame(axis);
  const Vector u = frame.col(n - 1);
  const double h = std::clamp(polar_scale, 1e-14, kPi / 4.0);
  const LineRule polar = composite_gauss(graded_breaks(0.0, kPi, 0.0, h, kPi / 8.0), polar_level);

  const Matrix& inner = fibre.nodes;
  const std::vector<double>& inner_w = fibre.weights;
  const Matrix lateral = frame.leftCols(n - 1) * inner;  // n x inner_count

  const double cst = sigma_star(n);
  const auto ni = static_cast<Eigen::Index>(inner_w.size());
  QuadratureRule rule;
  rule.domain = RuleDomain::sphere;
  rule.dim = n;
  rule.level = polar_level;
  rule.nodes.resize(n, static_cast<Eigen::Index>(polar.nodes.size()) * ni);
  rule.weights.resize(polar.nodes.size() * inner_w.size());
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < polar.nodes.size(); ++i) {
    const double th = polar.nodes[i];
    const double c = std::cos(th);
    const double s = std::sin(th);
    const double wth = cst * std::pow(s, n - 2) * polar.weights[i];
    for (Eigen::Index j = 0; j < ni; ++j, ++col) {
      rule.nodes.col(col) = c * u + s * lateral.col(j);
      rule.weights[static_cast<std::size_t>(col)] = wth * inner_w[static_cast<std::size_t>(j)];
    }
  }
  return rule;
}

namespace {

QuadratureRule product_ball_tau(int n, const LineRule& radial, const QuadratureRule& sphere, int level) {
  const std::size_t total = radial.nodes.size() * sphere.size();
  if (total > kMaxRuleNodes) throw ResourceError("ball rule exceeds node cap");
  QuadratureRule rule;
  rule.domain = RuleDomain::ball_tau;
  rule.dim = n;
  rule.level = level;
  rule.nodes.resize(n, static_cast<Eigen::Index>(total));
  rule.weights.resize(total);
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = radial.nodes[i];
    const double d = (1.0 - r) * (1.0 + r);
    const double wr = radial.weights[i] * n * std::pow(r, n - 1) / std::pow(d, n);
    for (std::size_t j = 0; j < sphere.size(); ++j, ++col) {
      rule.nodes.col(col) = r * sphere.nodes.col(static_cast<Eigen::Index>(j));
      rule.weights[static_cast<std::size_t>(col)] = wr * sphere.weights[j];
    }
  }
  return rule;
}

}  // namespace

QuadratureRule ball_tau_rule(int n, int radial_level, int sphere_level, double r_max) {
  require_dim(n);
  if (!(r_max > 0.0)) throw DomainError("ball rule radius must be positive");
  if (r_max >= 1.0) throw DomainError("d tau has infinite mass on the whole ball; need r_max < 1");
  const double h = std::min(1.0 - r_max, 0.25 * r_max);
  const LineRule radial = composite_gauss(graded_breaks(0.0, r_max, r_max, h), radial_level);
  return product_ball_tau(n, radial, sphere_rule(n, sphere_level), radial_level);
}

QuadratureRule ball_tau_rule_graded(int n, const BallGrading& g) {
  require_dim(n);
  if (!(g.r_top > 0.0) || g.r_top > 1.0) throw DomainError("graded ball rule needs 0 < r_top <= 1");
  std::vector<double> breaks = graded_breaks(0.0, g.r_top, 0.0, std::min(1e-3, 0.25 * g.r_top), 0.1);
  const double scale = std::clamp(g.scale, 1e-14, 0.25);
  if (g.r_peak > 0.0 && g.r_peak < g.r_top) {
    const auto around = graded_breaks(0.0, g.r_top, g.r_peak, 0.25 * scale);
    breaks.insert(breaks.end(), around.begin(), around.end());
  }
  if (g.r_top >= 1.0) {
    const auto edge = graded_breaks(0.0, 1.0, 1.0, 1e-12);
    breaks.insert(breaks.end(), edge.begin(), edge.end());
  }
  const LineRule radial = composite_gauss(merge_breaks(std::move(breaks)), g.radial_level);
  const double polar_scale = g.r_peak > 0.0 ? 0.25 * scale / std::max(g.r_peak, 0.05) : kPi / 4.0;
  Vector axis = g.axis.size() == n && g.axis.norm() > 0.0 ? g.axis : unit_vector(n, n - 1);
  const QuadratureRule sphere = sphere_rule_axial(n, axis, polar_scale, g.polar_level, g.inner_level);
  return product_ball_tau(n, radial, sphere, g.radial_level);
}

double integrate(const std::function<double(const Vector&)>& f, const QuadratureRule& rule) {
  CompensatedSum s;
  Vector node(rule.nodes.rows());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    node = rule.nodes.col(static_cast<Eigen::Index>(j));
    const double v = f(node);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "non-finite integrand at node " << j << " (";
      for (Eigen::Index i = 0; i < node.size(); ++i) msg << (i ? "," : "") << node(i);
      msg << ")";
      throw IntegrationError(msg.str());
    }
    s += rule.weights[j] * v;
  }
  return s.value();
}

ZonalReduction::ZonalReduction(int n, int level) : n_(n), level_(level) {
  require_dim(n);
  if (level < 1) throw DomainError("zonal level must be positive");
  std::vector<double> breaks{0.0, kPi};
  for (int k = 1; k <= 44; ++k) breaks.push_back(kPi * std::ldexp(1.0, -k));
  for (int k = 1; k <= 4; ++k) breaks.push_back(kPi - kPi * std::ldexp(1.0, -k));
  const LineRule rule = composite_gauss(merge_breaks(std::move(breaks)), level);
  const double c = sigma_star(n);
  angles_ = rule.nodes;
  weights_.resize(rule.nodes.size());
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    weights_[i] = c * std::pow(std::sin(angles_[i]), n - 2) * rule.weights[i];
  }
}

double ZonalReduction::integrate(const std::function<double(double)>& f) const {
  CompensatedSum s;
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    const double v = f(angles_[i]);
    if (!std::isfinite(v)) {
      throw IntegrationError("non-finite zonal integrand at theta = " + std::to_string(angles_[i]));
    }
    s += weights_[i] * v;
  }
  return s.value();
}

double integrate_zonal(const std::function<double(double)>& f, int n, int level) {
  return ZonalReduction(n, level).integrate(f);
}

SlabResult integrate_halfspace_slab(const std::function<double(const Vector&)>& f, const Vector& lo,
                                    const Vector& hi, double tail_radius, int level,
                                    std::optional<TailEnvelope> tail) {
  const auto m = static_cast<int>(lo.size());
  if (m < 1 || hi.size() != lo.size()) throw DomainError("slab box dimension mismatch");
  std::vector<LineRule> axes;
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) {
    const double width = hi(i) - lo(i);
    if (!(width > 0.0)) throw DomainError("slab box must have positive width");
    const int panels = std::max(1, static_cast<int>(std::ceil(width / 0.5)));
    std::vector<double> breaks;
    for (int p = 0; p <= panels; ++p) breaks.push_back(lo(i) + width * p / panels);
    axes.push_back(composite_gauss(breaks, level));
    total *= axes.back().nodes.size();
  }
  if (total > kMaxRuleNodes) throw ResourceError("slab rule exceeds node cap");
  CompensatedSum s;
  std::vector<std::size_t> idx(m, 0);
  Vector t(m);
  for (std::size_t count = 0; count < total; ++count) {
    double w = 1.0;
    for (int i = 0; i < m; ++i) {
      t(i) = axes[i].nodes[idx[i]];
      w *= axes[i].weights[idx[i]];
    }
    const double v = f(t);
    if (!std::isfinite(v)) throw IntegrationError("non-finite slab integrand");
    s += w * v;
    for (int i = m - 1; i >= 0; --i) {
      if (++idx[i] < axes[i].nodes.size()) break;
      idx[i] = 0;
    }
  }
  SlabResult out;
  out.value = s.value();
  if (tail && tail->amplitude > 0.0) {
    if (!(tail->power > m)) throw DomainError("tail envelope power must exceed the slab dimension");
    out.tail_bound = tail->amplitude * surface_area(m < 2 ? 2 : m) *
                     std::pow(tail_radius, m - tail->power) / (tail->power - m);
    if (m == 1) out.tail_bound = 2.0 * tail->amplitude * std::pow(tail_radius, 1.0 - tail->power) / (tail->power - 1.0);
  }
  return out;
}

double integrate_radial_volume(const std::function<double(double)>& f, double radius, int n, int level) {
  require_dim(n);
  if (radius < 0.0) throw DomainError("negative radius");
  if (radius == 0.0) return 0.0;
  std::vector<double> breaks;
  for (int p = 0; p <= 4; ++p) breaks.push_back(radius * p / 4.0);
  const LineRule rule = composite_gauss(breaks, level);
  CompensatedSum s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    s += rule.weights[i] * f(r) * std::pow(r, n - 1);
  }
  return surface_area(n) * s.value();
}

void write_rule(std::ostream& os, const QuadratureRule& rule) {
  os << "# hyplap-rule 1\n";
  os << "# domain=" << to_string(rule.domain) << " n=" << rule.dim << " level=" << rule.level
     << " count=" << rule.size() << "\n";
  char buf[40];
  for (std::size_t j = 0; j < rule.size(); ++j) {
    for (int i = 0; i < rule.dim; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", rule.nodes(i, static_cast<Eigen::Index>(j)));
      os << buf << ' ';
    }
    std::snprintf(buf, sizeof buf, "%.17g", rule.weights[j]);
    os << buf << '\n';
  }
}

QuadratureRule read_rule(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "# hyplap-rule 1") throw DomainError("not a hyplap rule file");
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw DomainError("missing rule header");
  QuadratureRule rule;
  std::size_t count = 0;
  std::istringstream hdr(line.substr(2));
  std::string field;
  while (hdr >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "domain") rule.domain = rule_domain_from_string(val);
    if (key == "n") rule.dim = std::stoi(val);
    if (key == "level") rule.level = std::stoi(val);
    if (key == "count") count = std::stoull(val);
  }
  if (rule.dim < 1) throw DomainError("rule header lacks dimension");
  rule.nodes.resize(rule.dim, static_cast<Eigen::Index>(count));
  rule.weights.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    for (int i = 0; i < rule.dim; ++i) {
      if (!(is >> rule.nodes(i, static_cast<Eigen::Index>(j)))) throw DomainError("truncated rule file");
    }
    if (!(is >> rule.weights[j])) throw DomainError("truncated rule file");
  }
  return rule;
}

}  // namespace hyplap
