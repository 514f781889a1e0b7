#include "radialmp/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "radialmp/error.hpp"

namespace radialmp {
namespace {

double checked_potential(const PotentialSpec& P, double r, const char* what) {
  const double v = P(r);
  if (!std::isfinite(v)) {
    throw NumericalError(std::string(what) + " is not finite on the grid; reduce r_max");
  }
  return v;
}

/// omega_N A(mid_c) |cell_c|_N / width_c^2 for every cell.
std::vector<double> cell_stiffness(const RadialGrid& g, const PotentialSpec& A) {
  std::vector<double> k(g.cells());
  const auto mass = g.cell_mass();
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double h = g.width(c);
    k[c] = g.omega() * checked_potential(A, g.midpoint(c), "A") * mass[c] / (h * h);
  }
  return k;
}

double gradient_energy(const DiscreteRadialFunction& u, const PotentialSpec& A, std::size_t begin,
                       std::size_t end) {
  const RadialGrid& g = u.grid();
  const auto mass = g.cell_mass();
  double sum = 0.0;
  for (std::size_t c = begin; c < end; ++c) {
    const double s = u.slope(c);
    if (s == 0.0) continue;
    sum += checked_potential(A, g.midpoint(c), "A") * mass[c] * s * s;
  }
  return g.omega() * sum;
}

double potential_energy(const DiscreteRadialFunction& u, const PotentialSpec& V) {
  if (V.is_zero()) return 0.0;
  const RadialGrid& g = u.grid();
  const auto w = g.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (u[i] == 0.0) continue;
    sum += w[i] * checked_potential(V, g.node(i), "V") * u[i] * u[i];
  }
  return g.omega() * sum;
}

/// Per-node omega_N w_i K(r_i).
std::vector<double> k_weights(const RadialGrid& g, const PotentialSpec& K) {
  std::vector<double> kw(g.size());
  const auto w = g.weights();
  for (std::size_t i = 0; i < g.size(); ++i) {
    kw[i] = g.omega() * w[i] * checked_potential(K, g.node(i), "K");
  }
  return kw;
}

void check_q(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) throw ParameterError("exponent q must satisfy q > 1");
}

/// Sums int K |u|^q over the parts above and at-or-below a threshold.
struct SplitSums {
  const std::vector<double>& kw;
  const std::vector<double>& absu;
  double q1, q2;

  std::pair<double, double> at(double T) const {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < absu.size(); ++i) {
      const double a = absu[i];
      if (a == 0.0) continue;
      if (a > T) {
        s1 += kw[i] * std::pow(a, q1);
      } else {
        s2 += kw[i] * std::pow(a, q2);
      }
    }
    return {std::pow(s1, 1.0 / q1), std::pow(s2, 1.0 / q2)};
  }
};

double fitted_exponent(const PotentialSpec& A, AsymptoticEnd end, const DecayOptions& options) {
  if (options.a_exponent) return *options.a_exponent;
  const AsymptoticFit fit = fit_asymptotics(A, end);
  return fit.exact ? fit.exact->to_double() : fit.exponent;
}

/// inf of A(r) / r^a over nodes and cell midpoints with indices in [first, last].
double sampled_power_ratio_inf(const RadialGrid& g, const PotentialSpec& A, double a,
                               std::size_t first, std::size_t last) {
  double best = std::numeric_limits<double>::infinity();
  auto visit = [&](double r) { best = std::min(best, std::exp(A.log_value(r) - a * std::log(r))); };
  for (std::size_t i = first; i <= last; ++i) {
    visit(g.node(i));
    if (i < last) visit(g.midpoint(i));
  }
  return best;
}

}  // namespace

DiscreteRadialFunction::DiscreteRadialFunction(std::shared_ptr<const RadialGrid> grid,
                                               std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ParameterError("discrete function needs a grid");
  if (values_.size() != grid_->size()) {
    throw ParameterError("value count does not match node count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("discrete function values must be finite");
  }
}

DiscreteRadialFunction DiscreteRadialFunction::zero(std::shared_ptr<const RadialGrid> grid) {
  const std::size_t n = grid->size();
  return DiscreteRadialFunction(std::move(grid), std::vector<double>(n, 0.0));
}

DiscreteRadialFunction DiscreteRadialFunction::sample(std::shared_ptr<const RadialGrid> grid,
                                                      const std::function<double(double)>& fn) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid->node(i));
  return DiscreteRadialFunction(std::move(grid), std::move(v));
}

double DiscreteRadialFunction::slope(std::size_t cell) const {
  return (values_[cell + 1] - values_[cell]) / grid_->width(cell);
}

double DiscreteRadialFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

DiscreteRadialFunction DiscreteRadialFunction::interpolate_to(
    std::shared_ptr<const RadialGrid> target) const {
  const auto src = grid_->nodes();
  std::vector<double> out(target->size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double r = target->node(i);
    if (r <= src.front()) {
      out[i] = values_.front();
      continue;
    }
    if (r > src.back()) {
      out[i] = 0.0;
      continue;
    }
    const auto it = std::lower_bound(src.begin(), src.end(), r);
    const std::size_t hi = static_cast<std::size_t>(it - src.begin());
    const std::size_t lo = hi - 1;
    const double t = (r - src[lo]) / (src[hi] - src[lo]);
    out[i] = (1.0 - t) * values_[lo] + t * values_[hi];
  }
  return DiscreteRadialFunction(std::move(target), std::move(out));
}

DiscreteRadialFunction& DiscreteRadialFunction::operator+=(const DiscreteRadialFunction& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

DiscreteRadialFunction& DiscreteRadialFunction::operator-=(const DiscreteRadialFunction& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

DiscreteRadialFunction& DiscreteRadialFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

void DiscreteRadialFunction::write_csv(std::ostream& os, const char* value_column) const {
  os << "r," << value_column << '\n';
  char buf[64];
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid_->node(i), values_[i]);
    os << buf;
  }
}

DiscreteRadialFunction DiscreteRadialFunction::read_csv(std::istream& is, int N) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    header = line.rfind("r,", 0) == 0;
    break;
  }
  if (!header) {
    throw ParameterError("CSV must start with a header 'r,<column>'");
  }
  std::vector<double> r, v;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParameterError("CSV line " + std::to_string(line_no) + ": expected two columns");
    }
    try {
      r.push_back(std::stod(line.substr(0, comma)));
      v.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw ParameterError("CSV line " + std::to_string(line_no) + ": not a number");
    }
  }
  return DiscreteRadialFunction(RadialGrid::from_nodes(N, std::move(r)), std::move(v));
}

void require_same_grid(const DiscreteRadialFunction& u, const DiscreteRadialFunction& h) {
  if (u.grid_ptr() == h.grid_ptr()) return;
  const auto a = u.grid().nodes();
  const auto b = h.grid().nodes();
  if (u.grid().dimension() != h.grid().dimension() || !std::equal(a.begin(), a.end(), b.begin(), b.end())) {
    throw GridMismatch("functions live on different grids");
  }
}

XForm::XForm(std::shared_ptr<const RadialGrid> grid, const PotentialSpec& A, const PotentialSpec& V)
    : grid_(std::move(grid)) {
  const RadialGrid& g = *grid_;
  stiffness_ = cell_stiffness(g, A);
  mass_.assign(g.size(), 0.0);
  if (!V.is_zero()) {
    const auto w = g.weights();
    for (std::size_t i = 0; i < g.size(); ++i) {
      mass_[i] = g.omega() * w[i] * checked_potential(V, g.node(i), "V");
    }
  }
  const std::size_t free = g.size() - 1;
  gram_.diag.assign(free, 0.0);
  gram_.off.assign(free - 1, 0.0);
  for (std::size_t i = 0; i < free; ++i) {
    double d = mass_[i] + stiffness_[i];
    if (i > 0) d += stiffness_[i - 1];
    gram_.diag[i] = d;
    if (i + 1 < free) gram_.off[i] = -stiffness_[i];
  }
  chol_ = TridiagonalCholesky(gram_);
}

double XForm::a_energy(std::span<const double> u, const CellRange& cells) const {
  double sum = 0.0;
  for (std::size_t c = cells.begin; c < cells.end; ++c) {
    const double d = u[c + 1] - u[c];
    sum += stiffness_[c] * d * d;
  }
  return sum;
}

double XForm::a_energy(std::span<const double> u) const {
  return a_energy(u, CellRange{0, stiffness_.size()});
}

double XForm::v_energy(std::span<const double> u) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < mass_.size(); ++i) sum += mass_[i] * u[i] * u[i];
  return sum;
}

double XForm::inner(std::span<const double> u, std::span<const double> h) const {
  double sum = 0.0;
  for (std::size_t c = 0; c < stiffness_.size(); ++c) {
    sum += stiffness_[c] * (u[c + 1] - u[c]) * (h[c + 1] - h[c]);
  }
  for (std::size_t i = 0; i < mass_.size(); ++i) sum += mass_[i] * u[i] * h[i];
  return sum;
}

double XForm::norm(std::span<const double> u) const { return std::sqrt(a_energy(u) + v_energy(u)); }

void XForm::apply(std::span<const double> u, std::span<double> y) const {
  const std::size_t n = mass_.size();
  for (std::size_t i = 0; i < n; ++i) y[i] = mass_[i] * u[i];
  for (std::size_t c = 0; c + 1 < n; ++c) {
    const double f = stiffness_[c] * (u[c + 1] - u[c]);
    y[c] -= f;
    y[c + 1] += f;
  }
}

std::vector<double> XForm::riesz(std::span<const double> dual) const {
  std::vector<double> g(dual.begin(), dual.end());
  g.back() = 0.0;
  chol_.solve(std::span<double>(g.data(), g.size() - 1));
  return g;
}

double norm_A(const DiscreteRadialFunction& u, const PotentialSpec& A) {
  return std::sqrt(gradient_energy(u, A, 0, u.grid().cells()));
}

double norm_A(const DiscreteRadialFunction& u, const PotentialSpec& A, const Region& region) {
  const CellRange range = u.grid().cells_of(region);
  return std::sqrt(gradient_energy(u, A, range.begin, range.end));
}

NormBundle norms(const DiscreteRadialFunction& u, const PotentialSpec& A, const PotentialSpec& V,
                 std::optional<double> split_radius) {
  NormBundle b;
  const double ea = gradient_energy(u, A, 0, u.grid().cells());
  const double ev = potential_energy(u, V);
  b.norm_A = std::sqrt(ea);
  b.norm_V = std::sqrt(ev);
  b.norm_X = std::sqrt(ea + ev);
  if (split_radius) {
    b.split_radius = split_radius;
    b.norm_A_ball = norm_A(u, A, Region::ball(*split_radius));
    b.norm_A_complement = norm_A(u, A, Region::complement(*split_radius));
  }
  return b;
}

double inner_product_X(const DiscreteRadialFunction& u, const DiscreteRadialFunction& h,
                       const PotentialSpec& A, const PotentialSpec& V) {
  require_same_grid(u, h);
  const RadialGrid& g = u.grid();
  const auto mass = g.cell_mass();
  double sa = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double su = u.slope(c), sh = h.slope(c);
    if (su == 0.0 || sh == 0.0) continue;
    sa += checked_potential(A, g.midpoint(c), "A") * mass[c] * su * sh;
  }
  double sv = 0.0;
  if (!V.is_zero()) {
    const auto w = g.weights();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (u[i] == 0.0 || h[i] == 0.0) continue;
      sv += w[i] * checked_potential(V, g.node(i), "V") * u[i] * h[i];
    }
  }
  return g.omega() * sa + g.omega() * sv;
}

double norm_LqK(const DiscreteRadialFunction& u, const PotentialSpec& K, double q,
                const Region& region) {
  check_q(q);
  const RadialGrid& g = u.grid();
  const std::vector<double> w = g.region_weights(region);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (w[i] == 0.0 || u[i] == 0.0) continue;
    sum += w[i] * checked_potential(K, g.node(i), "K") * std::pow(std::abs(u[i]), q);
  }
  return std::pow(g.omega() * sum, 1.0 / q);
}

double sum_norm_at(const DiscreteRadialFunction& u, const PotentialSpec& K, double q1, double q2,
                   double threshold) {
  check_q(q1);
  check_q(q2);
  const std::vector<double> kw = k_weights(u.grid(), K);
  std::vector<double> absu(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) absu[i] = std::abs(u[i]);
  const auto [n1, n2] = SplitSums{kw, absu, q1, q2}.at(threshold);
  return std::max(n1, n2);
}

SumNorm sum_norm(const DiscreteRadialFunction& u, const PotentialSpec& K, double q1, double q2) {
  check_q(q1);
  check_q(q2);
  const double top = u.max_abs();
  if (top == 0.0) return {0.0, 0.0};
  const std::vector<double> kw = k_weights(u.grid(), K);
  std::vector<double> absu(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) absu[i] = std::abs(u[i]);
  const SplitSums split{kw, absu, q1, q2};

  SumNorm best{std::numeric_limits<double>::infinity(), 0.0};
  struct Probe {
    double value;
    bool upper_dominates;  // the part above T carries the max
  };
  auto probe = [&](double T) {
    const auto [n1, n2] = split.at(T);
    const double v = std::max(n1, n2);
    if (v < best.value) best = {v, T};
    return Probe{v, n1 > n2};
  };
  probe(0.0);
  probe(top);

  // The part above T shrinks and the part below grows with T, so the max is
  // quasi-convex in T. On ties (plateaus of the step function) the dominating
  // side tells which way the minimum lies.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = top;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  Probe pc = probe(c), pd = probe(d);
  const double tol = 1e-10 * top;
  while (b - a > tol) {
    bool keep_left;
    if (pc.value < pd.value) {
      keep_left = true;
    } else if (pc.value > pd.value) {
      keep_left = false;
    } else {
      keep_left = !pc.upper_dominates;
    }
    if (keep_left) {
      b = d;
      d = c;
      pd = pc;
      c = b - inv_phi * (b - a);
      pc = probe(c);
    } else {
      a = c;
      c = d;
      pc = pd;
      d = a + inv_phi * (b - a);
      pd = probe(d);
    }
  }
  probe(a);
  probe(b);
  return best;
}

namespace {

DiscreteRadialFunction normalized_on(const DiscreteRadialFunction& u, std::size_t begin, std::size_t end) {
  double scale = 0.0;
  for (std::size_t i = begin; i < end; ++i) scale = std::max(scale, std::abs(u[i]));
  DiscreteRadialFunction v = u;
  if (scale > 0.0) v *= 1.0 / scale;
  return v;
}

}  // namespace

DecayCheck verify_decay_infinity(const DiscreteRadialFunction& u, const PotentialSpec& A, double R,
                                 const DecayOptions& options) {
  const RadialGrid& g = u.grid();
  const int N = g.dimension();
  if (std::abs(u.values().back()) > 0.0) {
    throw SupportError("u must vanish at r_max to be supported in the grid");
  }
  DecayCheck out;
  const double a = fitted_exponent(A, AsymptoticEnd::Infinity, options);
  out.exponent = 0.5 * (N + a - 2.0);
  if (!(out.exponent > 0.0)) throw ParameterError("decay estimate needs N + a_inf - 2 > 0");
  const std::size_t i0 = g.snap(R);
  out.C_potential = sampled_power_ratio_inf(g, A, a, i0, g.size() - 1);
  out.C_bound = 1.0 / std::sqrt(g.omega() * out.C_potential * 2.0 * out.exponent);
  // Both sides are homogeneous in u; normalizing keeps far tails of u from
  // underflowing the energy to zero.
  const DiscreteRadialFunction v = normalized_on(u, i0, g.size());
  const double na = std::sqrt(gradient_energy(v, A, i0, g.cells()));
  for (std::size_t i = i0; i < g.size(); ++i) {
    if (v[i] == 0.0) continue;
    const double lhs = std::abs(v[i]) * std::pow(g.node(i), out.exponent);
    out.max_ratio = std::max(out.max_ratio, na > 0.0 ? lhs / na : std::numeric_limits<double>::infinity());
  }
  out.passed = out.max_ratio <= out.C_bound * (1.0 + options.slack);
  return out;
}

DecayCheck verify_decay_origin(const DiscreteRadialFunction& u, const PotentialSpec& A, double R,
                               const DecayOptions& options) {
  const RadialGrid& g = u.grid();
  const int N = g.dimension();
  const std::size_t i0 = g.snap(R);
  for (std::size_t i = i0; i < g.size(); ++i) {
    if (u[i] != 0.0) throw SupportError("u must vanish at and beyond R");
  }
  DecayCheck out;
  const double a = fitted_exponent(A, AsymptoticEnd::Zero, options);
  out.exponent = 0.5 * (N + a - 2.0);
  if (!(out.exponent > 0.0)) throw ParameterError("decay estimate needs N + a_0 - 2 > 0");
  out.C_potential = sampled_power_ratio_inf(g, A, a, 0, i0);
  out.C_bound = 1.0 / std::sqrt(g.omega() * out.C_potential * 2.0 * out.exponent);
  const DiscreteRadialFunction v = normalized_on(u, 0, i0);
  const double na = std::sqrt(gradient_energy(v, A, 0, i0));
  for (std::size_t i = 0; i < i0; ++i) {
    if (v[i] == 0.0) continue;
    const double lhs = std::abs(v[i]) * std::pow(g.node(i), out.exponent);
    out.max_ratio = std::max(out.max_ratio, na > 0.0 ? lhs / na : std::numeric_limits<double>::infinity());
  }
  out.passed = out.max_ratio <= out.C_bound * (1.0 + options.slack);
  return out;
}

}  // namespace radialmp
