#include "osk/forward_solver.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "osk/duhamel.hpp"
#include "osk/error.hpp"
#include "osk/parallel.hpp"

namespace osk {

void HeatProblem::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InputError("HeatProblem: omega must be > 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InputError("HeatProblem: horizon must be > 0");
  if (n_max < 1) throw InputError("HeatProblem: n_max must be >= 1");
}

namespace {

struct OscillatoryPart {
  int k;
  SlowFunction cos_amp;  // f_n * a_k
  SlowFunction sin_amp;  // f_n * b_k
};

/// Mode-n forcing f_n(s) r(s, omega s) split into slow and oscillatory products.
struct ModeForcing {
  double lambda = 0.0;
  SlowFunction slow;
  std::vector<OscillatoryPart> fast;

  ModeForcing(int n, const HeatProblem& p) : lambda(double(n) * n) {
    const SlowFunction fn = p.f.coefficient(n);
    slow = fn * p.r.r0;
    for (const auto& h : p.r.r1.harmonics()) fast.push_back({h.k, fn * h.cos_amp, fn * h.sin_amp});
  }

  double amplitude(double omega, double t) const {
    double sum = duhamel_weight(lambda, slow, t);
    for (const auto& part : fast) {
      const double freq = part.k * omega;
      for (const auto& term : part.cos_amp.terms())
        sum += term.coeff * duhamel_term(lambda, term.power, {term.rate, freq}, t).real();
      for (const auto& term : part.sin_amp.terms())
        sum += term.coeff * duhamel_term(lambda, term.power, {term.rate, freq}, t).imag();
    }
    return sum;
  }
};

void check_mode(int n, const HeatProblem& p) {
  if (n < 1 || n > p.n_max) throw InputError("solve_mode: mode index outside 1..n_max");
}

}  // namespace

double solve_mode(int n, const HeatProblem& problem, double t) {
  problem.validate();
  check_mode(n, problem);
  return ModeForcing(n, problem).amplitude(problem.omega, t);
}

double solve_mode_quadrature(int n, const HeatProblem& problem, double t, double step) {
  problem.validate();
  check_mode(n, problem);
  if (!(step > 0.0)) throw InputError("solve_mode_quadrature: step must be > 0");
  if (step > std::numbers::pi / (2.0 * problem.omega))
    throw InputError("solve_mode_quadrature: step exceeds pi/(2 omega); fast oscillation under-resolved");
  if (t <= 0.0) return 0.0;

  using G = boost::math::quadrature::gauss<double, 10>;
  const SlowFunction fn = problem.f.coefficient(n);
  const double lambda = double(n) * n;
  auto integrand = [&](double s) {
    return std::exp(-lambda * (t - s)) * fn(s) * problem.r(s, problem.omega * s);
  };
  const auto panels = static_cast<std::size_t>(std::ceil(t / step));
  const double width = t / double(panels);
  double sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = double(i) * width;
    sum += G::integrate(integrand, a, i + 1 == panels ? t : a + width);
  }
  return sum;
}

double solve_point(const HeatProblem& problem, double x, double t) {
  problem.validate();
  double sum = 0.0;
  for (int n = 1; n <= problem.n_max; ++n) {
    if (problem.f.coefficient(n).is_zero()) continue;
    sum += ModeForcing(n, problem).amplitude(problem.omega, t) * std::sin(n * x);
  }
  return sum;
}

HeatSolution solve_heat(const HeatProblem& problem, std::size_t x_count, std::size_t t_count,
                        double tail_tolerance) {
  problem.validate();
  if (x_count < 2 || t_count < 2) throw InputError("solve_heat: grid counts must be >= 2");
  const Axis x_axis{0.0, std::numbers::pi, x_count};
  const Axis t_axis{0.0, problem.horizon, t_count};

  std::vector<int> active;
  for (const auto& [n, c] : problem.f.modes())
    if (n <= problem.n_max) active.push_back(n);

  // amplitudes[a * t_count + j] = u_{active[a]}(t_j)
  std::vector<double> amplitudes(active.size() * t_count, 0.0);
  parallel_for(active.size(), [&](std::size_t a) {
    const ModeForcing forcing(active[a], problem);
    for (std::size_t j = 0; j < t_count; ++j)
      amplitudes[a * t_count + j] = forcing.amplitude(problem.omega, t_axis.node(j));
  });

  std::vector<double> values(x_count * t_count, 0.0);
  for (std::size_t i = 0; i < x_count; ++i) {
    const double x = x_axis.node(i);
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double s = std::sin(active[a] * x);
      for (std::size_t j = 0; j < t_count; ++j) values[i * t_count + j] += s * amplitudes[a * t_count + j];
    }
  }

  HeatSolution out{GridFunction(x_axis, t_axis, std::move(values)), 0.0, {}};
  double r_bound = problem.r.r0.abs_bound(problem.horizon);
  for (const auto& h : problem.r.r1.harmonics())
    r_bound += h.cos_amp.abs_bound(problem.horizon) + h.sin_amp.abs_bound(problem.horizon);
  for (const auto& [n, c] : problem.f.modes())
    if (n > problem.n_max) out.tail_estimate += c.abs_bound(problem.horizon) * r_bound / (double(n) * n);
  if (out.tail_estimate > tail_tolerance) {
    std::ostringstream msg;
    msg << "mode truncation at n_max=" << problem.n_max << " leaves an estimated tail of " << out.tail_estimate;
    out.warnings.push_back(msg.str());
  }
  return out;
}

GridFunction trace(const GridFunction& field, double x0) {
  if (field.dimension() != 2) throw InputError("trace: expects a 2-D (x, t) field");
  if (!(x0 > 0.0 && x0 < std::numbers::pi)) throw InputError("trace: x0 must lie in (0, pi)");
  const Axis& xa = field.axis(0);
  const Axis& ta = field.axis(1);
  if (x0 < xa.start || x0 > xa.end) throw InputError("trace: x0 outside the field's x-axis");
  const double pos = (x0 - xa.start) / xa.step();
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), xa.count - 2);
  double w = pos - double(i);
  // snap to a node when x0 coincides with one up to rounding
  if (std::abs(w) < 1e-12) w = 0.0;
  if (std::abs(1.0 - w) < 1e-12) {
    ++i;
    w = 0.0;
  }
  std::vector<double> values(ta.count);
  for (std::size_t j = 0; j < ta.count; ++j) {
    const double left = field.at(i, j);
    values[j] = w == 0.0 ? left : (1.0 - w) * left + w * field.at(i + 1, j);
  }
  return GridFunction(ta, std::move(values));
}

}  // namespace osk
