#include "osk/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "osk/duhamel.hpp"
#include "osk/error.hpp"

namespace osk {

LeadingTerm::LeadingTerm(const SineSeries& f, const SlowFunction& r0, int n_max) {
  for (const auto& [n, fn] : f.modes()) {
    if (n > n_max) break;
    SlowFunction forcing = fn * r0;
    if (forcing.is_zero()) continue;
    SlowFunction amp = duhamel_function(double(n) * n, forcing);
    modes_.push_back({n, std::move(forcing), std::move(amp)});
  }
}

double LeadingTerm::operator()(double x, double t) const {
  double sum = 0.0;
  for (const auto& m : modes_) sum += std::sin(m.n * x) * duhamel_weight(m.n, m.forcing, t);
  return sum;
}

SlowFunction LeadingTerm::trace(double x) const {
  SlowFunction out;
  for (const auto& m : modes_) out += std::sin(m.n * x) * m.amplitude;
  return out;
}

double LeadingTerm::pde_residual(double x, double t) const {
  // per mode: D' + n^2 D - f_n r0
  double sum = 0.0;
  for (const auto& m : modes_) {
    const double n2 = double(m.n) * m.n;
    const double r = m.amplitude.derivative()(t) + n2 * m.amplitude(t) - m.forcing(t);
    sum += std::sin(m.n * x) * r;
  }
  return sum;
}

Corrector::Corrector(const SineSeries& f, const FastProfile& r1, int n_max)
    : f_(f.truncated(n_max)), fast_factor_(fast_antiderivative_zero_mean(r1)) {}

double Corrector::operator()(double x, double t, double tau) const { return f_(x, t) * fast_factor_(t, tau); }

FastProfile Corrector::trace(double x) const { return fast_factor_.scaled(f_.at(x)); }

double Corrector::tau_derivative(double x, double t, double tau) const {
  return f_(x, t) * fast_derivative(fast_factor_)(t, tau);
}

InitialLayer::InitialLayer(const SineSeries& f, const FastProfile& r1, int n_max)
    : mean_(antiderivative_mean(r1)(0.0)) {
  for (const auto& [n, fn] : f.modes()) {
    if (n > n_max) break;
    initial_coeffs_.emplace_back(n, fn(0.0));
  }
}

double InitialLayer::operator()(double x, double t) const {
  if (mean_ == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& [n, c] : initial_coeffs_) sum += c * std::sin(n * x) * std::exp(-double(n) * n * t);
  return mean_ * sum;
}

SlowFunction InitialLayer::trace(double x) const {
  SlowFunction out;
  if (mean_ == 0.0) return out;
  for (const auto& [n, c] : initial_coeffs_)
    out += SlowFunction::exponential(mean_ * c * std::sin(n * x), -double(n) * n);
  return out;
}

LeadingTerm leading_term(const SineSeries& f, const SlowFunction& r0, int n_max) { return {f, r0, n_max}; }

Corrector corrector_v1(const SineSeries& f, const FastProfile& r1, int n_max) { return {f, r1, n_max}; }

InitialLayer initial_layer_u1(const SineSeries& f, const FastProfile& r1, int n_max) { return {f, r1, n_max}; }

AsymptoticExpansion::AsymptoticExpansion(const SineSeries& f, const SourceFactor& r, int n_max)
    : u0_(f, r.r0, n_max), v1_(f, r.r1, n_max), u1_(f, r.r1, n_max) {}

double AsymptoticExpansion::evaluate(double x, double t, double omega, int order) const {
  if (order != 1 && order != 2) throw InputError("AsymptoticExpansion: order must be 1 or 2");
  double u = u0_(x, t);
  if (order == 2) u += (u1_(x, t) + v1_(x, t, omega * t)) / omega;
  return u;
}

GridFunction compose(const AsymptoticExpansion& expansion, double omega, std::size_t x_count, std::size_t t_count,
                     double horizon, int order) {
  if (!(omega > 0.0)) throw InputError("compose: omega must be > 0");
  return GridFunction::sample(Axis{0.0, std::numbers::pi, x_count}, Axis{0.0, horizon, t_count},
                              [&](double x, double t) { return expansion.evaluate(x, t, omega, order); });
}

std::size_t resolving_t_count(double omega, double horizon, std::size_t per_period, std::size_t cap) {
  const double periods = omega * horizon / (2.0 * std::numbers::pi);
  const auto intervals = static_cast<std::size_t>(std::ceil(double(per_period) * periods));
  return std::min(cap, std::max<std::size_t>(intervals + 1, 2));
}

double residual_norm(const HeatProblem& problem, const AsymptoticExpansion& expansion, int order,
                     std::size_t x_count, std::size_t t_count) {
  problem.validate();
  if (order != 1 && order != 2) throw InputError("residual_norm: order must be 1 or 2");
  const double periods = problem.omega * problem.horizon / (2.0 * std::numbers::pi);
  if (t_count < 2 || double(t_count - 1) < 16.0 * periods)
    throw InputError("residual_norm: t-grid resolves fewer than 16 points per fast period");
  const HeatSolution exact = solve_heat(problem, x_count, t_count);
  const GridFunction approx = compose(expansion, problem.omega, x_count, t_count, problem.horizon, order);
  return exact.field.sup_diff(approx);
}

}  // namespace osk
