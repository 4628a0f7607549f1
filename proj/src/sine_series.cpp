#include "osk/sine_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "osk/error.hpp"

namespace osk {

SineSeries::SineSeries(std::map<int, SlowFunction> modes) : modes_(std::move(modes)) {
  for (const auto& [n, c] : modes_)
    if (n < 1) throw InputError("SineSeries: mode index must be >= 1");
  normalize();
}

SineSeries SineSeries::from_constants(const std::vector<double>& coeffs) {
  std::map<int, SlowFunction> modes;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    modes.emplace(static_cast<int>(i) + 1, SlowFunction::constant(coeffs[i]));
  return SineSeries(std::move(modes));
}

void SineSeries::normalize() { std::erase_if(modes_, [](const auto& kv) { return kv.second.is_zero(); }); }

double SineSeries::operator()(double x, double t) const {
  double sum = 0.0;
  for (const auto& [n, c] : modes_) sum += c(t) * std::sin(n * x);
  return sum;
}

SlowFunction SineSeries::at(double x) const {
  SlowFunction out;
  for (const auto& [n, c] : modes_) out += std::sin(n * x) * c;
  return out;
}

SineSeries SineSeries::at_time(double t) const {
  std::map<int, SlowFunction> out;
  for (const auto& [n, c] : modes_) out.emplace(n, SlowFunction::constant(c(t)));
  return SineSeries(std::move(out));
}

SlowFunction SineSeries::coefficient(int n) const {
  auto it = modes_.find(n);
  return it == modes_.end() ? SlowFunction{} : it->second;
}

SineSeries SineSeries::truncated(int n_max) const {
  std::map<int, SlowFunction> out;
  for (const auto& [n, c] : modes_)
    if (n <= n_max) out.emplace(n, c);
  return SineSeries(std::move(out));
}

SineSeries SineSeries::scaled(double s) const { return scaled(SlowFunction::constant(s)); }

SineSeries SineSeries::scaled(const SlowFunction& g) const {
  std::map<int, SlowFunction> out;
  for (const auto& [n, c] : modes_) out.emplace(n, c * g);
  return SineSeries(std::move(out));
}

SineSeries& SineSeries::operator+=(const SineSeries& other) {
  for (const auto& [n, c] : other.modes_) modes_[n] += c;
  normalize();
  return *this;
}

namespace {

constexpr int kGaussOrder = 16;

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, kGaussOrder>;
    GaussRule r;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(x[i]);
      r.weights.push_back(w[i]);
      if (x[i] != 0.0) {
        r.nodes.push_back(-x[i]);
        r.weights.push_back(w[i]);
      }
    }
    return r;
  }();
  return rule;
}

std::vector<double> composite_sine_pass(const std::function<double(double)>& f, int n_max, int panels) {
  const auto& rule = gauss_rule();
  const double pi = std::numbers::pi;
  const double width = pi / panels;
  std::vector<double> acc(n_max, 0.0);
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = mid + 0.5 * width * rule.nodes[q];
      const double value = f(s);
      if (!std::isfinite(value)) throw InputError("sine_coefficients: non-finite sample of f");
      const double w = 0.5 * width * rule.weights[q] * value;
      for (int n = 1; n <= n_max; ++n) acc[n - 1] += w * std::sin(n * s);
    }
  }
  for (auto& a : acc) a *= 2.0 / pi;
  return acc;
}

}  // namespace

SineSeries sine_coefficients(const std::function<double(double)>& f, int n_max, int points_per_oscillation) {
  if (n_max < 1) throw InputError("sine_coefficients: n_max must be >= 1");
  if (points_per_oscillation < 1) throw InputError("sine_coefficients: points_per_oscillation must be >= 1");
  // sin(n_max s) completes n_max/2 periods on [0, pi]
  const int total_points = std::max(1, points_per_oscillation * n_max / 2);
  int panels = std::max(2, (total_points + kGaussOrder - 1) / kGaussOrder);

  auto current = composite_sine_pass(f, n_max, panels);
  for (int pass = 0; pass < 12; ++pass) {
    panels *= 2;
    auto refined = composite_sine_pass(f, n_max, panels);
    double diff = 0.0;
    for (int i = 0; i < n_max; ++i) diff = std::max(diff, std::abs(refined[i] - current[i]));
    current = std::move(refined);
    if (diff < 1e-12) break;
  }
  return SineSeries::from_constants(current);
}

SineSeries sine_coefficients_at(const std::function<double(double, double)>& f, double t, int n_max,
                                int points_per_oscillation) {
  return sine_coefficients([&](double x) { return f(x, t); }, n_max, points_per_oscillation);
}

}  // namespace osk
