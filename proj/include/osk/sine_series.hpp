#ifndef OSK_SINE_SERIES_HPP
#define OSK_SINE_SERIES_HPP

#include <functional>
#include <map>

#include "osk/slow_function.hpp"

namespace osk {

/// f(x,t) = sum_n f_n(t) sin(n x) on [0, pi]; f_n are slow functions
/// (constants for time-independent profiles). Vanishes at x = 0 and x = pi.
class SineSeries {
 public:
  SineSeries() = default;
  explicit SineSeries(std::map<int, SlowFunction> modes);

  /// Constant coefficients, index 0 holds f_1.
  static SineSeries from_constants(const std::vector<double>& coeffs);

  double operator()(double x, double t = 0.0) const;

  /// t -> f(x, t).
  SlowFunction at(double x) const;
  /// Coefficients frozen at time t.
  SineSeries at_time(double t) const;

  const std::map<int, SlowFunction>& modes() const { return modes_; }
  SlowFunction coefficient(int n) const;
  double coefficient_value(int n, double t = 0.0) const { return coefficient(n)(t); }
  int max_mode() const { return modes_.empty() ? 0 : modes_.rbegin()->first; }
  bool is_zero() const { return modes_.empty(); }

  /// Drop modes above n_max.
  SineSeries truncated(int n_max) const;
  SineSeries scaled(double s) const;
  SineSeries scaled(const SlowFunction& g) const;

  SineSeries& operator+=(const SineSeries& other);
  friend SineSeries operator+(SineSeries a, const SineSeries& b) { return a += b; }

  friend bool operator==(const SineSeries&, const SineSeries&) = default;

 private:
  void normalize();

  std::map<int, SlowFunction> modes_;
};

/// f_n = (2/pi) int_0^pi f(s) sin(n s) ds, n = 1..n_max, by composite
/// Gauss-Legendre. Starts at `points_per_oscillation` nodes per period of
/// sin(n_max s) and doubles the panel count until two passes agree to 1e-12.
/// Throws InputError when f returns a non-finite value.
SineSeries sine_coefficients(const std::function<double(double)>& f, int n_max,
                             int points_per_oscillation = 64);

/// Space-time callable sampled at a fixed time; coefficients are constants.
SineSeries sine_coefficients_at(const std::function<double(double, double)>& f, double t, int n_max,
                                int points_per_oscillation = 64);

}  // namespace osk

#endif  // OSK_SINE_SERIES_HPP
