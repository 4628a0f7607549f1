#ifndef OSK_SLOW_FUNCTION_HPP
#define OSK_SLOW_FUNCTION_HPP

#include <optional>
#include <span>
#include <vector>

namespace osk {

/// One term coeff * t^power * exp(rate * t).
struct SlowTerm {
  double coeff = 0.0;
  int power = 0;
  double rate = 0.0;

  friend bool operator==(const SlowTerm&, const SlowTerm&) = default;
};

/// Finite sum of t^m e^{gamma t} terms.
///
/// This is the slow-time catalog every closed-form integral in the library is
/// built on: it is closed under sums, products, d/dt, multiplication by
/// e^{lambda t} and integration from 0 to t. Terms are kept sorted by
/// (rate, power) with equal pairs merged and exact zeros dropped, so two
/// functions built through different routes compare equal term-by-term.
class SlowFunction {
 public:
  SlowFunction() = default;
  explicit SlowFunction(std::vector<SlowTerm> terms);

  static SlowFunction constant(double c);
  static SlowFunction monomial(double coeff, int power, double rate = 0.0);
  static SlowFunction exponential(double coeff, double rate) { return monomial(coeff, 0, rate); }

  double operator()(double t) const;

  std::span<const SlowTerm> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SlowFunction derivative() const;
  /// t -> integral_0^t g(s) ds.
  SlowFunction integral() const;
  /// t -> e^{lambda t} g(t).
  SlowFunction times_exp(double lambda) const;

  /// 1/g when g = c e^{gamma t}; the quotient of anything else leaves the catalog.
  std::optional<SlowFunction> reciprocal() const;

  /// Largest absolute coefficient; used for tolerance scaling.
  double max_abs_coeff() const;
  /// Crude upper bound of |g| on [0, horizon]: sum |c| T^m max(1, e^{gamma T}).
  double abs_bound(double horizon) const;

  SlowFunction& operator+=(const SlowFunction& other);
  SlowFunction& operator-=(const SlowFunction& other);
  SlowFunction& operator*=(double s);

  friend SlowFunction operator+(SlowFunction a, const SlowFunction& b) { return a += b; }
  friend SlowFunction operator-(SlowFunction a, const SlowFunction& b) { return a -= b; }
  friend SlowFunction operator*(SlowFunction a, double s) { return a *= s; }
  friend SlowFunction operator*(double s, SlowFunction a) { return a *= s; }
  friend SlowFunction operator-(SlowFunction a) { return a *= -1.0; }
  friend SlowFunction operator*(const SlowFunction& a, const SlowFunction& b);

  friend bool operator==(const SlowFunction&, const SlowFunction&) = default;

 private:
  void normalize();

  std::vector<SlowTerm> terms_;
};

SlowFunction slow_derivative(const SlowFunction& g);
SlowFunction slow_integral_0_to_t(const SlowFunction& g);

/// t -> integral_0^t s^power e^{beta s} ds as a SlowFunction.
/// |beta| below `resonance_tol` takes the polynomial branch.
SlowFunction exp_poly_integral(int power, double beta, double resonance_tol = 1e-9);

}  // namespace osk

#endif  // OSK_SLOW_FUNCTION_HPP
