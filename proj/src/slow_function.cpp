#include "osk/slow_function.hpp"

#include <algorithm>
#include <cmath>

#include "osk/error.hpp"

namespace osk {

namespace {

double int_pow(double t, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= t;
  return r;
}

}  // namespace

SlowFunction::SlowFunction(std::vector<SlowTerm> terms) : terms_(std::move(terms)) {
  for (const auto& term : terms_) {
    if (term.power < 0) throw InputError("SlowFunction: negative power");
    if (!std::isfinite(term.coeff) || !std::isfinite(term.rate))
      throw InputError("SlowFunction: non-finite coefficient or rate");
  }
  normalize();
}

SlowFunction SlowFunction::constant(double c) { return SlowFunction({{c, 0, 0.0}}); }

SlowFunction SlowFunction::monomial(double coeff, int power, double rate) {
  return SlowFunction({{coeff, power, rate}});
}

void SlowFunction::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const SlowTerm& a, const SlowTerm& b) {
    if (a.rate != b.rate) return a.rate < b.rate;
    return a.power < b.power;
  });
  std::vector<SlowTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& term : terms_) {
    if (!merged.empty() && merged.back().rate == term.rate && merged.back().power == term.power) {
      merged.back().coeff += term.coeff;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const SlowTerm& t) { return t.coeff == 0.0; });
  terms_ = std::move(merged);
}

double SlowFunction::operator()(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    double e = term.rate == 0.0 ? 1.0 : std::exp(term.rate * t);
    sum += term.coeff * int_pow(t, term.power) * e;
  }
  return sum;
}

SlowFunction SlowFunction::derivative() const {
  std::vector<SlowTerm> out;
  out.reserve(2 * terms_.size());
  for (const auto& term : terms_) {
    if (term.power > 0) out.push_back({term.coeff * term.power, term.power - 1, term.rate});
    if (term.rate != 0.0) out.push_back({term.coeff * term.rate, term.power, term.rate});
  }
  return SlowFunction(std::move(out));
}

SlowFunction SlowFunction::integral() const {
  SlowFunction out;
  for (const auto& term : terms_) out += term.coeff * exp_poly_integral(term.power, term.rate);
  return out;
}

SlowFunction SlowFunction::times_exp(double lambda) const {
  std::vector<SlowTerm> out(terms_.begin(), terms_.end());
  for (auto& term : out) term.rate += lambda;
  return SlowFunction(std::move(out));
}

std::optional<SlowFunction> SlowFunction::reciprocal() const {
  if (terms_.size() != 1 || terms_[0].power != 0) return std::nullopt;
  return SlowFunction::exponential(1.0 / terms_[0].coeff, -terms_[0].rate);
}

double SlowFunction::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& term : terms_) m = std::max(m, std::abs(term.coeff));
  return m;
}

double SlowFunction::abs_bound(double horizon) const {
  double b = 0.0;
  for (const auto& term : terms_)
    b += std::abs(term.coeff) * int_pow(horizon, term.power) * std::max(1.0, std::exp(term.rate * horizon));
  return b;
}

SlowFunction& SlowFunction::operator+=(const SlowFunction& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

SlowFunction& SlowFunction::operator-=(const SlowFunction& other) { return *this += -1.0 * other; }

SlowFunction& SlowFunction::operator*=(double s) {
  for (auto& term : terms_) term.coeff *= s;
  normalize();
  return *this;
}

SlowFunction operator*(const SlowFunction& a, const SlowFunction& b) {
  std::vector<SlowTerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.push_back({x.coeff * y.coeff, x.power + y.power, x.rate + y.rate});
  return SlowFunction(std::move(out));
}

SlowFunction slow_derivative(const SlowFunction& g) { return g.derivative(); }

SlowFunction slow_integral_0_to_t(const SlowFunction& g) { return g.integral(); }

SlowFunction exp_poly_integral(int power, double beta, double resonance_tol) {
  if (std::abs(beta) < resonance_tol) {
    return SlowFunction::monomial(1.0 / (power + 1), power + 1, 0.0);
  }
  // e^{beta t} sum_j (-1)^j m!/(m-j)! t^{m-j} / beta^{j+1}  -  (-1)^m m! / beta^{m+1}
  std::vector<SlowTerm> out;
  double falling = 1.0;  // m!/(m-j)!
  double inv_beta = 1.0 / beta;
  double beta_pow = inv_beta;
  for (int j = 0; j <= power; ++j) {
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out.push_back({sign * falling * beta_pow, power - j, beta});
    falling *= (power - j);
    beta_pow *= inv_beta;
  }
  // after the loop falling == 0 for j=power+1; recompute m! separately
  double factorial = 1.0;
  for (int i = 2; i <= power; ++i) factorial *= i;
  double sign_m = (power % 2 == 0) ? 1.0 : -1.0;
  out.push_back({-sign_m * factorial * std::pow(inv_beta, power + 1), 0, 0.0});
  return SlowFunction(std::move(out));
}

}  // namespace osk
