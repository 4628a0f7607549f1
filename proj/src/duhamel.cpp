#include "osk/duhamel.hpp"

#include <algorithm>
#include <cmath>

#include "osk/error.hpp"

namespace osk {

using cplx = std::complex<double>;

cplx duhamel_term(double lambda, int power, cplx rate, double t) {
  if (t == 0.0) return 0.0;
  if (t < 0.0) throw InputError("duhamel_term: t must be >= 0");
  const cplx beta = rate + lambda;
  const double decay = std::exp(-lambda * t);
  double t_pow = 1.0;
  for (int i = 0; i <= power; ++i) t_pow *= t;  // t^{m+1}

  if (std::abs(beta) < kResonanceTol * std::max(1.0, lambda)) {
    return decay * t_pow / double(power + 1);
  }

  const cplx z = beta * t;
  if (std::abs(z) <= 2.0) {
    // t^{m+1} sum_k z^k / (k! (m+k+1))
    cplx sum = 0.0;
    cplx zk = 1.0;
    double k_fact = 1.0;
    for (int k = 0; k < 60; ++k) {
      cplx term = zk / (k_fact * double(power + k + 1));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      zk *= z;
      k_fact *= double(k + 1);
    }
    return decay * t_pow * sum;
  }

  // e^{rate t} sum_j (-1)^j m!/(m-j)! t^{m-j} / beta^{j+1}  -  e^{-lambda t} (-1)^m m! / beta^{m+1}
  const cplx inv_beta = 1.0 / beta;
  cplx poly = 0.0;
  double falling = 1.0;
  cplx beta_pow = inv_beta;
  for (int j = 0; j <= power; ++j) {
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    poly += sign * falling * std::pow(t, power - j) * beta_pow;
    if (j < power) falling *= double(power - j);
    beta_pow *= inv_beta;
  }
  // here falling == m! and beta_pow == beta^{-(m+2)}
  const double sign_m = (power % 2 == 0) ? 1.0 : -1.0;
  const cplx tail = sign_m * falling * beta_pow * beta;
  return std::exp(rate * t) * poly - decay * tail;
}

double duhamel_weight(double lambda, const SlowFunction& g, double t) {
  double sum = 0.0;
  for (const auto& term : g.terms()) sum += term.coeff * duhamel_term(lambda, term.power, term.rate, t).real();
  return sum;
}

double duhamel_weight(int n, const SlowFunction& g, double t) {
  if (n < 1) throw InputError("duhamel_weight: mode index must be >= 1");
  return duhamel_weight(double(n) * n, g, t);
}

SlowFunction duhamel_function(double lambda, const SlowFunction& g) {
  SlowFunction out;
  const double tol = kResonanceTol * std::max(1.0, lambda);
  for (const auto& term : g.terms())
    out += term.coeff * exp_poly_integral(term.power, term.rate + lambda, tol).times_exp(-lambda);
  return out;
}

}  // namespace osk
