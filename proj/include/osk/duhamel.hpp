#ifndef OSK_DUHAMEL_HPP
#define OSK_DUHAMEL_HPP

#include <complex>

#include "osk/slow_function.hpp"

namespace osk {

/// Relative threshold on |gamma + lambda| below which the polynomial
/// (resonant) antiderivative branch is used.
inline constexpr double kResonanceTol = 1e-9;

/// integral_0^t e^{-lambda (t-s)} s^power e^{rate s} ds for a complex rate.
///
/// Uses a power series in beta = rate + lambda when |beta t| <= 2 and the
/// closed-form antiderivative otherwise; the closed form is arranged as
/// e^{rate t} P(t) - C e^{-lambda t} so large lambda never overflows.
std::complex<double> duhamel_term(double lambda, int power, std::complex<double> rate, double t);

/// integral_0^t e^{-n^2 (t-s)} g(s) ds, closed form.
double duhamel_weight(int n, const SlowFunction& g, double t);

/// Same integral with an arbitrary decay rate lambda >= 0.
double duhamel_weight(double lambda, const SlowFunction& g, double t);

/// t -> integral_0^t e^{-lambda (t-s)} g(s) ds as a SlowFunction.
SlowFunction duhamel_function(double lambda, const SlowFunction& g);

}  // namespace osk

#endif  // OSK_DUHAMEL_HPP
