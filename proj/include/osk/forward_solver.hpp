#ifndef OSK_FORWARD_SOLVER_HPP
#define OSK_FORWARD_SOLVER_HPP

#include <string>
#include <vector>

#include "osk/fast_profile.hpp"
#include "osk/grid_function.hpp"
#include "osk/sine_series.hpp"

namespace osk {

/// u_t = u_xx + f(x,t) r(t, omega t) on (0,pi) x (0,T), zero initial and
/// boundary data. The sine basis enforces the boundary condition.
struct HeatProblem {
  SineSeries f;
  SourceFactor r;
  double omega = 1.0;
  double horizon = 1.0;
  int n_max = 32;

  /// Throws InputError unless omega > 0, horizon > 0 and n_max >= 1.
  void validate() const;
};

/// Spectral amplitude u_n(t) = int_0^t e^{-n^2(t-s)} f_n(s) r(s, omega s) ds.
///
/// The oscillatory part is integrated exactly: each s^m e^{gamma s} cos/sin(k omega s)
/// product is the real/imaginary part of a Duhamel integral with complex rate
/// gamma + i k omega, so the cost and the accuracy do not depend on omega.
double solve_mode(int n, const HeatProblem& problem, double t);

/// Same amplitude by composite Gauss-Legendre with panels of width <= step.
/// Rejects step > pi / (2 omega), which would under-resolve the fast phase.
double solve_mode_quadrature(int n, const HeatProblem& problem, double t, double step);

/// u(x, t) at one point.
double solve_point(const HeatProblem& problem, double x, double t);

struct HeatSolution {
  GridFunction field;  // axes (x on [0,pi], t on [0,T])
  double tail_estimate = 0.0;
  std::vector<std::string> warnings;
};

/// u on an x_count x t_count grid. Adds a warning when the truncated tail
/// sum_{n > n_max} sup|f_n| sup|r| / n^2 exceeds tail_tolerance.
HeatSolution solve_heat(const HeatProblem& problem, std::size_t x_count, std::size_t t_count,
                        double tail_tolerance = 1e-8);

/// u(x0, .) on the t-grid by linear interpolation in x; x0 must lie in (0, pi).
GridFunction trace(const GridFunction& field, double x0);

}  // namespace osk

#endif  // OSK_FORWARD_SOLVER_HPP
