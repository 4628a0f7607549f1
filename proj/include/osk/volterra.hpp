#ifndef OSK_VOLTERRA_HPP
#define OSK_VOLTERRA_HPP

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "osk/grid_function.hpp"
#include "osk/sine_series.hpp"
#include "osk/slow_function.hpp"

namespace osk {

/// c(s) e^{-n^2 (t-s)}
struct KernelMode {
  int n = 1;
  SlowFunction coeff;
};

/// K(t,s) = sum_n c_n(s) e^{-n^2 (t-s)}.
class SeparableKernel {
 public:
  SeparableKernel() = default;
  explicit SeparableKernel(std::vector<KernelMode> modes, double tail_bound = 0.0);

  double operator()(double t, double s) const;
  std::span<const KernelMode> modes() const { return modes_; }
  /// Bound on the dropped modes, sum_{n > n_max} n^2 sup|f_n| |sin n x0|.
  double tail_bound() const { return tail_bound_; }

 private:
  std::vector<KernelMode> modes_;
  double tail_bound_ = 0.0;
};

using KernelFunction = std::function<double(double t, double s)>;

/// Kernel K(t,s) = -sum_{n <= n_max} n^2 f_n(s) e^{-n^2 (t-s)} sin(n x0).
/// `horizon` only feeds the tail bound.
SeparableKernel build_kernel(const SineSeries& f, double x0, int n_max, double horizon = 1.0);

/// g(t) l(t) + int_0^t K(t,s) l(s) ds = mu(t) on [0, horizon].
struct VolterraProblem {
  std::function<double(double)> diagonal;
  std::variant<SeparableKernel, KernelFunction> kernel;
  std::function<double(double)> rhs;
  double horizon = 1.0;
  std::size_t grid_points = 2048;
  /// |g| must stay above this on the grid.
  double min_diagonal = 1e-10;
};

/// Product-trapezoidal marching on a uniform grid of `grid_points` nodes:
///
///   l_i = [mu_i - h (K_i0 l_0 / 2 + sum_{0<j<i} K_ij l_j)] / [g_i + h K_ii / 2].
///
/// Separable kernels are summed with a per-mode recursion (O(M modes) instead
/// of O(M^2 modes)); the discrete scheme is the same. Throws InputError on
/// non-finite data or a small diagonal, SingularError when a denominator
/// drops below 1e-12.
GridFunction solve(const VolterraProblem& problem);

/// Richardson combination (4 l_{h/2} - l_h) / 3 of solves on grid_points and
/// 2 grid_points - 1 nodes, reported on the coarse grid. Fourth order for smooth data.
GridFunction solve_extrapolated(const VolterraProblem& problem);

/// max_i |discrete left side - mu_i| for a grid solution (same trapezoid weights).
double discrete_residual(const VolterraProblem& problem, const GridFunction& solution);

/// Trapezoidal int_0^{t_i} e^{-lambda (t_i - s)} l(s) ds at every node of l's grid.
std::vector<double> discrete_duhamel(const GridFunction& l, double lambda);

struct ConvergenceReport {
  std::vector<std::size_t> grids;
  std::vector<double> errors;
  std::vector<double> pair_orders;  // log ratio between successive grids
  double order = 0.0;               // least-squares slope of log error vs log h
  bool monotone = true;
  bool degenerate = false;          // errors at machine level, order meaningless
};

/// Observed order over a grid ladder. With `exact`, errors are sup |l - exact|
/// at the nodes; without it, each grid is compared with the next finer one
/// (linearly interpolated), so the report has one entry fewer.
ConvergenceReport convergence_order(const VolterraProblem& problem, std::span<const std::size_t> ladder,
                                    const std::function<double(double)>& exact = {});

}  // namespace osk

#endif  // OSK_VOLTERRA_HPP
