#include "osk/volterra.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "osk/error.hpp"

namespace osk {

SeparableKernel::SeparableKernel(std::vector<KernelMode> modes, double tail_bound)
    : modes_(std::move(modes)), tail_bound_(tail_bound) {
  for (const auto& m : modes_)
    if (m.n < 1) throw InputError("SeparableKernel: mode index must be >= 1");
}

double SeparableKernel::operator()(double t, double s) const {
  double sum = 0.0;
  for (const auto& m : modes_) sum += m.coeff(s) * std::exp(-double(m.n) * m.n * (t - s));
  return sum;
}

SeparableKernel build_kernel(const SineSeries& f, double x0, int n_max, double horizon) {
  if (!(x0 > 0.0 && x0 < std::numbers::pi)) throw InputError("build_kernel: x0 must lie in (0, pi)");
  std::vector<KernelMode> modes;
  double tail = 0.0;
  for (const auto& [n, fn] : f.modes()) {
    const double weight = double(n) * n * std::sin(n * x0);
    if (n > n_max) {
      tail += std::abs(weight) * fn.abs_bound(horizon);
      continue;
    }
    SlowFunction c = -weight * fn;
    if (!c.is_zero()) modes.push_back({n, std::move(c)});
  }
  return SeparableKernel(std::move(modes), tail);
}

namespace {

struct Samples {
  Axis axis;
  std::vector<double> g;
  std::vector<double> mu;
};

Samples sample_data(const VolterraProblem& p) {
  if (!p.diagonal || !p.rhs) throw InputError("Volterra: diagonal and rhs must be set");
  if (!(p.horizon > 0.0)) throw InputError("Volterra: horizon must be > 0");
  if (p.grid_points < 2) throw InputError("Volterra: grid needs at least 2 points");
  Samples s{Axis{0.0, p.horizon, p.grid_points}, {}, {}};
  s.g.resize(p.grid_points);
  s.mu.resize(p.grid_points);
  for (std::size_t i = 0; i < p.grid_points; ++i) {
    const double t = s.axis.node(i);
    s.g[i] = p.diagonal(t);
    s.mu[i] = p.rhs(t);
    if (!std::isfinite(s.mu[i])) throw InputError("Volterra: non-finite right-hand side");
    if (!std::isfinite(s.g[i])) throw InputError("Volterra: non-finite diagonal coefficient");
    if (std::abs(s.g[i]) < p.min_diagonal) {
      std::ostringstream msg;
      msg << "Volterra: diagonal coefficient |g(" << t << ")| = " << std::abs(s.g[i]) << " below "
          << p.min_diagonal;
      throw InputError(msg.str());
    }
  }
  return s;
}

double checked_divide(double numerator, double denominator, double t) {
  if (std::abs(denominator) < 1e-12) {
    std::ostringstream msg;
    msg << "Volterra: singular step at t = " << t;
    throw SingularError(msg.str());
  }
  return numerator / denominator;
}

std::vector<double> march_separable(const Samples& s, const SeparableKernel& kernel) {
  const std::size_t m = s.axis.count;
  const double h = s.axis.step();
  const auto modes = kernel.modes();
  // coeff[k][i] = c_k(t_i)
  std::vector<std::vector<double>> coeff(modes.size(), std::vector<double>(m));
  std::vector<double> decay(modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) coeff[k][i] = modes[k].coeff(s.axis.node(i));
    decay[k] = std::exp(-double(modes[k].n) * modes[k].n * h);
  }
  // history[k] = sum_{j<i} w_j c_k(t_j) e^{-n^2 (t_i - t_j)} l_j, w_0 = 1/2
  std::vector<double> history(modes.size(), 0.0);
  std::vector<double> l(m);
  l[0] = checked_divide(s.mu[0], s.g[0], 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    const double w_prev = (i == 1) ? 0.5 : 1.0;
    double hist = 0.0;
    double diag = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      history[k] = decay[k] * (history[k] + w_prev * coeff[k][i - 1] * l[i - 1]);
      hist += history[k];
      diag += coeff[k][i];
    }
    l[i] = checked_divide(s.mu[i] - h * hist, s.g[i] + 0.5 * h * diag, s.axis.node(i));
  }
  return l;
}

std::vector<double> march_general(const Samples& s, const KernelFunction& kernel) {
  if (!kernel) throw InputError("Volterra: kernel callable is empty");
  const std::size_t m = s.axis.count;
  const double h = s.axis.step();
  std::vector<double> l(m);
  l[0] = checked_divide(s.mu[0], s.g[0], 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    const double t = s.axis.node(i);
    double hist = 0.5 * kernel(t, 0.0) * l[0];
    for (std::size_t j = 1; j < i; ++j) hist += kernel(t, s.axis.node(j)) * l[j];
    l[i] = checked_divide(s.mu[i] - h * hist, s.g[i] + 0.5 * h * kernel(t, t), t);
  }
  return l;
}

double kernel_at(const VolterraProblem& p, double t, double s) {
  return std::visit([&](const auto& k) { return k(t, s); }, p.kernel);
}

}  // namespace

GridFunction solve(const VolterraProblem& problem) {
  const Samples s = sample_data(problem);
  std::vector<double> l = std::visit(
      [&](const auto& k) {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, SeparableKernel>) {
          return march_separable(s, k);
        } else {
          return march_general(s, k);
        }
      },
      problem.kernel);
  return GridFunction(s.axis, std::move(l));
}

GridFunction solve_extrapolated(const VolterraProblem& problem) {
  VolterraProblem fine = problem;
  fine.grid_points = 2 * problem.grid_points - 1;
  const GridFunction coarse_l = solve(problem);
  const GridFunction fine_l = solve(fine);
  std::vector<double> out(problem.grid_points);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine_l[2 * i] - coarse_l[i]) / 3.0;
  return GridFunction(coarse_l.axis(0), std::move(out));
}

double discrete_residual(const VolterraProblem& problem, const GridFunction& solution) {
  const Axis& a = solution.axis(0);
  const double h = a.step();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.count; ++i) {
    const double t = a.node(i);
    double integral = 0.0;
    if (i > 0) {
      integral = 0.5 * kernel_at(problem, t, 0.0) * solution[0] + 0.5 * kernel_at(problem, t, t) * solution[i];
      for (std::size_t j = 1; j < i; ++j) integral += kernel_at(problem, t, a.node(j)) * solution[j];
      integral *= h;
    }
    const double lhs = problem.diagonal(t) * solution[i] + integral;
    worst = std::max(worst, std::abs(lhs - problem.rhs(t)));
  }
  return worst;
}

std::vector<double> discrete_duhamel(const GridFunction& l, double lambda) {
  const Axis& a = l.axis(0);
  const double h = a.step();
  const double decay = std::exp(-lambda * h);
  std::vector<double> out(a.count, 0.0);
  // out_i = h [ e^{-lambda t_i} l_0 / 2 + sum_{0<j<i} e^{-lambda (t_i - t_j)} l_j + l_i / 2 ]
  double history = 0.0;  // sum_{j<i} w_j e^{-lambda (t_i - t_j)} l_j with w_0 = 1/2
  for (std::size_t i = 1; i < a.count; ++i) {
    const double w_prev = (i == 1) ? 0.5 : 1.0;
    history = decay * (history + w_prev * l[i - 1]);
    out[i] = h * (history + 0.5 * l[i]);
  }
  return out;
}

ConvergenceReport convergence_order(const VolterraProblem& problem, std::span<const std::size_t> ladder,
                                    const std::function<double(double)>& exact) {
  if (ladder.size() < 2) throw InputError("convergence_order: ladder needs at least two grids");
  std::vector<GridFunction> sols;
  for (std::size_t m : ladder) {
    VolterraProblem p = problem;
    p.grid_points = m;
    sols.push_back(solve(p));
  }

  ConvergenceReport rep;
  std::vector<double> steps;
  if (exact) {
    for (const auto& s : sols) {
      double err = 0.0;
      for (std::size_t i = 0; i < s.axis(0).count; ++i)
        err = std::max(err, std::abs(s[i] - exact(s.axis(0).node(i))));
      rep.grids.push_back(s.axis(0).count);
      rep.errors.push_back(err);
      steps.push_back(s.axis(0).step());
    }
  } else {
    for (std::size_t k = 0; k + 1 < sols.size(); ++k) {
      double err = 0.0;
      const auto& coarse = sols[k];
      for (std::size_t i = 0; i < coarse.axis(0).count; ++i)
        err = std::max(err, std::abs(coarse[i] - sols[k + 1].interpolate(coarse.axis(0).node(i))));
      rep.grids.push_back(coarse.axis(0).count);
      rep.errors.push_back(err);
      steps.push_back(coarse.axis(0).step());
    }
  }

  double max_err = 0.0;
  for (double e : rep.errors) max_err = std::max(max_err, e);
  if (max_err < 1e-13 || rep.errors.size() < 2) {
    rep.degenerate = true;
    rep.order = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(rep.errors.size());
  for (std::size_t k = 0; k < rep.errors.size(); ++k) {
    if (k > 0) {
      if (!(rep.errors[k] < rep.errors[k - 1])) rep.monotone = false;
      rep.pair_orders.push_back(std::log(rep.errors[k - 1] / rep.errors[k]) / std::log(steps[k - 1] / steps[k]));
    }
    const double x = std::log(steps[k]);
    const double y = std::log(rep.errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

}  // namespace osk
