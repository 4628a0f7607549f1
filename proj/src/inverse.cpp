#include "osk/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "osk/duhamel.hpp"
#include "osk/error.hpp"
#include "osk/volterra.hpp"

namespace osk {

namespace {

void check_interior_point(double x, const char* what) {
  if (!(x > 0.0 && x < std::numbers::pi)) {
    std::ostringstream msg;
    msg << what << " = " << x << " must lie in (0, pi)";
    throw InputError(msg.str());
  }
}

void check_phi0_origin(const SlowFunction& phi0) {
  if (std::abs(phi0(0.0)) > 1e-12 * std::max(1.0, phi0.max_abs_coeff()))
    throw InputError("phi0(0) must be 0");
}

double sup_on_grid(const Axis& axis, const std::function<double(double)>& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < axis.count; ++i) m = std::max(m, std::abs(g(axis.node(i))));
  return m;
}

FastProfile divide_profile(const FastProfile& p, const SlowFunction& divisor) {
  if (p.is_zero()) return {};
  auto recip = divisor.reciprocal();
  if (!recip)
    throw InputError(
        "f(x0,t) is not of the form c*exp(gamma t); the quotient d(phi2)/dtau / f(x0,t) has no catalog form");
  return p.scaled(*recip);
}

/// Cubic Lagrange interpolation on a uniform 1-D grid.
double cubic_interpolate(const GridFunction& g, double s) {
  const Axis& a = g.axis(0);
  if (a.count < 4) return g.interpolate(s);
  const double pos = (s - a.start) / a.step();
  const auto base = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
  const std::size_t i0 = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(base, 0, std::ptrdiff_t(a.count) - 4));
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    double w = 1.0;
    for (std::size_t m = 0; m < 4; ++m)
      if (m != k) w *= (pos - double(i0 + m)) / double(std::ptrdiff_t(k) - std::ptrdiff_t(m));
    sum += w * g[i0 + k];
  }
  return sum;
}

}  // namespace

SlowFunction derive_phi1(const FastProfile& phi2, const SineSeries& f, double x0, int n_max) {
  check_interior_point(x0, "x0");
  const SineSeries ft = f.truncated(n_max);
  const double f00 = ft(x0, 0.0);
  if (std::abs(f00) < 1e-12) throw InputError("derive_phi1: f(x0, 0) = 0");
  // < int_0^tau d/dtau phi2(0,s) ds >_tau
  const double bracket = antiderivative_mean(fast_derivative(phi2))(0.0);
  SlowFunction out;
  if (bracket == 0.0) return out;
  for (const auto& [n, fn] : ft.modes())
    out += SlowFunction::exponential(bracket / f00 * fn(0.0) * std::sin(n * x0), -double(n) * n);
  return out;
}

Problem1Result recover_problem1(const ObservationP1& obs, const SineSeries& f, int n_max, std::size_t grid_points) {
  check_interior_point(obs.x0, "x0");
  if (!(obs.horizon > 0.0)) throw InputError("recover_problem1: horizon must be > 0");
  check_phi0_origin(obs.phi0);

  const SlowFunction g = f.truncated(n_max).at(obs.x0);
  const Axis axis{0.0, obs.horizon, grid_points};
  for (std::size_t i = 0; i < axis.count; ++i)
    if (std::abs(g(axis.node(i))) < 1e-10) {
      std::ostringstream msg;
      msg << "recover_problem1: f(x0, t) vanishes near t = " << axis.node(i);
      throw InputError(msg.str());
    }

  VolterraProblem vp;
  vp.diagonal = g;
  vp.kernel = build_kernel(f, obs.x0, n_max, obs.horizon);
  vp.rhs = obs.phi0.derivative();
  vp.horizon = obs.horizon;
  vp.grid_points = grid_points;

  Problem1Result out{solve(vp), divide_profile(fast_derivative(obs.phi2), g),
                     derive_phi1(obs.phi2, f, obs.x0, n_max), 0.0};
  if (obs.phi1) {
    const SlowFunction diff = *obs.phi1 - out.phi1;
    out.phi1_mismatch = sup_on_grid(axis, diff);
  }
  return out;
}

bool LambdaSpectrum::is_zero(int n) const { return std::find(zero_set.begin(), zero_set.end(), n) != zero_set.end(); }

LambdaSpectrum lambda_spectrum(const SlowFunction& r0, double t0, int n_max, double tolerance) {
  if (!(t0 > 0.0)) throw InputError("lambda_spectrum: t0 must be > 0");
  if (n_max < 1) throw InputError("lambda_spectrum: n_max must be >= 1");
  LambdaSpectrum s;
  s.t0 = t0;
  s.tolerance = tolerance;
  s.values.resize(n_max);
  s.floor = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const double value = duhamel_weight(n, r0, t0);
    const double n2 = double(n) * n;
    s.values[n - 1] = value;
    if (std::abs(value) < tolerance / n2) s.zero_set.push_back(n);
    s.floor = std::min(s.floor, n2 * value);
  }
  return s;
}

ObservationP2 observation_from_profile(const std::function<double(double)>& psi, double t0, int n_max,
                                       std::vector<std::string>& warnings) {
  ObservationP2 obs{t0, sine_coefficients(psi, n_max)};
  // Least-squares slope of log|psi_n| against log n over the modes above the
  // rounding floor; a smooth f makes psi_n = f_n Lambda_n decay like n^-4.
  double peak = 0.0;
  for (int n = 1; n <= n_max; ++n) peak = std::max(peak, std::abs(obs.psi.coefficient_value(n)));
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int n = 1; n <= n_max; ++n) {
    const double c = std::abs(obs.psi.coefficient_value(n));
    if (c <= 1e-12 * peak) continue;
    const double lx = std::log(double(n)), ly = std::log(c);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++count;
  }
  if (count >= 4) {
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    if (slope > -3.5) {
      std::ostringstream msg;
      msg << "psi coefficients decay like n^" << slope << ", slower than n^-4; the truncation at n_max = " << n_max
          << " may be inaccurate";
      warnings.push_back(msg.str());
    }
  }
  return obs;
}

const char* to_string(Solvability s) {
  switch (s) {
    case Solvability::unique: return "unique";
    case Solvability::non_unique: return "non_unique";
    case Solvability::unsolvable: return "unsolvable";
  }
  return "unknown";
}

Problem2Result recover_problem2(const ObservationP2& obs, const SlowFunction& r0, int n_max, double tol_lambda,
                                double tol_psi) {
  Problem2Result out;
  out.spectrum = lambda_spectrum(r0, obs.t0, n_max, tol_lambda);
  if (std::abs(r0(obs.t0)) < 1e-12) out.warnings.push_back("r0(t0) = 0; the Lambda_n floor is not guaranteed");
  for (const auto& [n, c] : obs.psi.modes())
    if (n > n_max && !c.is_zero()) {
      out.warnings.push_back("psi has modes above n_max; they are ignored");
      break;
    }

  std::vector<double> coeffs(n_max, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double psi_n = obs.psi.coefficient_value(n);
    if (out.spectrum.is_zero(n)) {
      out.zero_modes.push_back(n);
      if (std::abs(psi_n) > tol_psi) out.offending_modes.push_back(n);
      continue;  // f_n := 0 representative
    }
    coeffs[n - 1] = psi_n / out.spectrum.value(n);
  }
  out.f = SineSeries::from_constants(coeffs);
  if (!out.offending_modes.empty()) {
    out.status = Solvability::unsolvable;
  } else if (!out.zero_modes.empty()) {
    out.status = Solvability::non_unique;
  }
  return out;
}

Problem3Result recover_problem3(const ObservationP3& obs, const SlowFunction& r0, int n_max, std::size_t grid_points,
                                std::optional<double> tolerance, double tol_lambda) {
  check_interior_point(obs.x0, "x0");
  if (!(obs.horizon > 0.0)) throw InputError("recover_problem3: horizon must be > 0");
  check_phi0_origin(obs.phi0);

  Problem2Result p2 = recover_problem2({obs.t0, obs.psi}, r0, n_max, tol_lambda);
  if (!p2.zero_modes.empty()) {
    std::ostringstream msg;
    msg << "recover_problem3: Lambda_n(t0) vanishes for n = " << p2.zero_modes.front();
    throw InputError(msg.str());
  }

  Problem3Result out;
  out.f = p2.f;
  const double f_x0 = out.f(obs.x0);
  if (std::abs(f_x0) < 1e-12) throw InputError("recover_problem3: recovered f vanishes at x0");

  std::vector<std::pair<int, double>> weights;  // -n^2 f_n sin(n x0)
  for (const auto& [n, fn] : out.f.modes()) weights.emplace_back(n, -double(n) * n * fn(0.0) * std::sin(n * obs.x0));
  const SlowFunction dphi0 = obs.phi0.derivative();
  const Axis axis{0.0, obs.horizon, grid_points};
  out.congruence_residual = sup_on_grid(axis, [&](double t) {
    double lhs = f_x0 * r0(t);
    for (const auto& [n, w] : weights) lhs += w * duhamel_weight(n, r0, t);
    return lhs - dphi0(t);
  });
  out.tolerance = tolerance.value_or(1e-6 * (1.0 + sup_on_grid(axis, dphi0)));
  out.consistent = out.congruence_residual <= out.tolerance;
  out.r1 = fast_derivative(obs.phi2).scaled(1.0 / f_x0);
  out.phi1 = derive_phi1(obs.phi2, out.f, obs.x0, n_max);
  return out;
}

void ObservationP4::validate() const {
  const int n = harmonics();
  if (n < 1) throw InputError("ObservationP4: at least one x point is required");
  if (alpha.size() + 1 != x_points.size())
    throw InputError("ObservationP4: need one alpha function per x point beyond x0");
  for (int j = 0; j < n; ++j) {
    check_interior_point(x_points[j], "x point");
    for (int k = 0; k < j; ++k)
      if (x_points[j] == x_points[k]) throw InputError("ObservationP4: x points must be distinct");
  }
  if (!(delta > 0.0)) throw InputError("ObservationP4: delta must be > 0");
  if (!(t0 - delta > 0.0 && t0 + delta < horizon))
    throw InputError("ObservationP4: window (t0 - delta, t0 + delta) must lie inside (0, T)");
  check_phi0_origin(phi0);
}

namespace {

Eigen::MatrixXd sine_matrix(const ObservationP4& obs) {
  const int n = obs.harmonics();
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 1; k <= n; ++k) a(j, k - 1) = std::sin(k * obs.x_points[j]);
  return a;
}

double rcond_of(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return s(0) == 0.0 ? 0.0 : s(s.size() - 1) / s(0);
}

std::vector<double> solve_checked(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs) {
  const double rc = rcond_of(a);
  if (rc < 1e-10) {
    std::ostringstream msg;
    msg << "sine matrix (sin n x_j) is ill-conditioned: rcond = " << rc;
    throw SingularError(msg.str());
  }
  Eigen::VectorXd x = a.fullPivLu().solve(rhs);
  return {x.data(), x.data() + x.size()};
}

}  // namespace

double system_rcond(const ObservationP4& obs) {
  obs.validate();
  return rcond_of(sine_matrix(obs));
}

std::vector<double> solve_psi_system(const ObservationP4& obs) {
  obs.validate();
  const int n = obs.harmonics();
  Eigen::VectorXd rhs(n);
  rhs(0) = obs.phi0(obs.t0);
  for (int j = 1; j < n; ++j) rhs(j) = obs.alpha[j - 1](obs.t0);
  return solve_checked(sine_matrix(obs), rhs);
}

std::vector<double> solve_f_system(const ObservationP4& obs, const std::vector<double>& psi) {
  obs.validate();
  const int n = obs.harmonics();
  if (static_cast<int>(psi.size()) != n) throw InputError("solve_f_system: psi has the wrong length");
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += double(k) * k * psi[k - 1] * std::sin(k * obs.x_points[j]);
    const SlowFunction& data = j == 0 ? obs.phi0 : obs.alpha[j - 1];
    rhs(j) = s + data.derivative()(obs.t0);
  }
  return solve_checked(sine_matrix(obs), rhs);
}

Problem4Result recover_problem4(const ObservationP4& obs, std::size_t grid_points, std::optional<double> tolerance) {
  obs.validate();
  const int n_harm = obs.harmonics();
  const double x0 = obs.x_points[0];

  Problem4Result out;
  out.rcond = system_rcond(obs);
  out.psi = solve_psi_system(obs);
  out.f_system = solve_f_system(obs, out.psi);
  const SineSeries f_sys = SineSeries::from_constants(out.f_system);
  const double f_x0 = f_sys(x0);
  if (std::abs(f_x0) < 1e-12) throw InputError("recover_problem4: sum_n f_n sin(n x0) = 0");

  VolterraProblem vp;
  vp.diagonal = [f_x0](double) { return f_x0; };
  vp.kernel = build_kernel(f_sys, x0, n_harm, obs.horizon);
  vp.rhs = obs.phi0.derivative();
  vp.horizon = obs.horizon;
  vp.grid_points = grid_points;

  VolterraProblem vp_fine = vp;
  vp_fine.grid_points = 2 * grid_points - 1;
  const GridFunction l = solve(vp);
  const GridFunction l_fine = solve(vp_fine);
  std::vector<double> extrapolated(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) extrapolated[i] = (4.0 * l_fine[2 * i] - l[i]) / 3.0;
  const GridFunction l_ext(l.axis(0), std::move(extrapolated));

  out.l_at_t0 = cubic_interpolate(l_ext, obs.t0);
  if (std::abs(out.l_at_t0) < 1e-10) throw InputError("recover_problem4: Volterra solution vanishes at t0");

  std::vector<double> r0(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) r0[i] = l[i] / out.l_at_t0;
  out.r0 = GridFunction(l.axis(0), std::move(r0));
  out.f = f_sys.scaled(out.l_at_t0);
  out.r1 = fast_derivative(obs.phi2).scaled(1.0 / (f_x0 * out.l_at_t0));
  out.phi1 = derive_phi1(obs.phi2, out.f, x0, n_harm);

  // sum_n sin(n x_j) F_n int_0^t e^{-n^2 (t-s)} l(s) ds  vs  alpha_j(t) on the window
  std::vector<std::vector<double>> duhamel(n_harm);
  for (int k = 1; k <= n_harm; ++k) {
    const double lambda = double(k) * k;
    const auto coarse = discrete_duhamel(l, lambda);
    const auto fine = discrete_duhamel(l_fine, lambda);
    duhamel[k - 1].resize(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) duhamel[k - 1][i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
  }
  const Axis& axis = l.axis(0);
  double alpha_norm = 0.0;
  out.consistency_residuals.assign(obs.alpha.size(), 0.0);
  for (std::size_t i = 0; i < axis.count; ++i) {
    const double t = axis.node(i);
    if (t < obs.t0 - obs.delta || t > obs.t0 + obs.delta) continue;
    for (std::size_t j = 0; j < obs.alpha.size(); ++j) {
      const double xj = obs.x_points[j + 1];
      double lhs = 0.0;
      for (int k = 1; k <= n_harm; ++k) lhs += std::sin(k * xj) * out.f_system[k - 1] * duhamel[k - 1][i];
      const double a = obs.alpha[j](t);
      alpha_norm = std::max(alpha_norm, std::abs(a));
      out.consistency_residuals[j] = std::max(out.consistency_residuals[j], std::abs(lhs - a));
    }
  }
  for (double r : out.consistency_residuals) out.consistency_residual = std::max(out.consistency_residual, r);
  out.tolerance = tolerance.value_or(1e-6 * (1.0 + alpha_norm));
  out.consistent = out.consistency_residual <= out.tolerance;
  return out;
}

}  // namespace osk
