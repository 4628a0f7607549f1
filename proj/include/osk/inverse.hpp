#ifndef OSK_INVERSE_HPP
#define OSK_INVERSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "osk/fast_profile.hpp"
#include "osk/grid_function.hpp"
#include "osk/sine_series.hpp"

namespace osk {

// ---------------------------------------------------------------------------
// Recovering the time factor r from the two-term trace at one point
// ---------------------------------------------------------------------------

/// Two-term trace data at x0: u(x0,t) ~ phi0(t) + (phi1(t) + phi2(t, omega t)) / omega.
struct ObservationP1 {
  double x0 = 0.0;
  double horizon = 1.0;
  SlowFunction phi0;                 // phi0(0) = 0
  FastProfile phi2;                  // zero fast mean by construction
  std::optional<SlowFunction> phi1;  // derived from phi2 and f when absent
};

/// phi1(t) = <int_0^tau d/dtau phi2(0,s) ds> / f(x0,0) * sum_n f_n(0) sin(n x0) e^{-n^2 t}.
/// The bracket equals -phi2(0,0). Throws InputError when f(x0,0) = 0.
SlowFunction derive_phi1(const FastProfile& phi2, const SineSeries& f, double x0, int n_max);

struct Problem1Result {
  GridFunction r0;          // Volterra solution on [0, horizon]
  FastProfile r1;           // d(phi2)/dtau / f(x0,t)
  SlowFunction phi1;        // compatibility function implied by phi2 and f
  double phi1_mismatch = 0; // sup |given phi1 - derived phi1| when phi1 was supplied
};

/// r0 solves f(x0,t) r0(t) + int_0^t K(t,s) r0(s) ds = phi0'(t) with the
/// kernel from build_kernel; r1 = d(phi2)/dtau / f(x0,t). The closed-form
/// r1 needs f(x0,t) = c e^{gamma t} (constant in t being the usual case).
Problem1Result recover_problem1(const ObservationP1& obs, const SineSeries& f, int n_max,
                                std::size_t grid_points = 2048);

// ---------------------------------------------------------------------------
// Recovering the space factor f from the leading term at one time
// ---------------------------------------------------------------------------

/// Lambda_n(t0) = int_0^t0 e^{-n^2 (t0-s)} r0(s) ds, n = 1..n_max.
struct LambdaSpectrum {
  double t0 = 0.0;
  double tolerance = 1e-10;
  std::vector<double> values;  // values[n-1] = Lambda_n
  std::vector<int> zero_set;   // n with |Lambda_n| < tolerance * n^-2
  double floor = 0.0;          // min_n n^2 Lambda_n

  double value(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
  bool is_zero(int n) const;
};

LambdaSpectrum lambda_spectrum(const SlowFunction& r0, double t0, int n_max, double tolerance = 1e-10);

/// psi(x) = u0(x, t0).
struct ObservationP2 {
  double t0 = 1.0;
  SineSeries psi;
};

/// Builds an ObservationP2 from a sampled profile. Appends a warning to
/// `warnings` when the coefficients decay visibly slower than n^-4.
ObservationP2 observation_from_profile(const std::function<double(double)>& psi, double t0, int n_max,
                                       std::vector<std::string>& warnings);

enum class Solvability { unique, non_unique, unsolvable };

const char* to_string(Solvability s);

struct Problem2Result {
  SineSeries f;
  Solvability status = Solvability::unique;
  std::vector<int> zero_modes;       // the set M0
  std::vector<int> offending_modes;  // n in M0 with psi_n != 0
  LambdaSpectrum spectrum;
  std::vector<std::string> warnings;
};

/// f_n = psi_n / Lambda_n off M0. On M0, psi_n = 0 gives f_n = 0 with a
/// non-uniqueness flag; psi_n != 0 makes the problem unsolvable and the
/// offending indices are reported.
Problem2Result recover_problem2(const ObservationP2& obs, const SlowFunction& r0, int n_max,
                                double tol_lambda = 1e-10, double tol_psi = 1e-12);

// ---------------------------------------------------------------------------
// Recovering f and r1 with r0 known
// ---------------------------------------------------------------------------

struct ObservationP3 {
  double t0 = 1.0;
  SineSeries psi;
  double x0 = 0.0;
  double horizon = 1.0;
  SlowFunction phi0;
  FastProfile phi2;
};

struct Problem3Result {
  SineSeries f;
  FastProfile r1;
  SlowFunction phi1;
  double congruence_residual = 0.0;  // sup_t |f(x0) r0 + int K r0 - phi0'|
  double tolerance = 0.0;
  bool consistent = true;
};

/// f from the Problem-2 division (every Lambda_n must be nonzero), then the
/// congruence of phi0 with the known r0 is checked on a grid_points grid.
/// Default tolerance 1e-6 (1 + sup|phi0'|).
Problem3Result recover_problem3(const ObservationP3& obs, const SlowFunction& r0, int n_max,
                                std::size_t grid_points = 2048, std::optional<double> tolerance = {},
                                double tol_lambda = 1e-10);

// ---------------------------------------------------------------------------
// Recovering both factors for an N-harmonic f
// ---------------------------------------------------------------------------

/// x_points[0] = x0 carries the two-term trace; x_points[j], j >= 1, carry
/// alpha[j-1](t) = u0(x_j, t) on the window (t0 - delta, t0 + delta).
struct ObservationP4 {
  double t0 = 1.0;
  double delta = 0.5;
  double horizon = 2.0;
  std::vector<double> x_points;
  SlowFunction phi0;
  FastProfile phi2;
  std::vector<SlowFunction> alpha;

  int harmonics() const { return static_cast<int>(x_points.size()); }
  /// Throws InputError on a malformed observation.
  void validate() const;
};

/// Smallest/largest singular value ratio of A = (sin n x_j).
double system_rcond(const ObservationP4& obs);

/// Solves sum_n psi_n sin(n x_j) = (phi0(t0), alpha_j(t0)).
/// Throws SingularError when rcond(A) < 1e-10.
std::vector<double> solve_psi_system(const ObservationP4& obs);

/// Solves sum_n f_n sin(n x_j) = sum_n n^2 psi_n sin(n x_j) + (phi0'(t0), alpha_j'(t0)).
std::vector<double> solve_f_system(const ObservationP4& obs, const std::vector<double>& psi);

struct Problem4Result {
  std::vector<double> psi;
  std::vector<double> f_system;           // F, as solved from the second system
  SineSeries f;                           // F scaled by l(t0)
  double l_at_t0 = 1.0;
  GridFunction r0{Axis{}, {0.0, 0.0}};    // l / l(t0)
  FastProfile r1;
  SlowFunction phi1;
  std::vector<double> consistency_residuals;  // per alpha_j
  double consistency_residual = 0.0;
  double tolerance = 0.0;
  bool consistent = true;
  double rcond = 0.0;
};

/// psi, then F, then l from the Volterra equation with g = F(x0), the
/// N-mode kernel and mu = phi0'. Normalizes r0(t0) = 1 (f absorbs l(t0)).
/// The consistency residual is evaluated on window nodes from Richardson-
/// extrapolated Volterra/trapezoid data so it sits far below the O(h^2)
/// error of r0 itself. Default tolerance 1e-6 (1 + sup|alpha|).
Problem4Result recover_problem4(const ObservationP4& obs, std::size_t grid_points = 2048,
                                std::optional<double> tolerance = {});

}  // namespace osk

#endif  // OSK_INVERSE_HPP
