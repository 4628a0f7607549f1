#ifndef OSK_ASYMPTOTICS_HPP
#define OSK_ASYMPTOTICS_HPP

#include <vector>

#include "osk/fast_profile.hpp"
#include "osk/forward_solver.hpp"
#include "osk/grid_function.hpp"
#include "osk/sine_series.hpp"

namespace osk {

/// Averaged-source solution u0(x,t) = sum_n sin(nx) int_0^t e^{-n^2(t-s)} f_n(s) r0(s) ds.
class LeadingTerm {
 public:
  LeadingTerm(const SineSeries& f, const SlowFunction& r0, int n_max);

  double operator()(double x, double t) const;
  /// u0(x, .) in closed form.
  SlowFunction trace(double x) const;
  /// d/dt u0 - d2/dx2 u0 - f r0 at (x,t), from the closed-form mode amplitudes.
  double pde_residual(double x, double t) const;

 private:
  struct Mode {
    int n;
    SlowFunction forcing;    // f_n r0
    SlowFunction amplitude;  // Duhamel integral of forcing
  };
  std::vector<Mode> modes_;
};

/// Fast corrector v1(x,t,tau) = f(x,t) * (zero-mean tau-antiderivative of r1).
class Corrector {
 public:
  Corrector(const SineSeries& f, const FastProfile& r1, int n_max);

  double operator()(double x, double t, double tau) const;
  /// v1(x, ., .) as a fast profile.
  FastProfile trace(double x) const;
  /// d v1 / d tau, which must reproduce f r1.
  double tau_derivative(double x, double t, double tau) const;
  const FastProfile& fast_factor() const { return fast_factor_; }

 private:
  SineSeries f_;
  FastProfile fast_factor_;
};

/// Initial-layer term u1(x,t) = <int_0^tau r1(0,s) ds> sum_n f_n(0) sin(nx) e^{-n^2 t}.
class InitialLayer {
 public:
  InitialLayer(const SineSeries& f, const FastProfile& r1, int n_max);

  double operator()(double x, double t) const;
  SlowFunction trace(double x) const;
  double mean_constant() const { return mean_; }

 private:
  double mean_ = 0.0;
  std::vector<std::pair<int, double>> initial_coeffs_;  // (n, f_n(0))
};

LeadingTerm leading_term(const SineSeries& f, const SlowFunction& r0, int n_max);
Corrector corrector_v1(const SineSeries& f, const FastProfile& r1, int n_max);
InitialLayer initial_layer_u1(const SineSeries& f, const FastProfile& r1, int n_max);

/// Two-term two-scale expansion U = u0 + (u1 + v1(x, t, omega t)) / omega.
class AsymptoticExpansion {
 public:
  AsymptoticExpansion(const SineSeries& f, const SourceFactor& r, int n_max);

  const LeadingTerm& leading() const { return u0_; }
  const Corrector& corrector() const { return v1_; }
  const InitialLayer& initial_layer() const { return u1_; }

  /// order 1 returns u0; order 2 the full two-term expansion.
  double evaluate(double x, double t, double omega, int order = 2) const;

 private:
  LeadingTerm u0_;
  Corrector v1_;
  InitialLayer u1_;
};

/// Expansion sampled on x in [0,pi], t in [0,horizon].
GridFunction compose(const AsymptoticExpansion& expansion, double omega, std::size_t x_count, std::size_t t_count,
                     double horizon, int order = 2);

/// Smallest t-count giving `per_period` nodes per fast period 2pi/omega on [0, horizon], capped.
std::size_t resolving_t_count(double omega, double horizon, std::size_t per_period = 16,
                              std::size_t cap = 1u << 16);

/// sup over the grid of |u_omega - expansion truncated at `order`|.
/// Rejects t-grids with fewer than 16 nodes per fast period.
double residual_norm(const HeatProblem& problem, const AsymptoticExpansion& expansion, int order,
                     std::size_t x_count, std::size_t t_count);

}  // namespace osk

#endif  // OSK_ASYMPTOTICS_HPP
