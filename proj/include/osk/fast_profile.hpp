#ifndef OSK_FAST_PROFILE_HPP
#define OSK_FAST_PROFILE_HPP

#include <span>
#include <vector>

#include "osk/slow_function.hpp"

namespace osk {

/// a_k(t) cos(k tau) + b_k(t) sin(k tau), k >= 1.
struct Harmonic {
  int k = 1;
  SlowFunction cos_amp;
  SlowFunction sin_amp;

  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Zero-mean 2pi-periodic trigonometric polynomial in the fast phase tau with
/// slow-time amplitudes. There is no k = 0 slot, so the fast mean is zero by
/// construction.
class FastProfile {
 public:
  FastProfile() = default;
  explicit FastProfile(std::vector<Harmonic> harmonics);

  static FastProfile cosine(int k, SlowFunction amp);
  static FastProfile sine(int k, SlowFunction amp);

  double operator()(double t, double tau) const;

  std::span<const Harmonic> harmonics() const { return harmonics_; }
  bool is_zero() const { return harmonics_.empty(); }
  int max_harmonic() const { return harmonics_.empty() ? 0 : harmonics_.back().k; }

  /// t -> p(t, tau) for a frozen phase.
  SlowFunction at_phase(double tau) const;

  /// Multiply every amplitude by g(t).
  FastProfile scaled(const SlowFunction& g) const;
  FastProfile scaled(double s) const;

  FastProfile& operator+=(const FastProfile& other);
  friend FastProfile operator+(FastProfile a, const FastProfile& b) { return a += b; }

  friend bool operator==(const FastProfile&, const FastProfile&) = default;

 private:
  void normalize();

  std::vector<Harmonic> harmonics_;
};

/// tau -> int_0^tau p(t,s) ds minus its fast mean.
FastProfile fast_antiderivative_zero_mean(const FastProfile& p);

/// Termwise d/dtau.
FastProfile fast_derivative(const FastProfile& p);

/// t -> < int_0^tau p(t,s) ds >_tau, the constant removed by
/// fast_antiderivative_zero_mean. Equals sum_k b_k(t)/k.
SlowFunction antiderivative_mean(const FastProfile& p);

/// Class-(A) source factor r(t,tau) = r0(t) + r1(t,tau).
struct SourceFactor {
  SlowFunction r0;
  FastProfile r1;

  double operator()(double t, double tau) const { return r0(t) + r1(t, tau); }

  friend bool operator==(const SourceFactor&, const SourceFactor&) = default;
};

}  // namespace osk

#endif  // OSK_FAST_PROFILE_HPP
