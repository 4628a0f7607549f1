#include "osk/fast_profile.hpp"

#include <algorithm>
#include <cmath>

#include "osk/error.hpp"

namespace osk {

FastProfile::FastProfile(std::vector<Harmonic> harmonics) : harmonics_(std::move(harmonics)) {
  for (const auto& h : harmonics_)
    if (h.k < 1) throw InputError("FastProfile: harmonic index must be >= 1");
  normalize();
}

FastProfile FastProfile::cosine(int k, SlowFunction amp) { return FastProfile({{k, std::move(amp), {}}}); }

FastProfile FastProfile::sine(int k, SlowFunction amp) { return FastProfile({{k, {}, std::move(amp)}}); }

void FastProfile::normalize() {
  std::stable_sort(harmonics_.begin(), harmonics_.end(),
                   [](const Harmonic& a, const Harmonic& b) { return a.k < b.k; });
  std::vector<Harmonic> merged;
  for (auto& h : harmonics_) {
    if (!merged.empty() && merged.back().k == h.k) {
      merged.back().cos_amp += h.cos_amp;
      merged.back().sin_amp += h.sin_amp;
    } else {
      merged.push_back(std::move(h));
    }
  }
  std::erase_if(merged, [](const Harmonic& h) { return h.cos_amp.is_zero() && h.sin_amp.is_zero(); });
  harmonics_ = std::move(merged);
}

double FastProfile::operator()(double t, double tau) const {
  double sum = 0.0;
  for (const auto& h : harmonics_) {
    double phase = h.k * tau;
    if (!h.cos_amp.is_zero()) sum += h.cos_amp(t) * std::cos(phase);
    if (!h.sin_amp.is_zero()) sum += h.sin_amp(t) * std::sin(phase);
  }
  return sum;
}

SlowFunction FastProfile::at_phase(double tau) const {
  SlowFunction out;
  for (const auto& h : harmonics_) {
    out += std::cos(h.k * tau) * h.cos_amp;
    out += std::sin(h.k * tau) * h.sin_amp;
  }
  return out;
}

FastProfile FastProfile::scaled(const SlowFunction& g) const {
  std::vector<Harmonic> out;
  out.reserve(harmonics_.size());
  for (const auto& h : harmonics_) out.push_back({h.k, h.cos_amp * g, h.sin_amp * g});
  return FastProfile(std::move(out));
}

FastProfile FastProfile::scaled(double s) const { return scaled(SlowFunction::constant(s)); }

FastProfile& FastProfile::operator+=(const FastProfile& other) {
  harmonics_.insert(harmonics_.end(), other.harmonics_.begin(), other.harmonics_.end());
  normalize();
  return *this;
}

FastProfile fast_antiderivative_zero_mean(const FastProfile& p) {
  // a cos(k tau) -> a sin(k tau)/k ; b sin(k tau) -> -b cos(k tau)/k (+ b/k, removed with the mean)
  std::vector<Harmonic> out;
  for (const auto& h : p.harmonics()) {
    double inv_k = 1.0 / h.k;
    out.push_back({h.k, -inv_k * h.sin_amp, inv_k * h.cos_amp});
  }
  return FastProfile(std::move(out));
}

FastProfile fast_derivative(const FastProfile& p) {
  std::vector<Harmonic> out;
  for (const auto& h : p.harmonics()) {
    double k = h.k;
    out.push_back({h.k, k * h.sin_amp, -k * h.cos_amp});
  }
  return FastProfile(std::move(out));
}

SlowFunction antiderivative_mean(const FastProfile& p) {
  SlowFunction out;
  for (const auto& h : p.harmonics()) out += (1.0 / h.k) * h.sin_amp;
  return out;
}

}  // namespace osk
