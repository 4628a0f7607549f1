#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "osk/error.hpp"
#include "osk/volterra.hpp"

using namespace osk;
using doctest::Approx;
using std::numbers::pi;

namespace {

// g = 1, K = -e^{-(t-s)}, mu = 1 - e^{-t}: solution l(t) = t.
VolterraProblem trace_equation(std::size_t grid, double horizon = 2.0) {
  VolterraProblem p;
  p.diagonal = [](double) { return 1.0; };
  p.kernel = build_kernel(SineSeries::from_constants({1.0, 1.0}), pi / 2, 32, horizon);
  p.rhs = [](double t) { return 1.0 - std::exp(-t); };
  p.horizon = horizon;
  p.grid_points = grid;
  return p;
}

double sup_error(const GridFunction& l, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < l.axis(0).count; ++i) e = std::max(e, std::abs(l[i] - exact(l.axis(0).node(i))));
  return e;
}

}  // namespace

TEST_CASE("kernel from the two-harmonic source at pi/2") {
  const SeparableKernel k = build_kernel(SineSeries::from_constants({1.0, 1.0}), pi / 2, 32);
  for (auto [t, s] : {std::pair{0.5, 0.1}, {1.7, 1.2}, {2.0, 0.0}})
    CHECK(k(t, s) == Approx(-std::exp(-(t - s))).epsilon(1e-14));
  CHECK(k.tail_bound() == 0.0);
}

TEST_CASE("kernel of a zero source is zero") {
  const SeparableKernel k = build_kernel(SineSeries{}, 1.0, 32);
  CHECK(k(1.0, 0.5) == 0.0);
  CHECK(k.modes().empty());
}

TEST_CASE("kernel of sin 3x at pi/4") {
  const SeparableKernel k = build_kernel(SineSeries::from_constants({0.0, 0.0, 1.0}), pi / 4, 32);
  const double t = 0.8, s = 0.3;
  CHECK(k(t, s) == Approx(-9.0 * std::sin(3 * pi / 4) * std::exp(-9.0 * (t - s))).epsilon(1e-14));
}

TEST_CASE("kernel tail bound covers dropped modes") {
  const SineSeries f = SineSeries::from_constants({1.0, 0.0, 0.5, 0.0, 0.25});
  const SeparableKernel k = build_kernel(f, 1.0, 3);
  CHECK(k.tail_bound() == Approx(25.0 * 0.25 * std::abs(std::sin(5.0))));
}

TEST_CASE("trace equation recovers l = t at second order") {
  const GridFunction l = solve(trace_equation(2048));
  const double h = l.axis(0).step();
  const double err = sup_error(l, [](double t) { return t; });
  CHECK(err < 1e-6);
  CHECK(err < h * h);
  CHECK(discrete_residual(trace_equation(2048), l) < 1e-12 * 2.0);
}

TEST_CASE("zero kernel returns mu") {
  VolterraProblem p;
  p.diagonal = [](double) { return 1.0; };
  p.kernel = SeparableKernel{};
  p.rhs = [](double t) { return std::sin(t) + t * t; };
  p.grid_points = 257;
  const GridFunction l = solve(p);
  CHECK(sup_error(l, p.rhs) == 0.0);
}

TEST_CASE("constant kernel reduces to l' + l = 0") {
  VolterraProblem p;
  p.diagonal = [](double) { return 1.0; };
  p.kernel = KernelFunction([](double, double) { return 1.0; });
  p.rhs = [](double) { return 1.0; };
  p.horizon = 1.0;
  p.grid_points = 1025;
  const GridFunction l = solve(p);
  const double err = sup_error(l, [](double t) { return std::exp(-t); });
  CHECK(err < 1e-6);

  const std::array<std::size_t, 4> ladder{129, 257, 513, 1025};
  const ConvergenceReport rep = convergence_order(p, ladder, [](double t) { return std::exp(-t); });
  CHECK(rep.order == Approx(2.0).epsilon(0.05));
  CHECK(rep.monotone);
}

TEST_CASE("general kernel path matches the separable recursion") {
  VolterraProblem sep = trace_equation(513);
  VolterraProblem gen = sep;
  const SeparableKernel k = std::get<SeparableKernel>(sep.kernel);
  gen.kernel = KernelFunction([k](double t, double s) { return k(t, s); });
  CHECK(solve(sep).sup_diff(solve(gen)) < 1e-13);
}

TEST_CASE("observed order on the trace equation") {
  const std::array<std::size_t, 4> ladder{256, 512, 1024, 2048};
  const ConvergenceReport rep = convergence_order(trace_equation(2048), ladder, [](double t) { return t; });
  CHECK(rep.order >= 1.8);
  CHECK(rep.order <= 2.2);
  CHECK(rep.monotone);
  CHECK_FALSE(rep.degenerate);
  for (double p : rep.pair_orders) CHECK(p == Approx(2.0).epsilon(0.1));
}

TEST_CASE("zero kernel order is flagged degenerate") {
  VolterraProblem p;
  p.diagonal = [](double) { return 2.0; };
  p.kernel = SeparableKernel{};
  p.rhs = [](double t) { return t; };
  const std::array<std::size_t, 3> ladder{65, 129, 257};
  const ConvergenceReport rep = convergence_order(p, ladder, [](double t) { return t / 2; });
  CHECK(rep.degenerate);
  CHECK(std::isnan(rep.order));
}

TEST_CASE("order without an exact solution uses successive grids") {
  const std::array<std::size_t, 4> ladder{257, 513, 1025, 2049};
  const ConvergenceReport rep = convergence_order(trace_equation(2048), ladder);
  CHECK(rep.errors.size() == 3);
  CHECK(rep.order == Approx(2.0).epsilon(0.1));
}

TEST_CASE("richardson extrapolation reaches fourth order accuracy") {
  const GridFunction coarse = solve(trace_equation(513));
  const GridFunction extra = solve_extrapolated(trace_equation(513));
  const double e2 = sup_error(coarse, [](double t) { return t; });
  const double e4 = sup_error(extra, [](double t) { return t; });
  CHECK(e4 < e2 * 1e-3);
}

TEST_CASE("solution map is linear in mu") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a0 = c(rng), a1 = c(rng), b0 = c(rng), b1 = c(rng), s = c(rng);
    auto make = [&](std::function<double(double)> mu) {
      VolterraProblem p = trace_equation(513);
      p.rhs = std::move(mu);
      return solve(p);
    };
    const auto mu_a = [=](double t) { return a0 * t + a1 * std::exp(-2 * t); };
    const auto mu_b = [=](double t) { return b0 * std::sin(t) + b1; };
    GridFunction sum = make([=](double t) { return mu_a(t) + s * mu_b(t); });
    const GridFunction la = make(mu_a), lb = make(mu_b);
    double diff = 0.0;
    for (std::size_t i = 0; i < la.axis(0).count; ++i) diff = std::max(diff, std::abs(sum[i] - la[i] - s * lb[i]));
    CHECK(diff < 1e-10);
  }
}

TEST_CASE("input errors") {
  VolterraProblem p = trace_equation(65);
  p.diagonal = [](double t) { return t - 1.0; };  // vanishes at t = 1
  CHECK_THROWS_AS(solve(p), InputError);

  VolterraProblem q = trace_equation(65);
  q.rhs = [](double t) { return t > 0.5 ? std::nan("") : 0.0; };
  CHECK_THROWS_AS(solve(q), InputError);
}

TEST_CASE("discrete duhamel matches the trapezoid on l = t") {
  const GridFunction l = GridFunction::sample(Axis{0.0, 1.0, 1025}, [](double t) { return t; });
  const auto d = discrete_duhamel(l, 4.0);
  const double t = 1.0;
  const double exact = (4 * t - 1 + std::exp(-4 * t)) / 16;
  CHECK(d.back() == Approx(exact).epsilon(1e-5));
  CHECK(d.front() == 0.0);
}
