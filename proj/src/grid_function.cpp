#include "osk/grid_function.hpp"

#include <algorithm>
#include <cmath>

#include "osk/error.hpp"

namespace osk {

namespace {

void check_axis(const Axis& a) {
  if (a.count < 2) throw InputError("GridFunction: axis needs at least 2 nodes");
  if (!(a.end > a.start)) throw InputError("GridFunction: axis end must exceed start");
}

}  // namespace

double Axis::node(std::size_t i) const {
  if (i + 1 == count) return end;
  return start + double(i) * step();
}

GridFunction::GridFunction(Axis axis, std::vector<double> values) : axes_{axis}, values_(std::move(values)) {
  check_axis(axis);
  if (values_.size() != axis.count) throw InputError("GridFunction: value count does not match axis");
}

GridFunction::GridFunction(Axis x_axis, Axis t_axis, std::vector<double> values)
    : axes_{x_axis, t_axis}, values_(std::move(values)) {
  check_axis(x_axis);
  check_axis(t_axis);
  if (values_.size() != x_axis.count * t_axis.count)
    throw InputError("GridFunction: value count does not match axes");
}

GridFunction GridFunction::sample(Axis axis, const std::function<double(double)>& f) {
  check_axis(axis);
  std::vector<double> v(axis.count);
  for (std::size_t i = 0; i < axis.count; ++i) v[i] = f(axis.node(i));
  return GridFunction(axis, std::move(v));
}

GridFunction GridFunction::sample(Axis x_axis, Axis t_axis, const std::function<double(double, double)>& f) {
  check_axis(x_axis);
  check_axis(t_axis);
  std::vector<double> v(x_axis.count * t_axis.count);
  for (std::size_t i = 0; i < x_axis.count; ++i)
    for (std::size_t j = 0; j < t_axis.count; ++j) v[i * t_axis.count + j] = f(x_axis.node(i), t_axis.node(j));
  return GridFunction(x_axis, t_axis, std::move(v));
}

double GridFunction::interpolate(double s) const {
  if (dimension() != 1) throw InputError("GridFunction::interpolate: 1-D grids only");
  const Axis& a = axes_[0];
  if (s < a.start || s > a.end) throw InputError("GridFunction::interpolate: argument outside the axis");
  const double pos = (s - a.start) / a.step();
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), a.count - 2);
  const double w = pos - double(i);
  if (w == 0.0) return values_[i];
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void GridFunction::check_same_grid(const GridFunction& other) const {
  if (axes_ != other.axes_) throw InputError("GridFunction: grids differ");
}

double GridFunction::sup_diff(const GridFunction& other) const {
  check_same_grid(other);
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - other.values_[i]));
  return m;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

}  // namespace osk
