#ifndef OSK_GRID_FUNCTION_HPP
#define OSK_GRID_FUNCTION_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace osk {

/// Uniform axis start..end with `count` nodes, endpoints included.
struct Axis {
  double start = 0.0;
  double end = 1.0;
  std::size_t count = 2;

  double step() const { return (end - start) / double(count - 1); }
  double node(std::size_t i) const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Samples on a uniform 1-D grid or a tensor 2-D (x, t) grid.
/// 2-D values are stored x-major: value(i, j) = values[i * t_count + j].
class GridFunction {
 public:
  GridFunction(Axis axis, std::vector<double> values);
  GridFunction(Axis x_axis, Axis t_axis, std::vector<double> values);

  static GridFunction sample(Axis axis, const std::function<double(double)>& f);
  static GridFunction sample(Axis x_axis, Axis t_axis, const std::function<double(double, double)>& f);

  std::size_t dimension() const { return axes_.size(); }
  const Axis& axis(std::size_t d) const { return axes_.at(d); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * axes_[1].count + j]; }

  /// Linear interpolation on a 1-D grid; arguments outside the axis are rejected.
  double interpolate(double s) const;

  double sup_norm() const;
  /// max |a - b|; grids must be identical.
  double sup_diff(const GridFunction& other) const;

  GridFunction& operator-=(const GridFunction& other);
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }

 private:
  void check_same_grid(const GridFunction& other) const;

  std::vector<Axis> axes_;
  std::vector<double> values_;
};

}  // namespace osk

#endif  // OSK_GRID_FUNCTION_HPP
