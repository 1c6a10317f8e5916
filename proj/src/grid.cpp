#include "kinlab/grid.hpp"

#include <algorithm>
#include <limits>

namespace kinlab {

double GridFunction::mass() const { return trapz_mass(values, grid.spacing); }

double GridFunction::lp(double p) const {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (double v : values) s += std::pow(std::abs(v), p);
  return std::pow(s * grid.spacing, 1.0 / p);
}

double GridFunction::interpolate(double x) const {
  const double u = (x - grid.origin) / grid.spacing - 0.5;
  if (u <= -1.0 || u >= grid.n) return 0.0;
  const int i0 = static_cast<int>(std::floor(u));
  const double w = u - i0;
  const double f0 = (i0 >= 0 && i0 < grid.n) ? values[i0] : 0.0;
  const double f1 = (i0 + 1 >= 0 && i0 + 1 < grid.n) ? values[i0 + 1] : 0.0;
  return f0 * (1.0 - w) + f1 * w;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (!(grid == other.grid)) throw KinlabError("GridFunction: grid mismatch");
  for (size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

double PhaseSpaceField::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_area();
}

double PhaseSpaceField::l1_se() const {
  if (se.empty()) return 0.0;
  double s = 0.0;
  for (double v : se) s += v;
  return s * grid.cell_area();
}

PhaseSpaceField& PhaseSpaceField::operator-=(const PhaseSpaceField& other) {
  if (!(grid == other.grid)) throw KinlabError("PhaseSpaceField: grid mismatch");
  for (size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
  return *this;
}

}  // namespace kinlab
