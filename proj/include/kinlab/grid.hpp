#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "kinlab/errors.hpp"

namespace kinlab {

/// Uniform 1-d grid of cell centers: x_i = origin + (i + 1/2) * spacing.
/// Centers are offset by half a cell so a symmetric grid never samples x = 0
/// exactly (several densities in this project have integrable singularities
/// there).
struct Grid1 {
  double origin = 0.0;   // left edge of the first cell
  double spacing = 0.0;
  int n = 0;

  static Grid1 symmetric(double extent, int n) {
    return Grid1{-extent, 2.0 * extent / n, n};
  }

  double center(int i) const { return origin + (i + 0.5) * spacing; }
  double left_edge(int i) const { return origin + i * spacing; }
  double extent() const { return 0.5 * n * spacing; }

  /// Reciprocal grid for the discrete Fourier transform: n frequencies with
  /// spacing 2*pi / (n * spacing), centered on 0 (node-centered).
  double freq_spacing() const { return 2.0 * M_PI / (n * spacing); }
  double freq(int k) const { return (k - n / 2) * freq_spacing(); }
  double freq_max() const { return M_PI / spacing; }

  bool operator==(const Grid1&) const = default;
};

/// Real samples on a Grid1, interpreted as cell values of a function.
struct GridFunction {
  Grid1 grid;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(Grid1 g) : grid(g), values(static_cast<size_t>(g.n), 0.0) {}

  double mass() const;
  double lp(double p) const;  // grid L^p norm; p = inf -> max |.|

  /// Linear interpolation of cell values, 0 outside the grid.
  double interpolate(double x) const;

  GridFunction& operator-=(const GridFunction& other);
};

/// Tensor (x-grid) x (v-grid) phase-space grid, d = 1 on each axis.
struct Grid2 {
  Grid1 x;
  Grid1 v;

  size_t cells() const { return static_cast<size_t>(x.n) * v.n; }
  size_t index(int i, int j) const { return static_cast<size_t>(i) * v.n + j; }
  double cell_area() const { return x.spacing * v.spacing; }

  bool operator==(const Grid2&) const = default;
};

/// Density samples on a phase-space grid; carries optional per-cell standard
/// errors when produced by Monte Carlo averaging.
struct PhaseSpaceField {
  Grid2 grid;
  std::vector<double> values;
  std::vector<double> se;  // empty unless Monte Carlo

  PhaseSpaceField() = default;
  explicit PhaseSpaceField(Grid2 g) : grid(g), values(g.cells(), 0.0) {}

  double& at(int i, int j) { return values[grid.index(i, j)]; }
  double at(int i, int j) const { return values[grid.index(i, j)]; }

  double mass() const;
  /// Total L1 standard error: sum of per-cell se * cell area.
  double l1_se() const;

  PhaseSpaceField& operator-=(const PhaseSpaceField& other);
};

inline double trapz_mass(const std::vector<double>& v, double spacing) {
  double s = 0.0;
  for (double x : v) s += x;
  return s * spacing;
}

}  // namespace kinlab
