#pragma once

#include <string>
#include <vector>

#include "kinlab/grid.hpp"
#include "kinlab/rng.hpp"

namespace kinlab {

/// Isotropic 2s-stable law with characteristic function
/// exp(-lambda^{2s} |eta|^{2s} / (2s)). Gaussian when s = 1 (then lambda is
/// the standard deviation per coordinate), Cauchy when s = 1/2.
struct StableLaw {
  double s = 1.0;
  double lambda = 1.0;
  int dim = 1;
};

void validate(const StableLaw& law);

/// Characteristic function evaluated at |eta|.
double stable_char(const StableLaw& law, double eta_abs);

/// Asymptotic tail mass P(|X| > L) of the 1-d law (erfc for s = 1, the stable
/// power-law asymptote otherwise).
double stable_tail_mass(double s, double lambda, double L);

/// Density of the 1-d law by Fourier inversion on the given grid. Closed forms
/// are used for s = 1 (Gaussian) and s = 1/2 (Cauchy). Result is normalized to
/// unit grid mass.
GridFunction density_grid(const StableLaw& law, const Grid1& grid);

/// Default grid wide enough for the design tail targets (extent >= 40 lambda
/// for s >= 1/2, >= 200 lambda below).
Grid1 default_stable_grid(const StableLaw& law, int min_cells = 2048);

/// i.i.d. samples, flattened row-major (count x dim). 1-d sampling uses the
/// Chambers-Mallows-Stuck transform; d > 1 uses a Gaussian vector multiplied
/// by the square root of a positive s-stable subordinator.
std::vector<double> sample(const StableLaw& law, RngStream& rng, int count);

/// Positive strictly stable subordinator with Laplace transform exp(-u^sigma),
/// sigma in (0,1). Kanter's representation.
double sample_subordinator(double sigma, RngStream& rng);

/// Scale of the convolution M^s_a * M^s_b = M^s_{(a^{2s}+b^{2s})^{1/(2s)}}.
double convolve_scale(double a, double b, double s);

/// Grid L^p norm of the density, d = 1. For fixed (s, p) the product
/// lp_norm * lambda^{1 - 1/p} is constant across lambda.
double lp_norm(const StableLaw& law, double p);

struct ScaleDistance {
  double exact = 0.0;  // grid ||M_l1 - M_l2||_p
  double bound = 0.0;  // C_{d,p} |l2 - l1| max(l1^{-2sq-1}, l2^{-2sq-1})
};

/// Exact grid distance between two scales of the same stable family plus the
/// calibrated perturbation bound. The bound dominates the exact distance
/// whenever |1 - (l1/l2)^{2s}| <= 1/2.
ScaleDistance scale_distance(double lam1, double lam2, double s, double p);

/// Calibrated constant C_{d,p}(s) for the scale-distance bound, d = 1.
/// Measured once on a fine reference grid and cached.
double scale_distance_constant(double s, double p);

/// Persist all constants calibrated so far as CSV (columns s,d,p,constant).
void save_scale_calibration_csv(const std::string& path);

/// Central-limit rescaling of n dilated copies of F convolved together:
/// returns (sbar^{2s} n)^{1/(2s) * d} F^{s1..sn}(n^{1/(2s)} sbar x) on F's
/// grid, computed on the Fourier side. `scales` holds the dilation factors.
GridFunction clt_iterated_convolution(const GridFunction& F, const std::vector<double>& scales,
                                      int n, double s);

}  // namespace kinlab
