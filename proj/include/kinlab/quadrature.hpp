#pragma once

#include <functional>
#include <vector>

namespace kinlab {

/// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

/// Integrate f over [a, b] with a fixed Gauss-Legendre order.
double gl_integrate(const std::function<double(double)>& f, double a, double b, int order);

/// Adaptive Simpson on [a, b]; used by test oracles and calibration paths
/// where an FFT-independent integrator is wanted.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40);

}  // namespace kinlab
