#pragma once

#include <complex>
#include <vector>

#include "kinlab/grid.hpp"

namespace kinlab {

using cplx = std::complex<double>;

/// Unnormalized DFT, FFTW sign convention (forward = e^{-2 pi i jk/N}).
std::vector<cplx> dft_1d(const std::vector<cplx>& in, bool forward);
std::vector<cplx> dft_2d(const std::vector<cplx>& in, int n0, int n1, bool forward);

/// Approximate continuous Fourier transform fhat(eta) = int f(x) e^{-i x eta} dx
/// on the reciprocal grid (grid.freq(k), k = 0..n-1), from cell values of f.
std::vector<cplx> fourier_forward(const Grid1& grid, const std::vector<double>& values);

/// Inverse: f(x_j) = (2 pi)^{-1} int fhat(eta) e^{+i x eta} d eta, sampled at
/// the cell centers. Discards the imaginary part (callers transform data that
/// is real in space).
std::vector<double> fourier_inverse(const Grid1& grid, const std::vector<cplx>& fhat);

/// 2-d versions on a phase-space grid, row-major [i * v.n + j], frequency pair
/// (xi_i, eta_j) = (grid.x.freq(i), grid.v.freq(j)).
std::vector<cplx> fourier_forward_2d(const Grid2& grid, const std::vector<double>& values);
std::vector<double> fourier_inverse_2d(const Grid2& grid, const std::vector<cplx>& fhat);

/// Convolution of two functions sampled on the same grid, computed on the
/// Fourier side. Cyclic with period n * spacing; callers keep enough margin
/// that wrap-around mass is negligible.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

}  // namespace kinlab
