#include "kinlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace kinlab {

namespace {

// FFTW plan cache. Plans are created with FFTW_UNALIGNED so they can execute
// on any caller buffer.
std::mutex plan_mutex;

fftw_plan plan_1d(int n, bool forward) {
  static std::map<std::pair<int, bool>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, forward);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> tmp(static_cast<size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(tmp.data()),
                                 reinterpret_cast<fftw_complex*>(tmp.data()),
                                 forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

fftw_plan plan_2d(int n0, int n1, bool forward) {
  static std::map<std::tuple<int, int, bool>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(n0, n1, forward);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> tmp(static_cast<size_t>(n0) * n1);
  fftw_plan p = fftw_plan_dft_2d(n0, n1, reinterpret_cast<fftw_complex*>(tmp.data()),
                                 reinterpret_cast<fftw_complex*>(tmp.data()),
                                 forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

void execute(fftw_plan p, std::vector<cplx>& data) {
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
}

// Phase factors turning the raw DFT into an approximation of the continuous
// transform on a cell-centered grid: fhat(eta_k) = h e^{-i c eta_k} *
// DFT[(-1)^j f_j]_k, with c the first cell center.
void apply_center_phase(const Grid1& g, std::vector<cplx>& freq, double sign) {
  const double c = g.center(0);
  for (int k = 0; k < g.n; ++k) {
    const double phase = sign * c * g.freq(k);
    freq[k] *= cplx(std::cos(phase), std::sin(phase));
  }
}

}  // namespace

std::vector<cplx> dft_1d(const std::vector<cplx>& in, bool forward) {
  std::vector<cplx> out(in);
  execute(plan_1d(static_cast<int>(in.size()), forward), out);
  return out;
}

std::vector<cplx> dft_2d(const std::vector<cplx>& in, int n0, int n1, bool forward) {
  std::vector<cplx> out(in);
  execute(plan_2d(n0, n1, forward), out);
  return out;
}

std::vector<cplx> fourier_forward(const Grid1& grid, const std::vector<double>& values) {
  std::vector<cplx> buf(static_cast<size_t>(grid.n));
  for (int j = 0; j < grid.n; ++j) buf[j] = (j % 2 == 0 ? values[j] : -values[j]);
  execute(plan_1d(grid.n, true), buf);
  apply_center_phase(grid, buf, -1.0);
  for (auto& z : buf) z *= grid.spacing;
  return buf;
}

std::vector<double> fourier_inverse(const Grid1& grid, const std::vector<cplx>& fhat) {
  std::vector<cplx> buf(fhat);
  apply_center_phase(grid, buf, +1.0);
  execute(plan_1d(grid.n, false), buf);
  std::vector<double> out(static_cast<size_t>(grid.n));
  const double scale = grid.freq_spacing() / (2.0 * M_PI);
  for (int j = 0; j < grid.n; ++j)
    out[j] = scale * (j % 2 == 0 ? buf[j].real() : -buf[j].real());
  return out;
}

std::vector<cplx> fourier_forward_2d(const Grid2& grid, const std::vector<double>& values) {
  const int nx = grid.x.n, nv = grid.v.n;
  std::vector<cplx> buf(grid.cells());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nv; ++j) {
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      buf[grid.index(i, j)] = sgn * values[grid.index(i, j)];
    }
  execute(plan_2d(nx, nv, true), buf);
  const double cx = grid.x.center(0), cv = grid.v.center(0);
  const double area = grid.cell_area();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nv; ++j) {
      const double phase = -(cx * grid.x.freq(i) + cv * grid.v.freq(j));
      buf[grid.index(i, j)] *= area * cplx(std::cos(phase), std::sin(phase));
    }
  return buf;
}

std::vector<double> fourier_inverse_2d(const Grid2& grid, const std::vector<cplx>& fhat) {
  const int nx = grid.x.n, nv = grid.v.n;
  std::vector<cplx> buf(fhat);
  const double cx = grid.x.center(0), cv = grid.v.center(0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nv; ++j) {
      const double phase = cx * grid.x.freq(i) + cv * grid.v.freq(j);
      buf[grid.index(i, j)] *= cplx(std::cos(phase), std::sin(phase));
    }
  execute(plan_2d(nx, nv, false), buf);
  std::vector<double> out(grid.cells());
  const double scale =
      grid.x.freq_spacing() * grid.v.freq_spacing() / (4.0 * M_PI * M_PI);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nv; ++j) {
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      out[grid.index(i, j)] = scale * sgn * buf[grid.index(i, j)].real();
    }
  return out;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) throw KinlabError("convolve: grid mismatch");
  auto fh = fourier_forward(f.grid, f.values);
  auto gh = fourier_forward(g.grid, g.values);
  for (size_t k = 0; k < fh.size(); ++k) fh[k] *= gh[k];
  GridFunction out(f.grid);
  out.values = fourier_inverse(f.grid, fh);
  return out;
}

}  // namespace kinlab
