#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kinlab/fft.hpp"
#include "kinlab/stable.hpp"
#include "oracles.hpp"

using namespace kinlab;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("fourier transform round trip on a Gaussian pair") {
  Grid1 g = Grid1::symmetric(16.0, 512);
  std::vector<double> f(512);
  for (int i = 0; i < g.n; ++i) f[i] = oracles::gauss_pdf(g.center(i), 1.0);
  auto fh = fourier_forward(g, f);
  // analytic transform of N(0,1) is exp(-eta^2/2)
  for (int k = 0; k < g.n; ++k) {
    const double eta = g.freq(k);
    if (std::abs(eta) < 6.0) {
      CHECK(std::abs(fh[k].real() - std::exp(-0.5 * eta * eta)) < 1e-12);
      CHECK(std::abs(fh[k].imag()) < 1e-12);
    }
  }
  auto back = fourier_inverse(g, fh);
  for (int i = 0; i < g.n; ++i) CHECK(back[i] == doctest::Approx(f[i]).epsilon(1e-12));
}

TEST_CASE("fft convolution of Gaussians matches the closed form") {
  Grid1 g = Grid1::symmetric(24.0, 1024);
  GridFunction a(g), b(g);
  for (int i = 0; i < g.n; ++i) {
    a.values[i] = oracles::gauss_pdf(g.center(i), 1.0);
    b.values[i] = oracles::gauss_pdf(g.center(i), 2.25);
  }
  GridFunction c = convolve(a, b);
  for (int i = 0; i < g.n; ++i)
    CHECK(std::abs(c.values[i] - oracles::gauss_pdf(g.center(i), 3.25)) < 1e-10);
}

TEST_CASE("density_grid closed forms and normalization") {
  SUBCASE("Gaussian value at the origin") {
    StableLaw law{1.0, 1.0, 1};
    auto f = density_grid(law, Grid1::symmetric(20.0, 2048));
    double peak = *std::max_element(f.values.begin(), f.values.end());
    CHECK(peak == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(2e-5));
    CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("Cauchy value at the origin vs independent quadrature oracle") {
    StableLaw law{0.5, 1.0, 1};
    Grid1 g = default_stable_grid(law);
    auto f = density_grid(law, g);
    double peak = *std::max_element(f.values.begin(), f.values.end());
    const double oracle = oracles::stable_density_quadrature(0.0, 0.5, 1.0);
    CHECK(oracle == doctest::Approx(1.0 / M_PI).epsilon(1e-8));
    CHECK(peak == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("s = 0.75 mass on a [-50, 50] window") {
    StableLaw law{0.75, 1.0, 1};
    auto f = density_grid(law, Grid1::symmetric(50.0, 4096));
    CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("generic s density matches the quadrature oracle pointwise") {
    StableLaw law{0.75, 1.0, 1};
    Grid1 g = default_stable_grid(law);
    auto f = density_grid(law, g);
    for (double x : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      const double oracle = oracles::stable_density_quadrature(x, 0.75, 1.0);
      CHECK(f.interpolate(x) == doctest::Approx(oracle).epsilon(2e-4));
    }
  }
  SUBCASE("density is nonnegative up to ringing tolerance") {
    auto f = density_grid({0.75, 1.0, 1}, default_stable_grid({0.75, 1.0, 1}));
    CHECK(*std::min_element(f.values.begin(), f.values.end()) > -1e-8);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(density_grid({1.5, 1.0, 1}, Grid1::symmetric(10, 128)), InvalidStability);
    CHECK_THROWS_AS(density_grid({0.0, 1.0, 1}, Grid1::symmetric(10, 128)), InvalidStability);
    // 2 cells over [-40, 40] cannot resolve lambda = 1
    CHECK_THROWS_AS(density_grid({1.0, 1.0, 1}, Grid1::symmetric(40.0, 8)), GridTooCoarse);
  }
}

TEST_CASE("scaling identity M^s_lambda(x) = lambda^{-1} M^s(x/lambda)") {
  StableLaw unit{0.75, 1.0, 1};
  StableLaw scaled{0.75, 2.0, 1};
  auto fu = density_grid(unit, default_stable_grid(unit));
  auto fs = density_grid(scaled, default_stable_grid(scaled));
  for (double x : {0.0, 1.0, 3.0, 8.0})
    CHECK(fs.interpolate(x) == doctest::Approx(0.5 * fu.interpolate(x / 2.0)).epsilon(2e-4));
}

TEST_CASE("Fourier round trip reproduces the characteristic function") {
  for (double s : {0.5, 0.75, 1.0}) {
    StableLaw law{s, 1.0, 1};
    Grid1 g = default_stable_grid(law);
    auto f = density_grid(law, g);
    auto fh = fourier_forward(g, f.values);
    for (int k = 0; k < g.n; ++k) {
      const double eta = g.freq(k);
      if (std::abs(eta) <= 4.0)
        CHECK(std::abs(fh[k].real() - stable_char(law, std::abs(eta))) < 1e-4);
    }
  }
}

TEST_CASE("sampling moments and empirical characteristic function") {
  SUBCASE("s = 1 variance") {
    RngStream rng(2024);
    auto xs = sample({1.0, 1.0, 1}, rng, 100000);
    double m2 = 0.0;
    for (double x : xs) m2 += x * x;
    m2 /= xs.size();
    // Var = 1, SE of sample variance ~ sqrt(2/N)
    CHECK(std::abs(m2 - 1.0) < 3.0 * std::sqrt(2.0 / xs.size()));
  }
  SUBCASE("s = 1/2 empirical char fn at eta = 1") {
    RngStream rng(2025);
    auto xs = sample({0.5, 1.0, 1}, rng, 100000);
    double c = 0.0;
    for (double x : xs) c += std::cos(x);
    c /= xs.size();
    CHECK(std::abs(c - std::exp(-1.0)) < 3.0 / std::sqrt(static_cast<double>(xs.size())));
  }
  SUBCASE("d = 2, s = 0.75, lambda = 2 empirical char fn at |eta| = 1") {
    RngStream rng(2026);
    StableLaw law{0.75, 2.0, 2};
    const int N = 100000;
    auto xs = sample(law, rng, N);
    // direct evaluation of exp(-lambda^{2s}|eta|^{2s}/(2s)) at |eta|=1
    const double target = std::exp(-std::pow(2.0, 1.5) / 1.5);
    double se_acc = 0.0, c = 0.0;
    for (int i = 0; i < N; ++i) {
      const double dot = xs[2 * i];  // eta = (1, 0)
      c += std::cos(dot);
      se_acc += std::cos(dot) * std::cos(dot);
    }
    c /= N;
    const double se = std::sqrt((se_acc / N - c * c) / N);
    CHECK(std::abs(c - target) < 3.0 * se);
  }
  SUBCASE("subordinator Laplace transform") {
    RngStream rng(7);
    for (double sigma : {0.3, 0.5, 0.75}) {
      const int N = 200000;
      for (double u : {0.5, 1.0, 2.0}) {
        double acc = 0.0, acc2 = 0.0;
        RngStream r2 = rng.split(static_cast<std::uint64_t>(sigma * 100 + u * 7));
        for (int i = 0; i < N; ++i) {
          const double v = std::exp(-u * sample_subordinator(sigma, r2));
          acc += v;
          acc2 += v * v;
        }
        acc /= N;
        const double se = std::sqrt((acc2 / N - acc * acc) / N);
        CHECK(std::abs(acc - std::exp(-std::pow(u, sigma))) < 3.5 * se + 1e-6);
      }
    }
  }
}

TEST_CASE("sampler consistency: KS distance against the integrated density") {
  for (double s : {0.5, 1.0}) {
    StableLaw law{s, 1.0, 1};
    RngStream rng(55 + static_cast<int>(10 * s));
    auto xs = sample(law, rng, 100000);
    std::sort(xs.begin(), xs.end());
    Grid1 g = default_stable_grid(law);
    auto f = density_grid(law, g);
    // cdf on cell edges by cumulative sums
    double ks = 0.0, cdf = 0.0;
    size_t idx = 0;
    for (int i = 0; i < g.n; ++i) {
      cdf += f.values[i] * g.spacing;
      const double edge = g.left_edge(i + 1);
      while (idx < xs.size() && xs[idx] <= edge) ++idx;
      ks = std::max(ks, std::abs(cdf - static_cast<double>(idx) / xs.size()));
    }
    CHECK(ks <= 0.01);
  }
}

TEST_CASE("convolve_scale") {
  CHECK(convolve_scale(1.0, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(convolve_scale(1.0, 1e-12, 1.0) == doctest::Approx(1.0));
  CHECK(convolve_scale(1.0, 1.0, 0.5) == doctest::Approx(2.0));
}

TEST_CASE("convolution stability of the family") {
  for (double s : {0.5, 0.75, 1.0}) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double b : {0.5, 1.0, 2.0}) {
        StableLaw big{s, std::max({a, b, convolve_scale(a, b, s)}), 1};
        Grid1 g = default_stable_grid(big, 4096);
        GridFunction fa = density_grid({s, a, 1}, g);
        GridFunction fb = density_grid({s, b, 1}, g);
        GridFunction conv = convolve(fa, fb);
        conv -= density_grid({s, convolve_scale(a, b, s), 1}, g);
        CHECK(conv.lp(1.0) <= 1e-3);
      }
    }
  }
}

TEST_CASE("lp norms") {
  SUBCASE("closed forms at s = 1") {
    CHECK(lp_norm({1.0, 1.0, 1}, kInf) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-6));
    CHECK(lp_norm({1.0, 2.0, 1}, kInf) ==
          doctest::Approx(0.5 / std::sqrt(2.0 * M_PI)).epsilon(1e-6));
    // ||g||_2 = (integral g^2)^{1/2} = (2 sqrt(pi))^{-1/2}
    CHECK(lp_norm({1.0, 1.0, 1}, 2.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * std::sqrt(M_PI))).epsilon(1e-6));
  }
  SUBCASE("scaling collapse lp_norm * lambda^{1-1/p}") {
    for (double s : {0.5, 0.75, 1.0}) {
      for (double p : {1.0, 2.0, kInf}) {
        const double e = std::isinf(p) ? 1.0 : 1.0 - 1.0 / p;
        double ref = lp_norm({s, 0.5, 1}, p) * std::pow(0.5, e);
        for (double lam : {1.0, 2.0, 4.0}) {
          double val = lp_norm({s, lam, 1}, p) * std::pow(lam, e);
          CHECK(val == doctest::Approx(ref).epsilon(1e-5));
        }
      }
    }
  }
}

TEST_CASE("scale_distance exact values and bound") {
  SUBCASE("identical scales") {
    auto d = scale_distance(1.0, 1.0, 1.0, 1.0);
    CHECK(d.exact == 0.0);
    CHECK(d.bound == 0.0);
  }
  SUBCASE("monotone in |l2 - l1| near 1") {
    double prev = 0.0;
    for (double l2 : {1.05, 1.1, 1.2}) {
      auto d = scale_distance(1.0, l2, 1.0, 1.0);
      CHECK(d.exact > prev);
      prev = d.exact;
    }
  }
  SUBCASE("triangle bound") {
    auto d = scale_distance(1.0, 2.0, 1.0, 1.0);
    CHECK(d.exact <= 2.0);
  }
  SUBCASE("bound dominates within the half-ratio condition") {
    for (double s : {0.5, 0.75, 1.0}) {
      for (double p : {1.0, 2.0}) {
        for (double l1 : {0.9, 1.0, 1.1}) {
          for (double l2 : {1.0, 1.15}) {
            if (std::abs(1.0 - std::pow(l1 / l2, 2.0 * s)) > 0.5) continue;
            auto d = scale_distance(l1, l2, s, p);
            CHECK(d.exact <= d.bound + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("clt_iterated_convolution") {
  SUBCASE("Gaussian fixed point") {
    StableLaw law{1.0, 1.0, 1};
    Grid1 g = Grid1::symmetric(40.0, 4096);
    GridFunction F = density_grid(law, g);
    auto out = clt_iterated_convolution(F, {1.0}, 8, 1.0);
    out -= F;
    CHECK(out.lp(kInf) < 1e-5);
  }
  SUBCASE("uniform density contracts toward the Gaussian") {
    Grid1 g = Grid1::symmetric(40.0, 4096);
    GridFunction F(g);
    const double half = std::sqrt(3.0);
    for (int i = 0; i < g.n; ++i)
      F.values[i] = (std::abs(g.center(i)) <= half) ? 1.0 / (2.0 * half) : 0.0;
    const double m = F.mass();
    for (auto& v : F.values) v /= m;
    GridFunction target = density_grid({1.0, 1.0, 1}, g);
    auto d1 = clt_iterated_convolution(F, {1.0}, 1, 1.0);
    auto d64 = clt_iterated_convolution(F, {1.0}, 64, 1.0);
    d1 -= target;
    d64 -= target;
    CHECK(d64.lp(kInf) < d1.lp(kInf));
  }
  SUBCASE("Cauchy is an exact fixed point at s = 1/2") {
    StableLaw law{0.5, 1.0, 1};
    Grid1 g = Grid1::symmetric(8000.0, 1 << 18);
    GridFunction F = density_grid(law, g);
    auto out = clt_iterated_convolution(F, {1.0}, 16, 0.5);
    out -= F;
    CHECK(out.lp(1.0) < 1e-3);
  }
  SUBCASE("mixed scales keep mass") {
    Grid1 g = Grid1::symmetric(60.0, 4096);
    GridFunction F = density_grid({1.0, 1.0, 1}, g);
    auto out = clt_iterated_convolution(F, {0.8, 1.0, 1.2, 0.9, 1.1, 1.0, 1.3, 0.7}, 8, 1.0);
    CHECK(out.mass() == doctest::Approx(F.mass()).epsilon(1e-6));
  }
}
