#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kinlab/rng.hpp"

namespace kinlab {

/// One point of the collision-history space Omega_t: a horizon t together
/// with the ascending jump times t_1 <= ... <= t_n in [0, t].
struct CollisionHistory {
  double horizon = 0.0;
  std::vector<double> times;

  int n() const { return static_cast<int>(times.size()); }
};

/// Successive gaps (x_1, ..., x_{n+1}) between the jump times, including the
/// boundary gaps to 0 and to the horizon. They sum to the horizon.
struct GapVector {
  std::vector<double> gaps;
  double sum() const;
};

enum class EventModel { BGK, NLFP };

/// Parameters of the probable-region events.
struct EventParams {
  double alpha = 0.5;  // in (0,1); BGK requires alpha > beta
  double beta = 0.25;  // in (0,1/2)
  EventModel model = EventModel::BGK;
  double s = 1.0;  // BGK stability index (enters the E2 target)
};

struct EventFlags {
  bool e1 = false, e2 = false, e3 = false;
  bool all() const { return e1 && e2 && e3; }
};

/// n ~ Poisson(t); times are sorted i.i.d. uniforms on [0, t].
CollisionHistory sample_history(double t, RngStream& rng);

GapVector gaps(const CollisionHistory& h);

/// Sum of gap powers: Sum x_i^{2s}.
double s_power_sum(const GapVector& g, double s);

/// E( Sum_{i=1}^{n+1} X_i^{2s} ) for a flat Dirichlet gap vector scaled to
/// total z: z^{2s} Gamma(2s+1) Gamma(n+2) / Gamma(n+2s+1).
double mean_s_power_sum(int n, double s, double z);

/// Exact upper bound on Var(S_{n,s}) obtained by dropping the (negative)
/// covariance terms: (n+1) [ n! G(4s+1)/G(n+4s+1) - (n! G(2s+1)/G(n+2s+1))^2 ].
double var_s_power_sum_upper(int n, double s);

/// S_k = Sum_i exp(-k (t - t_i)); S_0 = n.
double exp_sums(const CollisionHistory& h, double k);

/// Membership in the probable-region events. Histories with n = 0 are
/// classified outside all events.
EventFlags event_membership(const CollisionHistory& h, const EventParams& params);

struct MonteCarloEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo integral of psi over the gap simplex of size z in dimension n:
/// (z^n / n!) E[psi(z X)] with X flat Dirichlet on n+1 components.
MonteCarloEstimate dirichlet_integral(const std::function<double(std::span<const double>)>& psi,
                                      int n, double z, int samples, RngStream& rng);

/// Flat Dirichlet sample by normalized exponential spacings; n+1 components.
std::vector<double> sample_dirichlet(int n, RngStream& rng);

enum class ConcentrationRegime {
  DirichletPowerSum,   // P(|S_{n,s} - m_{n,s}| >= eps_n) vs C_s (n+2)^{-(1-2beta)}
  PoissonMoment,       // E[X^gamma 1_{X>=1}] vs C_gamma lambda^gamma
  PoissonStableScale,  // E||M^s - M^s_{(lambda/X)^{1-1/(2s)}}||_p vs C (1/sqrt(l) + 1/l)
  BernsteinA11,        // P(|Sum (X_i - E X_i)| > n^alpha) vs Bernstein bound
  RatioTail,           // P(S_1/sqrt(S_2) > n^beta) vs 6 e^{-n^beta}, t > e^3 n^{1-beta}
  S2Tail,              // P(S_2 > n^bt) vs e^{-n^bt}, t > e^2/2 n^{1-bt}
};

std::string regime_name(ConcentrationRegime r);

struct ConcentrationRow {
  std::string regime;
  double n = 0.0;       // n or lambda, depending on regime
  double t = 0.0;       // horizon when applicable, 0 otherwise
  double param = 0.0;   // beta / gamma / alpha of the regime
  double s = 0.0;       // stability when applicable
  double empirical = 0.0;
  double bound = 0.0;
  double standard_error = 0.0;
  bool pass = false;
};

struct ConcentrationParams {
  std::vector<double> n_values{10, 100};
  std::vector<double> lambda_values{10, 50, 200};
  double t = 50.0;
  double s = 1.0;
  double beta = 0.25;
  double gamma = -1.0;
  double alpha = 0.6;   // Bernstein threshold exponent
  double p = 1.0;       // norm for the stable-scale regime
  int draws = 100000;
};

/// Empirical probability/moment against the cited bound, one row per
/// parameter point. Points whose regime preconditions fail raise
/// RegimeViolated (or are skipped when `skip_invalid` is set).
std::vector<ConcentrationRow> concentration_report(ConcentrationRegime regime,
                                                   const ConcentrationParams& params,
                                                   RngStream& rng, bool skip_invalid = false);

/// Exact Poisson moment E[X^gamma 1_{X>=1}] by series summation.
double poisson_moment_series(double lambda, double gamma);

}  // namespace kinlab
