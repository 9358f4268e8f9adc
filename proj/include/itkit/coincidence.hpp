#pragma once

// Time-delay inversion, the Gaussian pair model in relative / centre-of-mass
// momenta, coincidence curves, Poisson datasets and least-squares fits.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "itkit/grid.hpp"
#include "itkit/kernels.hpp"

namespace itkit::coincidence {

using Mat = Eigen::MatrixXd;

/// Detector n sits at distance r_n along the unit vector r_hat_n.
struct Geometry {
  std::vector<double> masses;
  std::vector<double> distances;
  std::vector<Vec> directions;

  std::size_t size() const { return masses.size(); }
  void validate() const;
  /// Two particles of mass m, detectors at distance r on opposite sides.
  static Geometry back_to_back(double mass, double distance);
  bool symmetric_pair() const;
};

/// Delays are arrival times relative to detector 1: DT_n = m_n r_n / p_n - m_1 r_1 / p_1, n = 2..N.
struct DelayObservation {
  Geometry geometry;
  double E = 0.0;
  std::vector<double> delays;

  void validate() const;
};

struct PairModelParams {
  double sigma = 1.0;  // relative momentum width
  double Sigma = 1.0;  // centre-of-mass width
  void validate() const;
};

/// t = sqrt(m r^2 / E)
double characteristic_time(double mass, double distance, double E);

struct PairMomenta {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Closed-form inversion for equal masses and distances, tau = DT / t.
/// With s = sqrt(1 + 2 tau^2):
///   p1,2 / sqrt(mE) = +-tau/(s+1) + sqrt((1 + 2/(s+1)) / 2),
/// which is the rationalized form of the textbook roots and needs no special
/// branch at tau = 0.
PairMomenta invert_delays_pair(double tau, double mass, double E);

struct InversionReport {
  std::vector<double> momenta;
  double max_residual = 0.0;  // max |delay equation| / characteristic time
  double energy_residual = 0.0;
  int iterations = 0;
};

/// Damped Newton on (p_2..p_N) with p_1 from the energy constraint, continued
/// in the delays from the equal-arrival-time point.
InversionReport invert_delays_numeric(const DelayObservation& obs);

/// |psi_sigma(p')|^2 |psi_Sigma(P')|^2 with p' = (p1 - p2)/2, P' = p1 + p2 and
/// normalized 3-D Gaussian densities (2 pi s^2)^(-3/2) exp(-k^2 / (2 s^2)).
double pair_model_momentum_density(const Vec& p1, const Vec& p2, const PairModelParams& params);

struct CurvePoint {
  double delta_t = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double probability = 0.0;
};

struct Curve {
  std::vector<CurvePoint> points;
  std::vector<double> skipped;  // delays with no physical inversion
};

/// P(DT) = prod_n (p_n/r_n)^3 |Phi(p_1 r_hat_1, p_2 r_hat_2)|^2. With
/// `normalize_peak` the curve is divided by its largest value.
Curve coincidence_curve(const Geometry& geometry, const PairModelParams& params, double E,
                        std::span<const double> delta_t, bool normalize_peak = false, Exec exec = Exec::Parallel);

struct CoincidenceDataset {
  std::vector<double> delta_t;
  std::vector<std::int64_t> counts;
  Geometry geometry;
  double E = 0.0;
  double normalization = 1.0;

  void validate() const;
};

/// Poisson counts with means n_events P(DT_i) / sum_j P(DT_j). Each bin draws
/// from its own engine seeded from (seed, bin) so results do not depend on
/// evaluation order.
CoincidenceDataset synthesize_dataset(const Geometry& geometry, const PairModelParams& params, double E,
                                      std::span<const double> delta_t, double n_events, std::uint64_t seed);

struct FitResult {
  PairModelParams params;
  double normalization = 0.0;
  std::vector<double> residuals;  // (count - model) / sqrt(max(count, 1))
  Mat covariance;                 // (sigma, Sigma, normalization)
  double chi2 = 0.0;
  int dof = 0;
  int iterations = 0;
  double kappa = 0.0;         // 1/(4 sigma^2) - 1/Sigma^2
  double kappa_stderr = NAN;  // from the (kappa, log A) Fisher matrix; equal masses only
  int rank = 0;        // numerical rank of the Fisher matrix
  std::vector<std::string> notes;
};

/// Levenberg-Marquardt in (log sigma, log Sigma, log A) with model
/// A P(DT) / P(0) and weights 1 / max(count, 1).
FitResult fit_pair_model(const CoincidenceDataset& dataset, const PairModelParams& initial, int max_iterations = 500);

void write_dataset_csv(std::ostream& os, const CoincidenceDataset& dataset);
CoincidenceDataset read_dataset_csv(std::istream& is, const Geometry& geometry, double E);
void write_curve_csv(std::ostream& os, const Curve& curve);
std::string fit_report_json(const FitResult& fit);

}  // namespace itkit::coincidence
