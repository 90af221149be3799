#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spectral_clt/kernels.hpp"
#include "spectral_clt/spectral_function.hpp"
#include "spectral_clt/spike_model.hpp"

namespace spectral_clt {

enum class EntryDistribution { gaussian, rademacher };

struct ExperimentConfig {
  SpikedModel model;
  int reps = 1;
  std::uint64_t seed = 0;
  EntryDistribution entries = EntryDistribution::gaussian;
  SpectralFunction test_function = functions::lrt_g();
  double alpha = 0.05;
  Backend backend = Backend::openmp;
  int threads = 0;
};

/// One Monte Carlo replicate. For CLT runs `statistic` is T_n(f) and
/// `centered` is X_n(f); for size/power runs they are the test statistic and
/// its null-centered value.
struct ReplicateRecord {
  std::uint64_t rep = 0;
  double statistic = 0.0;
  double centered = 0.0;
  bool reject = false;
};

struct ExperimentReport {
  int reps = 0;
  double emp_mean = 0.0;
  std::optional<double> emp_var;  ///< needs reps >= 2
  std::optional<double> mean_se;
  std::optional<std::pair<double, double>> ci95;
  std::optional<double> theory_mean;
  std::optional<double> theory_var;
  std::optional<double> reject_rate;
  std::optional<double> theory_reject_rate;
  std::optional<double> reject_se;  ///< binomial SE at the theory rate
  /// p F^{y_n,H_n}(f) (CLT runs) or p G^{y_n}(g) (size/power runs).
  double centering = 0.0;
  std::vector<ReplicateRecord> replicates;
};

/// p x n matrix Sigma^{1/2} Z for replicate `rep`. Entries of Z are drawn
/// row-major from PhiloxStream(seed, rep).
Eigen::MatrixXd sample_data(const SpikedModel& model, std::uint64_t seed, std::uint64_t rep,
                            EntryDistribution entries);

/// S_n = (1/n) X X^T with X from sample_data.
Eigen::MatrixXd sample_covariance(const SpikedModel& model, std::uint64_t seed,
                                  std::uint64_t rep, EntryDistribution entries);

/// Eigenvalues of a symmetric matrix in descending order. Throws
/// SolverFailure if the eigensolver does not converge.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& s);

std::vector<double> sample_eigenvalues(const ExperimentConfig& config, std::uint64_t rep);

/// T_n(f) = sum f(lambda_i). Throws DomainError if f is undefined at an
/// eigenvalue.
double lss(std::span<const double> eigenvalues, const SpectralFunction& f);

/// X_n(f) = T_n(f) - p F^{y_n,H_n}(f) per replicate. Theory fields are set
/// only for f = lrt_g with 0 < y_n < 1, where m(g), v(g) are known.
ExperimentReport run_clt_experiment(const ExperimentConfig& config);

/// Runs the sphericity test on every replicate. The theory rejection rate
/// is alpha under the null model and power(model, alpha) otherwise.
ExperimentReport empirical_size_power(const ExperimentConfig& config);

/// Mean/variance/SE/CI of `centered` over the records, in record order.
ExperimentReport summarize(std::vector<ReplicateRecord> records);

}  // namespace spectral_clt
