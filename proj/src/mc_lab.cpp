#include "spectral_clt/mc_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectral_clt/centering.hpp"
#include "spectral_clt/errors.hpp"
#include "spectral_clt/lrt.hpp"
#include "spectral_clt/philox.hpp"

namespace spectral_clt {

Eigen::MatrixXd sample_data(const SpikedModel& model, std::uint64_t seed, std::uint64_t rep,
                            EntryDistribution entries) {
  const int p = model.dimension();
  const int n = model.sample_size();
  Eigen::MatrixXd x(p, n);
  PhiloxStream stream(seed, rep);
  for (int i = 0; i < p; ++i) {
    const double scale = std::sqrt(model.population_eigenvalue(i));
    for (int j = 0; j < n; ++j) {
      const double w = entries == EntryDistribution::gaussian ? stream.next_normal()
                                                              : stream.next_rademacher();
      x(i, j) = scale * w;
    }
  }
  return x;
}

Eigen::MatrixXd sample_covariance(const SpikedModel& model, std::uint64_t seed, std::uint64_t rep,
                                  EntryDistribution entries) {
  const Eigen::MatrixXd x = sample_data(model, seed, rep, entries);
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(x.rows(), x.rows());
  lower.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / static_cast<double>(x.cols()));
  return lower.selfadjointView<Eigen::Lower>();
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverFailure("symmetric eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

std::vector<double> sample_eigenvalues(const ExperimentConfig& config, std::uint64_t rep) {
  try {
    auto values = symmetric_eigenvalues(
        sample_covariance(config.model, config.seed, rep, config.entries));
    std::reverse(values.begin(), values.end());
    return values;
  } catch (const SolverFailure& e) {
    std::ostringstream msg;
    msg << "replicate " << rep << ": " << e.what();
    throw SolverFailure(msg.str());
  }
}

double lss(std::span<const double> eigenvalues, const SpectralFunction& f) {
  double sum = 0.0;
  for (double lambda : eigenvalues) {
    if (!f.in_domain(cplx(lambda, 0.0))) {
      std::ostringstream msg;
      msg << f.name() << " is undefined at eigenvalue " << lambda;
      throw DomainError(msg.str());
    }
    sum += f(lambda);
  }
  return sum;
}

ExperimentReport summarize(std::vector<ReplicateRecord> records) {
  ExperimentReport report;
  report.reps = static_cast<int>(records.size());
  if (records.empty()) throw DomainError("no replicates to summarize");
  double sum = 0.0;
  for (const auto& r : records) sum += r.centered;
  report.emp_mean = sum / report.reps;
  if (report.reps >= 2) {
    double ss = 0.0;
    for (const auto& r : records) ss += (r.centered - report.emp_mean) * (r.centered - report.emp_mean);
    const double var = ss / (report.reps - 1);
    const double se = std::sqrt(var / report.reps);
    report.emp_var = var;
    report.mean_se = se;
    report.ci95 = std::pair{report.emp_mean - 1.96 * se, report.emp_mean + 1.96 * se};
  }
  report.replicates = std::move(records);
  return report;
}

namespace {

void require_reps(const ExperimentConfig& config) {
  if (config.reps < 1) throw DomainError("reps must be at least 1");
}

}  // namespace

ExperimentReport run_clt_experiment(const ExperimentConfig& config) {
  require_reps(config);
  const double p = config.model.dimension();
  const double y = config.model.aspect_ratio();
  const double centering = p * centering_value(config.test_function, config.model).total;

  std::vector<ReplicateRecord> records(static_cast<std::size_t>(config.reps));
  for_each_index(
      records.size(),
      [&](std::size_t r) {
        const auto eig = sample_eigenvalues(config, r);
        const double t = lss(eig, config.test_function);
        records[r] = {r, t, t - centering, false};
      },
      config.backend, config.threads);

  ExperimentReport report = summarize(std::move(records));
  report.centering = centering;
  if (config.test_function.name() == "lrt_g" && y < 1.0 &&
      config.entries == EntryDistribution::gaussian) {
    const auto params = clt_params_g(y);
    report.theory_mean = params.mean;
    report.theory_var = params.variance;
  }
  return report;
}

ExperimentReport empirical_size_power(const ExperimentConfig& config) {
  require_reps(config);
  const int p = config.model.dimension();
  const int n = config.model.sample_size();
  const double y = config.model.aspect_ratio();
  if (!(y < 1.0)) throw DomainError("size/power experiments require p < n");
  if (config.entries != EntryDistribution::gaussian)
    throw DomainError("size/power experiments require Gaussian entries");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");

  std::vector<ReplicateRecord> records(static_cast<std::size_t>(config.reps));
  for_each_index(
      records.size(),
      [&](std::size_t r) {
        const auto eig = sample_eigenvalues(config, r);
        const TestOutcome outcome = run_test(eig, p, n, config.alpha);
        records[r] = {r, outcome.statistic, outcome.centered, outcome.reject};
      },
      config.backend, config.threads);

  std::size_t rejected = 0;
  for (const auto& r : records) rejected += r.reject ? 1 : 0;
  ExperimentReport report = summarize(std::move(records));
  report.centering = p * null_centering_g(y);
  const auto params = clt_params_g(y);
  const double shift = spike_shift(config.model);
  report.theory_mean = params.mean + shift;
  report.theory_var = params.variance;
  report.reject_rate = static_cast<double>(rejected) / report.reps;
  const double theta = config.model.is_null() ? config.alpha : power(config.model, config.alpha);
  report.theory_reject_rate = theta;
  report.reject_se = std::sqrt(theta * (1.0 - theta) / report.reps);
  return report;
}

}  // namespace spectral_clt
