#pragma once

#include <span>
#include <vector>

namespace spectral_clt {

/// A population eigenvalue different from one, repeated `multiplicity` times.
struct Spike {
  double value = 0.0;
  int multiplicity = 1;

  friend bool operator==(const Spike&, const Spike&) = default;
};

/// Population covariance with all eigenvalues equal to one except a fixed
/// set of spikes. Spikes are kept sorted by decreasing value.
class SpikedModel {
 public:
  /// Validates and normalizes the model.
  ///
  /// Throws InvalidSpike for a non-positive or non-finite value or a
  /// multiplicity below one, NotASpike for a value equal to one,
  /// DuplicateSpike for repeated values and TooManySpikes when the total
  /// multiplicity reaches p.
  static SpikedModel create(int p, int n, std::vector<Spike> spikes = {});

  int dimension() const noexcept { return p_; }
  int sample_size() const noexcept { return n_; }
  /// y_n = p / n.
  double aspect_ratio() const noexcept { return static_cast<double>(p_) / static_cast<double>(n_); }
  /// M, the number of population eigenvalues that are spikes.
  int total_multiplicity() const noexcept { return total_multiplicity_; }
  std::size_t spike_count() const noexcept { return spikes_.size(); }
  std::span<const Spike> spikes() const noexcept { return spikes_; }
  bool is_null() const noexcept { return spikes_.empty(); }

  /// Population eigenvalue of coordinate `i`; spikes occupy the leading
  /// coordinates in stored order.
  double population_eigenvalue(int i) const;

 private:
  SpikedModel(int p, int n, std::vector<Spike> spikes, int total);

  int p_;
  int n_;
  std::vector<Spike> spikes_;
  int total_multiplicity_;
};

struct SpikeClasses {
  std::vector<Spike> distant;
  std::vector<Spike> close;

  /// k1 in the centering expansion.
  std::size_t distant_count() const noexcept { return distant.size(); }
};

/// Whether a spike escapes the bulk at aspect ratio y.
bool is_distant(double a, double y);

SpikeClasses classify_spikes(const SpikedModel& model);

/// Almost-sure limit of the sample eigenvalue attached to a distant spike:
/// a + y a / (a - 1).
double phi(double a, double y);

struct Atom {
  double location;
  double mass;
};

/// Spectral distribution of the population covariance: the unit atom first,
/// then one atom per spike in stored order.
std::vector<Atom> population_esd(const SpikedModel& model);

}  // namespace spectral_clt
