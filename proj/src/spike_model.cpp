#include "spectral_clt/spike_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectral_clt/errors.hpp"

namespace spectral_clt {

SpikedModel::SpikedModel(int p, int n, std::vector<Spike> spikes, int total)
    : p_(p), n_(n), spikes_(std::move(spikes)), total_multiplicity_(total) {}

SpikedModel SpikedModel::create(int p, int n, std::vector<Spike> spikes) {
  if (p < 1 || n < 1) {
    std::ostringstream msg;
    msg << "dimension and sample size must be positive (p=" << p << ", n=" << n << ")";
    throw InvalidSpike(msg.str());
  }
  long total = 0;
  for (const auto& s : spikes) {
    if (!std::isfinite(s.value) || s.value <= 0.0) {
      std::ostringstream msg;
      msg << "spike value must be positive and finite, got " << s.value;
      throw InvalidSpike(msg.str());
    }
    if (s.value == 1.0) {
      throw NotASpike("spike value 1 is the base eigenvalue, not a spike");
    }
    if (s.multiplicity < 1) {
      std::ostringstream msg;
      msg << "spike " << s.value << " has multiplicity " << s.multiplicity << " < 1";
      throw InvalidSpike(msg.str());
    }
    total += s.multiplicity;
  }
  std::sort(spikes.begin(), spikes.end(),
            [](const Spike& a, const Spike& b) { return a.value > b.value; });
  auto dup = std::adjacent_find(spikes.begin(), spikes.end(),
                                [](const Spike& a, const Spike& b) { return a.value == b.value; });
  if (dup != spikes.end()) {
    std::ostringstream msg;
    msg << "spike value " << dup->value << " listed twice; use its multiplicity instead";
    throw DuplicateSpike(msg.str());
  }
  if (total >= p) {
    std::ostringstream msg;
    msg << "total spike multiplicity " << total << " must be below p=" << p;
    throw TooManySpikes(msg.str());
  }
  return SpikedModel(p, n, std::move(spikes), static_cast<int>(total));
}

double SpikedModel::population_eigenvalue(int i) const {
  if (i < 0 || i >= p_) throw DomainError("coordinate index out of range");
  int offset = 0;
  for (const auto& s : spikes_) {
    if (i < offset + s.multiplicity) return s.value;
    offset += s.multiplicity;
  }
  return 1.0;
}

bool is_distant(double a, double y) {
  const double r = std::sqrt(y);
  if (y < 1.0) return std::abs(a - 1.0) > r;
  return a - 1.0 > r;
}

SpikeClasses classify_spikes(const SpikedModel& model) {
  SpikeClasses out;
  const double y = model.aspect_ratio();
  for (const auto& s : model.spikes()) {
    (is_distant(s.value, y) ? out.distant : out.close).push_back(s);
  }
  return out;
}

double phi(double a, double y) {
  if (!(a > 0.0) || !(y > 0.0)) throw DomainError("phi requires a > 0 and y > 0");
  if (a == 1.0) throw DomainError("phi has a pole at a = 1");
  return a + y * a / (a - 1.0);
}

std::vector<Atom> population_esd(const SpikedModel& model) {
  const double p = model.dimension();
  std::vector<Atom> atoms;
  atoms.reserve(model.spike_count() + 1);
  atoms.push_back({1.0, (p - model.total_multiplicity()) / p});
  for (const auto& s : model.spikes()) atoms.push_back({s.value, s.multiplicity / p});
  return atoms;
}

}  // namespace spectral_clt
