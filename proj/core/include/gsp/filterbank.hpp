#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gsp/sampling.hpp"

namespace gsp {

/// Half-open range [begin, end) of spectral slots.
struct SpectralBand {
  Index begin = 0;
  Index end = 0;

  Index width() const noexcept { return end - begin; }
  bool operator==(const SpectralBand&) const = default;
};

/// V diag(1 on band) V^-1.
struct BandProjector {
  Matrix matrix;
  SpectralBand band;

  GraphSignal apply(const GraphSignal& x) const { return {matrix * x.values}; }
};

BandProjector band_projector(const SpectralDecomposition& decomp, SpectralBand band);

/// Low pass covers slots [0, k), high pass [k, N). Throws BadK unless 0 < k < N.
std::pair<BandProjector, BandProjector> band_projectors(const SpectralDecomposition& decomp,
                                                        Index k);

enum class ChannelPolicy {
  Greedy,
  /// Up to 64 random subsets of the band width, first qualified one wins.
  RandomWithRetry,
};

inline constexpr int kRandomRetryBudget = 64;

/// One filter-bank channel: the band is moved to the front of the spectrum by
/// `permutation`, then sampled and interpolated as a bandlimited signal.
struct ChannelCodec {
  SpectralBand band;
  std::vector<Index> permutation;  // slot i of the channel spectrum = original slot permutation[i]
  SamplingOperator psi;
  Interpolator interp;
  SampledGraph sampled_graph;
  BandProjector projector;

  Vector encode(const GraphSignal& x) const { return psi.apply(projector.matrix * x.values); }
  GraphSignal decode(const Vector& samples) const { return interpolate(interp, samples); }
};

/// Band slots first (in order), remaining slots after them (in order).
std::vector<Index> band_first_permutation(Index n, SpectralBand band);

/// Throws NoQualifiedOperatorFound when the random policy exhausts its retries.
ChannelCodec make_channel(const SpectralDecomposition& decomp, SpectralBand band,
                          ChannelPolicy policy = ChannelPolicy::Greedy, Seed seed = 0);

using FilterBank = std::vector<ChannelCodec>;

/// Consecutive channels of the given widths; widths must sum to N.
FilterBank make_filter_bank(const SpectralDecomposition& decomp, std::span<const Index> widths,
                            ChannelPolicy policy = ChannelPolicy::Greedy, Seed seed = 0);

/// Channel c yields Psi^c P^c x. Throws BandsNotPartition.
std::vector<Vector> analyze(const FilterBank& bank, const GraphSignal& x);

/// Sum over channels of Phi^c x^c, accumulated in channel order.
GraphSignal synthesize(const FilterBank& bank, const std::vector<Vector>& channel_samples);

struct ChannelEnergy {
  SpectralBand band;
  double energy = 0.0;  // ||Psi^c P^c x||_2
  bool flagged = false;  // energy above the threshold
};

/// Sampled-domain energies per channel. They are not expected to sum to ||x||.
std::vector<ChannelEnergy> channel_energy_report(const FilterBank& bank, const GraphSignal& x,
                                                 double threshold);

}  // namespace gsp
