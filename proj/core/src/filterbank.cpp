#include "gsp/filterbank.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "gsp/error.hpp"
#include "gsp/random.hpp"
#include "gsp/sampler_design.hpp"

namespace gsp {

namespace {

void require_valid_band(const SpectralDecomposition& decomp, SpectralBand band) {
  if (band.begin < 0 || band.end > decomp.size() || band.width() < 1) {
    fail(ErrorCode::BadK, "band [" + std::to_string(band.begin) + ", " + std::to_string(band.end) +
                              ") is empty or outside the spectrum of size " +
                              std::to_string(decomp.size()));
  }
}

void require_partition(const FilterBank& bank) {
  if (bank.empty()) fail(ErrorCode::BandsNotPartition, "filter bank has no channels");
  const Index n = bank.front().psi.ambient_size();
  std::vector<SpectralBand> bands;
  for (const auto& ch : bank) {
    if (ch.psi.ambient_size() != n) fail(ErrorCode::BandsNotPartition, "channels act on different graphs");
    bands.push_back(ch.band);
  }
  std::sort(bands.begin(), bands.end(), [](auto a, auto b) { return a.begin < b.begin; });
  Index next = 0;
  for (const auto& b : bands) {
    if (b.begin != next || b.width() < 1) {
      fail(ErrorCode::BandsNotPartition, "channel bands leave a gap or overlap at slot " +
                                             std::to_string(next));
    }
    next = b.end;
  }
  if (next != n) fail(ErrorCode::BandsNotPartition, "channel bands do not cover the spectrum");
}

std::optional<SamplingOperator> qualified_or_none(SamplingOperator psi,
                                                  const SpectralDecomposition& reordered, Index k) {
  if (is_qualified(psi, reordered, k)) return psi;
  return std::nullopt;
}

}  // namespace

BandProjector band_projector(const SpectralDecomposition& decomp, SpectralBand band) {
  require_valid_band(decomp, band);
  const Index w = band.width();
  return {decomp.v.middleCols(band.begin, w) * decomp.v_inv.middleRows(band.begin, w), band};
}

std::pair<BandProjector, BandProjector> band_projectors(const SpectralDecomposition& decomp,
                                                        Index k) {
  const Index n = decomp.size();
  if (k <= 0 || k >= n) {
    fail(ErrorCode::BadK, "split point " + std::to_string(k) + " must lie strictly inside (0, " +
                              std::to_string(n) + ")");
  }
  return {band_projector(decomp, {0, k}), band_projector(decomp, {k, n})};
}

std::vector<Index> band_first_permutation(Index n, SpectralBand band) {
  std::vector<Index> perm;
  perm.reserve(static_cast<std::size_t>(n));
  for (Index i = band.begin; i < band.end; ++i) perm.push_back(i);
  for (Index i = 0; i < n; ++i) {
    if (i < band.begin || i >= band.end) perm.push_back(i);
  }
  return perm;
}

ChannelCodec make_channel(const SpectralDecomposition& decomp, SpectralBand band,
                          ChannelPolicy policy, Seed seed) {
  require_valid_band(decomp, band);
  const Index n = decomp.size();
  const Index w = band.width();
  auto perm = band_first_permutation(n, band);
  const SpectralDecomposition reordered = reorder_spectrum(decomp, perm);

  std::optional<SamplingOperator> psi;
  if (policy == ChannelPolicy::Greedy) {
    psi = qualified_or_none(greedy_optimal_sampler(reordered, w, w).op(n), reordered, w);
  } else {
    for (int attempt = 0; attempt < kRandomRetryBudget && !psi; ++attempt) {
      psi = qualified_or_none(random_sampler(n, w, derive_seed(seed, static_cast<Seed>(attempt))),
                              reordered, w);
    }
  }
  if (!psi) {
    fail(ErrorCode::NoQualifiedOperatorFound, "no qualified sampling operator for band [" +
                                                  std::to_string(band.begin) + ", " +
                                                  std::to_string(band.end) + ")");
  }

  Interpolator interp = build_interpolator(*psi, reordered, w);
  SampledGraph sampled = sampled_graph_shift(*psi, reordered, w);
  return ChannelCodec{band,
                      std::move(perm),
                      std::move(*psi),
                      std::move(interp),
                      std::move(sampled),
                      band_projector(decomp, band)};
}

FilterBank make_filter_bank(const SpectralDecomposition& decomp, std::span<const Index> widths,
                            ChannelPolicy policy, Seed seed) {
  const Index total = std::accumulate(widths.begin(), widths.end(), Index{0});
  if (widths.empty() || total != decomp.size()) {
    fail(ErrorCode::BandsNotPartition, "channel widths sum to " + std::to_string(total) +
                                           ", spectrum has " + std::to_string(decomp.size()) +
                                           " slots");
  }
  FilterBank bank;
  Index begin = 0;
  for (std::size_t c = 0; c < widths.size(); ++c) {
    bank.push_back(make_channel(decomp, {begin, begin + widths[c]}, policy, derive_seed(seed, c)));
    begin += widths[c];
  }
  return bank;
}

std::vector<Vector> analyze(const FilterBank& bank, const GraphSignal& x) {
  require_partition(bank);
  std::vector<Vector> out;
  out.reserve(bank.size());
  for (const auto& ch : bank) out.push_back(ch.encode(x));
  return out;
}

GraphSignal synthesize(const FilterBank& bank, const std::vector<Vector>& channel_samples) {
  require_partition(bank);
  if (channel_samples.size() != bank.size()) {
    fail(ErrorCode::DimensionMismatch, "got samples for " + std::to_string(channel_samples.size()) +
                                           " channels, bank has " + std::to_string(bank.size()));
  }
  Vector sum = Vector::Zero(bank.front().psi.ambient_size());
  for (std::size_t c = 0; c < bank.size(); ++c) sum += bank[c].decode(channel_samples[c]).values;
  return {sum};
}

std::vector<ChannelEnergy> channel_energy_report(const FilterBank& bank, const GraphSignal& x,
                                                 double threshold) {
  const auto samples = analyze(bank, x);
  std::vector<ChannelEnergy> out;
  for (std::size_t c = 0; c < bank.size(); ++c) {
    const double e = samples[c].norm();
    out.push_back({bank[c].band, e, e > threshold});
  }
  return out;
}

}  // namespace gsp
