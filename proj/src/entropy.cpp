#include "permgraph/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "permgraph/errors.hpp"

namespace permgraph {

namespace {

void require_finite(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw InvalidArgument("non-finite value at index " + std::to_string(i));
    }
  }
}

// Mixed-radix Lehmer code of a 0-based permutation.
template <class Seq>
std::uint64_t lehmer(const Seq& perm, std::size_t m) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t smaller_after = 0;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (perm[j] < perm[i]) ++smaller_after;
    }
    code = code * (m - i) + smaller_after;
  }
  return code;
}

}  // namespace

void EntropyParams::validate() const {
  if (dimension < 2) throw InvalidArgument("embedding dimension m must be >= 2");
  if (dimension > kMaxDimension) {
    throw InvalidArgument("embedding dimension m must be <= " + std::to_string(kMaxDimension));
  }
  if (delay < 1) throw InvalidArgument("delay L must be >= 1");
}

std::uint64_t factorial(std::size_t m) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= k;
  return f;
}

OrdinalPattern::OrdinalPattern(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {
  const std::size_t m = ranks_.size();
  if (m < 1 || m > kMaxDimension) throw InvalidArgument("pattern length out of range");
  std::vector<bool> seen(m, false);
  for (auto k : ranks_) {
    if (k < 1 || k > m || seen[k - 1]) {
      throw InvalidArgument("ordinal pattern is not a permutation of 1.." + std::to_string(m));
    }
    seen[k - 1] = true;
  }
}

OrdinalPattern OrdinalPattern::from_code(std::uint64_t code, std::size_t dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw InvalidArgument("pattern length out of range");
  }
  if (code >= factorial(dimension)) throw InvalidArgument("pattern code out of range");
  std::vector<std::size_t> digits(dimension);
  for (std::size_t i = dimension; i-- > 0;) {
    const std::size_t radix = dimension - i;
    digits[i] = code % radix;
    code /= radix;
  }
  std::vector<std::size_t> pool(dimension);
  for (std::size_t k = 0; k < dimension; ++k) pool[k] = k + 1;
  std::vector<std::size_t> ranks;
  ranks.reserve(dimension);
  for (auto d : digits) {
    ranks.push_back(pool[d]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return OrdinalPattern(std::move(ranks));
}

std::uint64_t OrdinalPattern::code() const { return lehmer(ranks_, ranks_.size()); }

std::uint64_t ordinal_pattern_code(std::span<const double> v) {
  const std::size_t m = v.size();
  std::array<std::uint8_t, kMaxDimension> order{};
  for (std::size_t i = 0; i < m; ++i) {
    // Stable insertion: equal values keep ascending position.
    std::size_t j = i;
    while (j > 0 && v[order[j - 1]] > v[i]) {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = static_cast<std::uint8_t>(i);
  }
  return lehmer(order, m);
}

OrdinalPattern ordinal_pattern(std::span<const double> v) {
  if (v.size() < 2) throw InvalidArgument("ordinal pattern needs at least 2 values");
  if (v.size() > kMaxDimension) {
    throw InvalidArgument("ordinal pattern longer than " + std::to_string(kMaxDimension));
  }
  require_finite(v);
  return OrdinalPattern::from_code(ordinal_pattern_code(v), v.size());
}

PatternDistribution::PatternDistribution(std::size_t dimension) : dimension_(dimension) {
  if (dimension < 2 || dimension > kMaxDimension) {
    throw InvalidArgument("embedding dimension out of range");
  }
}

void PatternDistribution::add(std::uint64_t code, std::uint64_t count) {
  if (count == 0) return;
  counts_[code] += count;
  total_ += count;
}

void PatternDistribution::add(const OrdinalPattern& pattern, std::uint64_t count) {
  if (pattern.dimension() != dimension_) throw InvalidArgument("pattern length mismatch");
  add(pattern.code(), count);
}

void PatternDistribution::merge(const PatternDistribution& other) {
  if (other.dimension_ != dimension_) throw InvalidArgument("pattern length mismatch");
  for (const auto& [code, count] : other.counts_) add(code, count);
}

std::uint64_t PatternDistribution::count(const OrdinalPattern& pattern) const {
  if (pattern.dimension() != dimension_) return 0;
  const auto it = counts_.find(pattern.code());
  return it == counts_.end() ? 0 : it->second;
}

std::vector<double> PatternDistribution::frequencies() const {
  std::vector<double> out;
  out.reserve(counts_.size());
  for (const auto& [code, count] : counts_) {
    out.push_back(static_cast<double>(count) / static_cast<double>(total_));
  }
  return out;
}

double normalized_shannon(const PatternDistribution& d) {
  if (d.total() == 0) throw InvalidArgument("entropy of an empty pattern distribution");
  double h = 0.0;
  for (double p : d.frequencies()) h -= p * std::log(p);
  h /= std::log(static_cast<double>(factorial(d.dimension())));
  return std::clamp(h, 0.0, 1.0);
}

PatternDistribution pattern_distribution(std::span<const double> x, const EntropyParams& params) {
  params.validate();
  const std::size_t span = params.span();
  if (x.size() < span + 1) {
    throw InvalidArgument("signal has " + std::to_string(x.size()) +
                          " samples; at least " + std::to_string(span + 1) +
                          " are required for m=" + std::to_string(params.dimension) +
                          ", L=" + std::to_string(params.delay));
  }
  require_finite(x);

  PatternDistribution dist(params.dimension);
  std::array<double, kMaxDimension> window{};
  for (std::size_t i = 0; i + span < x.size(); ++i) {
    for (std::size_t k = 0; k < params.dimension; ++k) window[k] = x[i + k * params.delay];
    dist.add(ordinal_pattern_code({window.data(), params.dimension}));
  }
  return dist;
}

double permutation_entropy(std::span<const double> x, const EntropyParams& params) {
  return normalized_shannon(pattern_distribution(x, params));
}

PatternDistribution graph_pattern_distribution(const Graph& g, std::span<const double> x,
                                               const EntropyParams& params) {
  params.validate();
  require_finite(x);
  const auto embedding = neighborhood_embedding(g, x, params.dimension, params.delay);

  PatternDistribution dist(params.dimension);
  for (std::size_t i = 0; i < embedding.num_vertices(); ++i) {
    if (embedding.valid(i)) dist.add(ordinal_pattern_code(embedding.row(i)));
  }
  if (dist.total() == 0) {
    throw NoValidPatterns("no vertex has walks of every length up to " +
                          std::to_string(params.span()) + "; no patterns to count");
  }
  return dist;
}

double pe_graph(const Graph& g, std::span<const double> x, const EntropyParams& params) {
  return normalized_shannon(graph_pattern_distribution(g, x, params));
}

PatternDistribution mmspe_distribution(const MultivariateSignal& u, const EntropyParams& params) {
  PatternDistribution pooled(params.dimension);
  for (std::size_t s = 0; s < u.channels(); ++s) {
    pooled.merge(pattern_distribution(u.channel(s), params));
  }
  return pooled;
}

double mmspe(const MultivariateSignal& u, const EntropyParams& params) {
  return normalized_shannon(mmspe_distribution(u, params));
}

Graph signal_graph(std::size_t length, const Graph& interaction) {
  return cartesian_product(directed_path(length), interaction);
}

PatternDistribution mpe_graph_distribution(const MultivariateSignal& u, const Graph& interaction,
                                           const EntropyParams& params) {
  if (interaction.num_vertices() != u.channels()) {
    throw InvalidArgument("interaction graph has " + std::to_string(interaction.num_vertices()) +
                          " vertices but the signal has " + std::to_string(u.channels()) +
                          " channels");
  }
  params.validate();
  const Graph g = signal_graph(u.length(), interaction);
  return graph_pattern_distribution(g, u.time_major(), params);
}

double mpe_graph(const MultivariateSignal& u, const Graph& interaction,
                 const EntropyParams& params) {
  return normalized_shannon(mpe_graph_distribution(u, interaction, params));
}

}  // namespace permgraph
