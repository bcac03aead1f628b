#include "permgraph/signal.hpp"

#include <cmath>

#include "permgraph/errors.hpp"

namespace permgraph {

MultivariateSignal::MultivariateSignal(std::size_t channels, std::size_t length,
                                       std::vector<double> data,
                                       std::vector<std::string> channel_names)
    : channels_(channels),
      length_(length),
      data_(std::move(data)),
      channel_names_(std::move(channel_names)) {
  if (channels_ == 0) throw InvalidArgument("signal must have at least one channel");
  if (length_ == 0) throw InvalidArgument("signal must have at least one sample");
  if (data_.size() != channels_ * length_) {
    throw InvalidArgument("signal data has " + std::to_string(data_.size()) +
                          " values, expected " + std::to_string(channels_ * length_));
  }
  if (!channel_names_.empty() && channel_names_.size() != channels_) {
    throw InvalidArgument("expected " + std::to_string(channels_) + " channel names, got " +
                          std::to_string(channel_names_.size()));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw InvalidArgument("non-finite sample at channel " + std::to_string(k / length_) +
                            ", time " + std::to_string(k % length_));
    }
  }
}

MultivariateSignal MultivariateSignal::from_channels(
    const std::vector<std::vector<double>>& channels, std::vector<std::string> channel_names) {
  if (channels.empty()) throw InvalidArgument("signal must have at least one channel");
  const std::size_t n = channels.front().size();
  std::vector<double> data;
  data.reserve(channels.size() * n);
  for (std::size_t s = 0; s < channels.size(); ++s) {
    if (channels[s].size() != n) {
      throw InvalidArgument("channel " + std::to_string(s) + " has " +
                            std::to_string(channels[s].size()) + " samples, expected " +
                            std::to_string(n));
    }
    data.insert(data.end(), channels[s].begin(), channels[s].end());
  }
  return {channels.size(), n, std::move(data), std::move(channel_names)};
}

std::vector<double> MultivariateSignal::time_major() const {
  std::vector<double> flat(data_.size());
  for (std::size_t s = 0; s < channels_; ++s) {
    for (std::size_t t = 0; t < length_; ++t) flat[t * channels_ + s] = at(s, t);
  }
  return flat;
}

MultivariateSignal MultivariateSignal::drop_leading(std::size_t count) const {
  if (count >= length_) throw InvalidArgument("cannot drop every sample of a signal");
  const std::size_t kept = length_ - count;
  std::vector<double> data;
  data.reserve(channels_ * kept);
  for (std::size_t s = 0; s < channels_; ++s) {
    auto ch = channel(s);
    data.insert(data.end(), ch.begin() + static_cast<std::ptrdiff_t>(count), ch.end());
  }
  return {channels_, kept, std::move(data), channel_names_};
}

}  // namespace permgraph
