#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace permgraph {

/// p channels x n time samples of finite reals, stored channel-major.
class MultivariateSignal {
 public:
  /// `data` holds channel 0's n samples, then channel 1's, and so on.
  /// `channel_names` is either empty or has one label per channel.
  MultivariateSignal(std::size_t channels, std::size_t length, std::vector<double> data,
                     std::vector<std::string> channel_names = {});

  static MultivariateSignal from_channels(const std::vector<std::vector<double>>& channels,
                                          std::vector<std::string> channel_names = {});

  std::size_t channels() const noexcept { return channels_; }
  std::size_t length() const noexcept { return length_; }

  /// Sample at time t of channel s, both 0-based.
  double at(std::size_t channel, std::size_t time) const { return data_[channel * length_ + time]; }

  std::span<const double> channel(std::size_t s) const {
    return {data_.data() + s * length_, length_};
  }
  std::span<const double> data() const noexcept { return data_; }
  const std::vector<std::string>& channel_names() const noexcept { return channel_names_; }

  /// Vertex signal on directed_path(n) □ I_p: flat[t * p + s] = u(s, t).
  std::vector<double> time_major() const;

  /// Copy with the first `count` time samples dropped.
  MultivariateSignal drop_leading(std::size_t count) const;

 private:
  std::size_t channels_;
  std::size_t length_;
  std::vector<double> data_;
  std::vector<std::string> channel_names_;
};

}  // namespace permgraph
