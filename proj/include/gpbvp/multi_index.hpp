#pragma once

#include <initializer_list>
#include <numeric>
#include <vector>

#include "gpbvp/errors.hpp"

namespace gpbvp {

/// A d-tuple of non-negative integers selecting a mixed partial
/// derivative: (a1,...,ad) stands for d^a1/dx1^a1 ... d^ad/dxd^ad.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> components) : components_(std::move(components)) {
    if (components_.empty() || components_.size() > 3)
      throw ConfigError("multi-index dimension must be in [1, 3]");
    for (int c : components_)
      if (c < 0) throw ConfigError("multi-index components must be non-negative");
  }

  MultiIndex(std::initializer_list<int> components)
      : MultiIndex(std::vector<int>(components)) {}

  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(dim, 0)); }

  int dimension() const { return static_cast<int>(components_.size()); }

  /// |alpha| = a1 + ... + ad.
  int order() const { return std::accumulate(components_.begin(), components_.end(), 0); }

  int operator[](int r) const { return components_[static_cast<std::size_t>(r)]; }
  const std::vector<int>& components() const { return components_; }

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> components_;
};

}  // namespace gpbvp
