#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sparkforge/error.hpp"
#include "sparkforge/number_theory.hpp"

namespace sparkforge {

/// Sorted, duplicate-free subset of Z_N.
class IndexSet {
 public:
  IndexSet() = default;

  /// Members are sorted and deduplicated; anything outside [0, N) is rejected.
  IndexSet(std::int64_t order, std::vector<std::int64_t> members) : order_(order) {
    if (order < 1) throw Error(Errc::InvalidInput, "index set order must be positive");
    for (auto m : members)
      if (m < 0 || m >= order)
        throw Error(Errc::IndexOutOfRange,
                    std::to_string(m) + " not in Z_" + std::to_string(order));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
  }

  /// {0, ..., count-1} in Z_N.
  static IndexSet prefix(std::int64_t order, std::int64_t count) {
    std::vector<std::int64_t> m(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) m[static_cast<std::size_t>(i)] = i;
    return IndexSet(order, std::move(m));
  }

  static IndexSet full(std::int64_t order) { return prefix(order, order); }

  /// Subset of Z_N encoded by the low N bits of `mask`.
  static IndexSet from_mask(std::int64_t order, std::uint64_t mask) {
    std::vector<std::int64_t> m;
    for (std::int64_t i = 0; i < order; ++i)
      if (mask >> i & 1U) m.push_back(i);
    return IndexSet(order, std::move(m));
  }

  std::int64_t order() const { return order_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<std::int64_t>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(std::int64_t m) const {
    return std::binary_search(members_.begin(), members_.end(), m);
  }

  IndexSet complement() const {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < order_; ++i)
      if (!contains(i)) out.push_back(i);
    return IndexSet(order_, std::move(out));
  }

  IndexSet translate(std::int64_t shift) const {
    std::vector<std::int64_t> out;
    out.reserve(members_.size());
    for (auto m : members_) out.push_back(mod(m + shift, order_));
    return IndexSet(order_, std::move(out));
  }

  /// {a*m mod N}; only a bijection when gcd(a, N) = 1.
  IndexSet scale(std::int64_t a) const {
    std::vector<std::int64_t> out;
    out.reserve(members_.size());
    for (auto m : members_) out.push_back(mod(a * m, order_));
    return IndexSet(order_, std::move(out));
  }

  std::vector<std::size_t> as_indices() const {
    return std::vector<std::size_t>(members_.begin(), members_.end());
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(members_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    if (auto c = a.order_ <=> b.order_; c != 0) return c;
    return a.members_ <=> b.members_;
  }

 private:
  std::int64_t order_ = 1;
  std::vector<std::int64_t> members_;
};

}  // namespace sparkforge
