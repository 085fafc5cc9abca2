#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/subset_sum.hpp"

namespace subsum {

inline constexpr std::size_t kEnumerationLimit = 20;
inline constexpr std::size_t kMeetInTheMiddleLimit = 40;

namespace detail {

// Patterns over a block of k weights are coded so that e[0] is the most
// significant bit; increasing codes are then lexicographically increasing.
inline Indicator decode_pattern(std::uint64_t code, std::size_t k) {
  Indicator e(k);
  for (std::size_t i = 0; i < k; ++i) e[i] = (code >> (k - 1 - i)) & 1U;
  return e;
}

// sums[code] for every pattern of the block.
inline std::vector<Integer> block_sums(std::span<const Integer> a) {
  const std::size_t k = a.size();
  std::vector<Integer> s(std::size_t{1} << k);
  s[0] = 0;
  for (std::uint64_t code = 1; code < s.size(); ++code) {
    const int low = __builtin_ctzll(code);  // bit `low` is weight k-1-low
    s[code] = s[code & (code - 1)] + a[k - 1 - static_cast<std::size_t>(low)];
  }
  return s;
}

}  // namespace detail

// Every subset sum, indexed by the lexicographic code of e (e[0] is the
// most significant bit). n <= 20.
inline std::vector<Integer> subset_sum_table(std::span<const Integer> a) {
  if (a.size() > kEnumerationLimit) {
    throw CapacityError("enumeration supports n <= " +
                        std::to_string(kEnumerationLimit) + ", got n = " +
                        std::to_string(a.size()));
  }
  return detail::block_sums(a);
}

// Full 2^n enumeration; lexicographically least witness. n <= 20.
inline std::optional<Indicator> enumerate_oracle(std::span<const Integer> a,
                                                 const Integer& target) {
  const auto sums = subset_sum_table(a);
  for (std::uint64_t code = 0; code < sums.size(); ++code)
    if (sums[code] == target) return detail::decode_pattern(code, a.size());
  return std::nullopt;
}

// Meet in the middle over sorted halves; lexicographically least witness.
// n <= 40.
inline std::optional<Indicator> brute_force_oracle(std::span<const Integer> a,
                                                   const Integer& target) {
  const std::size_t n = a.size();
  if (n > kMeetInTheMiddleLimit) {
    throw CapacityError("meet-in-the-middle supports n <= " +
                        std::to_string(kMeetInTheMiddleLimit) + ", got n = " +
                        std::to_string(n));
  }
  if (n == 0) {
    if (target == 0) return Indicator{};
    return std::nullopt;
  }
  const std::size_t h = n / 2;
  const auto left = detail::block_sums(a.subspan(0, h));
  const auto right_sums = detail::block_sums(a.subspan(h));

  // (sum, code) sorted; for equal sums the smallest code comes first.
  std::vector<std::pair<Integer, std::uint64_t>> right;
  right.reserve(right_sums.size());
  for (std::uint64_t c = 0; c < right_sums.size(); ++c)
    right.emplace_back(right_sums[c], c);
  std::sort(right.begin(), right.end());

  Integer need;
  for (std::uint64_t lc = 0; lc < left.size(); ++lc) {
    need = target - left[lc];
    auto it = std::lower_bound(
        right.begin(), right.end(), need,
        [](const auto& entry, const Integer& v) { return entry.first < v; });
    if (it == right.end() || it->first != need) continue;
    Indicator e = detail::decode_pattern(lc, h);
    Indicator r = detail::decode_pattern(it->second, n - h);
    e.insert(e.end(), r.begin(), r.end());
    return e;
  }
  return std::nullopt;
}

}  // namespace subsum
