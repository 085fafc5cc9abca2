#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"

namespace subsum {

// 0/1 selection vector e.
using Indicator = std::vector<int>;

inline Integer total(std::span<const Integer> a) {
  Integer s = 0;
  for (const auto& x : a) s += x;
  return s;
}

inline Integer subset_sum(std::span<const Integer> a, const Indicator& e) {
  if (a.size() != e.size()) {
    throw DimensionMismatch("indicator length does not match weights");
  }
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (e[i]) s += a[i];
  return s;
}

inline bool is_binary(const Indicator& e) {
  for (int x : e)
    if (x != 0 && x != 1) return false;
  return true;
}

// e in {0,1}^n with sum e_i a_i == T.
inline bool is_witness(std::span<const Integer> a, const Indicator& e,
                       const Integer& target) {
  return e.size() == a.size() && is_binary(e) && subset_sum(a, e) == target;
}

inline Indicator complement(const Indicator& e) {
  Indicator out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = 1 - e[i];
  return out;
}

inline std::size_t weight(const Indicator& e) {
  std::size_t w = 0;
  for (int x : e) w += x != 0;
  return w;
}

inline void require_positive(std::span<const Integer> a) {
  if (a.empty()) throw PreconditionError("instance has no weights");
  for (const auto& x : a)
    if (x <= 0) throw PreconditionError("weights must be positive");
}

}  // namespace subsum
