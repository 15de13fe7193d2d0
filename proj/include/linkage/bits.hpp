#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace linkage {

using Locus = std::size_t;

/// Chromosomes are packed into a single machine word; bit i holds locus i.
inline constexpr std::size_t kMaxLoci = 64;

constexpr std::uint64_t low_mask(std::size_t n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

constexpr std::uint64_t locus_bit(Locus v) noexcept { return std::uint64_t{1} << v; }

/// A set of loci stored as a bitmask. Iteration yields loci in ascending order.
class LocusSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Locus;
    using difference_type = std::ptrdiff_t;
    using pointer = const Locus*;
    using reference = Locus;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr Locus operator*() const { return static_cast<Locus>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr LocusSet() = default;
  constexpr explicit LocusSet(std::uint64_t mask) : mask_(mask) {}
  constexpr LocusSet(std::initializer_list<Locus> loci) {
    for (Locus v : loci) mask_ |= locus_bit(v);
  }
  template <class Range>
  static LocusSet of(const Range& loci) {
    LocusSet s;
    for (auto v : loci) s.insert(static_cast<Locus>(v));
    return s;
  }

  /// Loci in [first, last).
  static constexpr LocusSet range(Locus first, Locus last) {
    return LocusSet(low_mask(last) & ~low_mask(first));
  }
  static constexpr LocusSet all(std::size_t n) { return LocusSet(low_mask(n)); }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(Locus v) const { return v < kMaxLoci && (mask_ >> v) & 1u; }
  constexpr void insert(Locus v) { mask_ |= locus_bit(v); }
  constexpr void erase(Locus v) { mask_ &= ~locus_bit(v); }
  constexpr Locus front() const { return static_cast<Locus>(std::countr_zero(mask_)); }
  constexpr Locus back() const { return static_cast<Locus>(63 - std::countl_zero(mask_)); }
  constexpr bool subset_of(LocusSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool disjoint(LocusSet other) const { return (mask_ & other.mask_) == 0; }

  constexpr iterator begin() const { return iterator(mask_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<Locus> to_vector() const { return {begin(), end()}; }

  /// "{0,1,3}"
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (Locus v : *this) {
      if (!first) out += ',';
      out += std::to_string(v);
      first = false;
    }
    return out + "}";
  }

  friend constexpr LocusSet operator|(LocusSet a, LocusSet b) { return LocusSet(a.mask_ | b.mask_); }
  friend constexpr LocusSet operator&(LocusSet a, LocusSet b) { return LocusSet(a.mask_ & b.mask_); }
  friend constexpr LocusSet operator-(LocusSet a, LocusSet b) { return LocusSet(a.mask_ & ~b.mask_); }
  constexpr LocusSet& operator|=(LocusSet b) {
    mask_ |= b.mask_;
    return *this;
  }
  constexpr LocusSet& operator&=(LocusSet b) {
    mask_ &= b.mask_;
    return *this;
  }
  constexpr LocusSet& operator-=(LocusSet b) {
    mask_ &= ~b.mask_;
    return *this;
  }
  friend constexpr bool operator==(LocusSet, LocusSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

/// Lexicographic comparison of the sorted locus tuples; shorter prefixes sort first.
inline bool lex_less(LocusSet a, LocusSet b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.end() && ib != b.end();
}

/// Spreads the low |loci| bits of `counter` over `loci`, most significant bit to the
/// smallest locus. Counting 0..2^k-1 therefore visits patterns in text order.
inline std::uint64_t scatter_pattern(std::uint64_t counter, const std::vector<Locus>& loci) {
  std::uint64_t values = 0;
  const std::size_t k = loci.size();
  for (std::size_t j = 0; j < k; ++j) {
    if ((counter >> (k - 1 - j)) & 1u) values |= locus_bit(loci[j]);
  }
  return values;
}

/// Calls visit(values) for every allele pattern on `loci` in lexicographic (text) order.
/// The visitor returns false to stop early. Returns false iff stopped.
template <class Visit>
bool for_each_pattern(LocusSet loci, Visit&& visit) {
  const auto order = loci.to_vector();
  const std::uint64_t count = std::uint64_t{1} << order.size();
  for (std::uint64_t c = 0; c < count; ++c) {
    if (!visit(scatter_pattern(c, order))) return false;
  }
  return true;
}

/// Calls visit(values) for every subset of `free` (as a value mask). Order is unspecified,
/// so callers must reduce order-independently. Returns false iff stopped.
template <class Visit>
bool for_each_submask(std::uint64_t free, Visit&& visit) {
  std::uint64_t sub = 0;
  do {
    if (!visit(sub)) return false;
    sub = (sub - free) & free;
  } while (sub != 0);
  return true;
}

/// Calls visit(subset) for every k-subset of `universe` in lexicographic order of sorted
/// tuples. Returns false iff stopped.
template <class Visit>
bool for_each_combination(LocusSet universe, std::size_t k, Visit&& visit) {
  const auto items = universe.to_vector();
  const std::size_t n = items.size();
  if (k > n) return true;
  if (k == 0) return visit(LocusSet{});
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    LocusSet s;
    for (std::size_t i : idx) s.insert(items[i]);
    if (!visit(s)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace linkage
