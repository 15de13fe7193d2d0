#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkage/bits.hpp"

namespace linkage {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured number of free loci.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string what, std::size_t required_bits, std::size_t cap_bits)
      : Error(what + ": needs 2^" + std::to_string(required_bits) +
              " enumerations, cap is 2^" + std::to_string(cap_bits)),
        required_bits_(required_bits),
        cap_bits_(cap_bits) {}
  std::size_t required_bits() const { return required_bits_; }
  std::size_t cap_bits() const { return cap_bits_; }

 private:
  std::size_t required_bits_;
  std::size_t cap_bits_;
};

/// The global optimum is not unique.
class AssumptionViolation : public Error {
 public:
  using Error::Error;
};

/// Enumeration budgets, all expressed as a number of free binary loci.
struct Limits {
  std::size_t enumeration_bits = 24;  // constrained optima and global optimum
  std::size_t oracle_bits = 16;       // stationary-optimum style checks
  std::size_t table_bits = 20;        // landscapes up to this size are tabulated

  void require(std::size_t bits, std::size_t cap, const std::string& what) const {
    if (bits > cap) throw CapExceeded(what, bits, cap);
  }
};

// ---------------------------------------------------------------------------
// Fitness
// ---------------------------------------------------------------------------

/// Exact fitness stored in half units, so every half-integer value compares exactly.
class Fitness {
 public:
  static constexpr std::int64_t kScale = 2;

  constexpr Fitness() = default;
  static constexpr Fitness units(std::int64_t whole) { return Fitness(whole * kScale); }
  static constexpr Fitness halves(std::int64_t h) { return Fitness(h); }
  static constexpr Fitness lowest() { return Fitness(INT64_MIN / 4); }

  /// Parses a decimal that must be a multiple of 0.5.
  static Fitness from_double(double value) {
    const double scaled = value * kScale;
    const auto rounded = static_cast<std::int64_t>(scaled >= 0 ? scaled + 0.5 : scaled - 0.5);
    if (static_cast<double>(rounded) != scaled) {
      throw ParseError("fitness value " + std::to_string(value) + " is not a multiple of 0.5");
    }
    return Fitness(rounded);
  }

  constexpr std::int64_t scaled() const { return halves_; }
  constexpr double value() const { return static_cast<double>(halves_) / kScale; }

  std::string to_string() const {
    std::string out = std::to_string(halves_ / kScale);
    if (halves_ % kScale != 0) {
      if (halves_ < 0 && halves_ / kScale == 0) out = "-0";
      out += ".5";
    }
    return out;
  }

  constexpr Fitness operator+(Fitness o) const { return Fitness(halves_ + o.halves_); }
  constexpr Fitness& operator+=(Fitness o) {
    halves_ += o.halves_;
    return *this;
  }
  constexpr auto operator<=>(const Fitness&) const = default;

 private:
  constexpr explicit Fitness(std::int64_t halves) : halves_(halves) {}
  std::int64_t halves_ = 0;
};

// ---------------------------------------------------------------------------
// Chromosome
// ---------------------------------------------------------------------------

using Allele = std::uint8_t;

/// Fixed-length bit string. Text form puts locus 0 leftmost.
class Chromosome {
 public:
  Chromosome() = default;
  explicit Chromosome(std::size_t size, std::uint64_t bits = 0) : bits_(bits & low_mask(size)), size_(size) {
    if (size > kMaxLoci) {
      throw InvalidArgument("chromosome length " + std::to_string(size) + " exceeds " +
                            std::to_string(kMaxLoci));
    }
  }

  static Chromosome ones(std::size_t size) { return Chromosome(size, low_mask(size)); }
  static Chromosome zeros(std::size_t size) { return Chromosome(size, 0); }

  static Chromosome parse(std::string_view text) {
    if (text.size() > kMaxLoci) throw ParseError("bit string longer than " + std::to_string(kMaxLoci));
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        bits |= locus_bit(i);
      } else if (text[i] != '0') {
        throw ParseError("invalid character in bit string \"" + std::string(text) + "\"");
      }
    }
    return Chromosome(text.size(), bits);
  }

  std::size_t size() const { return size_; }
  std::uint64_t bits() const { return bits_; }

  Allele operator[](Locus v) const { return static_cast<Allele>((bits_ >> check(v)) & 1u); }

  void set(Locus v, Allele a) {
    check(v);
    if (a) {
      bits_ |= locus_bit(v);
    } else {
      bits_ &= ~locus_bit(v);
    }
  }

  Chromosome complement() const { return Chromosome(size_, ~bits_); }

  std::size_t count_ones() const { return static_cast<std::size_t>(std::popcount(bits_)); }

  std::string to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if ((bits_ >> i) & 1u) out[i] = '1';
    }
    return out;
  }

  friend bool operator==(const Chromosome&, const Chromosome&) = default;

  /// Text (lexicographic) order; shorter chromosomes first.
  friend std::strong_ordering operator<=>(const Chromosome& a, const Chromosome& b) {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return std::strong_ordering::equal;
    const auto first = std::countr_zero(diff);
    return ((a.bits_ >> first) & 1u) ? std::strong_ordering::greater : std::strong_ordering::less;
  }

 private:
  Locus check(Locus v) const {
    if (v >= size_) {
      throw InvalidArgument("locus " + std::to_string(v) + " out of range for length " +
                            std::to_string(size_));
    }
    return v;
  }

  std::uint64_t bits_ = 0;
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Assignment
// ---------------------------------------------------------------------------

/// A partial map from loci to alleles; unassigned loci read as the wildcard.
class Assignment {
 public:
  Assignment() = default;

  Assignment(std::initializer_list<std::pair<Locus, Allele>> pairs) {
    for (const auto& [v, a] : pairs) assign(v, a);
  }

  static Assignment from_masks(LocusSet coverage, std::uint64_t values) {
    Assignment out;
    out.coverage_ = coverage;
    out.values_ = values & coverage.mask();
    return out;
  }

  /// {(S, a)}: every locus of S takes the constant allele.
  static Assignment batch(LocusSet loci, Allele constant) {
    return from_masks(loci, constant ? loci.mask() : 0);
  }

  /// {(S, g)}: every locus of S takes the allele the pattern has there.
  static Assignment batch(LocusSet loci, const Chromosome& pattern) {
    if (!loci.empty() && loci.back() >= pattern.size()) {
      throw InvalidArgument("batch loci exceed pattern length");
    }
    return from_masks(loci, pattern.bits());
  }

  void assign(Locus v, Allele a) {
    if (v >= kMaxLoci) throw InvalidArgument("locus " + std::to_string(v) + " out of range");
    if (coverage_.contains(v)) {
      throw InvalidArgument("locus " + std::to_string(v) + " assigned twice");
    }
    coverage_.insert(v);
    if (a) values_ |= locus_bit(v);
  }

  std::optional<Allele> operator[](Locus v) const {
    if (!coverage_.contains(v)) return std::nullopt;
    return static_cast<Allele>((values_ >> v) & 1u);
  }

  LocusSet coverage() const { return coverage_; }
  std::uint64_t values() const { return values_; }
  std::size_t size() const { return coverage_.size(); }
  bool empty() const { return coverage_.empty(); }

  Assignment without(Locus v) const { return from_masks(coverage_ - LocusSet{v}, values_); }

  Assignment restricted(LocusSet loci) const { return from_masks(coverage_ & loci, values_); }

  /// Union of two assignments on disjoint coverages.
  Assignment merged(const Assignment& other) const {
    if (!coverage_.disjoint(other.coverage_)) {
      throw InvalidArgument("merged assignments overlap on " +
                            (coverage_ & other.coverage_).to_string());
    }
    return from_masks(coverage_ | other.coverage_, values_ | other.values_);
  }

  /// Raw bit form of applying to a packed chromosome.
  std::uint64_t apply_bits(std::uint64_t bits) const { return (bits & ~coverage_.mask()) | values_; }

  Chromosome apply(const Chromosome& c) const {
    if (!coverage_.empty() && coverage_.back() >= c.size()) {
      throw InvalidArgument("assignment locus " + std::to_string(coverage_.back()) +
                            " out of range for length " + std::to_string(c.size()));
    }
    return Chromosome(c.size(), apply_bits(c.bits()));
  }

  bool matches(const Chromosome& c) const { return (c.bits() & coverage_.mask()) == values_; }

  /// "{1:0, 3:1}"
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (Locus v : coverage_) {
      if (!first) out += ", ";
      out += std::to_string(v) + ":" + std::to_string((values_ >> v) & 1u);
      first = false;
    }
    return out + "}";
  }

  /// Pattern over `length` loci with '*' for unassigned positions, e.g. "*0*1".
  std::string to_pattern(std::size_t length) const {
    std::string out(length, '*');
    for (Locus v : coverage_) {
      if (v < length) out[v] = ((values_ >> v) & 1u) ? '1' : '0';
    }
    return out;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  LocusSet coverage_;
  std::uint64_t values_ = 0;
};

inline Chromosome apply(const Assignment& a, const Chromosome& c) { return a.apply(c); }
inline LocusSet coverage(const Assignment& a) { return a.coverage(); }
inline Assignment batch(LocusSet loci, Allele constant) { return Assignment::batch(loci, constant); }
inline Assignment batch(LocusSet loci, const Chromosome& pattern) { return Assignment::batch(loci, pattern); }

// ---------------------------------------------------------------------------
// Exact ratios for accuracy scores
// ---------------------------------------------------------------------------

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InvalidArgument("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    return g > 1 ? Ratio{n / g, d / g} : Ratio{n, d};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return (a.num * b.den) <=> (b.num * a.den);
  }
};

}  // namespace linkage
