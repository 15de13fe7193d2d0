#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "linkage/core.hpp"
#include "linkage/problem.hpp"

namespace linkage {

/// One of {0}, {1}, {0,1}; the empty set only appears for an empty scan.
class AlleleSet {
 public:
  constexpr AlleleSet() = default;
  constexpr AlleleSet(bool has_zero, bool has_one) : zero_(has_zero), one_(has_one) {}
  static constexpr AlleleSet only(Allele a) { return a ? AlleleSet(false, true) : AlleleSet(true, false); }
  static constexpr AlleleSet both() { return AlleleSet(true, true); }

  constexpr bool contains(Allele a) const { return a ? one_ : zero_; }
  constexpr std::size_t size() const { return std::size_t{zero_} + std::size_t{one_}; }
  constexpr bool is_singleton() const { return size() == 1; }

  std::string to_string() const {
    if (zero_ && one_) return "{0,1}";
    if (zero_) return "{0}";
    if (one_) return "{1}";
    return "{}";
  }

  friend constexpr bool operator==(AlleleSet, AlleleSet) = default;

 private:
  bool zero_ = false;
  bool one_ = false;
};

/// Summary of the constrained optima under an assignment: the shared best fitness, the
/// number of maximizers, and which alleles appear at each locus among them.
struct PsiSummary {
  Fitness fitness = Fitness::lowest();
  std::uint64_t count = 0;
  std::uint64_t seen_one = 0;   // loci where some maximizer has a 1
  std::uint64_t seen_zero = 0;  // loci where some maximizer has a 0

  AlleleSet at(Locus v) const { return AlleleSet((seen_zero >> v) & 1u, (seen_one >> v) & 1u); }

  /// Every maximizer carries this allele at v.
  bool fixed_at(Locus v, Allele a) const { return at(v) == AlleleSet::only(a); }

  void add(Fitness f, std::uint64_t bits, std::uint64_t full) {
    if (f > fitness) {
      fitness = f;
      count = 1;
      seen_one = bits;
      seen_zero = ~bits & full;
    } else if (f == fitness) {
      ++count;
      seen_one |= bits;
      seen_zero |= ~bits & full;
    }
  }
};

struct ConstrainedOptima {
  std::vector<Chromosome> chromosomes;  // in text order
  Fitness fitness;
  std::vector<AlleleSet> per_locus;
};

namespace detail {

/// Scans every completion of `a` over `length` loci with the given bit evaluator.
template <class Eval>
PsiSummary summarize(std::size_t length, const Assignment& a, Eval&& eval, const Limits& limits) {
  if (!a.empty() && a.coverage().back() >= length) {
    throw InvalidArgument("assignment locus " + std::to_string(a.coverage().back()) + " out of range for length " +
                          std::to_string(length));
  }
  const std::uint64_t full = low_mask(length);
  const std::uint64_t free = full & ~a.coverage().mask();
  limits.require(static_cast<std::size_t>(std::popcount(free)), limits.enumeration_bits, "constrained optima");
  PsiSummary s;
  for_each_submask(free, [&](std::uint64_t sub) {
    const std::uint64_t bits = a.values() | sub;
    s.add(eval(bits), bits, full);
    return true;
  });
  return s;
}

/// Like summarize, but keeps every maximizer.
template <class Eval>
ConstrainedOptima collect(std::size_t length, const Assignment& a, Eval&& eval, const Limits& limits) {
  const PsiSummary s = summarize(length, a, eval, limits);
  ConstrainedOptima out;
  out.fitness = s.fitness;
  const std::uint64_t full = low_mask(length);
  const std::uint64_t free = full & ~a.coverage().mask();
  for_each_submask(free, [&](std::uint64_t sub) {
    const std::uint64_t bits = a.values() | sub;
    if (eval(bits) == s.fitness) out.chromosomes.emplace_back(length, bits);
    return true;
  });
  std::sort(out.chromosomes.begin(), out.chromosomes.end());
  out.per_locus.reserve(length);
  for (Locus v = 0; v < length; ++v) out.per_locus.push_back(s.at(v));
  return out;
}

inline Chromosome unique_maximizer(const FitnessProblem& problem, const PsiSummary& s,
                                   const std::function<Fitness(std::uint64_t)>& eval) {
  const std::size_t n = problem.size();
  if (s.count != 1) {
    std::string tied;
    std::size_t listed = 0;
    for (std::uint64_t bits = 0; bits <= low_mask(n) && listed < 16; ++bits) {
      if (eval(bits) == s.fitness) {
        tied += (listed ? ", " : "") + Chromosome(n, bits).to_string();
        ++listed;
      }
      if (bits == low_mask(n)) break;
    }
    if (s.count > listed) tied += ", ...";
    throw AssumptionViolation("global optimum of " + problem.name() + " is not unique: " + std::to_string(s.count) +
                              " chromosomes reach " + s.fitness.to_string() + " (" + tied + ")");
  }
  return Chromosome(n, s.seen_one);
}

}  // namespace detail

inline ConstrainedOptima constrained_optima(const FitnessProblem& f, const Assignment& a, const Limits& limits = {}) {
  return detail::collect(f.size(), a, [&](std::uint64_t bits) { return f.evaluate_bits(bits); }, limits);
}

inline AlleleSet psi_at(const FitnessProblem& f, const Assignment& a, Locus v, const Limits& limits = {}) {
  if (v >= f.size()) throw InvalidArgument("locus out of range");
  return detail::summarize(f.size(), a, [&](std::uint64_t bits) { return f.evaluate_bits(bits); }, limits).at(v);
}

/// f(A): the fitness of any constrained optimum under A.
inline Fitness eval_assignment(const FitnessProblem& f, const Assignment& a, const Limits& limits = {}) {
  return detail::summarize(f.size(), a, [&](std::uint64_t bits) { return f.evaluate_bits(bits); }, limits).fitness;
}

/// The unique maximizer; throws AssumptionViolation when the maximum is tied.
inline Chromosome global_optimum(const FitnessProblem& f, const Limits& limits = {}) {
  auto eval = [&](std::uint64_t bits) { return f.evaluate_bits(bits); };
  const PsiSummary s = detail::summarize(f.size(), Assignment{}, eval, limits);
  return detail::unique_maximizer(f, s, eval);
}

/// A problem paired with its global optimum and, for small sizes, a dense fitness table.
/// Every exhaustive oracle runs against a Landscape. Immutable once built.
class Landscape {
 public:
  explicit Landscape(FitnessProblem problem, Limits limits = {}) : problem_(std::move(problem)), limits_(limits) {
    const std::size_t n = problem_.size();
    limits_.require(n, limits_.enumeration_bits, "global optimum");
    if (n <= limits_.table_bits) {
      auto table = std::make_shared<std::vector<Fitness>>(std::size_t{1} << n);
      for (std::uint64_t bits = 0; bits < table->size(); ++bits) (*table)[bits] = problem_.evaluate_bits(bits);
      table_ = std::move(table);
    }
    const auto eval = [this](std::uint64_t bits) { return fitness_bits(bits); };
    const PsiSummary s = detail::summarize(n, Assignment{}, eval, limits_);
    optimum_ = detail::unique_maximizer(problem_, s, eval);
    optimum_fitness_ = s.fitness;
  }

  const FitnessProblem& problem() const { return problem_; }
  const Limits& limits() const { return limits_; }
  std::size_t size() const { return problem_.size(); }
  LocusSet loci() const { return LocusSet::all(size()); }

  /// g, the unique global optimum.
  const Chromosome& optimum() const { return optimum_; }
  Fitness optimum_fitness() const { return optimum_fitness_; }
  Allele g(Locus v) const { return optimum_[v]; }
  Allele g_bar(Locus v) const { return static_cast<Allele>(1 - optimum_[v]); }

  /// {(S, g)} and {(S, ḡ)}.
  Assignment correct(LocusSet s) const { return Assignment::batch(s, optimum_); }
  Assignment incorrect(LocusSet s) const { return Assignment::batch(s, optimum_.complement()); }

  Fitness fitness_bits(std::uint64_t bits) const {
    return table_ ? (*table_)[bits] : problem_.evaluate_bits(bits);
  }
  Fitness fitness(const Chromosome& c) const { return fitness_bits(c.bits()); }

  PsiSummary psi(const Assignment& a) const {
    return detail::summarize(size(), a, [this](std::uint64_t bits) { return fitness_bits(bits); }, limits_);
  }
  AlleleSet psi_at(const Assignment& a, Locus v) const { return psi(a).at(v); }
  Fitness eval(const Assignment& a) const { return psi(a).fitness; }
  ConstrainedOptima constrained_optima(const Assignment& a) const {
    return detail::collect(size(), a, [this](std::uint64_t bits) { return fitness_bits(bits); }, limits_);
  }

 private:
  FitnessProblem problem_;
  Limits limits_;
  std::shared_ptr<const std::vector<Fitness>> table_;
  Chromosome optimum_;
  Fitness optimum_fitness_;
};

}  // namespace linkage
