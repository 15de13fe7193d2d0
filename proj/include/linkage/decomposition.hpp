#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linkage/graph.hpp"

namespace linkage {

using Rng = std::mt19937_64;

inline Chromosome random_chromosome(std::size_t length, Rng& rng) { return Chromosome(length, rng()); }

/// Fitness calls routed through one place so every algorithm reports exact evaluation counts.
class CountingEvaluator {
 public:
  explicit CountingEvaluator(const FitnessProblem& f) : f_(f) {}

  Fitness operator()(std::uint64_t bits) {
    ++count_;
    return f_.evaluate_bits(bits);
  }

  const FitnessProblem& problem() const { return f_; }
  std::uint64_t count() const { return count_; }

 private:
  const FitnessProblem& f_;
  std::uint64_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Partial enumeration
// ---------------------------------------------------------------------------

struct PeResult {
  Chromosome initial;
  Chromosome chromosome;
  Fitness fitness;
  std::uint64_t evaluations = 0;
  std::vector<Fitness> accepted;  // fitness after each strict improvement
};

/// Enumerates each block of D in order over the current chromosome, keeping strict improvements.
inline PeResult partial_enumeration_from(const FitnessProblem& f, const OrderedPartition& d, const Chromosome& initial,
                                         const Limits& limits = {}) {
  if (initial.size() != f.size()) throw InvalidArgument("initial chromosome length does not match problem");
  OrderedPartition(d.blocks(), f.size());  // validates coverage of this problem's loci
  for (const auto& block : d) limits.require(block.size(), limits.enumeration_bits, "partial enumeration block");

  CountingEvaluator eval(f);
  PeResult out;
  out.initial = initial;
  std::uint64_t y = initial.bits();
  Fitness fy = eval(y);
  for (const auto& block : d) {
    const std::uint64_t keep = ~block.mask();
    for_each_pattern(block, [&](std::uint64_t values) {
      const std::uint64_t candidate = (y & keep) | values;
      const Fitness fc = eval(candidate);
      if (fc > fy) {
        y = candidate;
        fy = fc;
        out.accepted.push_back(fc);
      }
      return true;
    });
  }
  out.chromosome = Chromosome(f.size(), y);
  out.fitness = fy;
  out.evaluations = eval.count();
  return out;
}

inline PeResult partial_enumeration(const FitnessProblem& f, const OrderedPartition& d, std::uint64_t seed,
                                    const Limits& limits = {}) {
  Rng rng(seed);
  return partial_enumeration_from(f, d, random_chromosome(f.size(), rng), limits);
}

// ---------------------------------------------------------------------------
// TestSO
// ---------------------------------------------------------------------------

struct Population {
  std::vector<Chromosome> chromosomes;
  Assignment frozen;

  static Population random(std::size_t length, std::size_t n, Rng& rng) {
    Population p;
    p.chromosomes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) p.chromosomes.push_back(random_chromosome(length, rng));
    return p;
  }

  std::size_t size() const { return chromosomes.size(); }

  void apply(const Assignment& a) {
    for (auto& c : chromosomes) c = a.apply(c);
    frozen = frozen.merged(a);
  }
};

struct TestSoResult {
  bool found = false;
  Assignment assignment;
  std::uint64_t evaluations = 0;
};

/// Every chromosome must have one strictly best pattern on S, and it must be the same pattern
/// for all of them. Returns as soon as either condition breaks.
inline TestSoResult test_so(CountingEvaluator& eval, LocusSet s, const Population& p) {
  if (s.empty()) throw InvalidArgument("TestSO needs a nonempty locus set");
  if (!s.disjoint(p.frozen.coverage())) throw InvalidArgument("TestSO set overlaps frozen loci");
  const std::uint64_t before = eval.count();
  std::optional<std::uint64_t> agreed;
  const std::uint64_t keep = ~s.mask();
  auto done = [&](bool found) {
    TestSoResult r;
    r.found = found;
    if (found) r.assignment = Assignment::from_masks(s, *agreed);
    r.evaluations = eval.count() - before;
    return r;
  };
  for (const auto& c : p.chromosomes) {
    Fitness best = Fitness::lowest();
    std::uint64_t winner = 0;
    bool tied = false;
    for_each_pattern(s, [&](std::uint64_t values) {
      const Fitness fx = eval((c.bits() & keep) | values);
      if (fx > best) {
        best = fx;
        winner = values;
        tied = false;
      } else if (fx == best) {
        tied = true;
      }
      return true;
    });
    if (tied) return done(false);
    if (agreed && *agreed != winner) return done(false);
    agreed = winner;
  }
  return done(agreed.has_value());
}

inline TestSoResult test_so(const FitnessProblem& f, LocusSet s, const Population& p) {
  CountingEvaluator eval(f);
  return test_so(eval, s, p);
}

// ---------------------------------------------------------------------------
// IPE
// ---------------------------------------------------------------------------

enum class SubsetOrder { lexicographic, seeded_random };

inline const char* to_string(SubsetOrder o) {
  return o == SubsetOrder::lexicographic ? "lexicographic" : "seeded-random";
}

struct TraceStep {
  LocusSet loci;
  Assignment assignment;
  std::size_t k = 0;
  std::uint64_t cumulative_evaluations = 0;
};

struct DecompositionTrace {
  std::vector<TraceStep> steps;
  std::optional<Chromosome> result;  // empty on Failure
  std::uint64_t evaluations = 0;          // actual calls; TestSO stops at the first tie or disagreement
  std::uint64_t nominal_evaluations = 0;  // n * 2^|S| per TestSO call, as if every call ran to completion
  std::uint64_t test_so_calls = 0;

  bool failed() const { return !result.has_value(); }
};

struct IpeConfig {
  std::size_t population = 1;
  std::uint64_t seed = 0;
  SubsetOrder order = SubsetOrder::lexicographic;
};

/// Starts over from k = 1 with a fresh subset enumeration after every success.
inline DecompositionTrace ipe(const FitnessProblem& f, const IpeConfig& config) {
  if (config.population == 0) throw InvalidArgument("IPE needs n >= 1");
  Rng rng(config.seed);
  Population p = Population::random(f.size(), config.population, rng);
  CountingEvaluator eval(f);
  DecompositionTrace trace;
  LocusSet u = LocusSet::all(f.size());
  std::size_t k = 1;
  while (k <= u.size()) {
    std::vector<LocusSet> subsets;
    for_each_combination(u, k, [&](LocusSet s) {
      subsets.push_back(s);
      return true;
    });
    if (config.order == SubsetOrder::seeded_random) std::shuffle(subsets.begin(), subsets.end(), rng);
    bool progressed = false;
    for (LocusSet s : subsets) {
      ++trace.test_so_calls;
      trace.nominal_evaluations += static_cast<std::uint64_t>(p.size()) << s.size();
      const TestSoResult r = test_so(eval, s, p);
      if (!r.found) continue;
      p.apply(r.assignment);
      trace.steps.push_back(TraceStep{s, r.assignment, k, eval.count()});
      u -= s;
      progressed = true;
      break;
    }
    if (u.empty()) {
      trace.result = p.chromosomes.front();
      break;
    }
    k = progressed ? 1 : k + 1;
  }
  trace.evaluations = eval.count();
  return trace;
}

inline DecompositionTrace ipe(const FitnessProblem& f, std::size_t n, std::uint64_t seed,
                              SubsetOrder order = SubsetOrder::lexicographic) {
  return ipe(f, IpeConfig{n, seed, order});
}

/// No step's set has an incoming edge from a locus that was still unassigned at that step.
inline bool trace_topological_check(const DecompositionTrace& trace, const EpistaticGraph& g) {
  LocusSet unassigned = LocusSet::all(g.size());
  for (const auto& step : trace.steps) {
    const LocusSet outside = unassigned - step.loci;
    if (!in_set(g, step.loci).disjoint(outside)) return false;
    unassigned -= step.loci;
  }
  return true;
}

}  // namespace linkage
