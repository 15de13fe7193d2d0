#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "linkage/decomposition.hpp"

namespace linkage {

struct GaConfig {
  std::size_t population = 500;
  double crossover = 0.9;
  double mutation = 0.01;
  std::size_t generations = 10;
  std::size_t runs = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    if (population == 0) throw InvalidArgument("GA population must be positive");
    if (!(crossover >= 0.0 && crossover <= 1.0)) throw InvalidArgument("crossover probability outside [0, 1]");
    if (!(mutation >= 0.0 && mutation <= 1.0)) throw InvalidArgument("mutation probability outside [0, 1]");
    if (runs == 0) throw InvalidArgument("runs must be at least 1");
  }
};

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Seed of the r-th independent run derived from a base seed.
inline std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

using GenerationVisitor = std::function<void(std::size_t generation, const std::vector<Chromosome>& population)>;

/// Simple generational GA: binary tournament with replacement, consecutive pairing, uniform
/// crossover per pair, bit-flip mutation, no elitism. visit() sees generations 0..generations.
inline void run_ga(const FitnessProblem& f, const GaConfig& config, std::uint64_t seed, const GenerationVisitor& visit) {
  config.validate();
  Rng rng(seed);
  const std::size_t n = config.population;
  const std::size_t len = f.size();
  std::vector<Chromosome> pop;
  pop.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pop.push_back(random_chromosome(len, rng));
  visit(0, pop);

  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Fitness> fit(n);
  std::vector<Chromosome> pool(n);
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    for (std::size_t i = 0; i < n; ++i) fit[i] = f.evaluate(pop[i]);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      std::size_t w;
      if (fit[a] != fit[b]) {
        w = fit[a] > fit[b] ? a : b;
      } else {
        w = (rng() & 1u) ? a : b;
      }
      pool[i] = pop[w];
    }
    for (std::size_t i = 0; i + 1 < n; i += 2) {
      if (!bernoulli(rng, config.crossover)) continue;
      const std::uint64_t swap = rng() & low_mask(len);
      const std::uint64_t x = pool[i].bits();
      const std::uint64_t y = pool[i + 1].bits();
      pool[i] = Chromosome(len, (x & ~swap) | (y & swap));
      pool[i + 1] = Chromosome(len, (y & ~swap) | (x & swap));
    }
    if (config.mutation > 0.0) {
      for (auto& c : pool) {
        std::uint64_t flip = 0;
        for (std::size_t v = 0; v < len; ++v) {
          if (bernoulli(rng, config.mutation)) flip |= locus_bit(v);
        }
        c = Chromosome(len, c.bits() ^ flip);
      }
    }
    pop.swap(pool);
    visit(gen, pop);
  }
}

inline std::vector<std::vector<Chromosome>> run_ga(const FitnessProblem& f, const GaConfig& config) {
  std::vector<std::vector<Chromosome>> snapshots;
  run_ga(f, config, config.seed, [&](std::size_t, const std::vector<Chromosome>& p) { snapshots.push_back(p); });
  return snapshots;
}

// ---------------------------------------------------------------------------
// Observability of weak epistases
// ---------------------------------------------------------------------------

struct ObservabilityTarget {
  LocusSet loci;       // S
  Locus target = 0;    // v
  Assignment witness;  // pattern on S ∪ {v} counted as an observation

  ObservabilityTarget(LocusSet s, Locus v, Assignment w) : loci(s), target(v), witness(std::move(w)) {
    if (s.contains(v) || witness.coverage() != (s | LocusSet{v})) {
      throw InvalidArgument("witness must cover exactly S and the target locus");
    }
  }

  std::size_t order() const { return loci.size(); }
  bool observed_in(const std::vector<Chromosome>& population) const {
    for (const auto& c : population) {
      if (witness.matches(c)) return true;
    }
    return false;
  }
};

/// One target per block of a OneMax′ concatenation: S is the block minus its last locus,
/// observed when the whole block is zero.
inline std::vector<ObservabilityTarget> onemax_prime_targets(const std::vector<std::size_t>& block_sizes) {
  std::vector<ObservabilityTarget> out;
  Locus start = 0;
  for (std::size_t b : block_sizes) {
    const LocusSet block = LocusSet::range(start, start + b);
    const Locus last = start + b - 1;
    out.emplace_back(block - LocusSet{last}, last, Assignment::batch(block, Allele{0}));
    start += b;
  }
  return out;
}

struct ObservabilityRow {
  std::size_t block_order = 0;
  std::size_t population_size = 0;
  std::size_t generation = 0;
  double probability = 0.0;
  std::size_t runs = 0;
  double stderr_ = 0.0;
};

inline double binomial_stderr(double p, std::size_t runs) { return std::sqrt(p * (1.0 - p) / static_cast<double>(runs)); }

/// Probability over runs that some member carries each target's witness, at each generation
/// 0..config.generations for the configured population size. Rows ordered by (target, generation).
inline std::vector<ObservabilityRow> observability_by_generation(const FitnessProblem& f,
                                                                 const std::vector<ObservabilityTarget>& targets,
                                                                 const GaConfig& config) {
  config.validate();
  const std::size_t gens = config.generations + 1;
  std::vector<std::size_t> hits(targets.size() * gens, 0);
  for (std::size_t run = 0; run < config.runs; ++run) {
    run_ga(f, config, run_seed(config.seed, run), [&](std::size_t gen, const std::vector<Chromosome>& pop) {
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (targets[t].observed_in(pop)) ++hits[t * gens + gen];
      }
    });
  }
  std::vector<ObservabilityRow> rows;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t gen = 0; gen < gens; ++gen) {
      const double p = static_cast<double>(hits[t * gens + gen]) / static_cast<double>(config.runs);
      rows.push_back({targets[t].order(), config.population, gen, p, config.runs, binomial_stderr(p, config.runs)});
    }
  }
  return rows;
}

/// Generation-0 probability for each population size. Rows ordered by (target, population).
inline std::vector<ObservabilityRow> observability_by_population(const FitnessProblem& f,
                                                                 const std::vector<ObservabilityTarget>& targets,
                                                                 const std::vector<std::size_t>& populations,
                                                                 const GaConfig& config) {
  std::vector<ObservabilityRow> rows;
  std::vector<std::vector<ObservabilityRow>> per_size;
  for (std::size_t n : populations) {
    GaConfig c = config;
    c.population = n;
    c.generations = 0;
    per_size.push_back(observability_by_generation(f, targets, c));
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (const auto& table : per_size) rows.push_back(table[t]);
  }
  return rows;
}

/// 1 − (1 − 2^−b)^n: chance that n uniform chromosomes include a fixed b-bit pattern.
inline double uniform_presence_probability(std::size_t bits, std::size_t n) {
  return 1.0 - std::pow(1.0 - std::ldexp(1.0, -static_cast<int>(bits)), static_cast<double>(n));
}

}  // namespace linkage
