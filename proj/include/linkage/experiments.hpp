#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linkage/decomposition.hpp"
#include "linkage/ga.hpp"
#include "linkage/oracles.hpp"

namespace linkage {

// ---------------------------------------------------------------------------
// Sufficient population size
// ---------------------------------------------------------------------------

/// n >= 2^(k^2 + k^3) (ln l + ln 1/delta). Kept symbolic when the power of two is too large
/// to sweep.
struct PacThreshold {
  std::size_t k = 0;
  std::size_t length = 0;
  double delta = 0.0;
  std::size_t exponent = 0;  // k^2 + k^3
  double log_term = 0.0;     // ln l + ln 1/delta
  std::optional<std::uint64_t> n;

  static constexpr std::size_t kMaxFeasibleExponent = 40;

  bool feasible() const { return n.has_value(); }

  std::string symbolic() const {
    std::ostringstream out;
    out << "2^" << exponent << " * (ln " << length << " + ln " << (1.0 / delta) << ")";
    return out.str();
  }

  std::string to_string() const {
    std::ostringstream out;
    out << symbolic();
    if (n) {
      out << " -> n >= " << *n;
    } else {
      out << " ~ 2^" << (static_cast<double>(exponent) + std::log2(log_term));
    }
    return out.str();
  }
};

inline PacThreshold pac_threshold(std::size_t k, std::size_t length, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (k == 0 || length == 0) throw InvalidArgument("k and l must be positive");
  PacThreshold t;
  t.k = k;
  t.length = length;
  t.delta = delta;
  t.exponent = k * k + k * k * k;
  t.log_term = std::log(static_cast<double>(length)) + std::log(1.0 / delta);
  if (t.exponent <= PacThreshold::kMaxFeasibleExponent) {
    t.n = static_cast<std::uint64_t>(std::ceil(std::ldexp(t.log_term, static_cast<int>(t.exponent))));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Binomial helpers
// ---------------------------------------------------------------------------

/// P(X <= x) for X ~ Binomial(trials, p).
inline double binomial_cdf(std::size_t x, std::size_t trials, double p) {
  if (x >= trials) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  double sum = 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (std::size_t i = 0; i <= x; ++i) {
    const double ln_choose = std::lgamma(trials + 1.0) - std::lgamma(i + 1.0) - std::lgamma(trials - i + 1.0);
    sum += std::exp(ln_choose + static_cast<double>(i) * lp + static_cast<double>(trials - i) * lq);
  }
  return std::min(sum, 1.0);
}

/// One-sided Clopper-Pearson lower confidence bound on p from `successes` out of `trials`.
inline double clopper_pearson_lower(std::size_t successes, std::size_t trials, double alpha) {
  if (successes == 0) return 0.0;
  // P(X >= successes | p) is increasing in p; find where it equals alpha.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double upper_tail = 1.0 - binomial_cdf(successes - 1, trials, mid);
    (upper_tail < alpha ? lo : hi) = mid;
  }
  return lo;
}

/// False only if the data reject "p >= target" at level alpha.
inline bool consistent_with_rate(std::size_t successes, std::size_t trials, double target, double alpha) {
  return binomial_cdf(successes, trials, target) > alpha;
}

// ---------------------------------------------------------------------------
// PAC sweep
// ---------------------------------------------------------------------------

struct PacSweepConfig {
  double delta = 0.1;
  std::vector<std::size_t> populations;  // empty: use the threshold when it is feasible
  std::size_t runs = 500;
  std::uint64_t seed = 0;
  std::optional<std::size_t> k;  // default: decomposition difficulty of the EG
  SubsetOrder order = SubsetOrder::lexicographic;

  void validate() const {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    if (runs < 30) throw InvalidArgument("a PAC sweep needs at least 30 runs per n");
  }
};

struct PacRow {
  std::size_t n = 0;
  std::size_t runs = 0;
  std::size_t correct = 0;
  std::size_t wrong = 0;    // finished with a non-optimal chromosome
  std::size_t failure = 0;  // returned Failure
  double mean_evaluations = 0.0;
  bool meets_threshold = false;

  double success_rate() const { return static_cast<double>(correct) / static_cast<double>(runs); }
  double wrong_rate() const { return static_cast<double>(wrong) / static_cast<double>(runs); }
  double failure_rate() const { return static_cast<double>(failure) / static_cast<double>(runs); }
};

struct PacSweep {
  PacThreshold threshold;
  std::vector<PacRow> rows;
};

/// Run r at every n uses the same derived seed, so smaller populations are prefixes of larger ones.
inline PacRow pac_row(const Landscape& land, std::size_t n, const PacSweepConfig& config) {
  PacRow row;
  row.n = n;
  row.runs = config.runs;
  double evals = 0.0;
  for (std::size_t r = 0; r < config.runs; ++r) {
    const DecompositionTrace t = ipe(land.problem(), IpeConfig{n, run_seed(config.seed, r), config.order});
    evals += static_cast<double>(t.evaluations);
    if (t.failed()) {
      ++row.failure;
    } else if (*t.result == land.optimum()) {
      ++row.correct;
    } else {
      ++row.wrong;
    }
  }
  row.mean_evaluations = evals / static_cast<double>(config.runs);
  return row;
}

inline PacSweep pac_sweep(const Landscape& land, const PacSweepConfig& config) {
  config.validate();
  const std::size_t k = config.k ? *config.k : decomposition_difficulty(build_eg(land));
  PacSweep out;
  out.threshold = pac_threshold(k, land.size(), config.delta);
  std::vector<std::size_t> ns = config.populations;
  if (ns.empty()) {
    if (!out.threshold.feasible()) {
      throw InvalidArgument("threshold " + out.threshold.symbolic() + " is infeasible; pass explicit n values");
    }
    ns.push_back(static_cast<std::size_t>(*out.threshold.n));
  }
  for (std::size_t n : ns) {
    PacRow row = pac_row(land, n, config);
    row.meets_threshold = out.threshold.feasible() && n >= *out.threshold.n;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace linkage
