#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkage/landscape.hpp"

namespace linkage {

enum class EpistasisKind { none, strict, nonstrict };
enum class EpistasisStrength { strong, weak, neither };

inline const char* to_string(EpistasisKind k) {
  switch (k) {
    case EpistasisKind::none: return "none";
    case EpistasisKind::strict: return "strict";
    case EpistasisKind::nonstrict: return "nonstrict";
  }
  return "?";
}

inline const char* to_string(EpistasisStrength s) {
  switch (s) {
    case EpistasisStrength::strong: return "strong";
    case EpistasisStrength::weak: return "weak";
    case EpistasisStrength::neither: return "neither";
  }
  return "?";
}

namespace detail {

inline EpistasisKind classify(const Landscape& land, const PsiSummary& flipped, Locus v) {
  const AlleleSet at = flipped.at(v);
  if (at == AlleleSet::only(land.g(v))) return EpistasisKind::none;
  if (at == AlleleSet::only(land.g_bar(v))) return EpistasisKind::strict;
  return EpistasisKind::nonstrict;
}

inline void require_locus(const Landscape& land, Locus v) {
  if (v >= land.size()) throw InvalidArgument("locus " + std::to_string(v) + " out of range");
}

}  // namespace detail

/// Order-1 relation {u} => v. Only Ψ_{(u,ḡ)} needs a scan: Ψ_{(u,g)}[v] is always {g[v]}.
inline EpistasisKind order1(const Landscape& land, Locus u, Locus v) {
  detail::require_locus(land, u);
  detail::require_locus(land, v);
  if (u == v) throw InvalidArgument("order-1 epistasis needs u != v");
  return detail::classify(land, land.psi(land.incorrect({u})), v);
}

/// order1(u, v) for every v; entry u is none.
inline std::vector<EpistasisKind> order1_row(const Landscape& land, Locus u) {
  detail::require_locus(land, u);
  const PsiSummary flipped = land.psi(land.incorrect({u}));
  std::vector<EpistasisKind> row(land.size(), EpistasisKind::none);
  for (Locus v = 0; v < land.size(); ++v) {
    if (v != u) row[v] = detail::classify(land, flipped, v);
  }
  return row;
}

/// Memoizes constrained-optima summaries by assignment. Not thread-safe.
class PsiCache {
 public:
  explicit PsiCache(const Landscape& land) : land_(land) {}

  const Landscape& landscape() const { return land_; }

  const PsiSummary& get(const Assignment& a) {
    const Key key{a.coverage().mask(), a.values()};
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(key, land_.psi(a)).first;
    return it->second;
  }

  std::size_t entries() const { return memo_.size(); }

 private:
  struct Key {
    std::uint64_t coverage;
    std::uint64_t values;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.coverage * 0x9E3779B97F4A7C15ull ^ k.values);
    }
  };

  const Landscape& land_;
  std::unordered_map<Key, PsiSummary, KeyHash> memo_;
};

/// Outcome of testing S => v; witnesses[i] is the assignment that makes the i-th locus of S
/// (ascending) essential.
struct EpistasisTest {
  bool epistatic = false;
  std::vector<Assignment> witnesses;
};

/// S => v iff every s in S has an assignment A on S whose removal of s changes Ψ_A[v].
/// Assignments are tried in lexicographic order; the search stops at the first witness per s.
inline EpistasisTest test_epistasis(PsiCache& cache, LocusSet loci, Locus v) {
  const Landscape& land = cache.landscape();
  detail::require_locus(land, v);
  if (!loci.subset_of(land.loci())) throw InvalidArgument("epistasis loci out of range");
  if (loci.contains(v)) throw InvalidArgument("target locus " + std::to_string(v) + " lies in S");
  EpistasisTest out;
  if (loci.empty()) return out;
  for (Locus s : loci) {
    std::optional<Assignment> witness;
    for_each_pattern(loci, [&](std::uint64_t values) {
      const Assignment a = Assignment::from_masks(loci, values);
      const AlleleSet with = cache.get(a).at(v);
      if (with != cache.get(a.without(s)).at(v)) {
        witness = a;
        return false;
      }
      return true;
    });
    if (!witness) return EpistasisTest{};
    out.witnesses.push_back(*witness);
  }
  out.epistatic = true;
  return out;
}

inline bool epistatic(PsiCache& cache, LocusSet loci, Locus v) { return test_epistasis(cache, loci, v).epistatic; }

inline bool epistatic(const Landscape& land, LocusSet loci, Locus v) {
  PsiCache cache(land);
  return epistatic(cache, loci, v);
}

/// Strong when every nonempty proper subset is epistatic to v, weak when none is.
/// Requires S => v.
inline EpistasisStrength strength(PsiCache& cache, LocusSet loci, Locus v) {
  if (!epistatic(cache, loci, v)) {
    throw InvalidArgument("strength needs an epistasis; " + loci.to_string() + " is not epistatic to " +
                          std::to_string(v));
  }
  if (loci.size() == 1) return EpistasisStrength::strong;
  std::size_t yes = 0;
  std::size_t no = 0;
  for_each_submask(loci.mask(), [&](std::uint64_t sub) {
    if (sub == 0 || sub == loci.mask()) return true;
    (epistatic(cache, LocusSet(sub), v) ? yes : no) += 1;
    return !(yes > 0 && no > 0);
  });
  if (no == 0) return EpistasisStrength::strong;
  if (yes == 0) return EpistasisStrength::weak;
  return EpistasisStrength::neither;
}

inline EpistasisStrength strength(const Landscape& land, LocusSet loci, Locus v) {
  PsiCache cache(land);
  return strength(cache, loci, v);
}

struct WeakEpistasis {
  LocusSet loci;
  Locus target = 0;
  std::vector<Assignment> witnesses;
};

/// All weak epistases S => v with 2 <= |S| <= max_order, ordered by (|S|, S, v).
/// A weak S cannot contain an in-neighbour of v, which prunes most candidates.
inline std::vector<WeakEpistasis> find_weak_epistases(const Landscape& land, std::size_t max_order) {
  const std::size_t n = land.size();
  std::vector<LocusSet> in(n);
  for (Locus u = 0; u < n; ++u) {
    const auto row = order1_row(land, u);
    for (Locus v = 0; v < n; ++v) {
      if (row[v] != EpistasisKind::none) in[v].insert(u);
    }
  }
  PsiCache cache(land);
  std::vector<WeakEpistasis> found;
  for (std::size_t q = 2; q <= max_order && q < n; ++q) {
    for_each_combination(land.loci(), q, [&](LocusSet s) {
      for (Locus v = 0; v < n; ++v) {
        if (s.contains(v) || !s.disjoint(in[v])) continue;
        EpistasisTest t = test_epistasis(cache, s, v);
        if (t.epistatic && strength(cache, s, v) == EpistasisStrength::weak) {
          found.push_back(WeakEpistasis{s, v, std::move(t.witnesses)});
        }
      }
      return true;
    });
  }
  return found;
}

// ---------------------------------------------------------------------------
// Stationary deception
// ---------------------------------------------------------------------------

struct StationaryDeception {
  Locus source = 0;
  Locus target = 0;
  Assignment assignment;
};

/// A[u] = ḡ[u], v uncovered, and ḡ[v] stays a constrained-optimal allele at v for every
/// completion of the other loci.
inline bool is_stationary_deception(const Landscape& land, Locus u, Locus v, const Assignment& a) {
  detail::require_locus(land, u);
  detail::require_locus(land, v);
  if (a[u] != std::optional<Allele>(land.g_bar(u))) {
    throw InvalidArgument("stationary deception must assign the incorrect allele at u");
  }
  if (a.coverage().contains(v)) throw InvalidArgument("stationary deception must leave v unassigned");
  if (!a.coverage().subset_of(land.loci())) throw InvalidArgument("assignment loci out of range");
  const LocusSet rest = land.loci() - a.coverage() - LocusSet{v};
  land.limits().require(rest.size(), land.limits().oracle_bits, "stationary deception");
  const std::uint64_t vbit = locus_bit(v);
  const std::uint64_t wrong = land.g_bar(v) ? vbit : 0;
  return for_each_submask(rest.mask(), [&](std::uint64_t r) {
    const std::uint64_t base = a.values() | r;
    const Fitness f_wrong = land.fitness_bits(base | wrong);
    const Fitness f_right = land.fitness_bits(base | (vbit & ~wrong));
    return f_wrong >= f_right;
  });
}

/// Smallest stationary deception of {u} => v; ties go to the lexicographically first
/// (sorted coverage, then allele pattern).
inline StationaryDeception minimum_stationary_deception(const Landscape& land, Locus u, Locus v) {
  if (order1(land, u, v) == EpistasisKind::none) {
    throw InvalidArgument("no epistasis {" + std::to_string(u) + "} => " + std::to_string(v));
  }
  land.limits().require(land.size(), land.limits().oracle_bits, "minimum stationary deception");
  const LocusSet others = land.loci() - LocusSet{u, v};
  const Assignment pinned = land.incorrect({u});
  for (std::size_t extra = 0; extra <= others.size(); ++extra) {
    std::optional<Assignment> best;
    for_each_combination(land.loci() - LocusSet{v}, extra + 1, [&](LocusSet cover) {
      if (!cover.contains(u)) return true;
      const LocusSet t = cover - LocusSet{u};
      for_each_pattern(t, [&](std::uint64_t values) {
        const Assignment a = pinned.merged(Assignment::from_masks(t, values));
        if (is_stationary_deception(land, u, v, a)) best = a;
        return !best;
      });
      return !best;
    });
    if (best) return StationaryDeception{u, v, *best};
  }
  throw Error("no stationary deception found");  // unreachable: a nearly full constrained optimum qualifies
}

}  // namespace linkage
