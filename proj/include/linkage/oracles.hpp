#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "linkage/graph.hpp"

namespace linkage {

// ---------------------------------------------------------------------------
// Stationary optima
// ---------------------------------------------------------------------------

/// A completion R under which `rival` does at least as well as the tested assignment.
struct SoCounterexample {
  Assignment completion;
  Assignment rival;
};

/// For every completion R of the other loci, A ∪ R beats A' ∪ R for every other A' on C(A).
inline std::optional<SoCounterexample> stationary_optimum_counterexample(const Landscape& land, const Assignment& a) {
  if (a.empty()) throw InvalidArgument("stationary optimum check needs a nonempty assignment");
  if (!a.coverage().subset_of(land.loci())) throw InvalidArgument("assignment loci out of range");
  land.limits().require(land.size(), land.limits().oracle_bits, "stationary optimum");
  const LocusSet cov = a.coverage();
  const LocusSet rest = land.loci() - cov;
  std::optional<SoCounterexample> found;
  for_each_pattern(rest, [&](std::uint64_t r) {
    const Fitness mine = land.fitness_bits(a.values() | r);
    for_each_pattern(cov, [&](std::uint64_t other) {
      if (other != a.values() && land.fitness_bits(other | r) >= mine) {
        found = SoCounterexample{Assignment::from_masks(rest, r), Assignment::from_masks(cov, other)};
      }
      return !found;
    });
    return !found;
  });
  return found;
}

inline bool is_stationary_optimum(const Landscape& land, const Assignment& a) {
  return !stationary_optimum_counterexample(land, a).has_value();
}

/// Smallest {(S, g)} with v in S that is stationarily optimal; among equal sizes the
/// lexicographically first S wins. Only all-g candidates can qualify, so no others are tried.
inline Assignment minimum_stationary_optimum(const Landscape& land, Locus v) {
  if (v >= land.size()) throw InvalidArgument("locus out of range");
  land.limits().require(land.size(), land.limits().oracle_bits, "minimum stationary optimum");
  const LocusSet others = land.loci() - LocusSet{v};
  for (std::size_t extra = 0; extra <= others.size(); ++extra) {
    std::optional<Assignment> best;
    for_each_combination(land.loci(), extra + 1, [&](LocusSet s) {
      if (!s.contains(v)) return true;
      const Assignment candidate = land.correct(s);
      if (is_stationary_optimum(land, candidate)) best = candidate;
      return !best;
    });
    if (best) return *best;
  }
  throw Error("no stationary optimum contains locus " + std::to_string(v));  // unreachable: V qualifies
}

// ---------------------------------------------------------------------------
// Theorem reports
// ---------------------------------------------------------------------------

enum class ClaimStatus { pass, fail, not_applicable };

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::not_applicable: return "not-applicable";
  }
  return "?";
}

struct Claim {
  std::string subject;    // e.g. "v=3"
  std::string statement;  // e.g. "C(M_SO(v)) = IN*(v)"
  ClaimStatus status = ClaimStatus::pass;
  std::string detail;
  std::optional<Assignment> counterexample;  // always set when status is fail
};

struct TheoremReport {
  std::string problem;
  std::string theorem;
  std::size_t audited_order = 0;
  std::vector<Claim> claims;
  std::vector<WeakEpistasis> premise_witnesses;  // weak epistases that void the premise
  std::vector<std::string> notes;

  ClaimStatus overall() const {
    bool any_pass = false;
    for (const auto& c : claims) {
      if (c.status == ClaimStatus::fail) return ClaimStatus::fail;
      any_pass = any_pass || c.status == ClaimStatus::pass;
    }
    return any_pass ? ClaimStatus::pass : ClaimStatus::not_applicable;
  }

  std::size_t count(ClaimStatus s) const {
    return static_cast<std::size_t>(std::count_if(claims.begin(), claims.end(), [s](const Claim& c) { return c.status == s; }));
  }
};

struct OracleOptions {
  std::size_t audit_order = 4;  // weak epistases are searched up to this |S|
};

namespace detail {

inline Claim claim(std::string subject, std::string statement, bool ok, std::string detail = "",
                   std::optional<Assignment> counterexample = std::nullopt) {
  return Claim{std::move(subject), std::move(statement), ok ? ClaimStatus::pass : ClaimStatus::fail, std::move(detail),
               std::move(counterexample)};
}

inline void mark_not_applicable(TheoremReport& r, const std::string& why) {
  for (auto& c : r.claims) {
    c.status = ClaimStatus::not_applicable;
    c.counterexample.reset();
  }
  r.notes.push_back(why);
}

inline std::string describe(const WeakEpistasis& w) { return w.loci.to_string() + " => " + std::to_string(w.target); }

}  // namespace detail

/// C(M_SO(v)) = IN*(v) for every v, plus the in-closure assignment being stationarily optimal.
/// With weak epistasis present the claims are still computed but reported as not applicable.
inline TheoremReport verify_decomposition_theorem(const Landscape& land, const OracleOptions& options = {}) {
  TheoremReport r;
  r.problem = land.problem().name();
  r.theorem = "decomposition";
  r.audited_order = options.audit_order;
  r.premise_witnesses = find_weak_epistases(land, options.audit_order);
  const EpistaticGraph g = build_eg(land);
  for (Locus v = 0; v < land.size(); ++v) {
    const std::string subject = "v=" + std::to_string(v);
    const LocusSet closure = in_closure(g, v);
    const Assignment mso = minimum_stationary_optimum(land, v);
    const bool same = mso.coverage() == closure;
    r.claims.push_back(detail::claim(subject, "C(M_SO(v)) = IN*(v)", same,
                                     "C(M_SO(v)) = " + mso.coverage().to_string() + ", IN*(v) = " + closure.to_string(),
                                     same ? std::nullopt : std::optional<Assignment>(mso)));
    const Assignment in_g = land.correct(closure);
    const auto cex = stationary_optimum_counterexample(land, in_g);
    r.claims.push_back(detail::claim(
        subject, "{(IN*(v), g)} is a stationary optimum", !cex,
        cex ? "under " + cex->completion.to_string() + " the rival " + cex->rival.to_string() + " is not worse" : "",
        cex ? std::optional<Assignment>(cex->completion.merged(cex->rival)) : std::nullopt));
  }
  if (!r.premise_witnesses.empty()) {
    std::string listed;
    for (std::size_t i = 0; i < r.premise_witnesses.size() && i < 8; ++i) {
      listed += (i ? ", " : "") + detail::describe(r.premise_witnesses[i]);
    }
    detail::mark_not_applicable(r, std::to_string(r.premise_witnesses.size()) + " weak epistases up to order " +
                                       std::to_string(options.audit_order) + ": " + listed);
  }
  return r;
}

/// For every completion R on V − S − IN(S) − IN²(S), g[s] is a constrained-optimal allele at
/// each s in S once IN(S) − S is set to g. Also checks that a unique pattern must be g on S.
inline TheoremReport verify_blanket(const Landscape& land, LocusSet s, const OracleOptions& options = {},
                                    const std::vector<WeakEpistasis>* audited = nullptr) {
  if (s.empty() || !s.subset_of(land.loci())) throw InvalidArgument("blanket set must be a nonempty set of loci");
  TheoremReport r;
  r.problem = land.problem().name();
  r.theorem = "blanket";
  r.audited_order = options.audit_order;
  r.premise_witnesses = audited ? *audited : find_weak_epistases(land, options.audit_order);
  const EpistaticGraph g = build_eg(land);
  const LocusSet in1 = in_set(g, s);
  const LocusSet in2 = in_set(g, in1);
  const LocusSet rest = land.loci() - s - in1 - in2;
  land.limits().require(rest.size(), land.limits().oracle_bits, "blanket completions");
  const Assignment tier = land.correct(in1 - s);
  const std::string subject = "S=" + s.to_string();

  std::vector<std::optional<Assignment>> miss(land.size());
  std::optional<Assignment> corollary_miss;
  for_each_pattern(rest, [&](std::uint64_t values) {
    const Assignment a = tier.merged(Assignment::from_masks(rest, values));
    const PsiSummary psi = land.psi(a);
    bool all_single = true;
    bool all_g = true;
    for (Locus v : s) {
      const AlleleSet at = psi.at(v);
      if (!at.contains(land.g(v)) && !miss[v]) miss[v] = a;
      all_single = all_single && at.is_singleton();
      all_g = all_g && at == AlleleSet::only(land.g(v));
    }
    if (all_single && !all_g && !corollary_miss) corollary_miss = a;
    return true;
  });
  for (Locus v : s) {
    r.claims.push_back(detail::claim(subject + " s=" + std::to_string(v), "g[s] in Psi[s] for every R", !miss[v],
                                     miss[v] ? "fails under " + miss[v]->to_string() : "", miss[v]));
  }
  r.claims.push_back(detail::claim(subject, "singleton Psi[s] on S implies the pattern g on S", !corollary_miss,
                                   corollary_miss ? "fails under " + corollary_miss->to_string() : "",
                                   corollary_miss));
  r.notes.push_back("IN(S) = " + in1.to_string() + ", IN^2(S) = " + in2.to_string() + ", " +
                    std::to_string(std::uint64_t{1} << rest.size()) + " completions");
  if (!r.premise_witnesses.empty()) {
    detail::mark_not_applicable(r, "weak epistasis present, e.g. " + detail::describe(r.premise_witnesses.front()));
  }
  return r;
}

/// With only strict, non-weak epistases: SCCs are bidirectional cliques, and the largest one
/// has at most max in-degree + 1 loci, making the decomposition difficulty max in-degree + 1.
inline TheoremReport verify_clique_structure(const Landscape& land, const OracleOptions& options = {}) {
  TheoremReport r;
  r.problem = land.problem().name();
  r.theorem = "clique";
  r.audited_order = options.audit_order;
  const EpistaticGraph g = build_eg(land);
  const ComponentGraph cg = condense(g);
  for (const auto& comp : cg.components) {
    if (comp.size() < 2) continue;
    std::optional<Assignment> missing;
    std::string detail;
    for (Locus u : comp) {
      for (Locus v : comp) {
        if (u != v && !g.has_edge(u, v) && !missing) {
          missing = Assignment{{u, land.g_bar(u)}};
          detail = "no edge " + std::to_string(u) + " -> " + std::to_string(v);
        }
      }
    }
    r.claims.push_back(detail::claim("SCC " + comp.to_string(), "SCC is a bidirectional clique", !missing, detail, missing));
  }
  const Difficulty d = difficulty(g);
  const std::string sizes =
      "max SCC = " + std::to_string(d.max_scc) + ", max in-degree = " + std::to_string(d.max_in_degree);
  auto witness = [&]() -> std::optional<Assignment> {
    for (const auto& comp : cg.components) {
      if (comp.size() == d.max_scc) return land.correct(comp);
    }
    return std::nullopt;
  };
  const bool bounded = d.max_scc <= d.max_in_degree + 1;
  r.claims.push_back(detail::claim("graph", "max SCC size <= max in-degree + 1", bounded, sizes,
                                   bounded ? std::nullopt : witness()));
  const bool exact = d.value() == d.max_in_degree + 1;
  r.claims.push_back(detail::claim("graph", "decomposition difficulty = max in-degree + 1", exact, sizes,
                                   exact ? std::nullopt : witness()));
  r.notes.push_back(sizes);

  if (!g.only_strict()) {
    for (const auto& e : g.edges()) {
      if (e.kind != EpistasisKind::strict) {
        detail::mark_not_applicable(r, "non-strict edge " + std::to_string(e.from) + " -> " + std::to_string(e.to));
        break;
      }
    }
    return r;
  }
  r.premise_witnesses = find_weak_epistases(land, options.audit_order);
  if (!r.premise_witnesses.empty()) {
    detail::mark_not_applicable(r, "weak epistasis present, e.g. " + detail::describe(r.premise_witnesses.front()));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hypotheses and EBACC
// ---------------------------------------------------------------------------

using Hypothesis = std::function<bool(const Chromosome&)>;

inline Hypothesis hypothesis_from_chromosome(const Chromosome& c) {
  return [c](const Chromosome& x) { return x == c; };
}

struct EbaccScore {
  int sensitivity_star = 0;
  Ratio specificity;
  Ratio ebacc;

  Ratio epsilon() const { return Ratio::make(ebacc.den - ebacc.num, ebacc.den); }
};

/// Positives are the global optima; under a unique optimum there is exactly one.
inline EbaccScore ebacc(const Hypothesis& h, const Landscape& land) {
  land.limits().require(land.size(), land.limits().enumeration_bits, "EBACC");
  const std::int64_t negatives = static_cast<std::int64_t>(low_mask(land.size()));  // 2^l - 1
  std::int64_t rejected = 0;
  EbaccScore out;
  for (std::uint64_t bits = 0;; ++bits) {
    const Chromosome x(land.size(), bits);
    const bool accept = h(x);
    if (x == land.optimum()) {
      out.sensitivity_star = accept ? 1 : 0;
    } else if (!accept) {
      ++rejected;
    }
    if (bits == low_mask(land.size())) break;
  }
  out.specificity = Ratio::make(rejected, negatives);
  out.ebacc = Ratio::make(out.sensitivity_star * negatives + rejected, 2 * negatives);
  return out;
}

}  // namespace linkage
