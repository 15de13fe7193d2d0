#pragma once

#include <cstdio>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linkage/experiments.hpp"

namespace linkage {

using nlohmann::json;

inline json to_json(LocusSet s) { return s.to_vector(); }

/// {"locus": allele}
inline json to_json(const Assignment& a) {
  json out = json::object();
  for (Locus v : a.coverage()) out[std::to_string(v)] = static_cast<int>(*a[v]);
  return out;
}

inline json to_json(const Chromosome& c) { return c.to_string(); }

inline json to_json(const WeakEpistasis& w) {
  json witnesses = json::array();
  for (const auto& a : w.witnesses) witnesses.push_back(to_json(a));
  return {{"S", to_json(w.loci)}, {"v", w.target}, {"kind", "weak"}, {"strength", "weak"},
          {"witness_assignment", witnesses}};
}

inline json to_json(const DecompositionTrace& t) {
  json steps = json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    steps.push_back({{"step", i}, {"S", to_json(s.loci)}, {"assignment", to_json(s.assignment)}, {"k", s.k},
                     {"cumulative_evaluations", s.cumulative_evaluations}});
  }
  json out = {{"steps", steps}, {"evaluations", t.evaluations},
              {"nominal_evaluations", t.nominal_evaluations}, {"test_so_calls", t.test_so_calls}};
  out["outcome"] = t.failed() ? json("Failure") : to_json(*t.result);
  return out;
}

inline json to_json(const PeResult& r) {
  return {{"initial", to_json(r.initial)}, {"chromosome", to_json(r.chromosome)}, {"fitness", r.fitness.value()},
          {"evaluations", r.evaluations}};
}

inline json to_json(const Claim& c) {
  json out = {{"subject", c.subject}, {"statement", c.statement}, {"status", to_string(c.status)}};
  if (!c.detail.empty()) out["detail"] = c.detail;
  if (c.counterexample) out["counterexample"] = to_json(*c.counterexample);
  return out;
}

inline json to_json(const TheoremReport& r) {
  json claims = json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  json witnesses = json::array();
  for (const auto& w : r.premise_witnesses) witnesses.push_back(to_json(w));
  return {{"problem", r.problem},
          {"theorem", r.theorem},
          {"overall", to_string(r.overall())},
          {"audited_order", r.audited_order},
          {"claims", claims},
          {"premise_witnesses", witnesses},
          {"notes", r.notes}};
}

inline json to_json(const EbaccScore& s) {
  return {{"sensitivity_star", s.sensitivity_star},
          {"specificity", s.specificity.to_string()},
          {"ebacc", s.ebacc.to_string()},
          {"epsilon", s.epsilon().to_string()}};
}

inline json to_json(const OrderedPartition& d) {
  json out = json::array();
  for (const auto& b : d) out.push_back(to_json(b));
  return out;
}

inline json to_json(const ComponentGraph& cg) {
  json comps = json::array();
  for (const auto& c : cg.components) comps.push_back(to_json(c));
  json edges = json::array();
  for (std::size_t a = 0; a < cg.size(); ++a) {
    for (Locus b : cg.successors[a]) edges.push_back({a, b});
  }
  return {{"components", comps}, {"edges", edges}};
}

/// Fixed-width summary table of a report.
inline std::string format_report(const TheoremReport& r) {
  std::ostringstream out;
  out << r.theorem << " on " << r.problem << ": " << to_string(r.overall()) << " (" << r.count(ClaimStatus::pass)
      << " pass, " << r.count(ClaimStatus::fail) << " fail, " << r.count(ClaimStatus::not_applicable)
      << " not applicable; weak epistasis audited to order " << r.audited_order << ")\n";
  std::size_t wide = 7;
  for (const auto& c : r.claims) wide = std::max(wide, c.subject.size());
  for (const auto& c : r.claims) {
    out << "  " << std::left << std::setw(static_cast<int>(wide)) << c.subject << "  " << std::setw(15)
        << to_string(c.status) << c.statement;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << "\n";
  }
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Header comment lines ("# key: value") followed by a header row and data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& comment(const std::string& key, const std::string& value) {
    out_ << "# " << key << ": " << value << "\n";
    return *this;
  }

  CsvWriter& header(const std::vector<std::string>& columns) { return row(columns); }

  CsvWriter& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
    return *this;
  }

 private:
  std::ostream& out_;
};

inline std::string fmt(double x, int precision = 6) {
  std::ostringstream o;
  o << std::setprecision(precision) << x;
  return o.str();
}

inline void write_observability_csv(CsvWriter& csv, const std::vector<ObservabilityRow>& rows) {
  csv.header({"block_order", "population_size", "generation", "probability", "runs", "stderr"});
  for (const auto& r : rows) {
    csv.row({std::to_string(r.block_order), std::to_string(r.population_size), std::to_string(r.generation),
             fmt(r.probability), std::to_string(r.runs), fmt(r.stderr_)});
  }
}

inline void write_pac_csv(CsvWriter& csv, const PacSweep& sweep) {
  csv.header({"n", "runs", "success_rate", "wrong_rate", "failure_rate", "mean_evaluations", "meets_threshold"});
  for (const auto& r : sweep.rows) {
    csv.row({std::to_string(r.n), std::to_string(r.runs), fmt(r.success_rate()), fmt(r.wrong_rate()),
             fmt(r.failure_rate()), fmt(r.mean_evaluations, 10), r.meets_threshold ? "yes" : "no"});
  }
}

}  // namespace linkage
