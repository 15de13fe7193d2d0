// Command-line front end: epistatic graphs, decomposition runs, theorem checks and experiments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "linkage.hpp"

namespace {

using namespace linkage;

enum Exit { kOk = 0, kOther = 1, kParse = 2, kCap = 3, kTheorem = 4, kAssumption = 5 };

struct Globals {
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> cap;
  std::string output;
  std::string format;
};

Limits limits_of(const Globals& g) {
  Limits l;
  if (g.cap) {
    l.enumeration_bits = *g.cap;
    l.oracle_bits = *g.cap;
    l.table_bits = std::min(l.table_bits, *g.cap);
  }
  return l;
}

FitnessProblem load_problem(const Globals& g) {
  if (g.spec.empty()) throw ParseError("--spec is required (a file path or inline JSON)");
  const auto first = g.spec.find_first_not_of(" \t\n");
  const ProblemSpec spec = (first != std::string::npos && g.spec[first] == '{') ? parse_problem_spec(g.spec)
                                                                                 : load_problem_spec(g.spec);
  try {
    return make_problem(spec);
  } catch (const InvalidArgument& e) {
    // A spec that names an impossible problem is a malformed input, not a runtime fault.
    throw ParseError(std::string("invalid problem spec: ") + e.what());
  }
}

/// Explicit seed, or a fresh one that is reported so the run can be replayed.
std::uint64_t seed_of(const Globals& g) {
  if (g.seed) return *g.seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) | rd();
  std::cerr << "seed: " << s << "\n";
  return s;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string format_or(const Globals& g, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ParseError("format " + f + " is not supported here; use one of " + list);
}

// ---------------------------------------------------------------------------

int cmd_list_problems(const Globals& g) {
  Output out(g.output);
  std::ostream& os = out.stream();
  os << "kind                 parameters\n";
  os << "onemax               l\n";
  os << "leadingones          l\n";
  os << "ctrap                m (l = 4m)\n";
  os << "cyctrap              m (l = 3m, m >= 2)\n";
  os << "cniah                m (l = 4m)\n";
  os << "leadingtraps         m (l = 4m)\n";
  os << "onemax-prime-blocks  block_sizes (each >= 2)\n";
  os << "lookup-table         l, table (dense array or [[bits, value], ...] with optional default)\n";
  os << "table3               fixed 3-locus weak-epistasis example\n";
  os << "abac                 fixed 3-locus example with a -> b and a -> c\n";
  os << "\nall kinds accept an optional permutation and name, e.g.\n";
  os << R"(  {"kind": "ctrap", "m": 2, "permutation": [7, 6, 5, 4, 3, 2, 1, 0]})" << "\n";
  return kOk;
}

int cmd_eg(const Globals& g, std::size_t order_bound) {
  const Landscape land(load_problem(g), limits_of(g));
  const EpistaticGraph eg = build_eg(land);
  const Difficulty d = difficulty(eg);
  const EpistasisOrder ke = max_epistasis_order(land, order_bound);
  const std::string ke_text = (ke.saturated ? ">= " : "") + std::to_string(ke.order);
  Output out(g.output);
  std::ostream& os = out.stream();
  if (format_or(g, "dot", {"dot", "json"}) == "dot") {
    os << "// problem: " << land.problem().name() << "\n";
    os << "// k_SCC = " << d.max_scc << ", k_in = " << d.max_in_degree << ", difficulty = " << d.value()
       << ", k_e = " << ke_text << " (bound " << order_bound << ")\n";
    os << to_dot(eg, land.problem().name());
  } else {
    json j = to_json(eg);
    j["problem"] = land.problem().name();
    j["optimum"] = land.optimum().to_string();
    j["k_scc"] = d.max_scc;
    j["k_in"] = d.max_in_degree;
    j["difficulty"] = d.value();
    j["k_e"] = ke_text;
    j["k_e_bound"] = order_bound;
    os << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_decompose(const Globals& g, bool fixture) {
  const FitnessProblem f = load_problem(g);
  const Limits limits = limits_of(g);
  const std::uint64_t seed = seed_of(g);
  std::optional<Landscape> land;
  if (f.size() <= limits.enumeration_bits) land.emplace(f, limits);

  std::optional<ComponentGraph> cg;
  OrderedPartition d;
  if (fixture) {
    d = OrderedPartition(cyctrap_fixture_blocks(f.size()), f.size());
  } else {
    if (!land) throw CapExceeded("epistatic graph", f.size(), limits.enumeration_bits);
    const EpistaticGraph eg = build_eg(*land);
    cg = condense(eg);
    d = topological_partition(eg, *cg);
  }
  const PeResult pe = partial_enumeration(f, d, seed, limits);
  std::optional<bool> optimal;
  if (land) optimal = pe.chromosome == land->optimum();

  Output out(g.output);
  std::ostream& os = out.stream();
  if (format_or(g, "text", {"text", "json"}) == "json") {
    json j = {{"problem", f.name()}, {"seed", seed}, {"partition", to_json(d)}, {"pe", to_json(pe)}};
    if (cg) j["condensation"] = to_json(*cg);
    j["partition_source"] = fixture ? "fixture" : "topological";
    if (optimal) j["optimal"] = *optimal;
    os << j.dump(2) << "\n";
  } else {
    os << "problem: " << f.name() << "\nseed: " << seed << "\n";
    if (cg) {
      os << "components:";
      for (const auto& c : cg->components) os << " " << c.to_string();
      os << "\ncomponent edges:";
      for (std::size_t a = 0; a < cg->size(); ++a) {
        for (Locus b : cg->successors[a]) os << " " << a << "->" << b;
      }
      os << "\n";
    }
    os << "partition: " << d.to_string() << (fixture ? " (fixture)" : "") << "\n";
    os << "chromosome: " << pe.chromosome.to_string() << "\nfitness: " << pe.fitness.to_string()
       << "\nevaluations: " << pe.evaluations << "\n";
    if (optimal) os << "optimal: " << (*optimal ? "yes" : "no") << "\n";
  }
  return kOk;
}

int cmd_ipe(const Globals& g, std::size_t n, const std::string& policy, bool with_trace) {
  const FitnessProblem f = load_problem(g);
  const Limits limits = limits_of(g);
  const std::uint64_t seed = seed_of(g);
  SubsetOrder order;
  if (policy == "lexicographic" || policy == "lex") {
    order = SubsetOrder::lexicographic;
  } else if (policy == "random" || policy == "seeded-random") {
    order = SubsetOrder::seeded_random;
  } else {
    throw ParseError("unknown subset order " + policy);
  }
  const DecompositionTrace t = ipe(f, IpeConfig{n, seed, order});
  std::optional<Landscape> land;
  if (f.size() <= limits.enumeration_bits) land.emplace(f, limits);

  json j = {{"problem", f.name()}, {"n", n}, {"seed", seed}, {"subset_order", to_string(order)}};
  j["outcome"] = t.failed() ? json("Failure") : json(t.result->to_string());
  j["evaluations"] = t.evaluations;
  j["nominal_evaluations"] = t.nominal_evaluations;
  j["test_so_calls"] = t.test_so_calls;
  if (with_trace) j["trace"] = to_json(t)["steps"];
  if (land) {
    const Hypothesis h = t.failed() ? Hypothesis([](const Chromosome&) { return false; })
                                    : hypothesis_from_chromosome(*t.result);
    j["ebacc"] = to_json(ebacc(h, *land));
    j["optimal"] = !t.failed() && *t.result == land->optimum();
    j["topological_order"] = trace_topological_check(t, build_eg(*land));
  }
  Output out(g.output);
  std::ostream& os = out.stream();
  if (format_or(g, "json", {"json", "text"}) == "json") {
    os << j.dump(2) << "\n";
  } else {
    os << "outcome: " << (t.failed() ? "Failure" : t.result->to_string()) << "\nevaluations: " << t.evaluations
       << "\n";
    if (with_trace) {
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        os << "step " << i << ": S=" << s.loci.to_string() << " A=" << s.assignment.to_string() << " k=" << s.k
           << " evaluations=" << s.cumulative_evaluations << "\n";
      }
    }
    if (land) {
      os << "ebacc: " << j["ebacc"]["ebacc"].get<std::string>() << "\ntopological order: "
         << (j["topological_order"].get<bool>() ? "yes" : "no") << "\n";
    }
  }
  return kOk;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_verify(const Globals& g, const std::string& theorems, const std::vector<std::string>& sets,
               std::size_t audit_order) {
  const Landscape land(load_problem(g), limits_of(g));
  const OracleOptions opts{audit_order};
  std::vector<TheoremReport> reports;
  std::optional<std::vector<WeakEpistasis>> audited;
  auto audit = [&]() -> const std::vector<WeakEpistasis>& {
    if (!audited) audited = find_weak_epistases(land, audit_order);
    return *audited;
  };
  for (const auto& name : split(theorems, ',')) {
    if (name == "decomposition") {
      reports.push_back(verify_decomposition_theorem(land, opts));
    } else if (name == "blanket") {
      std::vector<LocusSet> targets;
      for (const auto& s : sets) {
        LocusSet t;
        for (const auto& v : split(s, ',')) t.insert(static_cast<Locus>(std::stoul(v)));
        targets.push_back(t);
      }
      if (targets.empty()) {
        for (Locus v = 0; v < land.size(); ++v) targets.push_back(LocusSet{v});
      }
      for (LocusSet t : targets) reports.push_back(verify_blanket(land, t, opts, &audit()));
    } else if (name == "clique") {
      reports.push_back(verify_clique_structure(land, opts));
    } else {
      throw ParseError("unknown theorem " + name + " (use decomposition, blanket, clique)");
    }
  }
  Output out(g.output);
  std::ostream& os = out.stream();
  if (format_or(g, "text", {"text", "json"}) == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    os << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      os << format_report(r);
      if (!r.premise_witnesses.empty()) {
        os << "  weak epistasis witnesses:";
        for (std::size_t i = 0; i < r.premise_witnesses.size() && i < 16; ++i) {
          const auto& w = r.premise_witnesses[i];
          os << " " << w.loci.to_string() << "=>" << w.target;
        }
        os << (r.premise_witnesses.size() > 16 ? " ..." : "") << "\n";
      }
    }
  }
  for (const auto& r : reports) {
    if (r.overall() == ClaimStatus::fail) return kTheorem;
  }
  return kOk;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(item, &pos);
    if (pos != item.size()) throw ParseError("not a number: " + item);
    out.push_back(v);
  }
  return out;
}

int cmd_pac_sweep(const Globals& g, double delta, const std::string& ns, std::size_t runs,
                  std::optional<std::size_t> k) {
  const Landscape land(load_problem(g), limits_of(g));
  PacSweepConfig c;
  c.delta = delta;
  c.populations = parse_sizes(ns);
  c.runs = runs;
  c.seed = seed_of(g);
  c.k = k;
  const PacSweep sweep = pac_sweep(land, c);
  format_or(g, "csv", {"csv"});
  Output out(g.output);
  CsvWriter csv(out.stream());
  csv.comment("command", "pac-sweep")
      .comment("problem", land.problem().name())
      .comment("seed", std::to_string(c.seed))
      .comment("delta", fmt(delta))
      .comment("runs", std::to_string(runs))
      .comment("k", std::to_string(sweep.threshold.k))
      .comment("threshold", sweep.threshold.to_string())
      .comment("subset_order", to_string(c.order));
  write_pac_csv(csv, sweep);
  return kOk;
}

int cmd_weak_observability(const Globals& g, std::size_t runs, const std::string& blocks, const std::string& pops,
                           std::size_t population, std::size_t generations, const std::string& sweep) {
  const std::vector<std::size_t> sizes = parse_sizes(blocks);
  const FitnessProblem f = onemax_prime_concat(sizes);
  const auto targets = onemax_prime_targets(sizes);
  GaConfig config;
  config.runs = runs;
  config.population = population;
  config.generations = generations;
  config.seed = seed_of(g);
  format_or(g, "csv", {"csv"});
  if (sweep != "both" && sweep != "population" && sweep != "generation") {
    throw ParseError("--sweep must be population, generation or both");
  }
  Output out(g.output);
  CsvWriter csv(out.stream());
  csv.comment("command", "weak-observability")
      .comment("problem", f.name())
      .comment("seed", std::to_string(config.seed))
      .comment("runs", std::to_string(runs))
      .comment("crossover", fmt(config.crossover))
      .comment("mutation", fmt(config.mutation))
      .comment("observed", "some member is all zeros on the block");
  csv.header({"sweep", "block_order", "population_size", "generation", "probability", "runs", "stderr"});
  auto emit = [&](const char* name, const std::vector<ObservabilityRow>& rows) {
    for (const auto& r : rows) {
      csv.row({name, std::to_string(r.block_order), std::to_string(r.population_size), std::to_string(r.generation),
               fmt(r.probability), std::to_string(r.runs), fmt(r.stderr_)});
    }
  };
  if (sweep != "generation") emit("population", observability_by_population(f, targets, parse_sizes(pops), config));
  if (sweep != "population") emit("generation", observability_by_generation(f, targets, config));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epistasis analysis, problem decomposition and linkage experiments on pseudo-Boolean problems"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--spec", g.spec, "problem spec file, or inline JSON");
  app.add_option("--seed", g.seed, "random seed (printed when omitted)");
  app.add_option("--cap", g.cap, "maximum free loci for exhaustive enumeration");
  app.add_option("--output", g.output, "output file (default stdout)");
  app.add_option("--format", g.format, "output format: text, csv, dot or json (per command)");

  auto* list = app.add_subcommand("list-problems", "list problem kinds and their parameters");

  std::size_t order_bound = 4;
  auto* eg = app.add_subcommand("eg", "epistatic graph as DOT or JSON, with difficulty summary");
  eg->add_option("--order-bound", order_bound, "largest |S| searched for the maximum epistasis order");

  bool fixture = false;
  auto* dec = app.add_subcommand("decompose", "condense the EG, derive a partition and run partial enumeration");
  dec->add_flag("--fixture-partition", fixture, "use the CycTrap fixture partition instead of the EG");

  std::size_t n = 64;
  std::string policy = "lexicographic";
  bool trace = false;
  auto* ipe_cmd = app.add_subcommand("ipe", "iterative partial enumeration");
  ipe_cmd->add_option("-n,--population", n, "population size")->check(CLI::PositiveNumber);
  ipe_cmd->add_option("--subset-order", policy, "lexicographic or random");
  ipe_cmd->add_flag("--trace", trace, "include every successful step");

  std::string theorems = "decomposition,blanket,clique";
  std::vector<std::string> sets;
  std::size_t audit_order = 4;
  auto* verify = app.add_subcommand("verify", "brute-force theorem checks");
  verify->add_option("--theorems", theorems, "comma list of decomposition, blanket, clique");
  verify->add_option("--set", sets, "blanket target set as a comma list (repeatable; default all singletons)");
  verify->add_option("--audit-order", audit_order, "weak epistases are searched up to this order");

  double delta = 0.1;
  std::string ns;
  std::size_t pac_runs = 500;
  std::optional<std::size_t> k;
  auto* pac = app.add_subcommand("pac-sweep", "IPE success rates across population sizes");
  pac->add_option("--delta", delta, "failure tolerance in (0, 1)");
  pac->add_option("--n", ns, "comma list of population sizes (default: the sufficient n when feasible)");
  pac->add_option("--runs", pac_runs, "runs per population size (>= 30)");
  pac->add_option("--k", k, "difficulty used in the threshold (default: from the EG)");

  std::size_t obs_runs = 1000;
  std::string blocks = "3,4,5,6,7";
  std::string pops = "10,20,50,100,200,500,1000";
  std::size_t obs_population = 500;
  std::size_t generations = 10;
  std::string sweep = "both";
  auto* obs = app.add_subcommand("weak-observability", "GA observability of weak epistases in OneMax' blocks");
  obs->add_option("--runs", obs_runs, "independent runs")->check(CLI::PositiveNumber);
  obs->add_option("--blocks", blocks, "comma list of block sizes");
  obs->add_option("--populations", pops, "population sizes for the generation-0 sweep");
  obs->add_option("--population", obs_population, "population size for the generation sweep");
  obs->add_option("--generations", generations, "last generation of the generation sweep");
  obs->add_option("--sweep", sweep, "population, generation or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (list->parsed()) return cmd_list_problems(g);
    if (eg->parsed()) return cmd_eg(g, order_bound);
    if (dec->parsed()) return cmd_decompose(g, fixture);
    if (ipe_cmd->parsed()) return cmd_ipe(g, n, policy, trace);
    if (verify->parsed()) return cmd_verify(g, theorems, sets, audit_order);
    if (pac->parsed()) return cmd_pac_sweep(g, delta, ns, pac_runs, k);
    if (obs->parsed()) return cmd_weak_observability(g, obs_runs, blocks, pops, obs_population, generations, sweep);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const AssumptionViolation& e) {
    std::cerr << "assumption violated: " << e.what() << "\n";
    return kAssumption;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
