#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkage/core.hpp"

namespace linkage {

/// A pseudo-Boolean maximization problem. The formula reads y, where y[i] = x[perm[i]];
/// an empty permutation is the identity. Instances are immutable and thread-safe.
class FitnessProblem {
 public:
  using Function = std::function<Fitness(const Chromosome& y)>;

  FitnessProblem(std::string name, std::size_t size, Function fn, std::vector<Locus> permutation = {})
      : name_(std::move(name)), size_(size), fn_(std::make_shared<Function>(std::move(fn))) {
    if (size == 0 || size > kMaxLoci) {
      throw InvalidArgument("problem size must be in [1, " + std::to_string(kMaxLoci) + "]");
    }
    set_permutation(std::move(permutation));
  }

  const std::string& name() const { return name_; }
  std::size_t size() const { return size_; }
  const std::vector<Locus>& permutation() const { return permutation_; }

  Fitness evaluate(const Chromosome& x) const {
    if (x.size() != size_) {
      throw InvalidArgument("chromosome length " + std::to_string(x.size()) + " does not match problem size " +
                            std::to_string(size_));
    }
    return (*fn_)(permutation_.empty() ? x : permute(x));
  }

  Fitness evaluate_bits(std::uint64_t bits) const { return evaluate(Chromosome(size_, bits)); }

  /// The same formula evaluated through a different locus permutation.
  FitnessProblem with_permutation(std::vector<Locus> permutation) const {
    FitnessProblem out = *this;
    out.set_permutation(std::move(permutation));
    return out;
  }

  FitnessProblem renamed(std::string name) const {
    FitnessProblem out = *this;
    out.name_ = std::move(name);
    return out;
  }

  Chromosome permute(const Chromosome& x) const {
    std::uint64_t y = 0;
    for (std::size_t i = 0; i < size_; ++i) {
      if ((x.bits() >> permutation_[i]) & 1u) y |= locus_bit(i);
    }
    return Chromosome(size_, y);
  }

 private:
  void set_permutation(std::vector<Locus> permutation) {
    if (!permutation.empty()) {
      if (permutation.size() != size_) throw InvalidArgument("permutation length does not match problem size");
      std::vector<bool> seen(size_, false);
      for (Locus p : permutation) {
        if (p >= size_ || seen[p]) throw InvalidArgument("permutation is not a bijection on [0, size)");
        seen[p] = true;
      }
      bool identity = true;
      for (std::size_t i = 0; i < size_; ++i) identity = identity && permutation[i] == i;
      if (identity) permutation.clear();
    }
    permutation_ = std::move(permutation);
  }

  std::string name_;
  std::size_t size_;
  std::shared_ptr<const Function> fn_;
  std::vector<Locus> permutation_;
};

// ---------------------------------------------------------------------------
// Subfunctions
// ---------------------------------------------------------------------------

/// Deceptive trap: 4 on all ones, otherwise 3 minus the number of ones.
constexpr Fitness trap4(Allele b0, Allele b1, Allele b2, Allele b3) {
  const int u = b0 + b1 + b2 + b3;
  return Fitness::units(u == 4 ? 4 : 3 - u);
}

/// Needle in a haystack: 4 on all ones, otherwise 0.
constexpr Fitness niah4(Allele b0, Allele b1, Allele b2, Allele b3) {
  return Fitness::units(b0 + b1 + b2 + b3 == 4 ? 4 : 0);
}

namespace detail {

inline Fitness trap_of(const Chromosome& y, Locus a, Locus b, Locus c, Locus d) {
  return trap4(y[a], y[b], y[c], y[d]);
}

inline void require_blocks(std::size_t m, const char* kind) {
  if (m == 0 || 4 * m > kMaxLoci) throw InvalidArgument(std::string(kind) + " needs 1 <= m <= 16");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Benchmarks
// ---------------------------------------------------------------------------

inline FitnessProblem onemax(std::size_t length) {
  return FitnessProblem("onemax-" + std::to_string(length), length,
                        [](const Chromosome& y) { return Fitness::units(static_cast<std::int64_t>(y.count_ones())); });
}

inline FitnessProblem leading_ones(std::size_t length) {
  return FitnessProblem("leadingones-" + std::to_string(length), length, [](const Chromosome& y) {
    // Sum of prefix products equals the length of the leading run of ones.
    const auto run = std::countr_one(y.bits());
    return Fitness::units(std::min<std::int64_t>(run, static_cast<std::int64_t>(y.size())));
  });
}

inline FitnessProblem ctrap(std::size_t m) {
  detail::require_blocks(m, "ctrap");
  return FitnessProblem("ctrap-" + std::to_string(m), 4 * m, [m](const Chromosome& y) {
    Fitness f;
    for (std::size_t i = 0; i < m; ++i) f += detail::trap_of(y, 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3);
    return f;
  });
}

/// Traps on loci 3i, 3i+1, 3i+2, 3i+3 (mod l); neighbouring traps share one locus.
inline FitnessProblem cyctrap(std::size_t m) {
  if (m < 2 || 3 * m > kMaxLoci) throw InvalidArgument("cyctrap needs 2 <= m <= 21");
  const std::size_t length = 3 * m;
  return FitnessProblem("cyctrap-" + std::to_string(m), length, [m, length](const Chromosome& y) {
    Fitness f;
    for (std::size_t i = 0; i < m; ++i) {
      const Locus s = 3 * i;
      f += detail::trap_of(y, s, (s + 1) % length, (s + 2) % length, (s + 3) % length);
    }
    return f;
  });
}

inline FitnessProblem cniah(std::size_t m) {
  detail::require_blocks(m, "cniah");
  return FitnessProblem("cniah-" + std::to_string(m), 4 * m, [m](const Chromosome& y) {
    Fitness f;
    for (std::size_t i = 0; i < m; ++i) f += niah4(y[4 * i], y[4 * i + 1], y[4 * i + 2], y[4 * i + 3]);
    return f;
  });
}

/// Trap i only counts while every earlier trap is solved.
inline FitnessProblem leading_traps(std::size_t m) {
  detail::require_blocks(m, "leadingtraps");
  return FitnessProblem("leadingtraps-" + std::to_string(m), 4 * m, [m](const Chromosome& y) {
    Fitness f;
    bool gate = true;
    for (std::size_t i = 0; i < m && gate; ++i) {
      const Fitness t = detail::trap_of(y, 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3);
      f += t;
      gate = t == Fitness::units(4);
    }
    return f;
  });
}

/// Sum of OneMax' blocks over consecutive loci; a block scores 1.5 when all zeros.
inline FitnessProblem onemax_prime_concat(const std::vector<std::size_t>& block_sizes) {
  if (block_sizes.empty()) throw InvalidArgument("onemax-prime needs at least one block");
  std::size_t length = 0;
  std::vector<std::uint64_t> masks;
  for (std::size_t b : block_sizes) {
    if (b < 2) throw InvalidArgument("onemax-prime blocks need at least 2 loci");
    if (length + b > kMaxLoci) throw InvalidArgument("onemax-prime concatenation too long");
    masks.push_back(LocusSet::range(length, length + b).mask());
    length += b;
  }
  std::string name = "onemax-prime";
  for (std::size_t b : block_sizes) name += "-" + std::to_string(b);
  return FitnessProblem(name, length, [masks](const Chromosome& y) {
    Fitness f;
    for (std::uint64_t mask : masks) {
      const auto ones = std::popcount(y.bits() & mask);
      f += ones == 0 ? Fitness::halves(3) : Fitness::units(ones);
    }
    return f;
  });
}

/// Index i of a dense table is the chromosome whose text form is i written in binary
/// with `length` digits, locus 0 the most significant.
inline std::size_t table_index(const Chromosome& y) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < y.size(); ++i) idx = (idx << 1) | y[i];
  return idx;
}

inline FitnessProblem lookup_table(std::size_t length, std::vector<Fitness> values, std::string name = "") {
  if (length == 0 || length > 24) throw InvalidArgument("lookup tables support 1..24 loci");
  if (values.size() != (std::size_t{1} << length)) {
    throw InvalidArgument("lookup table for " + std::to_string(length) + " loci needs " +
                          std::to_string(std::size_t{1} << length) + " values, got " +
                          std::to_string(values.size()));
  }
  if (name.empty()) name = "lookup-" + std::to_string(length);
  auto table = std::make_shared<const std::vector<Fitness>>(std::move(values));
  return FitnessProblem(std::move(name), length, [table](const Chromosome& y) { return (*table)[table_index(y)]; });
}

/// Builds a dense table by evaluating every chromosome of `problem` (permutation included).
inline FitnessProblem tabulate(const FitnessProblem& problem) {
  const std::size_t n = problem.size();
  if (n > 24) throw InvalidArgument("cannot tabulate more than 24 loci");
  std::vector<Fitness> values(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < values.size(); ++bits) {
    const Chromosome c(n, bits);
    values[table_index(c)] = problem.evaluate(c);
  }
  return lookup_table(n, std::move(values), problem.name() + "-table");
}

namespace detail {

inline FitnessProblem sparse_table(std::size_t length, const std::vector<std::pair<std::string, double>>& rows,
                                   double others, std::string name) {
  std::vector<Fitness> values(std::size_t{1} << length, Fitness::from_double(others));
  for (const auto& [bits, value] : rows) values[table_index(Chromosome::parse(bits))] = Fitness::from_double(value);
  return lookup_table(length, std::move(values), std::move(name));
}

}  // namespace detail

/// Three-bit problem (loci a, b, c) where {a, b} jointly mislead c but neither does alone.
/// Unlisted chromosomes score 0.
inline FitnessProblem table3_problem() {
  return detail::sparse_table(3, {{"111", 10}, {"001", 9}, {"101", 8}, {"010", 7}, {"011", 6}}, 0, "table3");
}

/// Three-bit problem where a strictly misleads both b and c.
/// Unlisted chromosomes score 0.
inline FitnessProblem abac_problem() {
  return detail::sparse_table(
      3, {{"111", 10}, {"110", 9}, {"101", 9}, {"100", 8}, {"000", 7}, {"010", 6}, {"001", 6}}, 0, "abac");
}

// ---------------------------------------------------------------------------
// Problem specs
// ---------------------------------------------------------------------------

enum class ProblemKind {
  onemax,
  leadingones,
  ctrap,
  cyctrap,
  cniah,
  leadingtraps,
  onemax_prime_blocks,
  lookup_table,
  table3,
  abac,
};

inline const std::vector<std::pair<ProblemKind, std::string>>& problem_kind_names() {
  static const std::vector<std::pair<ProblemKind, std::string>> names = {
      {ProblemKind::onemax, "onemax"},
      {ProblemKind::leadingones, "leadingones"},
      {ProblemKind::ctrap, "ctrap"},
      {ProblemKind::cyctrap, "cyctrap"},
      {ProblemKind::cniah, "cniah"},
      {ProblemKind::leadingtraps, "leadingtraps"},
      {ProblemKind::onemax_prime_blocks, "onemax-prime-blocks"},
      {ProblemKind::lookup_table, "lookup-table"},
      {ProblemKind::table3, "table3"},
      {ProblemKind::abac, "abac"},
  };
  return names;
}

inline ProblemKind parse_problem_kind(const std::string& text) {
  for (const auto& [kind, name] : problem_kind_names()) {
    if (name == text) return kind;
  }
  throw ParseError("unknown problem kind \"" + text + "\"");
}

inline const std::string& problem_kind_name(ProblemKind kind) {
  for (const auto& [k, name] : problem_kind_names()) {
    if (k == kind) return name;
  }
  throw InvalidArgument("unnamed problem kind");
}

struct ProblemSpec {
  ProblemKind kind = ProblemKind::onemax;
  std::size_t length = 0;  // l; derived from m for block problems
  std::size_t blocks = 0;  // m
  std::vector<std::size_t> block_sizes;
  std::vector<Locus> permutation;
  std::vector<Fitness> table;  // dense, for lookup-table
  std::string name;
};

/// Checks the per-kind size rules and fills `length`/`blocks` consistently.
inline ProblemSpec normalized(ProblemSpec spec) {
  auto blocks_of = [&](std::size_t width, const char* kind) {
    if (spec.blocks == 0 && spec.length == 0) throw ParseError(std::string(kind) + " needs m or l");
    if (spec.blocks == 0) {
      if (spec.length % width != 0) {
        throw ParseError(std::string(kind) + " needs l = " + std::to_string(width) + "m, got l = " +
                         std::to_string(spec.length));
      }
      spec.blocks = spec.length / width;
    }
    if (spec.length != 0 && spec.length != width * spec.blocks) {
      throw ParseError(std::string(kind) + ": l = " + std::to_string(spec.length) + " does not match m = " +
                       std::to_string(spec.blocks));
    }
    spec.length = width * spec.blocks;
  };
  switch (spec.kind) {
    case ProblemKind::onemax:
    case ProblemKind::leadingones:
      if (spec.length == 0) throw ParseError("missing l");
      break;
    case ProblemKind::ctrap:
    case ProblemKind::cniah:
    case ProblemKind::leadingtraps:
      blocks_of(4, problem_kind_name(spec.kind).c_str());
      break;
    case ProblemKind::cyctrap:
      blocks_of(3, "cyctrap");
      break;
    case ProblemKind::onemax_prime_blocks:
      if (spec.block_sizes.empty()) throw ParseError("onemax-prime-blocks needs block_sizes");
      spec.length = std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), std::size_t{0});
      break;
    case ProblemKind::lookup_table: {
      if (spec.length == 0 || spec.length > 24) throw ParseError("lookup-table needs 1 <= l <= 24");
      const std::size_t expected = std::size_t{1} << spec.length;
      if (spec.table.size() != expected) {
        throw ParseError("lookup table lists " + std::to_string(spec.table.size()) + " values, expected " +
                         std::to_string(expected));
      }
      break;
    }
    case ProblemKind::table3:
    case ProblemKind::abac:
      if (spec.length != 0 && spec.length != 3) throw ParseError("fixture problems have l = 3");
      spec.length = 3;
      break;
  }
  return spec;
}

inline FitnessProblem make_problem(const ProblemSpec& raw) {
  const ProblemSpec spec = normalized(raw);
  FitnessProblem p = [&]() -> FitnessProblem {
    switch (spec.kind) {
      case ProblemKind::onemax: return onemax(spec.length);
      case ProblemKind::leadingones: return leading_ones(spec.length);
      case ProblemKind::ctrap: return ctrap(spec.blocks);
      case ProblemKind::cyctrap: return cyctrap(spec.blocks);
      case ProblemKind::cniah: return cniah(spec.blocks);
      case ProblemKind::leadingtraps: return leading_traps(spec.blocks);
      case ProblemKind::onemax_prime_blocks: return onemax_prime_concat(spec.block_sizes);
      case ProblemKind::lookup_table: return lookup_table(spec.length, spec.table, spec.name);
      case ProblemKind::table3: return table3_problem();
      case ProblemKind::abac: return abac_problem();
    }
    throw InvalidArgument("unhandled problem kind");
  }();
  if (!spec.permutation.empty()) p = p.with_permutation(spec.permutation);
  if (!spec.name.empty() && spec.kind != ProblemKind::lookup_table) {
    p = p.renamed(spec.name);
  }
  return p;
}

/// Parses a problem spec object:
///   {"kind": "ctrap", "m": 2}
///   {"kind": "onemax", "l": 8, "permutation": [7, 6, 5, 4, 3, 2, 1, 0]}
///   {"kind": "onemax-prime-blocks", "block_sizes": [3, 4, 5, 6, 7]}
///   {"kind": "lookup-table", "l": 3, "table": [0, 9, 7, 6, 0, 8, 0, 10]}
///   {"kind": "lookup-table", "l": 3, "table": [["111", 10], ["001", 9]], "default": 0}
inline ProblemSpec parse_problem_spec(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("problem spec must be an object");
    ProblemSpec spec;
    spec.kind = parse_problem_kind(j.at("kind").get<std::string>());
    for (const char* key : {"l", "length"}) {
      if (j.contains(key)) spec.length = j.at(key).get<std::size_t>();
    }
    if (j.contains("m")) spec.blocks = j.at("m").get<std::size_t>();
    if (j.contains("block_sizes")) spec.block_sizes = j.at("block_sizes").get<std::vector<std::size_t>>();
    if (j.contains("permutation")) spec.permutation = j.at("permutation").get<std::vector<Locus>>();
    if (j.contains("name")) spec.name = j.at("name").get<std::string>();
    if (j.contains("table")) {
      const auto& t = j.at("table");
      if (!t.is_array()) throw ParseError("table must be an array");
      const bool pairs = !t.empty() && t.front().is_array();
      if (!pairs) {
        for (const auto& v : t) spec.table.push_back(Fitness::from_double(v.get<double>()));
      } else {
        if (spec.length == 0 || spec.length > 24) throw ParseError("sparse lookup table needs 1 <= l <= 24");
        const std::size_t count = std::size_t{1} << spec.length;
        std::vector<Fitness> values(count);
        std::vector<bool> set(count, false);
        for (const auto& row : t) {
          if (!row.is_array() || row.size() != 2) throw ParseError("table rows must be [bitstring, value]");
          const Chromosome c = Chromosome::parse(row[0].get<std::string>());
          if (c.size() != spec.length) throw ParseError("table row length does not match l");
          const std::size_t idx = table_index(c);
          if (set[idx]) throw ParseError("table lists " + c.to_string() + " twice");
          values[idx] = Fitness::from_double(row[1].get<double>());
          set[idx] = true;
        }
        const bool complete = std::all_of(set.begin(), set.end(), [](bool b) { return b; });
        if (!complete) {
          if (!j.contains("default")) throw ParseError("sparse table is incomplete and has no default");
          const Fitness fill = Fitness::from_double(j.at("default").get<double>());
          for (std::size_t i = 0; i < count; ++i) {
            if (!set[i]) values[i] = fill;
          }
        }
        spec.table = std::move(values);
      }
    }
    return normalized(std::move(spec));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed problem spec: ") + e.what());
  }
}

inline ProblemSpec parse_problem_spec(const std::string& text) {
  try {
    return parse_problem_spec(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("problem spec is not valid JSON: ") + e.what());
  }
}

// String literals would otherwise convert to json and to std::string equally well.
inline ProblemSpec parse_problem_spec(const char* text) { return parse_problem_spec(std::string(text)); }

inline ProblemSpec load_problem_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem spec " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_spec(buf.str());
}

/// Hand-picked partition under which partial enumeration solves CycTrap even though
/// the component graph does not yield one: the first three traps, then the rest in
/// groups of three loci.
inline std::vector<LocusSet> cyctrap_fixture_blocks(std::size_t length) {
  if (length < 10) throw InvalidArgument("cyctrap fixture partition needs l >= 10");
  std::vector<LocusSet> blocks{LocusSet::range(0, 10)};
  for (Locus start = 10; start < length; start += 3) blocks.push_back(LocusSet::range(start, std::min(start + 3, length)));
  return blocks;
}

}  // namespace linkage
