#pragma once

#include <algorithm>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkage/epistasis.hpp"

namespace linkage {

/// Directed graph on loci with an edge u -> v for every order-1 epistasis {u} => v.
class EpistaticGraph {
 public:
  struct Edge {
    Locus from;
    Locus to;
    EpistasisKind kind;
  };

  EpistaticGraph() = default;
  explicit EpistaticGraph(std::size_t n) : n_(n), kinds_(n * n, EpistasisKind::none), in_(n), out_(n) {
    if (n > kMaxLoci) throw InvalidArgument("graph too large");
  }

  std::size_t size() const { return n_; }

  void add_edge(Locus u, Locus v, EpistasisKind kind) {
    if (u >= n_ || v >= n_) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("epistatic graphs have no self-loops");
    if (kind == EpistasisKind::none) return;
    kinds_[u * n_ + v] = kind;
    in_[v].insert(u);
    out_[u].insert(v);
  }

  EpistasisKind kind(Locus u, Locus v) const { return kinds_[u * n_ + v]; }
  bool has_edge(Locus u, Locus v) const { return kind(u, v) != EpistasisKind::none; }

  LocusSet in_neighbors(Locus v) const { return in_[v]; }
  LocusSet out_neighbors(Locus u) const { return out_[u]; }
  std::size_t in_degree(Locus v) const { return in_[v].size(); }
  std::size_t max_in_degree() const {
    std::size_t best = 0;
    for (const auto& s : in_) best = std::max(best, s.size());
    return best;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Locus u = 0; u < n_; ++u) {
      for (Locus v : out_[u]) out.push_back({u, v, kind(u, v)});
    }
    return out;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& s : out_) c += s.size();
    return c;
  }

  bool only_strict() const {
    for (const auto& e : edges()) {
      if (e.kind != EpistasisKind::strict) return false;
    }
    return true;
  }

  friend bool operator==(const EpistaticGraph& a, const EpistaticGraph& b) {
    return a.n_ == b.n_ && a.kinds_ == b.kinds_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<EpistasisKind> kinds_;
  std::vector<LocusSet> in_;
  std::vector<LocusSet> out_;
};

inline EpistaticGraph build_eg(const Landscape& land) {
  EpistaticGraph g(land.size());
  for (Locus u = 0; u < land.size(); ++u) {
    const auto row = order1_row(land, u);
    for (Locus v = 0; v < land.size(); ++v) {
      if (v != u) g.add_edge(u, v, row[v]);
    }
  }
  return g;
}

/// IN(S): the union of direct in-neighbours.
inline LocusSet in_set(const EpistaticGraph& g, LocusSet s) {
  LocusSet out;
  for (Locus v : s) out |= g.in_neighbors(v);
  return out;
}

/// IN^i(S): IN^0(S) = S, IN^i(S) = IN(IN^{i-1}(S)).
inline LocusSet in_set(const EpistaticGraph& g, LocusSet s, std::size_t i) {
  for (std::size_t step = 0; step < i; ++step) s = in_set(g, s);
  return s;
}

inline LocusSet in_set(const EpistaticGraph& g, Locus v, std::size_t i) { return in_set(g, LocusSet{v}, i); }

/// IN*(v): v together with every locus that reaches v.
inline LocusSet in_closure(const EpistaticGraph& g, Locus v) {
  if (v >= g.size()) throw InvalidArgument("locus out of range");
  LocusSet closure{v};
  LocusSet frontier{v};
  while (!frontier.empty()) {
    frontier = in_set(g, frontier) - closure;
    closure |= frontier;
  }
  return closure;
}

/// SCCs contracted to vertices. Components are numbered by their smallest locus.
struct ComponentGraph {
  std::vector<LocusSet> components;
  std::vector<LocusSet> successors;  // component indices, stored as a set
  std::vector<std::size_t> component_of;

  std::size_t size() const { return components.size(); }
  bool has_edge(std::size_t a, std::size_t b) const { return successors[a].contains(b); }
  std::size_t max_component_size() const {
    std::size_t best = 0;
    for (const auto& c : components) best = std::max(best, c.size());
    return best;
  }
};

/// Tarjan's algorithm, iterative.
inline ComponentGraph condense(const EpistaticGraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Locus> stack;
  std::vector<LocusSet> sccs;
  std::size_t counter = 0;

  struct Frame {
    Locus v;
    LocusSet pending;
  };
  for (Locus root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, g.out_neighbors(root)}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& top = call.back();
      if (!top.pending.empty()) {
        const Locus w = top.pending.front();
        top.pending.erase(w);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, g.out_neighbors(w)});
        } else if (on_stack[w]) {
          low[top.v] = std::min(low[top.v], index[w]);
        }
        continue;
      }
      const Locus v = top.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        LocusSet scc;
        Locus w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc.insert(w);
        } while (w != v);
        sccs.push_back(scc);
      }
    }
  }

  std::sort(sccs.begin(), sccs.end(), [](LocusSet a, LocusSet b) { return a.front() < b.front(); });
  ComponentGraph cg;
  cg.components = sccs;
  cg.component_of.assign(n, 0);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (Locus v : sccs[c]) cg.component_of[v] = c;
  }
  cg.successors.assign(sccs.size(), LocusSet{});
  for (const auto& e : g.edges()) {
    const std::size_t a = cg.component_of[e.from];
    const std::size_t b = cg.component_of[e.to];
    if (a != b) cg.successors[a].insert(b);
  }
  return cg;
}

/// An ordered tuple of disjoint, nonempty locus sets covering [0, n).
class OrderedPartition {
 public:
  OrderedPartition() = default;
  OrderedPartition(std::vector<LocusSet> blocks, std::size_t n) : blocks_(std::move(blocks)) {
    LocusSet seen;
    for (const auto& b : blocks_) {
      if (b.empty()) throw InvalidArgument("partition blocks must be nonempty");
      if (!b.disjoint(seen)) throw InvalidArgument("partition blocks overlap at " + (b & seen).to_string());
      seen |= b;
    }
    if (seen != LocusSet::all(n)) throw InvalidArgument("partition does not cover all " + std::to_string(n) + " loci");
  }

  const std::vector<LocusSet>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  const LocusSet& operator[](std::size_t i) const { return blocks_[i]; }
  auto begin() const { return blocks_.begin(); }
  auto end() const { return blocks_.end(); }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < blocks_.size(); ++i) out += (i ? "," : "") + blocks_[i].to_string();
    return out + ")";
  }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;

 private:
  std::vector<LocusSet> blocks_;
};

/// Blocks in a topological order of the component graph. Among ready components the one
/// holding the smallest locus goes first.
inline OrderedPartition topological_partition(const EpistaticGraph& g, const ComponentGraph& cg) {
  const std::size_t c = cg.size();
  std::vector<std::size_t> indegree(c, 0);
  for (std::size_t a = 0; a < c; ++a) {
    for (Locus b : cg.successors[a]) ++indegree[b];
  }
  // Component indices already follow smallest-locus order, so a min-heap on index suffices.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t a = 0; a < c; ++a) {
    if (indegree[a] == 0) ready.push(a);
  }
  std::vector<LocusSet> blocks;
  while (!ready.empty()) {
    const std::size_t a = ready.top();
    ready.pop();
    blocks.push_back(cg.components[a]);
    for (Locus b : cg.successors[a]) {
      if (--indegree[b] == 0) ready.push(b);
    }
  }
  return OrderedPartition(std::move(blocks), g.size());
}

inline OrderedPartition topological_partition(const EpistaticGraph& g) { return topological_partition(g, condense(g)); }

struct Difficulty {
  std::size_t max_scc = 0;
  std::size_t max_in_degree = 0;
  std::size_t value() const { return std::max(max_scc, max_in_degree + 1); }
};

inline Difficulty difficulty(const EpistaticGraph& g) {
  return Difficulty{condense(g).max_component_size(), g.max_in_degree()};
}

/// max(largest SCC, largest in-degree + 1).
inline std::size_t decomposition_difficulty(const EpistaticGraph& g) { return difficulty(g).value(); }

struct EpistasisOrder {
  std::size_t order = 0;   // largest epistatic |S| found, 0 if none
  bool saturated = false;  // order hit the bound; larger ones were not searched
};

/// Largest |S| <= bound with S => v for some v.
inline EpistasisOrder max_epistasis_order(const Landscape& land, std::size_t bound) {
  const std::size_t n = land.size();
  const std::size_t top = std::min(bound, n - 1);
  PsiCache cache(land);
  for (std::size_t q = top; q >= 1; --q) {
    bool found = false;
    for_each_combination(land.loci(), q, [&](LocusSet s) {
      for (Locus v = 0; v < n && !found; ++v) {
        if (!s.contains(v)) found = epistatic(cache, s, v);
      }
      return !found;
    });
    if (found) return EpistasisOrder{q, q == bound && bound < n - 1};
  }
  return EpistasisOrder{};
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// Graphviz: solid edges are strict, dashed edges non-strict.
inline std::string to_dot(const EpistaticGraph& g, const std::string& name = "eg") {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  for (Locus v = 0; v < g.size(); ++v) out << "  " << v << ";\n";
  for (const auto& e : g.edges()) {
    out << "  " << e.from << " -> " << e.to << " [style=" << (e.kind == EpistasisKind::strict ? "solid" : "dashed")
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline nlohmann::json to_json(const EpistaticGraph& g) {
  nlohmann::json adjacency = nlohmann::json::object();
  for (Locus u = 0; u < g.size(); ++u) {
    nlohmann::json row = nlohmann::json::object();
    for (Locus v : g.out_neighbors(u)) row[std::to_string(v)] = to_string(g.kind(u, v));
    adjacency[std::to_string(u)] = row;
  }
  return {{"vertices", g.size()}, {"adjacency", adjacency}};
}

}  // namespace linkage
