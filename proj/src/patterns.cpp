#include "multiplex/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace multiplex {

// --- threshold ---------------------------------------------------------------

ThresholdInfo compute_threshold_info(const Matrix& phi) {
  const Index k = phi.rows();
  if (k < 1 || phi.cols() != k) throw std::invalid_argument("phi must be a square K x K matrix");

  std::vector<double> sorted(phi.data(), phi.data() + phi.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  ThresholdInfo info;
  if (k == 1) {
    // a one-entry sequence has no gaps; keep a positive self-coupling alive
    info.groups = {{sorted[0]}};
    info.degenerate = true;
    info.value = sorted[0] > 0.0 ? std::nextafter(sorted[0], 0.0) : 0.0;
    return info;
  }

  const size_t m = sorted.size();
  if (sorted.front() == sorted.back()) {
    // no structure to separate; everything is background
    info.groups = {sorted};
    info.degenerate = true;
    info.value = sorted[0];
    return info;
  }

  std::vector<double> gaps(m - 1);
  for (size_t i = 0; i + 1 < m; ++i) gaps[i] = sorted[i] - sorted[i + 1];
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
  double var = 0.0;
  for (double gap : gaps) var += (gap - mean) * (gap - mean);
  const double stddev = std::sqrt(var / gaps.size());

  // remarkable gap: exceeds mean + one standard deviation
  std::vector<size_t> splits;
  for (size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i] > mean + stddev) splits.push_back(i);
  }
  if (splits.empty()) {
    // degenerate spacing: force one split at the widest gap
    splits.push_back(std::max_element(gaps.begin(), gaps.end()) - gaps.begin());
  }

  size_t start = 0;
  for (size_t split : splits) {
    info.groups.emplace_back(sorted.begin() + start, sorted.begin() + split + 1);
    start = split + 1;
  }
  info.groups.emplace_back(sorted.begin() + start, sorted.end());

  // contiguous groups of a non-increasing sequence: the last group has the
  // minimum mean, and its largest entry is the threshold
  info.value = info.groups.back().front();
  return info;
}

double compute_threshold(const Matrix& phi) { return compute_threshold_info(phi).value; }

std::vector<std::pair<int, int>> ReducedBlockGraph::arc_list() const {
  std::vector<std::pair<int, int>> list;
  for (Index p = 0; p < block_count; ++p) {
    for (Index q = 0; q < block_count; ++q) {
      if (arcs(p, q)) list.emplace_back(static_cast<int>(p), static_cast<int>(q));
    }
  }
  return list;
}

ReducedBlockGraph reduce(const CouplingMatrices& couplings, std::optional<double> fixed_threshold) {
  ReducedBlockGraph graph;
  graph.block_count = static_cast<int>(couplings.Phi.rows());
  graph.threshold = fixed_threshold ? *fixed_threshold : compute_threshold(couplings.Phi);
  graph.arcs = couplings.Phi.array() > graph.threshold;
  return graph;
}

// --- reservoirs ---------------------------------------------------------------

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::community: return "community";
    case PatternKind::authority: return "authority";
    case PatternKind::hub: return "hub";
    case PatternKind::outlier: return "outlier";
    case PatternKind::bow_tie: return "bow_tie";
    case PatternKind::bipartite: return "bipartite";
    case PatternKind::multipartite: return "multipartite";
  }
  return "?";
}

const std::vector<PatternKind>& all_pattern_kinds() {
  static const std::vector<PatternKind> kinds = {
      PatternKind::community, PatternKind::authority,   PatternKind::hub,      PatternKind::outlier,
      PatternKind::bow_tie,   PatternKind::bipartite, PatternKind::multipartite};
  return kinds;
}

const std::vector<PatternInstance> PatternReservoirs::empty_;

bool PatternReservoirs::insert(PatternInstance instance) {
  auto& list = by_kind_[instance.kind];
  auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (const auto& existing : list) {
    if (subset(instance.blocks, existing.blocks)) return false;
  }
  std::erase_if(list, [&](const PatternInstance& existing) {
    return subset(existing.blocks, instance.blocks);
  });
  list.push_back(std::move(instance));
  return true;
}

const std::vector<PatternInstance>& PatternReservoirs::of(PatternKind kind) const {
  auto it = by_kind_.find(kind);
  return it == by_kind_.end() ? empty_ : it->second;
}

size_t PatternReservoirs::total() const {
  size_t count = 0;
  for (const auto& [kind, list] : by_kind_) count += list.size();
  return count;
}

void PatternReservoirs::sort() {
  for (auto& [kind, list] : by_kind_) {
    std::sort(list.begin(), list.end(), [](const PatternInstance& a, const PatternInstance& b) {
      if (a.blocks != b.blocks) return a.blocks < b.blocks;
      return a.core < b.core;
    });
  }
}

// --- matching -----------------------------------------------------------------

namespace {

std::vector<int> out_neighbors(const ReducedBlockGraph& g, int p) {
  std::vector<int> result;
  for (int q = 0; q < g.block_count; ++q) {
    if (q != p && g.has_arc(p, q)) result.push_back(q);
  }
  return result;
}

std::vector<int> in_neighbors(const ReducedBlockGraph& g, int p) {
  std::vector<int> result;
  for (int q = 0; q < g.block_count; ++q) {
    if (q != p && g.has_arc(q, p)) result.push_back(q);
  }
  return result;
}

bool coupled_either_way(const ReducedBlockGraph& g, int a, int b) {
  return g.has_arc(a, b) || g.has_arc(b, a);
}

PatternInstance single_block(PatternKind kind, int p, int layer_index) {
  PatternInstance inst;
  inst.kind = kind;
  inst.blocks = {p};
  inst.core = p;
  inst.layer_index = layer_index;
  return inst;
}

// All maximal bow ties around core b. A pair of wings (S_l, S_r) is maximal
// exactly when each wing equals the largest set compatible with the other, so
// enumerating subsets of the smaller candidate side and completing the other
// side greedily finds every maximal pair once.
void match_bow_ties(const ReducedBlockGraph& g, int b, int layer_index, PatternReservoirs& out) {
  const std::vector<int> sources = in_neighbors(g, b);   // candidate left wing
  const std::vector<int> targets = out_neighbors(g, b);  // candidate right wing
  if (sources.empty() || targets.empty()) return;

  const bool enumerate_right = targets.size() <= sources.size();
  const std::vector<int>& base = enumerate_right ? targets : sources;
  const std::vector<int>& other = enumerate_right ? sources : targets;

  auto completion = [&](const std::vector<int>& chosen, const std::vector<int>& candidates) {
    std::vector<int> result;
    for (int u : candidates) {
      bool ok = std::find(chosen.begin(), chosen.end(), u) == chosen.end();
      for (size_t c = 0; ok && c < chosen.size(); ++c) ok = !coupled_either_way(g, u, chosen[c]);
      if (ok) result.push_back(u);
    }
    return result;
  };

  // exact enumeration is exponential in the smaller wing; realistic reduced
  // graphs have a handful of blocks, and the cap keeps adversarial inputs sane
  constexpr size_t kExactLimit = 20;
  std::vector<std::vector<int>> seeds;
  if (base.size() <= kExactLimit) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << base.size()); ++mask) {
      std::vector<int> chosen;
      for (size_t i = 0; i < base.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) chosen.push_back(base[i]);
      }
      seeds.push_back(std::move(chosen));
    }
  } else {
    for (int u : base) seeds.push_back({u});  // degraded search: singleton seeds
  }

  for (auto& chosen : seeds) {
    std::vector<int> completed = completion(chosen, other);
    if (completed.empty()) continue;
    // the chosen side must itself be maximal against its completion
    if (completion(completed, base) != chosen) continue;

    PatternInstance inst;
    inst.kind = PatternKind::bow_tie;
    inst.core = b;
    inst.layer_index = layer_index;
    inst.left = enumerate_right ? completed : chosen;
    inst.right = enumerate_right ? chosen : completed;
    inst.blocks = inst.left;
    inst.blocks.insert(inst.blocks.end(), inst.right.begin(), inst.right.end());
    inst.blocks.push_back(b);
    std::sort(inst.blocks.begin(), inst.blocks.end());
    out.insert(std::move(inst));
  }
}

// Bron-Kerbosch over the "coupled either way" graph on non-self-coupled
// blocks; maximal cliques of size >= 2 are the multipartite family.
void maximal_cliques(const ReducedBlockGraph& g, std::vector<int>& current, std::vector<int> candidates,
                     std::vector<int> excluded, std::vector<std::vector<int>>& out) {
  if (candidates.empty() && excluded.empty()) {
    if (current.size() >= 2) out.push_back(current);
    return;
  }
  // pivot on the candidate/excluded vertex with the most candidate neighbours
  int pivot = -1, pivot_degree = -1;
  for (const auto* pool : {&candidates, &excluded}) {
    for (int u : *pool) {
      int degree = 0;
      for (int v : candidates) degree += (v != u && coupled_either_way(g, u, v));
      if (degree > pivot_degree) {
        pivot_degree = degree;
        pivot = u;
      }
    }
  }
  std::vector<int> frontier;  // P \ N(pivot); the pivot itself stays iterable
  for (int v : candidates) {
    if (v == pivot || !coupled_either_way(g, pivot, v)) frontier.push_back(v);
  }
  for (int v : frontier) {
    std::vector<int> next_candidates, next_excluded;
    for (int u : candidates) {
      if (u != v && coupled_either_way(g, u, v)) next_candidates.push_back(u);
    }
    for (int u : excluded) {
      if (u != v && coupled_either_way(g, u, v)) next_excluded.push_back(u);
    }
    current.push_back(v);
    maximal_cliques(g, current, std::move(next_candidates), std::move(next_excluded), out);
    current.pop_back();
    candidates.erase(std::find(candidates.begin(), candidates.end(), v));
    excluded.push_back(v);
  }
}

}  // namespace

PatternReservoirs match_patterns(const ReducedBlockGraph& graph, int layer_index, int hub_min) {
  if (hub_min < 1) throw std::invalid_argument("hub_min must be >= 1");
  PatternReservoirs reservoirs;

  std::vector<int> hubs, authorities;
  for (int p = 0; p < graph.block_count; ++p) {
    if (!graph.self_coupled(p)) continue;
    reservoirs.insert(single_block(PatternKind::community, p, layer_index));

    auto out = out_neighbors(graph, p);
    if (static_cast<int>(out.size()) >= hub_min) {
      PatternInstance inst = single_block(PatternKind::hub, p, layer_index);
      inst.spokes = std::move(out);
      reservoirs.insert(std::move(inst));
      hubs.push_back(p);
    }
    auto in = in_neighbors(graph, p);
    if (static_cast<int>(in.size()) >= hub_min) {
      PatternInstance inst = single_block(PatternKind::authority, p, layer_index);
      inst.spokes = std::move(in);
      reservoirs.insert(std::move(inst));
      authorities.push_back(p);
    }
  }

  for (int p = 0; p < graph.block_count; ++p) {
    if (graph.self_coupled(p)) continue;
    std::vector<int> witnesses;
    for (int h : hubs) {
      if (graph.has_arc(h, p)) witnesses.push_back(h);
    }
    for (int a : authorities) {
      if (graph.has_arc(p, a)) witnesses.push_back(a);
    }
    if (witnesses.empty()) continue;
    PatternInstance inst = single_block(PatternKind::outlier, p, layer_index);
    std::sort(witnesses.begin(), witnesses.end());
    witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
    inst.spokes = std::move(witnesses);
    reservoirs.insert(std::move(inst));
  }

  for (int b = 0; b < graph.block_count; ++b) {
    match_bow_ties(graph, b, layer_index, reservoirs);
  }

  std::vector<int> loners;
  for (int p = 0; p < graph.block_count; ++p) {
    if (!graph.self_coupled(p)) loners.push_back(p);
  }
  std::vector<int> clique;
  std::vector<std::vector<int>> cliques;
  maximal_cliques(graph, clique, loners, {}, cliques);
  for (auto& members : cliques) {
    std::sort(members.begin(), members.end());
    PatternInstance inst;
    inst.kind = members.size() == 2 ? PatternKind::bipartite : PatternKind::multipartite;
    inst.blocks = std::move(members);
    inst.layer_index = layer_index;
    reservoirs.insert(std::move(inst));
  }

  reservoirs.sort();
  return reservoirs;
}

}  // namespace multiplex
