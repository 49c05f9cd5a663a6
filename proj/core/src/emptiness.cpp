#include "redukt/tgba.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <vector>

namespace redukt {

namespace {

// Iterative Tarjan SCC over the automaton graph. Recursion is a foot-gun
// here: product automata routinely have path depths in the hundreds of
// thousands.
struct SccFinder {
  const Tgba& aut;
  std::vector<std::uint32_t> index, lowlink, scc_id;
  std::vector<bool> on_stack;
  std::vector<std::uint32_t> stack;
  std::uint32_t next_index = 0;
  std::uint32_t scc_count = 0;

  // Per-SCC union of marks on edges internal to the SCC.
  std::vector<MarkSet> scc_marks;
  // One state per SCC, used as the anchor when extracting a witness.
  std::vector<std::uint32_t> scc_root;

  explicit SccFinder(const Tgba& a)
      : aut(a),
        index(a.num_states(), UINT32_MAX),
        lowlink(a.num_states(), 0),
        scc_id(a.num_states(), UINT32_MAX),
        on_stack(a.num_states(), false) {}

  void run(std::uint32_t start, const CancelToken& token) {
    struct Frame {
      std::uint32_t state;
      std::size_t edge_pos; // position into out(state)
    };
    std::vector<Frame> frames;
    frames.push_back({start, 0});
    index[start] = lowlink[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;

    token.poll();
    std::size_t steps = 0;
    while (!frames.empty()) {
      if ((++steps & 1023) == 0) token.poll();
      Frame& f = frames.back();
      const auto& out = aut.out(f.state);
      if (f.edge_pos < out.size()) {
        const TgbaEdge& e = aut.edges()[out[f.edge_pos++]];
        std::uint32_t w = e.dst;
        if (index[w] == UINT32_MAX) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.state] = std::min(lowlink[f.state], index[w]);
        }
        continue;
      }
      // All successors done; pop.
      std::uint32_t v = f.state;
      frames.pop_back();
      if (!frames.empty())
        lowlink[frames.back().state] = std::min(lowlink[frames.back().state], lowlink[v]);
      if (lowlink[v] == index[v]) {
        std::uint32_t id = scc_count++;
        scc_root.push_back(v);
        scc_marks.push_back(0);
        for (;;) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc_id[w] = id;
          if (w == v) break;
        }
      }
    }
  }

  void collect_internal_marks() {
    for (const TgbaEdge& e : aut.edges()) {
      if (scc_id[e.src] != UINT32_MAX && scc_id[e.src] == scc_id[e.dst])
        scc_marks[scc_id[e.src]] |= e.marks;
    }
  }

  // An SCC is accepting when it carries every mark and is not a trivial
  // single state without a self-loop. Trivial SCCs have no internal edges,
  // so their mark union stays 0 and (with mark_count >= 1) they never pass
  // the all_marks test.
  bool accepting(std::uint32_t id, MarkSet all) const {
    return (scc_marks[id] & all) == all;
  }
};

// Shortest path inside `allowed` states from `from` to any state satisfying
// `goal`, recording the edge indices taken. Returns false if unreachable.
template <typename GoalFn, typename AllowFn>
bool bfs_path(const Tgba& aut, std::uint32_t from, GoalFn goal, AllowFn allowed,
              std::vector<std::uint32_t>& edges_out) {
  std::unordered_map<std::uint32_t, std::uint32_t> parent_edge;
  std::deque<std::uint32_t> queue;
  queue.push_back(from);
  parent_edge[from] = UINT32_MAX;
  std::uint32_t found = UINT32_MAX;
  if (goal(from)) {
    edges_out.clear();
    return true;
  }
  while (!queue.empty() && found == UINT32_MAX) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    for (std::uint32_t ei : aut.out(s)) {
      const TgbaEdge& e = aut.edges()[ei];
      if (!allowed(e.dst) || parent_edge.count(e.dst)) continue;
      parent_edge[e.dst] = ei;
      if (goal(e.dst)) {
        found = e.dst;
        break;
      }
      queue.push_back(e.dst);
    }
  }
  if (found == UINT32_MAX) return false;
  edges_out.clear();
  for (std::uint32_t s = found; s != from;) {
    std::uint32_t ei = parent_edge.at(s);
    edges_out.push_back(ei);
    s = aut.edges()[ei].src;
  }
  std::reverse(edges_out.begin(), edges_out.end());
  return true;
}

// Builds a concrete lasso run through an accepting SCC: a prefix from the
// initial state to the SCC anchor, then a cycle from the anchor that visits
// every mark and returns. Greedy mark chasing keeps the cycle short without
// trying to be minimal.
LassoWitness extract_witness(const Tgba& aut, const SccFinder& sccs, std::uint32_t scc) {
  std::uint32_t anchor = sccs.scc_root[scc];
  auto in_scc = [&](std::uint32_t s) { return sccs.scc_id[s] == scc; };

  std::vector<std::uint32_t> prefix_edges;
  bool ok = bfs_path(
      aut, aut.initial(), [&](std::uint32_t s) { return s == anchor; },
      [](std::uint32_t) { return true; }, prefix_edges);
  if (!ok) throw InternalError("emptiness: accepting SCC unreachable from initial state");

  MarkSet all = aut.all_marks();
  MarkSet covered = 0;
  std::uint32_t cursor = anchor;
  std::vector<std::uint32_t> cycle_edges;
  while ((covered & all) != all) {
    MarkSet missing = all & ~covered;
    std::vector<std::uint32_t> leg;
    // Walk to the nearest SCC-internal edge carrying a missing mark. The
    // goal is phrased on edge endpoints, so search for a state that has such
    // an outgoing edge, then take it.
    std::uint32_t hit_edge = UINT32_MAX;
    auto has_missing_edge = [&](std::uint32_t s) {
      for (std::uint32_t ei : aut.out(s)) {
        const TgbaEdge& e = aut.edges()[ei];
        if (in_scc(e.dst) && (e.marks & missing)) {
          hit_edge = ei;
          return true;
        }
      }
      return false;
    };
    ok = bfs_path(aut, cursor, has_missing_edge, in_scc, leg);
    if (!ok || hit_edge == UINT32_MAX)
      throw InternalError("emptiness: mark vanished from accepting SCC");
    for (std::uint32_t ei : leg) {
      cycle_edges.push_back(ei);
      covered |= aut.edges()[ei].marks;
    }
    cycle_edges.push_back(hit_edge);
    covered |= aut.edges()[hit_edge].marks;
    cursor = aut.edges()[hit_edge].dst;
  }
  // Close the loop back to the anchor.
  std::vector<std::uint32_t> back;
  ok = bfs_path(
      aut, cursor, [&](std::uint32_t s) { return s == anchor; }, in_scc, back);
  if (!ok) throw InternalError("emptiness: SCC not strongly connected");
  cycle_edges.insert(cycle_edges.end(), back.begin(), back.end());

  // A cycle must advance at least one step; if every mark sat on the anchor
  // itself this loop could be empty, so force one round trip.
  if (cycle_edges.empty()) {
    std::vector<std::uint32_t> step;
    std::uint32_t next_state = UINT32_MAX;
    std::uint32_t first_edge = UINT32_MAX;
    for (std::uint32_t ei : aut.out(anchor)) {
      const TgbaEdge& e = aut.edges()[ei];
      if (in_scc(e.dst)) {
        first_edge = ei;
        next_state = e.dst;
        break;
      }
    }
    if (first_edge == UINT32_MAX)
      throw InternalError("emptiness: accepting SCC has no internal edge");
    cycle_edges.push_back(first_edge);
    if (next_state != anchor) {
      ok = bfs_path(
          aut, next_state, [&](std::uint32_t s) { return s == anchor; }, in_scc, step);
      if (!ok) throw InternalError("emptiness: SCC not strongly connected");
      cycle_edges.insert(cycle_edges.end(), step.begin(), step.end());
    }
  }

  LassoWitness w{CanonicalWord(aut.alphabet(), {}, {0}), {}, {}};
  std::vector<Letter> prefix_letters, cycle_letters;
  w.prefix_states.push_back(aut.initial());
  for (std::uint32_t ei : prefix_edges) {
    const TgbaEdge& e = aut.edges()[ei];
    prefix_letters.push_back(e.label.first());
    w.prefix_states.push_back(e.dst);
  }
  w.cycle_states.push_back(anchor);
  for (std::size_t i = 0; i < cycle_edges.size(); ++i) {
    const TgbaEdge& e = aut.edges()[cycle_edges[i]];
    cycle_letters.push_back(e.label.first());
    if (i + 1 < cycle_edges.size()) w.cycle_states.push_back(e.dst);
  }
  w.word = CanonicalWord(aut.alphabet(), prefix_letters, cycle_letters);
  return w;
}

} // namespace

EmptinessResult is_empty(const Tgba& aut, bool want_witness, const CancelToken& token) {
  EmptinessResult res;
  res.empty = true;
  if (aut.num_states() == 0) return res;

  SccFinder sccs(aut);
  sccs.run(aut.initial(), token);
  sccs.collect_internal_marks();
  res.states_seen = sccs.next_index;

  MarkSet all = aut.all_marks();
  for (std::uint32_t id = 0; id < sccs.scc_count; ++id) {
    if (!sccs.accepting(id, all)) continue;
    res.empty = false;
    if (want_witness) res.witness = extract_witness(aut, sccs, id);
    return res;
  }
  return res;
}

} // namespace redukt
