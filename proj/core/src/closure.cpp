#include "redukt/tgba.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace redukt {

namespace {

struct EdgeKey {
  std::uint32_t src;
  std::uint32_t dst;
  LetterSet label;
  MarkSet marks;

  bool operator==(const EdgeKey& o) const {
    return src == o.src && dst == o.dst && marks == o.marks && label == o.label;
  }
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const {
    std::size_t h = k.label.hash_value();
    h ^= std::hash<std::uint64_t>{}((std::uint64_t(k.src) << 32) | k.dst) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(k.marks) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

} // namespace

Tgba cl(const Tgba& a, const Limits& limits, const CancelToken& token) {
  std::vector<TgbaEdge> edges = a.edges();
  std::unordered_set<EdgeKey, EdgeKeyHash> seen;
  std::vector<std::vector<std::uint32_t>> by_src(a.num_states()), by_dst(a.num_states());
  std::deque<std::uint32_t> worklist;

  auto add = [&](const TgbaEdge& e, bool initial_load) {
    if (!seen.insert({e.src, e.dst, e.label, e.marks}).second) return;
    std::uint32_t idx;
    if (initial_load) {
      idx = static_cast<std::uint32_t>(&e - edges.data());
    } else {
      if (edges.size() >= limits.saturation_edge_cap)
        throw ResourceLimitError("stutter closure exceeded the edge cap");
      idx = static_cast<std::uint32_t>(edges.size());
      edges.push_back(e);
    }
    by_src[e.src].push_back(idx);
    by_dst[e.dst].push_back(idx);
    worklist.push_back(idx);
  };

  for (const TgbaEdge& e : edges) add(e, true);

  // Compose every pair of adjacent edges whose labels intersect; the
  // composite reads one letter where the pair read the same letter twice,
  // so iterating this to a fixpoint absorbs arbitrary block shrinking.
  token.poll();
  std::size_t steps = 0;
  while (!worklist.empty()) {
    if ((++steps & 255) == 0) token.poll();
    TgbaEdge e = edges[worklist.front()]; // copy: edges may reallocate below
    worklist.pop_front();
    // Copies: add() grows these adjacency rows when e is a self-loop.
    std::vector<std::uint32_t> succ = by_src[e.dst];
    std::vector<std::uint32_t> pred = by_dst[e.src];
    for (std::uint32_t j : succ) {
      TgbaEdge f = edges[j];
      LetterSet lab = e.label & f.label;
      if (lab.any()) add({e.src, f.dst, lab, e.marks | f.marks}, false);
    }
    for (std::uint32_t j : pred) {
      TgbaEdge f = edges[j];
      LetterSet lab = f.label & e.label;
      if (lab.any()) add({f.src, e.dst, lab, f.marks | e.marks}, false);
    }
  }

  TgbaBuilder b(a.alphabet(), a.mark_count());
  for (std::uint32_t s = 0; s < a.num_states(); ++s) b.add_state(a.state_name(s));
  b.set_initial(a.initial());
  for (const TgbaEdge& e : edges) b.add_edge(e.src, e.dst, e.label, e.marks);
  return b.build();
}

Tgba sl(const Tgba& a, const Limits& limits, const CancelToken& token) {
  TgbaBuilder b(a.alphabet(), a.mark_count());
  for (std::uint32_t s = 0; s < a.num_states(); ++s) b.add_state(a.state_name(s));
  b.set_initial(a.initial());

  // Tagged copies (y, c) remember the letter that was just read, so the
  // mark-free self-loop can repeat exactly that letter. Only copies that
  // some edge actually enters get materialized.
  std::unordered_map<std::uint64_t, std::uint32_t> tagged;
  std::deque<std::pair<std::uint32_t, Letter>> fresh;

  auto tag = [&](std::uint32_t y, Letter c) {
    std::uint64_t key = (std::uint64_t(y) << 32) | c;
    auto it = tagged.find(key);
    if (it != tagged.end()) return it->second;
    if (b.num_states() >= limits.automaton_state_cap)
      throw ResourceLimitError("self-loopization exceeded the state cap");
    std::string base = a.state_name(y).empty() ? std::to_string(y) : a.state_name(y);
    std::uint32_t id = b.add_state(base + "|" + a.alphabet()->name(c));
    tagged.emplace(key, id);
    fresh.emplace_back(y, c);
    return id;
  };

  auto add_edge = [&](std::uint32_t src, std::uint32_t dst, LetterSet label, MarkSet marks) {
    if (b.num_edges() >= limits.automaton_edge_cap)
      throw ResourceLimitError("self-loopization exceeded the edge cap");
    b.add_edge(src, dst, std::move(label), marks);
  };

  for (const TgbaEdge& e : a.edges()) {
    add_edge(e.src, e.dst, e.label, e.marks);
    e.label.for_each([&](Letter c) {
      add_edge(e.src, tag(e.dst, c), LetterSet::single(a.alphabet()->size(), c), e.marks);
    });
  }

  token.poll();
  std::size_t steps = 0;
  while (!fresh.empty()) {
    if ((++steps & 255) == 0) token.poll();
    auto [y, c] = fresh.front();
    fresh.pop_front();
    std::uint32_t id = tagged.at((std::uint64_t(y) << 32) | c);
    add_edge(id, id, LetterSet::single(a.alphabet()->size(), c), 0);
    for (std::uint32_t ei : a.out(y)) {
      const TgbaEdge& e = a.edges()[ei];
      add_edge(id, e.dst, e.label, e.marks);
      e.label.for_each([&](Letter c2) {
        add_edge(id, tag(e.dst, c2), LetterSet::single(a.alphabet()->size(), c2), e.marks);
      });
    }
  }
  return b.build();
}

} // namespace redukt
