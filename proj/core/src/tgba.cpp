#include "redukt/tgba.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

namespace redukt {

std::uint32_t TgbaBuilder::add_state(std::string name) {
  state_names_.push_back(std::move(name));
  return static_cast<std::uint32_t>(state_names_.size() - 1);
}

void TgbaBuilder::add_edge(std::uint32_t src, std::uint32_t dst, LetterSet label, MarkSet marks) {
  if (label.empty())
    return;
  if (src >= state_names_.size() || dst >= state_names_.size())
    throw InternalError("edge endpoint out of range");
  edges_.push_back(TgbaEdge{src, dst, std::move(label), marks});
}

Tgba TgbaBuilder::build() {
  Tgba a;
  a.alphabet_ = alphabet_;
  a.num_states_ = static_cast<std::uint32_t>(state_names_.size());
  a.initial_ = initial_;
  a.mark_count_ = mark_count_;
  if (mark_count_ == 0) {
    // Invariant: at least one mark, stamped everywhere, so acceptance
    // degenerates to "has a cycle" exactly when intended.
    a.mark_count_ = 1;
    for (auto& e : edges_)
      e.marks = 1;
  }
  a.edges_ = std::move(edges_);
  a.state_names_ = std::move(state_names_);
  a.out_.assign(a.num_states_, {});
  for (std::uint32_t i = 0; i < a.edges_.size(); ++i)
    a.out_[a.edges_[i].src].push_back(i);
  return a;
}

Tgba product(const Tgba& a, const Tgba& b, const Limits& limits, const CancelToken& token) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "product");

  TgbaBuilder builder(a.alphabet(), a.mark_count() + b.mark_count());
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;

  auto key = [](std::uint32_t x, std::uint32_t y) {
    return (std::uint64_t{x} << 32) | y;
  };
  auto intern = [&](std::uint32_t x, std::uint32_t y) {
    auto [it, fresh] = ids.try_emplace(key(x, y), 0);
    if (fresh) {
      if (builder.num_states() >= limits.automaton_state_cap)
        throw ResourceLimitError("product exceeded the state cap");
      it->second = builder.add_state(a.state_name(x) + "*" + b.state_name(y));
      queue.emplace_back(x, y);
    }
    return it->second;
  };

  std::uint32_t init = intern(a.initial(), b.initial());
  builder.set_initial(init);

  std::size_t steps = 0;
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    std::uint32_t src = ids.at(key(x, y));
    for (std::uint32_t ei : a.out(x)) {
      const TgbaEdge& ea = a.edges()[ei];
      for (std::uint32_t ej : b.out(y)) {
        if (++steps % 1024 == 0)
          token.poll();
        const TgbaEdge& eb = b.edges()[ej];
        LetterSet both = ea.label & eb.label;
        if (both.empty())
          continue;
        if (builder.num_edges() >= limits.automaton_edge_cap)
          throw ResourceLimitError("product exceeded the edge cap");
        MarkSet marks = ea.marks | (eb.marks << a.mark_count());
        builder.add_edge(src, intern(ea.dst, eb.dst), std::move(both), marks);
      }
    }
  }
  return builder.build();
}

Tgba word_to_tgba(const CanonicalWord& w) {
  const std::size_t n = w.positions();
  const std::size_t wrap = w.prefix().size();
  TgbaBuilder builder(w.alphabet(), 1);
  for (std::size_t i = 0; i < n; ++i)
    builder.add_state("pos" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t dst = static_cast<std::uint32_t>(i + 1 < n ? i + 1 : wrap);
    MarkSet marks = (i + 1 == n) ? 1 : 0; // the cycle-closing edge
    builder.add_edge(static_cast<std::uint32_t>(i), dst,
                     LetterSet::single(w.alphabet()->size(), w.at(i)), marks);
  }
  builder.set_initial(0);
  return builder.build();
}

bool member(const CanonicalWord& w, const Tgba& a, const Limits& limits,
            const CancelToken& token) {
  return !is_empty(product(word_to_tgba(w), a, limits, token), false, token).empty;
}

std::set<CanonicalWord> enumerate_lasso_words(const Tgba& a, unsigned max_positions,
                                              bool* truncated) {
  std::set<CanonicalWord> words;
  if (truncated)
    *truncated = false;

  // Depth-first over runs: a lasso closes whenever an edge returns to a
  // state already on the path and the loop covers every mark.
  std::vector<std::uint32_t> path_states;
  std::vector<Letter> path_letters;
  std::vector<MarkSet> step_marks; // marks of the edge taken at step i

  auto rec = [&](auto&& self, std::uint32_t state) -> void {
    if (path_states.size() >= max_positions) {
      if (truncated && !a.out(state).empty())
        *truncated = true;
      return;
    }
    path_states.push_back(state);
    for (std::uint32_t ei : a.out(state)) {
      const TgbaEdge& e = a.edges()[ei];
      e.label.for_each([&](Letter c) {
        path_letters.push_back(c);
        // Closing the lasso at any earlier occurrence of e.dst.
        for (std::size_t j = 0; j < path_states.size(); ++j) {
          if (path_states[j] != e.dst)
            continue;
          // Cycle = edges taken since step j plus the closing edge.
          MarkSet covered = e.marks;
          for (std::size_t k = j; k < step_marks.size(); ++k)
            covered |= step_marks[k];
          if (covered == a.all_marks()) {
            std::vector<Letter> prefix(path_letters.begin(), path_letters.begin() + j);
            std::vector<Letter> cycle(path_letters.begin() + j, path_letters.end());
            words.insert(CanonicalWord(a.alphabet(), std::move(prefix), std::move(cycle)));
          }
          break;
        }
        step_marks.push_back(e.marks);
        self(self, e.dst);
        step_marks.pop_back();
        path_letters.pop_back();
      });
    }
    path_states.pop_back();
  };
  rec(rec, a.initial());
  return words;
}

std::string to_dot(const Tgba& a) {
  std::ostringstream os;
  os << "digraph tgba {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n  init -> s" << a.initial() << ";\n";
  for (std::uint32_t s = 0; s < a.num_states(); ++s) {
    os << "  s" << s << " [label=\"";
    if (a.state_name(s).empty())
      os << s;
    else
      os << a.state_name(s);
    os << "\"];\n";
  }
  for (const TgbaEdge& e : a.edges()) {
    os << "  s" << e.src << " -> s" << e.dst << " [label=\"";
    bool first = true;
    e.label.for_each([&](Letter c) {
      if (!first)
        os << ",";
      os << a.alphabet()->name(c);
      first = false;
    });
    if (e.marks) {
      os << " #";
      for (std::uint32_t m = 0; m < a.mark_count(); ++m)
        if (e.marks & (MarkSet{1} << m))
          os << m;
    }
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace redukt
