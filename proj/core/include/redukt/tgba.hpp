#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "redukt/alphabet.hpp"
#include "redukt/limits.hpp"
#include "redukt/words.hpp"

namespace redukt {

/// Bitmask of acceptance marks.
using MarkSet = std::uint64_t;

struct TgbaEdge {
  std::uint32_t src;
  std::uint32_t dst;
  LetterSet label;
  MarkSet marks;
};

/// Transition-based generalized Buchi automaton. Acceptance marks sit on
/// edges; a run is accepting iff every mark of the automaton occurs
/// infinitely often along it. Every automaton has at least one mark:
/// constructions that would produce none get a single mark stamped on
/// every edge, so that mark-free self-loops can never fake acceptance.
class Tgba {
public:
  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::uint32_t num_states() const { return num_states_; }
  std::uint32_t initial() const { return initial_; }
  std::uint32_t mark_count() const { return mark_count_; }
  MarkSet all_marks() const {
    return mark_count_ >= 64 ? ~MarkSet{0} : (MarkSet{1} << mark_count_) - 1;
  }

  const std::vector<TgbaEdge>& edges() const { return edges_; }
  /// Indices into edges() of the edges leaving `state`.
  const std::vector<std::uint32_t>& out(std::uint32_t state) const { return out_[state]; }

  /// Optional display name of a state ("" when unnamed).
  const std::string& state_name(std::uint32_t s) const { return state_names_[s]; }

private:
  friend class TgbaBuilder;
  AlphabetPtr alphabet_;
  std::uint32_t num_states_ = 0;
  std::uint32_t initial_ = 0;
  std::uint32_t mark_count_ = 0;
  std::vector<TgbaEdge> edges_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::string> state_names_;
};

class TgbaBuilder {
public:
  TgbaBuilder(AlphabetPtr alphabet, std::uint32_t mark_count)
      : alphabet_(std::move(alphabet)), mark_count_(mark_count) {
    if (mark_count_ > 62)
      throw ResourceLimitError("too many acceptance marks");
  }

  std::uint32_t add_state(std::string name = {});
  /// Edges with unsatisfiable labels are dropped silently.
  void add_edge(std::uint32_t src, std::uint32_t dst, LetterSet label, MarkSet marks);
  void set_initial(std::uint32_t s) { initial_ = s; }
  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  Tgba build();

private:
  AlphabetPtr alphabet_;
  std::uint32_t mark_count_;
  std::uint32_t initial_ = 0;
  std::vector<TgbaEdge> edges_;
  std::vector<std::string> state_names_;
};

/// Synchronous product: accepts the intersection language. The right
/// operand's marks are re-indexed after the left's, so the product
/// carries the union of both acceptance obligations. Only pairs
/// reachable from the initial pair are materialized.
Tgba product(const Tgba& a, const Tgba& b, const Limits& limits = {},
             const CancelToken& token = {});

/// Stutter closure: saturates the edge set with compositions
/// (x -l1-> y -l2-> z) => (x -(l1&l2)-> z) carrying the united marks,
/// until a fixpoint. The result accepts exactly the words obtainable
/// from an accepted word by deleting duplicated letters.
Tgba cl(const Tgba& a, const Limits& limits = {}, const CancelToken& token = {});

/// Self-loopization: every edge (x,l,M,y) additionally leads, per letter
/// c of l, to a tagged copy (y,c) that carries a mark-free self-loop on c
/// and mirrors y's outgoing edges. The result accepts exactly the words
/// obtainable from an accepted word by duplicating letters finitely
/// often per block.
Tgba sl(const Tgba& a, const Limits& limits = {}, const CancelToken& token = {});

/// Accepting lasso extracted from a nonempty automaton. The raw letters
/// along prefix_states/cycle_states canonicalize to `word`; the cycle
/// visits every acceptance mark.
struct LassoWitness {
  CanonicalWord word;
  std::vector<std::uint32_t> prefix_states;
  std::vector<std::uint32_t> cycle_states;
};

struct EmptinessResult {
  bool empty;
  std::optional<LassoWitness> witness;
  std::size_t states_seen = 0;
};

/// Emptiness by SCC decomposition: the language is nonempty iff some
/// reachable SCC has an internal edge set covering every mark. Witness
/// extraction picks the smallest satisfying letter of each edge label.
EmptinessResult is_empty(const Tgba& a, bool want_witness = false,
                         const CancelToken& token = {});

/// Membership via product with the word automaton.
bool member(const CanonicalWord& w, const Tgba& a, const Limits& limits = {},
            const CancelToken& token = {});

/// Single-word automaton: one state per lasso position, the cycle-closing
/// edge carries the only mark.
Tgba word_to_tgba(const CanonicalWord& w);

/// Words of the language found by walking runs of up to `max_positions`
/// states, closing a lasso at every revisited state whose loop covers all
/// marks. Edge labels are expanded letter by letter. A word whose lasso
/// reuses prefix states is found through a rotated run, which can need a
/// few positions of slack; *truncated is set when some run was cut off,
/// meaning the result may be incomplete for the largest words.
std::set<CanonicalWord> enumerate_lasso_words(const Tgba& a, unsigned max_positions,
                                              bool* truncated = nullptr);

/// Graphviz rendering.
std::string to_dot(const Tgba& a);

} // namespace redukt
