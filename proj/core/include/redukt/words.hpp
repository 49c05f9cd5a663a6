#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "redukt/alphabet.hpp"

namespace redukt {

/// An ultimately periodic word u.v^omega in canonical lasso form:
///   - the cycle v is nonempty and primitive (not a power of a shorter word),
///   - the prefix u is minimal: its last letter differs from the cycle's last
///     letter, so no letter can be rotated out of the cycle into the prefix.
/// Canonical form is unique, hence operator== is plain field equality.
/// Words with a cycle of length 1 end in an infinite stutter a^omega and are
/// called terminal; all others alternate letters forever.
class CanonicalWord {
public:
  /// Canonicalizes (prefix, cycle). Throws InvalidWordError on an empty
  /// cycle or on letters outside the alphabet.
  CanonicalWord(AlphabetPtr alphabet, std::vector<Letter> prefix, std::vector<Letter> cycle);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<Letter>& prefix() const { return prefix_; }
  const std::vector<Letter>& cycle() const { return cycle_; }

  /// Letter at an absolute position of the infinite word.
  Letter at(std::size_t pos) const {
    if (pos < prefix_.size())
      return prefix_[pos];
    return cycle_[(pos - prefix_.size()) % cycle_.size()];
  }

  /// Number of distinct positions of the lasso (|prefix| + |cycle|).
  std::size_t positions() const { return prefix_.size() + cycle_.size(); }

  /// Debug form "a.b | (c)": prefix letters, then the cycle in parentheses.
  std::string str() const;

  bool operator==(const CanonicalWord& o) const;
  bool operator!=(const CanonicalWord& o) const { return !(*this == o); }
  /// Arbitrary strict order so words can live in std::set / std::map.
  bool operator<(const CanonicalWord& o) const;

private:
  AlphabetPtr alphabet_;
  std::vector<Letter> prefix_;
  std::vector<Letter> cycle_;
};

/// One maximal run of equal letters.
struct RleBlock {
  Letter letter;
  std::uint32_t count;

  bool operator==(const RleBlock& o) const { return letter == o.letter && count == o.count; }
};

/// Run-length view of a canonical word: blocks a0^n0 a1^n1 ... with
/// adjacent blocks carrying distinct letters, including across the
/// prefix/cycle seam and around the cycle wrap. A word whose lasso cycle
/// has length 1 ends in a single infinite block, exposed as `terminal`
/// (and `cycle` is empty). Expanding prefix + cycle^omega (or prefix +
/// terminal^omega) reproduces the word.
struct RleView {
  std::vector<RleBlock> prefix;
  std::vector<RleBlock> cycle;
  std::optional<Letter> terminal;
};

RleView rle_view(const CanonicalWord& w);

/// The "shorter than" partial order: w1 is obtained from w2 by deleting
/// duplicated letters. Both words must have the same block skeleton
/// (same letters in the same order, forever) and w1's block exponents
/// must be pointwise <= w2's. Words ending in an infinite stutter are
/// only comparable with words ending in the same infinite stutter; they
/// are never comparable with forever-alternating words.
/// Throws AlphabetMismatchError when the alphabets differ.
bool shorter_than(const CanonicalWord& w1, const CanonicalWord& w2);

/// The least element of w's stutter-equivalence class: every finite block
/// exponent lowered to 1.
CanonicalWord shortest_representative(const CanonicalWord& w);

/// Two words are stutter equivalent iff they have the same shortest
/// representative.
bool stutter_equivalent(const CanonicalWord& w1, const CanonicalWord& w2);

enum class NeighborDirection { Shorter, Longer };

/// Bounded neighborhood of w in the "shorter than" order, used by the
/// word-level sensitivity oracles.
///   - Shorter: every word obtained by decreasing exponents of the
///     run-length prefix blocks (each stays >= 1), total decrease between
///     1 and budget.
///   - Longer: every word obtained by unrolling up to `budget` copies of
///     the cycle into the prefix and then increasing run-length prefix
///     exponents; copies unrolled plus total increase stay <= budget, and
///     the total increase is >= 1.
/// The word itself is never returned. Every returned word is comparable
/// with w in the stated direction.
std::set<CanonicalWord> enumerate_neighbors(const CanonicalWord& w, NeighborDirection direction,
                                            unsigned budget);

} // namespace redukt
