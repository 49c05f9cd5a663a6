#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "redukt/errors.hpp"

namespace redukt {

/// Index of a symbol within an Alphabet.
using Letter = std::uint32_t;

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// A finite alphabet. Two flavours share one type: a plain set of named
/// symbols, and the powerset alphabet 2^AP induced by an ordered list of
/// atomic propositions. In the powerset case a letter is the bit
/// assignment of the propositions (bit i set = proposition i holds) and
/// symbol names render as "{p,q}".
class Alphabet {
public:
  static constexpr std::size_t max_powerset_aps = 10;

  static AlphabetPtr raw(std::vector<std::string> symbols);
  static AlphabetPtr powerset(std::vector<std::string> ap_names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter a) const { return names_.at(a); }

  bool is_powerset() const { return !aps_.empty(); }
  const std::vector<std::string>& aps() const { return aps_; }

  /// Index of an atomic proposition, or npos. Powerset alphabets only.
  std::size_t ap_index(const std::string& ap) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool operator==(const Alphabet& other) const {
    return names_ == other.names_ && aps_ == other.aps_;
  }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
  Alphabet(std::vector<std::string> names, std::vector<std::string> aps)
      : names_(std::move(names)), aps_(std::move(aps)) {}

  std::vector<std::string> names_;
  std::vector<std::string> aps_; // empty unless powerset
};

/// Throws AlphabetMismatchError unless both alphabets have equal content.
void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, const char* where);

/// A subset of the letters of an alphabet, used as an edge label.
/// Canonical by construction: equal sets compare equal. Conjunction is
/// set intersection, satisfiability is nonemptiness.
class LetterSet {
public:
  LetterSet() = default;

  static LetterSet none(std::size_t universe);
  static LetterSet all(std::size_t universe);
  static LetterSet single(std::size_t universe, Letter a);

  std::size_t universe() const { return universe_; }
  bool contains(Letter a) const {
    return (bits_[a >> 6] >> (a & 63)) & 1u;
  }
  void insert(Letter a) { bits_[a >> 6] |= std::uint64_t{1} << (a & 63); }

  bool any() const;
  bool empty() const { return !any(); }
  std::size_t count() const;
  /// Smallest letter in the set; the set must be nonempty.
  Letter first() const;

  LetterSet operator&(const LetterSet& o) const;
  LetterSet operator|(const LetterSet& o) const;

  bool operator==(const LetterSet& o) const {
    return universe_ == o.universe_ && bits_ == o.bits_;
  }
  bool operator<(const LetterSet& o) const {
    if (universe_ != o.universe_)
      return universe_ < o.universe_;
    return bits_ < o.bits_;
  }

  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
        fn(static_cast<Letter>((w << 6) + bit));
        word &= word - 1;
      }
    }
  }

  std::size_t hash_value() const;

private:
  explicit LetterSet(std::size_t universe)
      : universe_(universe), bits_((universe + 63) / 64, 0) {}

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> bits_;
};

} // namespace redukt
