#include "redukt/alphabet.hpp"

#include <algorithm>
#include <set>

namespace redukt {

AlphabetPtr Alphabet::raw(std::vector<std::string> symbols) {
  if (symbols.empty())
    throw Error("alphabet must have at least one symbol");
  std::set<std::string> seen;
  for (const auto& s : symbols)
    if (!seen.insert(s).second)
      throw Error("duplicate alphabet symbol '" + s + "'");
  return AlphabetPtr(new Alphabet(std::move(symbols), {}));
}

AlphabetPtr Alphabet::powerset(std::vector<std::string> ap_names) {
  if (ap_names.size() > max_powerset_aps)
    throw ResourceLimitError("too many atomic propositions for letter enumeration: " +
                             std::to_string(ap_names.size()) + " > " +
                             std::to_string(max_powerset_aps));
  std::set<std::string> seen;
  for (const auto& n : ap_names)
    if (!seen.insert(n).second)
      throw Error("duplicate atomic proposition '" + n + "'");
  std::size_t n = std::size_t{1} << ap_names.size();
  std::vector<std::string> names(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < ap_names.size(); ++i) {
      if (m & (std::size_t{1} << i)) {
        if (!first)
          s += ',';
        s += ap_names[i];
        first = false;
      }
    }
    s += '}';
    names[m] = std::move(s);
  }
  return AlphabetPtr(new Alphabet(std::move(names), std::move(ap_names)));
}

std::size_t Alphabet::ap_index(const std::string& ap) const {
  auto it = std::find(aps_.begin(), aps_.end(), ap);
  return it == aps_.end() ? npos : static_cast<std::size_t>(it - aps_.begin());
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, const char* where) {
  if (a == b)
    return;
  if (!a || !b || *a != *b)
    throw AlphabetMismatchError(std::string(where) + ": operands use different alphabets");
}

LetterSet LetterSet::none(std::size_t universe) { return LetterSet(universe); }

LetterSet LetterSet::all(std::size_t universe) {
  LetterSet s(universe);
  for (std::size_t w = 0; w < s.bits_.size(); ++w)
    s.bits_[w] = ~std::uint64_t{0};
  if (universe & 63)
    s.bits_.back() &= (std::uint64_t{1} << (universe & 63)) - 1;
  return s;
}

LetterSet LetterSet::single(std::size_t universe, Letter a) {
  LetterSet s(universe);
  s.insert(a);
  return s;
}

bool LetterSet::any() const {
  for (auto w : bits_)
    if (w)
      return true;
  return false;
}

std::size_t LetterSet::count() const {
  std::size_t n = 0;
  for (auto w : bits_)
    n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

Letter LetterSet::first() const {
  for (std::size_t w = 0; w < bits_.size(); ++w)
    if (bits_[w])
      return static_cast<Letter>((w << 6) + __builtin_ctzll(bits_[w]));
  throw Error("LetterSet::first on empty set");
}

LetterSet LetterSet::operator&(const LetterSet& o) const {
  LetterSet r(universe_);
  for (std::size_t w = 0; w < bits_.size(); ++w)
    r.bits_[w] = bits_[w] & o.bits_[w];
  return r;
}

LetterSet LetterSet::operator|(const LetterSet& o) const {
  LetterSet r(universe_);
  for (std::size_t w = 0; w < bits_.size(); ++w)
    r.bits_[w] = bits_[w] | o.bits_[w];
  return r;
}

std::size_t LetterSet::hash_value() const {
  std::size_t h = universe_;
  for (auto w : bits_)
    h = h * 1099511628211ull ^ w;
  return h;
}

} // namespace redukt
