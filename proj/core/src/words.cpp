#include "redukt/words.hpp"

#include <algorithm>
#include <numeric>

namespace redukt {

namespace {

// Smallest d dividing n such that v is (v[0..d))^(n/d).
std::size_t primitive_root_length(const std::vector<Letter>& v) {
  std::size_t n = v.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0)
      continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i)
      ok = v[i] == v[i - d];
    if (ok)
      return d;
  }
  return n;
}

std::vector<RleBlock> group_letters(const std::vector<Letter>& xs) {
  std::vector<RleBlock> blocks;
  for (Letter a : xs) {
    if (!blocks.empty() && blocks.back().letter == a)
      ++blocks.back().count;
    else
      blocks.push_back({a, 1});
  }
  return blocks;
}

std::vector<Letter> expand_blocks(const std::vector<RleBlock>& blocks) {
  std::vector<Letter> xs;
  for (const auto& b : blocks)
    xs.insert(xs.end(), b.count, b.letter);
  return xs;
}

} // namespace

CanonicalWord::CanonicalWord(AlphabetPtr alphabet, std::vector<Letter> prefix,
                             std::vector<Letter> cycle)
    : alphabet_(std::move(alphabet)), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (!alphabet_)
    throw InvalidWordError("word without an alphabet");
  if (cycle_.empty())
    throw InvalidWordError("lasso cycle must be nonempty");
  for (Letter a : prefix_)
    if (a >= alphabet_->size())
      throw InvalidWordError("prefix letter out of alphabet range");
  for (Letter a : cycle_)
    if (a >= alphabet_->size())
      throw InvalidWordError("cycle letter out of alphabet range");

  // Primitive root of the cycle.
  std::size_t d = primitive_root_length(cycle_);
  cycle_.resize(d);

  // Minimal prefix: while the prefix ends with the cycle's last letter,
  // rotate the cycle right and drop that prefix letter. Rotations keep
  // the cycle primitive.
  while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    prefix_.pop_back();
  }
}

std::string CanonicalWord::str() const {
  std::string s;
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i)
      s += '.';
    s += alphabet_->name(prefix_[i]);
  }
  s += " | (";
  for (std::size_t i = 0; i < cycle_.size(); ++i) {
    if (i)
      s += '.';
    s += alphabet_->name(cycle_[i]);
  }
  s += ')';
  return s;
}

bool CanonicalWord::operator==(const CanonicalWord& o) const {
  return prefix_ == o.prefix_ && cycle_ == o.cycle_ &&
         (alphabet_ == o.alphabet_ || *alphabet_ == *o.alphabet_);
}

bool CanonicalWord::operator<(const CanonicalWord& o) const {
  if (prefix_ != o.prefix_)
    return prefix_ < o.prefix_;
  return cycle_ < o.cycle_;
}

RleView rle_view(const CanonicalWord& w) {
  RleView view;
  const auto& u = w.prefix();
  const auto& v = w.cycle();

  if (v.size() == 1) {
    view.prefix = group_letters(u);
    view.terminal = v[0];
    return view;
  }

  // The cycle alternates forever. Pick a cut position s >= |u| that starts
  // a block of the infinite word and is stable under shifting by |v|, then
  // read one cycle's worth of blocks from there.
  auto letter_at = [&](std::size_t pos) {
    return pos < u.size() ? u[pos] : v[(pos - u.size()) % v.size()];
  };

  std::size_t s;
  if ((u.empty() || u.back() != v.front()) && v.back() != v.front()) {
    s = u.size();
  } else {
    // First boundary whose two letters both lie in the periodic region;
    // such a boundary exists within one period because a primitive cycle
    // of length >= 2 changes letters.
    s = u.size() + 1;
    while (letter_at(s - 1) == letter_at(s))
      ++s;
  }

  std::vector<Letter> head(s), period(v.size());
  for (std::size_t i = 0; i < s; ++i)
    head[i] = letter_at(i);
  for (std::size_t i = 0; i < v.size(); ++i)
    period[i] = letter_at(s + i);

  view.prefix = group_letters(head);
  view.cycle = group_letters(period);
  return view;
}

namespace {

// Block at index i of the infinite block sequence.
const RleBlock& block_at(const RleView& r, std::size_t i) {
  if (i < r.prefix.size())
    return r.prefix[i];
  return r.cycle[(i - r.prefix.size()) % r.cycle.size()];
}

} // namespace

bool shorter_than(const CanonicalWord& w1, const CanonicalWord& w2) {
  require_same_alphabet(w1.alphabet(), w2.alphabet(), "shorter_than");

  RleView r1 = rle_view(w1);
  RleView r2 = rle_view(w2);

  if (r1.terminal.has_value() != r2.terminal.has_value())
    return false; // infinite-stutter words never compare with alternating ones

  if (r1.terminal) {
    if (*r1.terminal != *r2.terminal || r1.prefix.size() != r2.prefix.size())
      return false;
    for (std::size_t i = 0; i < r1.prefix.size(); ++i) {
      if (r1.prefix[i].letter != r2.prefix[i].letter || r1.prefix[i].count > r2.prefix[i].count)
        return false;
    }
    return true;
  }

  // Both block sequences are ultimately periodic; comparing the first
  // P + lcm(|c1|,|c2|) blocks decides skeleton equality and the pointwise
  // exponent test for the whole infinite sequence.
  std::size_t pre = std::max(r1.prefix.size(), r2.prefix.size());
  std::size_t period = std::lcm(r1.cycle.size(), r2.cycle.size());
  for (std::size_t i = 0; i < pre + period; ++i) {
    const RleBlock& b1 = block_at(r1, i);
    const RleBlock& b2 = block_at(r2, i);
    if (b1.letter != b2.letter || b1.count > b2.count)
      return false;
  }
  return true;
}

CanonicalWord shortest_representative(const CanonicalWord& w) {
  RleView r = rle_view(w);
  std::vector<Letter> prefix;
  for (const auto& b : r.prefix)
    prefix.push_back(b.letter);
  std::vector<Letter> cycle;
  if (r.terminal) {
    cycle.push_back(*r.terminal);
  } else {
    for (const auto& b : r.cycle)
      cycle.push_back(b.letter);
  }
  return CanonicalWord(w.alphabet(), std::move(prefix), std::move(cycle));
}

bool stutter_equivalent(const CanonicalWord& w1, const CanonicalWord& w2) {
  require_same_alphabet(w1.alphabet(), w2.alphabet(), "stutter_equivalent");
  return shortest_representative(w1) == shortest_representative(w2);
}

namespace {

// All ways to add deltas to `blocks` with every delta an integer in
// [lo_i, hi_i] and 1 <= total <= budget, where lo_i = -(count_i - 1) for
// shrinking and 0 for growing. `emit` receives the modified blocks.
template <class Emit>
void enumerate_deltas(const std::vector<RleBlock>& blocks, bool shrink, unsigned budget,
                      Emit&& emit) {
  std::vector<RleBlock> work = blocks;
  unsigned spent = 0;
  // Depth-first over block indices.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == blocks.size()) {
      if (spent >= 1)
        emit(work);
      return;
    }
    unsigned room = budget - spent;
    unsigned max_change = shrink ? std::min<unsigned>(room, blocks[i].count - 1) : room;
    for (unsigned d = 0; d <= max_change; ++d) {
      work[i].count = shrink ? blocks[i].count - d : blocks[i].count + d;
      spent += d;
      self(self, i + 1);
      spent -= d;
    }
    work[i].count = blocks[i].count;
  };
  rec(rec, 0);
}

} // namespace

std::set<CanonicalWord> enumerate_neighbors(const CanonicalWord& w, NeighborDirection direction,
                                            unsigned budget) {
  std::set<CanonicalWord> out;

  if (direction == NeighborDirection::Shorter) {
    RleView r = rle_view(w);
    std::vector<Letter> cycle =
        r.terminal ? std::vector<Letter>{*r.terminal} : expand_blocks(r.cycle);
    enumerate_deltas(r.prefix, /*shrink=*/true, budget, [&](const std::vector<RleBlock>& blocks) {
      out.insert(CanonicalWord(w.alphabet(), expand_blocks(blocks), cycle));
    });
    return out;
  }

  // Longer: spend part of the budget unrolling cycle copies into the
  // prefix so that stutter inside the periodic part is reachable, then
  // grow run-length prefix exponents with the remainder.
  for (unsigned copies = 0; copies <= budget; ++copies) {
    std::vector<Letter> raw_prefix = w.prefix();
    for (unsigned c = 0; c < copies; ++c)
      raw_prefix.insert(raw_prefix.end(), w.cycle().begin(), w.cycle().end());
    std::vector<RleBlock> blocks = group_letters(raw_prefix);
    enumerate_deltas(blocks, /*shrink=*/false, budget - copies,
                     [&](const std::vector<RleBlock>& grown) {
                       CanonicalWord cand(w.alphabet(), expand_blocks(grown), w.cycle());
                       if (cand != w)
                         out.insert(std::move(cand));
                     });
  }
  return out;
}

} // namespace redukt
