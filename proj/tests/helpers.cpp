#include "helpers.hpp"

#include <map>
#include <set>
#include <utility>

#include <redukt/errors.hpp>

namespace redukt::testing {
namespace {

// Positions of a lasso word normalized into [0, n+k).
struct View {
  const CanonicalWord& w;
  std::size_t n;
  std::size_t k;

  std::size_t norm(std::size_t p) const { return p < n ? p : n + (p - n) % k; }
  std::size_t next(std::size_t p) const { return norm(p + 1); }
};

// The forward orbit of p until it closes. Every position the suffix at p
// ever visits appears exactly once, so scanning the orbit decides any
// "exists a future position" question.
std::vector<std::size_t> orbit(const View& v, std::size_t p) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(v.n + v.k, false);
  for (std::size_t q = p; !seen[q]; q = v.next(q)) {
    seen[q] = true;
    out.push_back(q);
  }
  return out;
}

using Memo = std::map<std::pair<const Formula*, std::size_t>, bool>;

bool ev(const FormulaPtr& f, const View& v, std::size_t p, Memo& memo) {
  auto key = std::make_pair(f.get(), p);
  auto it = memo.find(key);
  if (it != memo.end())
    return it->second;

  bool r = false;
  switch (f->kind()) {
  case FormulaKind::True:
    r = true;
    break;
  case FormulaKind::False:
    r = false;
    break;
  case FormulaKind::Ap: {
    std::size_t bit = v.w.alphabet()->ap_index(f->ap_name());
    if (bit == Alphabet::npos)
      throw AlphabetMismatchError("oracle_eval: proposition '" + f->ap_name() +
                                  "' not in the word's alphabet");
    r = (v.w.at(p) >> bit) & 1u;
    break;
  }
  case FormulaKind::Not:
    r = !ev(f->lhs(), v, p, memo);
    break;
  case FormulaKind::And:
    r = ev(f->lhs(), v, p, memo) && ev(f->rhs(), v, p, memo);
    break;
  case FormulaKind::Or:
    r = ev(f->lhs(), v, p, memo) || ev(f->rhs(), v, p, memo);
    break;
  case FormulaKind::Implies:
    r = !ev(f->lhs(), v, p, memo) || ev(f->rhs(), v, p, memo);
    break;
  case FormulaKind::Next:
    r = ev(f->lhs(), v, v.next(p), memo);
    break;
  case FormulaKind::Finally:
    for (std::size_t q : orbit(v, p))
      if (ev(f->lhs(), v, q, memo)) {
        r = true;
        break;
      }
    break;
  case FormulaKind::Globally:
    r = true;
    for (std::size_t q : orbit(v, p))
      if (!ev(f->lhs(), v, q, memo)) {
        r = false;
        break;
      }
    break;
  case FormulaKind::Until:
    for (std::size_t q : orbit(v, p)) {
      if (ev(f->rhs(), v, q, memo)) {
        r = true;
        break;
      }
      if (!ev(f->lhs(), v, q, memo))
        break;
    }
    break;
  case FormulaKind::Release:
    r = true;
    for (std::size_t q : orbit(v, p)) {
      if (!ev(f->rhs(), v, q, memo)) {
        r = false;
        break;
      }
      if (ev(f->lhs(), v, q, memo))
        break;
    }
    break;
  }
  memo.emplace(key, r);
  return r;
}

std::vector<Letter> expand(const std::vector<RleBlock>& blocks) {
  std::vector<Letter> out;
  for (const auto& b : blocks)
    out.insert(out.end(), b.count, b.letter);
  return out;
}

} // namespace

bool oracle_eval(const FormulaPtr& f, const CanonicalWord& w) {
  if (!w.alphabet()->is_powerset())
    throw AlphabetMismatchError("oracle_eval: the word's alphabet is not a powerset alphabet");
  View v{w, w.prefix().size(), w.cycle().size()};
  Memo memo;
  return ev(f, v, 0, memo);
}

CanonicalWord random_word(std::mt19937& rng, const AlphabetPtr& alphabet, std::size_t max_prefix,
                          std::size_t max_cycle) {
  std::uniform_int_distribution<std::size_t> plen(0, max_prefix);
  std::uniform_int_distribution<std::size_t> clen(1, max_cycle);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(alphabet->size() - 1));
  std::vector<Letter> prefix(plen(rng));
  std::vector<Letter> cycle(clen(rng));
  for (auto& a : prefix)
    a = letter(rng);
  for (auto& a : cycle)
    a = letter(rng);
  return CanonicalWord(alphabet, std::move(prefix), std::move(cycle));
}

FormulaPtr random_formula(std::mt19937& rng, const std::vector<std::string>& aps, unsigned depth) {
  std::uniform_int_distribution<int> pct(0, 99);
  if (depth == 0 || pct(rng) < 20) {
    if (aps.empty() || pct(rng) < 10)
      return pct(rng) < 50 ? Formula::tt() : Formula::ff();
    std::uniform_int_distribution<std::size_t> pick(0, aps.size() - 1);
    return Formula::ap(aps[pick(rng)]);
  }
  std::uniform_int_distribution<int> op(0, 8);
  auto sub = [&] { return random_formula(rng, aps, depth - 1); };
  switch (op(rng)) {
  case 0:
    return Formula::not_(sub());
  case 1:
    return Formula::and_(sub(), sub());
  case 2:
    return Formula::or_(sub(), sub());
  case 3:
    return Formula::implies(sub(), sub());
  case 4:
    return Formula::next(sub());
  case 5:
    return Formula::finally_(sub());
  case 6:
    return Formula::globally(sub());
  case 7:
    return Formula::until(sub(), sub());
  default:
    return Formula::release(sub(), sub());
  }
}

CanonicalWord pump(std::mt19937& rng, const CanonicalWord& w, unsigned extra) {
  RleView rle = rle_view(w);
  std::size_t blocks = rle.prefix.size() + rle.cycle.size();
  if (blocks == 0)
    return w; // a pure infinite stutter has no finite block to grow
  std::uniform_int_distribution<std::size_t> pick(0, blocks - 1);
  for (unsigned i = 0; i < extra; ++i) {
    std::size_t b = pick(rng);
    if (b < rle.prefix.size())
      rle.prefix[b].count += 1;
    else
      rle.cycle[b - rle.prefix.size()].count += 1;
  }
  std::vector<Letter> cycle =
      rle.terminal ? std::vector<Letter>{*rle.terminal} : expand(rle.cycle);
  return CanonicalWord(w.alphabet(), expand(rle.prefix), std::move(cycle));
}

std::vector<CanonicalWord> all_lasso_words(const AlphabetPtr& alphabet,
                                           std::size_t max_positions) {
  std::set<CanonicalWord> out;
  Letter size = static_cast<Letter>(alphabet->size());
  for (std::size_t total = 1; total <= max_positions; ++total) {
    for (std::size_t cyc = 1; cyc <= total; ++cyc) {
      std::vector<Letter> letters(total, 0);
      for (;;) {
        std::vector<Letter> prefix(letters.begin(), letters.begin() + (total - cyc));
        std::vector<Letter> cycle(letters.begin() + (total - cyc), letters.end());
        out.emplace(alphabet, std::move(prefix), std::move(cycle));
        std::size_t i = 0;
        while (i < total && ++letters[i] == size)
          letters[i++] = 0;
        if (i == total)
          break;
      }
    }
  }
  return std::vector<CanonicalWord>(out.begin(), out.end());
}

} // namespace redukt::testing
