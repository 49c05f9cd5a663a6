#include "redukt/ltl.hpp"

#include <algorithm>
#include <map>

namespace redukt {

namespace {

bool is_const(const FormulaPtr& f, FormulaKind k) { return f->kind() == k; }

} // namespace

FormulaPtr Formula::make(FormulaKind kind, std::string ap, FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula{kind, std::move(ap), std::move(l), std::move(r)});
}

FormulaPtr Formula::tt() {
  static FormulaPtr f = make(FormulaKind::True, {}, nullptr, nullptr);
  return f;
}

FormulaPtr Formula::ff() {
  static FormulaPtr f = make(FormulaKind::False, {}, nullptr, nullptr);
  return f;
}

FormulaPtr Formula::ap(std::string name) {
  return make(FormulaKind::Ap, std::move(name), nullptr, nullptr);
}

FormulaPtr Formula::not_(FormulaPtr f) {
  if (is_const(f, FormulaKind::True))
    return ff();
  if (is_const(f, FormulaKind::False))
    return tt();
  if (f->kind() == FormulaKind::Not)
    return f->lhs();
  return make(FormulaKind::Not, {}, std::move(f), nullptr);
}

FormulaPtr Formula::and_(FormulaPtr l, FormulaPtr r) {
  if (is_const(l, FormulaKind::False) || is_const(r, FormulaKind::False))
    return ff();
  if (is_const(l, FormulaKind::True))
    return r;
  if (is_const(r, FormulaKind::True))
    return l;
  return make(FormulaKind::And, {}, std::move(l), std::move(r));
}

FormulaPtr Formula::or_(FormulaPtr l, FormulaPtr r) {
  if (is_const(l, FormulaKind::True) || is_const(r, FormulaKind::True))
    return tt();
  if (is_const(l, FormulaKind::False))
    return r;
  if (is_const(r, FormulaKind::False))
    return l;
  return make(FormulaKind::Or, {}, std::move(l), std::move(r));
}

FormulaPtr Formula::implies(FormulaPtr l, FormulaPtr r) {
  if (is_const(l, FormulaKind::False) || is_const(r, FormulaKind::True))
    return tt();
  if (is_const(l, FormulaKind::True))
    return r;
  return make(FormulaKind::Implies, {}, std::move(l), std::move(r));
}

FormulaPtr Formula::next(FormulaPtr f) { return make(FormulaKind::Next, {}, std::move(f), nullptr); }

FormulaPtr Formula::finally_(FormulaPtr f) {
  if (is_const(f, FormulaKind::True) || is_const(f, FormulaKind::False))
    return f;
  return make(FormulaKind::Finally, {}, std::move(f), nullptr);
}

FormulaPtr Formula::globally(FormulaPtr f) {
  if (is_const(f, FormulaKind::True) || is_const(f, FormulaKind::False))
    return f;
  return make(FormulaKind::Globally, {}, std::move(f), nullptr);
}

FormulaPtr Formula::until(FormulaPtr l, FormulaPtr r) {
  if (is_const(r, FormulaKind::True) || is_const(r, FormulaKind::False))
    return r;
  if (is_const(l, FormulaKind::False))
    return r;
  if (is_const(l, FormulaKind::True))
    return finally_(std::move(r));
  return make(FormulaKind::Until, {}, std::move(l), std::move(r));
}

FormulaPtr Formula::release(FormulaPtr l, FormulaPtr r) {
  if (is_const(r, FormulaKind::True) || is_const(r, FormulaKind::False))
    return r;
  if (is_const(l, FormulaKind::True))
    return r;
  if (is_const(l, FormulaKind::False))
    return globally(std::move(r));
  return make(FormulaKind::Release, {}, std::move(l), std::move(r));
}

namespace {

int precedence(FormulaKind k) {
  switch (k) {
  case FormulaKind::Implies:
    return 1;
  case FormulaKind::Or:
    return 2;
  case FormulaKind::And:
    return 3;
  case FormulaKind::Until:
  case FormulaKind::Release:
    return 4;
  default:
    return 5; // atoms and unary operators never need parentheses
  }
}

void print(const Formula& f, std::string& out, int parent_prec) {
  int prec = precedence(f.kind());
  bool paren = prec < parent_prec;
  if (paren)
    out += '(';
  switch (f.kind()) {
  case FormulaKind::True:
    out += "true";
    break;
  case FormulaKind::False:
    out += "false";
    break;
  case FormulaKind::Ap:
    out += f.ap_name();
    break;
  case FormulaKind::Not:
    out += '!';
    print(*f.lhs(), out, 5);
    break;
  case FormulaKind::Next:
    out += "X ";
    print(*f.lhs(), out, 5);
    break;
  case FormulaKind::Finally:
    out += "F ";
    print(*f.lhs(), out, 5);
    break;
  case FormulaKind::Globally:
    out += "G ";
    print(*f.lhs(), out, 5);
    break;
  case FormulaKind::And:
    print(*f.lhs(), out, 3);
    out += " & ";
    print(*f.rhs(), out, 3);
    break;
  case FormulaKind::Or:
    print(*f.lhs(), out, 2);
    out += " | ";
    print(*f.rhs(), out, 2);
    break;
  case FormulaKind::Implies:
    print(*f.lhs(), out, 2); // operands one level tighter: -> is right associative
    out += " -> ";
    print(*f.rhs(), out, 1);
    break;
  case FormulaKind::Until:
    print(*f.lhs(), out, 5);
    out += " U ";
    print(*f.rhs(), out, 4);
    break;
  case FormulaKind::Release:
    print(*f.lhs(), out, 5);
    out += " R ";
    print(*f.rhs(), out, 4);
    break;
  }
  if (paren)
    out += ')';
}

} // namespace

std::string Formula::str() const {
  std::string out;
  print(*this, out, 0);
  return out;
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind() != b->kind() || a->ap_name() != b->ap_name())
    return false;
  if (bool(a->lhs()) != bool(b->lhs()) || bool(a->rhs()) != bool(b->rhs()))
    return false;
  if (a->lhs() && !structurally_equal(a->lhs(), b->lhs()))
    return false;
  if (a->rhs() && !structurally_equal(a->rhs(), b->rhs()))
    return false;
  return true;
}

namespace {

bool is_c_identifier(const std::string& s) {
  if (s.empty())
    return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

bool is_reserved_word(const std::string& s) {
  return s == "true" || s == "false" || s == "X" || s == "F" || s == "G" || s == "U" || s == "R";
}

} // namespace

bool is_valid_ap_name(const std::string& name) {
  return is_c_identifier(name) && !is_reserved_word(name);
}

ApSet::ApSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (const auto& n : names_) {
    if (!is_c_identifier(n))
      throw Error("atomic proposition '" + n + "' is not a C identifier");
    if (is_reserved_word(n))
      throw Error("atomic proposition '" + n + "' collides with a formula keyword");
  }
  alphabet_ = Alphabet::powerset(names_); // also rejects duplicates
}

std::optional<unsigned> ApSet::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    return std::nullopt;
  return static_cast<unsigned>(it - names_.begin());
}

FormulaPtr to_nnf(const FormulaPtr& f) {
  auto rec = [](auto&& self, const FormulaPtr& g, bool neg) -> FormulaPtr {
    switch (g->kind()) {
    case FormulaKind::True:
      return neg ? Formula::ff() : Formula::tt();
    case FormulaKind::False:
      return neg ? Formula::tt() : Formula::ff();
    case FormulaKind::Ap:
      return neg ? Formula::not_(g) : g;
    case FormulaKind::Not:
      return self(self, g->lhs(), !neg);
    case FormulaKind::And: {
      FormulaPtr l = self(self, g->lhs(), neg);
      FormulaPtr r = self(self, g->rhs(), neg);
      return neg ? Formula::or_(l, r) : Formula::and_(l, r);
    }
    case FormulaKind::Or: {
      FormulaPtr l = self(self, g->lhs(), neg);
      FormulaPtr r = self(self, g->rhs(), neg);
      return neg ? Formula::and_(l, r) : Formula::or_(l, r);
    }
    case FormulaKind::Implies: {
      // a -> b == !a | b
      FormulaPtr l = self(self, g->lhs(), !neg);
      FormulaPtr r = self(self, g->rhs(), neg);
      return neg ? Formula::and_(l, r) : Formula::or_(l, r);
    }
    case FormulaKind::Next:
      return Formula::next(self(self, g->lhs(), neg));
    case FormulaKind::Finally:
      return neg ? Formula::globally(self(self, g->lhs(), true))
                 : Formula::finally_(self(self, g->lhs(), false));
    case FormulaKind::Globally:
      return neg ? Formula::finally_(self(self, g->lhs(), true))
                 : Formula::globally(self(self, g->lhs(), false));
    case FormulaKind::Until: {
      FormulaPtr l = self(self, g->lhs(), neg);
      FormulaPtr r = self(self, g->rhs(), neg);
      return neg ? Formula::release(l, r) : Formula::until(l, r);
    }
    case FormulaKind::Release: {
      FormulaPtr l = self(self, g->lhs(), neg);
      FormulaPtr r = self(self, g->rhs(), neg);
      return neg ? Formula::until(l, r) : Formula::release(l, r);
    }
    }
    throw InternalError("unhandled formula kind in to_nnf");
  };
  return rec(rec, f, false);
}

FormulaPtr negate(const FormulaPtr& f) { return to_nnf(Formula::not_(f)); }

bool is_x_free(const FormulaPtr& f) {
  if (f->kind() == FormulaKind::Next)
    return false;
  if (f->lhs() && !is_x_free(f->lhs()))
    return false;
  if (f->rhs() && !is_x_free(f->rhs()))
    return false;
  return true;
}

namespace {

// Post-order list of distinct subformulas (pointer identity within one
// tree is enough: shared subtrees evaluate once).
void post_order(const FormulaPtr& f, std::vector<const Formula*>& order,
                std::map<const Formula*, std::size_t>& index) {
  if (index.count(f.get()))
    return;
  if (f->lhs())
    post_order(f->lhs(), order, index);
  if (f->rhs())
    post_order(f->rhs(), order, index);
  index[f.get()] = order.size();
  order.push_back(f.get());
}

} // namespace

bool eval_on_word(const FormulaPtr& f, const CanonicalWord& w) {
  const AlphabetPtr& sigma = w.alphabet();
  if (!sigma->is_powerset())
    throw AlphabetMismatchError("eval_on_word: word alphabet is not a powerset alphabet");

  std::vector<const Formula*> order;
  std::map<const Formula*, std::size_t> index;
  post_order(f, order, index);

  const std::size_t n = w.positions();
  const std::size_t wrap = w.prefix().size(); // successor of the last position

  // Bit of the proposition of each Ap node, resolved once.
  std::map<const Formula*, std::size_t> ap_bit;
  for (const Formula* g : order) {
    if (g->kind() == FormulaKind::Ap) {
      std::size_t bit = sigma->ap_index(g->ap_name());
      if (bit == Alphabet::npos)
        throw AlphabetMismatchError("eval_on_word: proposition '" + g->ap_name() +
                                    "' is not part of the word's alphabet");
      ap_bit[g] = bit;
    }
  }

  std::vector<std::vector<char>> val(order.size(), std::vector<char>(n, 0));

  for (std::size_t gi = 0; gi < order.size(); ++gi) {
    const Formula* g = order[gi];
    auto sub = [&](const FormulaPtr& child) -> const std::vector<char>& {
      return val[index.at(child.get())];
    };
    std::vector<char>& row = val[gi];

    switch (g->kind()) {
    case FormulaKind::True:
      std::fill(row.begin(), row.end(), 1);
      break;
    case FormulaKind::False:
      break;
    case FormulaKind::Ap: {
      std::size_t bit = ap_bit.at(g);
      for (std::size_t i = 0; i < n; ++i)
        row[i] = (w.at(i) >> bit) & 1u;
      break;
    }
    case FormulaKind::Not:
      for (std::size_t i = 0; i < n; ++i)
        row[i] = !sub(g->lhs())[i];
      break;
    case FormulaKind::And:
      for (std::size_t i = 0; i < n; ++i)
        row[i] = sub(g->lhs())[i] && sub(g->rhs())[i];
      break;
    case FormulaKind::Or:
      for (std::size_t i = 0; i < n; ++i)
        row[i] = sub(g->lhs())[i] || sub(g->rhs())[i];
      break;
    case FormulaKind::Implies:
      for (std::size_t i = 0; i < n; ++i)
        row[i] = !sub(g->lhs())[i] || sub(g->rhs())[i];
      break;
    case FormulaKind::Next:
      for (std::size_t i = 0; i < n; ++i)
        row[i] = sub(g->lhs())[i + 1 < n ? i + 1 : wrap];
      break;
    case FormulaKind::Finally:
    case FormulaKind::Globally:
    case FormulaKind::Until:
    case FormulaKind::Release: {
      // Two backward sweeps. The first assumes the least (Until/Finally)
      // or greatest (Release/Globally) value at the wrap; the second
      // re-propagates with the first sweep's estimate. One extra cycle of
      // lookahead is exact on a lasso.
      bool lfp = g->kind() == FormulaKind::Finally || g->kind() == FormulaKind::Until;
      auto local = [&](std::size_t i, char nxt) -> char {
        switch (g->kind()) {
        case FormulaKind::Finally:
          return sub(g->lhs())[i] || nxt;
        case FormulaKind::Globally:
          return sub(g->lhs())[i] && nxt;
        case FormulaKind::Until:
          return sub(g->rhs())[i] || (sub(g->lhs())[i] && nxt);
        case FormulaKind::Release:
          return sub(g->rhs())[i] && (sub(g->lhs())[i] || nxt);
        default:
          return 0;
        }
      };
      std::vector<char> pass(n, 0);
      char init = lfp ? 0 : 1;
      for (std::size_t i = n; i-- > 0;)
        pass[i] = local(i, i + 1 < n ? pass[i + 1] : init);
      for (std::size_t i = n; i-- > 0;)
        row[i] = local(i, i + 1 < n ? row[i + 1] : pass[wrap]);
      break;
    }
    }
  }

  return val[index.at(f.get())][0] != 0;
}

} // namespace redukt
