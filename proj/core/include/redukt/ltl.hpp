#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redukt/alphabet.hpp"
#include "redukt/words.hpp"

namespace redukt {

enum class FormulaKind {
  True,
  False,
  Ap,
  Not,
  And,
  Or,
  Implies,
  Next,
  Finally,
  Globally,
  Until,
  Release
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula tree. Built through the static factories, which
/// perform constant folding and double-negation removal; no deeper
/// rewriting happens implicitly.
class Formula {
public:
  static FormulaPtr tt();
  static FormulaPtr ff();
  static FormulaPtr ap(std::string name);
  static FormulaPtr not_(FormulaPtr f);
  static FormulaPtr and_(FormulaPtr l, FormulaPtr r);
  static FormulaPtr or_(FormulaPtr l, FormulaPtr r);
  static FormulaPtr implies(FormulaPtr l, FormulaPtr r);
  static FormulaPtr next(FormulaPtr f);
  static FormulaPtr finally_(FormulaPtr f);
  static FormulaPtr globally(FormulaPtr f);
  static FormulaPtr until(FormulaPtr l, FormulaPtr r);
  static FormulaPtr release(FormulaPtr l, FormulaPtr r);

  FormulaKind kind() const { return kind_; }
  const std::string& ap_name() const { return ap_name_; }
  /// Left child (or the only child of a unary operator).
  const FormulaPtr& lhs() const { return lhs_; }
  const FormulaPtr& rhs() const { return rhs_; }

  /// Infix rendering with minimal parentheses.
  std::string str() const;

private:
  Formula(FormulaKind kind, std::string ap, FormulaPtr l, FormulaPtr r)
      : kind_(kind), ap_name_(std::move(ap)), lhs_(std::move(l)), rhs_(std::move(r)) {}

  static FormulaPtr make(FormulaKind kind, std::string ap, FormulaPtr l, FormulaPtr r);

  FormulaKind kind_;
  std::string ap_name_;
  FormulaPtr lhs_;
  FormulaPtr rhs_;
};

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

/// Ordered set of atomic propositions. Fixes the letter encoding: the
/// induced alphabet is 2^AP with proposition i on bit i. Names must be
/// C identifiers and must avoid the reserved words of the formula
/// grammar (true, false, X, F, G, U, R).
class ApSet {
public:
  explicit ApSet(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  std::optional<unsigned> index_of(const std::string& name) const;
  const AlphabetPtr& alphabet() const { return alphabet_; }

private:
  std::vector<std::string> names_;
  AlphabetPtr alphabet_;
};

/// True iff `name` can serve as an atomic proposition: a C identifier
/// that is none of the grammar keywords.
bool is_valid_ap_name(const std::string& name);

/// Parses the formula grammar:
///   unary ! X F G bind tightest, then U R (right associative), then &,
///   then |, then -> (right associative), then <->.
/// "a <-> b" is sugar for "(a -> b) & (b -> a)". Atomic propositions must
/// be members of `aps`. Throws ParseError with a character position.
FormulaPtr parse_formula(std::string_view text, const ApSet& aps);

/// Identifiers appearing in a formula text, in order of first occurrence,
/// grammar keywords excluded. Convenience for building an ApSet when no
/// model fixes one.
std::vector<std::string> collect_ap_names(std::string_view text);

/// Negation normal form of the formula (negations pushed onto atomic
/// propositions, -> and <-> expanded).
FormulaPtr to_nnf(const FormulaPtr& f);

/// Syntactic complement: NNF of !f. Models exactly the complement
/// language; no automaton complementation is involved anywhere.
FormulaPtr negate(const FormulaPtr& f);

/// True iff no Next operator occurs in f.
bool is_x_free(const FormulaPtr& f);

/// Evaluates f on an ultimately periodic word over the powerset alphabet
/// of f's propositions. Subformulas are tabulated over the lasso
/// positions; least/greatest fixpoints converge after evaluating the
/// cycle twice. Throws AlphabetMismatchError if the word's alphabet is
/// not a powerset alphabet covering every proposition of f.
bool eval_on_word(const FormulaPtr& f, const CanonicalWord& w);

} // namespace redukt
