#pragma once

#include <random>
#include <vector>

#include <redukt/ltl.hpp>
#include <redukt/words.hpp>

namespace redukt::testing {

/// Reference LTL evaluation used to cross-check eval_on_word. Works by
/// direct quantifier semantics: Until/Release scan the forward orbit of
/// a position through the lasso until the orbit closes. No fixpoint
/// tabulation, so the two evaluators share no machinery.
bool oracle_eval(const FormulaPtr& f, const CanonicalWord& w);

/// Uniform-ish random lasso word; canonicalization may shrink it.
CanonicalWord random_word(std::mt19937& rng, const AlphabetPtr& alphabet, std::size_t max_prefix,
                          std::size_t max_cycle);

/// Random formula tree over the given propositions. Factories may fold
/// constants, so the result can be shallower than `depth`.
FormulaPtr random_formula(std::mt19937& rng, const std::vector<std::string>& aps, unsigned depth);

/// A word comparable with w from above: exponents of random run-length
/// blocks get increased by up to `extra` in total.
CanonicalWord pump(std::mt19937& rng, const CanonicalWord& w, unsigned extra);

/// Every canonical lasso word with at most max_positions positions.
std::vector<CanonicalWord> all_lasso_words(const AlphabetPtr& alphabet,
                                           std::size_t max_positions);

} // namespace redukt::testing
