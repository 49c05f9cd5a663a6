#pragma once

#include "redukt/ltl.hpp"
#include "redukt/tgba.hpp"

namespace redukt {

/// Tableau translation of an LTL formula into a TGBA over `alphabet`,
/// which must be a powerset alphabet whose propositions cover the
/// formula's. States are sets of obligations; expanding a state yields
/// the letter constraints, postponed promises and next-step obligations
/// of every consistent decomposition. One acceptance mark per
/// Until/Finally subformula; an edge carries mark i exactly when that
/// subformula is not postponed across it, so accepting runs fulfil
/// every promise infinitely often.
Tgba translate(const FormulaPtr& f, const AlphabetPtr& alphabet,
               const Limits& limits = {}, const CancelToken& token = {});

} // namespace redukt
