#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redukt/ltl.hpp"
#include "redukt/petri.hpp"
#include "redukt/tgba.hpp"
#include "redukt/translate.hpp"

namespace redukt {

/// How a language reacts to stutter-length changes. Closed under taking
/// shorter words, longer words, either, or neither.
struct Sensitivity {
  bool shortening = false;
  bool lengthening = false;

  bool stutter_insensitive() const { return shortening && lengthening; }
  bool operator==(const Sensitivity& o) const {
    return shortening == o.shortening && lengthening == o.lengthening;
  }
};

struct Classification {
  Sensitivity of_formula;  // sensitivity of L(A_phi)
  Sensitivity of_negation; // sensitivity of L(A_not_phi)
};

/// Decides both sensitivities on the automaton level: the language of A
/// is shortening insensitive iff cl(A) adds no word of the complement,
/// i.e. L(cl(A) x A_neg) is empty, and dually with sl for lengthening.
/// The two results are cross-checked against the complement duality
/// (shortening of phi = lengthening of not phi); a violation throws
/// InternalError since it can only be a construction bug.
Classification classify(const FormulaPtr& f, const ApSet& aps, const Limits& limits = {},
                        const CancelToken& token = {});

enum class VerdictValue { True, False, Unknown };

const char* to_string(VerdictValue v);

struct VerdictStats {
  std::size_t original_places = 0;
  std::size_t original_transitions = 0;
  std::size_t reduced_places = 0;
  std::size_t reduced_transitions = 0;
  std::size_t ks_states = 0;
  std::size_t product_states = 0;
  std::int64_t wall_time_ms = 0;
  ReductionReport reduction;
  std::string note; // resource exhaustion, losing portfolio arm, ...
};

struct Verdict {
  std::string formula;
  std::string mode; // "semi", "full" or "portfolio"
  VerdictValue value = VerdictValue::Unknown;
  bool trusted = false;
  std::optional<LassoWitness> witness; // present iff value == False
  Classification classification;
  VerdictStats stats;
};

/// Model checks phi on the reduced net: reduce, build the Kripke
/// structure, intersect with A_not_phi, decide emptiness. An empty
/// product yields TRUE, trusted only when L(A_not_phi) is shortening
/// insensitive; a witness yields FALSE, trusted only when L(A_not_phi)
/// is lengthening insensitive. Resource caps yield UNKNOWN.
Verdict check_semi(const PetriNet& net, const std::vector<AtomicPropDef>& aps,
                   const FormulaPtr& f, std::size_t state_limit, const Limits& limits = {},
                   const CancelToken& token = {});

/// The same pipeline on the unreduced net. Definitive whenever it
/// finishes; serves as ground truth.
Verdict check_full(const PetriNet& net, const std::vector<AtomicPropDef>& aps,
                   const FormulaPtr& f, std::size_t state_limit, const Limits& limits = {},
                   const CancelToken& token = {});

/// Runs check_semi and check_full concurrently and returns the first
/// trusted verdict, cancelling the other arm. An untrusted semi result
/// is noted in the stats but never returned as final. UNKNOWN only when
/// no arm reaches a trusted verdict.
Verdict portfolio(const PetriNet& net, const std::vector<AtomicPropDef>& aps, const FormulaPtr& f,
                  std::size_t state_limit, const Limits& limits = {},
                  const CancelToken& token = {});

/// Outcome of the reduction legitimacy check: the reduced language must
/// consist of words each shorter than some original run (soundness) and
/// must shorten every original run (completeness).
struct LegitimacyReport {
  bool passed = true;
  bool truncated = false; // some enumeration hit the position budget
  std::size_t reduced_words = 0;
  std::size_t original_words = 0;
  std::vector<std::string> violations;

  std::string str() const;
};

/// Checks both directions on all lasso runs of up to `position_budget`
/// positions: (a) every reduced run has a longer-or-equal original run,
/// via emptiness of sl(word) x A_orig; (b) every original run has a
/// shorter-or-equal reduced run, via membership in sl(A_red).
LegitimacyReport verify_reduction(const PetriNet& orig, const PetriNet& red,
                                  const std::vector<AtomicPropDef>& aps, unsigned position_budget,
                                  std::size_t state_limit, const Limits& limits = {},
                                  const CancelToken& token = {});

/// Serializes a verdict to a stable JSON record:
/// {formula, sensitivityOfPhi, sensitivityOfNegPhi, mode, value, trusted,
///  witness?, stats{originalPlaces, reducedPlaces, originalTransitions,
///  reducedTransitions, ksStates, productStates, wallTimeMs}}.
/// Identical verdicts serialize identically apart from wallTimeMs.
std::string verdict_to_json(const Verdict& v, int indent = 2);

} // namespace redukt
