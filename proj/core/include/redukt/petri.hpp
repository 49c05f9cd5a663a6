#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redukt/limits.hpp"
#include "redukt/tgba.hpp"

namespace redukt {

/// Tokens per place, indexed like PetriNet::places.
using Marking = std::vector<std::uint32_t>;

struct Arc {
  std::uint32_t place;
  std::uint32_t weight; // >= 1

  bool operator==(const Arc& o) const { return place == o.place && weight == o.weight; }
};

struct Transition {
  std::string name;
  std::vector<Arc> pre;  // sorted by place, one arc per place
  std::vector<Arc> post; // sorted by place, one arc per place
};

/// Weighted place/transition net. Plain data; validate() enforces the
/// structural invariants after manual construction.
struct PetriNet {
  std::string name = "net";
  std::vector<std::string> places;
  Marking initial; // same length as places
  std::vector<Transition> transitions;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t place_index(const std::string& place) const;

  /// Throws Error on duplicate names, zero weights, unsorted or
  /// out-of-range arcs, or a marking length mismatch.
  void validate() const;
};

enum class Cmp { Lt, Le, Eq, Ge, Gt };

struct ApTerm {
  long long coeff;
  std::string place; // by name: stays valid across reductions
};

/// An atomic proposition over markings: a linear token expression
/// compared against a constant. Places are referenced by name so one
/// definition applies to a net and to its reductions alike (reductions
/// only ever delete unobserved places).
struct AtomicPropDef {
  std::string name;
  std::vector<ApTerm> terms;
  Cmp cmp = Cmp::Ge;
  long long bound = 0;

  /// Evaluates on a marking of `net`; throws Error on an unknown place.
  bool holds(const PetriNet& net, const Marking& m) const;
};

struct Model {
  PetriNet net;
  std::vector<AtomicPropDef> aps;
};

/// Parses the line-oriented .rnet format:
///   net <name>
///   pl <place> <initialTokens>
///   tr <name> [<place>[*w]]... -> [<place>[*w]]...
///   ap <name> = <linexpr> <op> <int>
/// where linexpr is tok(P) terms with optional integer coefficients
/// joined by + or -, and <op> is one of < <= = >= >. '#' starts a
/// comment. Errors carry the 1-based line number.
Model parse_model(std::string_view text);

/// Canonical .rnet rendering; parse_model(to_rnet(m)) reproduces m.
std::string to_rnet(const Model& m);

/// Enabled transitions and the markings they lead to, in transition
/// index order. t is enabled iff m >= pre(t) pointwise.
std::vector<std::pair<std::uint32_t, Marking>> successors(const PetriNet& net, const Marking& m);

/// True iff firing the transition cannot change any proposition: its net
/// effect is zero on every place some AtomicPropDef mentions. Syntactic
/// and therefore conservative.
bool is_invisible(const PetriNet& net, const std::vector<AtomicPropDef>& aps,
                  std::uint32_t transition);

/// Reachable state graph. States are markings in BFS discovery order;
/// deadlock markings carry a self-loop so every run is infinite. The
/// alphabet is the powerset of the proposition names in definition order,
/// a state's letter being the bitmask of propositions it satisfies.
struct KripkeStructure {
  AlphabetPtr alphabet;
  std::vector<Marking> states;
  std::vector<Letter> labels;
  std::vector<std::vector<std::uint32_t>> succ; // sorted, deduplicated
  std::vector<std::string> names;               // marking rendering per state
  std::uint32_t initial = 0;
};

/// BFS construction of the reachable Kripke structure. Throws
/// ResourceLimitError when more than state_limit markings are reached
/// (nets may be unbounded); never truncates silently.
KripkeStructure build_kripke(const PetriNet& net, const std::vector<AtomicPropDef>& aps,
                             std::size_t state_limit, const CancelToken& token = {});

/// The KS as a single-mark TGBA: each transition (s,s') becomes an edge
/// labeled with the exact valuation of s, so the automaton accepts
/// exactly the runs of the KS.
Tgba kripke_to_tgba(const KripkeStructure& ks);

/// Graphviz rendering with markings and valuations on the nodes.
std::string to_dot(const KripkeStructure& ks);

struct ReductionEvent {
  std::string rule;  // "post-agglomeration" or "pre-agglomeration"
  std::string place; // the fused-away place
  std::vector<std::string> removed;
  std::vector<std::string> added;
};

struct ReductionReport {
  std::vector<ReductionEvent> events;
  std::size_t places_before = 0;
  std::size_t transitions_before = 0;
  std::size_t places_after = 0;
  std::size_t transitions_after = 0;
  bool capped = false;

  std::string str() const;
};

/// Post agglomeration: a place p qualifies when p is initially unmarked,
/// every arc touching p has weight 1, its consumers F are nonempty with p
/// as their sole input and all invisible, its producers H are nonempty,
/// and H and F are disjoint. Each such p is replaced by the fused
/// transitions hf (pre = pre(h), post = post(h) without p, plus post(f))
/// for (h,f) in H x F; p, H and F disappear. Applied one place at a time
/// in place-name order until no place qualifies or the cap is hit.
std::pair<PetriNet, ReductionReport> post_agglomerate(const PetriNet& net,
                                                      const std::vector<AtomicPropDef>& aps,
                                                      std::size_t max_applications = 4096);

/// Pre agglomeration: a place p qualifies when p is initially unmarked,
/// every arc touching p has weight 1, its sole producer h is invisible
/// with post(h) exactly {p} and a single weight-1 input place q that no
/// other transition consumes, and the consumers F of p are nonempty and
/// do not include h. Each f in F is replaced by hf (pre = pre(h) plus
/// pre(f) without p, post = post(f)); p, h and F disappear. Same
/// iteration order and cap as post_agglomerate.
std::pair<PetriNet, ReductionReport> pre_agglomerate(const PetriNet& net,
                                                     const std::vector<AtomicPropDef>& aps,
                                                     std::size_t max_applications = 4096);

/// Alternates post and pre agglomeration to a global fixpoint (or the
/// cap). The report concatenates the individual rule applications.
std::pair<PetriNet, ReductionReport> reduce(const PetriNet& net,
                                            const std::vector<AtomicPropDef>& aps,
                                            std::size_t max_applications = 4096);

} // namespace redukt
