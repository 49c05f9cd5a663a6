#include "redukt/checker.hpp"

#include <chrono>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace redukt {

namespace {

std::vector<std::string> ap_names(const std::vector<AtomicPropDef>& aps) {
  std::vector<std::string> names;
  names.reserve(aps.size());
  for (const auto& d : aps)
    names.push_back(d.name);
  return names;
}

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

} // namespace

const char* to_string(VerdictValue v) {
  switch (v) {
  case VerdictValue::True:
    return "TRUE";
  case VerdictValue::False:
    return "FALSE";
  case VerdictValue::Unknown:
    return "UNKNOWN";
  }
  return "UNKNOWN";
}

Classification classify(const FormulaPtr& f, const ApSet& aps, const Limits& limits,
                        const CancelToken& token) {
  const AlphabetPtr& sigma = aps.alphabet();
  Tgba pos = translate(f, sigma, limits, token);
  Tgba neg = translate(negate(f), sigma, limits, token);

  // L(A) is closed under an operation iff growing A by it stays inside
  // L(A), i.e. adds nothing of the complement language.
  auto stays_inside = [&](const Tgba& grown, const Tgba& complement) {
    return is_empty(product(grown, complement, limits, token), false, token).empty;
  };

  Classification c;
  c.of_formula.shortening = stays_inside(cl(pos, limits, token), neg);
  c.of_formula.lengthening = stays_inside(sl(pos, limits, token), neg);
  c.of_negation.shortening = stays_inside(cl(neg, limits, token), pos);
  c.of_negation.lengthening = stays_inside(sl(neg, limits, token), pos);

  // Complement duality: deleting letters from a word of L(not phi) can
  // only fail to stay inside iff adding letters to a word of L(phi) can
  // reach it, so the four bits are pairwise tied. A violation means one
  // of the constructions is broken.
  if (c.of_formula.shortening != c.of_negation.lengthening ||
      c.of_formula.lengthening != c.of_negation.shortening)
    throw InternalError("sensitivity duality violated for " + f->str());
  return c;
}

namespace {

Verdict run_check(const PetriNet& net, const std::vector<AtomicPropDef>& aps, const FormulaPtr& f,
                  std::size_t state_limit, const Limits& limits, const CancelToken& token,
                  bool reduce_first, const char* mode) {
  Stopwatch clock;
  Verdict v;
  v.formula = f->str();
  v.mode = mode;
  v.stats.original_places = net.places.size();
  v.stats.original_transitions = net.transitions.size();
  v.stats.reduced_places = net.places.size();
  v.stats.reduced_transitions = net.transitions.size();
  try {
    ApSet apset(ap_names(aps));
    v.classification = classify(f, apset, limits, token);

    const PetriNet* target = &net;
    PetriNet reduced;
    if (reduce_first) {
      auto rr = reduce(net, aps);
      reduced = std::move(rr.first);
      v.stats.reduction = std::move(rr.second);
      v.stats.reduced_places = reduced.places.size();
      v.stats.reduced_transitions = reduced.transitions.size();
      target = &reduced;
    }

    KripkeStructure ks = build_kripke(*target, aps, state_limit, token);
    v.stats.ks_states = ks.states.size();

    Tgba complement = translate(negate(f), apset.alphabet(), limits, token);
    Tgba prod = product(complement, kripke_to_tgba(ks), limits, token);
    v.stats.product_states = prod.num_states();

    EmptinessResult e = is_empty(prod, /*want_witness=*/true, token);
    if (e.empty) {
      v.value = VerdictValue::True;
      // Empty product on the reduction only transfers when no run of the
      // complement language can be missed by shortening.
      v.trusted = reduce_first ? v.classification.of_negation.shortening : true;
    } else {
      v.value = VerdictValue::False;
      v.witness = std::move(e.witness);
      v.trusted = reduce_first ? v.classification.of_negation.lengthening : true;
    }
  } catch (const ResourceLimitError& ex) {
    v.value = VerdictValue::Unknown;
    v.trusted = false;
    v.witness.reset();
    v.stats.note = ex.what();
  } catch (const CancelledError& ex) {
    v.value = VerdictValue::Unknown;
    v.trusted = false;
    v.witness.reset();
    v.stats.note = ex.what();
  }
  v.stats.wall_time_ms = clock.ms();
  return v;
}

} // namespace

Verdict check_semi(const PetriNet& net, const std::vector<AtomicPropDef>& aps, const FormulaPtr& f,
                   std::size_t state_limit, const Limits& limits, const CancelToken& token) {
  return run_check(net, aps, f, state_limit, limits, token, /*reduce_first=*/true, "semi");
}

Verdict check_full(const PetriNet& net, const std::vector<AtomicPropDef>& aps, const FormulaPtr& f,
                   std::size_t state_limit, const Limits& limits, const CancelToken& token) {
  return run_check(net, aps, f, state_limit, limits, token, /*reduce_first=*/false, "full");
}

Verdict portfolio(const PetriNet& net, const std::vector<AtomicPropDef>& aps, const FormulaPtr& f,
                  std::size_t state_limit, const Limits& limits, const CancelToken& token) {
  Stopwatch clock;
  CancelToken semi_token = CancelToken::child_of(token);
  CancelToken full_token = CancelToken::child_of(token);

  std::mutex mu;
  std::condition_variable cv;
  std::optional<Verdict> semi_res, full_res;
  std::exception_ptr semi_err, full_err;

  auto arm = [&](bool is_semi) {
    Verdict r;
    std::exception_ptr err;
    try {
      r = is_semi ? check_semi(net, aps, f, state_limit, limits, semi_token)
                  : check_full(net, aps, f, state_limit, limits, full_token);
    } catch (...) {
      err = std::current_exception();
    }
    {
      std::lock_guard<std::mutex> lock(mu);
      if (is_semi) {
        semi_err = err;
        if (!err)
          semi_res = std::move(r);
      } else {
        full_err = err;
        if (!err)
          full_res = std::move(r);
      }
    }
    cv.notify_all();
  };

  std::thread semi_thread(arm, true);
  std::thread full_thread(arm, false);

  {
    std::unique_lock<std::mutex> lock(mu);
    // The semi arm works on the reduced net, a subset of the full arm's
    // exploration, so it is the arm that can finish early. Gating the
    // decision on it keeps the outcome independent of thread scheduling.
    cv.wait(lock, [&] { return semi_res.has_value() || semi_err != nullptr; });
    bool semi_decides = semi_res && semi_res->trusted;
    if (!semi_decides)
      cv.wait(lock, [&] { return full_res.has_value() || full_err != nullptr; });
  }
  semi_token.cancel();
  full_token.cancel();
  semi_thread.join();
  full_thread.join();

  if (semi_err)
    std::rethrow_exception(semi_err);
  if (full_err)
    std::rethrow_exception(full_err);

  if (semi_res && full_res && semi_res->trusted && full_res->trusted &&
      semi_res->value != full_res->value)
    throw InternalError("portfolio arms disagree on trusted verdicts for " + f->str());

  Verdict out;
  if (semi_res && semi_res->trusted) {
    out = std::move(*semi_res);
    std::string rest = std::move(out.stats.note);
    out.stats.note = "decided by the semi arm";
    if (!rest.empty())
      out.stats.note += "; " + rest;
  } else if (full_res && full_res->trusted) {
    out = std::move(*full_res);
    std::string note = "decided by the full arm";
    if (semi_res) {
      if (semi_res->value != VerdictValue::Unknown)
        note += std::string("; semi arm finished untrusted (") + to_string(semi_res->value) + ")";
      else if (!semi_res->stats.note.empty())
        note += "; semi arm: " + semi_res->stats.note;
      // The reduction happened on the losing arm; keep its numbers visible.
      out.stats.reduced_places = semi_res->stats.reduced_places;
      out.stats.reduced_transitions = semi_res->stats.reduced_transitions;
      out.stats.reduction = std::move(semi_res->stats.reduction);
    }
    if (!out.stats.note.empty())
      note += "; " + out.stats.note;
    out.stats.note = std::move(note);
  } else {
    // No trusted verdict anywhere: resource exhaustion, or an untrusted
    // semi answer with the full arm capped. Never surface the untrusted
    // value as final.
    out.formula = f->str();
    out.value = VerdictValue::Unknown;
    out.trusted = false;
    out.stats.original_places = net.places.size();
    out.stats.original_transitions = net.transitions.size();
    out.stats.reduced_places = net.places.size();
    out.stats.reduced_transitions = net.transitions.size();
    std::string note;
    if (semi_res) {
      out.classification = semi_res->classification;
      out.stats.reduced_places = semi_res->stats.reduced_places;
      out.stats.reduced_transitions = semi_res->stats.reduced_transitions;
      out.stats.reduction = std::move(semi_res->stats.reduction);
      if (semi_res->value != VerdictValue::Unknown)
        note = std::string("semi arm finished untrusted (") + to_string(semi_res->value) + ")";
      else
        note = "semi arm: " + semi_res->stats.note;
    }
    if (full_res) {
      if (out.classification.of_formula == Sensitivity{} &&
          out.classification.of_negation == Sensitivity{})
        out.classification = full_res->classification;
      if (!note.empty())
        note += "; ";
      note += "full arm: " + full_res->stats.note;
    }
    out.stats.note = std::move(note);
  }
  out.mode = "portfolio";
  out.stats.wall_time_ms = clock.ms();
  return out;
}

std::string LegitimacyReport::str() const {
  std::ostringstream out;
  out << (passed ? "PASS" : "FAIL") << ": " << reduced_words << " reduced and " << original_words
      << " original lasso runs checked";
  if (truncated)
    out << " (enumeration hit the position budget; partial result)";
  for (const auto& v : violations)
    out << "\n  " << v;
  return out.str();
}

LegitimacyReport verify_reduction(const PetriNet& orig, const PetriNet& red,
                                  const std::vector<AtomicPropDef>& aps, unsigned position_budget,
                                  std::size_t state_limit, const Limits& limits,
                                  const CancelToken& token) {
  KripkeStructure ks_orig = build_kripke(orig, aps, state_limit, token);
  KripkeStructure ks_red = build_kripke(red, aps, state_limit, token);
  Tgba a_orig = kripke_to_tgba(ks_orig);
  Tgba a_red = kripke_to_tgba(ks_red);

  LegitimacyReport rep;
  bool truncated = false;

  // Soundness: every reduced run must be a shortening of some original
  // run, i.e. the original runs that lengthen it must exist.
  std::set<CanonicalWord> red_words = enumerate_lasso_words(a_red, position_budget, &truncated);
  rep.truncated |= truncated;
  rep.reduced_words = red_words.size();
  for (const auto& w : red_words) {
    token.poll();
    bool covered =
        !is_empty(product(sl(word_to_tgba(w), limits, token), a_orig, limits, token), false, token)
             .empty;
    if (!covered) {
      rep.passed = false;
      rep.violations.push_back("reduced run " + w.str() +
                               " is not a shortening of any original run");
    }
  }

  // Completeness: every original run must have a reduced run shorter
  // than it, i.e. belong to the lengthenings of the reduced language.
  Tgba sl_red = sl(a_red, limits, token);
  truncated = false;
  std::set<CanonicalWord> orig_words = enumerate_lasso_words(a_orig, position_budget, &truncated);
  rep.truncated |= truncated;
  rep.original_words = orig_words.size();
  for (const auto& r : orig_words) {
    token.poll();
    if (!member(r, sl_red, limits, token)) {
      rep.passed = false;
      rep.violations.push_back("original run " + r.str() + " has no reduced run shorter than it");
    }
  }
  return rep;
}

namespace {

nlohmann::json sensitivity_json(const Sensitivity& s) {
  return {{"shortening", s.shortening},
          {"lengthening", s.lengthening},
          {"stutterInsensitive", s.stutter_insensitive()}};
}

} // namespace

std::string verdict_to_json(const Verdict& v, int indent) {
  nlohmann::json j;
  j["formula"] = v.formula;
  j["mode"] = v.mode;
  j["value"] = to_string(v.value);
  j["trusted"] = v.trusted;
  j["sensitivityOfPhi"] = sensitivity_json(v.classification.of_formula);
  j["sensitivityOfNegPhi"] = sensitivity_json(v.classification.of_negation);
  if (v.witness) {
    const AlphabetPtr& alphabet = v.witness->word.alphabet();
    nlohmann::json w;
    w["word"] = v.witness->word.str();
    nlohmann::json prefix = nlohmann::json::array();
    for (Letter l : v.witness->word.prefix())
      prefix.push_back(alphabet->name(l));
    nlohmann::json cycle = nlohmann::json::array();
    for (Letter l : v.witness->word.cycle())
      cycle.push_back(alphabet->name(l));
    w["prefix"] = std::move(prefix);
    w["cycle"] = std::move(cycle);
    j["witness"] = std::move(w);
  }
  nlohmann::json stats;
  stats["originalPlaces"] = v.stats.original_places;
  stats["reducedPlaces"] = v.stats.reduced_places;
  stats["originalTransitions"] = v.stats.original_transitions;
  stats["reducedTransitions"] = v.stats.reduced_transitions;
  stats["ksStates"] = v.stats.ks_states;
  stats["productStates"] = v.stats.product_states;
  stats["wallTimeMs"] = v.stats.wall_time_ms;
  stats["reductionApplications"] = v.stats.reduction.events.size();
  if (!v.stats.note.empty())
    stats["note"] = v.stats.note;
  j["stats"] = std::move(stats);
  return j.dump(indent);
}

} // namespace redukt
