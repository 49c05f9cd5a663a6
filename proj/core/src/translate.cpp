#include "redukt/translate.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace redukt {

namespace {

// Formulas are interned by their rendering so that obligation sets have a
// stable notion of identity and order.
struct Interner {
  std::unordered_map<std::string, FormulaPtr> pool;

  FormulaPtr get(const FormulaPtr& f) {
    auto [it, fresh] = pool.try_emplace(f->str(), f);
    (void)fresh;
    return it->second;
  }
};

// One consistent decomposition of an obligation set: the literal
// constraints to read now, the obligations for the next step, and which
// promises were pushed ahead instead of being fulfilled.
struct Cover {
  std::uint32_t require_true = 0;  // ap bit must be 1
  std::uint32_t require_false = 0; // ap bit must be 0
  std::map<std::string, FormulaPtr> next;
  MarkSet postponed = 0;
};

struct Translator {
  const AlphabetPtr& alphabet;
  const Limits& limits;
  const CancelToken& token;
  Interner intern;

  // Mark index per Until/Finally subformula, keyed by rendering.
  std::map<std::string, std::uint32_t> promise_index;

  std::uint32_t ap_bit(const std::string& name) const {
    std::size_t idx = alphabet->ap_index(name);
    if (idx == static_cast<std::size_t>(-1))
      throw AlphabetMismatchError("proposition '" + name + "' is not in the alphabet");
    return static_cast<std::uint32_t>(idx);
  }

  void collect_promises(const FormulaPtr& f) {
    if (!f) return;
    if (f->kind() == FormulaKind::Until || f->kind() == FormulaKind::Finally)
      promise_index.try_emplace(f->str(), static_cast<std::uint32_t>(promise_index.size()));
    collect_promises(f->lhs());
    collect_promises(f->rhs());
  }

  // Expands the pending obligations of one state into all covers.
  // Disjunctions and temporal choices branch; contradictory literal
  // requirements kill the branch.
  void expand(std::vector<FormulaPtr> todo, std::set<std::string> seen, Cover cur,
              std::vector<Cover>& out) {
    while (!todo.empty()) {
      FormulaPtr f = todo.back();
      todo.pop_back();
      if (!seen.insert(f->str()).second) continue;
      switch (f->kind()) {
        case FormulaKind::True:
          break;
        case FormulaKind::False:
          return;
        case FormulaKind::Ap: {
          std::uint32_t bit = 1u << ap_bit(f->ap_name());
          if (cur.require_false & bit) return;
          cur.require_true |= bit;
          break;
        }
        case FormulaKind::Not: {
          if (f->lhs()->kind() != FormulaKind::Ap)
            throw InternalError("translate: non-literal negation survived NNF");
          std::uint32_t bit = 1u << ap_bit(f->lhs()->ap_name());
          if (cur.require_true & bit) return;
          cur.require_false |= bit;
          break;
        }
        case FormulaKind::And:
          todo.push_back(f->lhs());
          todo.push_back(f->rhs());
          break;
        case FormulaKind::Or: {
          auto left = todo;
          left.push_back(f->lhs());
          expand(std::move(left), seen, cur, out);
          todo.push_back(f->rhs());
          break;
        }
        case FormulaKind::Next: {
          FormulaPtr g = intern.get(f->lhs());
          cur.next.emplace(g->str(), g);
          break;
        }
        case FormulaKind::Until: {
          // Either the right side holds now, or the left side holds and
          // the whole formula is promised for the next step.
          auto fulfil = todo;
          fulfil.push_back(f->rhs());
          expand(std::move(fulfil), seen, cur, out);
          todo.push_back(f->lhs());
          FormulaPtr g = intern.get(f);
          cur.next.emplace(g->str(), g);
          cur.postponed |= MarkSet{1} << promise_index.at(g->str());
          break;
        }
        case FormulaKind::Finally: {
          auto fulfil = todo;
          fulfil.push_back(f->lhs());
          expand(std::move(fulfil), seen, cur, out);
          FormulaPtr g = intern.get(f);
          cur.next.emplace(g->str(), g);
          cur.postponed |= MarkSet{1} << promise_index.at(g->str());
          break;
        }
        case FormulaKind::Release: {
          // Either both sides hold now (the release fires), or the right
          // side holds and the formula carries over.
          auto fire = todo;
          fire.push_back(f->lhs());
          fire.push_back(f->rhs());
          expand(std::move(fire), seen, cur, out);
          todo.push_back(f->rhs());
          FormulaPtr g = intern.get(f);
          cur.next.emplace(g->str(), g);
          break;
        }
        case FormulaKind::Globally: {
          todo.push_back(f->lhs());
          FormulaPtr g = intern.get(f);
          cur.next.emplace(g->str(), g);
          break;
        }
        case FormulaKind::Implies:
          throw InternalError("translate: implication survived NNF");
      }
    }
    out.push_back(std::move(cur));
  }

  LetterSet cover_label(const Cover& c) const {
    LetterSet label = LetterSet::none(alphabet->size());
    for (Letter l = 0; l < alphabet->size(); ++l) {
      // In a powerset alphabet the letter value is the proposition bitmask.
      if ((l & c.require_true) == c.require_true && (l & c.require_false) == 0)
        label.insert(l);
    }
    return label;
  }

  Tgba run(const FormulaPtr& raw) {
    if (!alphabet->is_powerset())
      throw AlphabetMismatchError("formula translation needs a powerset alphabet");
    FormulaPtr f = intern.get(to_nnf(raw));
    collect_promises(f);

    TgbaBuilder builder(alphabet, static_cast<std::uint32_t>(promise_index.size()));
    MarkSet all = promise_index.empty()
                      ? MarkSet{0}
                      : (MarkSet{1} << promise_index.size()) - 1;

    // States are sorted obligation sets, keyed by their joined rendering.
    std::map<std::string, std::uint32_t> state_ids;
    std::deque<std::pair<std::string, std::vector<FormulaPtr>>> queue;

    auto state_of = [&](const std::map<std::string, FormulaPtr>& obligations) {
      std::string key;
      std::string name;
      std::vector<FormulaPtr> formulas;
      for (const auto& [str, g] : obligations) {
        key += str;
        key += '\x1f';
        if (!name.empty()) name += " & ";
        name += str;
        formulas.push_back(g);
      }
      if (name.empty()) name = "true";
      auto it = state_ids.find(key);
      if (it != state_ids.end()) return it->second;
      if (builder.num_states() >= limits.automaton_state_cap)
        throw ResourceLimitError("formula translation exceeded the state cap");
      auto id = static_cast<std::uint32_t>(builder.add_state(name));
      state_ids.emplace(key, id);
      queue.emplace_back(key, std::move(formulas));
      return id;
    };

    std::map<std::string, FormulaPtr> init;
    init.emplace(f->str(), f);
    builder.set_initial(state_of(init));

    while (!queue.empty()) {
      token.poll();
      auto [key, obligations] = std::move(queue.front());
      queue.pop_front();
      std::uint32_t src = state_ids.at(key);

      std::vector<Cover> covers;
      expand(obligations, {}, Cover{}, covers);
      for (Cover& c : covers) {
        LetterSet label = cover_label(c);
        if (label.empty()) continue;
        std::uint32_t dst = state_of(c.next);
        if (builder.num_edges() >= limits.automaton_edge_cap)
          throw ResourceLimitError("formula translation exceeded the edge cap");
        builder.add_edge(src, dst, label, all & ~c.postponed);
      }
    }
    return builder.build();
  }
};

} // namespace

Tgba translate(const FormulaPtr& f, const AlphabetPtr& alphabet, const Limits& limits,
               const CancelToken& token) {
  Translator tr{alphabet, limits, token, {}, {}};
  return tr.run(f);
}

} // namespace redukt
