#include "redukt/petri.hpp"

#include "redukt/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace redukt {

std::size_t PetriNet::place_index(const std::string& place) const {
  auto it = std::find(places.begin(), places.end(), place);
  return it == places.end() ? npos : static_cast<std::size_t>(it - places.begin());
}

namespace {

void check_arcs(const PetriNet& net, const std::vector<Arc>& arcs, const std::string& where) {
  std::uint32_t prev = 0;
  bool first = true;
  for (const Arc& a : arcs) {
    if (a.weight == 0) throw Error("zero arc weight on " + where);
    if (a.place >= net.places.size()) throw Error("arc to unknown place on " + where);
    if (!first && a.place <= prev) throw Error("unsorted or duplicate arcs on " + where);
    prev = a.place;
    first = false;
  }
}

} // namespace

void PetriNet::validate() const {
  if (initial.size() != places.size()) throw Error("marking length does not match place count");
  std::set<std::string> seen;
  for (const std::string& p : places)
    if (!seen.insert(p).second) throw Error("duplicate place '" + p + "'");
  seen.clear();
  for (const Transition& t : transitions) {
    if (!seen.insert(t.name).second) throw Error("duplicate transition '" + t.name + "'");
    check_arcs(*this, t.pre, "transition '" + t.name + "'");
    check_arcs(*this, t.post, "transition '" + t.name + "'");
  }
}

namespace {

bool compare(Cmp cmp, long long sum, long long bound) {
  switch (cmp) {
    case Cmp::Lt: return sum < bound;
    case Cmp::Le: return sum <= bound;
    case Cmp::Eq: return sum == bound;
    case Cmp::Ge: return sum >= bound;
    case Cmp::Gt: return sum > bound;
  }
  return false;
}

} // namespace

bool AtomicPropDef::holds(const PetriNet& net, const Marking& m) const {
  long long sum = 0;
  for (const ApTerm& t : terms) {
    std::size_t idx = net.place_index(t.place);
    if (idx == PetriNet::npos)
      throw Error("proposition '" + name + "' references unknown place '" + t.place + "'");
    sum += t.coeff * static_cast<long long>(m[idx]);
  }
  return compare(cmp, sum, bound);
}

namespace {

// Character-level scanner for 'ap' lines, where terms like "2*tok(P)+tok(Q)"
// may or may not contain spaces.
struct ApScanner {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '.'))
      ++pos;
    if (pos == start) throw ParseError("expected a name in proposition definition", line);
    return std::string(text.substr(start, pos - start));
  }

  long long integer() {
    skip_ws();
    bool neg = eat('-');
    if (!neg) eat('+');
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected an integer in proposition definition", line);
    if (pos - start > 18) throw ParseError("integer constant out of range", line);
    long long v = std::stoll(std::string(text.substr(start, pos - start)));
    return neg ? -v : v;
  }

  Cmp comparator() {
    skip_ws();
    if (eat('<')) return eat('=') ? Cmp::Le : Cmp::Lt;
    if (eat('>')) return eat('=') ? Cmp::Ge : Cmp::Gt;
    if (eat('=')) return Cmp::Eq;
    throw ParseError("expected a comparator (< <= = >= >)", line);
  }
};

AtomicPropDef parse_ap_line(std::string_view rest, std::size_t line, const PetriNet& net) {
  ApScanner s{rest, 0, line};
  AtomicPropDef def;
  def.name = s.ident();
  // Proposition names surface in formulas, so they must fit that grammar.
  if (!is_valid_ap_name(def.name))
    throw ParseError("proposition name '" + def.name + "' is not usable in formulas", line);
  if (!s.eat('=')) throw ParseError("expected '=' after proposition name", line);

  // Terms: [coeff ['*']] tok(place), joined by + or -.
  long long sign = 1;
  for (;;) {
    long long coeff = sign;
    s.skip_ws();
    if (s.pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[s.pos]))) {
      coeff = sign * s.integer();
      s.eat('*');
    }
    std::string kw = s.ident();
    if (kw != "tok") throw ParseError("expected tok(<place>) in proposition definition", line);
    if (!s.eat('(')) throw ParseError("expected '(' after tok", line);
    std::string place = s.ident();
    if (!s.eat(')')) throw ParseError("expected ')' after place name", line);
    if (net.place_index(place) == PetriNet::npos)
      throw ParseError("unknown place '" + place + "' in proposition definition", line);
    def.terms.push_back({coeff, place});
    if (s.eat('+')) {
      sign = 1;
      continue;
    }
    if (s.eat('-')) {
      sign = -1;
      continue;
    }
    break;
  }
  def.cmp = s.comparator();
  def.bound = s.integer();
  if (!s.eof()) throw ParseError("trailing input after proposition definition", line);
  return def;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::uint32_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
        return std::isdigit(c);
      }))
    throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line);
  if (tok.size() > 10) throw ParseError(std::string(what) + " out of range", line);
  unsigned long v = std::stoul(tok);
  if (v > 0xffffffffu) throw ParseError(std::string(what) + " out of range", line);
  return static_cast<std::uint32_t>(v);
}

// "place" or "place*w".
Arc parse_arc(const std::string& tok, std::size_t line, const PetriNet& net) {
  std::string place = tok;
  std::uint32_t weight = 1;
  if (auto star = tok.find('*'); star != std::string::npos) {
    place = tok.substr(0, star);
    weight = parse_uint(tok.substr(star + 1), line, "an arc weight");
    if (weight == 0) throw ParseError("zero arc weight", line);
  }
  std::size_t idx = net.place_index(place);
  if (idx == PetriNet::npos) throw ParseError("unknown place '" + place + "'", line);
  return {static_cast<std::uint32_t>(idx), weight};
}

void sort_arcs(std::vector<Arc>& arcs, std::size_t line) {
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.place < b.place; });
  for (std::size_t i = 1; i < arcs.size(); ++i)
    if (arcs[i].place == arcs[i - 1].place)
      throw ParseError("place listed twice on one side of a transition", line);
}

} // namespace

Model parse_model(std::string_view text) {
  Model model;
  std::set<std::string> transition_names, ap_names;
  bool saw_net_line = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    auto toks = split_ws(line);
    if (toks.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    const std::string& kw = toks[0];

    if (kw == "net") {
      if (saw_net_line) throw ParseError("repeated net line", line_no);
      if (toks.size() != 2) throw ParseError("expected: net <name>", line_no);
      model.net.name = toks[1];
      saw_net_line = true;
    } else if (kw == "pl") {
      if (toks.size() != 3) throw ParseError("expected: pl <place> <initialTokens>", line_no);
      if (model.net.place_index(toks[1]) != PetriNet::npos)
        throw ParseError("duplicate place '" + toks[1] + "'", line_no);
      model.net.places.push_back(toks[1]);
      model.net.initial.push_back(parse_uint(toks[2], line_no, "an initial token count"));
    } else if (kw == "tr") {
      if (toks.size() < 3) throw ParseError("expected: tr <name> <pre>... -> <post>...", line_no);
      Transition t;
      t.name = toks[1];
      if (!transition_names.insert(t.name).second)
        throw ParseError("duplicate transition '" + t.name + "'", line_no);
      auto arrow = std::find(toks.begin() + 2, toks.end(), "->");
      if (arrow == toks.end()) throw ParseError("missing '->' in transition", line_no);
      for (auto it = toks.begin() + 2; it != arrow; ++it)
        t.pre.push_back(parse_arc(*it, line_no, model.net));
      for (auto it = arrow + 1; it != toks.end(); ++it)
        t.post.push_back(parse_arc(*it, line_no, model.net));
      sort_arcs(t.pre, line_no);
      sort_arcs(t.post, line_no);
      model.net.transitions.push_back(std::move(t));
    } else if (kw == "ap") {
      std::size_t kw_at = line.find("ap");
      AtomicPropDef def = parse_ap_line(line.substr(kw_at + 2), line_no, model.net);
      if (!ap_names.insert(def.name).second)
        throw ParseError("duplicate proposition '" + def.name + "'", line_no);
      model.aps.push_back(std::move(def));
    } else {
      throw ParseError("unknown directive '" + kw + "'", line_no);
    }
    if (pos > text.size()) break;
  }

  model.net.validate();
  return model;
}

std::string to_rnet(const Model& m) {
  std::ostringstream out;
  out << "net " << m.net.name << "\n";
  for (std::size_t i = 0; i < m.net.places.size(); ++i)
    out << "pl " << m.net.places[i] << " " << m.net.initial[i] << "\n";
  auto arcs = [&](const std::vector<Arc>& side) {
    for (const Arc& a : side) {
      out << " " << m.net.places[a.place];
      if (a.weight != 1) out << "*" << a.weight;
    }
  };
  for (const Transition& t : m.net.transitions) {
    out << "tr " << t.name;
    arcs(t.pre);
    out << " ->";
    arcs(t.post);
    out << "\n";
  }
  for (const AtomicPropDef& def : m.aps) {
    out << "ap " << def.name << " = ";
    for (std::size_t i = 0; i < def.terms.size(); ++i) {
      long long c = def.terms[i].coeff;
      if (i == 0) {
        if (c < 0) out << "-";
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      if (std::llabs(c) != 1) out << std::llabs(c) << "*";
      out << "tok(" << def.terms[i].place << ")";
    }
    switch (def.cmp) {
      case Cmp::Lt: out << " < "; break;
      case Cmp::Le: out << " <= "; break;
      case Cmp::Eq: out << " = "; break;
      case Cmp::Ge: out << " >= "; break;
      case Cmp::Gt: out << " > "; break;
    }
    out << def.bound << "\n";
  }
  return out.str();
}

std::vector<std::pair<std::uint32_t, Marking>> successors(const PetriNet& net, const Marking& m) {
  std::vector<std::pair<std::uint32_t, Marking>> out;
  for (std::uint32_t ti = 0; ti < net.transitions.size(); ++ti) {
    const Transition& t = net.transitions[ti];
    bool enabled = true;
    for (const Arc& a : t.pre)
      if (m[a.place] < a.weight) {
        enabled = false;
        break;
      }
    if (!enabled) continue;
    Marking next = m;
    for (const Arc& a : t.pre) next[a.place] -= a.weight;
    for (const Arc& a : t.post) next[a.place] += a.weight;
    out.emplace_back(ti, std::move(next));
  }
  return out;
}

bool is_invisible(const PetriNet& net, const std::vector<AtomicPropDef>& aps,
                  std::uint32_t transition) {
  std::set<std::uint32_t> observed;
  for (const AtomicPropDef& def : aps)
    for (const ApTerm& term : def.terms) {
      std::size_t idx = net.place_index(term.place);
      if (idx == PetriNet::npos)
        throw Error("proposition '" + def.name + "' references unknown place '" + term.place +
                    "'");
      observed.insert(static_cast<std::uint32_t>(idx));
    }

  const Transition& t = net.transitions[transition];
  for (std::uint32_t p : observed) {
    long long effect = 0;
    for (const Arc& a : t.post)
      if (a.place == p) effect += a.weight;
    for (const Arc& a : t.pre)
      if (a.place == p) effect -= a.weight;
    if (effect != 0) return false;
  }
  return true;
}

namespace {

std::string marking_name(const PetriNet& net, const Marking& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += net.places[i];
    if (m[i] != 1) out += "*" + std::to_string(m[i]);
  }
  return out.empty() ? "-" : out;
}

} // namespace

KripkeStructure build_kripke(const PetriNet& net, const std::vector<AtomicPropDef>& aps,
                             std::size_t state_limit, const CancelToken& token) {
  if (state_limit == 0) throw ResourceLimitError("state limit must be at least 1");

  KripkeStructure ks;
  std::vector<std::string> ap_names;
  ap_names.reserve(aps.size());
  for (const AtomicPropDef& def : aps) ap_names.push_back(def.name);
  ks.alphabet = Alphabet::powerset(ap_names);

  // Resolve proposition place names to indices once; BFS evaluates the
  // compiled form per marking.
  struct CompiledTerm {
    long long coeff;
    std::uint32_t place;
  };
  std::vector<std::vector<CompiledTerm>> compiled(aps.size());
  for (std::size_t i = 0; i < aps.size(); ++i)
    for (const ApTerm& t : aps[i].terms) {
      std::size_t idx = net.place_index(t.place);
      if (idx == PetriNet::npos)
        throw Error("proposition '" + aps[i].name + "' references unknown place '" + t.place +
                    "'");
      compiled[i].push_back({t.coeff, static_cast<std::uint32_t>(idx)});
    }

  auto label_of = [&](const Marking& m) {
    Letter l = 0;
    for (std::size_t i = 0; i < aps.size(); ++i) {
      long long sum = 0;
      for (const CompiledTerm& t : compiled[i]) sum += t.coeff * static_cast<long long>(m[t.place]);
      if (compare(aps[i].cmp, sum, aps[i].bound)) l |= Letter{1} << i;
    }
    return l;
  };

  std::map<Marking, std::uint32_t> ids;
  std::deque<std::uint32_t> queue;
  auto intern = [&](const Marking& m) {
    auto it = ids.find(m);
    if (it != ids.end()) return it->second;
    if (ks.states.size() >= state_limit)
      throw ResourceLimitError("state limit of " + std::to_string(state_limit) +
                               " markings exceeded");
    auto id = static_cast<std::uint32_t>(ks.states.size());
    ids.emplace(m, id);
    ks.states.push_back(m);
    ks.labels.push_back(label_of(m));
    ks.names.push_back(marking_name(net, m));
    ks.succ.emplace_back();
    queue.push_back(id);
    return id;
  };

  ks.initial = intern(net.initial);
  while (!queue.empty()) {
    token.poll();
    std::uint32_t s = queue.front();
    queue.pop_front();
    Marking m = ks.states[s]; // copy: intern() may reallocate states
    auto next = successors(net, m);
    if (next.empty()) {
      ks.succ[s].push_back(s); // deadlock: stutter forever
      continue;
    }
    for (auto& [ti, m2] : next) {
      (void)ti;
      std::uint32_t dst = intern(m2); // may reallocate ks.succ, so resolve first
      ks.succ[s].push_back(dst);
    }
    auto& row = ks.succ[s];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return ks;
}

Tgba kripke_to_tgba(const KripkeStructure& ks) {
  TgbaBuilder b(ks.alphabet, 1);
  for (std::size_t s = 0; s < ks.states.size(); ++s) b.add_state(ks.names[s]);
  b.set_initial(ks.initial);
  for (std::uint32_t s = 0; s < ks.states.size(); ++s) {
    LetterSet lab = LetterSet::single(ks.alphabet->size(), ks.labels[s]);
    for (std::uint32_t d : ks.succ[s]) b.add_edge(s, d, lab, 1);
  }
  return b.build();
}

std::string to_dot(const KripkeStructure& ks) {
  std::ostringstream out;
  out << "digraph kripke {\n  rankdir=LR;\n  node [shape=box];\n";
  out << "  init [shape=point];\n  init -> s" << ks.initial << ";\n";
  for (std::size_t s = 0; s < ks.states.size(); ++s) {
    out << "  s" << s << " [label=\"" << ks.names[s] << "\\n"
        << ks.alphabet->name(ks.labels[s]) << "\"];\n";
  }
  for (std::uint32_t s = 0; s < ks.states.size(); ++s)
    for (std::uint32_t d : ks.succ[s]) out << "  s" << s << " -> s" << d << ";\n";
  out << "}\n";
  return out.str();
}

} // namespace redukt
