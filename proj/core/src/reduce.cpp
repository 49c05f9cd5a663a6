#include "redukt/petri.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace redukt {

namespace {

std::uint32_t arc_weight(const std::vector<Arc>& arcs, std::uint32_t place) {
  for (const Arc& a : arcs)
    if (a.place == place) return a.weight;
  return 0;
}

// Transition indices producing / consuming a place.
std::vector<std::uint32_t> producers_of(const PetriNet& net, std::uint32_t p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < net.transitions.size(); ++t)
    if (arc_weight(net.transitions[t].post, p) > 0) out.push_back(t);
  return out;
}

std::vector<std::uint32_t> consumers_of(const PetriNet& net, std::uint32_t p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < net.transitions.size(); ++t)
    if (arc_weight(net.transitions[t].pre, p) > 0) out.push_back(t);
  return out;
}

bool all_arcs_weight_one(const PetriNet& net, std::uint32_t p) {
  for (const Transition& t : net.transitions) {
    for (const Arc& a : t.pre)
      if (a.place == p && a.weight != 1) return false;
    for (const Arc& a : t.post)
      if (a.place == p && a.weight != 1) return false;
  }
  return true;
}

// Sum of two weight maps, minus any arc on `drop`.
std::vector<Arc> merge_arcs(const std::vector<Arc>& a, const std::vector<Arc>& b,
                            std::uint32_t drop) {
  std::map<std::uint32_t, std::uint32_t> sum;
  for (const Arc& x : a)
    if (x.place != drop) sum[x.place] += x.weight;
  for (const Arc& x : b)
    if (x.place != drop) sum[x.place] += x.weight;
  std::vector<Arc> out;
  out.reserve(sum.size());
  for (auto [place, weight] : sum) out.push_back({place, weight});
  return out;
}

// Rebuilds the net without place `p` and without the transitions in
// `removed`, appending `fused` (whose arcs still use old place indices).
PetriNet rebuild(const PetriNet& net, std::uint32_t p, const std::set<std::uint32_t>& removed,
                 std::vector<Transition> fused) {
  PetriNet out;
  out.name = net.name;
  std::vector<std::uint32_t> remap(net.places.size());
  for (std::uint32_t i = 0; i < net.places.size(); ++i) {
    if (i == p) continue;
    remap[i] = static_cast<std::uint32_t>(out.places.size());
    out.places.push_back(net.places[i]);
    out.initial.push_back(net.initial[i]);
  }
  auto remap_arcs = [&](std::vector<Arc>& arcs) {
    for (Arc& a : arcs) a.place = remap[a.place];
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& x, const Arc& y) { return x.place < y.place; });
  };
  for (std::uint32_t t = 0; t < net.transitions.size(); ++t) {
    if (removed.count(t)) continue;
    out.transitions.push_back(net.transitions[t]);
    remap_arcs(out.transitions.back().pre);
    remap_arcs(out.transitions.back().post);
  }
  std::set<std::string> used;
  for (const Transition& t : out.transitions) used.insert(t.name);
  for (Transition& t : fused) {
    while (!used.insert(t.name).second) t.name += "'";
    remap_arcs(t.pre);
    remap_arcs(t.post);
    out.transitions.push_back(std::move(t));
  }
  return out;
}

// Propositions reference places by name and only unobserved places can
// qualify (their consumers or producer must be invisible), so the AP
// definitions survive every application unchanged.
struct RuleStep {
  PetriNet net;
  ReductionEvent event;
};

// One post agglomeration, at the first qualifying place in name order.
std::optional<RuleStep> post_step(const PetriNet& net, const std::vector<AtomicPropDef>& aps) {
  std::vector<std::uint32_t> order(net.places.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return net.places[a] < net.places[b]; });

  for (std::uint32_t p : order) {
    if (net.initial[p] != 0) continue;
    if (!all_arcs_weight_one(net, p)) continue;
    auto H = producers_of(net, p);
    auto F = consumers_of(net, p);
    if (H.empty() || F.empty()) continue;
    bool disjoint = true;
    for (std::uint32_t f : F)
      if (std::find(H.begin(), H.end(), f) != H.end()) disjoint = false;
    if (!disjoint) continue;
    bool fs_ok = true;
    for (std::uint32_t f : F) {
      const Transition& tf = net.transitions[f];
      if (tf.pre.size() != 1 || tf.pre[0].place != p || !is_invisible(net, aps, f)) {
        fs_ok = false;
        break;
      }
    }
    if (!fs_ok) continue;

    RuleStep step;
    step.event.rule = "post-agglomeration";
    step.event.place = net.places[p];
    std::set<std::uint32_t> removed;
    for (std::uint32_t h : H) {
      removed.insert(h);
      step.event.removed.push_back(net.transitions[h].name);
    }
    for (std::uint32_t f : F) {
      removed.insert(f);
      step.event.removed.push_back(net.transitions[f].name);
    }
    std::vector<Transition> fused;
    for (std::uint32_t h : H)
      for (std::uint32_t f : F) {
        Transition t;
        t.name = net.transitions[h].name + "." + net.transitions[f].name;
        t.pre = net.transitions[h].pre;
        t.post = merge_arcs(net.transitions[h].post, net.transitions[f].post, p);
        fused.push_back(std::move(t));
      }
    step.net = rebuild(net, p, removed, std::move(fused));
    for (auto it = step.net.transitions.end() - static_cast<std::ptrdiff_t>(H.size() * F.size());
         it != step.net.transitions.end(); ++it)
      step.event.added.push_back(it->name);
    return step;
  }
  return std::nullopt;
}

// One pre agglomeration, at the first qualifying place in name order.
std::optional<RuleStep> pre_step(const PetriNet& net, const std::vector<AtomicPropDef>& aps) {
  std::vector<std::uint32_t> order(net.places.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return net.places[a] < net.places[b]; });

  for (std::uint32_t p : order) {
    if (net.initial[p] != 0) continue;
    if (!all_arcs_weight_one(net, p)) continue;
    auto H = producers_of(net, p);
    auto F = consumers_of(net, p);
    if (H.size() != 1 || F.empty()) continue;
    std::uint32_t h = H[0];
    if (std::find(F.begin(), F.end(), h) != F.end()) continue;
    const Transition& th = net.transitions[h];
    if (th.post.size() != 1 || th.post[0].place != p) continue;
    if (!is_invisible(net, aps, h)) continue;
    if (th.pre.size() != 1 || th.pre[0].weight != 1) continue;
    std::uint32_t q = th.pre[0].place;
    if (consumers_of(net, q) != std::vector<std::uint32_t>{h}) continue;

    RuleStep step;
    step.event.rule = "pre-agglomeration";
    step.event.place = net.places[p];
    std::set<std::uint32_t> removed{h};
    step.event.removed.push_back(th.name);
    for (std::uint32_t f : F) {
      removed.insert(f);
      step.event.removed.push_back(net.transitions[f].name);
    }
    std::vector<Transition> fused;
    for (std::uint32_t f : F) {
      Transition t;
      t.name = th.name + "." + net.transitions[f].name;
      t.pre = merge_arcs(th.pre, net.transitions[f].pre, p);
      t.post = net.transitions[f].post;
      fused.push_back(std::move(t));
    }
    step.net = rebuild(net, p, removed, std::move(fused));
    for (auto it = step.net.transitions.end() - static_cast<std::ptrdiff_t>(F.size());
         it != step.net.transitions.end(); ++it)
      step.event.added.push_back(it->name);
    return step;
  }
  return std::nullopt;
}

using StepFn = std::optional<RuleStep> (*)(const PetriNet&, const std::vector<AtomicPropDef>&);

std::pair<PetriNet, ReductionReport> run_rule(const PetriNet& net,
                                              const std::vector<AtomicPropDef>& aps,
                                              std::size_t max_applications, StepFn fn) {
  ReductionReport report;
  report.places_before = net.places.size();
  report.transitions_before = net.transitions.size();

  PetriNet cur = net;
  while (report.events.size() < max_applications) {
    auto step = fn(cur, aps);
    if (!step) break;
    report.events.push_back(std::move(step->event));
    cur = std::move(step->net);
  }
  if (report.events.size() == max_applications && fn(cur, aps)) report.capped = true;

  report.places_after = cur.places.size();
  report.transitions_after = cur.transitions.size();
  return {std::move(cur), std::move(report)};
}

} // namespace

std::pair<PetriNet, ReductionReport> post_agglomerate(const PetriNet& net,
                                                      const std::vector<AtomicPropDef>& aps,
                                                      std::size_t max_applications) {
  return run_rule(net, aps, max_applications, &post_step);
}

std::pair<PetriNet, ReductionReport> pre_agglomerate(const PetriNet& net,
                                                     const std::vector<AtomicPropDef>& aps,
                                                     std::size_t max_applications) {
  return run_rule(net, aps, max_applications, &pre_step);
}

std::pair<PetriNet, ReductionReport> reduce(const PetriNet& net,
                                            const std::vector<AtomicPropDef>& aps,
                                            std::size_t max_applications) {
  ReductionReport report;
  report.places_before = net.places.size();
  report.transitions_before = net.transitions.size();

  PetriNet cur = net;
  for (;;) {
    std::size_t budget = max_applications - report.events.size();
    auto [after_post, post_report] = post_agglomerate(cur, aps, budget);
    cur = std::move(after_post);
    for (auto& e : post_report.events) report.events.push_back(std::move(e));
    report.capped = report.capped || post_report.capped;

    budget = max_applications - report.events.size();
    auto [after_pre, pre_report] = pre_agglomerate(cur, aps, budget);
    cur = std::move(after_pre);
    for (auto& e : pre_report.events) report.events.push_back(std::move(e));
    report.capped = report.capped || pre_report.capped;

    if ((post_report.events.empty() && pre_report.events.empty()) || report.capped) break;
  }

  report.places_after = cur.places.size();
  report.transitions_after = cur.transitions.size();
  return {std::move(cur), std::move(report)};
}

std::string ReductionReport::str() const {
  std::ostringstream out;
  out << "places " << places_before << " -> " << places_after << ", transitions "
      << transitions_before << " -> " << transitions_after << ", " << events.size()
      << (events.size() == 1 ? " rule application" : " rule applications");
  if (capped) out << " (application cap hit)";
  out << "\n";
  for (const ReductionEvent& e : events) {
    out << "  " << e.rule << " at " << e.place << ":";
    for (const std::string& n : e.removed) out << " " << n;
    out << " =>";
    for (const std::string& n : e.added) out << " " << n;
    out << "\n";
  }
  return out.str();
}

} // namespace redukt
