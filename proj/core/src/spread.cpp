#include "spreadnet/spread.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>

namespace spreadnet {

std::string place_id(const PlaceId& original, const VectorClock& clock) {
  return original + to_string(clock);
}

NetMorphism FoldingMorphism::as_net_morphism(const Net& support, const Net& dst) const {
  NetMorphism m;
  m.trans_map = trans_map;
  for (const auto& [p, q] : place_map) m.place_rel.emplace(p, q);
  for (const auto& [node, l] : support.labels()) {
    m.label_map[l] = dst.labels().contains(l) ? dst.label(l) : l;
  }
  return m;
}

namespace {

void check_input(const McNet& input, const VectorClockDomain& vcd,
                 const std::vector<TickingMap>& taus) {
  require_mcnet(input);
  const Net& net = input.net();
  for (const auto& t : net.transitions()) {
    if (net.label(t) != t) {
      throw Error(ErrorCode::NonInjectiveInputLabels,
                  "input transition " + t + " must be labeled by its id, not " + net.label(t));
    }
  }
  if (vcd.dimension() != input.dimension() || taus.size() != input.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "net of dimension " + std::to_string(input.dimension()) + ", domain " +
                    std::to_string(vcd.dimension()) + ", " + std::to_string(taus.size()) +
                    " ticking maps");
  }
}

struct OutPlace {
  PlaceId original;
  VectorClock clock;
  std::size_t component;
  std::size_t depth;
};

struct OutTrans {
  TransId image;
  std::vector<std::size_t> pre;
  std::vector<std::size_t> post;
};

using OutMarking = std::vector<std::size_t>;  // sorted place indices

}  // namespace

SpreadResult spread(const McNet& input, const VectorClockDomain& vcd,
                    const std::vector<TickingMap>& taus, const SpreadBounds& bounds) {
  check_input(input, vcd, taus);
  const Net& net = input.net();

  std::vector<OutPlace> places;
  std::map<std::pair<PlaceId, VectorClock>, std::size_t> place_index;
  std::vector<OutTrans> trans;
  std::map<std::pair<TransId, std::vector<std::size_t>>, std::size_t> trans_index;

  auto find_or_add = [&](const PlaceId& original, const VectorClock& clock, std::size_t depth) {
    auto [it, added] = place_index.emplace(std::pair{original, clock}, places.size());
    if (added) places.push_back({original, clock, input.component_of(original), depth});
    return it->second;
  };

  OutMarking start;
  for (std::size_t i = 0; i < input.dimension(); ++i) {
    start.push_back(find_or_add(input.head(i), vcd.epsilon(), 0));
  }

  bool saturated = true;
  std::set<OutMarking> seen{start};
  std::deque<OutMarking> work{start};

  while (!work.empty()) {
    const OutMarking m = work.front();
    work.pop_front();

    std::map<PlaceId, std::size_t> by_original;
    for (const auto x : m) by_original.emplace(places[x].original, x);

    for (const auto& t : net.transitions()) {
      std::vector<std::size_t> preset;
      for (const auto& p : net.pre(t)) {
        auto it = by_original.find(p);
        if (it == by_original.end()) break;
        preset.push_back(it->second);
      }
      if (preset.size() != net.pre(t).size()) continue;
      std::sort(preset.begin(), preset.end());

      auto existing = trans_index.find({t, preset});
      std::size_t ti;
      if (existing != trans_index.end()) {
        ti = existing->second;
      } else {
        std::set<std::size_t> J;
        std::map<std::size_t, VectorClock> gamma;
        std::size_t causal = 0;
        for (const auto x : preset) {
          J.insert(places[x].component);
          gamma.emplace(places[x].component, places[x].clock);
          causal = std::max(causal, places[x].depth + 1);
        }
        std::vector<std::pair<PlaceId, VectorClock>> targets;
        std::size_t local = 0;
        for (const auto& p : net.post(t)) {
          const std::size_t k = input.component_of(p);
          auto clock = tick(taus[k], vcd, op_mix(vcd, gamma, J, k), t, t);
          local = std::max(local, clock.entries[k].size());
          targets.emplace_back(p, std::move(clock));
        }
        const std::size_t depth =
            bounds.depth_measure == DepthMeasure::Causal ? causal : local;
        if ((bounds.max_depth && depth > *bounds.max_depth) ||
            trans.size() >= bounds.max_events) {
          saturated = false;
          continue;
        }
        OutTrans out{t, preset, {}};
        for (const auto& [p, clock] : targets) out.post.push_back(find_or_add(p, clock, causal));
        std::sort(out.post.begin(), out.post.end());
        ti = trans.size();
        trans.push_back(std::move(out));
        trans_index.emplace(std::pair{t, preset}, ti);
      }

      std::set<std::size_t> next(m.begin(), m.end());
      for (const auto x : trans[ti].pre) next.erase(x);
      for (const auto x : trans[ti].post) {
        if (!next.insert(x).second) {
          throw Error(ErrorCode::UnsafeNet,
                      "spreading " + t + " puts a second token on " +
                          place_id(places[x].original, places[x].clock));
        }
      }
      OutMarking succ(next.begin(), next.end());
      if (seen.insert(succ).second) work.push_back(std::move(succ));
    }
  }

  std::vector<PlaceId> pids;
  pids.reserve(places.size());
  for (const auto& p : places) pids.push_back(place_id(p.original, p.clock));

  SpreadResult result;
  NetBuilder builder;
  std::map<PlaceId, PlaceId> nu;
  for (std::size_t x = 0; x < places.size(); ++x) {
    builder.place(pids[x], places[x].original);
    nu[pids[x]] = pids[start[places[x].component]];
    result.net.h[pids[x]] = places[x].clock;
    result.folding.place_map[pids[x]] = places[x].original;
  }
  for (const auto x : start) builder.mark(pids[x]);
  for (const auto& t : trans) {
    std::vector<PlaceId> pre, post;
    for (const auto x : t.pre) pre.push_back(pids[x]);
    for (const auto x : t.post) post.push_back(pids[x]);
    std::vector<PlaceId> sorted_pre = pre;
    std::sort(sorted_pre.begin(), sorted_pre.end());
    std::string id = t.image + "{";
    for (std::size_t i = 0; i < sorted_pre.size(); ++i) id += (i ? ";" : "") + sorted_pre[i];
    id += "}";
    builder.transition(id, pre, post, t.image);
    result.folding.trans_map[id] = t.image;
  }
  result.net.mc = McNet(builder.build(), std::move(nu));
  for (std::size_t i = 0; i < input.dimension(); ++i) {
    if (result.net.mc.head(i) != pids[start[i]]) {
      throw Error(ErrorCode::InvalidNet,
                  "place ids must not contain characters ordered before '(': " +
                      input.head(i));
    }
  }
  result.net.vcd = vcd;
  result.net.taus = taus;
  result.saturated = saturated;
  return result;
}

Verdict validate_spread(const SpreadNet& s) {
  Verdict v;
  const Net& net = s.support();
  const std::size_t dim = s.mc.dimension();
  if (s.vcd.dimension() != dim || s.taus.size() != dim) {
    v.add("dimension", "net of dimension " + std::to_string(dim) + ", domain " +
                           std::to_string(s.vcd.dimension()) + ", " +
                           std::to_string(s.taus.size()) + " ticking maps");
    return v;
  }
  for (const auto& p : net.places()) {
    if (!s.h.contains(p)) v.add("h-total", "no clock on " + p);
  }
  if (!v.ok()) return v;

  for (const auto& p : net.initial()) {
    try {
      if (!s.vcd.same_class(s.h.at(p), s.vcd.epsilon())) {
        v.add("axiom-1", "initial place " + p + " has clock " + to_string(s.h.at(p)));
      }
    } catch (const Error& e) {
      v.add("axiom-1", p + ": " + e.what());
    }
  }

  std::map<std::pair<Label, VectorClock>, PlaceId> owner;
  for (const auto& p : net.places()) {
    try {
      auto [it, added] = owner.emplace(std::pair{net.label(p), s.vcd.canonical(s.h.at(p))}, p);
      if (!added) {
        v.add("axiom-2", p + " and " + it->second + " share label " + net.label(p) +
                             " and clock " + to_string(it->first.second));
      }
    } catch (const Error& e) {
      v.add("axiom-2", p + ": " + e.what());
    }
  }

  for (const auto& t : net.transitions()) {
    try {
      const auto J = s.mc.components_of(t);
      std::map<std::size_t, VectorClock> gamma;
      for (const auto& q : net.pre(t)) gamma[s.mc.component_of(q)] = s.h.at(q);
      const Label& a = net.label(t);
      for (const auto& p : net.post(t)) {
        const std::size_t k = s.mc.component_of(p);
        const auto expected = tick(s.taus[k], s.vcd, op_mix(s.vcd, gamma, J, k), a, a);
        if (!s.vcd.same_class(s.h.at(p), expected)) {
          v.add("axiom-3", "at " + t + ": h(" + p + ") = " + to_string(s.h.at(p)) +
                               ", expected " + to_string(expected));
        }
      }
    } catch (const Error& e) {
      v.add("axiom-3", "at " + t + ": " + e.what());
    }
  }
  return v;
}

Verdict check_folding(const McNet& support, const McNet& dst, const FoldingMorphism& f) {
  Verdict v;
  const Net& src = support.net();
  for (const auto& p : src.places()) {
    auto it = f.place_map.find(p);
    if (it == f.place_map.end()) {
      v.add("total", "place " + p + " is not mapped");
    } else if (!dst.net().has_place(it->second)) {
      v.add("total", "place " + p + " maps to unknown " + it->second);
    }
  }
  for (const auto& t : src.transitions()) {
    auto it = f.trans_map.find(t);
    if (it == f.trans_map.end()) {
      v.add("total", "transition " + t + " is not mapped");
    } else if (!dst.net().has_transition(it->second)) {
      v.add("total", "transition " + t + " maps to unknown " + it->second);
    }
  }
  if (!v.ok()) return v;

  v.merge(check_mcn_morphism(support, dst, f.as_net_morphism(src, dst.net())));

  std::map<std::pair<std::set<PlaceId>, TransId>, TransId> seen;
  for (const auto& [t, image] : f.trans_map) {
    auto [it, added] = seen.emplace(std::pair{src.pre(t), image}, t);
    if (!added) {
      v.add("economy", t + " and " + it->second + " share a preset and both map to " + image);
    }
  }
  return v;
}

std::string fingerprint(const SpreadNet& s) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& text) {
    for (unsigned char c : text) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
    hash ^= 0xff;
    hash *= 0x100000001b3ULL;
  };
  const Net& net = s.support();
  for (const auto& [node, l] : net.labels()) {
    feed(node);
    feed(l);
  }
  for (const auto& [a, b] : net.flow()) {
    feed(a);
    feed(b);
  }
  for (const auto& p : net.initial()) feed(p);
  for (const auto& [p, clock] : s.h) {
    feed(p);
    feed(to_string(clock));
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, hash >>= 4) out[static_cast<std::size_t>(i)] = kHex[hash & 0xf];
  return out;
}

SpreadMorphism identity_spread_morphism(const SpreadNet& s) {
  const auto fp = fingerprint(s);
  return {identity_morphism(s.support()), [](const VectorClock& a) { return a; }, fp, fp};
}

Verdict check_spread_morphism(const SpreadNet& src, const SpreadNet& dst,
                              const SpreadMorphism& f) {
  Verdict v;
  if (!f.source.empty() && f.source != fingerprint(src)) {
    v.add("endpoints", "morphism source is not this net");
  }
  if (!f.target.empty() && f.target != fingerprint(dst)) {
    v.add("endpoints", "morphism target is not this net");
  }
  v.merge(check_mcn_morphism(src.mc, dst.mc, f.base));
  if (!f.delta) {
    v.add("delta-class", "δ is empty");
    return v;
  }

  std::set<VectorClock> clocks;
  for (const auto& [p, clock] : src.h) clocks.insert(clock);

  for (const auto& alpha : clocks) {
    try {
      const auto image = f.delta(alpha);
      for (std::size_t i = 0; i < alpha.dimension(); ++i) {
        for (const auto& member : src.vcd.domain(i).class_members(alpha.entries[i], 16)) {
          VectorClock beta = alpha;
          beta.entries[i] = member;
          if (!dst.vcd.same_class(image, f.delta(beta))) {
            v.add("delta-class", "δ" + to_string(alpha) + " = " + to_string(image) +
                                     " but δ" + to_string(beta) + " = " +
                                     to_string(f.delta(beta)));
          }
        }
      }
    } catch (const Error& e) {
      v.add("delta-class", "at " + to_string(alpha) + ": " + e.what());
    }
  }

  const Net& sn = src.support();
  const Net& dn = dst.support();
  for (const auto& [t, t1] : f.base.trans_map) {
    if (!sn.has_transition(t) || !dn.has_transition(t1)) continue;
    for (const auto i : src.mc.components_of(t)) {
      for (const auto j : dst.mc.components_of(t1)) {
        if (!f.base.place_rel.contains({src.mc.head(i), dst.mc.head(j)})) continue;
        for (const auto& alpha : clocks) {
          VectorClock rhs;
          try {
            rhs = f.delta(tick(src.taus[i], src.vcd, alpha, sn.label(t), sn.label(t)));
          } catch (const Error&) {
            continue;  // τ_i undefined at alpha
          }
          try {
            const auto lhs =
                tick(dst.taus[j], dst.vcd, f.delta(alpha), dn.label(t1), dn.label(t1));
            if (!dst.vcd.same_class(lhs, rhs)) {
              v.add("tau", t + " -> " + t1 + " at " + to_string(alpha) + ": " +
                               to_string(lhs) + " != " + to_string(rhs));
            }
          } catch (const Error& e) {
            v.add("tau", t + " -> " + t1 + " at " + to_string(alpha) + ": " + e.what());
          }
        }
      }
    }
  }

  for (const auto& [p, p1] : f.base.place_rel) {
    auto a = src.h.find(p);
    auto b = dst.h.find(p1);
    if (a == src.h.end() || b == dst.h.end()) continue;
    try {
      if (!dst.vcd.same_class(f.delta(a->second), b->second)) {
        v.add("h", "δ(h(" + p + ")) = " + to_string(f.delta(a->second)) + " but h(" + p1 +
                       ") = " + to_string(b->second));
      }
    } catch (const Error& e) {
      v.add("h", p + " ~ " + p1 + ": " + e.what());
    }
  }
  return v;
}

SpreadMorphism compose_spread_morphisms(const SpreadMorphism& f, const SpreadMorphism& g) {
  if (f.target != g.source) {
    throw Error(ErrorCode::NotComposable,
                "target " + f.target + " of the first morphism is not the source " +
                    g.source + " of the second");
  }
  ClockMap delta = [d1 = f.delta, d2 = g.delta](const VectorClock& a) { return d2(d1(a)); };
  return {compose(f.base, g.base), std::move(delta), f.source, g.target};
}

}  // namespace spreadnet
