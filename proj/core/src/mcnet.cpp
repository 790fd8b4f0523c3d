#include "spreadnet/mcnet.hpp"

#include <algorithm>

namespace spreadnet {

McNet::McNet(Net net, std::map<PlaceId, PlaceId> nu)
    : net_(std::move(net)), nu_(std::move(nu)) {
  heads_.assign(net_.initial().begin(), net_.initial().end());
  for (std::size_t i = 0; i < heads_.size(); ++i) index_[heads_[i]] = i;
}

std::size_t McNet::component_of(const PlaceId& p) const {
  auto it = nu_.find(p);
  if (it == nu_.end()) {
    throw Error(ErrorCode::NotAnMcNet, "ν is undefined on " + p);
  }
  auto idx = index_.find(it->second);
  if (idx == index_.end()) {
    throw Error(ErrorCode::NotAnMcNet,
                "ν(" + p + ") = " + it->second + " is not an initial place");
  }
  return idx->second;
}

std::set<std::size_t> McNet::components_of(const TransId& t) const {
  std::set<std::size_t> out;
  for (const auto& p : net_.pre(t)) out.insert(component_of(p));
  return out;
}

std::set<PlaceId> McNet::block(std::size_t i) const {
  std::set<PlaceId> out;
  const auto& h = head(i);
  for (const auto& [p, q] : nu_) {
    if (q == h) out.insert(p);
  }
  return out;
}

std::set<TransId> McNet::component_transitions(std::size_t i) const {
  const auto b = block(i);
  auto touches = [&](const std::set<PlaceId>& ps) {
    return std::any_of(ps.begin(), ps.end(),
                       [&](const PlaceId& p) { return b.contains(p); });
  };
  std::set<TransId> out;
  for (const auto& t : net_.transitions()) {
    if (touches(net_.pre(t)) && touches(net_.post(t))) out.insert(t);
  }
  return out;
}

Verdict validate_mcnet(const McNet& candidate) {
  Verdict v;
  const Net& net = candidate.net();
  const auto& nu = candidate.nu();
  const auto& initial = net.initial();

  for (const auto& [p, q] : nu) {
    if (!net.has_place(p)) v.add("range", "ν defined on unknown place " + p);
    if (!initial.contains(q)) v.add("range", "ν(" + p + ") = " + q + " is not initial");
  }
  // ν is stored as a function, so preimages of distinct heads are disjoint
  // by construction; only the cover condition can fail.
  for (const auto& p : net.places()) {
    if (!nu.contains(p)) v.add("cover", p + " is in no component");
  }
  for (const auto& p : initial) {
    auto it = nu.find(p);
    if (it != nu.end() && it->second != p) {
      v.add("identity", "ν(" + p + ") = " + it->second);
    }
  }
  if (!v.ok()) return v;

  for (const auto& t : net.transitions()) {
    std::set<PlaceId> pre_img, post_img;
    for (const auto& p : net.pre(t)) {
      if (!pre_img.insert(nu.at(p)).second) {
        v.add("injective-pre", t + " consumes twice from component " + nu.at(p));
      }
    }
    for (const auto& p : net.post(t)) {
      if (!post_img.insert(nu.at(p)).second) {
        v.add("injective-post", t + " produces twice into component " + nu.at(p));
      }
    }
    if (pre_img != post_img) {
      v.add("balanced", "ν(pre(" + t + ")) = " + to_string(pre_img) +
                            " but ν(post(" + t + ")) = " + to_string(post_img));
    }
  }
  return v;
}

void require_mcnet(const McNet& candidate) {
  auto v = validate_mcnet(candidate);
  if (!v.ok()) throw Error(ErrorCode::NotAnMcNet, v.to_string());
}

std::vector<ComponentAutomaton> components(const McNet& mc) {
  require_mcnet(mc);
  const Net& net = mc.net();
  std::vector<ComponentAutomaton> out;
  for (std::size_t i = 0; i < mc.dimension(); ++i) {
    const auto b = mc.block(i);
    NetBuilder builder;
    for (const auto& p : b) builder.place(p, net.label(p));
    for (const auto& t : mc.component_transitions(i)) {
      std::vector<PlaceId> pre, post;
      for (const auto& p : net.pre(t))
        if (b.contains(p)) pre.push_back(p);
      for (const auto& p : net.post(t))
        if (b.contains(p)) post.push_back(p);
      builder.transition(t, pre, post, net.label(t));
    }
    builder.mark(mc.head(i));
    out.push_back({i, builder.build()});
  }
  return out;
}

Net recompose(const std::vector<ComponentAutomaton>& automata) {
  std::map<PlaceId, Label> places;
  struct Merged {
    std::set<PlaceId> pre, post;
    Label label;
  };
  std::map<TransId, Merged> transitions;
  std::set<PlaceId> initial;
  for (const auto& a : automata) {
    for (const auto& p : a.net.places()) places[p] = a.net.label(p);
    for (const auto& t : a.net.transitions()) {
      auto& m = transitions[t];
      m.pre.insert(a.net.pre(t).begin(), a.net.pre(t).end());
      m.post.insert(a.net.post(t).begin(), a.net.post(t).end());
      m.label = a.net.label(t);
    }
    initial.insert(a.net.initial().begin(), a.net.initial().end());
  }
  NetBuilder builder;
  for (const auto& [p, l] : places) builder.place(p, l);
  for (const auto& [t, m] : transitions) {
    builder.transition(t, {m.pre.begin(), m.pre.end()},
                       {m.post.begin(), m.post.end()}, m.label);
  }
  for (const auto& p : initial) builder.mark(p);
  return builder.build();
}

Verdict check_mcn_morphism(const McNet& src, const McNet& dst,
                           const NetMorphism& f) {
  Verdict v = check_net_morphism(src.net(), dst.net(), f);
  for (const auto& [p, p1] : f.place_rel) {
    auto a = src.nu().find(p);
    auto b = dst.nu().find(p1);
    if (a == src.nu().end() || b == dst.nu().end()) {
      v.add("partition", "ν undefined on " + p + " or " + p1);
      continue;
    }
    if (!f.place_rel.contains({a->second, b->second})) {
      v.add("partition", p + " ~ " + p1 + " but not ν(" + p + ")=" + a->second +
                             " ~ ν(" + p1 + ")=" + b->second);
    }
  }
  return v;
}

}  // namespace spreadnet
