#include "spreadnet/net.hpp"

#include <algorithm>
#include <deque>

namespace spreadnet {

namespace {

const std::set<std::string> kEmpty;

template <typename Map>
const std::set<std::string>& lookup(const Map& map, const std::string& key) {
  auto it = map.find(key);
  return it == map.end() ? kEmpty : it->second;
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string join(const std::set<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ',';
    out += x;
  }
  return out;
}

}  // namespace

std::string to_string(const Marking& m) { return "{" + join(m) + "}"; }

const std::set<PlaceId>& Net::pre(const TransId& t) const { return lookup(pre_, t); }
const std::set<PlaceId>& Net::post(const TransId& t) const { return lookup(post_, t); }
const std::set<TransId>& Net::producers(const PlaceId& p) const {
  return lookup(producers_, p);
}
const std::set<TransId>& Net::consumers(const PlaceId& p) const {
  return lookup(consumers_, p);
}

const Label& Net::label(const std::string& node) const {
  auto it = labels_.find(node);
  if (it == labels_.end()) {
    throw Error(ErrorCode::InvalidNet, "no node '" + node + "'");
  }
  return it->second;
}

std::size_t Net::arc_count() const {
  std::size_t n = 0;
  for (const auto& [t, ps] : pre_) n += ps.size();
  for (const auto& [t, ps] : post_) n += ps.size();
  return n;
}

std::vector<std::pair<std::string, std::string>> Net::flow() const {
  std::vector<std::pair<std::string, std::string>> arcs;
  for (const auto& [t, ps] : pre_)
    for (const auto& p : ps) arcs.emplace_back(p, t);
  for (const auto& [t, ps] : post_)
    for (const auto& p : ps) arcs.emplace_back(t, p);
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

NetBuilder& NetBuilder::place(PlaceId id, std::optional<Label> label) {
  places_.emplace_back(std::move(id), std::move(label));
  return *this;
}

NetBuilder& NetBuilder::transition(TransId id, std::vector<PlaceId> pre,
                                   std::vector<PlaceId> post,
                                   std::optional<Label> label) {
  transitions_.push_back({std::move(id), std::move(pre), std::move(post),
                          std::move(label)});
  return *this;
}

NetBuilder& NetBuilder::mark(PlaceId id) {
  initial_.push_back(std::move(id));
  return *this;
}

Net NetBuilder::build() const {
  Net net;
  for (const auto& [id, label] : places_) {
    if (id.empty()) throw Error(ErrorCode::InvalidNet, "empty place id");
    if (!net.places_.insert(id).second) {
      throw Error(ErrorCode::InvalidNet, "duplicate place '" + id + "'");
    }
    net.labels_[id] = label.value_or(id);
  }
  for (const auto& t : transitions_) {
    if (t.id.empty()) throw Error(ErrorCode::InvalidNet, "empty transition id");
    if (net.places_.contains(t.id)) {
      throw Error(ErrorCode::InvalidNet,
                  "'" + t.id + "' is both a place and a transition");
    }
    if (!net.transitions_.insert(t.id).second) {
      throw Error(ErrorCode::InvalidNet, "duplicate transition '" + t.id + "'");
    }
    if (t.pre.empty() || t.post.empty()) {
      throw Error(ErrorCode::InvalidNet,
                  "transition '" + t.id + "' needs a non-empty preset and postset");
    }
    auto& pre = net.pre_[t.id];
    auto& post = net.post_[t.id];
    for (const auto& p : t.pre) {
      if (!net.places_.contains(p)) {
        throw Error(ErrorCode::InvalidNet,
                    "transition '" + t.id + "' consumes unknown place '" + p + "'");
      }
      pre.insert(p);
      net.consumers_[p].insert(t.id);
    }
    for (const auto& p : t.post) {
      if (!net.places_.contains(p)) {
        throw Error(ErrorCode::InvalidNet,
                    "transition '" + t.id + "' produces unknown place '" + p + "'");
      }
      post.insert(p);
      net.producers_[p].insert(t.id);
    }
    net.labels_[t.id] = t.label.value_or(t.id);
  }
  for (const auto& p : initial_) {
    if (!net.places_.contains(p)) {
      throw Error(ErrorCode::InvalidNet, "initial marking names unknown place '" + p + "'");
    }
    net.initial_.insert(p);
  }
  return net;
}

std::set<TransId> enabled(const Net& net, const Marking& m) {
  std::set<TransId> out;
  for (const auto& t : net.transitions()) {
    if (subset(net.pre(t), m)) out.insert(t);
  }
  return out;
}

Marking fire(const Net& net, const Marking& m, const TransId& t) {
  if (!net.has_transition(t)) {
    throw Error(ErrorCode::NotEnabled, "unknown transition '" + t + "'");
  }
  const auto& pre = net.pre(t);
  if (!subset(pre, m)) {
    throw Error(ErrorCode::NotEnabled, t + " at " + to_string(m));
  }
  Marking next;
  std::set_difference(m.begin(), m.end(), pre.begin(), pre.end(),
                      std::inserter(next, next.end()));
  for (const auto& p : net.post(t)) {
    if (!next.insert(p).second) {
      throw Error(ErrorCode::UnsafeFiring,
                  t + " at " + to_string(m) + " puts a second token in " + p);
    }
  }
  return next;
}

Reachability reachable_markings(const Net& net, std::size_t bound) {
  Reachability result;
  result.markings.insert(net.initial());
  std::vector<Marking> frontier{net.initial()};
  for (std::size_t depth = 0; depth < bound && !frontier.empty(); ++depth) {
    std::vector<Marking> next_frontier;
    for (const auto& m : frontier) {
      for (const auto& t : enabled(net, m)) {
        Marking next;
        try {
          next = fire(net, m, t);
        } catch (const Error& e) {
          throw Error(ErrorCode::UnsafeNet, e.what());
        }
        result.steps.push_back({m, t, next});
        if (result.markings.insert(next).second) {
          next_frontier.push_back(std::move(next));
        }
      }
    }
    frontier = std::move(next_frontier);
  }
  // Anything still on the frontier has successors we did not look at.
  result.saturated = true;
  for (const auto& m : frontier) {
    for (const auto& t : enabled(net, m)) {
      Marking next;
      try {
        next = fire(net, m, t);
      } catch (const Error& e) {
        throw Error(ErrorCode::UnsafeNet, e.what());
      }
      if (!result.markings.contains(next)) {
        result.saturated = false;
      }
    }
  }
  return result;
}

std::map<TransId, std::size_t> FiringSequence::configuration() const {
  std::map<TransId, std::size_t> out;
  for (const auto& t : steps) ++out[t];
  return out;
}

FiringSequence replay(const Net& net, std::span<const TransId> steps) {
  FiringSequence seq;
  seq.markings.push_back(net.initial());
  for (const auto& t : steps) {
    seq.markings.push_back(fire(net, seq.markings.back(), t));
    seq.steps.push_back(t);
  }
  return seq;
}

std::optional<TransId> NetMorphism::map_transition(const TransId& t) const {
  auto it = trans_map.find(t);
  if (it == trans_map.end()) return std::nullopt;
  return it->second;
}

Marking NetMorphism::image(const Marking& m) const {
  Marking out;
  for (const auto& [p, q] : place_rel) {
    if (m.contains(p)) out.insert(q);
  }
  return out;
}

std::set<PlaceId> NetMorphism::related(const PlaceId& p) const {
  std::set<PlaceId> out;
  for (auto it = place_rel.lower_bound({p, std::string()});
       it != place_rel.end() && it->first == p; ++it) {
    out.insert(it->second);
  }
  return out;
}

NetMorphism identity_morphism(const Net& net) {
  NetMorphism f;
  for (const auto& t : net.transitions()) f.trans_map[t] = t;
  for (const auto& p : net.places()) f.place_rel.emplace(p, p);
  for (const auto& [node, label] : net.labels()) f.label_map[label] = label;
  return f;
}

NetMorphism compose(const NetMorphism& f, const NetMorphism& g) {
  NetMorphism h;
  for (const auto& [t, t1] : f.trans_map) {
    if (auto t2 = g.map_transition(t1)) h.trans_map[t] = *t2;
  }
  for (const auto& [p, p1] : f.place_rel) {
    for (const auto& p2 : g.related(p1)) h.place_rel.emplace(p, p2);
  }
  for (const auto& [l, l1] : f.label_map) {
    auto it = g.label_map.find(l1);
    if (it != g.label_map.end()) h.label_map[l] = it->second;
  }
  return h;
}

Verdict check_net_morphism(const Net& src, const Net& dst, const NetMorphism& f) {
  Verdict v;

  for (const auto& [t, t1] : f.trans_map) {
    if (!src.has_transition(t)) v.add("domain", "unknown source transition " + t);
    if (!dst.has_transition(t1)) v.add("domain", "unknown target transition " + t1);
  }
  for (const auto& [p, p1] : f.place_rel) {
    if (!src.has_place(p)) v.add("domain", "unknown source place " + p);
    if (!dst.has_place(p1)) v.add("domain", "unknown target place " + p1);
  }
  if (!v.ok()) return v;

  for (const auto& p1 : dst.initial()) {
    std::size_t count = 0;
    for (const auto& p : src.initial()) {
      if (f.place_rel.contains({p, p1})) ++count;
    }
    if (count != 1) {
      v.add("initial", p1 + " has " + std::to_string(count) + " initial preimages");
    }
  }

  auto check_restriction = [&](const std::string& rule, const PlaceId& p,
                               const PlaceId& p1,
                               const std::set<TransId>& from,
                               const std::set<TransId>& to) {
    for (const auto& t : from) {
      auto t1 = f.map_transition(t);
      if (!t1) {
        v.add(rule, t + " adjacent to " + p + " is unmapped (related to " + p1 + ")");
      } else if (!to.contains(*t1)) {
        v.add(rule, t + " -> " + *t1 + " leaves the neighbourhood of " + p1);
      }
    }
  };
  for (const auto& [p, p1] : f.place_rel) {
    check_restriction("place-pre", p, p1, src.producers(p), dst.producers(p1));
    check_restriction("place-post", p, p1, src.consumers(p), dst.consumers(p1));
  }

  auto check_opposite = [&](const std::string& rule, const TransId& t,
                            const TransId& t1, const std::set<PlaceId>& from,
                            const std::set<PlaceId>& to) {
    for (const auto& p1 : to) {
      std::size_t count = 0;
      for (const auto& p : from) {
        if (f.place_rel.contains({p, p1})) ++count;
      }
      if (count != 1) {
        v.add(rule, p1 + " of " + t1 + " has " + std::to_string(count) +
                        " preimages around " + t);
      }
    }
  };
  for (const auto& [t, t1] : f.trans_map) {
    check_opposite("trans-pre", t, t1, src.pre(t), dst.pre(t1));
    check_opposite("trans-post", t, t1, src.post(t), dst.post(t1));
  }

  auto check_label = [&](const std::string& x, const std::string& x1) {
    auto it = f.label_map.find(src.label(x));
    if (it == f.label_map.end()) {
      v.add("label", "no image for label " + src.label(x) + " of " + x);
    } else if (it->second != dst.label(x1)) {
      v.add("label", x + " -> " + x1 + ": " + it->second + " != " + dst.label(x1));
    }
  };
  for (const auto& [t, t1] : f.trans_map) check_label(t, t1);
  for (const auto& [p, p1] : f.place_rel) check_label(p, p1);

  return v;
}

Verdict morphism_preserves_markings(const Net& src, const Net& dst,
                                    const NetMorphism& f, std::size_t bound) {
  Verdict v;
  const auto reach = reachable_markings(src, bound);
  for (const auto& step : reach.steps) {
    auto t1 = f.map_transition(step.transition);
    if (!t1) continue;
    const Marking from = f.image(step.from);
    const Marking to = f.image(step.to);
    const std::string witness = to_string(step.from) + " -" + step.transition +
                                "-> " + to_string(step.to);
    try {
      const Marking got = fire(dst, from, *t1);
      if (got != to) {
        v.add("step", witness + " maps to " + to_string(from) + " -" + *t1 + "-> " +
                          to_string(got) + ", expected " + to_string(to));
      }
    } catch (const Error& e) {
      v.add("step", witness + ": " + e.what());
    }
  }
  return v;
}

}  // namespace spreadnet
