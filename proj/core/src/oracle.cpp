#include "spreadnet/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <tuple>
#include <vector>

namespace spreadnet {

namespace {

struct Condition {
  PlaceId place;
  std::optional<std::size_t> producer;
  std::size_t depth = 0;
};

struct Event {
  TransId transition;
  std::vector<std::size_t> pre;
  std::vector<std::size_t> post;
  std::set<std::size_t> past;  // events in the causal past, this one included
};

// X is a co-set iff the union of its histories is conflict-free and
// consumes none of X.
bool is_coset(const std::vector<Condition>& conds, const std::vector<Event>& events,
              const std::vector<std::size_t>& x) {
  std::set<std::size_t> history;
  for (const auto c : x) {
    if (conds[c].producer) {
      const auto& past = events[*conds[c].producer].past;
      history.insert(past.begin(), past.end());
    }
  }
  std::map<std::size_t, std::size_t> consumer;
  for (const auto e : history) {
    for (const auto c : events[e].pre) {
      auto [it, added] = consumer.emplace(c, e);
      if (!added && it->second != e) return false;
    }
  }
  return std::none_of(x.begin(), x.end(), [&](std::size_t c) { return consumer.contains(c); });
}

}  // namespace

Net unfold_bp_oracle(const McNet& mc, std::size_t max_depth) {
  require_mcnet(mc);
  const Net& net = mc.net();
  std::vector<Condition> conds;
  std::vector<Event> events;
  std::set<std::pair<TransId, std::vector<std::size_t>>> known;

  for (const auto& p : net.initial()) conds.push_back({p, std::nullopt, 0});

  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& t : net.transitions()) {
      std::vector<std::vector<std::size_t>> choices;
      for (const auto& p : net.pre(t)) {
        std::vector<std::size_t> with_place;
        for (std::size_t c = 0; c < conds.size(); ++c) {
          if (conds[c].place == p) with_place.push_back(c);
        }
        choices.push_back(std::move(with_place));
      }
      std::vector<std::size_t> pick;
      std::function<void(std::size_t)> extend = [&](std::size_t n) {
        if (n < choices.size()) {
          for (const auto c : choices[n]) {
            pick.push_back(c);
            extend(n + 1);
            pick.pop_back();
          }
          return;
        }
        std::vector<std::size_t> pre = pick;
        std::sort(pre.begin(), pre.end());
        if (known.contains({t, pre})) return;
        std::size_t depth = 0;
        for (const auto c : pre) depth = std::max(depth, conds[c].depth);
        if (depth + 1 > max_depth || !is_coset(conds, events, pre)) return;

        const std::size_t e = events.size();
        Event ev{t, pre, {}, {e}};
        for (const auto c : pre) {
          if (conds[c].producer) {
            const auto& past = events[*conds[c].producer].past;
            ev.past.insert(past.begin(), past.end());
          }
        }
        for (const auto& p : net.post(t)) {
          ev.post.push_back(conds.size());
          conds.push_back({p, e, depth + 1});
        }
        events.push_back(std::move(ev));
        known.insert({t, pre});
        grew = true;
      };
      extend(0);
    }
  }

  NetBuilder b;
  for (std::size_t c = 0; c < conds.size(); ++c) b.place("c" + std::to_string(c), conds[c].place);
  for (std::size_t c = 0; c < conds.size(); ++c) {
    if (!conds[c].producer) b.mark("c" + std::to_string(c));
  }
  for (std::size_t e = 0; e < events.size(); ++e) {
    std::vector<PlaceId> pre, post;
    for (const auto c : events[e].pre) pre.push_back("c" + std::to_string(c));
    for (const auto c : events[e].post) post.push_back("c" + std::to_string(c));
    b.transition("e" + std::to_string(e), pre, post, events[e].transition);
  }
  return b.build();
}

Net trellis_oracle(const McNet& mc, std::size_t max_height) {
  require_mcnet(mc);
  const Net& net = mc.net();
  using Node = std::pair<PlaceId, std::size_t>;
  using State = std::pair<Marking, std::vector<std::size_t>>;

  std::set<Node> nodes;
  std::map<std::pair<TransId, std::set<Node>>, std::set<Node>> events;

  const State start{net.initial(), std::vector<std::size_t>(mc.dimension(), 0)};
  for (const auto& p : net.initial()) nodes.insert({p, 0});
  std::set<State> seen{start};
  std::deque<State> work{start};
  while (!work.empty()) {
    const auto [marking, times] = work.front();
    work.pop_front();
    for (const auto& t : enabled(net, marking)) {
      std::set<Node> pre, post;
      for (const auto& p : net.pre(t)) pre.insert({p, times[mc.component_of(p)]});
      bool too_high = false;
      for (const auto& p : net.post(t)) {
        const std::size_t time = times[mc.component_of(p)] + 1;
        too_high |= time > max_height;
        post.insert({p, time});
      }
      if (too_high) continue;
      nodes.insert(post.begin(), post.end());
      events.emplace(std::pair{t, pre}, post);

      State next{fire(net, marking, t), times};
      for (const auto k : mc.components_of(t)) ++next.second[k];
      if (seen.insert(next).second) work.push_back(std::move(next));
    }
  }

  auto id = [](const Node& n) { return n.first + "@" + std::to_string(n.second); };
  NetBuilder b;
  for (const auto& n : nodes) {
    b.place(id(n), n.first);
    if (n.second == 0 && net.initial().contains(n.first)) b.mark(id(n));
  }
  std::size_t e = 0;
  for (const auto& [key, post] : events) {
    std::vector<PlaceId> pre_ids, post_ids;
    for (const auto& n : key.second) pre_ids.push_back(id(n));
    for (const auto& n : post) post_ids.push_back(id(n));
    b.transition("e" + std::to_string(e++), pre_ids, post_ids, key.first);
  }
  return b.build();
}

namespace {

struct Graph {
  std::vector<std::string> names;
  std::vector<int> colour;
  std::vector<std::vector<std::size_t>> in, out;
  std::size_t place_count = 0;
};

Graph make_graph(const Net& net, const NodeTags& tags,
                 std::map<std::tuple<bool, Label, std::string, bool>, int>& palette) {
  Graph g;
  std::map<std::string, std::size_t> index;
  auto add = [&](const std::string& n, bool is_place) {
    index[n] = g.names.size();
    g.names.push_back(n);
    auto tag = tags.find(n);
    auto key = std::tuple{is_place, net.label(n), tag == tags.end() ? std::string{} : tag->second,
                          net.initial().contains(n)};
    auto [it, added] = palette.emplace(key, static_cast<int>(palette.size()));
    g.colour.push_back(it->second);
  };
  for (const auto& p : net.places()) add(p, true);
  g.place_count = g.names.size();
  for (const auto& t : net.transitions()) add(t, false);
  g.in.resize(g.names.size());
  g.out.resize(g.names.size());
  for (const auto& [from, to] : net.flow()) {
    g.out[index[from]].push_back(index[to]);
    g.in[index[to]].push_back(index[from]);
  }
  return g;
}

std::size_t count_colours(const Graph& a, const Graph& b) {
  std::set<int> all(a.colour.begin(), a.colour.end());
  all.insert(b.colour.begin(), b.colour.end());
  return all.size();
}

// Joint refinement, so colours are comparable across the two graphs.
void refine(Graph& a, Graph& b) {
  std::size_t classes = count_colours(a, b);
  while (true) {
    std::map<std::tuple<int, std::vector<int>, std::vector<int>>, int> palette;
    auto step = [&](const Graph& g) {
      std::vector<int> next(g.colour.size());
      for (std::size_t v = 0; v < g.colour.size(); ++v) {
        std::vector<int> in, out;
        for (const auto u : g.in[v]) in.push_back(g.colour[u]);
        for (const auto u : g.out[v]) out.push_back(g.colour[u]);
        std::sort(in.begin(), in.end());
        std::sort(out.begin(), out.end());
        auto [it, added] = palette.emplace(std::tuple{g.colour[v], std::move(in), std::move(out)},
                                           static_cast<int>(palette.size()));
        next[v] = it->second;
      }
      return next;
    };
    auto na = step(a);
    auto nb = step(b);
    a.colour = std::move(na);
    b.colour = std::move(nb);
    const std::size_t now = count_colours(a, b);
    if (now == classes) return;
    classes = now;
  }
}

std::map<int, std::size_t> histogram(const Graph& g) {
  std::map<int, std::size_t> h;
  for (const auto c : g.colour) ++h[c];
  return h;
}

std::optional<std::vector<std::size_t>> search(const Graph& a, const Graph& b) {
  const std::size_t n = a.names.size();
  std::map<int, std::vector<std::size_t>> by_colour;
  for (std::size_t v = 0; v < n; ++v) by_colour[b.colour[v]].push_back(v);

  // Order a's nodes so that each one has as many already-placed neighbours
  // as possible, rarest colour first on ties.
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> links(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best == n || links[v] > links[best] ||
          (links[v] == links[best] &&
           by_colour[a.colour[v]].size() < by_colour[a.colour[best]].size())) {
        best = v;
      }
    }
    placed[best] = true;
    order.push_back(best);
    for (const auto u : a.in[best]) ++links[u];
    for (const auto u : a.out[best]) ++links[u];
  }

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> fwd(n, kUnset), back(n, kUnset);

  auto fits = [&](std::size_t x, std::size_t y) {
    auto side = [&](const std::vector<std::size_t>& ax, const std::vector<std::size_t>& by) {
      std::size_t mapped = 0;
      for (const auto z : ax) {
        if (fwd[z] == kUnset) continue;
        ++mapped;
        if (std::find(by.begin(), by.end(), fwd[z]) == by.end()) return false;
      }
      const auto seen = std::count_if(by.begin(), by.end(),
                                      [&](std::size_t w) { return back[w] != kUnset; });
      return static_cast<std::size_t>(seen) == mapped;
    };
    return side(a.in[x], b.in[y]) && side(a.out[x], b.out[y]);
  };

  std::function<bool(std::size_t)> place = [&](std::size_t pos) {
    if (pos == n) return true;
    const std::size_t x = order[pos];
    for (const auto y : by_colour[a.colour[x]]) {
      if (back[y] != kUnset || !fits(x, y)) continue;
      fwd[x] = y;
      back[y] = x;
      if (place(pos + 1)) return true;
      fwd[x] = kUnset;
      back[y] = kUnset;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return fwd;
}

template <typename Key>
std::string compare_histograms(const std::map<Key, std::size_t>& a,
                               const std::map<Key, std::size_t>& b, const std::string& what) {
  std::set<Key> keys;
  for (const auto& [k, c] : a) keys.insert(k);
  for (const auto& [k, c] : b) keys.insert(k);
  for (const auto& k : keys) {
    const auto ca = a.contains(k) ? a.at(k) : 0;
    const auto cb = b.contains(k) ? b.at(k) : 0;
    if (ca != cb) {
      return what + " labeled " + k + ": " + std::to_string(ca) + " vs " + std::to_string(cb);
    }
  }
  return {};
}

}  // namespace

std::optional<LabeledIso> isomorphic(const Net& a, const NodeTags& tags_a, const Net& b,
                                     const NodeTags& tags_b) {
  if (a.places().size() != b.places().size() ||
      a.transitions().size() != b.transitions().size() || a.arc_count() != b.arc_count() ||
      a.initial().size() != b.initial().size()) {
    return std::nullopt;
  }
  std::map<std::tuple<bool, Label, std::string, bool>, int> palette;
  Graph ga = make_graph(a, tags_a, palette);
  Graph gb = make_graph(b, tags_b, palette);
  refine(ga, gb);
  if (histogram(ga) != histogram(gb)) return std::nullopt;
  auto fwd = search(ga, gb);
  if (!fwd) return std::nullopt;
  LabeledIso iso;
  for (std::size_t v = 0; v < fwd->size(); ++v) {
    if (v < ga.place_count) {
      iso.places[ga.names[v]] = gb.names[(*fwd)[v]];
    } else {
      iso.transitions[ga.names[v]] = gb.names[(*fwd)[v]];
    }
  }
  return iso;
}

std::optional<LabeledIso> isomorphic(const Net& a, const Net& b) {
  return isomorphic(a, {}, b, {});
}

std::string first_discrepancy(const Net& a, const Net& b) {
  auto count = [](const char* what, std::size_t x, std::size_t y) {
    return std::string(what) + ": " + std::to_string(x) + " vs " + std::to_string(y);
  };
  if (a.places().size() != b.places().size())
    return count("places", a.places().size(), b.places().size());
  if (a.transitions().size() != b.transitions().size())
    return count("transitions", a.transitions().size(), b.transitions().size());
  if (a.arc_count() != b.arc_count()) return count("arcs", a.arc_count(), b.arc_count());
  if (a.initial().size() != b.initial().size())
    return count("initial places", a.initial().size(), b.initial().size());

  auto labels = [](const Net& n, const std::set<std::string>& nodes) {
    std::map<Label, std::size_t> h;
    for (const auto& x : nodes) ++h[n.label(x)];
    return h;
  };
  if (auto d = compare_histograms(labels(a, a.places()), labels(b, b.places()), "places");
      !d.empty())
    return d;
  if (auto d = compare_histograms(labels(a, a.transitions()), labels(b, b.transitions()),
                                  "transitions");
      !d.empty())
    return d;

  std::map<std::tuple<bool, Label, std::string, bool>, int> palette;
  Graph ga = make_graph(a, {}, palette);
  Graph gb = make_graph(b, {}, palette);
  refine(ga, gb);
  const auto ha = histogram(ga);
  const auto hb = histogram(gb);
  if (ha != hb) {
    for (std::size_t v = 0; v < ga.names.size(); ++v) {
      const int c = ga.colour[v];
      if (!hb.contains(c) || hb.at(c) != ha.at(c)) {
        return "no counterpart with the same neighbourhood for " + ga.names[v] + " (label " +
               a.label(ga.names[v]) + ")";
      }
    }
    for (std::size_t v = 0; v < gb.names.size(); ++v) {
      const int c = gb.colour[v];
      if (!ha.contains(c)) {
        return "no counterpart with the same neighbourhood for " + gb.names[v] + " (label " +
               b.label(gb.names[v]) + ")";
      }
    }
  }
  if (!search(ga, gb)) return "no bijection preserves the flow";
  return {};
}

Verdict check_iso(const Net& a, const Net& b, const LabeledIso& iso) {
  Verdict v;
  auto bijective = [&](const auto& map, const auto& from, const auto& to, const char* what) {
    std::set<std::string> image;
    for (const auto& x : from) {
      auto it = map.find(x);
      if (it == map.end()) {
        v.add("bijection", std::string(what) + " " + x + " is not mapped");
      } else if (!to.contains(it->second) || !image.insert(it->second).second) {
        v.add("bijection", std::string(what) + " " + x + " has a bad image " + it->second);
      }
    }
    if (map.size() != from.size() || image.size() != to.size()) {
      v.add("bijection", std::string(what) + " counts differ");
    }
  };
  bijective(iso.places, a.places(), b.places(), "place");
  bijective(iso.transitions, a.transitions(), b.transitions(), "transition");
  if (!v.ok()) return v;

  auto image = [&](const std::string& x) {
    auto p = iso.places.find(x);
    return p != iso.places.end() ? p->second : iso.transitions.at(x);
  };
  for (const auto& [x, l] : a.labels()) {
    if (b.label(image(x)) != l) v.add("label", x + " -> " + image(x));
  }
  for (const auto& p : a.places()) {
    if (a.initial().contains(p) != b.initial().contains(image(p))) {
      v.add("initial", p + " -> " + image(p));
    }
  }
  std::set<std::pair<std::string, std::string>> mapped;
  for (const auto& [x, y] : a.flow()) mapped.emplace(image(x), image(y));
  const auto target = b.flow();
  if (mapped != std::set<std::pair<std::string, std::string>>(target.begin(), target.end())) {
    v.add("flow", "arcs are not mapped onto arcs");
  }
  return v;
}

}  // namespace spreadnet
