#include "fixtures.hpp"

#include <algorithm>
#include <deque>

#ifndef SPREADNET_DATA_DIR
#error "SPREADNET_DATA_DIR must point at the data directory"
#endif

namespace spreadnet::testing {

std::filesystem::path data_dir() { return SPREADNET_DATA_DIR; }

McNet running_example() { return parse_net(read_file(data_dir() / "running-example.net.json")); }

ModeSpec running_example_mode() {
  return parse_mode(read_file(data_dir() / "running-example.mode.json"));
}

McNet running_example_left() {
  const auto automaton = components(running_example()).at(0);
  std::map<PlaceId, PlaceId> nu;
  for (const auto& p : automaton.net.places()) nu[p] = "a";
  return McNet(automaton.net, nu);
}

McNet random_mcnet(std::mt19937& rng, const RandomNetOptions& options) {
  const std::size_t k = options.components;
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };

  const std::size_t total = pick(k, std::max(k, options.max_places));
  std::vector<std::vector<PlaceId>> blocks(k);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t c = i < k ? i : pick(0, k - 1);
    blocks[c].push_back("p" + std::to_string(i));
  }

  NetBuilder b;
  std::map<PlaceId, PlaceId> nu;
  for (const auto& block : blocks) {
    for (const auto& p : block) {
      b.place(p);
      nu[p] = block.front();
    }
    b.mark(block.front());
  }

  const std::size_t transitions = pick(1, options.max_transitions);
  std::bernoulli_distribution sync(options.sync_probability);
  for (std::size_t n = 0; n < transitions; ++n) {
    std::vector<std::size_t> comps(k);
    for (std::size_t i = 0; i < k; ++i) comps[i] = i;
    std::shuffle(comps.begin(), comps.end(), rng);
    comps.resize(k >= 2 && sync(rng) ? 2 : 1);
    std::vector<PlaceId> pre, post;
    for (const auto c : comps) {
      pre.push_back(blocks[c][pick(0, blocks[c].size() - 1)]);
      post.push_back(blocks[c][pick(0, blocks[c].size() - 1)]);
    }
    b.transition("t" + std::to_string(n), pre, post);
  }
  return McNet(b.build(), std::move(nu));
}

McNet trim_to_reachable(const McNet& mc) {
  const Net& net = mc.net();
  const auto reach = reachable_markings(net, 1'000'000);
  std::set<PlaceId> places;
  std::set<TransId> transitions;
  for (const auto& m : reach.markings) places.insert(m.begin(), m.end());
  for (const auto& step : reach.steps) transitions.insert(step.transition);

  NetBuilder b;
  std::map<PlaceId, PlaceId> nu;
  for (const auto& p : places) {
    b.place(p, net.label(p));
    nu[p] = mc.nu().at(p);
  }
  for (const auto& t : transitions) {
    b.transition(t, {net.pre(t).begin(), net.pre(t).end()},
                 {net.post(t).begin(), net.post(t).end()}, net.label(t));
  }
  for (const auto& p : net.initial()) b.mark(p);
  return McNet(b.build(), std::move(nu));
}

std::size_t TableDomain::run(const Word& w) const {
  std::size_t q = 0;
  for (const auto& a : w) q = delta.at(q).at(a);
  return q;
}

TableDomain random_table_domain(std::mt19937& rng, const std::set<Letter>& alphabet,
                                std::size_t max_states) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
  std::vector<std::map<Letter, std::size_t>> raw(n);
  for (auto& row : raw) {
    for (const auto& a : alphabet) row[a] = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  // Renumber the reachable states in breadth-first order; with letters in
  // sorted order the first word found for a state is its least shortest one.
  std::vector<std::size_t> index(n, n);
  std::vector<std::size_t> order{0};
  std::vector<Word> rep{{}};
  index[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& [a, q1] : raw[order[head]]) {
      if (index[q1] != n) continue;
      index[q1] = order.size();
      order.push_back(q1);
      Word w = rep[head];
      w.push_back(a);
      rep.push_back(std::move(w));
    }
  }

  TableDomain d;
  d.alphabet = alphabet;
  d.rep = rep;
  d.delta.resize(order.size());
  std::size_t longest = 0;
  for (std::size_t q = 0; q < order.size(); ++q) {
    longest = std::max(longest, rep[q].size());
    for (const auto& [a, q1] : raw[order[q]]) d.delta[q][a] = index[q1];
  }
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (const auto& [a, q1] : d.delta[q]) {
      Word lhs = rep[q];
      lhs.push_back(a);
      if (lhs != rep[q1]) d.equations.push_back({lhs, rep[q1]});
    }
  }
  d.max_word_len = longest + 1;
  return d;
}

RandomCustomMode random_custom_mode(std::mt19937& rng, const McNet& mc, std::size_t max_states) {
  static constexpr TickingMap::Kind kTaus[] = {TickingMap::Kind::AppendIfInAlphabet,
                                               TickingMap::Kind::AppendLocalResetOthers,
                                               TickingMap::Kind::ConstantEps};
  RandomCustomMode out;
  out.mode.kind = ModeKind::Custom;
  for (std::size_t i = 0; i < mc.dimension(); ++i) {
    auto table = random_table_domain(rng, component_alphabet(mc, i), max_states);
    ComponentSpec spec;
    spec.component = mc.head(i);
    spec.alphabet = table.alphabet;
    spec.equations = table.equations;
    spec.max_word_len = table.max_word_len;
    spec.tau = kTaus[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
    out.mode.components.push_back(std::move(spec));
    out.tables.push_back(std::move(table));
  }
  return out;
}

std::vector<Word> all_words(const std::set<Letter>& alphabet, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t layer_start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_start; i < layer_end; ++i) {
      for (const auto& a : alphabet) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    layer_start = layer_end;
  }
  return out;
}

std::map<Word, Word> brute_force_classes(const std::set<Letter>& alphabet,
                                         const std::vector<Equation>& equations,
                                         std::size_t max_len) {
  const auto words = all_words(alphabet, max_len);
  const std::size_t n = words.size();
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[words[i]] = i;

  std::vector<char> rel(n * n, 0);
  auto at = [&](std::size_t i, std::size_t j) -> char& { return rel[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) at(i, i) = 1;
  for (const auto& eq : equations) {
    at(index.at(eq.lhs), index.at(eq.rhs)) = 1;
    at(index.at(eq.rhs), index.at(eq.lhs)) = 1;
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!at(i, k)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (at(k, j) && !at(i, j)) {
            at(i, j) = 1;
            changed = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (words[i].size() >= max_len) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!at(i, j) || words[j].size() >= max_len) continue;
        for (const auto& a : alphabet) {
          Word u = words[i], v = words[j];
          u.push_back(a);
          v.push_back(a);
          const auto x = index.at(u), y = index.at(v);
          if (!at(x, y)) {
            at(x, y) = at(y, x) = 1;
            changed = true;
          }
        }
      }
    }
  }

  std::map<Word, Word> least;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j)) {
        least[words[i]] = words[j];
        break;
      }
    }
  }
  return least;
}

Verdict check_domain_laws(const TickingDomain& d) {
  Verdict v;
  const std::size_t bound = d.max_word_len();
  std::map<Word, std::vector<Word>> classes;
  for (const auto& w : all_words(d.alphabet(), bound)) {
    const Word c = d.canonical(w);
    if (d.canonical(c) != c) v.add("idempotent", to_string(w));
    classes[c].push_back(w);
  }
  for (const auto& [rep, members] : classes) {
    // all_words lists shortest first, then lexicographic.
    if (members.front() != rep) {
      v.add("representative", to_string(rep) + " but " + to_string(members.front()));
    }
    for (const auto& a : d.alphabet()) {
      std::set<Word> images;
      for (const auto& m : members) {
        if (m.size() >= bound) continue;
        Word ext = m;
        ext.push_back(a);
        images.insert(d.canonical(ext));
      }
      if (images.size() > 1) v.add("suffix", "[" + to_string(rep) + "]·" + a);
    }
  }
  for (const auto& eq : d.equations()) {
    if (!d.same_class(eq.lhs, eq.rhs)) {
      v.add("equation", to_string(eq.lhs) + " = " + to_string(eq.rhs));
    }
  }
  return v;
}

Word word(std::string_view text) { return decode_word(text); }

VectorClock clock(std::initializer_list<std::string_view> entries) {
  VectorClock c;
  for (const auto e : entries) c.entries.push_back(decode_word(e));
  return c;
}

NodeTags clock_tags(const SpreadNet& s) {
  NodeTags tags;
  for (const auto& [p, c] : s.h) tags[p] = to_string(s.vcd.canonical(c));
  return tags;
}

}  // namespace spreadnet::testing
