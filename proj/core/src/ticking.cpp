#include "spreadnet/ticking.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace spreadnet {

std::string encode_word(const Word& w) {
  const bool short_letters =
      std::all_of(w.begin(), w.end(), [](const Letter& a) { return a.size() == 1; });
  std::string out;
  for (const auto& a : w) {
    if (!short_letters && !out.empty()) out += '.';
    out += a;
  }
  return out;
}

Word decode_word(std::string_view text) {
  Word w;
  if (text.empty()) return w;
  if (text.find('.') == std::string_view::npos) {
    for (char c : text) w.emplace_back(1, c);
    return w;
  }
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    w.emplace_back(text.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return w;
}

std::string to_string(const Word& w) { return w.empty() ? "ε" : encode_word(w); }

std::string to_string(const VectorClock& clock) {
  std::string out = "(";
  for (std::size_t i = 0; i < clock.entries.size(); ++i) {
    if (i) out += ',';
    out += to_string(clock.entries[i]);
  }
  return out + ")";
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The root of a class is always its smallest index.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TickingDomain TickingDomain::free(std::set<Letter> alphabet) {
  TickingDomain d;
  d.kind_ = Kind::Free;
  d.alphabet_ = std::move(alphabet);
  d.letters_.assign(d.alphabet_.begin(), d.alphabet_.end());
  return d;
}

TickingDomain TickingDomain::trellis(const ComponentAutomaton& automaton) {
  TickingDomain d;
  d.kind_ = Kind::TrellisOf;
  const Net& net = automaton.net;
  if (net.initial().size() != 1) {
    throw Error(ErrorCode::NotAnMcNet, "a component automaton has exactly one initial place");
  }
  d.start_ = *net.initial().begin();
  for (const auto& t : net.transitions()) {
    if (net.pre(t).size() != 1 || net.post(t).size() != 1) {
      throw Error(ErrorCode::NotAnMcNet,
                  "transition " + t + " of a component automaton is not 1-in/1-out");
    }
    const Label& a = net.label(t);
    const PlaceId& from = *net.pre(t).begin();
    if (!d.moves_[from].emplace(a, *net.post(t).begin()).second) {
      throw Error(ErrorCode::NonInjectiveInputLabels,
                  "two transitions labeled " + a + " leave " + from);
    }
    d.alphabet_.insert(a);
  }
  d.letters_.assign(d.alphabet_.begin(), d.alphabet_.end());
  return d;
}

TickingDomain TickingDomain::finite_equations(std::set<Letter> alphabet,
                                              std::vector<Equation> equations,
                                              std::size_t max_word_len) {
  TickingDomain d;
  d.kind_ = Kind::FiniteEquations;
  d.alphabet_ = std::move(alphabet);
  d.letters_.assign(d.alphabet_.begin(), d.alphabet_.end());
  for (std::size_t i = 0; i < d.letters_.size(); ++i) d.letter_index_[d.letters_[i]] = i;
  d.max_len_ = max_word_len;
  d.equations_ = std::move(equations);

  const std::size_t k = d.letters_.size();
  d.offsets_.push_back(0);
  std::size_t layer = 1;
  for (std::size_t len = 0; len <= max_word_len; ++len) {
    d.offsets_.push_back(d.offsets_.back() + layer);
    layer *= k;
  }
  const std::size_t total = d.offsets_.back();

  UnionFind uf(total);
  for (const auto& eq : d.equations_) {
    uf.unite(d.index_of(eq.lhs), d.index_of(eq.rhs));
  }

  // Suffix closure. Words shorter than the bound that share a class get
  // their one-letter extensions merged, repeated until nothing changes.
  bool changed = true;
  while (changed && k > 0) {
    changed = false;
    std::vector<std::size_t> first(total, total);
    for (std::size_t len = 0; len < max_word_len; ++len) {
      for (std::size_t i = d.offsets_[len]; i < d.offsets_[len + 1]; ++i) {
        const std::size_t root = uf.find(i);
        if (first[root] == total) {
          first[root] = i;
          continue;
        }
        const std::size_t other = first[root];
        const std::size_t other_len =
            static_cast<std::size_t>(std::upper_bound(d.offsets_.begin(), d.offsets_.end(), other) -
                                     d.offsets_.begin()) - 1;
        const std::size_t rank = i - d.offsets_[len];
        const std::size_t other_rank = other - d.offsets_[other_len];
        for (std::size_t a = 0; a < k; ++a) {
          const std::size_t ext = d.offsets_[len + 1] + rank * k + a;
          const std::size_t other_ext = d.offsets_[other_len + 1] + other_rank * k + a;
          changed |= uf.unite(ext, other_ext);
        }
      }
    }
  }

  d.canonical_.resize(total);
  for (std::size_t i = 0; i < total; ++i) d.canonical_[i] = uf.find(i);
  return d;
}

void TickingDomain::check_letters(const Word& w) const {
  for (const auto& a : w) {
    if (!alphabet_.contains(a)) {
      throw Error(ErrorCode::LetterOutsideAlphabet,
                  "letter '" + a + "' in " + to_string(w));
    }
  }
}

std::size_t TickingDomain::index_of(const Word& w) const {
  check_letters(w);
  if (w.size() > max_len_) {
    throw Error(ErrorCode::WordTooLong, to_string(w) + " exceeds the bound " +
                                            std::to_string(max_len_));
  }
  std::size_t rank = 0;
  for (const auto& a : w) rank = rank * letters_.size() + letter_index_.at(a);
  return offsets_[w.size()] + rank;
}

Word TickingDomain::word_at(std::size_t index) const {
  std::size_t len = 0;
  while (offsets_[len + 1] <= index) ++len;
  std::size_t rank = index - offsets_[len];
  Word w(len);
  for (std::size_t pos = len; pos-- > 0;) {
    w[pos] = letters_[rank % letters_.size()];
    rank /= letters_.size();
  }
  return w;
}

PlaceId TickingDomain::target(const Word& w) const {
  if (kind_ != Kind::TrellisOf) {
    throw Error(ErrorCode::NotARun, "target() needs a trellis domain");
  }
  check_letters(w);
  PlaceId q = start_;
  for (const auto& a : w) {
    auto from = moves_.find(q);
    if (from == moves_.end() || !from->second.contains(a)) {
      throw Error(ErrorCode::NotARun, to_string(w) + " is not a run from " + start_);
    }
    q = from->second.at(a);
  }
  return q;
}

namespace {

// layers[r]: places that reach `goal` in exactly r steps.
std::vector<std::set<PlaceId>> backward_layers(
    const std::map<PlaceId, std::map<Letter, PlaceId>>& moves,
    const PlaceId& goal, std::size_t n) {
  std::vector<std::set<PlaceId>> layers(n + 1);
  layers[0] = {goal};
  for (std::size_t r = 1; r <= n; ++r) {
    for (const auto& [q, out] : moves) {
      for (const auto& [a, q1] : out) {
        if (layers[r - 1].contains(q1)) {
          layers[r].insert(q);
          break;
        }
      }
    }
  }
  return layers;
}

}  // namespace

Word TickingDomain::canonical(const Word& w) const {
  switch (kind_) {
    case Kind::Free:
      check_letters(w);
      return w;
    case Kind::FiniteEquations:
      return word_at(canonical_[index_of(w)]);
    case Kind::TrellisOf: {
      const PlaceId goal = target(w);
      const auto layers = backward_layers(moves_, goal, w.size());
      Word out;
      PlaceId q = start_;
      for (std::size_t j = 0; j < w.size(); ++j) {
        const auto& need = layers[w.size() - j - 1];
        // Per-place moves are keyed by letter, so the first hit is the least.
        for (const auto& [a, q1] : moves_.at(q)) {
          if (need.contains(q1)) {
            out.push_back(a);
            q = q1;
            break;
          }
        }
      }
      return out;
    }
  }
  return w;
}

bool TickingDomain::same_class(const Word& u, const Word& v) const {
  return canonical(u) == canonical(v);
}

std::vector<Word> TickingDomain::class_members(const Word& w, std::size_t limit) const {
  std::vector<Word> out;
  switch (kind_) {
    case Kind::Free:
      check_letters(w);
      out.push_back(w);
      break;
    case Kind::FiniteEquations: {
      const std::size_t rep = canonical_[index_of(w)];
      for (std::size_t i = 0; i < canonical_.size() && out.size() < limit; ++i) {
        if (canonical_[i] == rep) out.push_back(word_at(i));
      }
      break;
    }
    case Kind::TrellisOf: {
      const PlaceId goal = target(w);
      const auto layers = backward_layers(moves_, goal, w.size());
      Word prefix;
      std::function<void(const PlaceId&)> walk = [&](const PlaceId& q) {
        if (out.size() >= limit) return;
        if (prefix.size() == w.size()) {
          out.push_back(prefix);
          return;
        }
        auto from = moves_.find(q);
        if (from == moves_.end()) return;
        for (const auto& [a, q1] : from->second) {
          if (!layers[w.size() - prefix.size() - 1].contains(q1)) continue;
          prefix.push_back(a);
          walk(q1);
          prefix.pop_back();
        }
      };
      walk(start_);
      break;
    }
  }
  return out;
}

std::vector<Word> TickingDomain::representatives() const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < canonical_.size(); ++i) {
    if (canonical_[i] == i) out.push_back(word_at(i));
  }
  return out;
}

VectorClock VectorClockDomain::epsilon() const {
  return VectorClock{std::vector<Word>(dimension())};
}

VectorClock VectorClockDomain::canonical(const VectorClock& clock) const {
  if (clock.dimension() != dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "clock " + to_string(clock) + " in a domain of dimension " +
                    std::to_string(dimension()));
  }
  VectorClock out;
  out.entries.reserve(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    out.entries.push_back(domains_[i].canonical(clock.entries[i]));
  }
  return out;
}

bool VectorClockDomain::same_class(const VectorClock& a, const VectorClock& b) const {
  return canonical(a) == canonical(b);
}

VectorClock op_mix(const VectorClockDomain& vcd,
                   const std::map<std::size_t, VectorClock>& gamma,
                   const std::set<std::size_t>& J, std::size_t k) {
  if (!J.contains(k)) {
    throw Error(ErrorCode::KNotInJ, "k=" + std::to_string(k) + " is not in J");
  }
  for (const auto j : J) {
    if (!gamma.contains(j)) {
      throw Error(ErrorCode::MissingClock, "no clock for index " + std::to_string(j));
    }
  }
  for (const auto& [j, clock] : gamma) {
    if (!J.contains(j)) {
      throw Error(ErrorCode::MissingClock,
                  "clock supplied for index " + std::to_string(j) + " outside J");
    }
    if (clock.dimension() != vcd.dimension()) {
      throw Error(ErrorCode::DimensionMismatch, "clock " + to_string(clock));
    }
  }
  VectorClock out;
  out.entries.reserve(vcd.dimension());
  for (std::size_t i = 0; i < vcd.dimension(); ++i) {
    const auto& source = J.contains(i) ? gamma.at(i) : gamma.at(k);
    out.entries.push_back(source.entries[i]);
  }
  return vcd.canonical(out);
}

TickingMap TickingMap::append_if_in_alphabet(std::size_t component) {
  return {Kind::AppendIfInAlphabet, component, {}};
}
TickingMap TickingMap::append_local_reset_others(std::size_t component) {
  return {Kind::AppendLocalResetOthers, component, {}};
}
TickingMap TickingMap::constant_eps(std::size_t component) {
  return {Kind::ConstantEps, component, {}};
}
TickingMap TickingMap::custom_table(
    std::size_t component, std::map<std::pair<VectorClock, TransId>, VectorClock> table) {
  return {Kind::CustomTable, component, std::move(table)};
}

std::string_view to_string(TickingMap::Kind kind) {
  switch (kind) {
    case TickingMap::Kind::AppendIfInAlphabet: return "append-matching";
    case TickingMap::Kind::AppendLocalResetOthers: return "append-local-reset";
    case TickingMap::Kind::ConstantEps: return "constant-eps";
    case TickingMap::Kind::CustomTable: return "custom-table";
  }
  return "unknown";
}

VectorClock tick(const TickingMap& tau, const VectorClockDomain& vcd,
                 const VectorClock& alpha, const TransId& t, const Label& label) {
  switch (tau.kind) {
    case TickingMap::Kind::ConstantEps:
      return vcd.epsilon();
    case TickingMap::Kind::CustomTable: {
      auto it = tau.table.find({vcd.canonical(alpha), t});
      if (it == tau.table.end()) {
        throw Error(ErrorCode::TableMiss, "no entry for " + to_string(alpha) + ", " + t);
      }
      return vcd.canonical(it->second);
    }
    case TickingMap::Kind::AppendIfInAlphabet: {
      VectorClock out = vcd.canonical(alpha);
      for (std::size_t i = 0; i < vcd.dimension(); ++i) {
        if (vcd.domain(i).contains(label)) out.entries[i].push_back(label);
      }
      return vcd.canonical(out);
    }
    case TickingMap::Kind::AppendLocalResetOthers: {
      if (tau.component >= vcd.dimension()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "ticking map for component " + std::to_string(tau.component));
      }
      const auto& own = vcd.domain(tau.component);
      if (!own.contains(label)) {
        throw Error(ErrorCode::LetterOutsideAlphabet,
                    "'" + label + "' is not in the alphabet of component " +
                        std::to_string(tau.component));
      }
      VectorClock out = vcd.epsilon();
      out.entries[tau.component] = own.canonical(alpha.entries.at(tau.component));
      out.entries[tau.component].push_back(label);
      return vcd.canonical(out);
    }
  }
  return alpha;
}

}  // namespace spreadnet
