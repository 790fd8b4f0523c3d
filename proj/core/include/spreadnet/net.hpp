#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spreadnet/error.hpp"

namespace spreadnet {

using PlaceId = std::string;
using TransId = std::string;
using Label = std::string;

// Safe nets only: a marking is the set of marked places.
using Marking = std::set<PlaceId>;

// A labeled safe Petri net. Instances are built (and validated) through
// NetBuilder and are immutable afterwards.
//
// Invariants enforced at build time:
//   * place and transition ids are disjoint,
//   * every transition has a non-empty preset and postset,
//   * the initial marking only mentions places,
//   * labels are total (a missing label defaults to the node id).
class Net {
 public:
  Net() = default;

  const std::set<PlaceId>& places() const { return places_; }
  const std::set<TransId>& transitions() const { return transitions_; }
  const Marking& initial() const { return initial_; }

  bool has_place(const PlaceId& p) const { return places_.contains(p); }
  bool has_transition(const TransId& t) const { return transitions_.contains(t); }

  // •t and t•
  const std::set<PlaceId>& pre(const TransId& t) const;
  const std::set<PlaceId>& post(const TransId& t) const;
  // •p and p•
  const std::set<TransId>& producers(const PlaceId& p) const;
  const std::set<TransId>& consumers(const PlaceId& p) const;

  const Label& label(const std::string& node) const;
  const std::map<std::string, Label>& labels() const { return labels_; }

  std::size_t arc_count() const;
  // All arcs as (source, target) pairs, sorted.
  std::vector<std::pair<std::string, std::string>> flow() const;

  bool operator==(const Net&) const = default;

 private:
  friend class NetBuilder;

  std::set<PlaceId> places_;
  std::set<TransId> transitions_;
  std::map<TransId, std::set<PlaceId>> pre_;
  std::map<TransId, std::set<PlaceId>> post_;
  std::map<PlaceId, std::set<TransId>> producers_;
  std::map<PlaceId, std::set<TransId>> consumers_;
  Marking initial_;
  std::map<std::string, Label> labels_;
};

class NetBuilder {
 public:
  NetBuilder& place(PlaceId id, std::optional<Label> label = std::nullopt);
  NetBuilder& transition(TransId id, std::vector<PlaceId> pre,
                         std::vector<PlaceId> post,
                         std::optional<Label> label = std::nullopt);
  NetBuilder& mark(PlaceId id);

  // Throws Error(InvalidNet) when an invariant of Net does not hold.
  Net build() const;

 private:
  struct PendingTransition {
    TransId id;
    std::vector<PlaceId> pre;
    std::vector<PlaceId> post;
    std::optional<Label> label;
  };
  std::vector<std::pair<PlaceId, std::optional<Label>>> places_;
  std::vector<PendingTransition> transitions_;
  std::vector<PlaceId> initial_;
};

// Transitions whose preset is contained in m.
std::set<TransId> enabled(const Net& net, const Marking& m);

// m - •t + t•. Throws NotEnabled, or UnsafeFiring when a post place of t
// already holds a token that t does not consume.
Marking fire(const Net& net, const Marking& m, const TransId& t);

struct FiringStep {
  Marking from;
  TransId transition;
  Marking to;
};

struct Reachability {
  std::set<Marking> markings;
  std::vector<FiringStep> steps;
  // True when the closure was complete before the bound was reached.
  bool saturated = false;
};

// Breadth-first closure of the initial marking over firing sequences of
// length at most `bound`. Throws UnsafeNet when a firing violates 1-safety.
Reachability reachable_markings(const Net& net, std::size_t bound);

// A configuration is represented by the firing sequence that produces it;
// its marking is read off the last marking of the sequence.
struct FiringSequence {
  std::vector<TransId> steps;
  std::vector<Marking> markings;

  const Marking& mark() const { return markings.back(); }
  // The multiset of fired transitions.
  std::map<TransId, std::size_t> configuration() const;
};

FiringSequence replay(const Net& net, std::span<const TransId> steps);

// φ = (φ_T, φ_P, φ_ℓ): a partial transition map, a place relation and a
// label map.
struct NetMorphism {
  std::map<TransId, TransId> trans_map;
  std::set<std::pair<PlaceId, PlaceId>> place_rel;
  std::map<Label, Label> label_map;

  std::optional<TransId> map_transition(const TransId& t) const;
  // φ_P(m): all places related to some place of m.
  Marking image(const Marking& m) const;
  // Places p' with p φ_P p'.
  std::set<PlaceId> related(const PlaceId& p) const;

  bool operator==(const NetMorphism&) const = default;
};

NetMorphism identity_morphism(const Net& net);

// Apply f, then g.
NetMorphism compose(const NetMorphism& f, const NetMorphism& g);

// Checks every condition of a safe-net morphism and collects violations:
// "initial" (unique initial preimage), "place-pre"/"place-post" (φ_T total
// on •p → •p' and p• → p'•), "trans-pre"/"trans-post" (φ_P^op total
// function on •t' → •t and t'• → t•), "label", and "domain" for ids that do
// not exist in the nets.
Verdict check_net_morphism(const Net& src, const Net& dst, const NetMorphism& f);

// Replays every step m -t-> m' found within `bound` through f and checks
// φ_P(m) -φ_T(t)-> φ_P(m') in dst whenever φ_T(t) is defined.
Verdict morphism_preserves_markings(const Net& src, const Net& dst,
                                    const NetMorphism& f, std::size_t bound);

std::string to_string(const Marking& m);

}  // namespace spreadnet
