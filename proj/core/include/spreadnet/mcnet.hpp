#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "spreadnet/net.hpp"

namespace spreadnet {

// A multi-clock net: a safe net plus ν, which sends every place to the
// initial place heading its sequential component.
//
// Components are indexed 0..dimension()-1 in ascending order of their
// initial place id; that order fixes the entry order of vector clocks.
class McNet {
 public:
  McNet() = default;
  McNet(Net net, std::map<PlaceId, PlaceId> nu);

  const Net& net() const { return net_; }
  const std::map<PlaceId, PlaceId>& nu() const { return nu_; }

  std::size_t dimension() const { return heads_.size(); }
  // Initial place of component i.
  const PlaceId& head(std::size_t i) const { return heads_.at(i); }
  const std::vector<PlaceId>& heads() const { return heads_; }

  // Component index of a place; throws NotAnMcNet when ν is undefined on it
  // or points outside the initial marking.
  std::size_t component_of(const PlaceId& p) const;
  // ν(•t) as component indices.
  std::set<std::size_t> components_of(const TransId& t) const;

  std::set<PlaceId> block(std::size_t i) const;
  // T_i: transitions with a pre and a post place inside block i.
  std::set<TransId> component_transitions(std::size_t i) const;

  bool operator==(const McNet&) const = default;

 private:
  Net net_;
  std::map<PlaceId, PlaceId> nu_;
  std::vector<PlaceId> heads_;
  std::map<PlaceId, std::size_t> index_;
};

// Checks the conditions on ν: "cover" (the preimages of initial places
// partition the places; disjointness holds because ν is a map), "identity"
// (ν is the identity on the initial marking), and per transition
// "injective-pre", "injective-post" and "balanced" (ν(•t) = ν(t•)).
// "range" flags ν values outside the initial marking.
Verdict validate_mcnet(const McNet& candidate);

// validate_mcnet, throwing NotAnMcNet with the violation list.
void require_mcnet(const McNet& candidate);

// One sequential automaton of an mc-net.
struct ComponentAutomaton {
  std::size_t index = 0;
  Net net;
};

std::vector<ComponentAutomaton> components(const McNet& mc);

// Union of the automata, identifying transitions with equal ids.
Net recompose(const std::vector<ComponentAutomaton>& automata);

// check_net_morphism plus partition preservation ("partition"):
// p φ_P p' implies ν(p) φ_P ν'(p').
Verdict check_mcn_morphism(const McNet& src, const McNet& dst,
                           const NetMorphism& f);

}  // namespace spreadnet
