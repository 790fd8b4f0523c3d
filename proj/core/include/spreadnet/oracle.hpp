#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "spreadnet/mcnet.hpp"

namespace spreadnet {

// Reference constructions used to cross-check spreading. Neither shares
// code with spread(): the unfolder keys events on causal pasts, the trellis
// builder on (place, local time) pairs.

// Branching-process prefix by possible extensions, without cut-offs.
// Conditions are "c<i>", events "e<i>", both labeled by the original node.
// An event's depth is 1 + the deepest event in its preset's history;
// events deeper than max_depth are not added.
Net unfold_bp_oracle(const McNet& mc, std::size_t max_depth);

// Trellis prefix: one node per (place, local time) reachable together,
// one event per (transition, preset nodes). Node ids are "place@time";
// events whose post nodes pass max_height are not added.
Net trellis_oracle(const McNet& mc, std::size_t max_height);

struct LabeledIso {
  std::map<PlaceId, PlaceId> places;
  std::map<TransId, TransId> transitions;
};

// Extra per-node data an isomorphism must preserve, e.g. clocks.
using NodeTags = std::map<std::string, std::string>;

// A bijection preserving labels, flow, the initial marking and tags.
// Colour refinement narrows candidates before backtracking.
std::optional<LabeledIso> isomorphic(const Net& a, const Net& b);
std::optional<LabeledIso> isomorphic(const Net& a, const NodeTags& tags_a, const Net& b,
                                     const NodeTags& tags_b);

// Human-readable first difference between two nets; empty when isomorphic.
std::string first_discrepancy(const Net& a, const Net& b);

// Rules "bijection", "label", "initial", "flow".
Verdict check_iso(const Net& a, const Net& b, const LabeledIso& iso);

}  // namespace spreadnet
