#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spreadnet/mcnet.hpp"
#include "spreadnet/ticking.hpp"

namespace spreadnet {

// An mc-net over a vector-clock domain. The support's labels are the ids of
// the original net's places and transitions; h annotates every place.
struct SpreadNet {
  McNet mc;
  VectorClockDomain vcd;
  std::map<PlaceId, VectorClock> h;
  std::vector<TickingMap> taus;

  const Net& support() const { return mc.net(); }
  const Label& original(const std::string& node) const { return mc.net().label(node); }
};

struct FoldingMorphism {
  std::map<PlaceId, PlaceId> place_map;
  std::map<TransId, TransId> trans_map;

  // The induced net morphism. Support labels are original node ids, so
  // the label map sends each of them to that node's label in dst.
  NetMorphism as_net_morphism(const Net& support, const Net& dst) const;

  bool operator==(const FoldingMorphism&) const = default;
};

enum class DepthMeasure {
  Causal,     // 1 + deepest preset place; initial places have depth 0
  LocalTime,  // length of the own-component clock entry of the post places
};

struct SpreadBounds {
  std::size_t max_events = 10000;
  std::optional<std::size_t> max_depth;
  DepthMeasure depth_measure = DepthMeasure::Causal;
};

struct SpreadResult {
  SpreadNet net;
  FoldingMorphism folding;
  bool saturated = false;
};

// Saturates the input mc-net into a spread net. Reachable markings of the
// output are explored breadth first; each enabled input transition gets one
// output transition per distinct preset, and post places are shared
// globally by (original, clock).
//
// Place ids are "original" followed by the clock ("b(s,ε)"), transition ids
// "image{sorted preset ids joined by ;}".
//
// Throws DimensionMismatch, NonInjectiveInputLabels, NotAnMcNet, UnsafeNet,
// and any domain error raised by canonical() or tick().
SpreadResult spread(const McNet& input, const VectorClockDomain& vcd,
                    const std::vector<TickingMap>& taus, const SpreadBounds& bounds = {});

std::string place_id(const PlaceId& original, const VectorClock& clock);

// Rules: "dimension", "h-total", "axiom-1" (initial clocks are ε),
// "axiom-2" (label and clock identify a place), "axiom-3" (every post clock
// is the tick of the mixed preset clocks).
Verdict validate_spread(const SpreadNet& s);

// "total" and "economy" on top of check_mcn_morphism for the induced map.
Verdict check_folding(const McNet& support, const McNet& dst, const FoldingMorphism& f);

using ClockMap = std::function<VectorClock(const VectorClock&)>;

// f = (φ, δ). The fingerprints pin the source and target nets so that
// composition can refuse mismatched endpoints; empty means unpinned.
struct SpreadMorphism {
  NetMorphism base;
  ClockMap delta;
  std::string source;
  std::string target;
};

// Stable digest of ids, labels, flow, initial marking and clocks.
std::string fingerprint(const SpreadNet& s);

SpreadMorphism identity_spread_morphism(const SpreadNet& s);

// Rules: "endpoints", the check_mcn_morphism rules, "delta-class" (δ sends
// class members of every clock in src to one class), "tau" (ticking
// commutes with δ on every clock in src), "h" (δ(h(p)) = h'(p') on related
// places).
Verdict check_spread_morphism(const SpreadNet& src, const SpreadNet& dst,
                              const SpreadMorphism& f);

// Apply f, then g. Throws NotComposable when f.target != g.source.
SpreadMorphism compose_spread_morphisms(const SpreadMorphism& f, const SpreadMorphism& g);

}  // namespace spreadnet
