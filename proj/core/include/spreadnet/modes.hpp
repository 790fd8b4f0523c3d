#pragma once

#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "spreadnet/spread.hpp"

namespace spreadnet {

enum class ModeKind { BP, Trellis, Trivial, Custom };

std::string_view to_string(ModeKind kind);

// Domain and ticking map of one component in a custom mode.
struct ComponentSpec {
  // Initial place heading the component; when absent, specs are matched to
  // components by position.
  std::optional<PlaceId> component;
  // Defaults to the component's transition labels and must include them.
  std::optional<std::set<Letter>> alphabet;
  std::vector<Equation> equations;
  std::size_t max_word_len = 0;
  TickingMap::Kind tau = TickingMap::Kind::AppendIfInAlphabet;
};

struct ModeSpec {
  ModeKind kind = ModeKind::BP;
  std::vector<ComponentSpec> components;  // Custom only
  std::size_t max_events = 10000;
  std::optional<std::size_t> max_depth;
  // Causal for BP, local time for Trellis, unless given.
  std::optional<DepthMeasure> depth_measure;

  static ModeSpec bp(std::optional<std::size_t> max_depth);
  static ModeSpec trellis(std::optional<std::size_t> max_height);
  static ModeSpec trivial();

  SpreadBounds bounds() const;
};

// BP: free domains over each component's labels, append-matching ticks.
// Trellis: the trellis domain of each component automaton, local ticks that
// reset the other entries. Trivial: one class per component, constant ε.
// Custom: finite-equation domains with the listed ticking maps.
//
// Throws DimensionMismatch and MalformedMode.
std::pair<VectorClockDomain, std::vector<TickingMap>> instantiate(const ModeSpec& mode,
                                                                  const McNet& mc);

SpreadResult spread_with_mode(const McNet& mc, const ModeSpec& mode);

// Transition labels of component i.
std::set<Letter> component_alphabet(const McNet& mc, std::size_t i);

// A finite-equation domain with a single class: every letter equals ε.
TickingDomain singleton_domain(const std::set<Letter>& alphabet);

// G(N): the net itself, every place annotated (ε,...,ε), constant ticks.
SpreadNet trivial_spread_net(const McNet& mc);

}  // namespace spreadnet
