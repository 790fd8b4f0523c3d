#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "spreadnet/modes.hpp"
#include "spreadnet/spread.hpp"

namespace spreadnet {

// All documents are JSON. Malformed input throws Error(ParseError).
//
// Net file:
//   {"places": [{"id": "a", "component": "a"}, ...],
//    "transitions": [{"id": "s", "pre": ["a"], "post": ["b"]}, ...],
//    "initial": ["a", "d"]}
// "component" names the initial place heading the place's block (ν).
// Labels are the ids.
McNet parse_net(const std::string& text);
std::string emit_net(const McNet& mc);

// Mode file:
//   {"mode": "bp" | "trellis" | "trivial" | "custom",
//    "components": [{"component": "a", "alphabet": ["s", ...],
//                    "equations": [["ss", "s"], ...], "maxWordLen": 4,
//                    "tau": "append-matching" | "append-local-reset" | "constant-eps"}],
//    "bounds": {"maxEvents": 10000, "maxDepth": 3,
//               "depthMeasure": "causal" | "local-time"}}
// Words are written as in encode_word(); ε is "".
ModeSpec parse_mode(const std::string& text);
std::string emit_mode(const ModeSpec& mode);

// What a spread file records: the support with its ν, clocks, folding and
// the saturation flag. Domains and ticking maps live in the mode file.
struct SpreadFile {
  McNet mc;
  std::map<PlaceId, VectorClock> h;
  FoldingMorphism folding;
  bool saturated = false;

  static SpreadFile from(const SpreadResult& result);
  bool operator==(const SpreadFile&) const = default;
};

//   {"places": [{"id", "label", "component", "clock": ["su", "u"]}],
//    "transitions": [{"id", "label", "pre", "post"}], "initial": [...],
//    "folding": {"places": {...}, "transitions": {...}}, "saturated": true}
SpreadFile parse_spread(const std::string& text);
std::string emit_spread(const SpreadFile& file);

// A plain labeled net, as produced by the oracles:
//   {"places": [{"id", "label"}], "transitions": [{"id", "label", "pre", "post"}],
//    "initial": [...]}
Net parse_labeled_net(const std::string& text);
std::string emit_labeled_net(const Net& net);

// Graphviz digraph: places are circles labeled "(label,clock)", initial
// places have a double border, transitions are boxes labeled by their
// original. Nodes and edges come out in id order.
std::string emit_dot(const SpreadNet& s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace spreadnet
