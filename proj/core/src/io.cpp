#include "spreadnet/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spreadnet {

using json = nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

// Wraps shape errors (missing keys, wrong types) into ParseError.
template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidNet) {
      throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
    }
    throw;
  }
}

std::vector<std::string> strings(const json& j) { return j.get<std::vector<std::string>>(); }

json clock_json(const VectorClock& c) {
  json out = json::array();
  for (const auto& w : c.entries) out.push_back(encode_word(w));
  return out;
}

VectorClock clock_from(const json& j) {
  VectorClock c;
  for (const auto& w : j) c.entries.push_back(decode_word(w.get<std::string>()));
  return c;
}

json transitions_json(const Net& net, bool with_label) {
  json out = json::array();
  for (const auto& t : net.transitions()) {
    json e{{"id", t}};
    if (with_label) e["label"] = net.label(t);
    e["pre"] = net.pre(t);
    e["post"] = net.post(t);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

McNet parse_net(const std::string& text) {
  const json doc = parse_json(text);
  return guarded("net file", [&] {
    NetBuilder b;
    std::map<PlaceId, PlaceId> nu;
    for (const auto& p : doc.at("places")) {
      const auto id = p.at("id").get<std::string>();
      b.place(id);
      nu[id] = p.at("component").get<std::string>();
    }
    for (const auto& t : doc.at("transitions")) {
      b.transition(t.at("id").get<std::string>(), strings(t.at("pre")), strings(t.at("post")));
    }
    for (const auto& p : strings(doc.at("initial"))) b.mark(p);
    return McNet(b.build(), std::move(nu));
  });
}

std::string emit_net(const McNet& mc) {
  const Net& net = mc.net();
  json places = json::array();
  for (const auto& p : net.places()) {
    auto it = mc.nu().find(p);
    places.push_back({{"id", p}, {"component", it == mc.nu().end() ? p : it->second}});
  }
  json doc{{"places", places},
           {"transitions", transitions_json(net, false)},
           {"initial", net.initial()}};
  return doc.dump(2) + "\n";
}

namespace {

TickingMap::Kind tau_kind(const std::string& name) {
  if (name == "append-matching") return TickingMap::Kind::AppendIfInAlphabet;
  if (name == "append-local-reset") return TickingMap::Kind::AppendLocalResetOthers;
  if (name == "constant-eps") return TickingMap::Kind::ConstantEps;
  throw Error(ErrorCode::ParseError, "unknown tau '" + name + "'");
}

ModeKind mode_kind(const std::string& name) {
  if (name == "bp") return ModeKind::BP;
  if (name == "trellis") return ModeKind::Trellis;
  if (name == "trivial") return ModeKind::Trivial;
  if (name == "custom") return ModeKind::Custom;
  throw Error(ErrorCode::ParseError, "unknown mode '" + name + "'");
}

DepthMeasure depth_measure(const std::string& name) {
  if (name == "causal") return DepthMeasure::Causal;
  if (name == "local-time") return DepthMeasure::LocalTime;
  throw Error(ErrorCode::ParseError, "unknown depth measure '" + name + "'");
}

}  // namespace

ModeSpec parse_mode(const std::string& text) {
  const json doc = parse_json(text);
  return guarded("mode file", [&] {
    ModeSpec m;
    m.kind = mode_kind(doc.at("mode").get<std::string>());
    if (doc.contains("components")) {
      for (const auto& c : doc.at("components")) {
        ComponentSpec spec;
        if (c.contains("component")) spec.component = c.at("component").get<std::string>();
        if (c.contains("alphabet")) {
          auto letters = strings(c.at("alphabet"));
          spec.alphabet = std::set<Letter>(letters.begin(), letters.end());
        }
        if (c.contains("equations")) {
          for (const auto& eq : c.at("equations")) {
            if (!eq.is_array() || eq.size() != 2) {
              throw Error(ErrorCode::ParseError, "an equation is a pair [lhs, rhs]");
            }
            spec.equations.push_back(
                {decode_word(eq[0].get<std::string>()), decode_word(eq[1].get<std::string>())});
          }
        }
        spec.max_word_len = c.value("maxWordLen", std::size_t{0});
        spec.tau = tau_kind(c.value("tau", std::string("append-matching")));
        m.components.push_back(std::move(spec));
      }
    }
    if (m.kind == ModeKind::Custom && m.components.empty()) {
      throw Error(ErrorCode::ParseError, "a custom mode lists its components");
    }
    if (doc.contains("bounds")) {
      const auto& b = doc.at("bounds");
      m.max_events = b.value("maxEvents", m.max_events);
      if (b.contains("maxDepth") && !b.at("maxDepth").is_null()) {
        m.max_depth = b.at("maxDepth").get<std::size_t>();
      }
      if (b.contains("depthMeasure")) {
        m.depth_measure = depth_measure(b.at("depthMeasure").get<std::string>());
      }
    }
    return m;
  });
}

std::string emit_mode(const ModeSpec& mode) {
  json doc{{"mode", std::string(to_string(mode.kind))}};
  if (!mode.components.empty()) {
    json comps = json::array();
    for (const auto& c : mode.components) {
      json e;
      if (c.component) e["component"] = *c.component;
      if (c.alphabet) e["alphabet"] = *c.alphabet;
      json eqs = json::array();
      for (const auto& eq : c.equations) eqs.push_back({encode_word(eq.lhs), encode_word(eq.rhs)});
      e["equations"] = eqs;
      e["maxWordLen"] = c.max_word_len;
      e["tau"] = std::string(to_string(c.tau));
      comps.push_back(std::move(e));
    }
    doc["components"] = comps;
  }
  json bounds{{"maxEvents", mode.max_events}};
  if (mode.max_depth) bounds["maxDepth"] = *mode.max_depth;
  if (mode.depth_measure) {
    bounds["depthMeasure"] = *mode.depth_measure == DepthMeasure::Causal ? "causal" : "local-time";
  }
  doc["bounds"] = bounds;
  return doc.dump(2) + "\n";
}

SpreadFile SpreadFile::from(const SpreadResult& result) {
  return {result.net.mc, result.net.h, result.folding, result.saturated};
}

SpreadFile parse_spread(const std::string& text) {
  const json doc = parse_json(text);
  return guarded("spread file", [&] {
    SpreadFile f;
    NetBuilder b;
    std::map<PlaceId, PlaceId> nu;
    for (const auto& p : doc.at("places")) {
      const auto id = p.at("id").get<std::string>();
      b.place(id, p.at("label").get<std::string>());
      nu[id] = p.at("component").get<std::string>();
      f.h[id] = clock_from(p.at("clock"));
    }
    for (const auto& t : doc.at("transitions")) {
      b.transition(t.at("id").get<std::string>(), strings(t.at("pre")), strings(t.at("post")),
                   t.at("label").get<std::string>());
    }
    for (const auto& p : strings(doc.at("initial"))) b.mark(p);
    f.mc = McNet(b.build(), std::move(nu));
    const auto& folding = doc.at("folding");
    f.folding.place_map = folding.at("places").get<std::map<PlaceId, PlaceId>>();
    f.folding.trans_map = folding.at("transitions").get<std::map<TransId, TransId>>();
    f.saturated = doc.at("saturated").get<bool>();
    return f;
  });
}

std::string emit_spread(const SpreadFile& file) {
  const Net& net = file.mc.net();
  json places = json::array();
  for (const auto& p : net.places()) {
    auto nu = file.mc.nu().find(p);
    auto h = file.h.find(p);
    places.push_back({{"id", p},
                      {"label", net.label(p)},
                      {"component", nu == file.mc.nu().end() ? p : nu->second},
                      {"clock", h == file.h.end() ? json::array() : clock_json(h->second)}});
  }
  json doc{{"places", places},
           {"transitions", transitions_json(net, true)},
           {"initial", net.initial()},
           {"folding",
            {{"places", file.folding.place_map}, {"transitions", file.folding.trans_map}}},
           {"saturated", file.saturated}};
  return doc.dump(2) + "\n";
}

Net parse_labeled_net(const std::string& text) {
  const json doc = parse_json(text);
  return guarded("net", [&] {
    NetBuilder b;
    for (const auto& p : doc.at("places")) {
      b.place(p.at("id").get<std::string>(), p.at("label").get<std::string>());
    }
    for (const auto& t : doc.at("transitions")) {
      b.transition(t.at("id").get<std::string>(), strings(t.at("pre")), strings(t.at("post")),
                   t.at("label").get<std::string>());
    }
    for (const auto& p : strings(doc.at("initial"))) b.mark(p);
    return b.build();
  });
}

std::string emit_labeled_net(const Net& net) {
  json places = json::array();
  for (const auto& p : net.places()) places.push_back({{"id", p}, {"label", net.label(p)}});
  json doc{{"places", places},
           {"transitions", transitions_json(net, true)},
           {"initial", net.initial()}};
  return doc.dump(2) + "\n";
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_dot(const SpreadNet& s) {
  const Net& net = s.support();
  std::ostringstream out;
  out << "digraph spread {\n";
  for (const auto& p : net.places()) {
    auto h = s.h.find(p);
    const std::string clock = h == s.h.end() ? "?" : to_string(h->second);
    out << "  " << quoted(p) << " [shape=circle, label=" << quoted("(" + net.label(p) + "," + clock + ")");
    if (net.initial().contains(p)) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& t : net.transitions()) {
    out << "  " << quoted(t) << " [shape=box, label=" << quoted(net.label(t)) << "];\n";
  }
  for (const auto& [from, to] : net.flow()) {
    out << "  " << quoted(from) << " -> " << quoted(to) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << text;
}

}  // namespace spreadnet
