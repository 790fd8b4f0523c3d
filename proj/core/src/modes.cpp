#include "spreadnet/modes.hpp"

#include <algorithm>

namespace spreadnet {

std::string_view to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::BP: return "bp";
    case ModeKind::Trellis: return "trellis";
    case ModeKind::Trivial: return "trivial";
    case ModeKind::Custom: return "custom";
  }
  return "unknown";
}

ModeSpec ModeSpec::bp(std::optional<std::size_t> max_depth) {
  ModeSpec m;
  m.kind = ModeKind::BP;
  m.max_depth = max_depth;
  return m;
}

ModeSpec ModeSpec::trellis(std::optional<std::size_t> max_height) {
  ModeSpec m;
  m.kind = ModeKind::Trellis;
  m.max_depth = max_height;
  return m;
}

ModeSpec ModeSpec::trivial() {
  ModeSpec m;
  m.kind = ModeKind::Trivial;
  return m;
}

SpreadBounds ModeSpec::bounds() const {
  SpreadBounds b;
  b.max_events = max_events;
  b.max_depth = max_depth;
  b.depth_measure = depth_measure.value_or(
      kind == ModeKind::Trellis ? DepthMeasure::LocalTime : DepthMeasure::Causal);
  return b;
}

std::set<Letter> component_alphabet(const McNet& mc, std::size_t i) {
  std::set<Letter> out;
  for (const auto& t : mc.component_transitions(i)) out.insert(mc.net().label(t));
  return out;
}

TickingDomain singleton_domain(const std::set<Letter>& alphabet) {
  std::vector<Equation> eqs;
  for (const auto& a : alphabet) eqs.push_back({{a}, {}});
  return TickingDomain::finite_equations(alphabet, std::move(eqs), 1);
}

namespace {

std::vector<const ComponentSpec*> match_components(const ModeSpec& mode, const McNet& mc) {
  const std::size_t dim = mc.dimension();
  if (mode.components.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "custom mode lists " + std::to_string(mode.components.size()) +
                    " components, the net has " + std::to_string(dim));
  }
  const bool named = std::any_of(mode.components.begin(), mode.components.end(),
                                 [](const ComponentSpec& c) { return c.component.has_value(); });
  std::vector<const ComponentSpec*> out(dim, nullptr);
  for (std::size_t n = 0; n < dim; ++n) {
    const auto& spec = mode.components[n];
    if (!named) {
      out[n] = &spec;
      continue;
    }
    if (!spec.component) {
      throw Error(ErrorCode::MalformedMode, "either all components are named or none");
    }
    const auto& heads = mc.heads();
    auto it = std::find(heads.begin(), heads.end(), *spec.component);
    if (it == heads.end()) {
      throw Error(ErrorCode::MalformedMode, *spec.component + " is not an initial place");
    }
    auto& slot = out[static_cast<std::size_t>(it - heads.begin())];
    if (slot) throw Error(ErrorCode::MalformedMode, "component " + *spec.component + " twice");
    slot = &spec;
  }
  return out;
}

TickingMap make_tau(TickingMap::Kind kind, std::size_t i) {
  switch (kind) {
    case TickingMap::Kind::AppendIfInAlphabet: return TickingMap::append_if_in_alphabet(i);
    case TickingMap::Kind::AppendLocalResetOthers: return TickingMap::append_local_reset_others(i);
    case TickingMap::Kind::ConstantEps: return TickingMap::constant_eps(i);
    case TickingMap::Kind::CustomTable: break;
  }
  throw Error(ErrorCode::MalformedMode, "custom tables cannot be given in a mode");
}

}  // namespace

std::pair<VectorClockDomain, std::vector<TickingMap>> instantiate(const ModeSpec& mode,
                                                                  const McNet& mc) {
  require_mcnet(mc);
  const std::size_t dim = mc.dimension();
  std::vector<TickingDomain> domains;
  std::vector<TickingMap> taus;

  switch (mode.kind) {
    case ModeKind::BP:
      for (std::size_t i = 0; i < dim; ++i) {
        domains.push_back(TickingDomain::free(component_alphabet(mc, i)));
        taus.push_back(TickingMap::append_if_in_alphabet(i));
      }
      break;
    case ModeKind::Trellis:
      for (const auto& automaton : components(mc)) {
        domains.push_back(TickingDomain::trellis(automaton));
        taus.push_back(TickingMap::append_local_reset_others(automaton.index));
      }
      break;
    case ModeKind::Trivial:
      for (std::size_t i = 0; i < dim; ++i) {
        domains.push_back(singleton_domain(component_alphabet(mc, i)));
        taus.push_back(TickingMap::constant_eps(i));
      }
      break;
    case ModeKind::Custom: {
      const auto specs = match_components(mode, mc);
      for (std::size_t i = 0; i < dim; ++i) {
        const auto& spec = *specs[i];
        const auto labels = component_alphabet(mc, i);
        auto alphabet = spec.alphabet.value_or(labels);
        if (!std::includes(alphabet.begin(), alphabet.end(), labels.begin(), labels.end())) {
          throw Error(ErrorCode::MalformedMode,
                      "the alphabet of component " + mc.head(i) +
                          " misses some of its transition labels");
        }
        try {
          domains.push_back(
              TickingDomain::finite_equations(std::move(alphabet), spec.equations,
                                              spec.max_word_len));
        } catch (const Error& e) {
          throw Error(ErrorCode::MalformedMode,
                      "component " + mc.head(i) + ": " + e.what());
        }
        taus.push_back(make_tau(spec.tau, i));
      }
      break;
    }
  }
  return {VectorClockDomain(std::move(domains)), std::move(taus)};
}

SpreadResult spread_with_mode(const McNet& mc, const ModeSpec& mode) {
  auto [vcd, taus] = instantiate(mode, mc);
  return spread(mc, vcd, taus, mode.bounds());
}

SpreadNet trivial_spread_net(const McNet& mc) {
  require_mcnet(mc);
  SpreadNet s;
  s.mc = mc;
  std::vector<TickingDomain> domains;
  for (std::size_t i = 0; i < mc.dimension(); ++i) {
    domains.push_back(singleton_domain(component_alphabet(mc, i)));
    s.taus.push_back(TickingMap::constant_eps(i));
  }
  s.vcd = VectorClockDomain(std::move(domains));
  for (const auto& p : mc.net().places()) s.h[p] = s.vcd.epsilon();
  return s;
}

}  // namespace spreadnet
