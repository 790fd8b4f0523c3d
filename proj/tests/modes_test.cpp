#include "doctest.h"
#include "fixtures.hpp"

using namespace spreadnet;
using spreadnet::testing::clock;
using spreadnet::testing::running_example;
using spreadnet::testing::running_example_mode;

namespace {

std::optional<PlaceId> find_place(const SpreadNet& s, const Label& original, const VectorClock& c) {
  for (const auto& p : s.support().places()) {
    if (s.original(p) == original && s.vcd.same_class(s.h.at(p), c)) return p;
  }
  return std::nullopt;
}

ErrorCode instantiate_error(const ModeSpec& mode, const McNet& mc) {
  try {
    instantiate(mode, mc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("instantiate accepted the mode");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_SUITE("modes") {

TEST_CASE("component alphabets") {
  const McNet mc = running_example();
  CHECK(component_alphabet(mc, 0) == std::set<Letter>{"s", "t", "u", "v", "z"});
  CHECK(component_alphabet(mc, 1) == std::set<Letter>{"u", "w", "z"});
}

TEST_CASE("bp instantiates free domains") {
  const auto [vcd, taus] = instantiate(ModeSpec::bp(std::nullopt), running_example());
  REQUIRE(vcd.dimension() == 2);
  CHECK(vcd.domain(0).kind() == TickingDomain::Kind::Free);
  CHECK(vcd.domain(1).alphabet() == std::set<Letter>{"u", "w", "z"});
  CHECK(taus[1].kind == TickingMap::Kind::AppendIfInAlphabet);
  CHECK(taus[1].component == 1);
  CHECK(ModeSpec::bp(3).bounds().depth_measure == DepthMeasure::Causal);
}

TEST_CASE("bp depth three on the running example") {
  const auto r = spread_with_mode(running_example(), ModeSpec::bp(3));
  CHECK(r.net.support().places().size() == 16);
  CHECK(r.net.support().transitions().size() == 10);
  CHECK(r.net.h.contains("a(suz,uz)"));
  CHECK(r.net.h.contains("a(tuz,uz)"));
  CHECK(r.net.h.contains("d(suz,uz)"));
  CHECK(r.net.h.contains("d(tuz,uz)"));
  CHECK_FALSE(r.saturated);
}

TEST_CASE("trellis instantiates local domains") {
  const auto [vcd, taus] = instantiate(ModeSpec::trellis(std::nullopt), running_example());
  CHECK(vcd.domain(0).kind() == TickingDomain::Kind::TrellisOf);
  CHECK(taus[0].kind == TickingMap::Kind::AppendLocalResetOthers);
  CHECK(ModeSpec::trellis(2).bounds().depth_measure == DepthMeasure::LocalTime);
}

TEST_CASE("trellis prefix of ten events") {
  auto mode = ModeSpec::trellis(std::nullopt);
  mode.max_events = 10;
  const auto r = spread_with_mode(running_example(), mode);
  const auto& s = r.net;
  CHECK(s.support().places().size() == 12);
  CHECK(s.support().transitions().size() == 10);
  CHECK_FALSE(r.saturated);

  // After z and after w, d sits at the same local time [uz] = [uw].
  const auto p7 = find_place(s, "d", clock({"", "uz"}));
  REQUIRE(p7);
  std::set<Label> producers;
  for (const auto& t : s.support().producers(*p7)) producers.insert(s.original(t));
  CHECK(producers == std::set<Label>{"w", "z"});
  CHECK(validate_spread(s).ok());
}

TEST_CASE("trivial mode") {
  const McNet mc = running_example();
  const auto [vcd, taus] = instantiate(ModeSpec::trivial(), mc);
  CHECK(vcd.domain(0).representatives().size() == 1);
  CHECK(vcd.domain(1).canonical({"w"}).empty());
  CHECK(taus[0].kind == TickingMap::Kind::ConstantEps);

  const auto r = spread_with_mode(mc, ModeSpec::trivial());
  CHECK(r.saturated);
  CHECK(r.net.support().places().size() == 5);
  CHECK(r.net.support().transitions().size() == 6);
  CHECK(validate_spread(r.net).ok());
}

TEST_CASE("custom components match by head") {
  const McNet mc = running_example();
  auto mode = running_example_mode();
  std::swap(mode.components[0], mode.components[1]);
  const auto [vcd, taus] = instantiate(mode, mc);
  CHECK(vcd.domain(0).alphabet() == std::set<Letter>{"s", "t", "u", "v", "z"});
  CHECK(vcd.domain(1).canonical({"u", "z"}) == Word{"u", "w"});

  const auto a = spread_with_mode(mc, mode);
  const auto b = spread_with_mode(mc, running_example_mode());
  CHECK(a.net.h == b.net.h);
}

TEST_CASE("custom components by position") {
  const McNet mc = running_example();
  auto mode = running_example_mode();
  for (auto& c : mode.components) c.component.reset();
  CHECK(spread_with_mode(mc, mode).net.h == spread_with_mode(mc, running_example_mode()).net.h);
}

TEST_CASE("custom mode errors") {
  const McNet mc = running_example();

  auto short_mode = running_example_mode();
  short_mode.components.pop_back();
  CHECK(instantiate_error(short_mode, mc) == ErrorCode::DimensionMismatch);

  auto unknown = running_example_mode();
  unknown.components[1].component = "e";
  CHECK(instantiate_error(unknown, mc) == ErrorCode::MalformedMode);

  auto twice = running_example_mode();
  twice.components[1].component = "a";
  CHECK(instantiate_error(twice, mc) == ErrorCode::MalformedMode);

  auto mixed = running_example_mode();
  mixed.components[0].component.reset();
  CHECK(instantiate_error(mixed, mc) == ErrorCode::MalformedMode);

  auto narrow = running_example_mode();
  narrow.components[1].alphabet = std::set<Letter>{"u", "w"};
  CHECK(instantiate_error(narrow, mc) == ErrorCode::MalformedMode);

  auto tight = running_example_mode();
  tight.components[0].max_word_len = 1;
  tight.components[0].equations.push_back({{"s", "s", "s"}, {}});
  CHECK(instantiate_error(tight, mc) == ErrorCode::MalformedMode);
}

TEST_CASE("mode files in the data directory parse and run") {
  const McNet mc = parse_net(read_file(spreadnet::testing::data_dir() / "running-example.net.json"));
  CHECK(mc == running_example());
  const auto custom = parse_mode(read_file(spreadnet::testing::data_dir() / "running-example.mode.json"));
  CHECK(spread_with_mode(mc, custom).net.support().transitions().size() == 10);
  const auto bp = parse_mode(read_file(spreadnet::testing::data_dir() / "bp-depth3.mode.json"));
  CHECK(spread_with_mode(mc, bp).net.support().places().size() == 16);
  const auto trellis = parse_mode(read_file(spreadnet::testing::data_dir() / "trellis-10.mode.json"));
  CHECK(spread_with_mode(mc, trellis).net.support().places().size() == 12);
  const auto trivial = parse_mode(read_file(spreadnet::testing::data_dir() / "trivial.mode.json"));
  CHECK(spread_with_mode(mc, trivial).net.support().places().size() == 5);
}

}  // TEST_SUITE
