#include "doctest.h"
#include "fixtures.hpp"

using namespace spreadnet;
using namespace spreadnet::testing;

namespace {

// The checks every spreading must pass.
void check_spreading(const McNet& input, const SpreadResult& r) {
  CHECK(validate_spread(r.net).ok());
  CHECK(check_folding(r.net.mc, input, r.folding).ok());
  CHECK(validate_mcnet(r.net.mc).ok());

  std::set<std::pair<Label, VectorClock>> seen;
  for (const auto& [p, c] : r.net.h) {
    CHECK(seen.emplace(r.net.original(p), r.net.vcd.canonical(c)).second);
  }
  CHECK_NOTHROW(reachable_markings(r.net.support(), 2000));
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("random nets are safe mc-nets") {
  std::mt19937 rng(11);
  for (int n = 0; n < 50; ++n) {
    const McNet mc = random_mcnet(rng);
    CHECK(validate_mcnet(mc).ok());
    CHECK_NOTHROW(reachable_markings(mc.net(), 100000));
    CHECK(validate_mcnet(trim_to_reachable(mc)).ok());
  }
}

TEST_CASE("random table domains obey the domain laws") {
  std::mt19937 rng(12);
  for (int n = 0; n < 40; ++n) {
    const std::set<Letter> alphabet{"a", "b", "c"};
    const auto table = random_table_domain(rng, alphabet, 4);
    CHECK(table.max_word_len <= 4);
    const auto d = TickingDomain::finite_equations(alphabet, table.equations, table.max_word_len);
    CHECK(check_domain_laws(d).ok());
    for (const auto& u : all_words(alphabet, table.max_word_len)) {
      for (const auto& v : all_words(alphabet, table.max_word_len)) {
        if (d.same_class(u, v) != (table.run(u) == table.run(v))) {
          FAIL_CHECK(to_string(u) << " vs " << to_string(v));
        }
      }
    }
  }
}

TEST_CASE("bp spreading agrees with the unfolder on random nets") {
  std::mt19937 rng(13);
  for (int n = 0; n < 20; ++n) {
    const McNet mc = random_mcnet(rng);
    for (std::size_t depth = 1; depth <= 3; ++depth) {
      const auto r = spread_with_mode(mc, ModeSpec::bp(depth));
      CAPTURE(n);
      CAPTURE(depth);
      CHECK(isomorphic(r.net.support(), unfold_bp_oracle(mc, depth)).has_value());
      check_spreading(mc, r);
    }
  }
}

TEST_CASE("trellis spreading agrees with the trellis builder on random nets") {
  std::mt19937 rng(14);
  for (int n = 0; n < 20; ++n) {
    const McNet mc = random_mcnet(rng);
    for (std::size_t height = 1; height <= 3; ++height) {
      const auto r = spread_with_mode(mc, ModeSpec::trellis(height));
      CAPTURE(n);
      CAPTURE(height);
      CHECK(isomorphic(r.net.support(), trellis_oracle(mc, height)).has_value());
      check_spreading(mc, r);
    }
  }
}

TEST_CASE("random custom spreadings satisfy the axioms") {
  std::mt19937 rng(15);
  for (int n = 0; n < 30; ++n) {
    const McNet mc = random_mcnet(rng);
    const auto custom = random_custom_mode(rng, mc, 4);
    const auto a = spread_with_mode(mc, custom.mode);
    const auto b = spread_with_mode(mc, custom.mode);
    CAPTURE(n);
    CHECK(a.saturated);
    check_spreading(mc, a);
    CHECK(SpreadFile::from(a) == SpreadFile::from(b));
  }
}

TEST_CASE("trivial spreading reproduces reachable nets") {
  std::mt19937 rng(16);
  for (int n = 0; n < 30; ++n) {
    const McNet mc = trim_to_reachable(random_mcnet(rng));
    const auto r = spread_with_mode(mc, ModeSpec::trivial());
    CAPTURE(n);
    CHECK(r.saturated);
    CHECK(isomorphic(r.net.support(), mc.net()).has_value());
  }
}

TEST_CASE("identity and composed spread morphisms on random spreadings") {
  std::mt19937 rng(17);
  for (int n = 0; n < 10; ++n) {
    const McNet mc = random_mcnet(rng);
    const auto r = spread_with_mode(mc, random_custom_mode(rng, mc, 3).mode);
    const auto id = identity_spread_morphism(r.net);
    CHECK(check_spread_morphism(r.net, r.net, id).ok());
    CHECK(check_spread_morphism(r.net, r.net, compose_spread_morphisms(id, id)).ok());
  }
}

TEST_CASE("three components: bp spreading against the unfolder") {
  // Mixing clocks of three or more components is not pinned down; this only
  // reports how often the two constructions differ.
  std::mt19937 rng(18);
  RandomNetOptions options;
  options.components = 3;
  options.sync_probability = 0.5;
  int differ = 0;
  const int total = 20;
  for (int n = 0; n < total; ++n) {
    const McNet mc = random_mcnet(rng, options);
    const auto r = spread_with_mode(mc, ModeSpec::bp(3));
    check_spreading(mc, r);
    if (!isomorphic(r.net.support(), unfold_bp_oracle(mc, 3))) ++differ;
  }
  MESSAGE(differ << " of " << total << " three-component nets differ from the unfolder at depth 3");
}

}  // TEST_SUITE
