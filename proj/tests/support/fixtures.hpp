#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string_view>
#include <vector>

#include "spreadnet/io.hpp"
#include "spreadnet/modes.hpp"
#include "spreadnet/oracle.hpp"

namespace spreadnet::testing {

std::filesystem::path data_dir();

// The two-component net with places a,b,c | d,e used throughout the tests.
McNet running_example();
// Its custom mode with classes {ε,s,su,suv,suz} and {ε,u,uz}.
ModeSpec running_example_mode();
// Component a,b,c of the running example on its own.
McNet running_example_left();

struct RandomNetOptions {
  std::size_t components = 2;
  std::size_t max_places = 6;
  std::size_t max_transitions = 6;
  double sync_probability = 0.35;
};

// Random mc-net: every transition touches one or two components, taking and
// putting one token in each, so the result is safe by construction. Ids are
// p<i> and t<i>; labels are the ids.
McNet random_mcnet(std::mt19937& rng, const RandomNetOptions& options = {});

// Restriction to the places and transitions that occur in some run.
McNet trim_to_reachable(const McNet& mc);

// A finite-equation domain presented by a deterministic automaton: the
// equations say rep(q)·a = rep(δ(q,a)), so two words are equivalent iff the
// automaton ends in the same state. rep(q) is the least shortest word
// reaching q.
struct TableDomain {
  std::set<Letter> alphabet;
  std::vector<std::map<Letter, std::size_t>> delta;
  std::vector<Word> rep;
  std::vector<Equation> equations;
  std::size_t max_word_len = 1;

  std::size_t run(const Word& w) const;
};

TableDomain random_table_domain(std::mt19937& rng, const std::set<Letter>& alphabet,
                                std::size_t max_states);

struct RandomCustomMode {
  ModeSpec mode;
  std::vector<TableDomain> tables;
};

RandomCustomMode random_custom_mode(std::mt19937& rng, const McNet& mc, std::size_t max_states);

// All words over `alphabet` of length at most `max_len`, shortest first,
// then lexicographic.
std::vector<Word> all_words(const std::set<Letter>& alphabet, std::size_t max_len);

// Reference closure by repeated symmetric, transitive and suffix steps on a
// boolean relation matrix. Maps every word to the least member of its class.
std::map<Word, Word> brute_force_classes(const std::set<Letter>& alphabet,
                                         const std::vector<Equation>& equations,
                                         std::size_t max_len);

// Exhaustive laws of a finite-equation domain over all words within its
// bound: canonical is idempotent and a class function, the representative
// is the least shortest member, every equation holds, and the classes are
// suffix stable. Rules "idempotent", "representative", "equation", "suffix".
Verdict check_domain_laws(const TickingDomain& d);

Word word(std::string_view text);
VectorClock clock(std::initializer_list<std::string_view> entries);

// Per-place canonical clock strings, for isomorphism checks.
NodeTags clock_tags(const SpreadNet& s);

}  // namespace spreadnet::testing
