#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spreadnet/mcnet.hpp"

namespace spreadnet {

using Letter = std::string;
using Word = std::vector<Letter>;

// Text form of a word: letters concatenated when every letter is a single
// character ("suz"), joined with '.' otherwise ("t1.t2"); ε is "".
std::string encode_word(const Word& w);
// Inverse of encode_word: split on '.' when present, else per character.
Word decode_word(std::string_view text);

// encode_word, with "ε" for the empty word.
std::string to_string(const Word& w);

struct Equation {
  Word lhs;
  Word rhs;
};

// Equivalence classes of words over an alphabet under a suffix-stable
// equivalence (u ~ u' implies uv ~ u'v).
//
// The representative of a class is its lexicographically least word among
// the shortest members, so canonical() is a deterministic class function.
class TickingDomain {
 public:
  enum class Kind { Free, TrellisOf, FiniteEquations };

  // Every word is alone in its class.
  static TickingDomain free(std::set<Letter> alphabet);

  // Runs of a sequential automaton, equivalent iff they have the same
  // length and end in the same place. The alphabet is the automaton's
  // transition labels, which must be deterministic per source place.
  static TickingDomain trellis(const ComponentAutomaton& automaton);

  // The suffix-stable closure of `equations` over all words of length at
  // most `max_word_len`. The closure is computed eagerly with union-find:
  // seed the equations, then whenever two words shorter than the bound
  // share a class, merge their one-letter extensions, until a fixpoint.
  static TickingDomain finite_equations(std::set<Letter> alphabet,
                                        std::vector<Equation> equations,
                                        std::size_t max_word_len);

  Kind kind() const { return kind_; }
  const std::set<Letter>& alphabet() const { return alphabet_; }
  bool contains(const Letter& a) const { return alphabet_.contains(a); }
  std::size_t max_word_len() const { return max_len_; }
  const std::vector<Equation>& equations() const { return equations_; }

  // Throws LetterOutsideAlphabet, WordTooLong (FiniteEquations beyond the
  // bound) or NotARun (TrellisOf, w is not a run of the automaton).
  Word canonical(const Word& w) const;
  bool same_class(const Word& u, const Word& v) const;

  // Up to `limit` members of the class of w, including w itself.
  std::vector<Word> class_members(const Word& w, std::size_t limit = 256) const;

  // FiniteEquations: one representative per class, shortest first.
  std::vector<Word> representatives() const;

  // TrellisOf: the place reached by running w from the initial place.
  PlaceId target(const Word& w) const;

 private:
  TickingDomain() = default;

  void check_letters(const Word& w) const;

  // Finite-equation words are indexed by (length, lexicographic rank).
  std::size_t index_of(const Word& w) const;
  Word word_at(std::size_t index) const;

  Kind kind_ = Kind::Free;
  std::set<Letter> alphabet_;
  std::vector<Letter> letters_;  // sorted alphabet
  std::map<Letter, std::size_t> letter_index_;

  std::size_t max_len_ = 0;
  std::vector<Equation> equations_;
  std::vector<std::size_t> offsets_;    // first index of each length
  std::vector<std::size_t> canonical_;  // word index -> representative index

  PlaceId start_;
  std::map<PlaceId, std::map<Letter, PlaceId>> moves_;
};

// One canonical word per component.
struct VectorClock {
  std::vector<Word> entries;

  std::size_t dimension() const { return entries.size(); }
  auto operator<=>(const VectorClock&) const = default;
  bool operator==(const VectorClock&) const = default;
};

// "(su,u)", with ε for empty entries.
std::string to_string(const VectorClock& clock);

class VectorClockDomain {
 public:
  VectorClockDomain() = default;
  explicit VectorClockDomain(std::vector<TickingDomain> domains)
      : domains_(std::move(domains)) {}

  std::size_t dimension() const { return domains_.size(); }
  const TickingDomain& domain(std::size_t i) const { return domains_.at(i); }
  const std::vector<TickingDomain>& domains() const { return domains_; }

  VectorClock epsilon() const;
  // Entry-wise canonical(); throws DimensionMismatch on a wrong-sized clock.
  VectorClock canonical(const VectorClock& clock) const;
  bool same_class(const VectorClock& a, const VectorClock& b) const;

 private:
  std::vector<TickingDomain> domains_;
};

// Mixes the clocks in gamma (indexed by component, defined exactly on J):
// entry i of the result is entry i of gamma[i] when i is in J, and entry i
// of gamma[k] otherwise. Throws KNotInJ or MissingClock.
VectorClock op_mix(const VectorClockDomain& vcd,
                   const std::map<std::size_t, VectorClock>& gamma,
                   const std::set<std::size_t>& J, std::size_t k);

struct TickingMap {
  enum class Kind {
    AppendIfInAlphabet,      // append the label to every entry whose alphabet has it
    AppendLocalResetOthers,  // append to the own entry, reset the others to ε
    ConstantEps,             // always (ε,...,ε)
    CustomTable,             // explicit (clock, transition) -> clock table
  };

  Kind kind = Kind::AppendIfInAlphabet;
  std::size_t component = 0;
  std::map<std::pair<VectorClock, TransId>, VectorClock> table;

  static TickingMap append_if_in_alphabet(std::size_t component);
  static TickingMap append_local_reset_others(std::size_t component);
  static TickingMap constant_eps(std::size_t component);
  static TickingMap custom_table(
      std::size_t component,
      std::map<std::pair<VectorClock, TransId>, VectorClock> table);
};

std::string_view to_string(TickingMap::Kind kind);

// τ(alpha, t). The result is canonical. Throws TableMiss (CustomTable
// without an entry for the canonical clock) or LetterOutsideAlphabet.
VectorClock tick(const TickingMap& tau, const VectorClockDomain& vcd,
                 const VectorClock& alpha, const TransId& t, const Label& label);

}  // namespace spreadnet
