#pragma once

// Reduction from the word problem for finitely presented monoids to
// rigidity of a linear-regular theory.
//
// An instance (G, {u_i = v_i}, u = v) compiles to the theory T with one
// unary symbol per generator, a unary marker `alpha` and a binary `m`:
//
//   u_i(x1) = v_i(x1)                          one per relation
//   m(u(alpha(x1)), x2) = m(v(alpha(x2)), x1)  the goal axiom, always last
//
// T0 has binary l, r, m and the single axiom l(x1,x2) = r(x2,x1); the
// interpretation I : T0 -> T sends l to m(u(alpha(x1)),x2), r to
// m(v(alpha(x1)),x2) and m to m(x1,x2).

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "interpretation.hpp"
#include "rigidity.hpp"

namespace rigidlab {

inline constexpr std::string_view kMarkerSymbol = "alpha";
inline constexpr std::string_view kPairSymbol = "m";

// One character per generator.
using Word = std::string;

struct WordProblemInstance {
  // Generator letters in declaration order.
  std::string alphabet;
  std::vector<std::pair<Word, Word>> relations;
  std::pair<Word, Word> goal;

  // Throws Error on duplicate or reserved generators, or foreign letters.
  void check() const;
  void check_word(const Word& w) const;
};

// File format:
//   alphabet a b
//   rel ab = ba
//   goal ab = ba
// Generators are single letters other than 'm'; `eps` is the empty word.
WordProblemInstance parse_instance(std::string_view text);
std::string render_instance(const WordProblemInstance& inst);
Word parse_word(std::string_view text);
std::string render_word(const Word& w);

// Replaces the relation side selected by `direction` (the left side for
// L->R) found at `offset` by the other side.
struct WordStep {
  std::size_t relation = 0;
  Direction direction = Direction::LeftToRight;
  std::size_t offset = 0;

  friend bool operator==(const WordStep&, const WordStep&) = default;
};

struct WordDerivation {
  // steps.size() + 1 words.
  std::vector<Word> words;
  std::vector<WordStep> steps;

  const Word& start() const { return words.front(); }
  const Word& end() const { return words.back(); }
};

bool check_word_derivation(const WordProblemInstance& inst, const WordDerivation& d);
WordDerivation reversed(const WordDerivation& d);

struct WordBounds {
  std::size_t depth = 32;
  // Added to the longer word when length_cap is unset.
  std::size_t slack = 8;
  std::optional<std::size_t> length_cap;
  std::size_t node_budget = 1'000'000;

  std::size_t cap_for(std::size_t longest) const { return length_cap.value_or(longest + slack); }
};

struct WordSearchResult {
  SearchStatus status = SearchStatus::DepthLimit;
  std::optional<WordDerivation> derivation;
  SearchStats stats;
  bool certified_underivable = false;

  bool derivable() const { return status == SearchStatus::Proved; }
};

// Searches T |- w1(x1) = w2(x1) with the term engine and reads the result
// back as a word derivation.
WordSearchResult word_semidecide(const WordProblemInstance& inst, const Word& w1, const Word& w2,
                                 const WordBounds& bounds);

// Plain breadth-first string rewriting, sharing no code with the term engine.
WordSearchResult word_search_direct(const WordProblemInstance& inst, const Word& w1, const Word& w2,
                                    const WordBounds& bounds);

// w(base): the generators of w as a chain of unary applications, first
// letter outermost.
Term word_term(const Word& w, const Term& base);

Theory build_t0();
Theory compile_reduction(const WordProblemInstance& inst);
Interpretation build_interpretation(const WordProblemInstance& inst);

// Index of the goal axiom in compile_reduction(inst).
inline std::size_t goal_axiom_index(const WordProblemInstance& inst) { return inst.relations.size(); }

// From a derivation u => v: t = m(u(alpha(x1)),x2), the transposition, and a
// derivation t => m(u(alpha(x2)),x1) made of the goal axiom step followed by
// the word derivation run backwards inside the first argument.
// Throws Error if `proof` is not a valid derivation from u to v.
FlabbyReport flabby_witness(const WordProblemInstance& inst, const WordDerivation& proof);

}  // namespace rigidlab
