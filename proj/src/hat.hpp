#pragma once

// Retraction of terms of a compiled theory T onto special terms, the image
// of T0 under the interpretation I.
//
//   hat(x_i)           = x_i
//   hat(g(t))          = hat(t)                      g a generator or alpha
//   hat(m(w(alpha(s)), t2))
//                      = m(u(alpha(hat s)), hat t2)  if T |- u(x) = w(x)
//                      = m(v(alpha(hat s)), hat t2)  if T |- v(x) = w(x) and not T |- u(x) = v(x)
//   hat(m(t1, t2))     = m(hat t1, hat t2)           otherwise
//
// w is the maximal chain of generators directly above the first alpha of
// the first argument. Word equivalence is undecidable in general, so the
// side conditions go through a bounded oracle; an answer it cannot certify
// makes the clause fall through and marks the result uncertain.

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "reduction.hpp"

namespace rigidlab {

enum class Verdict { Yes, No, Unknown };
const char* to_string(Verdict v);

struct OracleAnswer {
  Verdict verdict = Verdict::Unknown;
  // Present for Yes.
  std::optional<WordDerivation> certificate;
  SearchStatus status = SearchStatus::DepthLimit;
  SearchStats stats;
};

// Memoized, thread-safe word equivalence oracle over word_semidecide.
class WordOracle {
public:
  WordOracle(WordProblemInstance inst, WordBounds bounds);

  const WordProblemInstance& instance() const { return inst_; }
  const Theory& theory() const { return theory_; }
  const WordBounds& bounds() const { return bounds_; }
  OracleAnswer equivalent(const Word& a, const Word& b) const;
  std::size_t cache_size() const;

private:
  WordProblemInstance inst_;
  Theory theory_;
  WordBounds bounds_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Word, Word>, OracleAnswer> cache_;
};

struct SpecialTermTag {
  bool special = false;
  // The T0 term whose image this is.
  std::optional<TermInContext> preimage;
};

SpecialTermTag is_special(const WordProblemInstance& inst, const TermInContext& t);

// One decision at an m node whose first argument has the w(alpha(s)) shape.
struct HatDecision {
  Position position;  // in the input term
  Word word;
  int clause = 5;  // 3: u-clause, 4: v-clause, 5: plain m
  std::optional<OracleAnswer> u_equiv;
  std::optional<OracleAnswer> v_equiv;
  std::optional<OracleAnswer> goal_equiv;
};

struct HatResult {
  TermInContext term;
  bool uncertain = false;
  std::vector<HatDecision> decisions;
};

// Throws Error on symbols outside the compiled signature.
HatResult hat(const WordOracle& oracle, const TermInContext& t);

enum class CongruenceStatus { Found, NotFound, OracleUncertain };
const char* to_string(CongruenceStatus s);

struct CongruenceResult {
  CongruenceStatus status = CongruenceStatus::NotFound;
  HatResult start;
  HatResult end;
  ProofResult proof;
};

// Hats both ends of a valid derivation in the compiled theory and searches
// for a proof between them. Throws RewriteError if `d` does not replay.
CongruenceResult check_hat_congruence(const WordOracle& oracle, const Derivation& d, const SearchBounds& bounds);

}  // namespace rigidlab
