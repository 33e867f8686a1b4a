#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rewrite.hpp"

namespace rigidlab {

// Assigns each source symbol of arity n a target term in context n.
class Interpretation {
public:
  Interpretation(Theory source, Theory target, std::map<std::string, TermInContext> assignment);

  const Theory& source() const { return source_; }
  const Theory& target() const { return target_; }
  const std::map<std::string, TermInContext>& assignment() const { return assignment_; }
  const TermInContext& image(const std::string& symbol) const;
  // Every image is a linear-regular term.
  bool linear_regular() const;

  static Interpretation identity(const Theory& th);

private:
  Theory source_;
  Theory target_;
  std::map<std::string, TermInContext> assignment_;
};

// Homomorphic extension: variables are fixed, f(t1..tk) maps to the image of
// f with the extended children substituted for x1..xk.
TermInContext extend(const Interpretation& i, const TermInContext& t);
Term extend(const Interpretation& i, const Term& t);

// One proof attempt per source axiom, in axiom order.
std::vector<ProofResult> check_preserves_axioms(const Interpretation& i, const SearchBounds& bounds);

struct SymbolComparison {
  std::string symbol;
  ProofResult result;
};

// Throws Error when the two interpretations differ in source or target.
std::vector<SymbolComparison> interpretations_equal(const Interpretation& a, const Interpretation& b,
                                                    const SearchBounds& bounds);

struct ConservativityPair {
  TermInContext lhs;
  TermInContext rhs;
  // Target derivation of the image equation.
  Derivation target_proof;
};

struct ConservativityReport {
  // Source search exhausted a complete closure without reaching rhs.
  std::vector<ConservativityPair> confirmed;
  // Source search stopped on a bound, or the size cap dropped rewrites.
  std::vector<ConservativityPair> candidates;
  std::size_t source_terms = 0;
  std::size_t pairs_examined = 0;
  std::size_t pairs_with_target_proof = 0;
  // Every target closure was complete; no failure within the term bound
  // then certifies conservativity of that fragment.
  bool target_closures_complete = true;
};

// Enumerates source equations s = t between linear-regular terms of size at
// most `term_size_bound` (s in canonical variable order, t any) and looks
// for pairs whose image is provable in the target while s = t is not.
ConservativityReport probe_conservativity(const Interpretation& i, std::size_t term_size_bound,
                                          const SearchBounds& bounds, unsigned jobs = 1);

// Interpretation file:
//   source <file.thy>
//   target <file.thy>
//   map <symbol> = <term>
// Theory paths go through `load`, which receives them verbatim.
Interpretation parse_interpretation(std::string_view text,
                                    const std::function<Theory(const std::string&)>& load);
std::string render_interpretation(const Interpretation& i, const std::string& source_path,
                                  const std::string& target_path);

}  // namespace rigidlab
