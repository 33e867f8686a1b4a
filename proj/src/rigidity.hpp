#pragma once

// Bounded search for flabby terms: linear-regular terms provably equal to a
// non-identity permutation of their own variables.

#include <cstdint>
#include <optional>
#include <vector>

#include "rewrite.hpp"

namespace rigidlab {

// Size first, then pre-order tokens; variables before symbols, symbols in
// signature declaration order.
struct CanonicalLess {
  const Signature* signature;
  bool operator()(const Term& a, const Term& b) const;
};

// Every linear-regular term over the signature with at most `max_size` nodes
// and at most `max_context` variables, variables numbered 1..n in order of
// first occurrence, sorted by CanonicalLess. Each term is in context n.
std::vector<TermInContext> enumerate_linear_regular(const Signature& sig, std::size_t max_size,
                                                    std::uint32_t max_context);

struct FlabbyReport {
  TermInContext term;
  Permutation permutation;
  Derivation derivation;
};

// term linear-regular, permutation non-identity and of the context's size,
// derivation replays from term to the permuted term.
bool verify_report(const FlabbyReport& r, const Theory& th);

struct ExhaustionCertificate {
  std::size_t terms_enumerated = 0;
  std::size_t closures_computed = 0;
  std::size_t closure_total = 0;
  std::size_t closure_max = 0;
  bool size_cap_hit = false;
  bool depth_limit_hit = false;
  bool budget_hit = false;

  bool certified() const { return !size_cap_hit && !depth_limit_hit && !budget_hit; }
};

enum class RigidityStatus {
  FlabbyFound,
  // No witness; every closure was complete, so the fragment is rigid.
  Exhausted,
  // No witness, but some closure was cut short by a bound.
  NoWitnessWithinBounds,
};

const char* to_string(RigidityStatus s);

struct RigidityResult {
  RigidityStatus status = RigidityStatus::NoWitnessWithinBounds;
  std::optional<FlabbyReport> report;
  ExhaustionCertificate certificate;
};

// Throws Error if an axiom is not linear-regular. The first witness in
// canonical term order is returned, trying permutations in lexicographic order.
RigidityResult search_flabby(const Theory& th, std::size_t max_size, std::uint32_t max_context,
                             const SearchBounds& bounds, unsigned jobs = 1);

}  // namespace rigidlab
