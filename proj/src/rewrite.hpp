#pragma once

// One-step rewriting with axioms in either direction, replayable derivations,
// and bounded breadth-first proof search.

#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "theory.hpp"

namespace rigidlab {

enum class Direction { LeftToRight, RightToLeft };

inline Direction flip(Direction d) {
  return d == Direction::LeftToRight ? Direction::RightToLeft : Direction::LeftToRight;
}

class RewriteError : public Error {
public:
  using Error::Error;
};

// The subterm at `position` equals the `direction` source side of the axiom
// instantiated by `substitution` (one term per axiom context variable).
struct RewriteStep {
  std::size_t axiom = 0;
  Direction direction = Direction::LeftToRight;
  Position position;
  std::vector<Term> substitution;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct Derivation {
  std::uint32_t context = 0;
  Term start;
  std::vector<RewriteStep> steps;
  Term end;
};

TermInContext apply_step(const TermInContext& t, const Theory& th, const RewriteStep& step);

// Every intermediate term, start first. Throws RewriteError on an invalid
// step or when the last term differs from d.end.
std::vector<Term> replay_terms(const Derivation& d, const Theory& th);
bool replay(const Derivation& d, const Theory& th);

// Same equation proved backwards: steps reversed and each direction flipped.
Derivation reversed(const Derivation& d);

// Occurrences of `symbol` in each term along the derivation.
std::vector<std::size_t> symbol_census(const Derivation& d, const Theory& th, std::string_view symbol);

struct Successor {
  Term term;
  RewriteStep step;
};

// Distinct one-step rewrites of t with size <= size_cap, ordered by
// (axiom, direction with L->R first, pre-order position). `cap_hit` is set
// when a rewrite was dropped for exceeding the cap.
std::vector<Successor> successors(const TermInContext& t, const Theory& th, std::size_t size_cap,
                                  bool* cap_hit = nullptr);

struct SearchBounds {
  std::size_t depth = 16;
  // Added to the larger goal size when size_cap is unset.
  std::size_t slack = 8;
  std::optional<std::size_t> size_cap;
  std::size_t node_budget = 1'000'000;

  std::size_t cap_for(std::size_t base_size) const { return size_cap.value_or(base_size + slack); }
};

enum class SearchStatus {
  Proved,
  // A frontier emptied: the whole closure (under the size cap) was explored.
  Exhausted,
  DepthLimit,
  BudgetLimit,
};

const char* to_string(SearchStatus s);

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t visited = 0;
  std::size_t size_cap = 0;
  bool size_cap_hit = false;
  std::size_t depth_reached = 0;
};

struct ProofResult {
  SearchStatus status = SearchStatus::DepthLimit;
  std::optional<Derivation> derivation;
  SearchStats stats;
  // Exhausted without the size cap ever dropping a rewrite on the exhausted side.
  bool certified_unprovable = false;

  bool proved() const { return status == SearchStatus::Proved; }
};

// Bidirectional breadth-first search. A returned derivation is shortest
// among derivations within the size cap and has been checked by replay.
ProofResult prove_bounded(const Theory& th, const Equation& goal, const SearchBounds& bounds);

// Breadth-first rewrite closure of one term, up to `depth` steps.
class Closure {
public:
  Closure(const Theory& th, const TermInContext& start, std::size_t depth, std::size_t size_cap,
          std::size_t node_budget);

  SearchStatus status() const { return status_; }
  const SearchStats& stats() const { return stats_; }
  // Exhausted with no rewrite dropped by the size cap.
  bool complete() const { return status_ == SearchStatus::Exhausted && !stats_.size_cap_hit; }
  std::size_t size() const { return entries_.size(); }
  bool contains(const Term& t) const { return entries_.count(t) != 0; }
  std::optional<std::size_t> distance(const Term& t) const;
  std::optional<Derivation> derivation_to(const Term& t) const;
  // Members in discovery order.
  const std::vector<Term>& members() const { return order_; }

private:
  struct Entry {
    std::optional<Term> parent;
    std::optional<RewriteStep> step;
    std::size_t depth = 0;
  };

  std::uint32_t context_;
  Term start_;
  std::unordered_map<Term, Entry, TermHash> entries_;
  std::vector<Term> order_;
  SearchStatus status_ = SearchStatus::Exhausted;
  SearchStats stats_;
};

}  // namespace rigidlab
