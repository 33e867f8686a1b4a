#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "term.hpp"

namespace rigidlab {

// Ordered set of symbols, unique by name.
class Signature {
public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  void add(Symbol s);
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::uint32_t> arity(std::string_view name) const;
  // Declaration order, used for canonical enumeration order.
  std::optional<std::size_t> rank(std::string_view name) const;
  bool contains(std::string_view name) const { return rank(name).has_value(); }

  // Throws Error on unknown symbols or arity mismatches.
  void check(const Term& t) const;

private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Equation {
  Term lhs;
  Term rhs;
  std::uint32_t context = 0;

  // Validates both sides against the context.
  static Equation make(Term lhs, Term rhs, std::uint32_t context);
  TermInContext left() const { return {lhs, context}; }
  TermInContext right() const { return {rhs, context}; }

  friend bool operator==(const Equation&, const Equation&) = default;
};

struct Theory {
  Signature signature;
  std::vector<Equation> axioms;

  // Checks every axiom against the signature.
  void check() const;
};

// Indices of axioms with a side that is not linear-regular.
std::vector<std::size_t> validate_linear_regular(const Theory& th);

// Grammar, one declaration per line, '#' to end of line is a comment:
//   symbol <name> <arity>
//   axiom [<n>] <lhs> = <rhs>
Theory parse_theory(std::string_view text);
std::string render_theory(const Theory& th);

// "[n] lhs = rhs"; the context prefix is optional and defaults to the
// largest variable index present.
Equation parse_equation(std::string_view text);
std::string to_string(const Equation& eq);

}  // namespace rigidlab
