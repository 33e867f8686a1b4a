#pragma once

// Terms in context: immutable trees of function symbols over positional
// variables x1..xn, with the context length carried alongside.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rigidlab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column, const std::string& source = "");
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // The description without the location prefix.
  const std::string& message() const { return message_; }

private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

struct Symbol {
  std::string name;
  std::uint32_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// Child indices from the root, 0-based.
using Position = std::vector<std::uint32_t>;

class Term {
public:
  static Term var(std::uint32_t index);
  static Term app(std::string symbol, std::vector<Term> children = {});

  bool is_var() const;
  std::uint32_t var_index() const;  // 1-based; 0 for applications
  const std::string& symbol() const;
  std::span<const Term> children() const;
  std::size_t arity() const { return children().size(); }

  // Node count (applications plus variables).
  std::size_t size() const;
  std::size_t hash() const;
  // Largest variable index occurring in the term, 0 if ground.
  std::uint32_t max_var() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Total order: size first, then pre-order token sequence. Variables sort
// before symbols; symbols compare by name.
bool term_less(const Term& a, const Term& b);

class TermInContext {
public:
  // Throws Error when a variable index exceeds the context.
  TermInContext(Term term, std::uint32_t context);

  const Term& term() const { return term_; }
  std::uint32_t context() const { return context_; }
  std::size_t size() const { return term_.size(); }

  friend bool operator==(const TermInContext&, const TermInContext&) = default;

private:
  Term term_;
  std::uint32_t context_;
};

// Total function (n] -> (k]. Images are 1-based.
class VarMap {
public:
  VarMap(std::uint32_t codomain, std::vector<std::uint32_t> images);

  std::uint32_t domain() const { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t codomain() const { return codomain_; }
  std::uint32_t operator()(std::uint32_t i) const { return images_.at(i - 1); }
  const std::vector<std::uint32_t>& images() const { return images_; }

private:
  std::uint32_t codomain_;
  std::vector<std::uint32_t> images_;
};

class Permutation {
public:
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::uint32_t n);
  static Permutation transposition(std::uint32_t n, std::uint32_t i, std::uint32_t j);
  // All of S_n in lexicographic order of the image list.
  static std::vector<Permutation> all(std::uint32_t n);

  std::uint32_t size() const { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t operator()(std::uint32_t i) const { return images_.at(i - 1); }
  const std::vector<std::uint32_t>& images() const { return images_; }
  bool is_identity() const;
  Permutation inverse() const;
  VarMap as_map() const { return VarMap(size(), images_); }

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<std::uint32_t> images_;
};

// (after ∘ first)(i) = after(first(i))
Permutation compose(const Permutation& after, const Permutation& first);

std::vector<std::uint32_t> var_occurrences(const Term& t);
inline std::vector<std::uint32_t> var_occurrences(const TermInContext& t) {
  return var_occurrences(t.term());
}
bool is_linear_regular(const TermInContext& t);

TermInContext substitute_simple(const TermInContext& t, const VarMap& phi);
inline TermInContext substitute_simple(const TermInContext& t, const Permutation& sigma) {
  return substitute_simple(t, sigma.as_map());
}

// Simultaneous substitution of args[i-1] for x_i. All args must share a
// context, which becomes the context of the result.
TermInContext substitute_terms(const TermInContext& t, std::span<const TermInContext> args);
// Unchecked variant on bare terms; args.size() must cover every variable.
Term substitute(const Term& t, std::span<const Term> args);

std::size_t count_symbol(const Term& t, std::string_view symbol);

const Term& subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, std::size_t depth, const Term& replacement);
inline Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  return replace_at(t, pos, 0, replacement);
}
bool valid_position(const Term& t, const Position& pos);

std::string to_string(const Term& t);
std::string to_string(const Position& pos);

// Concrete syntax: x1, x2, ... for variables, f(t1,...,tk) for applications,
// c() for constants. Whitespace is ignored.
Term parse_term(std::string_view text);

}  // namespace rigidlab
