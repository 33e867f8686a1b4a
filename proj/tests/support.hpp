#pragma once

// Random generators shared by the unit and acceptance suites.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "reduction.hpp"
#include "rewrite.hpp"

namespace rigidlab::testing {

using Rng = std::mt19937_64;

inline Term term_of(const char* text) { return parse_term(text); }
inline TermInContext tc(const char* text, std::uint32_t n) { return TermInContext(parse_term(text), n); }

// Random tree shape of exactly `size` nodes over the signature's symbols of
// positive arity; leaves are x1 placeholders.
inline Term random_shape(const Signature& sig, std::size_t size, Rng& rng) {
  if (size == 1) return Term::var(1);
  std::vector<const Symbol*> fits;
  for (const auto& s : sig.symbols()) {
    if (s.arity > 0 && s.arity <= size - 1) fits.push_back(&s);
  }
  if (fits.empty()) return Term::var(1);
  const Symbol& f = *fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
  // split size-1 into arity positive parts
  std::vector<std::size_t> parts(f.arity, 1);
  for (std::size_t extra = size - 1 - f.arity; extra > 0; --extra) {
    ++parts[std::uniform_int_distribution<std::size_t>(0, f.arity - 1)(rng)];
  }
  std::vector<Term> kids;
  for (auto p : parts) kids.push_back(random_shape(sig, p, rng));
  return Term::app(f.name, std::move(kids));
}

inline std::size_t leaf_count(const Term& t) {
  if (t.is_var()) return 1;
  std::size_t n = 0;
  for (const auto& c : t.children()) n += leaf_count(c);
  return n;
}

inline Term fill_leaves(const Term& t, const std::vector<std::uint32_t>& vars, std::size_t& next) {
  if (t.is_var()) return Term::var(vars[next++]);
  std::vector<Term> kids;
  for (const auto& c : t.children()) kids.push_back(fill_leaves(c, vars, next));
  return Term::app(t.symbol(), std::move(kids));
}

// Linear-regular term with leaves numbered by a random permutation.
inline TermInContext random_linear_term(const Signature& sig, std::size_t max_size, Rng& rng) {
  auto size = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
  Term shape = random_shape(sig, size, rng);
  std::vector<std::uint32_t> vars(leaf_count(shape));
  std::iota(vars.begin(), vars.end(), 1u);
  std::shuffle(vars.begin(), vars.end(), rng);
  std::size_t next = 0;
  return TermInContext(fill_leaves(shape, vars, next), static_cast<std::uint32_t>(vars.size()));
}

// Arbitrary (possibly non-linear) term over context n.
inline Term random_term(const Signature& sig, std::size_t max_size, std::uint32_t n, Rng& rng) {
  auto size = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
  Term shape = random_shape(sig, size, rng);
  std::vector<std::uint32_t> vars(leaf_count(shape));
  for (auto& v : vars) v = std::uniform_int_distribution<std::uint32_t>(1, n)(rng);
  std::size_t next = 0;
  return fill_leaves(shape, vars, next);
}

inline Word random_word(const std::string& alphabet, std::size_t max_len, Rng& rng) {
  Word w;
  auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < len; ++i) w += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
  return w;
}

// Linear-regular term of the compiled theory, biased towards the
// m(w(alpha(s)), t) shape with w one of the goal words, so the goal axiom
// and the relations actually fire. At most `max_size` nodes.
inline Term random_compiled_shape(const WordProblemInstance& inst, std::size_t max_size, Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (max_size <= 1) return Term::var(1);
  double c = coin(rng);
  if (max_size >= 3 && c < 0.55) {
    Word w;
    double pick = coin(rng);
    if (pick < 0.4) w = inst.goal.first;
    else if (pick < 0.7) w = inst.goal.second;
    else w = random_word(inst.alphabet, 3, rng);
    const std::size_t overhead = 1 + w.size() + 1;  // m, w, alpha
    if (overhead + 2 <= max_size) {
      std::size_t rest = max_size - overhead;
      auto left = std::uniform_int_distribution<std::size_t>(1, rest - 1)(rng);
      Term s = random_compiled_shape(inst, left, rng);
      Term t = random_compiled_shape(inst, rest - s.size(), rng);
      return Term::app(std::string(kPairSymbol), {word_term(w, Term::app(std::string(kMarkerSymbol), {s})), t});
    }
  }
  if (c < 0.75 && max_size >= 3) {
    auto left = std::uniform_int_distribution<std::size_t>(1, max_size - 2)(rng);
    Term s = random_compiled_shape(inst, left, rng);
    Term t = random_compiled_shape(inst, max_size - 1 - s.size(), rng);
    return Term::app(std::string(kPairSymbol), {s, t});
  }
  if (c < 0.95) {
    std::string g;
    auto k = std::uniform_int_distribution<std::size_t>(0, inst.alphabet.size())(rng);
    g = k == inst.alphabet.size() ? std::string(kMarkerSymbol) : std::string(1, inst.alphabet[k]);
    return Term::app(g, {random_compiled_shape(inst, max_size - 1, rng)});
  }
  return Term::var(1);
}

inline TermInContext random_compiled_term(const WordProblemInstance& inst, std::size_t max_size, Rng& rng) {
  Term shape = random_compiled_shape(inst, max_size, rng);
  std::vector<std::uint32_t> vars(leaf_count(shape));
  std::iota(vars.begin(), vars.end(), 1u);
  std::shuffle(vars.begin(), vars.end(), rng);
  std::size_t next = 0;
  return TermInContext(fill_leaves(shape, vars, next), static_cast<std::uint32_t>(vars.size()));
}

// Random walk of up to `steps` rewrite steps from `start`.
inline Derivation random_walk(const Theory& th, const TermInContext& start, std::size_t steps, std::size_t slack,
                              Rng& rng) {
  Derivation d{start.context(), start.term(), {}, start.term()};
  TermInContext cur = start;
  const std::size_t cap = start.size() + slack;
  for (std::size_t i = 0; i < steps; ++i) {
    auto next = successors(cur, th, cap);
    if (next.empty()) break;
    auto& pick = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
    d.steps.push_back(pick.step);
    cur = TermInContext(pick.term, cur.context());
  }
  d.end = cur.term();
  return d;
}

}  // namespace rigidlab::testing
