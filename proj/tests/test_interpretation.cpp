#include <gtest/gtest.h>

#include "interpretation.hpp"
#include "reduction.hpp"
#include "support.hpp"

using namespace rigidlab;
using namespace rigidlab::testing;

namespace {

WordProblemInstance commuting() { return parse_instance("alphabet a b\nrel ab = ba\ngoal ab = ba\n"); }
WordProblemInstance no_instance() { return parse_instance("alphabet a b\ngoal a = b\n"); }

SearchBounds depth(std::size_t d) {
  SearchBounds b;
  b.depth = d;
  return b;
}

// J after I, built symbol by symbol.
Interpretation compose(const Interpretation& j, const Interpretation& i) {
  std::map<std::string, TermInContext> a;
  for (const auto& [sym, img] : i.assignment()) a.emplace(sym, extend(j, img));
  return Interpretation(i.source(), j.target(), a);
}

}  // namespace

TEST(Interpretation, ExtendExamples) {
  auto i = build_interpretation(commuting());
  EXPECT_EQ(extend(i, tc("l(x1,x2)", 2)).term(), term_of("m(a(b(alpha(x1))),x2)"));
  EXPECT_EQ(extend(i, tc("x3", 3)), tc("x3", 3));
  EXPECT_EQ(extend(i, tc("m(r(x2,x1),x3)", 3)).term(), term_of("m(m(b(a(alpha(x2))),x1),x3)"));
}

TEST(Interpretation, ConstructionErrors) {
  auto t0 = build_t0();
  auto th = compile_reduction(commuting());
  std::map<std::string, TermInContext> missing{{"l", tc("m(x1,x2)", 2)}};
  EXPECT_THROW(Interpretation(t0, th, missing), Error);
  std::map<std::string, TermInContext> wrong_ctx{
      {"l", tc("m(x1,x2)", 3)}, {"r", tc("m(x1,x2)", 2)}, {"m", tc("m(x1,x2)", 2)}};
  EXPECT_THROW(Interpretation(t0, th, wrong_ctx), Error);
  std::map<std::string, TermInContext> foreign{
      {"l", tc("q(x1,x2)", 2)}, {"r", tc("m(x1,x2)", 2)}, {"m", tc("m(x1,x2)", 2)}};
  EXPECT_THROW(Interpretation(t0, th, foreign), Error);
}

TEST(Interpretation, PreservesT0Axiom) {
  auto r = check_preserves_axioms(build_interpretation(commuting()), depth(1));
  ASSERT_EQ(r.size(), 1u);
  ASSERT_TRUE(r[0].proved());
  EXPECT_EQ(r[0].derivation->steps.size(), 1u);
  EXPECT_EQ(r[0].derivation->start, term_of("m(a(b(alpha(x1))),x2)"));
  EXPECT_EQ(r[0].derivation->end, term_of("m(b(a(alpha(x2))),x1)"));
}

TEST(Interpretation, IdentityPreservesAxioms) {
  auto th = compile_reduction(commuting());
  for (const auto& r : check_preserves_axioms(Interpretation::identity(th), depth(1))) {
    ASSERT_TRUE(r.proved());
    EXPECT_LE(r.derivation->steps.size(), 1u);
  }
}

TEST(Interpretation, CollapsingAssignmentNotPreserved) {
  Theory free{Signature({{"m", 2}}), {}};
  std::map<std::string, TermInContext> a{
      {"l", tc("m(x1,x2)", 2)}, {"r", tc("m(x1,x2)", 2)}, {"m", tc("m(x1,x2)", 2)}};
  auto r = check_preserves_axioms(Interpretation(build_t0(), free, a), depth(50));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].status, SearchStatus::Exhausted);
  EXPECT_TRUE(r[0].certified_unprovable);
}

TEST(Interpretation, Equality) {
  auto i = build_interpretation(commuting());
  for (const auto& c : interpretations_equal(i, i, depth(0))) {
    ASSERT_TRUE(c.result.proved()) << c.symbol;
    EXPECT_TRUE(c.result.derivation->steps.empty());
  }

  auto a = i.assignment();
  a.at("l") = tc("m(b(a(alpha(x2))),x1)", 2);
  auto shifted = Interpretation(i.source(), i.target(), a);
  for (const auto& c : interpretations_equal(i, shifted, depth(1))) {
    ASSERT_TRUE(c.result.proved()) << c.symbol;
    EXPECT_LE(c.result.derivation->steps.size(), 1u);
  }

  auto n = build_interpretation(no_instance());
  auto na = n.assignment();
  na.at("l") = tc("m(b(alpha(x1)),x2)", 2);
  auto j = Interpretation(n.source(), n.target(), na);
  auto cmp = interpretations_equal(n, j, depth(8));
  bool l_found = false;
  for (const auto& c : cmp) {
    if (c.symbol == "l") l_found = c.result.proved();
  }
  EXPECT_FALSE(l_found);
  EXPECT_THROW(interpretations_equal(i, n, depth(1)), Error);
}

TEST(Interpretation, IdentityIsConservative) {
  auto rep = probe_conservativity(Interpretation::identity(build_t0()), 5, depth(6));
  EXPECT_TRUE(rep.confirmed.empty());
  EXPECT_TRUE(rep.candidates.empty());
  EXPECT_GT(rep.pairs_examined, 0u);
}

TEST(Interpretation, NoInstanceSmallProbe) {
  auto rep = probe_conservativity(build_interpretation(no_instance()), 5, depth(6));
  EXPECT_TRUE(rep.confirmed.empty());
  EXPECT_TRUE(rep.candidates.empty());
}

TEST(Interpretation, YesInstanceFailure) {
  auto rep = probe_conservativity(build_interpretation(commuting()), 3, depth(6));
  bool seen = false;
  for (const auto& p : rep.confirmed) {
    if (p.lhs == tc("l(x1,x2)", 2) && p.rhs == tc("r(x1,x2)", 2)) seen = true;
    EXPECT_TRUE(replay(p.target_proof, build_interpretation(commuting()).target()));
  }
  EXPECT_TRUE(seen);
}

TEST(Interpretation, ParseAndRender) {
  auto i = build_interpretation(commuting());
  auto text = render_interpretation(i, "t0.thy", "ab.thy");
  auto back = parse_interpretation(text, [&](const std::string& p) {
    return p == "t0.thy" ? build_t0() : compile_reduction(commuting());
  });
  EXPECT_EQ(back.assignment(), i.assignment());
  auto loader = [](const std::string&) { return build_t0(); };
  EXPECT_THROW(parse_interpretation("source a\nmap l = l(x1,x2)\n", loader), ParseError);
  EXPECT_THROW(parse_interpretation("source a\ntarget b\nmap q = l(x1,x2)\n", loader), ParseError);
  EXPECT_THROW(parse_interpretation("source a\ntarget b\nmap l = l(x1,x2)\n", loader), ParseError);
}

TEST(InterpretationProperty, ExtendIsCompositional) {
  Rng rng(51);
  auto inst = commuting();
  auto i = build_interpretation(inst);
  auto t0 = build_t0();
  for (int k = 0; k < 400; ++k) {
    TermInContext t(random_term(t0.signature, 9, 3, rng), 3);
    std::vector<TermInContext> args;
    for (int a = 0; a < 3; ++a) args.emplace_back(random_term(t0.signature, 7, 2, rng), 2);
    std::vector<TermInContext> images;
    for (const auto& a : args) images.push_back(extend(i, a));
    EXPECT_EQ(extend(i, substitute_terms(t, args)), substitute_terms(extend(i, t), images));

    auto lt = random_linear_term(t0.signature, 11, rng);
    auto perms = Permutation::all(std::min<std::uint32_t>(lt.context(), 5));
    if (lt.context() > 5) continue;
    const auto& p = perms[rng() % perms.size()];
    EXPECT_EQ(extend(i, substitute_simple(lt, p)), substitute_simple(extend(i, lt), p));
    EXPECT_TRUE(is_linear_regular(extend(i, lt)));
  }
}

TEST(InterpretationProperty, CompositionOfInterpretations) {
  Rng rng(52);
  auto i = build_interpretation(commuting());
  auto j = Interpretation::identity(i.target());
  auto ji = compose(j, i);
  auto back = compose(i, Interpretation::identity(build_t0()));
  for (int k = 0; k < 300; ++k) {
    auto t = random_linear_term(build_t0().signature, 11, rng);
    EXPECT_EQ(extend(ji, t), extend(j, extend(i, t)));
    EXPECT_EQ(extend(back, t), extend(i, t));
  }
}
