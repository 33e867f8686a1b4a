#include <gtest/gtest.h>

#include "reduction.hpp"
#include "support.hpp"
#include "theory.hpp"

using namespace rigidlab;
using namespace rigidlab::testing;

namespace {

constexpr const char* kT0 = R"(# T0
symbol l 2
symbol r 2
symbol m 2
axiom [2] l(x1,x2) = r(x2,x1)
)";

Theory single(const char* sig, const char* axiom) {
  return parse_theory(std::string(sig) + "\naxiom " + axiom + "\n");
}

}  // namespace

TEST(Theory, ParseT0) {
  auto th = parse_theory(kT0);
  ASSERT_EQ(th.signature.symbols().size(), 3u);
  for (const auto& s : th.signature.symbols()) EXPECT_EQ(s.arity, 2u);
  ASSERT_EQ(th.axioms.size(), 1u);
  EXPECT_EQ(th.axioms[0].lhs, term_of("l(x1,x2)"));
  EXPECT_EQ(th.axioms[0].rhs, term_of("r(x2,x1)"));
  EXPECT_EQ(th.axioms[0].context, 2u);
  EXPECT_EQ(th.signature.rank("r"), 1u);
}

TEST(Theory, MatchesBuiltT0) {
  auto built = build_t0();
  auto parsed = parse_theory(kT0);
  EXPECT_EQ(built.axioms, parsed.axioms);
  EXPECT_EQ(built.signature.symbols(), parsed.signature.symbols());
}

TEST(Theory, EmptyAxiomsGiveFreeTheory) {
  auto th = parse_theory("symbol m 2\n");
  EXPECT_TRUE(th.axioms.empty());
  EXPECT_TRUE(validate_linear_regular(th).empty());
}

TEST(Theory, UndeclaredSymbolRejected) {
  try {
    parse_theory("symbol m 2\naxiom [2] m(x1,x2) = q(x2,x1)\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_theory("symbol m 2\naxiom [2] m(x1) = m(x1,x2)\n"), ParseError);
  EXPECT_THROW(parse_theory("symbol m 2\naxiom [1] m(x1,x2) = m(x2,x1)\n"), ParseError);
  EXPECT_THROW(parse_theory("symbol m 2\nsymbol m 1\n"), ParseError);
  EXPECT_THROW(parse_theory("symbol m two\n"), ParseError);
  EXPECT_THROW(parse_theory("frobnicate\n"), ParseError);
}

TEST(Theory, ValidateLinearRegular) {
  EXPECT_TRUE(validate_linear_regular(build_t0()).empty());
  EXPECT_TRUE(validate_linear_regular(single("symbol m 2", "[2] m(x1,x2) = m(x2,x1)")).empty());
  EXPECT_EQ(validate_linear_regular(single("symbol m 2", "[1] m(x1,x1) = x1")), (std::vector<std::size_t>{0}));
  // unused context variable
  EXPECT_EQ(validate_linear_regular(single("symbol g 1", "[2] g(x1) = x1")), (std::vector<std::size_t>{0}));
}

TEST(Theory, Equations) {
  auto eq = parse_equation("[2] l(x1,x2) = r(x2,x1)");
  EXPECT_EQ(eq.context, 2u);
  EXPECT_EQ(parse_equation("l(x1,x3) = r(x2,x1)").context, 3u);
  EXPECT_EQ(to_string(eq), "[2] l(x1,x2) = r(x2,x1)");
  EXPECT_THROW(parse_equation("[2] l(x1,x2) r(x2,x1)"), ParseError);
  EXPECT_THROW(parse_equation("[1] l(x1,x2) = r(x2,x1)"), Error);
}

TEST(TheoryProperty, RenderParseRoundTrip) {
  Rng rng(21);
  Signature sig({{"m", 2}, {"f", 3}, {"g", 1}, {"c", 0}});
  for (int i = 0; i < 200; ++i) {
    Theory th{sig, {}};
    int n = static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) {
      std::uint32_t ctx = 1 + rng() % 3;
      th.axioms.push_back(Equation::make(random_term(sig, 8, ctx, rng), random_term(sig, 8, ctx, rng), ctx));
    }
    auto back = parse_theory(render_theory(th));
    EXPECT_EQ(back.axioms, th.axioms);
    EXPECT_EQ(back.signature.symbols(), th.signature.symbols());
  }
}
