#include <gtest/gtest.h>

#include <json.hpp>
#include <memory>
#include <string>

#include "rigidlab/rigidlab.h"

namespace {

using Json = nlohmann::json;

struct Doc {
  rl_status status = RL_ERR_INTERNAL;
  rl_outcome outcome = RL_INDETERMINATE;
  Json json;
};

template <typename F>
Doc run(F&& call) {
  Doc d;
  char* text = nullptr;
  d.status = call(&d.outcome, &text);
  if (text) {
    d.json = Json::parse(text);
    rl_string_free(text);
  }
  return d;
}

using TheoryPtr = std::unique_ptr<rl_theory, decltype(&rl_theory_free)>;
using InstancePtr = std::unique_ptr<rl_instance, decltype(&rl_instance_free)>;

TheoryPtr t0() {
  rl_theory* th = nullptr;
  EXPECT_EQ(rl_theory_t0(&th), RL_OK);
  return {th, rl_theory_free};
}

InstancePtr instance(const char* text) {
  rl_instance* inst = nullptr;
  EXPECT_EQ(rl_instance_parse(text, &inst), RL_OK) << rl_last_error();
  return {inst, rl_instance_free};
}

rl_bounds bounds(uint32_t depth) {
  rl_bounds b;
  rl_bounds_default(&b);
  b.depth = depth;
  return b;
}

}  // namespace

TEST(CApi, Defaults) {
  rl_bounds b;
  rl_bounds_default(&b);
  EXPECT_EQ(b.depth, 16u);
  EXPECT_EQ(b.slack, 8u);
  EXPECT_EQ(b.size_cap, 0u);
  EXPECT_EQ(b.node_budget, 1'000'000u);
  EXPECT_STREQ(rl_version(), "1.0.0");
}

TEST(CApi, ParseErrors) {
  rl_theory* th = nullptr;
  EXPECT_EQ(rl_theory_parse("symbol m 2\naxiom [2] q(x1,x2) = m(x1,x2)\n", &th), RL_ERR_PARSE);
  EXPECT_EQ(th, nullptr);
  EXPECT_EQ(std::string(rl_last_error()).rfind("2:", 0), 0u) << rl_last_error();
  EXPECT_EQ(rl_theory_load("/nonexistent/file.thy", &th), RL_ERR_IO);
  EXPECT_EQ(rl_theory_parse(nullptr, &th), RL_ERR_INVALID);
  rl_instance* inst = nullptr;
  EXPECT_EQ(rl_instance_parse("alphabet a\n", &inst), RL_ERR_PARSE);
}

TEST(CApi, ProveOutcomes) {
  auto th = t0();
  auto b = bounds(1);
  auto yes = run([&](auto* o, auto* j) { return rl_prove(th.get(), "[2] l(x1,x2) = r(x2,x1)", &b, o, j); });
  ASSERT_EQ(yes.status, RL_OK);
  EXPECT_EQ(yes.outcome, RL_POSITIVE);
  EXPECT_EQ(yes.json["derivation"]["steps"].size(), 1u);
  EXPECT_EQ(yes.json["outcome"], "positive");
  EXPECT_EQ(yes.json["bounds"]["depth"], 1);

  b = bounds(10);
  auto no = run([&](auto* o, auto* j) { return rl_prove(th.get(), "[2] l(x1,x2) = r(x1,x2)", &b, o, j); });
  EXPECT_EQ(no.outcome, RL_NEGATIVE);
  EXPECT_TRUE(no.json["certified_unprovable"]);

  auto bad = run([&](auto* o, auto* j) { return rl_prove(th.get(), "[2] l(x1,x2 = r(x1,x2)", &b, o, j); });
  EXPECT_EQ(bad.status, RL_ERR_PARSE);
  auto unknown = run([&](auto* o, auto* j) { return rl_prove(th.get(), "[2] q(x1,x2) = r(x1,x2)", &b, o, j); });
  EXPECT_EQ(unknown.status, RL_ERR_INVALID);
}

TEST(CApi, ReplayAndCensus) {
  auto th = t0();
  auto b = bounds(4);
  auto proof = run([&](auto* o, auto* j) {
    return rl_prove(th.get(), "[4] m(l(x1,x2),l(x3,x4)) = m(r(x2,x1),r(x4,x3))", &b, o, j);
  });
  ASSERT_EQ(proof.outcome, RL_POSITIVE);
  std::string text = proof.json.dump();
  auto ok = run([&](auto* o, auto* j) { return rl_replay(th.get(), text.c_str(), o, j); });
  EXPECT_EQ(ok.outcome, RL_POSITIVE);
  EXPECT_TRUE(ok.json["valid"]);

  auto tampered = proof.json["derivation"];
  tampered["end"] = "m(x1,x2)";
  std::string bad_text = tampered.dump();
  auto bad = run([&](auto* o, auto* j) { return rl_replay(th.get(), bad_text.c_str(), o, j); });
  EXPECT_EQ(bad.status, RL_OK);
  EXPECT_EQ(bad.outcome, RL_NEGATIVE);
  EXPECT_FALSE(bad.json["valid"]);

  auto census = run([&](auto* o, auto* j) { return rl_census(th.get(), text.c_str(), "m", o, j); });
  EXPECT_EQ(census.json["counts"], Json::array({1, 1, 1}));
  EXPECT_TRUE(census.json["constant"]);

  auto garbage = run([&](auto* o, auto* j) { return rl_replay(th.get(), "{not json", o, j); });
  EXPECT_EQ(garbage.status, RL_ERR_PARSE);
}

TEST(CApi, RigidityAndReduction) {
  auto inst = instance("alphabet a b\nrel ab = ba\ngoal ab = ba\n");
  rl_theory* compiled = nullptr;
  rl_interp* interp = nullptr;
  ASSERT_EQ(rl_reduce(inst.get(), &compiled, &interp), RL_OK);
  TheoryPtr th(compiled, rl_theory_free);
  std::unique_ptr<rl_interp, decltype(&rl_interp_free)> ip(interp, rl_interp_free);

  char* text = nullptr;
  ASSERT_EQ(rl_theory_render(th.get(), &text), RL_OK);
  rl_theory* again = nullptr;
  EXPECT_EQ(rl_theory_parse(text, &again), RL_OK);
  rl_theory_free(again);
  rl_string_free(text);

  auto b = bounds(6);
  auto r = run([&](auto* o, auto* j) { return rl_rigidity_search(th.get(), 8, 2, &b, o, j); });
  ASSERT_EQ(r.status, RL_OK);
  EXPECT_EQ(r.outcome, RL_POSITIVE);
  EXPECT_EQ(r.json["report"]["term"], "m(a(b(alpha(x1))),x2)");
  std::string report = r.json.dump();
  auto replayed = run([&](auto* o, auto* j) { return rl_replay(th.get(), report.c_str(), o, j); });
  EXPECT_EQ(replayed.outcome, RL_POSITIVE);

  auto t = t0();
  b = bounds(8);
  auto rigid = run([&](auto* o, auto* j) { return rl_rigidity_search(t.get(), 6, 3, &b, o, j); });
  EXPECT_EQ(rigid.outcome, RL_NEGATIVE);
  EXPECT_TRUE(rigid.json["certificate"]["certified"]);

  b = bounds(6);
  auto cons = run([&](auto* o, auto* j) { return rl_conservativity(ip.get(), 3, &b, o, j); });
  EXPECT_EQ(cons.outcome, RL_POSITIVE);
  EXPECT_FALSE(cons.json["confirmed"].empty());
}

TEST(CApi, WordAndHat) {
  auto inst = instance("alphabet a b\ngoal a = b\n");
  auto b = bounds(16);
  auto w = run([&](auto* o, auto* j) { return rl_word(inst.get(), "a", "b", &b, o, j); });
  EXPECT_EQ(w.outcome, RL_NEGATIVE);
  EXPECT_TRUE(w.json["certified_underivable"]);
  auto eps = run([&](auto* o, auto* j) { return rl_word(inst.get(), "eps", "eps", &b, o, j); });
  EXPECT_EQ(eps.outcome, RL_POSITIVE);
  auto foreign = run([&](auto* o, auto* j) { return rl_word(inst.get(), "a", "c", &b, o, j); });
  EXPECT_EQ(foreign.status, RL_ERR_INVALID);

  auto h = run([&](auto* o, auto* j) { return rl_hat(inst.get(), "m(b(alpha(a(x1))),x2)", 0, &b, o, j); });
  ASSERT_EQ(h.status, RL_OK);
  EXPECT_EQ(h.outcome, RL_POSITIVE);
  EXPECT_EQ(h.json["term"], "m(b(alpha(x1)),x2)");
  EXPECT_EQ(h.json["preimage"], "r(x1,x2)");
  auto bad = run([&](auto* o, auto* j) { return rl_hat(inst.get(), "l(x1,x2)", 0, &b, o, j); });
  EXPECT_EQ(bad.status, RL_ERR_INVALID);
}
