#include "json_io.hpp"

namespace rigidlab {

namespace {

const char* direction_name(Direction d) { return d == Direction::LeftToRight ? "lr" : "rl"; }

[[noreturn]] void bad(const std::string& what) { throw ParseError("derivation document: " + what, 1, 1); }

}  // namespace

Json to_json(const RewriteStep& s) {
  Json subst = Json::array();
  for (const auto& t : s.substitution) subst.push_back(to_string(t));
  return {{"axiom", s.axiom}, {"direction", direction_name(s.direction)}, {"position", s.position},
          {"substitution", subst}};
}

Json to_json(const Derivation& d) {
  Json steps = Json::array();
  for (const auto& s : d.steps) steps.push_back(to_json(s));
  return {{"context", d.context}, {"start", to_string(d.start)}, {"end", to_string(d.end)}, {"steps", steps}};
}

Derivation derivation_from_json(const Json& j) {
  try {
    if (!j.is_object()) bad("expected an object");
    for (const char* key : {"context", "start", "end", "steps"}) {
      if (!j.contains(key)) bad(std::string("missing '") + key + "'");
    }
    Derivation d{j.at("context").get<std::uint32_t>(), parse_term(j.at("start").get<std::string>()), {},
                 parse_term(j.at("end").get<std::string>())};
    TermInContext(d.start, d.context);
    TermInContext(d.end, d.context);
    for (const auto& s : j.at("steps")) {
      RewriteStep step;
      step.axiom = s.at("axiom").get<std::size_t>();
      auto dir = s.at("direction").get<std::string>();
      if (dir == "lr") {
        step.direction = Direction::LeftToRight;
      } else if (dir == "rl") {
        step.direction = Direction::RightToLeft;
      } else {
        bad("direction must be 'lr' or 'rl'");
      }
      step.position = s.at("position").get<Position>();
      for (const auto& t : s.at("substitution")) step.substitution.push_back(parse_term(t.get<std::string>()));
      d.steps.push_back(std::move(step));
    }
    return d;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    bad(e.what());
  }
}

Json to_json(const SearchBounds& b) {
  Json j{{"depth", b.depth}, {"slack", b.slack}, {"node_budget", b.node_budget}};
  j["size_cap"] = b.size_cap ? Json(*b.size_cap) : Json(nullptr);
  return j;
}

Json to_json(const WordBounds& b) {
  Json j{{"depth", b.depth}, {"slack", b.slack}, {"node_budget", b.node_budget}};
  j["length_cap"] = b.length_cap ? Json(*b.length_cap) : Json(nullptr);
  return j;
}

Json to_json(const SearchStats& s) {
  return {{"expanded", s.expanded},         {"visited", s.visited},
          {"size_cap", s.size_cap},         {"size_cap_hit", s.size_cap_hit},
          {"depth_reached", s.depth_reached}};
}

Json to_json(const ProofResult& r) {
  Json j{{"status", to_string(r.status)},
         {"certified_unprovable", r.certified_unprovable},
         {"stats", to_json(r.stats)}};
  j["derivation"] = r.derivation ? to_json(*r.derivation) : Json(nullptr);
  return j;
}

Json to_json(const Permutation& p) { return p.images(); }

Json to_json(const FlabbyReport& r) {
  return {{"term", to_string(r.term.term())},
          {"context", r.term.context()},
          {"permutation", to_json(r.permutation)},
          {"permuted", to_string(substitute_simple(r.term, r.permutation).term())},
          {"derivation", to_json(r.derivation)}};
}

Json to_json(const ExhaustionCertificate& c) {
  return {{"terms_enumerated", c.terms_enumerated}, {"closures_computed", c.closures_computed},
          {"closure_total", c.closure_total},       {"closure_max", c.closure_max},
          {"size_cap_hit", c.size_cap_hit},         {"depth_limit_hit", c.depth_limit_hit},
          {"budget_hit", c.budget_hit},             {"certified", c.certified()}};
}

Json to_json(const RigidityResult& r) {
  Json j{{"status", to_string(r.status)}, {"certificate", to_json(r.certificate)}};
  j["report"] = r.report ? to_json(*r.report) : Json(nullptr);
  return j;
}

Json to_json(const WordDerivation& d) {
  Json words = Json::array();
  for (const auto& w : d.words) words.push_back(render_word(w));
  Json steps = Json::array();
  for (const auto& s : d.steps) {
    steps.push_back({{"relation", s.relation}, {"direction", direction_name(s.direction)}, {"offset", s.offset}});
  }
  return {{"words", words}, {"steps", steps}};
}

Json to_json(const WordSearchResult& r) {
  Json j{{"status", to_string(r.status)},
         {"certified_underivable", r.certified_underivable},
         {"stats", to_json(r.stats)}};
  j["derivation"] = r.derivation ? to_json(*r.derivation) : Json(nullptr);
  return j;
}

Json to_json(const OracleAnswer& a) {
  Json j{{"verdict", to_string(a.verdict)}, {"search_status", to_string(a.status)}, {"stats", to_json(a.stats)}};
  j["certificate"] = a.certificate ? to_json(*a.certificate) : Json(nullptr);
  return j;
}

Json to_json(const HatResult& h) {
  Json decisions = Json::array();
  for (const auto& d : h.decisions) {
    Json e{{"position", d.position}, {"word", render_word(d.word)}, {"clause", d.clause}};
    e["u_equiv"] = d.u_equiv ? to_json(*d.u_equiv) : Json(nullptr);
    e["v_equiv"] = d.v_equiv ? to_json(*d.v_equiv) : Json(nullptr);
    e["goal_equiv"] = d.goal_equiv ? to_json(*d.goal_equiv) : Json(nullptr);
    decisions.push_back(std::move(e));
  }
  return {{"term", to_string(h.term.term())}, {"uncertain", h.uncertain}, {"decisions", decisions}};
}

Json to_json(const ConservativityReport& r) {
  auto pairs = [](const std::vector<ConservativityPair>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) {
      a.push_back({{"lhs", to_string(p.lhs.term())},
                   {"rhs", to_string(p.rhs.term())},
                   {"context", p.lhs.context()},
                   {"target_proof", to_json(p.target_proof)}});
    }
    return a;
  };
  return {{"confirmed", pairs(r.confirmed)},
          {"candidates", pairs(r.candidates)},
          {"source_terms", r.source_terms},
          {"pairs_examined", r.pairs_examined},
          {"pairs_with_target_proof", r.pairs_with_target_proof},
          {"target_closures_complete", r.target_closures_complete}};
}

}  // namespace rigidlab
