#include "rigidlab/rigidlab.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "json_io.hpp"

using namespace rigidlab;

struct rl_theory {
  Theory value;
};
struct rl_instance {
  WordProblemInstance value;
};
struct rl_interp {
  Interpretation value;
};

namespace {

thread_local std::string last_error;

rl_status fail(rl_status s, const std::string& what) {
  last_error = what;
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
rl_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const ParseError& e) {
    return fail(RL_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(RL_ERR_PARSE, e.what());
  } catch (const Error& e) {
    return fail(RL_ERR_INVALID, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(RL_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(RL_ERR_INTERNAL, e.what());
  }
}

SearchBounds search_bounds(const rl_bounds* b) {
  rl_bounds d;
  rl_bounds_default(&d);
  if (!b) b = &d;
  SearchBounds sb;
  sb.depth = b->depth;
  sb.slack = b->slack;
  if (b->size_cap) sb.size_cap = b->size_cap;
  sb.node_budget = b->node_budget;
  return sb;
}

WordBounds word_bounds(const rl_bounds* b) {
  auto sb = search_bounds(b);
  WordBounds wb;
  wb.depth = sb.depth;
  wb.slack = sb.slack;
  wb.length_cap = sb.size_cap;
  wb.node_budget = sb.node_budget;
  return wb;
}

unsigned jobs_of(const rl_bounds* b) { return b && b->jobs ? b->jobs : 1; }

rl_status emit(const Json& j, rl_outcome outcome, rl_outcome* outcome_out, char** json_out) {
  if (outcome_out) *outcome_out = outcome;
  if (json_out) {
    Json doc = j;
    doc["outcome"] = outcome == RL_POSITIVE ? "positive" : outcome == RL_NEGATIVE ? "negative" : "indeterminate";
    *json_out = dup(doc.dump(2));
    if (!*json_out) return fail(RL_ERR_INTERNAL, "out of memory");
  }
  return RL_OK;
}

template <typename T>
rl_status check_args(const T* p, const char* what) {
  if (!p) return fail(RL_ERR_INVALID, std::string(what) + " is null");
  return RL_OK;
}

}  // namespace

extern "C" {

const char* rl_version(void) { return "1.0.0"; }
const char* rl_last_error(void) { return last_error.c_str(); }
void rl_string_free(char* s) { std::free(s); }

void rl_bounds_default(rl_bounds* b) {
  if (!b) return;
  b->depth = 16;
  b->slack = 8;
  b->size_cap = 0;
  b->node_budget = 1'000'000;
  b->jobs = 1;
}

rl_status rl_theory_parse(const char* text, rl_theory** out) {
  if (!text || !out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new rl_theory{parse_theory(text)};
    return RL_OK;
  });
}

rl_status rl_theory_load(const char* path, rl_theory** out) {
  if (!path || !out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto text = read_file(path);
    try {
      *out = new rl_theory{parse_theory(text)};
    } catch (const ParseError& e) {
      throw ParseError(e.message(), e.line(), e.column(), path);
    }
    return RL_OK;
  });
}

rl_status rl_theory_render(const rl_theory* th, char** text_out) {
  if (!th || !text_out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    *text_out = dup(render_theory(th->value));
    return RL_OK;
  });
}

rl_status rl_theory_t0(rl_theory** out) {
  if (!out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new rl_theory{build_t0()};
    return RL_OK;
  });
}

void rl_theory_free(rl_theory* th) { delete th; }

rl_status rl_instance_parse(const char* text, rl_instance** out) {
  if (!text || !out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new rl_instance{parse_instance(text)};
    return RL_OK;
  });
}

rl_status rl_instance_load(const char* path, rl_instance** out) {
  if (!path || !out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto text = read_file(path);
    try {
      *out = new rl_instance{parse_instance(text)};
    } catch (const ParseError& e) {
      throw ParseError(e.message(), e.line(), e.column(), path);
    }
    return RL_OK;
  });
}

void rl_instance_free(rl_instance* inst) { delete inst; }

rl_status rl_interp_load(const char* path, rl_interp** out) {
  if (!path || !out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto text = read_file(path);
    auto dir = std::filesystem::path(path).parent_path();
    auto load = [&](const std::string& rel) {
      auto p = std::filesystem::path(rel);
      if (p.is_relative()) p = dir / p;
      return parse_theory(read_file(p.string()));
    };
    try {
      *out = new rl_interp{parse_interpretation(text, load)};
    } catch (const ParseError& e) {
      throw ParseError(e.message(), e.line(), e.column(), path);
    }
    return RL_OK;
  });
}

rl_status rl_interp_render(const rl_interp* i, const char* source_path, const char* target_path, char** text_out) {
  if (!i || !source_path || !target_path || !text_out) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    *text_out = dup(render_interpretation(i->value, source_path, target_path));
    return RL_OK;
  });
}

void rl_interp_free(rl_interp* i) { delete i; }

rl_status rl_reduce(const rl_instance* inst, rl_theory** theory_out, rl_interp** interp_out) {
  if (!inst) return fail(RL_ERR_INVALID, "null instance");
  return guarded([&] {
    std::unique_ptr<rl_theory> th(new rl_theory{compile_reduction(inst->value)});
    std::unique_ptr<rl_interp> in(new rl_interp{build_interpretation(inst->value)});
    if (theory_out) *theory_out = th.release();
    if (interp_out) *interp_out = in.release();
    return RL_OK;
  });
}

rl_status rl_prove(const rl_theory* th, const char* equation, const rl_bounds* b, rl_outcome* outcome,
                   char** json_out) {
  if (!th || !equation) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto goal = parse_equation(equation);
    th->value.signature.check(goal.lhs);
    th->value.signature.check(goal.rhs);
    auto sb = search_bounds(b);
    auto r = prove_bounded(th->value, goal, sb);
    Json j = to_json(r);
    j["goal"] = to_string(goal);
    j["bounds"] = to_json(sb);
    auto o = r.proved() ? RL_POSITIVE : r.certified_unprovable ? RL_NEGATIVE : RL_INDETERMINATE;
    return emit(j, o, outcome, json_out);
  });
}

rl_status rl_replay(const rl_theory* th, const char* derivation_json, rl_outcome* outcome, char** json_out) {
  if (!th || !derivation_json) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto doc = Json::parse(derivation_json);
    // Accept either a bare derivation or a result document embedding one.
    if (doc.contains("derivation") && doc["derivation"].is_object()) doc = doc["derivation"];
    else if (doc.contains("report") && doc["report"].is_object()) doc = doc["report"]["derivation"];
    auto d = derivation_from_json(doc);
    Json j{{"steps", d.steps.size()}};
    try {
      replay_terms(d, th->value);
      j["valid"] = true;
      return emit(j, RL_POSITIVE, outcome, json_out);
    } catch (const RewriteError& e) {
      j["valid"] = false;
      j["error"] = e.what();
      return emit(j, RL_NEGATIVE, outcome, json_out);
    }
  });
}

rl_status rl_census(const rl_theory* th, const char* derivation_json, const char* symbol, rl_outcome* outcome,
                    char** json_out) {
  if (!th || !derivation_json || !symbol) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto doc = Json::parse(derivation_json);
    if (doc.contains("derivation") && doc["derivation"].is_object()) doc = doc["derivation"];
    auto d = derivation_from_json(doc);
    Json j{{"symbol", symbol}};
    try {
      auto counts = symbol_census(d, th->value, symbol);
      j["valid"] = true;
      j["counts"] = counts;
      j["constant"] = std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
      return emit(j, RL_POSITIVE, outcome, json_out);
    } catch (const RewriteError& e) {
      j["valid"] = false;
      j["error"] = e.what();
      return emit(j, RL_NEGATIVE, outcome, json_out);
    }
  });
}

rl_status rl_rigidity_search(const rl_theory* th, uint32_t max_size, uint32_t max_context, const rl_bounds* b,
                             rl_outcome* outcome, char** json_out) {
  if (!th) return fail(RL_ERR_INVALID, "null theory");
  return guarded([&] {
    auto sb = search_bounds(b);
    auto r = search_flabby(th->value, max_size, max_context, sb, jobs_of(b));
    Json j = to_json(r);
    j["bounds"] = to_json(sb);
    j["max_size"] = max_size;
    j["max_context"] = max_context;
    auto o = r.status == RigidityStatus::FlabbyFound ? RL_POSITIVE
             : r.status == RigidityStatus::Exhausted ? RL_NEGATIVE
                                                     : RL_INDETERMINATE;
    return emit(j, o, outcome, json_out);
  });
}

rl_status rl_word(const rl_instance* inst, const char* w1, const char* w2, const rl_bounds* b, rl_outcome* outcome,
                  char** json_out) {
  if (!inst || !w1 || !w2) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto a = parse_word(w1);
    auto c = parse_word(w2);
    auto wb = word_bounds(b);
    auto r = word_semidecide(inst->value, a, c, wb);
    Json j = to_json(r);
    j["words"] = {render_word(a), render_word(c)};
    j["bounds"] = to_json(wb);
    auto o = r.derivable() ? RL_POSITIVE : r.certified_underivable ? RL_NEGATIVE : RL_INDETERMINATE;
    return emit(j, o, outcome, json_out);
  });
}

rl_status rl_hat(const rl_instance* inst, const char* term, uint32_t context, const rl_bounds* b,
                 rl_outcome* outcome, char** json_out) {
  if (!inst || !term) return fail(RL_ERR_INVALID, "null argument");
  return guarded([&] {
    auto t = parse_term(term);
    TermInContext tc(t, context ? context : t.max_var());
    WordOracle oracle(inst->value, word_bounds(b));
    oracle.theory().signature.check(t);
    auto h = hat(oracle, tc);
    auto tag = is_special(inst->value, h.term);
    Json j = to_json(h);
    j["input"] = to_string(t);
    j["context"] = tc.context();
    j["preimage"] = tag.preimage ? Json(to_string(tag.preimage->term())) : Json(nullptr);
    j["oracle_bounds"] = to_json(oracle.bounds());
    return emit(j, h.uncertain ? RL_INDETERMINATE : RL_POSITIVE, outcome, json_out);
  });
}

rl_status rl_conservativity(const rl_interp* i, uint32_t term_size_bound, const rl_bounds* b, rl_outcome* outcome,
                            char** json_out) {
  if (!i) return fail(RL_ERR_INVALID, "null interpretation");
  return guarded([&] {
    auto sb = search_bounds(b);
    auto r = probe_conservativity(i->value, term_size_bound, sb, jobs_of(b));
    Json j = to_json(r);
    j["bounds"] = to_json(sb);
    j["term_size_bound"] = term_size_bound;
    rl_outcome o = RL_INDETERMINATE;
    if (!r.confirmed.empty()) {
      o = RL_POSITIVE;
    } else if (r.candidates.empty() && r.target_closures_complete) {
      o = RL_NEGATIVE;
    }
    return emit(j, o, outcome, json_out);
  });
}

}  // extern "C"
