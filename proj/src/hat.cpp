#include "hat.hpp"

namespace rigidlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(CongruenceStatus s) {
  switch (s) {
    case CongruenceStatus::Found: return "found";
    case CongruenceStatus::NotFound: return "not-found";
    case CongruenceStatus::OracleUncertain: return "oracle-uncertain";
  }
  return "?";
}

WordOracle::WordOracle(WordProblemInstance inst, WordBounds bounds)
    : inst_(std::move(inst)), theory_(compile_reduction(inst_)), bounds_(bounds) {}

OracleAnswer WordOracle::equivalent(const Word& a, const Word& b) const {
  auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto found = word_semidecide(inst_, a, b, bounds_);
  OracleAnswer ans;
  ans.status = found.status;
  ans.stats = found.stats;
  if (found.derivable()) {
    ans.verdict = Verdict::Yes;
    ans.certificate = std::move(found.derivation);
  } else if (found.certified_underivable) {
    ans.verdict = Verdict::No;
  }
  std::lock_guard lock(mutex_);
  return cache_.emplace(std::move(key), std::move(ans)).first->second;
}

std::size_t WordOracle::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

namespace {

bool is_generator(const WordProblemInstance& inst, const Term& t) {
  return !t.is_var() && t.arity() == 1 && t.symbol().size() == 1 &&
         inst.alphabet.find(t.symbol()[0]) != std::string::npos;
}

bool is_marker(const Term& t) { return !t.is_var() && t.arity() == 1 && t.symbol() == kMarkerSymbol; }
bool is_pair(const Term& t) { return !t.is_var() && t.arity() == 2 && t.symbol() == kPairSymbol; }

// s with t = w(s) exactly; nullopt if the chain above s differs from w.
std::optional<Term> strip_word(const Term& t, const Word& w) {
  const Term* cur = &t;
  for (char c : w) {
    if (cur->is_var() || cur->arity() != 1 || cur->symbol() != std::string_view(&c, 1)) return std::nullopt;
    cur = &cur->children()[0];
  }
  return *cur;
}

std::optional<Term> preimage(const WordProblemInstance& inst, const Term& t) {
  if (t.is_var()) return t;
  if (!is_pair(t)) return std::nullopt;
  const auto& first = t.children()[0];
  const auto& second = t.children()[1];
  auto right = preimage(inst, second);
  if (!right) return std::nullopt;
  for (const auto& [symbol, word] : {std::pair{"l", &inst.goal.first}, std::pair{"r", &inst.goal.second}}) {
    auto under = strip_word(first, *word);
    if (under && is_marker(*under)) {
      if (auto left = preimage(inst, under->children()[0])) return Term::app(symbol, {*left, *right});
    }
  }
  if (auto left = preimage(inst, first)) return Term::app("m", {*left, *right});
  return std::nullopt;
}

struct Hatter {
  const WordOracle& oracle;
  const WordProblemInstance& inst;
  HatResult& result;
  Position path;

  Term run(const Term& t) {
    if (t.is_var()) return t;
    if (is_generator(inst, t) || is_marker(t)) {
      path.push_back(0);
      Term out = run(t.children()[0]);
      path.pop_back();
      return out;
    }
    if (!is_pair(t)) throw Error("symbol '" + t.symbol() + "' is not in the compiled signature");

    const Term& first = t.children()[0];
    Word w;
    const Term* cur = &first;
    while (is_generator(inst, *cur)) {
      w += cur->symbol();
      cur = &cur->children()[0];
    }
    std::optional<Word> chosen;
    int clause = 5;
    if (is_marker(*cur)) {
      HatDecision decision;
      decision.position = path;
      decision.word = w;
      const auto& [u, v] = inst.goal;
      decision.u_equiv = oracle.equivalent(u, w);
      if (decision.u_equiv->verdict == Verdict::Yes) {
        chosen = u;
        clause = 3;
      } else {
        if (decision.u_equiv->verdict == Verdict::Unknown) result.uncertain = true;
        decision.v_equiv = oracle.equivalent(v, w);
        if (decision.v_equiv->verdict == Verdict::Yes) {
          decision.goal_equiv = oracle.equivalent(u, v);
          if (decision.goal_equiv->verdict == Verdict::No) {
            chosen = v;
            clause = 4;
          } else if (decision.goal_equiv->verdict == Verdict::Unknown) {
            result.uncertain = true;
          }
        } else if (decision.v_equiv->verdict == Verdict::Unknown) {
          result.uncertain = true;
        }
      }
      decision.clause = clause;
      result.decisions.push_back(std::move(decision));
    }

    const std::size_t depth = path.size();
    path.push_back(0);
    Term left = [&] {
      if (!chosen) return run(first);
      // s sits below w and the marker
      path.insert(path.end(), w.size() + 1, 0);
      return word_term(*chosen, Term::app(std::string(kMarkerSymbol), {run(cur->children()[0])}));
    }();
    path.resize(depth);
    path.push_back(1);
    Term right = run(t.children()[1]);
    path.resize(depth);
    return Term::app(std::string(kPairSymbol), {std::move(left), std::move(right)});
  }
};

}  // namespace

SpecialTermTag is_special(const WordProblemInstance& inst, const TermInContext& t) {
  SpecialTermTag tag;
  if (auto pre = preimage(inst, t.term())) {
    tag.special = true;
    tag.preimage = TermInContext(*pre, t.context());
  }
  return tag;
}

HatResult hat(const WordOracle& oracle, const TermInContext& t) {
  HatResult result{t, false, {}};
  Hatter h{oracle, oracle.instance(), result, {}};
  Term out = h.run(t.term());
  result.term = TermInContext(std::move(out), t.context());
  return result;
}

CongruenceResult check_hat_congruence(const WordOracle& oracle, const Derivation& d, const SearchBounds& bounds) {
  replay_terms(d, oracle.theory());
  CongruenceResult out{CongruenceStatus::NotFound, hat(oracle, {d.start, d.context}), hat(oracle, {d.end, d.context}), {}};
  out.proof = prove_bounded(oracle.theory(), Equation::make(out.start.term.term(), out.end.term.term(), d.context), bounds);
  if (out.proof.proved()) {
    out.status = CongruenceStatus::Found;
  } else if (out.start.uncertain || out.end.uncertain) {
    out.status = CongruenceStatus::OracleUncertain;
  }
  return out;
}

}  // namespace rigidlab
