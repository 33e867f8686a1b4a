#include "interpretation.hpp"

#include <atomic>
#include <cctype>
#include <thread>
#include <unordered_map>

#include "rigidity.hpp"

namespace rigidlab {

Interpretation::Interpretation(Theory source, Theory target, std::map<std::string, TermInContext> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  for (const auto& sym : source_.signature.symbols()) {
    auto it = assignment_.find(sym.name);
    if (it == assignment_.end()) throw Error("no image for source symbol '" + sym.name + "'");
    if (it->second.context() != sym.arity) {
      throw Error("image of '" + sym.name + "' must be in a context of length " + std::to_string(sym.arity));
    }
    try {
      target_.signature.check(it->second.term());
    } catch (const Error& e) {
      throw Error("image of '" + sym.name + "': " + e.what());
    }
  }
  for (const auto& [name, _] : assignment_) {
    if (!source_.signature.contains(name)) throw Error("'" + name + "' is not a source symbol");
  }
}

const TermInContext& Interpretation::image(const std::string& symbol) const {
  auto it = assignment_.find(symbol);
  if (it == assignment_.end()) throw Error("no image for symbol '" + symbol + "'");
  return it->second;
}

bool Interpretation::linear_regular() const {
  for (const auto& [_, img] : assignment_) {
    if (!is_linear_regular(img)) return false;
  }
  return true;
}

Interpretation Interpretation::identity(const Theory& th) {
  std::map<std::string, TermInContext> assignment;
  for (const auto& sym : th.signature.symbols()) {
    std::vector<Term> vars;
    for (std::uint32_t i = 1; i <= sym.arity; ++i) vars.push_back(Term::var(i));
    assignment.emplace(sym.name, TermInContext(Term::app(sym.name, std::move(vars)), sym.arity));
  }
  return Interpretation(th, th, std::move(assignment));
}

Term extend(const Interpretation& i, const Term& t) {
  if (t.is_var()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(extend(i, c));
  const auto& img = i.image(t.symbol());
  if (img.context() != kids.size()) {
    throw Error("symbol '" + t.symbol() + "' applied to " + std::to_string(kids.size()) + " arguments");
  }
  return substitute(img.term(), kids);
}

TermInContext extend(const Interpretation& i, const TermInContext& t) {
  return TermInContext(extend(i, t.term()), t.context());
}

std::vector<ProofResult> check_preserves_axioms(const Interpretation& i, const SearchBounds& bounds) {
  std::vector<ProofResult> out;
  for (const auto& ax : i.source().axioms) {
    auto goal = Equation::make(extend(i, ax.lhs), extend(i, ax.rhs), ax.context);
    out.push_back(prove_bounded(i.target(), goal, bounds));
  }
  return out;
}

std::vector<SymbolComparison> interpretations_equal(const Interpretation& a, const Interpretation& b,
                                                    const SearchBounds& bounds) {
  if (render_theory(a.source()) != render_theory(b.source()) || render_theory(a.target()) != render_theory(b.target())) {
    throw Error("interpretations have different source or target theories");
  }
  std::vector<SymbolComparison> out;
  for (const auto& sym : a.source().signature.symbols()) {
    const auto& ia = a.image(sym.name);
    const auto& ib = b.image(sym.name);
    auto goal = Equation::make(ia.term(), ib.term(), sym.arity);
    out.push_back({sym.name, prove_bounded(a.target(), goal, bounds)});
  }
  return out;
}

namespace {

struct SourceOutcome {
  std::vector<ConservativityPair> confirmed;
  std::vector<ConservativityPair> candidates;
  std::size_t pairs_with_target_proof = 0;
  bool target_complete = true;
};

}  // namespace

ConservativityReport probe_conservativity(const Interpretation& i, std::size_t term_size_bound,
                                          const SearchBounds& bounds, unsigned jobs) {
  const auto canonical = enumerate_linear_regular(i.source().signature, term_size_bound,
                                                  static_cast<std::uint32_t>(term_size_bound));
  // Every linear-regular source term within the bound, keyed by its image.
  std::unordered_map<Term, std::vector<TermInContext>, TermHash> by_image;
  std::vector<std::size_t> per_context;
  for (const auto& t : canonical) {
    for (const auto& sigma : Permutation::all(t.context())) {
      auto p = substitute_simple(t, sigma);
      by_image[extend(i, p.term())].push_back(p);
      if (per_context.size() <= p.context()) per_context.resize(p.context() + 1, 0);
      ++per_context[p.context()];
    }
  }

  auto probe = [&](const TermInContext& s) {
    SourceOutcome out;
    auto image = extend(i, s);
    Closure target(i.target(), image, bounds.depth, bounds.cap_for(image.size()), bounds.node_budget);
    out.target_complete = target.complete();
    std::optional<Closure> source;
    for (const auto& e : target.members()) {
      auto it = by_image.find(e);
      if (it == by_image.end()) continue;
      for (const auto& t : it->second) {
        if (t.context() != s.context() || t == s) continue;
        ++out.pairs_with_target_proof;
        if (!source) source.emplace(i.source(), s, bounds.depth, bounds.cap_for(s.size()), bounds.node_budget);
        if (source->contains(t.term())) continue;
        ConservativityPair pair{s, t, *target.derivation_to(e)};
        (source->complete() ? out.confirmed : out.candidates).push_back(std::move(pair));
      }
    }
    return out;
  };

  std::vector<SourceOutcome> outcomes(canonical.size());
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    for (std::size_t k = 0; k < canonical.size(); ++k) outcomes[k] = probe(canonical[k]);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t k; (k = cursor.fetch_add(1)) < canonical.size();) outcomes[k] = probe(canonical[k]);
      });
    }
  }

  ConservativityReport report;
  report.source_terms = canonical.size();
  for (std::size_t k = 0; k < canonical.size(); ++k) {
    auto& o = outcomes[k];
    report.pairs_examined += per_context[canonical[k].context()];
    report.pairs_with_target_proof += o.pairs_with_target_proof;
    report.target_closures_complete = report.target_closures_complete && o.target_complete;
    for (auto& p : o.confirmed) report.confirmed.push_back(std::move(p));
    for (auto& p : o.candidates) report.candidates.push_back(std::move(p));
  }
  return report;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Interpretation parse_interpretation(std::string_view text, const std::function<Theory(const std::string&)>& load) {
  std::optional<Theory> source, target;
  std::map<std::string, TermInContext> assignment;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      auto sp = line.find_first_of(" \t");
      auto keyword = line.substr(0, sp);
      auto rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
      if (keyword == "source" || keyword == "target") {
        if (rest.empty()) throw ParseError("missing theory path", line_no, 1);
        auto& slot = keyword == "source" ? source : target;
        if (slot) throw ParseError(std::string(keyword) + " declared twice", line_no, 1);
        slot = load(std::string(rest));
      } else if (keyword == "map") {
        if (!source || !target) throw ParseError("'map' before both 'source' and 'target'", line_no, 1);
        auto eq = rest.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'map <symbol> = <term>'", line_no, 1);
        std::string sym(trim(rest.substr(0, eq)));
        auto arity = source->signature.arity(sym);
        if (!arity) throw ParseError("'" + sym + "' is not a source symbol", line_no, 1);
        if (assignment.count(sym)) throw ParseError("'" + sym + "' mapped twice", line_no, 1);
        try {
          assignment.emplace(sym, TermInContext(parse_term(rest.substr(eq + 1)), *arity));
        } catch (const Error& e) {
          throw ParseError(e.what(), line_no, 1);
        }
      } else {
        throw ParseError("unknown declaration '" + std::string(keyword) + "'", line_no, 1);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!source || !target) throw ParseError("interpretation needs 'source' and 'target'", line_no, 1);
  try {
    return Interpretation(std::move(*source), std::move(*target), std::move(assignment));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line_no, 1);
  }
}

std::string render_interpretation(const Interpretation& i, const std::string& source_path,
                                  const std::string& target_path) {
  std::string out = "source " + source_path + "\ntarget " + target_path + "\n";
  for (const auto& sym : i.source().signature.symbols()) {
    out += "map " + sym.name + " = " + to_string(i.image(sym.name).term()) + "\n";
  }
  return out;
}

}  // namespace rigidlab
