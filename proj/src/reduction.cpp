#include "reduction.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace rigidlab {

void WordProblemInstance::check() const {
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    char c = alphabet[i];
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw Error(std::string("generator '") + c + "' is not a letter");
    }
    if (std::string_view(&alphabet[i], 1) == kPairSymbol) throw Error("generator name 'm' is reserved");
    if (alphabet.find(c, i + 1) != std::string::npos) throw Error(std::string("generator '") + c + "' declared twice");
  }
  for (const auto& [l, r] : relations) {
    check_word(l);
    check_word(r);
  }
  check_word(goal.first);
  check_word(goal.second);
}

void WordProblemInstance::check_word(const Word& w) const {
  for (char c : w) {
    if (alphabet.find(c) == std::string::npos) throw Error(std::string("letter '") + c + "' is not in the alphabet");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::pair<Word, Word> parse_word_pair(std::string_view text, std::size_t line) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos) {
    throw ParseError("expected '<word> = <word>'", line, 1);
  }
  try {
    return {parse_word(text.substr(0, eq)), parse_word(text.substr(eq + 1))};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line, 1);
  }
}

}  // namespace

Word parse_word(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error("empty word must be written 'eps'");
  if (text == "eps") return {};
  for (char c : text) {
    if (!std::isalpha(static_cast<unsigned char>(c))) throw Error("word '" + std::string(text) + "' is not a letter string");
  }
  return Word(text);
}

std::string render_word(const Word& w) { return w.empty() ? "eps" : w; }

WordProblemInstance parse_instance(std::string_view text) {
  WordProblemInstance inst;
  bool have_alphabet = false;
  bool have_goal = false;
  std::size_t alphabet_line = 0, goal_line = 0;
  std::vector<std::size_t> rel_lines;
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
      if (keyword == "alphabet") {
        if (have_alphabet) throw ParseError("alphabet declared twice", line_no, 1);
        have_alphabet = true;
        alphabet_line = line_no;
        std::size_t p = 0;
        while (p < rest.size()) {
          while (p < rest.size() && std::isspace(static_cast<unsigned char>(rest[p]))) ++p;
          auto q = p;
          while (q < rest.size() && !std::isspace(static_cast<unsigned char>(rest[q]))) ++q;
          if (q > p) {
            if (q - p != 1) throw ParseError("generators are single letters: '" + std::string(rest.substr(p, q - p)) + "'", line_no, 1);
            inst.alphabet += rest[p];
          }
          p = q;
        }
      } else if (keyword == "rel") {
        inst.relations.push_back(parse_word_pair(rest, line_no));
        rel_lines.push_back(line_no);
      } else if (keyword == "goal") {
        if (have_goal) throw ParseError("goal declared twice", line_no, 1);
        have_goal = true;
        goal_line = line_no;
        inst.goal = parse_word_pair(rest, line_no);
      } else {
        throw ParseError("unknown declaration '" + std::string(keyword) + "'", line_no, 1);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!have_alphabet) throw ParseError("missing 'alphabet' line", line_no, 1);
  if (!have_goal) throw ParseError("missing 'goal' line", line_no, 1);
  // report each problem on the line that introduced it
  auto at = [](std::size_t line, auto&& fn) {
    try {
      fn();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line, 1);
    }
  };
  at(alphabet_line, [&] { WordProblemInstance{inst.alphabet, {}, {}}.check(); });
  for (std::size_t i = 0; i < inst.relations.size(); ++i) {
    at(rel_lines[i], [&] {
      inst.check_word(inst.relations[i].first);
      inst.check_word(inst.relations[i].second);
    });
  }
  at(goal_line, [&] {
    inst.check_word(inst.goal.first);
    inst.check_word(inst.goal.second);
  });
  at(line_no, [&] { inst.check(); });
  return inst;
}

std::string render_instance(const WordProblemInstance& inst) {
  std::string out = "alphabet";
  for (char c : inst.alphabet) {
    out += ' ';
    out += c;
  }
  out += '\n';
  for (const auto& [l, r] : inst.relations) out += "rel " + render_word(l) + " = " + render_word(r) + "\n";
  out += "goal " + render_word(inst.goal.first) + " = " + render_word(inst.goal.second) + "\n";
  return out;
}

namespace {

const Word& side(const std::pair<Word, Word>& rel, Direction d) {
  return d == Direction::LeftToRight ? rel.first : rel.second;
}

}  // namespace

bool check_word_derivation(const WordProblemInstance& inst, const WordDerivation& d) {
  if (d.words.size() != d.steps.size() + 1) return false;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    if (s.relation >= inst.relations.size()) return false;
    const auto& from = side(inst.relations[s.relation], s.direction);
    const auto& to = side(inst.relations[s.relation], flip(s.direction));
    const auto& w = d.words[i];
    if (s.offset + from.size() > w.size() || w.compare(s.offset, from.size(), from) != 0) return false;
    Word next = w.substr(0, s.offset) + to + w.substr(s.offset + from.size());
    if (next != d.words[i + 1]) return false;
  }
  try {
    for (const auto& w : d.words) inst.check_word(w);
  } catch (const Error&) {
    return false;
  }
  return true;
}

WordDerivation reversed(const WordDerivation& d) {
  WordDerivation r;
  r.words.assign(d.words.rbegin(), d.words.rend());
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
    r.steps.push_back({it->relation, flip(it->direction), it->offset});
  }
  return r;
}

Term word_term(const Word& w, const Term& base) {
  Term t = base;
  for (auto it = w.rbegin(); it != w.rend(); ++it) t = Term::app(std::string(1, *it), {t});
  return t;
}

namespace {

Word chain_word(const Term& t) {
  Word w;
  const Term* cur = &t;
  while (!cur->is_var()) {
    w += cur->symbol();
    cur = &cur->children()[0];
  }
  return w;
}

}  // namespace

WordSearchResult word_semidecide(const WordProblemInstance& inst, const Word& w1, const Word& w2,
                                 const WordBounds& bounds) {
  inst.check_word(w1);
  inst.check_word(w2);
  const Theory th = compile_reduction(inst);
  const Term x1 = Term::var(1);
  SearchBounds sb;
  sb.depth = bounds.depth;
  sb.size_cap = bounds.cap_for(std::max(w1.size(), w2.size())) + 1;
  sb.node_budget = bounds.node_budget;
  auto proof = prove_bounded(th, Equation::make(word_term(w1, x1), word_term(w2, x1), 1), sb);

  WordSearchResult out;
  out.status = proof.status;
  out.stats = proof.stats;
  out.certified_underivable = proof.certified_unprovable;
  if (proof.derivation) {
    WordDerivation wd;
    for (const auto& t : replay_terms(*proof.derivation, th)) wd.words.push_back(chain_word(t));
    for (const auto& s : proof.derivation->steps) {
      if (s.axiom >= inst.relations.size()) throw Error("goal axiom used in a word derivation");
      wd.steps.push_back({s.axiom, s.direction, s.position.size()});
    }
    out.derivation = std::move(wd);
  }
  return out;
}

WordSearchResult word_search_direct(const WordProblemInstance& inst, const Word& w1, const Word& w2,
                                    const WordBounds& bounds) {
  inst.check_word(w1);
  inst.check_word(w2);
  WordSearchResult out;
  const std::size_t cap = bounds.cap_for(std::max(w1.size(), w2.size()));
  out.stats.size_cap = cap;

  struct Seen {
    Word parent;
    WordStep step;
    bool root = false;
  };
  std::unordered_map<Word, Seen> seen;
  seen[w1] = Seen{{}, {}, true};
  std::vector<Word> layer{w1};
  std::size_t depth = 0;
  bool found = w1 == w2;
  while (!found) {
    if (layer.empty()) {
      out.status = SearchStatus::Exhausted;
      out.certified_underivable = !out.stats.size_cap_hit;
      break;
    }
    if (depth >= bounds.depth) {
      out.status = SearchStatus::DepthLimit;
      break;
    }
    std::vector<Word> next;
    bool budget = false;
    for (const auto& w : layer) {
      if (out.stats.expanded >= bounds.node_budget) {
        budget = true;
        break;
      }
      ++out.stats.expanded;
      for (std::size_t r = 0; r < inst.relations.size() && !found; ++r) {
        for (auto dir : {Direction::LeftToRight, Direction::RightToLeft}) {
          const auto& from = side(inst.relations[r], dir);
          const auto& to = side(inst.relations[r], flip(dir));
          for (std::size_t off = 0; off + from.size() <= w.size(); ++off) {
            if (w.compare(off, from.size(), from) != 0) continue;
            if (w.size() - from.size() + to.size() > cap) {
              out.stats.size_cap_hit = true;
              continue;
            }
            Word v = w.substr(0, off) + to + w.substr(off + from.size());
            if (seen.count(v)) continue;
            seen[v] = Seen{w, {r, dir, off}, false};
            if (v == w2) found = true;
            next.push_back(std::move(v));
          }
        }
      }
      if (found) break;
    }
    ++depth;
    layer = std::move(next);
    if (budget && !found) {
      out.status = SearchStatus::BudgetLimit;
      break;
    }
  }
  out.stats.visited = seen.size();
  out.stats.depth_reached = depth;
  if (found) {
    out.status = SearchStatus::Proved;
    WordDerivation d;
    Word cur = w2;
    while (!seen.at(cur).root) {
      const auto& s = seen.at(cur);
      d.words.push_back(cur);
      d.steps.push_back(s.step);
      cur = s.parent;
    }
    d.words.push_back(cur);
    std::reverse(d.words.begin(), d.words.end());
    std::reverse(d.steps.begin(), d.steps.end());
    out.derivation = std::move(d);
  }
  return out;
}

Theory build_t0() {
  Theory th;
  th.signature.add({"l", 2});
  th.signature.add({"r", 2});
  th.signature.add({"m", 2});
  auto x1 = Term::var(1);
  auto x2 = Term::var(2);
  th.axioms.push_back(Equation::make(Term::app("l", {x1, x2}), Term::app("r", {x2, x1}), 2));
  return th;
}

Theory compile_reduction(const WordProblemInstance& inst) {
  inst.check();
  Theory th;
  for (char c : inst.alphabet) th.signature.add({std::string(1, c), 1});
  th.signature.add({std::string(kMarkerSymbol), 1});
  th.signature.add({std::string(kPairSymbol), 2});
  auto x1 = Term::var(1);
  auto x2 = Term::var(2);
  for (const auto& [l, r] : inst.relations) {
    th.axioms.push_back(Equation::make(word_term(l, x1), word_term(r, x1), 1));
  }
  auto marked = [](const Word& w, const Term& x) { return word_term(w, Term::app(std::string(kMarkerSymbol), {x})); };
  const std::string m(kPairSymbol);
  th.axioms.push_back(Equation::make(Term::app(m, {marked(inst.goal.first, x1), x2}),
                                     Term::app(m, {marked(inst.goal.second, x2), x1}), 2));
  return th;
}

Interpretation build_interpretation(const WordProblemInstance& inst) {
  auto x1 = Term::var(1);
  auto x2 = Term::var(2);
  auto marked = [](const Word& w, const Term& x) { return word_term(w, Term::app(std::string(kMarkerSymbol), {x})); };
  const std::string m(kPairSymbol);
  std::map<std::string, TermInContext> assignment;
  assignment.emplace("l", TermInContext(Term::app(m, {marked(inst.goal.first, x1), x2}), 2));
  assignment.emplace("r", TermInContext(Term::app(m, {marked(inst.goal.second, x1), x2}), 2));
  assignment.emplace("m", TermInContext(Term::app(m, {x1, x2}), 2));
  return Interpretation(build_t0(), compile_reduction(inst), std::move(assignment));
}

FlabbyReport flabby_witness(const WordProblemInstance& inst, const WordDerivation& proof) {
  if (!check_word_derivation(inst, proof)) throw Error("invalid word derivation");
  if (proof.start() != inst.goal.first || proof.end() != inst.goal.second) {
    throw Error("word derivation does not lead from the goal's left word to its right word");
  }
  const Theory th = compile_reduction(inst);
  const std::string m(kPairSymbol);
  auto x1 = Term::var(1);
  auto x2 = Term::var(2);
  auto marked = [](const Word& w, const Term& x) { return word_term(w, Term::app(std::string(kMarkerSymbol), {x})); };

  TermInContext t(Term::app(m, {marked(inst.goal.first, x1), x2}), 2);
  auto sigma = Permutation::transposition(2, 1, 2);

  Derivation d{2, t.term(), {}, substitute_simple(t, sigma).term()};
  d.steps.push_back(RewriteStep{goal_axiom_index(inst), Direction::LeftToRight, {}, {x1, x2}});
  const auto back = reversed(proof);
  for (std::size_t i = 0; i < back.steps.size(); ++i) {
    const auto& s = back.steps[i];
    const auto& w = back.words[i];
    const auto& rel = inst.relations[s.relation];
    const auto from_len = side(rel, s.direction).size();
    Position pos(1 + s.offset, 0);
    Term rest = marked(w.substr(s.offset + from_len), x2);
    d.steps.push_back(RewriteStep{s.relation, s.direction, std::move(pos), {rest}});
  }
  FlabbyReport report{t, sigma, std::move(d)};
  if (!verify_report(report, th)) throw Error("lifted derivation failed to replay");
  return report;
}

}  // namespace rigidlab
