#include "rewrite.hpp"

#include <algorithm>
#include <unordered_set>

namespace rigidlab {

namespace {

const Term& source_side(const Equation& ax, Direction d) {
  return d == Direction::LeftToRight ? ax.lhs : ax.rhs;
}
const Term& target_side(const Equation& ax, Direction d) {
  return d == Direction::LeftToRight ? ax.rhs : ax.lhs;
}

bool match(const Term& pattern, const Term& subject, std::vector<std::optional<Term>>& subst) {
  if (pattern.is_var()) {
    auto& slot = subst[pattern.var_index() - 1];
    if (slot) return *slot == subject;
    slot = subject;
    return true;
  }
  if (subject.is_var() || subject.symbol() != pattern.symbol() || subject.arity() != pattern.arity()) {
    return false;
  }
  auto pc = pattern.children();
  auto sc = subject.children();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (!match(pc[i], sc[i], subst)) return false;
  }
  return true;
}

bool vars_covered(const Term& from, const Term& to) {
  auto have = var_occurrences(from);
  std::sort(have.begin(), have.end());
  for (auto v : var_occurrences(to)) {
    if (!std::binary_search(have.begin(), have.end(), v)) return false;
  }
  return true;
}

struct Site {
  Position pos;
  const Term* sub;
};

void collect_sites(const Term& t, Position& pos, std::vector<Site>& out) {
  out.push_back({pos, &t});
  auto kids = t.children();
  for (std::uint32_t i = 0; i < kids.size(); ++i) {
    pos.push_back(i);
    collect_sites(kids[i], pos, out);
    pos.pop_back();
  }
}

}  // namespace

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Proved: return "proved";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::DepthLimit: return "depth-limit";
    case SearchStatus::BudgetLimit: return "budget-limit";
  }
  return "?";
}

TermInContext apply_step(const TermInContext& t, const Theory& th, const RewriteStep& step) {
  if (step.axiom >= th.axioms.size()) {
    throw RewriteError("axiom index " + std::to_string(step.axiom) + " out of range");
  }
  const auto& ax = th.axioms[step.axiom];
  if (step.substitution.size() != ax.context) {
    throw RewriteError("substitution has " + std::to_string(step.substitution.size()) +
                       " terms but axiom context is " + std::to_string(ax.context));
  }
  for (const auto& s : step.substitution) {
    if (s.max_var() > t.context()) throw RewriteError("substitution term " + to_string(s) + " escapes the context");
  }
  if (!valid_position(t.term(), step.position)) {
    throw RewriteError("position " + to_string(step.position) + " does not address a subterm");
  }
  const auto& sub = subterm_at(t.term(), step.position);
  Term expected = substitute(source_side(ax, step.direction), step.substitution);
  if (expected != sub) {
    throw RewriteError("subterm " + to_string(sub) + " at " + to_string(step.position) +
                       " does not match the axiom side " + to_string(expected));
  }
  Term replacement = substitute(target_side(ax, step.direction), step.substitution);
  return TermInContext(replace_at(t.term(), step.position, replacement), t.context());
}

std::vector<Term> replay_terms(const Derivation& d, const Theory& th) {
  std::vector<Term> terms;
  terms.reserve(d.steps.size() + 1);
  TermInContext cur(d.start, d.context);
  terms.push_back(cur.term());
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    try {
      cur = apply_step(cur, th, d.steps[i]);
    } catch (const Error& e) {
      throw RewriteError("step " + std::to_string(i) + ": " + e.what());
    }
    terms.push_back(cur.term());
  }
  if (cur.term() != d.end) {
    throw RewriteError("derivation ends in " + to_string(cur.term()) + ", not " + to_string(d.end));
  }
  TermInContext(d.end, d.context);
  return terms;
}

bool replay(const Derivation& d, const Theory& th) {
  try {
    replay_terms(d, th);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Derivation reversed(const Derivation& d) {
  Derivation r{d.context, d.end, {}, d.start};
  r.steps.reserve(d.steps.size());
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
    auto s = *it;
    s.direction = flip(s.direction);
    r.steps.push_back(std::move(s));
  }
  return r;
}

std::vector<std::size_t> symbol_census(const Derivation& d, const Theory& th, std::string_view symbol) {
  std::vector<std::size_t> counts;
  for (const auto& t : replay_terms(d, th)) counts.push_back(count_symbol(t, symbol));
  return counts;
}

std::vector<Successor> successors(const TermInContext& t, const Theory& th, std::size_t size_cap, bool* cap_hit) {
  std::vector<Site> sites;
  Position scratch;
  collect_sites(t.term(), scratch, sites);

  std::vector<Successor> out;
  std::unordered_set<Term, TermHash> seen;
  const std::size_t base = t.size();
  for (std::size_t ai = 0; ai < th.axioms.size(); ++ai) {
    const auto& ax = th.axioms[ai];
    for (auto dir : {Direction::LeftToRight, Direction::RightToLeft}) {
      const Term& from = source_side(ax, dir);
      const Term& to = target_side(ax, dir);
      if (!vars_covered(from, to)) continue;
      for (const auto& site : sites) {
        std::vector<std::optional<Term>> subst(ax.context);
        if (!match(from, *site.sub, subst)) continue;
        std::vector<Term> args;
        args.reserve(subst.size());
        for (auto& s : subst) args.push_back(s ? *s : *site.sub);
        Term replacement = substitute(to, args);
        if (base - site.sub->size() + replacement.size() > size_cap) {
          if (cap_hit) *cap_hit = true;
          continue;
        }
        Term next = replace_at(t.term(), site.pos, replacement);
        if (next == t.term() || !seen.insert(next).second) continue;
        out.push_back({std::move(next), RewriteStep{ai, dir, site.pos, std::move(args)}});
      }
    }
  }
  return out;
}

namespace {

struct Visit {
  std::optional<Term> parent;
  std::optional<RewriteStep> step;
  std::size_t depth = 0;
};

using VisitMap = std::unordered_map<Term, Visit, TermHash>;

// Steps from the root of `visits` to `t`.
std::vector<RewriteStep> path_from_root(const VisitMap& visits, const Term& t) {
  std::vector<RewriteStep> steps;
  const Term* cur = &t;
  while (true) {
    const auto& v = visits.at(*cur);
    if (!v.parent) break;
    steps.push_back(*v.step);
    cur = &*v.parent;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

struct Side {
  VisitMap visits;
  std::vector<Term> layer;
  std::size_t depth = 0;
  bool cap_hit = false;
};

}  // namespace

ProofResult prove_bounded(const Theory& th, const Equation& goal, const SearchBounds& bounds) {
  ProofResult result;
  const std::uint32_t ctx = goal.context;
  TermInContext lhs(goal.lhs, ctx);
  TermInContext rhs(goal.rhs, ctx);
  result.stats.size_cap = bounds.cap_for(std::max(lhs.size(), rhs.size()));
  const std::size_t cap = result.stats.size_cap;

  if (goal.lhs == goal.rhs) {
    result.status = SearchStatus::Proved;
    result.derivation = Derivation{ctx, goal.lhs, {}, goal.rhs};
    result.stats.visited = 1;
    return result;
  }

  Side fwd, bwd;
  fwd.visits.emplace(goal.lhs, Visit{});
  fwd.layer.push_back(goal.lhs);
  bwd.visits.emplace(goal.rhs, Visit{});
  bwd.layer.push_back(goal.rhs);

  while (true) {
    if (fwd.depth + bwd.depth >= bounds.depth) {
      result.status = SearchStatus::DepthLimit;
      break;
    }
    const bool forward = fwd.layer.size() <= bwd.layer.size();
    Side& side = forward ? fwd : bwd;
    const Side& other = forward ? bwd : fwd;

    std::vector<Term> next;
    std::optional<Term> meet;
    std::size_t best = 0;
    bool out_of_budget = false;
    for (const auto& t : side.layer) {
      if (result.stats.expanded >= bounds.node_budget) {
        out_of_budget = true;
        break;
      }
      ++result.stats.expanded;
      for (auto& s : successors(TermInContext(t, ctx), th, cap, &side.cap_hit)) {
        if (side.visits.count(s.term)) continue;
        side.visits.emplace(s.term, Visit{t, std::move(s.step), side.depth + 1});
        if (auto it = other.visits.find(s.term); it != other.visits.end()) {
          std::size_t total = side.depth + 1 + it->second.depth;
          if (!meet || total < best) {
            meet = s.term;
            best = total;
          }
        }
        next.push_back(std::move(s.term));
      }
    }
    ++side.depth;
    side.layer = std::move(next);
    result.stats.depth_reached = fwd.depth + bwd.depth;

    if (meet) {
      Derivation d{ctx, goal.lhs, path_from_root(fwd.visits, *meet), goal.rhs};
      auto back = path_from_root(bwd.visits, *meet);
      for (auto it = back.rbegin(); it != back.rend(); ++it) {
        auto s = *it;
        s.direction = flip(s.direction);
        d.steps.push_back(std::move(s));
      }
      replay_terms(d, th);
      result.status = SearchStatus::Proved;
      result.derivation = std::move(d);
      break;
    }
    if (out_of_budget) {
      result.status = SearchStatus::BudgetLimit;
      break;
    }
    if (side.layer.empty()) {
      result.status = SearchStatus::Exhausted;
      result.certified_unprovable = !side.cap_hit;
      break;
    }
  }
  result.stats.visited = fwd.visits.size() + bwd.visits.size();
  result.stats.size_cap_hit = fwd.cap_hit || bwd.cap_hit;
  return result;
}

Closure::Closure(const Theory& th, const TermInContext& start, std::size_t depth, std::size_t size_cap,
                 std::size_t node_budget)
    : context_(start.context()), start_(start.term()) {
  stats_.size_cap = size_cap;
  entries_.emplace(start_, Entry{});
  order_.push_back(start_);
  std::vector<Term> layer{start_};
  std::size_t d = 0;
  while (!layer.empty()) {
    if (d >= depth) {
      status_ = SearchStatus::DepthLimit;
      break;
    }
    std::vector<Term> next;
    for (const auto& t : layer) {
      if (stats_.expanded >= node_budget) {
        status_ = SearchStatus::BudgetLimit;
        break;
      }
      ++stats_.expanded;
      for (auto& s : successors(TermInContext(t, context_), th, size_cap, &stats_.size_cap_hit)) {
        if (entries_.count(s.term)) continue;
        entries_.emplace(s.term, Entry{t, std::move(s.step), d + 1});
        order_.push_back(s.term);
        next.push_back(std::move(s.term));
      }
    }
    if (status_ == SearchStatus::BudgetLimit) break;
    ++d;
    layer = std::move(next);
  }
  stats_.depth_reached = d;
  stats_.visited = entries_.size();
}

std::optional<std::size_t> Closure::distance(const Term& t) const {
  auto it = entries_.find(t);
  if (it == entries_.end()) return std::nullopt;
  return it->second.depth;
}

std::optional<Derivation> Closure::derivation_to(const Term& t) const {
  if (!contains(t)) return std::nullopt;
  std::vector<RewriteStep> steps;
  const Term* cur = &t;
  while (true) {
    const auto& e = entries_.at(*cur);
    if (!e.parent) break;
    steps.push_back(*e.step);
    cur = &*e.parent;
  }
  std::reverse(steps.begin(), steps.end());
  return Derivation{context_, start_, std::move(steps), t};
}

}  // namespace rigidlab
