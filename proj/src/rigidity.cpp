#include "rigidity.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace rigidlab {

namespace {

int compare_canonical(const Signature& sig, const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    if (a.var_index() != b.var_index()) return a.var_index() < b.var_index() ? -1 : 1;
    return 0;
  }
  if (a.symbol() != b.symbol()) {
    auto ra = sig.rank(a.symbol());
    auto rb = sig.rank(b.symbol());
    if (ra && rb) return *ra < *rb ? -1 : 1;
    return a.symbol() < b.symbol() ? -1 : 1;
  }
  auto ca = a.children();
  auto cb = b.children();
  for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i) {
    if (int c = compare_canonical(sig, ca[i], cb[i]); c != 0) return c;
  }
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  return 0;
}

struct Skeleton {
  Term term;  // every variable leaf is x1
  std::uint32_t leaves = 0;
};

Term number_leaves(const Term& t, std::uint32_t& next) {
  if (t.is_var()) return Term::var(next++);
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(number_leaves(c, next));
  return Term::app(t.symbol(), std::move(kids));
}

// Appends every skeleton whose children have the given total size.
void expand_children(const std::vector<std::vector<Skeleton>>& by_size, std::size_t remaining,
                     std::uint32_t arity, std::uint32_t max_leaves, std::vector<Term>& kids,
                     std::uint32_t leaves, const Symbol& head, std::vector<Skeleton>& out) {
  if (kids.size() == arity) {
    if (remaining == 0) out.push_back({Term::app(head.name, kids), leaves});
    return;
  }
  const std::size_t slots_after = arity - kids.size() - 1;
  if (remaining < slots_after + 1) return;
  for (std::size_t s = 1; s + slots_after <= remaining; ++s) {
    if (slots_after == 0 && s != remaining) continue;
    for (const auto& sk : by_size[s]) {
      if (leaves + sk.leaves > max_leaves) continue;
      kids.push_back(sk.term);
      expand_children(by_size, remaining - s, arity, max_leaves, kids, leaves + sk.leaves, head, out);
      kids.pop_back();
    }
  }
}

}  // namespace

bool CanonicalLess::operator()(const Term& a, const Term& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return compare_canonical(*signature, a, b) < 0;
}

std::vector<TermInContext> enumerate_linear_regular(const Signature& sig, std::size_t max_size,
                                                    std::uint32_t max_context) {
  std::vector<std::vector<Skeleton>> by_size(max_size + 1);
  for (std::size_t s = 1; s <= max_size; ++s) {
    auto& level = by_size[s];
    if (s == 1) {
      if (max_context >= 1) level.push_back({Term::var(1), 1});
      for (const auto& sym : sig.symbols()) {
        if (sym.arity == 0) level.push_back({Term::app(sym.name), 0});
      }
    } else {
      for (const auto& sym : sig.symbols()) {
        if (sym.arity == 0 || sym.arity > s - 1) continue;
        std::vector<Term> kids;
        expand_children(by_size, s - 1, sym.arity, max_context, kids, 0, sym, level);
      }
    }
    CanonicalLess less{&sig};
    std::sort(level.begin(), level.end(), [&](const Skeleton& a, const Skeleton& b) { return less(a.term, b.term); });
  }

  std::vector<TermInContext> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    for (const auto& sk : by_size[s]) {
      std::uint32_t next = 1;
      Term t = number_leaves(sk.term, next);
      out.emplace_back(std::move(t), sk.leaves);
    }
  }
  return out;
}

bool verify_report(const FlabbyReport& r, const Theory& th) {
  if (!is_linear_regular(r.term)) return false;
  if (r.permutation.size() != r.term.context() || r.permutation.is_identity()) return false;
  auto permuted = substitute_simple(r.term, r.permutation);
  const auto& d = r.derivation;
  if (d.context != r.term.context() || d.start != r.term.term() || d.end != permuted.term()) return false;
  return replay(d, th);
}

const char* to_string(RigidityStatus s) {
  switch (s) {
    case RigidityStatus::FlabbyFound: return "flabby-found";
    case RigidityStatus::Exhausted: return "exhausted";
    case RigidityStatus::NoWitnessWithinBounds: return "no-witness-within-bounds";
  }
  return "?";
}

namespace {

struct TermOutcome {
  std::optional<FlabbyReport> report;
  std::size_t closure_size = 0;
  SearchStatus status = SearchStatus::Exhausted;
  bool cap_hit = false;
  bool computed = false;
};

TermOutcome examine(const Theory& th, const TermInContext& t, const SearchBounds& bounds) {
  TermOutcome out;
  if (t.context() < 2) return out;
  Closure closure(th, t, bounds.depth, bounds.cap_for(t.size()), bounds.node_budget);
  out.computed = true;
  out.closure_size = closure.size();
  out.status = closure.status();
  out.cap_hit = closure.stats().size_cap_hit;
  for (const auto& sigma : Permutation::all(t.context())) {
    if (sigma.is_identity()) continue;
    auto permuted = substitute_simple(t, sigma);
    if (auto d = closure.derivation_to(permuted.term())) {
      out.report = FlabbyReport{t, sigma, std::move(*d)};
      break;
    }
  }
  return out;
}

}  // namespace

RigidityResult search_flabby(const Theory& th, std::size_t max_size, std::uint32_t max_context,
                             const SearchBounds& bounds, unsigned jobs) {
  if (auto bad = validate_linear_regular(th); !bad.empty()) {
    throw Error("axiom " + std::to_string(bad.front()) + " is not linear-regular");
  }
  const auto terms = enumerate_linear_regular(th.signature, max_size, max_context);
  RigidityResult result;
  auto& cert = result.certificate;
  cert.terms_enumerated = terms.size();

  jobs = std::max(1u, jobs);
  const std::size_t batch = jobs == 1 ? 1 : 16 * jobs;
  std::vector<TermOutcome> outcomes;
  for (std::size_t begin = 0; begin < terms.size(); begin += batch) {
    const std::size_t end = std::min(terms.size(), begin + batch);
    outcomes.assign(end - begin, {});
    if (jobs == 1) {
      for (std::size_t i = begin; i < end; ++i) outcomes[i - begin] = examine(th, terms[i], bounds);
    } else {
      std::atomic<std::size_t> cursor{begin};
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
          for (std::size_t i; (i = cursor.fetch_add(1)) < end;) outcomes[i - begin] = examine(th, terms[i], bounds);
        });
      }
    }
    for (auto& o : outcomes) {
      if (o.computed) {
        ++cert.closures_computed;
        cert.closure_total += o.closure_size;
        cert.closure_max = std::max(cert.closure_max, o.closure_size);
        cert.size_cap_hit |= o.cap_hit;
        cert.depth_limit_hit |= o.status == SearchStatus::DepthLimit;
        cert.budget_hit |= o.status == SearchStatus::BudgetLimit;
      }
      if (o.report) {
        result.status = RigidityStatus::FlabbyFound;
        result.report = std::move(o.report);
        return result;
      }
    }
  }
  result.status = cert.certified() ? RigidityStatus::Exhausted : RigidityStatus::NoWitnessWithinBounds;
  return result;
}

}  // namespace rigidlab
