#include "term.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace rigidlab {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column, const std::string& source)
    : Error((source.empty() ? "" : source + ":") + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      message_(what),
      line_(line),
      column_(column) {}

struct Term::Node {
  std::uint32_t index = 0;
  std::string symbol;
  std::vector<Term> children;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::uint32_t max_var = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::uint32_t index) {
  if (index == 0) throw Error("variable indices start at 1");
  auto node = std::make_shared<Node>();
  node->index = index;
  node->hash = mix(0x51ed27, index);
  node->max_var = index;
  return Term(std::move(node));
}

Term Term::app(std::string symbol, std::vector<Term> children) {
  if (symbol.empty()) throw Error("empty symbol name");
  auto node = std::make_shared<Node>();
  std::size_t h = std::hash<std::string>{}(symbol);
  for (const auto& c : children) {
    node->size += c.size();
    h = mix(h, c.hash());
    node->max_var = std::max(node->max_var, c.max_var());
  }
  node->hash = mix(h, children.size());
  node->symbol = std::move(symbol);
  node->children = std::move(children);
  return Term(std::move(node));
}

bool Term::is_var() const { return node_->index != 0; }
std::uint32_t Term::var_index() const { return node_->index; }
const std::string& Term::symbol() const { return node_->symbol; }
std::span<const Term> Term::children() const { return node_->children; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }
std::uint32_t Term::max_var() const { return node_->max_var; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.size != y.size || x.index != y.index) return false;
  if (x.symbol != y.symbol || x.children.size() != y.children.size()) return false;
  return std::equal(x.children.begin(), x.children.end(), y.children.begin());
}

namespace {

// -1, 0, 1 on pre-order token sequences of equal-size terms.
int compare_tokens(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    if (a.var_index() != b.var_index()) return a.var_index() < b.var_index() ? -1 : 1;
    return 0;
  }
  if (int c = a.symbol().compare(b.symbol()); c != 0) return c < 0 ? -1 : 1;
  auto ca = a.children();
  auto cb = b.children();
  for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i) {
    if (int c = compare_tokens(ca[i], cb[i]); c != 0) return c;
  }
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  return 0;
}

}  // namespace

bool term_less(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return compare_tokens(a, b) < 0;
}

TermInContext::TermInContext(Term term, std::uint32_t context)
    : term_(std::move(term)), context_(context) {
  if (term_.max_var() > context_) {
    throw Error("variable x" + std::to_string(term_.max_var()) + " exceeds context of length " +
                std::to_string(context_));
  }
}

VarMap::VarMap(std::uint32_t codomain, std::vector<std::uint32_t> images)
    : codomain_(codomain), images_(std::move(images)) {
  for (auto i : images_) {
    if (i == 0 || i > codomain_) throw Error("variable map image out of range");
  }
}

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (auto i : images_) {
    if (i == 0 || i > images_.size() || seen[i]) throw Error("not a permutation");
    seen[i] = true;
  }
}

Permutation Permutation::identity(std::uint32_t n) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 1u);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(std::uint32_t n, std::uint32_t i, std::uint32_t j) {
  auto p = identity(n).images_;
  std::swap(p.at(i - 1), p.at(j - 1));
  return Permutation(std::move(p));
}

std::vector<Permutation> Permutation::all(std::uint32_t n) {
  std::vector<Permutation> out;
  auto images = identity(n).images_;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i + 1) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1] = static_cast<std::uint32_t>(i + 1);
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& after, const Permutation& first) {
  if (after.size() != first.size()) throw Error("composing permutations of different sizes");
  std::vector<std::uint32_t> images(first.size());
  for (std::uint32_t i = 1; i <= first.size(); ++i) images[i - 1] = after(first(i));
  return Permutation(std::move(images));
}

namespace {

void collect_vars(const Term& t, std::vector<std::uint32_t>& out) {
  if (t.is_var()) {
    out.push_back(t.var_index());
    return;
  }
  for (const auto& c : t.children()) collect_vars(c, out);
}

Term rename(const Term& t, const VarMap& phi) {
  if (t.is_var()) return Term::var(phi(t.var_index()));
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(rename(c, phi));
  return Term::app(t.symbol(), std::move(kids));
}

}  // namespace

std::vector<std::uint32_t> var_occurrences(const Term& t) {
  std::vector<std::uint32_t> out;
  collect_vars(t, out);
  return out;
}

bool is_linear_regular(const TermInContext& t) {
  auto occ = var_occurrences(t);
  if (occ.size() != t.context()) return false;
  std::vector<bool> seen(t.context() + 1, false);
  for (auto i : occ) {
    if (seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

TermInContext substitute_simple(const TermInContext& t, const VarMap& phi) {
  if (phi.domain() != t.context()) {
    throw Error("variable map domain " + std::to_string(phi.domain()) +
                " does not match context " + std::to_string(t.context()));
  }
  return TermInContext(rename(t.term(), phi), phi.codomain());
}

Term substitute(const Term& t, std::span<const Term> args) {
  if (t.is_var()) return args[t.var_index() - 1];
  if (t.max_var() == 0) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(substitute(c, args));
  return Term::app(t.symbol(), std::move(kids));
}

TermInContext substitute_terms(const TermInContext& t, std::span<const TermInContext> args) {
  if (args.size() != t.context()) {
    throw Error("substitution supplies " + std::to_string(args.size()) + " terms for context " +
                std::to_string(t.context()));
  }
  if (args.empty()) throw Error("cannot infer target context of an empty substitution");
  const auto k = args.front().context();
  std::vector<Term> bare;
  bare.reserve(args.size());
  for (const auto& a : args) {
    if (a.context() != k) throw Error("substituted terms must share one context");
    bare.push_back(a.term());
  }
  return TermInContext(substitute(t.term(), bare), k);
}

std::size_t count_symbol(const Term& t, std::string_view symbol) {
  if (t.is_var()) return 0;
  std::size_t n = t.symbol() == symbol ? 1 : 0;
  for (const auto& c : t.children()) n += count_symbol(c, symbol);
  return n;
}

bool valid_position(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (auto i : pos) {
    if (i >= cur->arity()) return false;
    cur = &cur->children()[i];
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (auto i : pos) {
    if (i >= cur->arity()) throw Error("position " + to_string(pos) + " does not address a subterm");
    cur = &cur->children()[i];
  }
  return *cur;
}

Term replace_at(const Term& t, const Position& pos, std::size_t depth, const Term& replacement) {
  if (depth == pos.size()) return replacement;
  auto i = pos[depth];
  if (i >= t.arity()) throw Error("position " + to_string(pos) + " does not address a subterm");
  std::vector<Term> kids(t.children().begin(), t.children().end());
  kids[i] = replace_at(kids[i], pos, depth + 1, replacement);
  return Term::app(t.symbol(), std::move(kids));
}

namespace {

void render(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += 'x';
    out += std::to_string(t.var_index());
    return;
  }
  out += t.symbol();
  out += '(';
  bool first = true;
  for (const auto& c : t.children()) {
    if (!first) out += ',';
    first = false;
    render(c, out);
  }
  out += ')';
}

class TermParser {
public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    if (!ident_start(text_[pos_])) fail(std::string("unexpected character '") + text_[pos_] + "'");
    const auto start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<Term> kids;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        return Term::app(std::move(name), {});
      }
      while (true) {
        kids.push_back(term());
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated argument list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail(std::string("expected ',' or ')' but found '") + text_[pos_] + "'");
      }
      return Term::app(std::move(name), std::move(kids));
    }
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (name[1] == '0') {
        pos_ = start;
        fail("variable indices start at x1 and have no leading zeros");
      }
      unsigned long idx = 0;
      try {
        idx = std::stoul(name.substr(1));
      } catch (const std::exception&) {
        pos_ = start;
        fail("variable index out of range");
      }
      if (idx > UINT32_MAX) {
        pos_ = start;
        fail("variable index out of range");
      }
      return Term::var(static_cast<std::uint32_t>(idx));
    }
    pos_ = start;
    fail("'" + name + "' is neither a variable nor followed by an argument list");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  render(t, out);
  return out;
}

std::string to_string(const Position& pos) {
  std::string out = "[";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(pos[i]);
  }
  return out + "]";
}

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

}  // namespace rigidlab
