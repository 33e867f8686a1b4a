#include "theory.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace rigidlab {

Signature::Signature(std::vector<Symbol> symbols) {
  for (auto& s : symbols) add(std::move(s));
}

void Signature::add(Symbol s) {
  if (s.name.empty()) throw Error("symbol name must be non-empty");
  if (index_.count(s.name)) throw Error("symbol '" + s.name + "' declared twice");
  index_.emplace(s.name, symbols_.size());
  symbols_.push_back(std::move(s));
}

std::optional<std::uint32_t> Signature::arity(std::string_view name) const {
  auto r = rank(name);
  if (!r) return std::nullopt;
  return symbols_[*r].arity;
}

std::optional<std::size_t> Signature::rank(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Signature::check(const Term& t) const {
  if (t.is_var()) return;
  auto a = arity(t.symbol());
  if (!a) throw Error("unknown symbol '" + t.symbol() + "'");
  if (*a != t.arity()) {
    throw Error("symbol '" + t.symbol() + "' has arity " + std::to_string(*a) + " but is applied to " +
                std::to_string(t.arity()) + " arguments");
  }
  for (const auto& c : t.children()) check(c);
}

Equation Equation::make(Term lhs, Term rhs, std::uint32_t context) {
  TermInContext l(lhs, context);
  TermInContext r(rhs, context);
  return Equation{std::move(lhs), std::move(rhs), context};
}

void Theory::check() const {
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    try {
      signature.check(axioms[i].lhs);
      signature.check(axioms[i].rhs);
      TermInContext(axioms[i].lhs, axioms[i].context);
      TermInContext(axioms[i].rhs, axioms[i].context);
    } catch (const Error& e) {
      throw Error("axiom " + std::to_string(i) + ": " + e.what());
    }
  }
}

std::vector<std::size_t> validate_linear_regular(const Theory& th) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < th.axioms.size(); ++i) {
    const auto& ax = th.axioms[i];
    if (!is_linear_regular(ax.left()) || !is_linear_regular(ax.right())) bad.push_back(i);
  }
  return bad;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses a term that starts at `column` (1-based) of `line`.
Term parse_term_at(std::string_view text, std::size_t line, std::size_t column) {
  try {
    return parse_term(text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw ParseError(msg, line, column + e.column() - 1);
  }
}

struct EquationParts {
  std::optional<std::uint32_t> context;
  Term lhs;
  Term rhs;
};

EquationParts parse_equation_parts(std::string_view text, std::size_t line, std::size_t column) {
  std::size_t off = 0;
  while (off < text.size() && std::isspace(static_cast<unsigned char>(text[off]))) ++off;
  std::optional<std::uint32_t> context;
  if (off < text.size() && text[off] == '[') {
    auto close = text.find(']', off);
    if (close == std::string_view::npos) throw ParseError("missing ']' after context length", line, column + off);
    auto num = trim(text.substr(off + 1, close - off - 1));
    std::uint32_t n = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (ec != std::errc() || p != num.data() + num.size() || num.empty()) {
      throw ParseError("context length must be a non-negative integer", line, column + off + 1);
    }
    context = n;
    off = close + 1;
  }
  auto eq = text.find('=', off);
  if (eq == std::string_view::npos) throw ParseError("expected '=' in equation", line, column + off);
  if (text.find('=', eq + 1) != std::string_view::npos) {
    throw ParseError("more than one '=' in equation", line, column + text.find('=', eq + 1));
  }
  Term lhs = parse_term_at(text.substr(off, eq - off), line, column + off);
  Term rhs = parse_term_at(text.substr(eq + 1), line, column + eq + 1);
  return {context, std::move(lhs), std::move(rhs)};
}

}  // namespace

Equation parse_equation(std::string_view text) {
  auto parts = parse_equation_parts(text, 1, 1);
  std::uint32_t n = parts.context.value_or(std::max(parts.lhs.max_var(), parts.rhs.max_var()));
  try {
    return Equation::make(std::move(parts.lhs), std::move(parts.rhs), n);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

Theory parse_theory(std::string_view text) {
  Theory th;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t off = 0;
    while (off < line.size() && std::isspace(static_cast<unsigned char>(line[off]))) ++off;
    if (off < line.size()) {
      auto kw_end = off;
      while (kw_end < line.size() && !std::isspace(static_cast<unsigned char>(line[kw_end]))) ++kw_end;
      auto keyword = line.substr(off, kw_end - off);
      auto rest = line.substr(kw_end);
      if (keyword == "symbol") {
        std::string_view r = trim(rest);
        auto sp = r.find_first_of(" \t");
        if (sp == std::string_view::npos) throw ParseError("expected 'symbol <name> <arity>'", line_no, off + 1);
        auto name = r.substr(0, sp);
        auto ar = trim(r.substr(sp));
        std::uint32_t arity = 0;
        auto [p, ec] = std::from_chars(ar.data(), ar.data() + ar.size(), arity);
        if (ec != std::errc() || p != ar.data() + ar.size()) {
          throw ParseError("arity must be a non-negative integer", line_no, off + 1);
        }
        bool ident = std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_';
        for (char c : name) ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ident) throw ParseError("symbol name '" + std::string(name) + "' is not an identifier", line_no, off + 1);
        if (th.signature.contains(name)) {
          throw ParseError("symbol '" + std::string(name) + "' declared twice", line_no, off + 1);
        }
        th.signature.add(Symbol{std::string(name), arity});
      } else if (keyword == "axiom") {
        auto parts = parse_equation_parts(rest, line_no, kw_end + 1);
        if (!parts.context) throw ParseError("axiom needs a context prefix '[n]'", line_no, kw_end + 1);
        try {
          th.signature.check(parts.lhs);
          th.signature.check(parts.rhs);
          th.axioms.push_back(Equation::make(std::move(parts.lhs), std::move(parts.rhs), *parts.context));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(e.what(), line_no, kw_end + 1);
        }
      } else {
        throw ParseError("unknown declaration '" + std::string(keyword) + "'", line_no, off + 1);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return th;
}

std::string to_string(const Equation& eq) {
  return "[" + std::to_string(eq.context) + "] " + to_string(eq.lhs) + " = " + to_string(eq.rhs);
}

std::string render_theory(const Theory& th) {
  std::string out;
  for (const auto& s : th.signature.symbols()) {
    out += "symbol " + s.name + " " + std::to_string(s.arity) + "\n";
  }
  for (const auto& ax : th.axioms) out += "axiom " + to_string(ax) + "\n";
  return out;
}

}  // namespace rigidlab
