#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fomc/digraph.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/structure.hpp"
#include "fomc/vocabulary.hpp"

namespace fomc {

namespace detail {

struct Word {
  std::string_view text;
  SourceSpan span;
};

// Splits one line into whitespace-separated words, dropping '#' comments.
inline std::vector<Word> split_line(std::string_view line, std::size_t lineno) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
    }
    out.push_back({line.substr(i, j - i), {lineno, i + 1}});
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t lineno = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto words = split_line(text.substr(start, end - start), lineno);
      if (!words.empty()) lines_.push_back(std::move(words));
      if (end == text.size()) break;
      start = end + 1;
      ++lineno;
    }
    last_line_ = lineno;
  }

  [[nodiscard]] bool at_end() const { return next_ >= lines_.size(); }
  const std::vector<Word>& take() { return lines_[next_++]; }
  [[nodiscard]] SourceSpan end_span() const { return {last_line_, 1}; }

 private:
  std::vector<std::vector<Word>> lines_;
  std::size_t next_ = 0;
  std::size_t last_line_ = 1;
};

inline std::size_t parse_number(const Word& w) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(w.text.data(), w.text.data() + w.text.size(), value);
  if (ec != std::errc() || ptr != w.text.data() + w.text.size()) {
    throw ParseError(w.span, "expected a number, got '" + std::string(w.text) + "'");
  }
  return value;
}

inline Element parse_element(const Word& w, std::size_t universe) {
  std::size_t v = parse_number(w);
  if (v >= universe) {
    throw ParseError(w.span, "element " + std::to_string(v) + " out of range (universe " +
                                 std::to_string(universe) + ")");
  }
  return static_cast<Element>(v);
}

inline bool is_symbol_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

inline void expect_words(const std::vector<Word>& line, std::size_t n, const char* what) {
  if (line.size() != n) {
    throw ParseError(line.front().span, std::string("malformed ") + what + " line");
  }
}

}  // namespace detail

/// Variables match [a-z][a-z0-9_]*.
inline bool is_variable_name(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structures (.fos)
// ---------------------------------------------------------------------------

/// Parses the line-oriented structure format:
///
///     universe N
///     rel NAME ARITY      followed by tuple lines and "."
///     const NAME ELEM
///     fun NAME ARITY      followed by N^ARITY "args... value" lines and "."
inline Structure parse_structure(std::string_view text) {
  using detail::Word;
  detail::LineReader in(text);
  if (in.at_end()) throw ParseError(in.end_span(), "missing 'universe' header");
  const auto& header = in.take();
  if (header[0].text != "universe" || header.size() != 2) {
    throw ParseError(header[0].span, "expected 'universe N'");
  }
  std::size_t n = detail::parse_number(header[1]);
  if (n == 0) throw ParseError(header[1].span, "universe must be nonempty");

  struct Block {
    SymbolKind kind;
    std::string name;
    std::size_t arity;
    std::vector<Tuple> tuples;
    Element value = 0;
    std::vector<Element> table;
  };
  std::vector<Block> blocks;
  Vocabulary vocab;

  auto declare = [&](const Word& w, SymbolKind kind, std::size_t arity) {
    std::string name(w.text);
    if (!detail::is_symbol_name(name)) throw ParseError(w.span, "bad symbol name '" + name + "'");
    try {
      if (kind == SymbolKind::Relation) vocab.add_relation(name, arity);
      if (kind == SymbolKind::Constant) vocab.add_constant(name);
      if (kind == SymbolKind::Function) vocab.add_function(name, arity);
    } catch (const VocabularyError& e) {
      throw ParseError(w.span, e.what());
    }
    return name;
  };

  while (!in.at_end()) {
    const auto& line = in.take();
    const Word& kw = line[0];
    if (kw.text == "rel" || kw.text == "fun") {
      bool is_rel = kw.text == "rel";
      detail::expect_words(line, 3, is_rel ? "rel" : "fun");
      std::size_t arity = detail::parse_number(line[2]);
      if (arity == 0) throw ParseError(line[2].span, "arity must be >= 1");
      Block b{is_rel ? SymbolKind::Relation : SymbolKind::Function,
              declare(line[1], is_rel ? SymbolKind::Relation : SymbolKind::Function, arity),
              arity,
              {},
              0,
              {}};
      std::size_t rows = is_rel ? 0 : checked_power(n, arity);
      std::vector<bool> seen(rows, false);
      if (!is_rel) b.table.assign(rows, 0);
      bool closed = false;
      while (!in.at_end()) {
        const auto& row = in.take();
        if (row[0].text == ".") {
          detail::expect_words(row, 1, "terminator");
          closed = true;
          break;
        }
        std::size_t want = is_rel ? arity : arity + 1;
        if (row.size() != want) {
          throw ParseError(row[0].span, "tuple arity mismatch: expected " +
                                            std::to_string(want) + " numbers, got " +
                                            std::to_string(row.size()));
        }
        Tuple t;
        for (const auto& w : row) t.push_back(detail::parse_element(w, n));
        if (is_rel) {
          b.tuples.push_back(std::move(t));
        } else {
          std::size_t code = 0;
          for (std::size_t i = 0; i < arity; ++i) code = code * n + t[i];
          if (seen[code]) throw ParseError(row[0].span, "duplicate function row");
          seen[code] = true;
          b.table[code] = t[arity];
        }
      }
      if (!closed) {
        throw ParseError(in.end_span(), "missing '.' terminator for '" + b.name + "'");
      }
      if (!is_rel) {
        for (bool s : seen) {
          if (!s) throw ParseError(kw.span, "partial function table for '" + b.name + "'");
        }
      }
      blocks.push_back(std::move(b));
    } else if (kw.text == "const") {
      detail::expect_words(line, 3, "const");
      Block b{SymbolKind::Constant, declare(line[1], SymbolKind::Constant, 0), 0, {},
              detail::parse_element(line[2], n), {}};
      blocks.push_back(std::move(b));
    } else {
      throw ParseError(kw.span, "unexpected '" + std::string(kw.text) + "'");
    }
  }

  Structure a(vocab, n);
  for (auto& b : blocks) {
    switch (b.kind) {
      case SymbolKind::Relation: a.set_relation(b.name, std::move(b.tuples)); break;
      case SymbolKind::Constant: a.set_constant(b.name, b.value); break;
      case SymbolKind::Function: a.set_function(b.name, std::move(b.table)); break;
    }
  }
  return a;
}

/// Canonical form: relations, constants, functions, each in declaration
/// order; tuples and table rows in lexicographic order.
inline std::string print_structure(const Structure& a) {
  std::ostringstream out;
  const auto& v = a.vocabulary();
  std::size_t n = a.universe_size();
  out << "universe " << n << '\n';
  for (std::size_t i = 0; i < v.relations().size(); ++i) {
    out << "rel " << v.relations()[i].name << ' ' << v.relations()[i].arity << '\n';
    for (const auto& t : a.relation(i).tuples()) {
      for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
      out << '\n';
    }
    out << ".\n";
  }
  for (std::size_t i = 0; i < v.constants().size(); ++i) {
    out << "const " << v.constants()[i] << ' ' << a.constant(i) << '\n';
  }
  for (std::size_t i = 0; i < v.functions().size(); ++i) {
    std::size_t arity = v.functions()[i].arity;
    out << "fun " << v.functions()[i].name << ' ' << arity << '\n';
    const auto& values = a.function(i).values();
    std::vector<Element> args(arity, 0);
    for (std::size_t code = 0; code < values.size(); ++code) {
      std::size_t c = code;
      for (std::size_t j = arity; j-- > 0;) {
        args[j] = static_cast<Element>(c % n);
        c /= n;
      }
      for (Element e : args) out << e << ' ';
      out << values[code] << '\n';
    }
    out << ".\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Digraphs (.dg)
// ---------------------------------------------------------------------------

inline Digraph parse_digraph(std::string_view text) {
  detail::LineReader in(text);
  if (in.at_end()) throw ParseError(in.end_span(), "missing 'digraph' header");
  const auto& header = in.take();
  if (header[0].text != "digraph" || header.size() != 2) {
    throw ParseError(header[0].span, "expected 'digraph N'");
  }
  std::size_t n = detail::parse_number(header[1]);
  Digraph g(n);
  while (!in.at_end()) {
    const auto& row = in.take();
    if (row[0].text == ".") {
      detail::expect_words(row, 1, "terminator");
      if (!in.at_end()) throw ParseError(in.take()[0].span, "content after terminator");
      return g;
    }
    if (row.size() != 2) throw ParseError(row[0].span, "edge lines have two vertices");
    g.add_edge(detail::parse_element(row[0], n), detail::parse_element(row[1], n));
  }
  throw ParseError(in.end_span(), "missing '.' terminator");
}

inline std::string print_digraph(const Digraph& g) {
  std::ostringstream out;
  out << "digraph " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  out << ".\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

namespace detail {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Eq, Tilde, Amp, Bar, End };

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
};

inline std::vector<Token> tokenize_formula(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourceSpan span{line, col};
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), span});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '=': k = Tok::Eq; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      default:
        throw ParseError(span, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, s.substr(i, 1), span});
    advance(1);
  }
  out.push_back({Tok::End, {}, {line, col}});
  return out;
}

class FormulaParser {
 public:
  // With `infer` set, unknown symbols are declared on first use instead of
  // rejected.
  FormulaParser(std::string_view text, Vocabulary& vocab, bool infer)
      : toks_(tokenize_formula(text)), vocab_(vocab), infer_(infer) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail(peek(), "trailing input");
    return f;
  }

 private:
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.span, msg);
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      fail(peek(), std::string("expected ") + what +
                       (peek().kind == Tok::End ? " at end of input"
                                                : ", got '" + std::string(peek().text) + "'"));
    }
    return next();
  }

  std::string binder() {
    const Token& v = expect(Tok::Ident, "variable");
    std::string name(v.text);
    if (vocab_.contains(name)) {
      fail(v, "variable name '" + name + "' collides with a declared symbol");
    }
    if (!is_variable_name(name)) fail(v, "bad variable name '" + name + "'");
    expect(Tok::Dot, "'.'");
    return name;
  }

  Formula formula() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
        next();
        return Formula::neg(formula());
      case Tok::LParen: {
        next();
        Formula a = formula();
        const Token& op = next();
        if (op.kind != Tok::Amp && op.kind != Tok::Bar) {
          fail(op, op.kind == Tok::End ? "unbalanced parentheses" : "expected '&' or '|'");
        }
        Formula b = formula();
        if (peek().kind != Tok::RParen) fail(peek(), "unbalanced parentheses");
        next();
        return op.kind == Tok::Amp ? Formula::conj(std::move(a), std::move(b))
                                   : Formula::disj(std::move(a), std::move(b));
      }
      case Tok::Ident:
        if (t.text == "EX" || t.text == "ALL") {
          bool ex = t.text == "EX";
          next();
          std::string v = binder();
          Formula body = formula();
          return ex ? Formula::exists(std::move(v), std::move(body))
                    : Formula::forall(std::move(v), std::move(body));
        }
        return atom();
      case Tok::End:
        fail(t, "unexpected end of input");
      default:
        fail(t, "unexpected '" + std::string(t.text) + "'");
    }
  }

  Formula atom() {
    const Token& name_tok = peek();
    std::string name(name_tok.text);
    auto ref = vocab_.find(name);
    bool unknown_app = !ref && infer_ && toks_[pos_ + 1].kind == Tok::LParen;
    if ((ref && ref->kind == SymbolKind::Relation) || unknown_app) {
      next();
      std::vector<Term> args = arguments();
      if (unknown_app) {
        if (peek().kind == Tok::Eq) {
          vocab_.add_function(name, args.size());
          Term lhs = Term::apply(name, std::move(args));
          next();
          return Formula::eq(std::move(lhs), term());
        }
        vocab_.add_relation(name, args.size());
      }
      std::size_t arity = vocab_.relations()[vocab_.relation_index(name)].arity;
      if (args.size() != arity) {
        fail(name_tok, "arity mismatch: '" + name + "' expects " + std::to_string(arity) +
                           " arguments, got " + std::to_string(args.size()));
      }
      return Formula::rel(std::move(name), std::move(args));
    }
    Term lhs = term();
    expect(Tok::Eq, "'=' or a relation atom");
    return Formula::eq(std::move(lhs), term());
  }

  std::vector<Term> arguments() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    args.push_back(term());
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(term());
    }
    if (peek().kind != Tok::RParen) fail(peek(), "unbalanced parentheses");
    next();
    return args;
  }

  Term term() {
    const Token& t = expect(Tok::Ident, "term");
    std::string name(t.text);
    auto ref = vocab_.find(name);
    if (peek().kind == Tok::LParen) {
      if (!ref && infer_) {
        std::vector<Term> args = arguments();
        vocab_.add_function(name, args.size());
        return Term::apply(std::move(name), std::move(args));
      }
      if (!ref) fail(t, "unknown symbol '" + name + "'");
      if (ref->kind != SymbolKind::Function) fail(t, "'" + name + "' is not a function symbol");
      std::vector<Term> args = arguments();
      std::size_t arity = vocab_.functions()[ref->index].arity;
      if (args.size() != arity) {
        fail(t, "arity mismatch: '" + name + "' expects " + std::to_string(arity) +
                    " arguments, got " + std::to_string(args.size()));
      }
      return Term::apply(std::move(name), std::move(args));
    }
    if (ref) {
      if (ref->kind == SymbolKind::Constant) return Term::constant(std::move(name));
      fail(t, "symbol '" + name + "' used as a variable");
    }
    if (is_variable_name(name)) return Term::var(std::move(name));
    if (infer_ && is_symbol_name(name)) {
      vocab_.add_constant(name);
      return Term::constant(std::move(name));
    }
    fail(t, "unknown symbol '" + name + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Vocabulary& vocab_;
  bool infer_;
};

}  // namespace detail

/// Parses the ASCII grammar
///
///     phi ::= EX v. phi | ALL v. phi | ~phi | (phi & phi) | (phi | phi)
///           | Name(t,...,t) | t=t
///
/// resolving every symbol against `vocab`.
inline Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  Vocabulary copy = vocab;
  return detail::FormulaParser(text, copy, false).parse();
}

/// Parses without a vocabulary: applications at atom position become
/// relations, applications inside terms become functions, and bare names
/// that are not valid variable names become constants.
inline std::pair<Formula, Vocabulary> parse_formula_infer(std::string_view text) {
  Vocabulary v;
  Formula f = detail::FormulaParser(text, v, true).parse();
  return {std::move(f), std::move(v)};
}

inline std::string print_formula(const Formula& f) { return to_text(f); }

}  // namespace fomc
