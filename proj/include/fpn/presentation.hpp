#pragma once

// Finitely presented connected graded algebras and the `.alg` file format:
//
//   field Q | GF(p)
//   generators name:degree name:degree ...
//   relations <poly> ; <poly> ; ...
//
// Polynomials use integer coefficients, explicit `*`, `+`, `-`, parentheses and
// (as a convenience) `^` with a nonnegative integer exponent.  `#` starts a
// comment.  A keyword line may continue on following lines that do not start
// with a keyword.

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/field.hpp"
#include "fpn/ncpoly.hpp"

namespace fpn {

// Field-independent polynomial with integer coefficients, as read from text.
using IntegerPoly = std::map<Word, mpz_class>;

namespace detail {

struct Token {
  enum Kind { Name, Number, Symbol, End } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> tokenize(const std::string& text, std::size_t line, std::size_t column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++column;
      continue;
    }
    std::size_t start = i, col = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
        ++i;
      out.push_back({Token::Name, text.substr(start, i - start), line, col});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Token::Number, text.substr(start, i - start), line, col});
    } else if (std::string("+-*()^;:,").find(c) != std::string::npos) {
      ++i;
      out.push_back({Token::Symbol, std::string(1, c), line, col});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    column += i - start;
  }
  out.push_back({Token::End, "", line, column});
  return out;
}

inline void add_into(IntegerPoly& p, const Word& w, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline IntegerPoly multiply(const IntegerPoly& a, const IntegerPoly& b) {
  IntegerPoly r;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) add_into(r, concat(u, v), x * y);
  return r;
}

// Recursive-descent parser over a token range.
class PolyParser {
 public:
  PolyParser(const std::vector<Token>& tokens, const Alphabet& alphabet) : tokens_(tokens), alphabet_(alphabet) {}

  IntegerPoly expression() {
    IntegerPoly p;
    bool negate = false;
    if (peek("+") || peek("-")) negate = next().text == "-";
    IntegerPoly t = term();
    for (const auto& [w, c] : t) add_into(p, w, negate ? mpz_class(-c) : c);
    while (peek("+") || peek("-")) {
      bool minus = next().text == "-";
      IntegerPoly u = term();
      for (const auto& [w, c] : u) add_into(p, w, minus ? mpz_class(-c) : c);
    }
    return p;
  }

  const Token& current() const { return tokens_[pos_]; }
  bool at_end() const { return tokens_[pos_].kind == Token::End; }

 private:
  bool peek(const char* sym) const {
    return tokens_[pos_].kind == Token::Symbol && tokens_[pos_].text == sym;
  }
  const Token& next() { return tokens_[pos_++]; }

  IntegerPoly term() {
    IntegerPoly p = power();
    while (peek("*")) {
      next();
      p = multiply(p, power());
    }
    return p;
  }

  IntegerPoly power() {
    IntegerPoly base = factor();
    if (!peek("^")) return base;
    next();
    const Token& t = next();
    if (t.kind != Token::Number) throw ParseError("expected an exponent", t.line, t.column);
    IntegerPoly r{{Word{}, mpz_class(1)}};
    for (long k = std::stol(t.text); k > 0; --k) r = multiply(r, base);
    return r;
  }

  IntegerPoly factor() {
    const Token& t = next();
    if (t.kind == Token::Number) return IntegerPoly{{Word{}, mpz_class(t.text)}};
    if (t.kind == Token::Name) {
      auto letter = alphabet_.find(t.text);
      if (!letter) throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
      return IntegerPoly{{Word{*letter}, mpz_class(1)}};
    }
    if (t.kind == Token::Symbol && t.text == "(") {
      IntegerPoly p = expression();
      const Token& close = next();
      if (close.kind != Token::Symbol || close.text != ")") throw ParseError("expected ')'", close.line, close.column);
      return p;
    }
    if (t.kind == Token::Symbol && t.text == "-") {
      IntegerPoly p = factor();
      for (auto& [w, c] : p) c = -c;
      return p;
    }
    throw ParseError(t.kind == Token::End ? "unexpected end of expression" : "unexpected '" + t.text + "'", t.line,
                     t.column);
  }

  const std::vector<Token>& tokens_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

// A comment-stripped line with its 1-based number.
struct SourceLine {
  std::size_t number;
  std::string text;
};

inline std::vector<SourceLine> source_lines(const std::string& text) {
  std::vector<SourceLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.push_back({n, line});
  }
  return out;
}

inline std::pair<std::string, std::size_t> first_word(const std::string& line) {
  std::size_t b = line.find_first_not_of(" \t");
  std::size_t e = line.find_first_of(" \t:", b);
  if (e == std::string::npos) e = line.size();
  return {line.substr(b, e - b), e};
}

}  // namespace detail

// Parses one polynomial over the given alphabet.
inline IntegerPoly parse_integer_poly(const std::string& text, const Alphabet& alphabet, std::size_t line = 1,
                                      std::size_t column = 1) {
  auto tokens = detail::tokenize(text, line, column);
  detail::PolyParser parser(tokens, alphabet);
  IntegerPoly p = parser.expression();
  if (!parser.at_end())
    throw ParseError("unexpected '" + parser.current().text + "'", parser.current().line, parser.current().column);
  return p;
}

template <Field F>
NCPoly<F> to_ncpoly(const IntegerPoly& p, const F& field, const AlphabetPtr& alphabet) {
  NCPoly<F> out(field, alphabet);
  for (const auto& [w, c] : p) out.add_term(w, field.from_integer(c));
  return out;
}

// The field-independent content of an `.alg` file.
struct PresentationFile {
  std::optional<FieldSpec> field;
  AlphabetPtr alphabet = std::make_shared<Alphabet>();
  struct Relation {
    IntegerPoly poly;
    std::size_t line;
    std::size_t column;
  };
  std::vector<Relation> relations;
};

namespace detail {

inline std::vector<Generator> parse_generators(const std::string& body, std::size_t line, std::size_t column) {
  auto tokens = tokenize(body, line, column);
  std::vector<Generator> gens;
  std::size_t i = 0;
  while (tokens[i].kind != Token::End) {
    if (tokens[i].kind == Token::Symbol && tokens[i].text == ",") {
      ++i;
      continue;
    }
    const Token& name = tokens[i];
    if (name.kind != Token::Name) throw ParseError("expected a generator name", name.line, name.column);
    int degree = 1;
    ++i;
    if (tokens[i].kind == Token::Symbol && tokens[i].text == ":") {
      const Token& d = tokens[i + 1];
      if (d.kind != Token::Number) throw ParseError("expected a degree after ':'", d.line, d.column);
      degree = std::stoi(d.text);
      if (degree < 1) throw ParseError("generator degrees must be positive", d.line, d.column);
      i += 2;
    }
    for (const auto& g : gens)
      if (g.name == name.text) throw ParseError("duplicate generator name '" + name.text + "'", name.line, name.column);
    gens.push_back({name.text, degree});
  }
  return gens;
}

}  // namespace detail

// Reads a presentation; structural checks (homogeneity, no constant or linear
// relations) are applied here so errors carry positions.
inline PresentationFile parse_presentation_file(const std::string& text) {
  PresentationFile out;
  struct Section {
    std::string keyword;
    std::string body;
    std::size_t line;
    std::size_t column;
  };
  std::vector<Section> sections;
  for (const auto& [number, line] : detail::source_lines(text)) {
    auto [word, end] = detail::first_word(line);
    if (word == "field" || word == "generators" || word == "relations") {
      sections.push_back({word, line.substr(end), number, end + 1});
    } else if (sections.empty()) {
      throw ParseError("expected 'field', 'generators' or 'relations'", number, line.find_first_not_of(" \t") + 1);
    } else {
      // Continuation: pad so token columns stay meaningful in messages.
      sections.back().body += "\n" + line;
    }
  }
  bool have_generators = false;
  std::vector<Generator> gens;
  for (const auto& s : sections) {
    if (s.keyword == "field") {
      try {
        out.field = parse_field_spec(s.body);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), s.line, s.column);
      }
    } else if (s.keyword == "generators") {
      auto more = detail::parse_generators(s.body, s.line, s.column);
      for (auto& g : more) {
        for (const auto& h : gens)
          if (h.name == g.name) throw ParseError("duplicate generator name '" + g.name + "'", s.line, s.column);
        gens.push_back(std::move(g));
      }
      have_generators = true;
    }
  }
  if (!have_generators && !sections.empty()) {
    for (const auto& s : sections)
      if (s.keyword == "relations") throw ParseError("relations given before any generators", s.line, s.column);
  }
  out.alphabet = std::make_shared<Alphabet>(gens);
  for (const auto& s : sections) {
    if (s.keyword != "relations") continue;
    auto tokens = detail::tokenize(s.body, s.line, s.column);
    // Split on ';' at top level; parentheses never contain ';'.
    std::vector<detail::Token> chunk;
    auto flush = [&]() {
      if (chunk.empty()) return;
      std::size_t line = chunk.front().line, column = chunk.front().column;
      chunk.push_back({detail::Token::End, "", chunk.back().line, chunk.back().column + chunk.back().text.size()});
      detail::PolyParser parser(chunk, *out.alphabet);
      IntegerPoly p = parser.expression();
      if (!parser.at_end())
        throw ParseError("unexpected '" + parser.current().text + "'", parser.current().line, parser.current().column);
      chunk.clear();
      if (p.empty()) return;
      int lo = -1, hi = -1;
      for (const auto& [w, c] : p) {
        int d = word_degree(*out.alphabet, w);
        if (d == 0) throw ParseError("relation has a constant term", line, column);
        lo = lo < 0 ? d : std::min(lo, d);
        hi = std::max(hi, d);
      }
      if (lo != hi)
        throw ParseError("relation is not homogeneous (degrees " + std::to_string(lo) + " and " + std::to_string(hi) +
                             ")",
                         line, column);
      if (hi < 2) throw ParseError("degree-1 relations are not allowed; eliminate the generator instead", line, column);
      out.relations.push_back({std::move(p), line, column});
    };
    for (const auto& t : tokens) {
      if (t.kind == detail::Token::End) break;
      if (t.kind == detail::Token::Symbol && t.text == ";") {
        flush();
      } else {
        chunk.push_back(t);
      }
    }
    flush();
  }
  return out;
}

// A graded presentation over a concrete field.
template <Field F>
struct AlgebraPresentation {
  F field;
  AlphabetPtr alphabet;
  std::vector<NCPoly<F>> relations;

  std::size_t num_generators() const { return alphabet->size(); }

  int max_relation_degree() const {
    int d = 0;
    for (const auto& r : relations) d = std::max(d, r.degree());
    return d;
  }

  // Checks the graded-presentation invariants on programmatically built input.
  void validate() const {
    for (const auto& r : relations) {
      if (r.is_zero()) continue;
      if (!r.is_homogeneous()) throw ValidationError("relation " + r.to_string() + " is not homogeneous");
      if (r.degree() == 0) throw ValidationError("relation " + r.to_string() + " has a constant term");
      if (r.degree() < 2) throw ValidationError("relation " + r.to_string() + " has degree 1");
    }
  }
};

template <Field F>
AlgebraPresentation<F> instantiate(const PresentationFile& file, const F& field) {
  AlgebraPresentation<F> out{field, file.alphabet, {}};
  for (const auto& r : file.relations) {
    auto p = to_ncpoly(r.poly, field, file.alphabet);
    if (!p.is_zero()) out.relations.push_back(std::move(p));
  }
  return out;
}

// Convenience for code and tests: generators as (name, degree) pairs and
// relations as strings in the file grammar.
template <Field F>
AlgebraPresentation<F> make_presentation(const F& field, std::vector<Generator> gens,
                                         const std::vector<std::string>& relations) {
  auto alphabet = std::make_shared<Alphabet>(std::move(gens));
  AlgebraPresentation<F> out{field, alphabet, {}};
  for (const auto& r : relations) {
    auto p = to_ncpoly(parse_integer_poly(r, *alphabet), field, alphabet);
    if (!p.is_zero()) out.relations.push_back(std::move(p));
  }
  out.validate();
  return out;
}

template <Field F>
AlgebraPresentation<F> parse_presentation(const std::string& text, const F& field) {
  return instantiate(parse_presentation_file(text), field);
}

}  // namespace fpn
