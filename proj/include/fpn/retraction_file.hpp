#pragma once

// `.ret` files: two presentations and the maps between them.
//
//   field Q
//   [big]
//   generators x y
//   relations x*y - y*x
//   [small]
//   generators x
//   retraction rho: x -> x ; y -> 0
//   section iota: x -> x
//
// `↦` may replace `->`; the `rho:` / `iota:` labels are optional.

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fpn/graded_algebra.hpp"
#include "fpn/presentation.hpp"
#include "fpn/retraction.hpp"

namespace fpn {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct MapClause {
  std::string generator;
  IntegerPoly image;
  std::size_t line;
};

struct RetractionFile {
  std::optional<FieldSpec> field;
  PresentationFile big;
  PresentationFile small;
  std::vector<MapClause> rho;   // over the small alphabet
  std::vector<MapClause> iota;  // over the big alphabet
};

namespace detail {

inline std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  return s;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::vector<MapClause> parse_map_clauses(std::string body, const std::vector<std::string>& labels,
                                                const Alphabet& from, const Alphabet& to, std::size_t line) {
  body = trim(replace_all(body, "\xE2\x86\xA6", "->"));
  for (const auto& l : labels)
    if (body.rfind(l, 0) == 0 && trim(body.substr(l.size())).rfind(":", 0) == 0) {
      body = trim(body.substr(l.size()));
      body = body.substr(1);
      break;
    }
  std::vector<MapClause> out;
  std::istringstream in(body);
  std::string clause;
  while (std::getline(in, clause, ';')) {
    clause = trim(clause);
    if (clause.empty()) continue;
    auto arrow = clause.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'generator -> expression'", line, 1);
    std::string g = trim(clause.substr(0, arrow));
    if (!from.find(g)) throw ParseError("unknown generator '" + g + "'", line, 1);
    for (const auto& c : out)
      if (c.generator == g) throw ParseError("generator '" + g + "' is mapped twice", line, 1);
    out.push_back({g, parse_integer_poly(clause.substr(arrow + 2), to, line, 1), line});
  }
  return out;
}

}  // namespace detail

inline RetractionFile parse_retraction_file(const std::string& text) {
  RetractionFile out;
  std::string header, big, small;
  std::string* current = &header;
  std::vector<std::pair<std::size_t, std::string>> rho_lines, iota_lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  bool seen_big = false, seen_small = false;
  while (std::getline(in, raw)) {
    ++n;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t = detail::trim(line);
    if (t == "[big]") {
      current = &big;
      seen_big = true;
      header += "\n", big += "\n", small += "\n";
      continue;
    }
    if (t == "[small]") {
      current = &small;
      seen_small = true;
      header += "\n", big += "\n", small += "\n";
      continue;
    }
    auto [word, end] = t.empty() ? std::pair<std::string, std::size_t>{"", 0} : detail::first_word(t);
    if (word == "retraction") {
      rho_lines.push_back({n, t.substr(end)});
      line.clear();
    } else if (word == "section") {
      iota_lines.push_back({n, t.substr(end)});
      line.clear();
    }
    // Keep line numbers aligned in every section by padding the others.
    header += (current == &header ? line : "") + "\n";
    if (current != &header) *current += line + "\n";
    if (current != &big) big += "\n";
    if (current != &small) small += "\n";
  }
  if (!seen_big || !seen_small) throw ParseError("expected [big] and [small] sections", n, 1);
  for (const auto& sl : detail::source_lines(header)) {
    auto [word, end] = detail::first_word(sl.text);
    if (word != "field") throw ParseError("only a field line may precede [big]", sl.number, 1);
    out.field = parse_field_spec(sl.text.substr(end));
  }
  out.big = parse_presentation_file(big);
  out.small = parse_presentation_file(small);
  if (out.big.field || out.small.field) throw ParseError("the field line belongs before [big]", 1, 1);
  if (rho_lines.empty()) throw ParseError("missing 'retraction' line", n, 1);
  if (iota_lines.empty()) throw ParseError("missing 'section' line", n, 1);
  for (const auto& [ln, body] : rho_lines) {
    auto c = detail::parse_map_clauses(body, {"rho", "\xCF\x81"}, *out.big.alphabet, *out.small.alphabet, ln);
    out.rho.insert(out.rho.end(), c.begin(), c.end());
  }
  for (const auto& [ln, body] : iota_lines) {
    auto c = detail::parse_map_clauses(body, {"iota", "\xCE\xB9"}, *out.small.alphabet, *out.big.alphabet, ln);
    out.iota.insert(out.iota.end(), c.begin(), c.end());
  }
  return out;
}

template <Field F>
struct GradedRetraction {
  GradedAlgebraPtr<F> big;
  GradedAlgebraPtr<F> small;
  RingRetraction<F> retraction;
};

namespace detail {

template <Field F>
std::vector<SparseVec<F>> generator_images(const std::vector<MapClause>& clauses, const GradedAlgebra<F>& from,
                                           const GradedAlgebra<F>& to, const F& field) {
  std::vector<SparseVec<F>> out(from.num_generators());
  std::vector<bool> seen(out.size(), false);
  for (const auto& c : clauses) {
    std::size_t g = *from.alphabet()->find(c.generator);
    auto p = to_ncpoly(c.image, field, to.alphabet());
    auto e = to.element(p);
    if (!p.is_zero() && e.degree != from.generator_degree(g))
      throw ParseError("image of '" + c.generator + "' has degree " + std::to_string(e.degree) + ", expected " +
                           std::to_string(from.generator_degree(g)),
                       c.line, 1);
    out[g] = e.coords;
    seen[g] = true;
  }
  for (std::size_t g = 0; g < out.size(); ++g)
    if (!seen[g]) throw ParseError("no image given for generator '" + from.generator_name(g) + "'", 1, 1);
  return out;
}

}  // namespace detail

// Builds both algebras to degree D and validates the retraction (throwing
// ValidationError with a witness when an axiom fails).
template <Field F>
GradedRetraction<F> instantiate(const RetractionFile& file, const F& field, int D) {
  auto big = GradedAlgebra<F>::make(instantiate(file.big, field), D);
  auto small = GradedAlgebra<F>::make(instantiate(file.small, field), D);
  auto rho = detail::generator_images(file.rho, *big, *small, field);
  auto iota = detail::generator_images(file.iota, *small, *big, field);
  RingRetraction<F> r{RingHom<F>(big, small, std::move(rho)), RingHom<F>(small, big, std::move(iota))};
  r.validate();
  return {big, small, std::move(r)};
}

}  // namespace fpn
