#pragma once

// The `fpn` subcommands as functions from a JobConfig to a JSON report and
// an exit code.  Rendering (table, json, csv) is done from the JSON alone.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpn/enveloping.hpp"
#include "fpn/graded_algebra.hpp"
#include "fpn/group_rings.hpp"
#include "fpn/kuenneth.hpp"
#include "fpn/retraction.hpp"
#include "fpn/retraction_file.hpp"
#include "fpn/verify.hpp"

namespace fpn::cli {

using Json = nlohmann::ordered_json;

enum class Format { table, json, csv };

struct JobConfig {
  std::string command;
  std::string input;
  std::optional<std::string> field;  // overrides the file's field line
  int degree_bound = 8;
  int hom_bound = 4;
  Format format = Format::table;
  std::string side = "left";
  VerifyLevel level = VerifyLevel::fast;
  std::vector<std::string> fixtures;
  std::uint64_t seed = 1;

  void validate() const {
    if (degree_bound < 2) throw ValidationError("--degree-bound must be at least 2");
    if (hom_bound < 0) throw ValidationError("--hom-bound must be nonnegative");
  }
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int error = 1;
inline constexpr int inconclusive = 2;
}  // namespace exit_code

struct Report {
  Json json;
  int exit = exit_code::ok;
};

namespace detail {

inline Json header(const JobConfig& c, const std::string& field) {
  Json j;
  j["schema"] = 1;
  j["command"] = c.command;
  if (!c.input.empty()) j["input"] = std::filesystem::path(c.input).filename().string();
  if (!field.empty()) j["field"] = field;
  j["degree_bound"] = c.degree_bound;
  j["hom_bound"] = c.hom_bound;
  return j;
}

inline FieldSpec choose_field(const JobConfig& c, const std::optional<FieldSpec>& from_file) {
  if (c.field) return parse_field_spec(*c.field);
  return from_file.value_or(FieldSpec{});
}

inline Json sparse_betti(const BettiTable& t) {
  Json out = Json::array();
  for (std::size_t i = 0; i < t.entries.size(); ++i)
    for (std::size_t j = 0; j < t.entries[i].size(); ++j)
      if (t.entries[i][j]) out.push_back(Json::array({i, j, t.entries[i][j]}));
  return out;
}

inline std::vector<std::size_t> trim_zeros(std::vector<std::size_t> r) {
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

template <Field F>
Json exactness_json(const PartialFreeResolution<F>& res) {
  auto ex = check_exactness(res);
  Json f = Json::array();
  for (const auto& x : ex.failures) f.push_back(to_string(x));
  return f;
}

// ranks, Betti triples, exactness, minimality and the verdict at n.
template <Field F>
void describe(Json& j, const PartialFreeResolution<F>& res, int n, bool& all_ok, bool& certified) {
  j["ranks"] = res.ranks();
  j["betti"] = sparse_betti(generator_degree_table(res));
  auto ex = exactness_json(res);
  j["exact"] = ex.empty();
  if (!ex.empty()) j["exactness_failures"] = ex;
  if (res.ring->connected_graded()) {
    auto m = check_minimality(res);
    j["minimal"] = m.minimal;
  }
  auto eh = euler_hilbert_failures(res);
  j["euler_hilbert"] = eh.empty();
  auto v = fpn_verdict(res, std::min(n, res.length()));
  j["verdict"] = to_string(v.verdict);
  if (!v.reason.empty()) j["verdict_reason"] = v.reason;
  all_ok = all_ok && ex.empty() && eh.empty();
  certified = certified && v.verdict == Verdict::certified;
}

inline int exit_for(bool all_ok, bool certified) {
  if (!all_ok) return exit_code::error;
  return certified ? exit_code::ok : exit_code::inconclusive;
}

inline bool is_monoid_file(const std::string& path) { return std::filesystem::path(path).extension() == ".mon"; }

template <Field F>
Report resolve_algebra(const JobConfig& c, const PresentationFile& file, const F& field, const std::string& fname) {
  Report r{header(c, fname)};
  r.json["side"] = c.side;
  auto pres = instantiate(file, field);
  int D = c.degree_bound, n = c.hom_bound;
  bool ok = true, cert = true;
  if (c.side == "left") {
    auto A = GradedAlgebra<F>::make(pres, D);
    describe(r.json, minimal_resolution_of_K(RingPtr<F>(A), n), n, ok, cert);
  } else if (c.side == "right") {
    auto Aop = GradedAlgebra<F>::make(opposite(pres), D);
    describe(r.json, minimal_resolution_of_K(RingPtr<F>(Aop), n, Side::right), n, ok, cert);
  } else if (c.side == "weak-bi") {
    auto env = graded_enveloping(pres, D);
    auto B = kuenneth_biresolution(env, minimal_resolution_of_K(env.A, n), minimal_resolution_of_K(env.Aop, n, Side::right));
    describe(r.json, B, n, ok, cert);
  } else if (c.side == "bi") {
    auto env = graded_enveloping(pres, D);
    auto cmp = bimodule_resolution_of_A(env, n);
    describe(r.json, cmp.bires, n, ok, cert);
    Json comp;
    comp["contracted_ranks"] = cmp.contracted.ranks();
    comp["left_ranks"] = cmp.left.ranks();
    comp["contracted_exact"] = cmp.contracted_exact;
    comp["contracted_minimal"] = cmp.contracted_minimal;
    comp["mismatches"] = cmp.mismatches;
    comp["result"] = cmp.ok() ? "PASS" : "FAIL";
    r.json["comparison"] = comp;
    ok = ok && cmp.ok();
  } else {
    throw ValidationError("unknown side '" + c.side + "'");
  }
  r.exit = exit_for(ok, cert);
  return r;
}

template <Field F>
Report resolve_monoid(const JobConfig& c, const MonoidFile& file, const F& field, const std::string& fname) {
  Report r{header(c, fname)};
  r.json["side"] = c.side;
  int n = c.hom_bound;
  bool ok = true, cert = true;
  auto KB = MonoidAlgebra<F>::make(field, file.monoid);
  if (c.side == "left") {
    describe(r.json, left_resolution_K(RingPtr<F>(KB), n), n, ok, cert);
  } else if (c.side == "right") {
    auto star = file.involution ? *file.involution : inverse_involution(file.monoid);
    describe(r.json, involution_transport(left_resolution_K(RingPtr<F>(KB), n), star), n, ok, cert);
  } else if (c.side == "bi") {
    auto env = monoid_enveloping(field, file.monoid);
    describe(r.json, build_resolution(env.E, algebra_as_E_module(env), n, Side::bi, TargetKind::algebra), n, ok, cert);
  } else if (c.side == "weak-bi") {
    throw Unsupported("weak bi-resolutions are computed for graded presentations only");
  } else {
    throw ValidationError("unknown side '" + c.side + "'");
  }
  r.exit = exit_for(ok, cert);
  return r;
}

template <Field F>
Report group_bires(const JobConfig& c, const MonoidFile& file, const F& field, const std::string& fname) {
  Report r{header(c, fname)};
  r.json.erase("degree_bound");
  int n = c.hom_bound;
  auto env = monoid_enveloping(field, file.monoid);
  auto L = left_resolution_K(env.A, n);
  auto T = theorem2_biresolution(env, L);
  auto C = contract_to_left(T.bires, env);
  auto l3 = lemma3_check(env);
  bool left_exact = check_exactness(L).ok(), bi_exact = check_exactness(T.bires).ok(), c_exact = check_exactness(C).ok();
  r.json["left_ranks"] = trim_zeros(L.ranks());
  r.json["ranks"] = trim_zeros(T.bires.ranks());
  r.json["contracted_ranks"] = trim_zeros(C.ranks());
  Json checks;
  auto pass = [](bool b) { return b ? "PASS" : "FAIL"; };
  checks["left_exact"] = pass(left_exact);
  checks["bi_exact"] = pass(bi_exact);
  checks["construction"] = pass(T.checks.ok());
  checks["contraction_exact"] = pass(c_exact);
  checks["contraction_ranks"] = pass(C.ranks() == L.ranks());
  checks["twisted_tensor_isomorphisms"] = pass(l3.ok());
  bool ok = left_exact && bi_exact && T.checks.ok() && c_exact && C.ranks() == L.ranks() && l3.ok();
  if (file.involution) {
    bool right_exact = check_exactness(involution_transport(L, *file.involution)).ok();
    checks["right_exact"] = pass(right_exact);
    ok = ok && right_exact;
  }
  r.json["checks"] = checks;
  Json failures = Json::array();
  for (const auto& f : T.checks.failures) failures.push_back(f);
  for (const auto& f : l3.failures) failures.push_back(f);
  if (!failures.empty()) r.json["failures"] = failures;
  r.json["result"] = pass(ok);
  r.exit = ok ? exit_code::ok : exit_code::error;
  return r;
}

template <Field F>
Report retract(const JobConfig& c, const RetractionFile& file, const F& field, const std::string& fname) {
  Report r{header(c, fname)};
  int D = c.degree_bound, n = c.hom_bound;
  auto g = instantiate(file, field, D);
  bool augmented = g.retraction.augmented();
  r.json["augmented"] = augmented;
  std::optional<TransportResult<F>> t;
  if (augmented) {
    r.json["pair"] = "trivial";
    t = transport_trivial(std::make_shared<const RingRetraction<F>>(g.retraction), n);
  } else {
    // Without augmentations the algebras themselves form the pair, as bimodules.
    r.json["pair"] = "algebra";
    auto envA = graded_enveloping(g.big->presentation(), D);
    auto envD = graded_enveloping(g.small->presentation(), D);
    auto rA = graded_retraction<F>(envA.A, envD.A, g.retraction.rho.images(), g.retraction.iota.images());
    auto er = std::make_shared<const RingRetraction<F>>(enveloping_retraction(envA, envD, rA));
    t = transport_fpn(algebra_pair(er, envA, envD, rA), n, Side::bi, TargetKind::algebra);
  }
  r.json["generator_counts"] = t->twin.generator_counts;
  r.json["top_ranks"] = t->twin.top.ranks();
  r.json["bottom_ranks"] = t->twin.bottom.ranks();
  r.json["top_exact"] = t->top_exactness.ok();
  r.json["bottom_exact"] = t->bottom_exactness.ok();
  r.json["rank_law"] = t->rank_law;
  r.json["bottom_betti"] = sparse_betti(generator_degree_table(t->twin.bottom));
  r.json["verdict"] = to_string(t->verdict.verdict);
  if (!t->verdict.reason.empty()) r.json["verdict_reason"] = t->verdict.reason;
  bool ok = t->top_exactness.ok() && t->bottom_exactness.ok() && t->rank_law;
  r.exit = exit_for(ok, t->verdict.verdict == Verdict::certified);
  return r;
}

}  // namespace detail

inline Report run_resolve(const JobConfig& c) {
  c.validate();
  std::string text = read_text_file(c.input);
  if (detail::is_monoid_file(c.input)) {
    auto file = parse_monoid_file(text);
    auto spec = detail::choose_field(c, file.field);
    return with_field(spec, [&](const auto& f) { return detail::resolve_monoid(c, file, f, spec.name()); });
  }
  auto file = parse_presentation_file(text);
  auto spec = detail::choose_field(c, file.field);
  return with_field(spec, [&](const auto& f) { return detail::resolve_algebra(c, file, f, spec.name()); });
}

inline Report run_group_bires(const JobConfig& c) {
  c.validate();
  auto file = parse_monoid_file(read_text_file(c.input));
  auto spec = detail::choose_field(c, file.field);
  return with_field(spec, [&](const auto& f) { return detail::group_bires(c, file, f, spec.name()); });
}

inline Report run_retract(const JobConfig& c) {
  c.validate();
  auto file = parse_retraction_file(read_text_file(c.input));
  auto spec = detail::choose_field(c, file.field);
  return with_field(spec, [&](const auto& f) { return detail::retract(c, file, f, spec.name()); });
}

inline Report run_verify(const JobConfig& c) {
  Report r{detail::header(c, "")};
  r.json.erase("degree_bound");
  r.json.erase("hom_bound");
  r.json["level"] = c.level == VerifyLevel::fast ? "fast" : "exhaustive";
  r.json["seed"] = c.seed;
  VerifyOptions opt{c.level, c.seed};
  std::vector<const Fixture*> chosen;
  for (const auto& name : c.fixtures) {
    auto it = std::find_if(all_fixtures().begin(), all_fixtures().end(), [&](const Fixture& f) { return f.name == name; });
    if (it == all_fixtures().end()) throw ValidationError("unknown fixture '" + name + "'");
    chosen.push_back(&*it);
  }
  if (chosen.empty())
    for (const auto& f : all_fixtures()) chosen.push_back(&f);
  Json list = Json::array();
  bool ok = true;
  for (const auto* f : chosen) {
    auto rep = run_fixture(*f, opt);
    Json e;
    e["fixture"] = f->name;
    e["result"] = rep.outcome.passed ? "PASS" : "FAIL";
    e["milliseconds"] = static_cast<std::int64_t>(rep.seconds * 1000);
    e["notes"] = rep.outcome.notes;
    if (!rep.outcome.passed) e["failures"] = rep.outcome.failures;
    list.push_back(e);
    ok = ok && rep.outcome.passed;
  }
  r.json["fixtures"] = list;
  r.exit = ok ? exit_code::ok : exit_code::error;
  return r;
}

inline Report run(const JobConfig& c) {
  if (c.command == "resolve") return run_resolve(c);
  if (c.command == "group-bires") return run_group_bires(c);
  if (c.command == "retract") return run_retract(c);
  if (c.command == "verify") return run_verify(c);
  throw ValidationError("unknown command '" + c.command + "'");
}

inline Json error_json(const std::string& command, const std::string& kind, const std::string& message) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["error"] = kind;
  j["message"] = message;
  return j;
}

// Rendering.

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return "(" + s + ")";
  }
  return v.dump();
}

// Betti triples as a grid: rows are internal degrees j, columns homological i.
inline std::string betti_grid(const Json& triples, std::size_t columns) {
  std::size_t rows = 0;
  for (const auto& t : triples) rows = std::max<std::size_t>(rows, t[1].get<std::size_t>() + 1);
  std::vector<std::vector<std::size_t>> g(rows, std::vector<std::size_t>(columns, 0));
  for (const auto& t : triples) {
    auto i = t[0].get<std::size_t>();
    if (i < columns) g[t[1].get<std::size_t>()][i] = t[2].get<std::size_t>();
  }
  std::ostringstream out;
  out << "    j\\i";
  for (std::size_t i = 0; i < columns; ++i) out << ' ' << std::setw(5) << i;
  out << '\n';
  for (std::size_t j = 0; j < rows; ++j) {
    out << "  " << std::setw(5) << j;
    for (std::size_t i = 0; i < columns; ++i) out << ' ' << std::setw(5) << (g[j][i] ? std::to_string(g[j][i]) : ".");
    out << '\n';
  }
  return out.str();
}

inline std::string render_table(const Json& j) {
  std::ostringstream out;
  if (j.contains("fixtures")) {
    for (const auto& f : j["fixtures"]) {
      out << f["result"].get<std::string>() << "  " << std::left << std::setw(14) << f["fixture"].get<std::string>() << std::right
          << std::setw(8) << f["milliseconds"].get<std::int64_t>() << " ms";
      for (const auto& n : f["notes"]) out << "  " << n.get<std::string>();
      out << '\n';
      if (f.contains("failures"))
        for (const auto& x : f["failures"]) out << "      " << x.get<std::string>() << '\n';
    }
    out << "seed " << j["seed"].get<std::uint64_t>() << '\n';
    return out.str();
  }
  for (const auto& [k, v] : j.items()) {
    if (k == "schema") continue;
    if ((k == "betti" || k == "bottom_betti") && v.is_array()) {
      std::size_t cols = j.contains(k == "betti" ? "ranks" : "bottom_ranks") ? j[k == "betti" ? "ranks" : "bottom_ranks"].size() : 0;
      out << k << ":\n" << betti_grid(v, cols);
    } else if (v.is_object()) {
      out << k << ":\n";
      for (const auto& [k2, v2] : v.items()) out << "  " << k2 << ": " << scalar_text(v2) << '\n';
    } else {
      out << k << ": " << scalar_text(v) << '\n';
    }
  }
  return out.str();
}

// One `key,value` row per scalar; Betti triples as `betti,i,j,count` rows.
inline std::string render_csv(const Json& j) {
  std::ostringstream out;
  auto quote = [](std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::function<void(const std::string&, const Json&)> emit = [&](const std::string& key, const Json& v) {
    if ((key == "betti" || key == "bottom_betti") && v.is_array()) {
      for (const auto& t : v) out << key << ',' << t[0] << ',' << t[1] << ',' << t[2] << '\n';
    } else if (v.is_object()) {
      for (const auto& [k, x] : v.items()) emit(key.empty() ? k : key + "." + k, x);
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      for (std::size_t i = 0; i < v.size(); ++i) emit(key + "." + std::to_string(i), v[i]);
    } else if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      out << key << ',' << quote(s) << '\n';
    } else {
      out << key << ',' << quote(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  };
  emit("", j);
  return out.str();
}

inline std::string render(const Json& j, Format f) {
  switch (f) {
    case Format::json: return j.dump(2) + "\n";
    case Format::csv: return render_csv(j);
    case Format::table: return render_table(j);
  }
  return {};
}

}  // namespace fpn::cli
