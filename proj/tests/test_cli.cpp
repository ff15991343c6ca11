#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "fpn/cli/commands.hpp"

using namespace fpn;
using namespace fpn::cli;

namespace {

std::string data(const std::string& name) { return std::string(FPN_DATA_DIR) + "/" + name; }

JobConfig job(const std::string& command, const std::string& input = "") {
  JobConfig c;
  c.command = command;
  if (!input.empty()) c.input = data(input);
  c.degree_bound = 6;
  c.hom_bound = 3;
  return c;
}

struct Process {
  int exit;
  std::string out;
};

Process run_cli(const std::string& args) {
  std::string cmd = std::string(FPN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Resolve, CommutativePlaneLeft) {
  auto r = run(job("resolve", "poly2.alg"));
  EXPECT_EQ(r.exit, exit_code::ok);
  EXPECT_EQ(r.json["schema"], 1);
  EXPECT_EQ(r.json["ranks"], Json::parse("[1,2,1,0]"));
  EXPECT_EQ(r.json["betti"], Json::parse("[[0,0,1],[1,1,2],[2,2,1]]"));
  EXPECT_EQ(r.json["verdict"], "CERTIFIED-UP-TO-D");
  EXPECT_EQ(r.json["exact"], true);
  EXPECT_EQ(r.json["minimal"], true);
}

TEST(Resolve, AllSidesOnThePlane) {
  for (std::string side : {"right", "weak-bi", "bi"}) {
    auto c = job("resolve", "poly2.alg");
    c.side = side;
    auto r = run(c);
    EXPECT_EQ(r.exit, exit_code::ok) << side;
    EXPECT_EQ(r.json["exact"], true) << side;
  }
  auto c = job("resolve", "poly2.alg");
  c.side = "bi";
  EXPECT_EQ(run(c).json["comparison"]["result"], "PASS");
}

TEST(Resolve, ExteriorBeyondCutoffIsInconclusive) {
  auto c = job("resolve", "exterior2.alg");
  c.degree_bound = 3;
  c.hom_bound = 4;
  auto r = run(c);
  EXPECT_EQ(r.exit, exit_code::inconclusive);
  EXPECT_EQ(r.json["verdict"], "INCONCLUSIVE");
}

TEST(Resolve, FieldOverride) {
  auto c = job("resolve", "braid.alg");
  EXPECT_EQ(run(c).json["field"], "GF(5)");
  c.field = "Q";
  EXPECT_EQ(run(c).json["field"], "Q");
}

TEST(Resolve, MonoidInput) {
  auto c = job("resolve", "c2.mon");
  auto r = run(c);
  EXPECT_EQ(r.exit, exit_code::ok);
  EXPECT_EQ(r.json["ranks"], Json::parse("[1,1,1,1]"));
  c.side = "weak-bi";
  EXPECT_THROW(run(c), Unsupported);
}

TEST(GroupBires, SymmetricGroup) {
  auto c = job("group-bires", "s3.mon");
  c.hom_bound = 4;
  auto r = run(c);
  EXPECT_EQ(r.exit, exit_code::ok);
  EXPECT_EQ(r.json["ranks"], Json::parse("[1,2,3,2,1]"));
  EXPECT_EQ(r.json["result"], "PASS");
  EXPECT_EQ(r.json["checks"]["right_exact"], "PASS");
}

TEST(GroupBires, SemilatticeIsUnsupported) { EXPECT_THROW(run(job("group-bires", "semilattice.mon")), Unsupported); }

TEST(Retract, PlaneToLine) {
  auto r = run(job("retract", "poly2_to_poly1.ret"));
  EXPECT_EQ(r.exit, exit_code::ok);
  EXPECT_EQ(r.json["pair"], "trivial");
  EXPECT_EQ(r.json["rank_law"], true);
  EXPECT_EQ(r.json["bottom_exact"], true);
}

TEST(Retract, BrokenSection) { EXPECT_THROW(run(job("retract", "broken_section.ret")), ValidationError); }

TEST(Config, RejectsSmallCutoff) {
  auto c = job("resolve", "poly2.alg");
  c.degree_bound = 1;
  EXPECT_THROW(run(c), ValidationError);
}

TEST(Render, JsonRoundTripIsByteIdentical) {
  auto r = run(job("resolve", "poly2.alg"));
  auto text = render(r.json, Format::json);
  auto back = Json::parse(text);
  EXPECT_EQ(back, r.json);
  EXPECT_EQ(render(back, Format::json), text);
}

TEST(Render, CsvAndTable) {
  auto r = run(job("resolve", "poly2.alg"));
  auto csv = render(r.json, Format::csv);
  EXPECT_NE(csv.find("betti,1,1,2\n"), std::string::npos);
  EXPECT_NE(csv.find("ranks,1 2 1 0\n"), std::string::npos);
  auto table = render(r.json, Format::table);
  EXPECT_NE(table.find("verdict: CERTIFIED-UP-TO-D"), std::string::npos);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("resolve " + data("poly2.alg") + " -D 6 -n 3").exit, 0);
  EXPECT_EQ(run_cli("resolve " + data("exterior2.alg") + " -D 3 -n 4").exit, 2);
  EXPECT_EQ(run_cli("group-bires " + data("semilattice.mon")).exit, 1);
  EXPECT_EQ(run_cli("retract " + data("broken_section.ret")).exit, 1);
  EXPECT_EQ(run_cli("resolve " + data("no_such_file.alg")).exit, 1);
  EXPECT_EQ(run_cli("resolve " + data("poly2.alg") + " --side sideways").exit, 1);
}

TEST(Binary, JsonOutput) {
  auto p = run_cli("resolve " + data("poly2.alg") + " -D 6 -n 3 --format json");
  ASSERT_EQ(p.exit, 0);
  auto j = Json::parse(p.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j.dump(2) + "\n", p.out);
  auto e = run_cli("--format json group-bires " + data("semilattice.mon"));
  EXPECT_EQ(e.exit, 1);
  EXPECT_EQ(Json::parse(e.out)["error"], "unsupported");
}

TEST(Binary, VerifySingleFixture) {
  auto p = run_cli("verify --fixture koszul --format json");
  ASSERT_EQ(p.exit, 0);
  auto j = Json::parse(p.out);
  ASSERT_EQ(j["fixtures"].size(), 1u);
  EXPECT_EQ(j["fixtures"][0]["result"], "PASS");
}
