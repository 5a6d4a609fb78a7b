#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "support/sampling.hpp"
#include "tdkit/commands.hpp"
#include "tdkit/document.hpp"

using namespace tdkit;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(TDKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path work_dir() {
  fs::path dir = fs::path(TDKIT_TEST_WORKDIR) / "cli";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string degenerate_doc() {
  const fs::path p = work_dir() / "degenerate.json";
  run("diameter2 0 1 2 0 1 2 1 1 1 --out " + p.string() + " --format machine");
  return p.string();
}

std::string td_doc() {
  const fs::path p = work_dir() / "td.json";
  run("diameter2 0 1 2 0 1 2 1 1 2 --out " + p.string() + " --format machine");
  return p.string();
}

std::string doubled_doc() {
  SystemDocument d = read_system_file(degenerate_doc());
  SystemDocument out = d;
  out.dimension = 2 * d.dimension;
  auto double_grid = [&](const StringGrid& g) {
    StringGrid r(out.dimension, std::vector<std::string>(out.dimension, "0"));
    for (std::size_t i = 0; i < d.dimension; ++i)
      for (std::size_t j = 0; j < d.dimension; ++j) r[i][j] = r[i + d.dimension][j + d.dimension] = g[i][j];
    return r;
  };
  out.a = double_grid(d.a);
  out.a_star = double_grid(d.a_star);
  const fs::path p = work_dir() / "doubled.json";
  write_system_file(p.string(), out);
  return p.string();
}

std::string location_of(const std::string& text) {
  try {
    parse_system_document(text);
  } catch (const DocumentError& e) {
    return e.location();
  }
  return "<none>";
}

}  // namespace

// ---------------------------------------------------------------- documents

TEST(Document, CanonicalRoundTrip) {
  const std::string text = slurp(degenerate_doc());
  EXPECT_EQ(write_system_document(parse_system_document(text)), text);
}

TEST(Document, NonCanonicalInputIsNormalised) {
  const std::string text = R"({"theta_stars":["0","3/3"],"thetas":["-0","2/2"],"field":{"kind":"GFp","p":7},
    "dimension":2,"A":[["0","0"],["0","8"]],"A_star":[["0","0"],["0","1"]]})";
  const SystemDocument d = parse_system_document(text);
  EXPECT_EQ(d.thetas, (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(d.a[1][1], "1");
  const std::string canonical = write_system_document(d);
  EXPECT_EQ(write_system_document(parse_system_document(canonical)), canonical);
  EXPECT_LT(canonical.find("\"field\""), canonical.find("\"dimension\""));
}

TEST(Document, RandomSystemsRoundTrip) {
  tdkit::testing::Rng rng(71);
  tdkit::testing::for_each_field([&](auto tag, const FieldSpec& f) {
    using S = decltype(tag);
    for (int trial = 0; trial < 20; ++trial) {
      const MtdSystem<S> sys = build_system(tdkit::testing::sample_params<S>(rng, f, trial % 2 == 0));
      const SystemDocument d = encode(sys);
      const std::string text = write_system_document(d);
      EXPECT_EQ(parse_system_document(text), d);
      const SystemInput<S> back = decode<S>(d);
      EXPECT_EQ(back.a, sys.a);
      EXPECT_EQ(back.a_star, sys.a_star);
    }
  });
}

TEST(Document, ErrorLocations) {
  const std::string base = slurp(degenerate_doc());
  std::string bad = base;
  bad.replace(bad.rfind("\"2\""), 3, "\"1//2\"");  // last entry of theta_stars
  EXPECT_EQ(location_of(bad), "theta_stars[2]");
  EXPECT_EQ(location_of("{\"field\": {\"kind\": \"GFp\", \"p\": 4}}"), "field.p");
  EXPECT_EQ(location_of("{").rfind("byte ", 0), 0u);
  SystemDocument d = parse_system_document(base);
  d.a[3][3] = "x";
  EXPECT_EQ(location_of(write_system_document(d)), "A[3][3]");
}

// ------------------------------------------------------------------- check

TEST(Check, DegenerateInstance) {
  const std::string doc = degenerate_doc();
  EXPECT_EQ(run("check " + doc).exit_code, 0);
  EXPECT_EQ(run("check --level mtd " + doc).exit_code, 0);
  const CliResult td = run("check --level td --format machine " + doc);
  EXPECT_EQ(td.exit_code, 1);
  const Verdict v = Verdict::parse(td.out);
  EXPECT_EQ(v["td"]["maximal_submodule"]["dim"], 1);
  EXPECT_EQ(v["td"]["maximal_submodule"]["basis"], Verdict::parse(R"([["0","1","-1","0"]])"));
}

TEST(Check, TdInstance) { EXPECT_EQ(run("check --level td " + td_doc()).exit_code, 0); }

TEST(Check, MalformedScalarIsParseError) {
  SystemDocument d = read_system_file(degenerate_doc());
  std::string text = write_system_document(d);
  text.replace(text.find("\"1\""), 3, "\"1//2\"");
  const fs::path p = work_dir() / "malformed.json";
  spit(p, text);
  const CliResult r = run("check --format machine " + p.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(Verdict::parse(r.out)["error"]["kind"], "Parse");
}

TEST(Check, MissingFileAndUsageErrors) {
  EXPECT_EQ(run("check " + (work_dir() / "absent.json").string()).exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("check --level bogus " + degenerate_doc()).exit_code, 2);
}

TEST(Check, HumanReportEndsWithResult) {
  const CliResult r = run("check " + degenerate_doc());
  EXPECT_NE(r.out.find("result: pass (exit 0)"), std::string::npos) << r.out;
}

TEST(Check, BatchKeepsInputOrderAndMaxExit) {
  const std::string a = degenerate_doc();
  const std::string b = td_doc();
  const CliResult serial = run("check --level td --format machine " + a + " " + b + " " + a);
  const CliResult parallel = run("check --level td --format machine --jobs 3 " + a + " " + b + " " + a);
  EXPECT_EQ(serial.exit_code, 1);
  EXPECT_EQ(parallel.exit_code, 1);
  EXPECT_EQ(serial.out, parallel.out);
  const Verdict v = Verdict::parse(serial.out);
  ASSERT_TRUE(v.is_array());
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0]["input"], a);
  EXPECT_EQ(v[1]["input"], b);
  EXPECT_EQ(v[1]["exit_code"], 0);
}

TEST(Check, MachineOutputIsDeterministic) {
  const std::string doc = degenerate_doc();
  const CliResult first = run("check --format machine " + doc);
  const CliResult second = run("check --format machine " + doc);
  EXPECT_FALSE(first.out.empty());
  EXPECT_EQ(first.out, second.out);
}

// ---------------------------------------------------------------- quotient

TEST(Quotient, DegenerateInstance) {
  const CliResult r = run("quotient --format machine " + degenerate_doc());
  EXPECT_EQ(r.exit_code, 0);
  const Verdict v = Verdict::parse(r.out);
  EXPECT_EQ(v["quotient_dim"], 3);
  EXPECT_EQ(v["induced"]["A"], Verdict::parse(R"([["0","0","0"],["1","1","0"],["0","1","2"]])"));
  EXPECT_EQ(v["parameter_arrays_equal"], true);
}

TEST(Quotient, TdInstanceHasZeroM) {
  const CliResult r = run("quotient --format machine " + td_doc());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(Verdict::parse(r.out)["maximal_submodule"]["dim"], 0);
}

TEST(Quotient, DoubledInstanceIsNotSharp) {
  const CliResult r = run("quotient --format machine " + doubled_doc());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(Verdict::parse(r.out)["error"]["kind"], "NotSharp");
}

// --------------------------------------------------------------- diameter2

TEST(Diameter2, DegenerateWithExpect) {
  const fs::path out = work_dir() / "d2.json";
  const CliResult r = run("diameter2 --expect --format machine --out " + out.string() + " 0 1 2 0 1 2 1 1 1");
  EXPECT_EQ(r.exit_code, 0);
  const Verdict v = Verdict::parse(r.out);
  EXPECT_EQ(v["td_criterion"], false);
  EXPECT_EQ(v["expect"]["passed"], true);
  EXPECT_TRUE(fs::exists(out));
}

TEST(Diameter2, TdLevel) {
  const CliResult r = run("diameter2 --level td --out " + (work_dir() / "d2td.json").string() + " 0 1 2 0 1 2 1 1 2");
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Diameter2, ValidationAndParseFailures) {
  const std::string out = " --format machine --out " + (work_dir() / "d2bad.json").string();
  const CliResult zero = run("diameter2" + out + " 0 1 2 0 1 2 1 1 0");
  EXPECT_EQ(zero.exit_code, 1);
  EXPECT_EQ(Verdict::parse(zero.out)["error"]["kind"], "Zeta2Zero");
  EXPECT_EQ(run("diameter2" + out + " 0 1 2 0 1 2 1 1 -8").exit_code, 1);
  EXPECT_EQ(run("diameter2" + out + " 0 1 2 0 1 2 1 1 1//2").exit_code, 2);
  EXPECT_EQ(run("diameter2 --field GF4" + out + " 0 1 2 0 1 2 1 1 1").exit_code, 2);
  EXPECT_EQ(run("diameter2" + out + " 0 1 2").exit_code, 2);
}

TEST(Diameter2, PrimeField) {
  const CliResult r = run("diameter2 --field GF7 --expect --out " + (work_dir() / "d2gf7.json").string() + " 0 1 2 0 1 2 1 1 1");
  EXPECT_EQ(r.exit_code, 0);
}
