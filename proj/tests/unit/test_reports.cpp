#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wtk/reports/commands.hpp"

using namespace wtk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int rc = run_command(args, o, e);
  return {rc, o.str(), e.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = Config::parse("# comment\nH = 0.75\n  seed=9 \nc7 = 2.5\nC_B = 3\n");
  CHECK(c.H == 0.75);
  CHECK(c.seed == 9);
  CHECK(c.constant("c7") == 2.5);
  CHECK(c.constant("c8") == 1);
  CHECK(c.estimation_constants().size() == 1);
  CHECK(c.constant("C_B") == 3);
  CHECK_THROWS_AS(Config::parse("nonsense = 1\n"), InputError);
  CHECK_THROWS_AS(Config::parse("H 1\n"), InputError);
  CHECK_THROWS_AS(Config::parse("H = -1\n"), InputError);
  CHECK_THROWS_AS(Config::parse("delta = 0.5\n"), InputError);
  CHECK_THROWS_AS(Config::parse("precision_digits = 10\n"), InputError);
  CHECK_THROWS_AS(Config::parse("H = 1x\n"), InputError);
  CHECK_THROWS_AS(Config::load("/nonexistent/wtk.cfg"), InputError);
}

TEST_CASE("config hash is canonical") {
  auto a = Config::parse("H = 0.5\nseed = 3\n"), b = Config::parse("seed = 3\n");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(Config::parse("seed = 4\n")));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(255) == "00000000000000ff");
}

TEST_CASE("witness CSV round trip") {
  auto r = witness_search_char(primitive_characters(4)[0], ExclusionSet({3, 7}));
  std::string table = witness_csv_header() + witness_csv_row(r);
  CHECK(table.find("\"3,7\"") != std::string::npos);
  std::istringstream in("# preamble\n" + table);
  auto pts = read_witness_csv(in, TheoremTag::B);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].p == 11);
  CHECK(pts[0].log_base == Catch::Approx(std::log(84.0)));
  std::istringstream in2(table);
  CHECK(read_witness_csv(in2, TheoremTag::A).empty());
  std::istringstream bad("B,x,\"\",1,2\n");
  CHECK_THROWS_AS(read_witness_csv(bad, TheoremTag::B), InputError);
}

TEST_CASE("JSON fields") {
  auto r = witness_search_char(primitive_characters(4)[0], ExclusionSet({3, 7}));
  auto j = to_json(r);
  CHECK(j["witness_prime"] == 11);
  CHECK(j["theorem_tag"] == "B");
  CHECK(j["excluded_S"] == nlohmann::ordered_json::array({3, 7}));
  r.bound_value = INFINITY;
  CHECK(to_json(r)["bound_value"].is_null());
  CHECK(fmt_real(NAN) == "nan");
  CHECK(fmt_real(-INFINITY) == "-inf");
  auto h = report_header(Config{}, "x");
  CHECK(h["version"] == kToolkitVersion);
  CHECK(h["config_hash"].get<std::string>().size() == 16);
}

TEST_CASE("character selection") {
  CHECK(select_character(4, "odd").parity_b() == 1);
  CHECK(select_character(5, "principal").is_principal());
  CHECK(select_character(5, "1") == all_characters(5)[1]);
  CHECK(select_character(5, all_characters(5)[2].key()) == all_characters(5)[2]);
  CHECK_THROWS_AS(select_character(5, "99"), InputError);
  CHECK_THROWS_AS(select_character(5, "banana"), InputError);
}

TEST_CASE("command line: witness commands") {
  auto r = run({"witness-char", "--modulus", "4", "--char", "odd", "--exclude", "3,7"});
  CHECK(r.rc == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["witness_prime"] == 11);
  CHECK(j["command"] == "witness-char");

  r = run({"witness-chebotarev", "--conductor", "5", "--class", "2", "--exclude", "2"});
  CHECK(r.rc == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["report"]["witness_prime"] == 7);

  r = run({"witness-char", "--modulus", "4", "--char", "principal"});
  CHECK(r.rc == kExitUsage);
  r = run({"witness-chebotarev", "--conductor", "4", "--class", "1", "--exclude", "5", "--cap", "10"});
  CHECK(r.rc == kExitViolation);
  r = run({"no-such-command"});
  CHECK(r.rc == kExitUsage);
  r = run({"witness-char"});
  CHECK(r.rc == kExitUsage);
}

TEST_CASE("command line: checks and tables") {
  auto r = run({"schur-check", "--d", "2", "--samples", "50", "--seed", "3"});
  CHECK(r.rc == kExitOk);
  CHECK(r.out.rfind("# command=schur-check", 0) == 0);
  CHECK(r.out == run({"schur-check", "--d", "2", "--samples", "50", "--seed", "3"}).out);

  r = run({"bound-table", "--tag", "B", "--base", "4,5", "--NS", "1,21"});
  CHECK(r.rc == kExitOk);
  r = run({"bound-table", "--tag", "C", "--base", "4", "--d", "2"});
  CHECK(r.rc == kExitOk);

  r = run({"estimation-table", "--dL", "125", "--nL", "4", "--n", "4", "--beta0", "0.79", "--x-power", "20"});
  CHECK(r.rc == kExitOk);
  CHECK(r.out.find("verdict") != std::string::npos);
}

TEST_CASE("command line: fit-constants from a table") {
  auto dir = fs::temp_directory_path() / "wtk_unit_reports";
  fs::create_directories(dir);
  auto table = (dir / "t.csv").string();
  {
    std::ofstream o(table);
    o << witness_csv_header();
    for (auto& c : primitive_characters(7)) o << witness_csv_row(witness_search_char(c, ExclusionSet({2})));
  }
  auto r = run({"fit-constants", "--form", "B", "--input", table});
  CHECK(r.rc == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["points"] == 5);
  CHECK(run({"fit-constants", "--form", "A", "--input", table}).rc == kExitUsage);
  CHECK(run({"fit-constants", "--form", "B"}).rc == kExitUsage);

  auto cfg = (dir / "c.cfg").string();
  std::ofstream(cfg) << "bogus = 1\n";
  CHECK(run({"--config", cfg, "witness-char", "--modulus", "4", "--char", "odd"}).rc == kExitUsage);
  fs::remove_all(dir);
}

#ifdef WTK_CLI_PATH
TEST_CASE("installed executable writes the same report") {
  auto dir = fs::temp_directory_path() / "wtk_unit_cli";
  fs::create_directories(dir);
  auto path = (dir / "o.json").string();
  std::string cmd = std::string(WTK_CLI_PATH) + " --out " + path + " witness-char --modulus 4 --char odd --exclude 3,7";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(path) == run({"witness-char", "--modulus", "4", "--char", "odd", "--exclude", "3,7"}).out);
  fs::remove_all(dir);
}
#endif

TEST_CASE("global options may follow the subcommand") {
  auto a = run({"--threads", "2", "schur-check", "--d", "2", "--samples", "20"});
  auto b = run({"schur-check", "--d", "2", "--samples", "20", "--threads", "2"});
  CHECK(b.rc == kExitOk);
  CHECK(a.out == b.out);
}
