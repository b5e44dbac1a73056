#include "test_util.hpp"

#include "cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace walklap;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "walklap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("walklap_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("operator specs") {
    const auto s = cli::parse_operator_spec("btdw-exp:mu=0.5:beta=0.2");
    CHECK(s.family == Family::Btdw);
    CHECK(s.mu == 0.5);
    CHECK(s.beta.value() == 0.2);
    CHECK(cli::parse_operator_spec("nbt-res").mu == 1.0);
    CHECK(cli::parse_operator_spec("k-walk:k=3").k == 3);
    CHECK(cli::parse_operator_spec("k-path:weights=power").kpath_kind == KPathWeights::Kind::PowerLaw);
    CHECK_THROWS_AS(cli::parse_operator_spec("btdw-sin"), Error);
    CHECK_THROWS_AS(cli::parse_operator_spec("btdw-exp:nu=1"), Error);
    CHECK(cli::parse_operator_spec(s.label()).label() == s.label());
  }

  TEST_CASE("truncated series operators") {
    const Graph g = gen::karate();
    cli::OperatorSpec s = cli::parse_operator_spec("btdw-exp:mu=0.5:beta=0.1:K=40");
    const auto trunc = cli::build_operator(g, s);
    s.truncation = 0;
    const auto full = cli::build_operator(g, s);
    CHECK(testutil::max_diff(trunc.materialize(), full.materialize()) < 1e-10);
  }

  TEST_CASE("info on K3") {
    const Run r = run({"info", "--graph", "builtin:complete:3"});
    CHECK(r.status == 0);
    CHECK(r.out.rfind("# walklap ", 0) == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "3");
    CHECK(rows[1][1] == "3");
    CHECK(std::stod(rows[1][4]) == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("reproduce g58") {
    const Run r = run({"reproduce", "g58", "--family", "standard"});
    CHECK(r.status == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 14);
    CHECK(rows[0] == std::vector<std::string>{"node", "label", "standard"});
    CHECK(rows[3][1] == "3");
    CHECK(std::abs(std::stod(rows[3][2]) - 0.416667) < 1e-6);
    CHECK(std::abs(std::stod(rows[5][2]) - 0.0416667) < 1e-6);
  }

  TEST_CASE("compare orders the families on a grid") {
    const Run r = run({"compare", "--graph", "builtin:grid:30x30", "--families",
                       "standard,btdw-exp:mu=0,btdw-exp:mu=0.5,btdw-exp:mu=1", "--tmax", "100", "--points", "11"});
    REQUIRE(r.status == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 12);
    const auto& at10 = rows[2];
    CHECK(std::stod(at10[0]) == doctest::Approx(10.0));
    CHECK(std::stod(at10[1]) < std::stod(at10[2]));
    CHECK(std::stod(at10[2]) < std::stod(at10[3]));
    CHECK(std::stod(at10[3]) < std::stod(at10[4]));
    // numpy eigvalsh oracle, tests/oracle/oracle.py
    CHECK(std::stod(at10[1]) == doctest::Approx(0.011330959242741892).epsilon(1e-9));
    CHECK(std::stod(at10[2]) == doctest::Approx(0.016772854768253204).epsilon(1e-9));
    CHECK(std::stod(at10[4]) == doctest::Approx(0.01768098818863482).epsilon(1e-9));
  }

  TEST_CASE("return-prob, stationary, spectral, counts and json") {
    const Run rp = run({"return-prob", "-g", "builtin:karate", "--method", "stochastic", "--points", "5", "--seed", "3"});
    CHECK(rp.status == 0);
    CHECK(rp.out.find("seed: 3") != std::string::npos);
    CHECK(csv(rp.out)[0] == std::vector<std::string>{"t", "p_hat", "err_est"});
    CHECK(run({"return-prob", "-g", "builtin:karate", "--method", "stochastic", "--points", "5", "--seed", "3"}).out ==
          rp.out);

    const Run st = run({"stationary", "-g", "builtin:path:3", "--json"});
    const auto doc = nlohmann::json::parse(st.out);
    CHECK(doc["rows"][1]["value"].get<double>() == doctest::Approx(0.5));
    CHECK(doc["header"]["seed"].get<int>() == 1);

    const Run sp = run({"spectral", "-g", "builtin:cycle:4", "--mus", "0,1"});
    const auto sd = nlohmann::json::parse(sp.out);
    CHECK(sd["rho_A"].get<double>() == doctest::Approx(2.0));
    CHECK(sd["rho_Z"][1]["rho_Z"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sd["laplacian"]["lambda_max"].get<double>() == doctest::Approx(4.0));

    const auto counts = csv(run({"counts", "-g", "builtin:complete:3", "--k", "3", "--mu", "1"}).out);
    REQUIRE(counts.size() == 4);
    CHECK(counts[1] == std::vector<std::string>{"0", "0", "2"});

    const auto ex = nlohmann::json::parse(run({"explore", "-g", "builtin:path:3", "--checkpoints", "0,1", "--json"}).out);
    CHECK(ex["checkpoints"]["1"].size() == 2);

    const auto gap = csv(run({"gap", "-g", "builtin:complete:4"}).out);
    CHECK(std::stod(gap[1][2]) == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("apply and diffuse read vectors") {
    const fs::path dir = scratch_dir();
    const fs::path in = dir / "v.csv";
    std::ofstream(in) << "value\n1\n0\n0\n";
    const auto rows = csv(run({"apply", "-g", "builtin:path:3", "-i", in.string()}).out);
    CHECK(rows[1][1] == "1");
    CHECK(rows[2][1] == "-1");
    std::ofstream(in) << "1,1.0\n";
    const auto d = csv(run({"diffuse", "-g", "builtin:path:3", "-i", in.string(), "-t", "0"}).out);
    CHECK(d[2][1] == "1");
    std::ofstream(in) << "1\n2\n";
    CHECK(run({"apply", "-g", "builtin:path:3", "-i", in.string()}).status == 1);
    fs::remove_all(dir);
  }

  TEST_CASE("output files and failures") {
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "pi.csv";
    const Run ok = run({"stationary", "-g", "builtin:trap:5:8", "-o", out.string()});
    CHECK(ok.status == 0);
    CHECK(ok.out.empty());
    std::ifstream f(out);
    std::string first;
    std::getline(f, first);
    CHECK(first.find("command: walklap stationary") != std::string::npos);

    const fs::path bad = dir / "bad.csv";
    const Run fail = run({"apply", "-g", "builtin:path:3", "--family", "transformed", "--function", "res", "--alpha",
                          "0.9", "-i", (dir / "missing.csv").string(), "-o", bad.string()});
    CHECK(fail.status == 1);
    CHECK(fail.err.find("error") != std::string::npos);
    CHECK_FALSE(fs::exists(bad));
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename().string().find(".tmp") == std::string::npos);

    CHECK(run({"info", "-g", "no-such-graph"}).status == 1);
    CHECK(run({"info"}).status != 0);
    CHECK(run({"frobnicate"}).status != 0);
    CHECK(run({"reproduce", "g99"}).status != 0);
    CHECK(run({"--help"}).status == 0);
    fs::remove_all(dir);
  }

  TEST_CASE("dataset lookup") {
    const fs::path dir = scratch_dir();
    std::ofstream(dir / "Pajek_tiny.mtx") << "%%MatrixMarket matrix coordinate pattern symmetric\n4 4 3\n2 1\n3 2\n4 3\n";
    ::setenv(cli::kDataDirEnv, dir.string().c_str(), 1);
    const Graph g = cli::resolve_graph("Pajek/tiny");
    CHECK(g.num_nodes() == 4);
    CHECK(g.num_edges() == 3);
    ::unsetenv(cli::kDataDirEnv);
    CHECK_THROWS_AS(cli::resolve_graph("Pajek/tiny"), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("size limits surface the constant") {
    const Run r = run({"stationary", "-g", "builtin:path:50", "--dense-limit", "20"});
    CHECK(r.status == 1);
    CHECK(r.err.find("20") != std::string::npos);
    set_dense_limit(kDefaultDenseLimit);
  }
}
