#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "latq/cli.hpp"
#include "oracles.hpp"

using namespace latq;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Writes content to a file under the system temp directory.
std::string temp_file(const std::string& content, const std::string& tag) {
  const auto path =
      std::filesystem::temp_directory_path() / ("latq_cli_" + tag + ".mat");
  std::ofstream f(path);
  f << content;
  return path.string();
}

}  // namespace

TEST_CASE("parse_matrix_text accepts the grammar") {
  const RationalMatrix a = parse_matrix_text("[[1 0]\n[1 1]]");
  CHECK(a == test::matrix_2x2(1, 0, 1, 1));

  const RationalMatrix b = parse_matrix_text("[[1/2 0]\n[0 1]]");
  CHECK(b(0, 0) == Rational(1, 2));

  // whitespace between rows is arbitrary on input
  const RationalMatrix c = parse_matrix_text("  [ [1 0]   [2 1] ] ");
  CHECK(c == test::matrix_2x2(1, 0, 2, 1));
  CHECK(parse_matrix_text("[[-3]]")(0, 0) == -3);
  CHECK(parse_matrix_text("[[6/4]]")(0, 0) == Rational(3, 2));
}

TEST_CASE("parse_matrix_text reports line and column") {
  auto expect_error = [](const std::string& text, int line) {
    try {
      parse_matrix_text(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line == line);
      CHECK(e.column >= 1);
    }
  };
  expect_error("", 1);
  expect_error("[", 1);
  expect_error("[[1 2]\n[3]]", 2);       // rows differ in length
  expect_error("[[1/0]]", 1);            // zero denominator
  expect_error("[[1/-2]]", 1);           // negative denominator
  expect_error("[[x]]", 1);
  expect_error("[[1]] trailing", 1);
  expect_error("[[1 2]\n[3 4]", 2);      // unclosed matrix
}

TEST_CASE("parse_basis rejects rank-deficient input with certificate") {
  CHECK_THROWS_WITH_AS(parse_basis("[[1 0][2 0]]"),
                       "rank-deficient basis: det(B*B^T) = 0", RankDeficient);
}

TEST_CASE("serialize_matrix canonical form and round trip") {
  CHECK(serialize_matrix(RationalMatrix(RationalMatrix::Identity(2, 2))) ==
        "[[1 0]\n[0 1]]");
  RationalMatrix r(1, 2);
  r << Rational(3, 2), Rational(-7);
  CHECK(serialize_matrix(r) == "[[3/2 -7]]");

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RationalMatrix m = seed % 2
                                 ? test::random_rational_matrix(3, 4, seed)
                                 : test::random_int_matrix(2, 5, 99, seed);
    CHECK(parse_matrix_text(serialize_matrix(m)) == m);
  }

  // float matrices serialize through their exact binary expansion
  RealMatrix f(1, 2);
  f << 0.5, -3.0;
  CHECK(serialize_matrix(f) == "[[1/2 -3]]");
}

TEST_CASE("cli metrics") {
  const auto id = temp_file("[[1 0]\n[0 1]]", "id2");
  const auto res = run({"metrics", id, "--format", "json"});
  CHECK(res.code == 0);
  CHECK(res.out.find("\"seysen_dual\": \"2\"") != std::string::npos);
  CHECK(res.out.find("\"od\": \"0\"") != std::string::npos);
  CHECK(res.out.find("\"mode\": \"exact\"") != std::string::npos);

  const auto fx = temp_file("[[1 0]\n[1 1]]", "fx");
  const auto rfx = run({"metrics", fx});
  CHECK(rfx.code == 0);
  CHECK(rfx.out.find("seysen_dual: 4") != std::string::npos);
  CHECK(rfx.out.find("seysen_angles: 4") != std::string::npos);
  CHECK(rfx.out.find("od: 1/2") != std::string::npos);
  CHECK(rfx.out.find("kappa_sq: 8") != std::string::npos);

  // byte-identical across runs
  CHECK(run({"metrics", fx, "--format", "json"}).out ==
        run({"metrics", fx, "--format", "json"}).out);

  // float mode
  const auto rf = run({"--mode", "float", "metrics", fx, "--format", "json"});
  CHECK(rf.code == 0);
  CHECK(rf.out.find("\"mode\": \"float\"") != std::string::npos);
  CHECK(rf.out.find("\"seysen_dual\": 4") != std::string::npos);

  std::remove(id.c_str());
}

TEST_CASE("cli exit codes") {
  const auto bad = temp_file("[[1 0]\n[2 0]]", "rank");
  const auto r3 = run({"metrics", bad});
  CHECK(r3.code == 3);
  CHECK(r3.err.find("det(B*B^T) = 0") != std::string::npos);

  const auto garbled = temp_file("[[1 oops]]", "parse");
  const auto r2 = run({"metrics", garbled});
  CHECK(r2.code == 2);
  CHECK(r2.err.find("line 1") != std::string::npos);

  CHECK(run({"metrics", "no_such_file.mat"}).code == 4);
  CHECK(run({"metrics", "x", "--format", "yaml"}).code == 2);  // bad flag value
  CHECK(run({}).code == 2);  // no subcommand: usage

  std::remove(bad.c_str());
  std::remove(garbled.c_str());
}

TEST_CASE("cli verify") {
  const auto fx = temp_file("[[1 0]\n[1 1]]", "vfx");
  const auto res = run({"verify", fx});
  CHECK(res.code == 0);
  CHECK(res.out.find("zhang_upper: 4 <= 4  ok  margin=0") != std::string::npos);
  CHECK(res.out.find("all_satisfied: true") != std::string::npos);

  const auto json = run({"verify", fx, "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out.find("\"route_equality\"") != std::string::npos);

  const auto csv = run({"verify", fx, "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("name,lhs,rhs,exact,satisfied,margin\n", 0) == 0);

  const auto id5 = temp_file(
      "[[1 0 0 0 0]\n[0 1 0 0 0]\n[0 0 1 0 0]\n[0 0 0 1 0]\n[0 0 0 0 1]]",
      "id5");
  const auto r5 = run({"verify", id5});
  CHECK(r5.code == 0);
  CHECK(r5.out.find("zhang_lower: 5 <= 5  ok") != std::string::npos);
  std::remove(id5.c_str());
}

TEST_CASE("cli verify and reduce in float mode") {
  const auto fx = temp_file("[[1 0]\n[1 1]]", "flt");
  const auto v = run({"--mode", "float", "verify", fx});
  CHECK(v.code == 0);
  CHECK(v.out.find("all_satisfied: true") != std::string::npos);

  const auto skew = temp_file("[[1 0]\n[10 1]]", "fskew");
  const auto r = run({"--mode", "float", "reduce", skew});
  CHECK(r.code == 0);
  CHECK(r.err.find("mode: float") != std::string::npos);
  auto value_of = [&](const std::string& key) {
    const auto pos = r.err.find(key + ": ");
    REQUIRE(pos != std::string::npos);
    return std::stod(r.err.substr(pos + key.size() + 2));
  };
  CHECK(value_of("s_before") == doctest::Approx(202.0).epsilon(1e-9));
  CHECK(value_of("s_after") == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("cli reduce") {
  const auto skew = temp_file("[[1 0]\n[10 1]]", "skew");
  const auto res = run({"reduce", skew, "--algo", "seysen"});
  CHECK(res.code == 0);
  CHECK(res.err.find("s_before: 202") != std::string::npos);
  CHECK(res.err.find("s_after: 2") != std::string::npos);
  CHECK(res.err.find("det_u:") != std::string::npos);
  // stdout carries a parseable reduced basis
  const RationalMatrix reduced = parse_matrix_text(res.out);
  CHECK(gram(make_basis(reduced)) == RationalMatrix::Identity(2, 2));

  const auto jl = run({"reduce", skew, "--algo", "lll", "--format", "json"});
  CHECK(jl.code == 0);
  CHECK(jl.out.find("\"algo\": \"lll\"") != std::string::npos);
  CHECK(jl.out.find("\"s_after\": \"2\"") != std::string::npos);
  CHECK(jl.out.find("\"basis\": \"[[") != std::string::npos);

  const auto id3 = temp_file("[[1 0 0]\n[0 1 0]\n[0 0 1]]", "id3");
  const auto rid = run({"reduce", id3});
  CHECK(rid.code == 0);
  CHECK(rid.err.find("steps: 0") != std::string::npos);

  CHECK(run({"reduce", skew, "--algo", "lll", "--delta", "0.2"}).code == 2);
  std::remove(id3.c_str());
}

TEST_CASE("cli gen is deterministic and parseable") {
  const std::vector<std::string> args = {"gen",    "--family", "uniform",
                                         "--n",    "4",        "--bound",
                                         "30",     "--seed",   "7"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto basis = parse_basis(a.out);
  CHECK(basis.n() == 4);

  const auto k = run({"gen", "--family", "knapsack", "--n", "3", "--bound",
                      "9", "--seed", "2"});
  const auto kb = parse_basis(k.out);
  CHECK(kb.m() == 4);
}

TEST_CASE("cli bench") {
  const std::vector<std::string> args = {"bench", "--n", "2", "--bound", "40",
                                         "--seed", "11", "--trials", "5"};
  const auto a = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == run(args).out);  // byte-identical without --timings

  std::istringstream lines(a.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("family,n,m,bound,seed,trial,s_initial", 0) == 0);

  // locate the zhang_upper_margin column; n = 2 rows must have margin 0
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  std::size_t margin_col = 0;
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (cols[i] == "zhang_upper_margin") margin_col = i;
  REQUIRE(margin_col > 0);

  std::string line;
  int data_rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> vals;
    std::istringstream ls(line);
    std::string v;
    while (std::getline(ls, v, ',')) vals.push_back(v);
    REQUIRE(vals.size() == cols.size());
    if (vals[5] == "mean" || vals[5] == "median") continue;
    ++data_rows;
    CHECK(vals[margin_col] == "0");  // n = 2: Zhang upper bound is tight
  }
  CHECK(data_rows == 5);
}

TEST_CASE("cli bench n=8: new product bound is tighter when S >= 2n") {
  const auto res = run({"bench", "--n", "8", "--bound", "50", "--seed", "3",
                        "--trials", "8"});
  REQUIRE(res.code == 0);
  std::istringstream lines(res.out);
  std::string header;
  std::getline(lines, header);
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  auto col_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return i;
    FAIL("missing column " << name);
    return std::size_t(0);
  };
  const std::size_t s_col = col_of("s_initial");
  const std::size_t new_col = col_of("new_product_rhs");
  const std::size_t zhang_col = col_of("zhang_product_rhs");
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> vals;
    std::istringstream ls(line);
    std::string v;
    while (std::getline(ls, v, ',')) vals.push_back(v);
    if (vals[5] == "mean" || vals[5] == "median") continue;
    Rational s(vals[s_col]);
    s.canonicalize();
    if (s >= 16) CHECK(std::stod(vals[new_col]) < std::stod(vals[zhang_col]));
  }
}
