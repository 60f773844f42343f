#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = decaysum::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("decaysum_test_" + name);
}

}  // namespace

TEST_CASE("coeffs command emits the gap table") {
  const auto r = cli({"coeffs", "--decay", "poly:1", "--n", "4"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 6);  // header + n = 0..4
  CHECK(lines[0] == "n,a_n,half_weight,gap,gap_sq");
  CHECK(lines[1].rfind("0,1,", 0) == 0);     // a_0 = 1
  CHECK(lines[2].rfind("1,0.25,0.25,0,0", 0) == 0);  // a_1 = f(2)/2, zero gap
}

TEST_CASE("coeffs command for exponential decay") {
  const auto r = cli({"coeffs", "--decay", "exp:2", "--n", "3"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  CHECK(lines[2].rfind("1,0.25,0.25,", 0) == 0);  // a_1 = 1/4 for alpha = 2
}

TEST_CASE("coeffs command reproduces the gap golden value at n = 2048") {
  const auto r = cli({"coeffs", "--decay", "poly:1", "--n", "2048"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2050);
  std::istringstream row(lines.back());
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(row, field, ',')) fields.push_back(field);
  REQUIRE(fields.size() == 5);
  CHECK(fields[0] == "2048");
  const double gap_sq = std::stod(fields[4]);
  CHECK(gap_sq >= 3e-8);
  CHECK(gap_sq <= 1.2e-7);
}

TEST_CASE("run command honours the sigma-convention knob") {
  auto run_with = [&](const std::string& conv) {
    return cli({"run", "--decay", "const", "--T", "8", "--epsilon", "1", "--delta",
                "1e-5", "--seed", "77", "--stream-dist", "ones",
                "--sigma-convention", conv});
  };
  const auto main_text = run_with("main-text");
  const auto analytic = run_with("analytic");
  REQUIRE(main_text.code == 0);
  REQUIRE(analytic.code == 0);
  CHECK(main_text.out != analytic.out);  // different noise scales
  CHECK(run_with("bogus").code == 2);
}

TEST_CASE("bounds command reports the certificate gap for poly:2") {
  const auto r = cli({"bounds", "--decay", "poly:2", "--T", "4096"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["horizon"] == 4096);
  const double lower = j["gamma2_lower"], upper = j["gamma2_upper"];
  CHECK(lower > 1.0);
  CHECK(upper - lower <= 0.0125);
  CHECK(j["gammaF_upper"].get<double>() ==
        doctest::Approx(64.0 * upper).epsilon(1e-12));
}

TEST_CASE("bounds command at T = 1 reports trivial bounds") {
  const auto r = cli({"bounds", "--decay", "poly:3", "--T", "1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["gamma2_lower"] == 1.0);
  CHECK(j["gamma2_upper"] == 1.0);
}

TEST_CASE("bounds command orderings for exp:2 at T = 64") {
  const auto r = cli({"bounds", "--decay", "exp:2", "--T", "64"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double lower = j["gamma2_lower"], upper = j["gamma2_upper"];
  const double closed = j["closed_form"], base = j["baseline"];
  const double gauss = j["gaussian_sensitivity"];
  CHECK(1.0 < lower);
  CHECK(lower <= upper);
  CHECK(upper <= closed);
  CHECK(closed < base);
  CHECK(upper < gauss);
}

TEST_CASE("run command: noiseless smoke run reproduces the oracle") {
  const auto r = cli({"run", "--decay", "poly:1", "--T", "3", "--epsilon", "1",
                      "--delta", "1e-5", "--seed", "7", "--stream-dist", "ones",
                      "--unsafe-no-privacy"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "t,x_t,private_output,true_sum");
  CHECK(lines[1] == "1,1,1,1");
  CHECK(lines[2] == "2,1,1.5,1.5");
  // private_output matches true_sum in every row (mechanism route may be one ulp off)
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto a = lines[i].rfind(',');
    const auto b = lines[i].rfind(',', a - 1);
    const double out = std::stod(lines[i].substr(b + 1, a - b - 1));
    const double want = std::stod(lines[i].substr(a + 1));
    CHECK(out == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("run command: byte-identical reruns with a fixed seed") {
  const auto out1 = temp_file("run1.csv");
  const auto out2 = temp_file("run2.csv");
  const std::vector<std::string> base{
      "run", "--decay", "exp:1.5", "--T", "64", "--epsilon", "0.7", "--delta",
      "1e-6", "--seed", "123456789", "--stream-dist", "uniform"};
  auto with_output = [&](const fs::path& p) {
    auto args = base;
    args.push_back("--output");
    args.push_back(p.string());
    return args;
  };
  REQUIRE(cli(with_output(out1)).code == 0);
  REQUIRE(cli(with_output(out2)).code == 0);
  std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
  const std::string b1((std::istreambuf_iterator<char>(f1)), {});
  const std::string b2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(b1 == b2);
  CHECK(!b1.empty());
  fs::remove(out1);
  fs::remove(out2);
}

TEST_CASE("run command: window mechanism plateaus on the ones stream") {
  const auto r = cli({"run", "--decay", "window:8", "--T", "24", "--epsilon", "1",
                      "--delta", "1e-5", "--seed", "9", "--stream-dist", "ones",
                      "--unsafe-no-privacy"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 25);
  CHECK(lines[8] == "8,1,8,8");
  CHECK(lines[24] == "24,1,8,8");  // plateau at w = 8
}

TEST_CASE("run command: stream file with comments and clamping") {
  const auto path = temp_file("stream.txt");
  {
    std::ofstream f(path);
    f << "# comment line\n1.5\n0.25\n\n-9  # trailing comment\n0\n";
  }
  const auto r = cli({"run", "--decay", "const", "--T", "4", "--epsilon", "1",
                      "--delta", "1e-5", "--clip", "1", "--seed", "5", "--stream",
                      path.string(), "--unsafe-no-privacy"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("clamped 2") != std::string::npos);  // 1.5 and -9
  const auto lines = split_lines(r.out);
  CHECK(lines[1] == "1,1,1,1");        // clamped to clip
  CHECK(lines[4] == "4,0,0.25,0.25");  // 1 + 0.25 - 1 + 0
  fs::remove(path);
}

TEST_CASE("run command: gaussian baseline honours the truth column") {
  const auto r = cli({"run", "--decay", "poly:2", "--T", "5", "--epsilon", "1",
                      "--delta", "1e-5", "--seed", "3", "--stream-dist", "ones",
                      "--mechanism", "gaussian", "--unsafe-no-privacy"});
  REQUIRE(r.code == 0);
  for (const auto& line : split_lines(r.out))
    if (line[0] != 't') {
      const auto a = line.rfind(',');
      const auto b = line.rfind(',', a - 1);
      CHECK(line.substr(b + 1, a - b - 1) == line.substr(a + 1));
    }
}

TEST_CASE("config errors exit with code 2") {
  CHECK(cli({"coeffs", "--decay", "poly:0", "--n", "4"}).code == 2);
  CHECK(cli({"coeffs", "--decay", "nonsense", "--n", "4"}).code == 2);
  CHECK(cli({"bounds", "--decay", "poly:1"}).code == 2);  // missing --T
  CHECK(cli({"run", "--decay", "poly:1", "--T", "4", "--epsilon", "1", "--delta",
             "1e-5", "--seed", "1"})
            .code == 2);  // no stream source
  CHECK(cli({"run", "--decay", "poly:1", "--T", "4", "--epsilon", "1", "--delta",
             "1e-5", "--stream-dist", "ones"})
            .code == 2);  // seed is mandatory
  CHECK(cli({"run", "--decay", "poly:1", "--T", "4", "--epsilon", "2", "--delta",
             "1e-5", "--seed", "1", "--stream-dist", "ones"})
            .code == 2);  // epsilon out of range
  CHECK(cli({"run", "--decay", "poly:1", "--T", "4", "--epsilon", "1", "--delta",
             "1e-5", "--seed", "1", "--stream", "/nonexistent/stream.txt"})
            .code == 2);
  CHECK(cli({"run", "--decay", "poly:1", "--T", "4", "--epsilon", "1", "--delta",
             "1e-5", "--seed", "1", "--stream-dist", "cauchy"})
            .code == 2);
  CHECK(cli({"bench", "--decay", "poly:1", "--T", "8", "--epsilon", "1", "--delta",
             "1e-5", "--seed", "1", "--distribution", "nope"})
            .code == 2);
}

TEST_CASE("stream file shorter than T is a config error") {
  const auto path = temp_file("short.txt");
  {
    std::ofstream f(path);
    f << "0.5\n0.5\n";
  }
  const auto r = cli({"run", "--decay", "const", "--T", "8", "--epsilon", "1",
                      "--delta", "1e-5", "--seed", "5", "--stream", path.string()});
  CHECK(r.code == 2);
  fs::remove(path);
}

TEST_CASE("bench command: noiseless trials give zero error rows") {
  const auto r = cli({"bench", "--decay", "poly:1", "--decay", "window:4", "--T", "16",
                      "--trials", "1", "--epsilon", "1", "--delta", "1e-5", "--seed",
                      "2", "--distribution", "ones", "--unsafe-no-privacy"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 5);  // header + 2 decays x 2 mechanisms
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 9);
    CHECK(std::stod(fields[5]) <= 1e-10);  // empirical_linf
    CHECK(std::stod(fields[6]) <= 1e-12);  // empirical_l22
  }
}

TEST_CASE("bench command: factorization beats the gaussian baseline") {
  const auto r = cli({"bench", "--decay", "poly:1", "--T", "256", "--trials", "64",
                      "--epsilon", "1", "--delta", "1e-5", "--seed", "11",
                      "--distribution", "uniform"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 3);
  double fact_l22 = -1.0, gauss_l22 = -1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields[0] == "factorization") fact_l22 = std::stod(fields[6]);
    if (fields[0] == "gaussian") gauss_l22 = std::stod(fields[6]);
  }
  REQUIRE(fact_l22 >= 0.0);
  REQUIRE(gauss_l22 >= 0.0);
  CHECK(fact_l22 < gauss_l22);
}
