#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "tropdeg/chip_firing.hpp"
#include "tropdeg/cli.hpp"
#include "tropdeg/error.hpp"
#include "tropdeg/fixtures.hpp"
#include "tropdeg/io.hpp"

using namespace tropdeg;
using io::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string binary() {
  const char* env = std::getenv("TROPDEG_BIN");
  return env ? env : "";
}

// Runs a shell line with $T standing for the binary; returns exit status and stdout.
Outcome shell(std::string line) {
  const std::string bin = "'" + binary() + "'";
  for (std::size_t at = line.find("$T"); at != std::string::npos; at = line.find("$T", at + bin.size())) {
    line.replace(at, 2, bin);
  }
  FILE* pipe = popen((line + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("tropdeg_io_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  auto path = temp_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kTriangle =
    R"({"vertices":[{"id":"a"},{"id":"b"},{"id":"c"}],)"
    R"("edges":[{"id":"ab","tail":"a","head":"b"},{"id":"bc","tail":"b","head":"c"},{"id":"ca","tail":"c","head":"a"}]})";

std::string fixture_json(const std::vector<std::string>& args) {
  std::vector<std::string> full{"fixture"};
  full.insert(full.end(), args.begin(), args.end());
  Outcome o = run(full);
  REQUIRE(o.code == cli::kOk);
  return o.out;
}

}  // namespace

TEST_CASE("flower pipeline through the binary") {
  REQUIRE_FALSE(binary().empty());
  Outcome o = shell("$T fixture flower --g 5 | $T mg-rank --divisor '2@v0'");
  REQUIRE(o.code == 0);
  Json j = io::parse_json(o.out);
  CHECK(j["schema"] == "tropdeg/1");
  CHECK(j["rank"] == 1);
  CHECK(j["degree"] == 2);
}

TEST_CASE("exit codes from the binary") {
  std::string graph = write_file("tri.json", kTriangle);
  CHECK(shell("$T --graph " + graph + " rank --divisor '{\"a\":1}'").code == 0);
  CHECK(shell("$T --graph " + graph + " rank --divisor '{\"zz\":1}'").code == 2);
  CHECK(shell("$T --graph " + graph + " mg-reduce --divisor '1@ab:0.5' --at a").code == 3);
  CHECK(shell("$T").code == 3);
  CHECK(shell("$T no-such-command").code == 3);
}

TEST_CASE("reduce on a triangle") {
  Outcome o = run({"--graph", kTriangle, "reduce", "--divisor", R"({"c":3})", "--at", "a"});
  REQUIRE(o.code == cli::kOk);
  Json j = io::parse_json(o.out);
  CHECK(j["schema"] == "tropdeg/1");
  CHECK(j["reduced"]["coeffs"] == Json::parse(R"({"a":3,"b":0,"c":0})"));
  CHECK(j["firings"].is_object());
  CHECK(j["firings"].size() == 3);

  // replaying the reported firings lands on the reduced divisor
  MultiGraph g = io::parse_graph(io::parse_json(kTriangle)).plain();
  Divisor d = io::parse_divisor(g, R"({"c":3})");
  for (auto& [id, count] : j["firings"].items()) {
    VertexIndex v = g.vertex_index(id);
    for (int i = 0; i < count.get<int>(); ++i) d = fire(g, d, v);
  }
  CHECK(io::divisor_to_json(g, d)["coeffs"] == j["reduced"]["coeffs"]);
}

TEST_CASE("verdict on a four-path join") {
  std::string join = fixture_json({"path_join", "--part", "cycle:k=3", "--part", "cycle:k=3", "--m", "4"});
  Outcome o = run({"verdict"}, join);
  REQUIRE(o.code == cli::kOk);
  Json j = io::parse_json(o.out);
  std::string message = j["message"];
  CHECK(message.find("cannot be Brill-Noether general") != std::string::npos);
  CHECK(message.find("multiedge join m=4") != std::string::npos);

  Outcome human = run({"--human", "verdict"}, join);
  CHECK(human.code == cli::kOk);
  CHECK(human.out.find("multiedge join m=4") != std::string::npos);
  CHECK(human.out.find('{') == std::string::npos);

  std::string chain = fixture_json({"chain_of_loops", "--g", "3"});
  Json ok = io::parse_json(run({"verdict"}, chain).out);
  CHECK(ok["obstructions"].empty());
}

TEST_CASE("rationals must be exact fractions") {
  Outcome o = run({"--graph", kTriangle, "mg-reduce", "--divisor", "1@ab:0.5", "--at", "a"});
  CHECK(o.code == cli::kInputError);
  CHECK(o.err.find("IrrationalInput") != std::string::npos);
  CHECK(run({"--graph", kTriangle, "mg-reduce", "--divisor", "1@ab:1/2", "--at", "a"}).code == cli::kOk);

  Json bad = io::parse_json(kTriangle);
  bad["edges"][0]["length"] = 0.5;
  CHECK(run({"--graph", bad.dump(), "rank", "--divisor", "{}"}).code == cli::kInputError);
}

TEST_CASE("malformed input") {
  CHECK(run({"--graph", "{not json", "rank", "--divisor", "{}"}).code == cli::kInputError);
  Json extra = io::parse_json(kTriangle);
  extra["colour"] = "red";
  CHECK(run({"--graph", extra.dump(), "rank", "--divisor", "{}"}).code == cli::kInputError);
  CHECK(run({"rank", "--divisor", "{}"}).code == cli::kInputError);
  CHECK(run({"fixture", "flower", "--g", "-1"}).code != cli::kOk);
}

TEST_CASE("metric divisor shorthand") {
  MetricGraph g = io::parse_graph(io::parse_json(kTriangle)).metric();
  MetricDivisor d = io::parse_metric_divisor(g, "2@a+1@ab:1/3");
  CHECK(d.degree() == 3);
  MetricDivisor again = io::parse_metric_divisor(g, io::metric_divisor_to_json(g, d).dump());
  CHECK(again == d);
  CHECK_THROWS_AS(io::parse_metric_divisor(g, "1@ab:4/3"), Error);
}

TEST_CASE("fixture files") {
  Json flower = io::parse_json(fixture_json({"flower", "--g", "5"}));
  CHECK(flower["schema"] == "tropdeg/1");
  CHECK(flower["vertices"].size() == 6);
  CHECK(flower["edges"].size() == 10);

  Json banana = io::parse_json(fixture_json({"banana", "--g", "4"}));
  CHECK(banana["vertices"].size() == 2);
  CHECK(banana["edges"].size() == 5);

  std::string path = (temp_dir() / "chain.json").string();
  Outcome o = run({"fixture", "chain_of_loops", "--g", "3", "--lengths", "1/2,1/2,1,1,2,3,1,1", "--out", path});
  REQUIRE(o.code == cli::kOk);
  io::GraphDocument doc = io::parse_graph(io::load_json_arg(path));
  CHECK(doc.vertices.size() == 6);
  CHECK(doc.edges.size() == 8);
  CHECK(doc.edges[5].length == Rational(3));
  CHECK(doc.edges[6].length == Rational(1));
  CHECK(std::filesystem::exists(std::filesystem::path(path).replace_extension(".md")));
}

TEST_CASE("fixtures round-trip through their files") {
  std::vector<FixtureSpec> specs;
  specs.push_back({"flower", 5});
  specs.push_back({"banana", 4});
  specs.push_back({"cycle", 0, 5});
  specs.push_back({"chain_of_loops", 3, 0, 0, {Rational(1, 2), Rational(1, 3), Rational(2), Rational(1), Rational(1, 4), Rational(3, 4), Rational(5), Rational(1)}});
  FixtureSpec loop{"flower", 1};
  specs.push_back({"wedge", 0, 0, 0, {}, {loop, loop, loop}});
  specs.push_back({"wedge", 0, 0, 0, {}, {{"cycle", 0, 2}, {"chain_of_loops", 3}, {"banana", 2}}});
  specs.push_back({"path_join", 0, 0, 4, {}, {{"banana", 2}, {"banana", 2}}});
  specs.push_back({"path_join", 0, 0, 5, {}, {{"cycle", 0, 3}, {"flower", 2}}});
  for (const auto& spec : specs) {
    CAPTURE(spec.kind);
    Fixture f = build_fixture(spec);
    Json emitted = io::fixture_to_json(f);
    io::GraphDocument doc = io::parse_graph(io::parse_json(emitted.dump()));
    REQUIRE(doc.fixture);
    CHECK(*doc.fixture == spec);
    CHECK(io::graph_to_json(doc.metric()) == io::graph_to_json(f.graph));
    CHECK(doc.marked == f.marked);
    CHECK(io::fixture_to_json(build_fixture(*doc.fixture)) == emitted);
  }
}

TEST_CASE("command outputs parse back") {
  std::string flower = fixture_json({"flower", "--g", "3"});
  std::vector<std::vector<std::string>> commands = {
      {"reduce", "--divisor", "2@v0", "--at", "m1"},
      {"rank", "--divisor", "2@v0"},
      {"mg-rank", "--divisor", "2@v0"},
      {"mg-reduce", "--divisor", "1@m1+1@v0", "--at", "v0"},
      {"verdict"},
      {"gonality"},
  };
  for (const auto& args : commands) {
    CAPTURE(args.front());
    Outcome o = run(args, flower);
    REQUIRE(o.code == cli::kOk);
    Json j = io::parse_json(o.out);
    CHECK(j["schema"] == "tropdeg/1");
    CHECK(j["command"] == args.front());
  }
  Json reduced = io::parse_json(run({"mg-reduce", "--divisor", "1@m1+1@v0", "--at", "v0"}, flower).out);
  MetricGraph g = io::parse_graph(io::parse_json(flower)).metric();
  CHECK_NOTHROW(io::parse_metric_divisor(g, reduced["reduced"].dump()));
}

TEST_CASE("output is deterministic") {
  std::string join = fixture_json({"path_join", "--part", "cycle:k=3", "--part", "cycle:k=3", "--m", "4"});
  std::vector<std::string> args{"--seed", "7", "gonality", "--probe", "3"};
  Outcome first = run(args, join);
  REQUIRE(first.code == cli::kOk);
  CHECK(run(args, join).out == first.out);
  std::vector<std::string> threaded{"--seed", "7", "--jobs", "4", "gonality", "--probe", "3"};
  CHECK(run(threaded, join).out == first.out);

  std::string path = write_file("join.json", join);
  Outcome a = shell("$T --graph " + path + " gonality --probe 3");
  Outcome b = shell("$T --jobs 3 --graph " + path + " gonality --probe 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == first.out);
}

TEST_CASE("budget caps searches") {
  std::string flower = fixture_json({"flower", "--g", "5"});
  Outcome o = run({"--budget", "3", "gonality", "--search"}, flower);
  CHECK(o.code == cli::kDomainError);
  CHECK(o.err.find("BudgetExceeded") != std::string::npos);

  Outcome barg = run({"--graph", kTriangle, "--budget", "2", "barg", "--w", R"({"w":{"a":4}})"});
  CHECK(barg.code == cli::kDomainError);
  CHECK(barg.err.find("BudgetExceeded") != std::string::npos);
  CHECK(run({"--graph", kTriangle, "barg", "--w", R"({"w":{"a":4}})"}).code == cli::kOk);
}
