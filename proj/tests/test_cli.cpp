#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "fiberlab/cli.hpp"
#include "fiberlab/io.hpp"

using namespace fiberlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("fiberlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string &name) const { return (dir / name).string(); }
  std::string write(const std::string &name, const Json &j) const {
    std::ofstream(path(name)) << j.dump(2);
    return path(name);
  }
};

} // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({}).status == kExitUsage);
  CHECK(run({"nonsense"}).status == kExitUsage);
  CHECK(run({"tree", "build"}).status == kExitUsage);
  CHECK(run({"tree", "build", "--m", "0"}).status == kExitUsage);
  CHECK(run({"--help"}).status == kExitOk);
  const Run bad_delta = run({"distinguish", "--A", "2", "--B", "2", "--delta", "2", "--m", "6"});
  CHECK(bad_delta.status == kExitUsage);
  CHECK(bad_delta.err.find("ParameterViolation") != std::string::npos);
}

TEST_CASE("tree build and tree check round trip") {
  Scratch tmp;
  const Run built = run({"tree", "build", "--indices", "1,2", "--m", "1"});
  REQUIRE(built.status == kExitOk);
  const FiniteTree t = tree_from_json(built.json());
  CHECK(t == make_upsilon_family({1, 2}, 1, Profile::Caterpillar));
  const std::string file = tmp.write("t.json", built.json());

  const Run whole = run({"tree", "check", "--tree", file, "--m", "1", "--delta", "1"});
  CHECK(whole.status == kExitOk);
  CHECK(whole.json()["family"]["member"] == true);
  CHECK(whole.json()["nodes"] == 9);

  const Run cut = run({"tree", "check", "--tree", file, "--m", "1", "--delta", "1",
                       "--subtree", "0,g1.b0"});
  CHECK(cut.status == kExitViolation);
  CHECK(cut.json()["family"]["member"] == false);

  const Run single = run({"tree", "build", "--gamma", "1", "--m", "1"});
  CHECK(tree_from_json(single.json()).size() == 3);
  const Run dot = run({"tree", "build", "--gamma", "1", "--m", "1", "--format", "dot"});
  CHECK(dot.out.rfind("digraph", 0) == 0);
}

TEST_CASE("r build and r check round trip") {
  Scratch tmp;
  const std::string tree = tmp.write("t.json", run({"tree", "build", "--indices", "1,2", "--m", "1"}).json());
  const std::string r_file = tmp.path("r.json");
  REQUIRE(run({"r", "build", "--tree", tree, "--m", "1", "--delta", "1", "--out", r_file}).status ==
          kExitOk);
  const Run checked = run({"r", "check", "--input", r_file, "--m", "1", "--delta", "1"});
  CHECK(checked.status == kExitOk);
  CHECK(checked.json()["consistent"] == true);
  CHECK(checked.json()["structure"]["passed"] == true);

  std::ifstream in(r_file);
  Json doc = Json::parse(in);
  doc["poset"]["covers"].erase(0);
  const Run tampered = run({"r", "check", "--input", tmp.write("bad.json", doc)});
  CHECK(tampered.status == kExitUsage);
}

TEST_CASE("measure order on the diamond") {
  Scratch tmp;
  const Carrier d = std::make_shared<const Poset>(corpus::diamond());
  const auto a = RationalMeasure::from_ids(d, {{"a", Rational(1)}});
  const auto mix = RationalMeasure::from_ids(d, {{"0", Rational(1, 2)}, {"1", Rational(1, 2)}});
  const Run r = run({"measure", "order", "--mu", tmp.write("mu.json", to_json(a)), "--nu",
                     tmp.write("nu.json", to_json(mix))});
  REQUIRE(r.status == kExitOk);
  CHECK(r.json()["mu_leq_nu"]["upsets"] == false);
  CHECK(r.json()["nu_leq_mu"]["upsets"] == false);
  CHECK(r.json()["mu_leq_nu"]["principal_witness"] == "a");
  const auto back = measure_from_json(to_json(mix));
  CHECK(back.masses() == mix.masses());
}

TEST_CASE("facts, walks and fiber commands") {
  Scratch tmp;
  const std::string poset = tmp.write("p.json", to_json(corpus::pentagon()));
  const Run facts = run({"facts", "verify", "--poset", poset, "--denominator", "4"});
  CHECK(facts.status == kExitOk);
  const Run walks = run({"walks", "enum", "--poset", poset, "--length", "3"});
  CHECK(walks.status == kExitOk);
  CHECK(walks.json()["count"] == 2); // 0,a,b and 0,c,1
  const Run check = run({"poset", "check", "--poset", poset});
  CHECK(check.status == kExitOk);

  const std::string tree = tmp.write(
      "t.json", to_json(FiniteTree::build("0", {{"a", "0"}, {"b", "0"}})));
  const Run fiber = run({"fiber", "oracle", "--tree", tree, "--subtree", "0,a"});
  CHECK(fiber.status == kExitOk);
  CHECK(fiber.json()["isomorphic"] == true);
  const Run point = run({"fiber", "oracle", "--tree", tree, "--subtree", "0,a", "--point", "a:c"});
  CHECK(point.json()["expected"]["kind"] == "2-chain");
  CHECK(point.json()["isomorphic"] == true);
}

TEST_CASE("distinguish output is deterministic and verifiable") {
  Scratch tmp;
  const std::vector<std::string> args{"distinguish", "--A", "2", "--B", "3", "--delta", "2", "--m", "6"};
  const Run first = run(args);
  const Run second = run(args);
  REQUIRE(first.status == kExitOk);
  CHECK(first.out == second.out);
  const Json j = first.json();
  CHECK(j["aggregate"]["A_side_true_everywhere"] == true);
  CHECK(j["aggregate"]["B_side_false_where_nonvacuous"] == true);

  const std::string report = tmp.write("report.json", j);
  const Run verified = run({"distinguish", "--verify", report});
  CHECK(verified.status == kExitOk);
  CHECK(verified.json()["reproduced"] == true);

  Json edited = j;
  edited["results"][0]["verdict"] = false;
  const Run refuted = run({"distinguish", "--verify", tmp.write("edited.json", edited)});
  CHECK(refuted.status == kExitViolation);
  CHECK(refuted.json()["reproduced"] == false);

  const Run dot = run({"distinguish", "--A", "2", "--B", "3", "--delta", "2", "--m", "6",
                       "--format", "dot"});
  CHECK(dot.out.find("penwidth=3") != std::string::npos);
}
