#include "logchart/cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <sstream>

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

std::string data(const std::string& name) { return std::string(LOGCHART_DATA_DIR) + "/" + name; }

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = logchart::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

}  // namespace

TEST_CASE("saturate reports the Hilbert basis") {
  auto o = run({"saturate", data("two_three.json")});
  CHECK(o.code == 0);
  auto r = o.report();
  CHECK(r["verb"] == "saturate");
  CHECK(r["verdict"] == "ok");
  CHECK(r["result"]["saturation"]["generators"] == nlohmann::json::parse(R"([["1"]])"));
  CHECK(r["result"]["input_properties"]["saturated"] == false);
  CHECK_FALSE(r.contains("duration_seconds"));
  CHECK_FALSE(o.err.empty());
}

TEST_CASE("output is byte-identical across runs") {
  auto a = run({"check-chart", "--hom", data("diag23.json"), "--residue-char", "5"});
  auto b = run({"check-chart", "--hom", data("diag23.json"), "--residue-char", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run({"check-chart", "--hom", data("diag23.json"), "--residue-char", "3"});
  CHECK(c.report()["input_digest"] != a.report()["input_digest"]);
}

TEST_CASE("check-chart flags") {
  auto r = run({"check-chart", "--hom", data("diag23.json"), "--residue-char", "5"}).report();
  CHECK(r["result"]["kummer_etale"] == true);
  CHECK(r["result"]["galois_group"]["order"] == "6");
  CHECK(r["result"]["ramification_index"] == "6");
  auto s = run({"check-chart", "--hom", data("diag23.json"), "--residue-char", "3"}).report();
  CHECK(s["result"]["kummer"] == true);
  CHECK(s["result"]["kummer_etale"] == false);
}

TEST_CASE("timings are opt-in") {
  auto r = run({"--timings", "saturate", data("two_three.json")}).report();
  CHECK(r.contains("duration_seconds"));
}

TEST_CASE("classify a presentation") {
  auto o = run({"classify", "--presentation", data("pseudo.json")});
  CHECK(o.code == 0);
  auto r = o.report();
  CHECK(r["result"].contains("not_integral_witness"));
  auto m = run({"classify", "--monoid", data("n2.json")}).report();
  CHECK(m["verdict"] == "ok");
}

TEST_CASE("pushout modes") {
  auto o = run({"pushout", "--left", data("times2.json"), "--right", data("times2.json"), "--mode", "fs"});
  CHECK(o.code == 0);
  auto r = o.report();
  CHECK(r["verb"] == "pushout");
  auto raw = run({"pushout", "--left", data("times2.json"), "--right", data("times2.json"), "--mode", "raw"});
  CHECK(raw.code == 0);
}

TEST_CASE("covers") {
  auto c = run({"covers", "classify", "--monoid", data("n1.json"), "--annihilator", "6"});
  CHECK(c.code == 0);
  CHECK(c.report()["result"]["covers"].size() == 4);
  auto k = run({"covers", "check", "--monoid", data("n2.json"), "--annihilator", "2"});
  CHECK(k.code == 0);
  CHECK(k.report()["verdict"] == "ok");
  auto bad = run({"covers", "classify", "--monoid", data("n1.json"), "--annihilator", "2", "--exclude-prime", "2"});
  CHECK(bad.code == 2);
}

TEST_CASE("cohomology verbs") {
  auto g = run({"cohomology", "group", "--invariants", "2,2", "--char", "2", "--max-degree", "4"});
  CHECK(g.code == 0);
  CHECK(g.report()["result"]["dimensions"] == nlohmann::json::parse(R"(["1","2","3","4","5"])"));
  auto c = run({"cohomology", "cech", "--hom", data("times2.json"), "--char", "3", "--degree-bound", "6", "--length",
                "5"});
  CHECK(c.code == 0);
  auto p = run({"cohomology", "polydisc", "--n", "2", "--level", "6"});
  CHECK(p.code == 0);
  CHECK(p.report()["result"]["totals"] == nlohmann::json::parse(R"(["1","2","1"])"));
}

TEST_CASE("input errors exit with code 2") {
  auto m = run({"saturate", data("missing_generators.json")});
  CHECK(m.code == 2);
  CHECK(m.report()["verdict"] == "error");
  CHECK(m.err.find("$.generators") != std::string::npos);
  auto h = run({"check-chart", "--hom", data("image_outside.json")});
  CHECK(h.code == 2);
  CHECK(h.err.find("$.group_map") != std::string::npos);
  CHECK(run({"saturate", data("does_not_exist.json")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"pushout", "--left", data("times2.json"), "--right", data("times2.json"), "--mode", "weird"}).code == 2);
  CHECK(run({"check-chart", "--hom", data("diag23.json"), "--residue-char", "4"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("help goes to standard output") {
  auto o = run({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("verify-suite") != std::string::npos);
}

TEST_CASE("verify-suite records its seed") {
  auto o = run({"verify-suite", "--scale", "smoke", "--seed", "7"});
  auto r = o.report();
  CHECK(r["seed"] == "7");
  CHECK(r["result"]["criteria"].size() == 8);
  CHECK(o.code == (r["verdict"] == "ok" ? 0 : 1));
}

TEST_CASE("verify-suite reports an injected fault") {
  auto o = run({"verify-suite", "--scale", "smoke", "--inject-fault", "saturate"});
  CHECK(o.code == 1);
  auto r = o.report();
  CHECK(r["verdict"] == "fail");
  CHECK(r["result"]["criteria"][0]["pass"] == false);
}
