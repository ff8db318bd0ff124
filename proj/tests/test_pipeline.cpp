#include "doctest.h"
#include "pcris/pipeline.hpp"

using namespace pcris;

namespace {

JobConfig type1_f1(int k0, int a2_pexp = 1, i64 p = 5) {
  std::string s = "p = " + std::to_string(p) + "\nf = 1\nweights = [[" + std::to_string(k0) +
                  ", 0]]\n[[slots]]\ntype = \"I\"\na1 = 2\na2 = { coords = [3], pexp = " + std::to_string(a2_pexp) +
                  " }\n";
  return parse_config_text(s, true);
}

}  // namespace

TEST_CASE("config parsing: TOML and JSON agree") {
  auto t = type1_f1(3);
  auto j = parse_config_text(
      R"({"p": 5, "f": 1, "weights": [[3, 0]], "slots": [{"type": "I", "a1": 2, "a2": {"coords": [3], "pexp": 1}}]})",
      false);
  CHECK(t.p == j.p);
  CHECK(t.weights == j.weights);
  CHECK(t.slots[0].a2.pexp == 1);
  CHECK(j.slots[0].a2.coords == std::vector<i64>{3});
  CHECK(run_pipeline(t).dump() == run_pipeline(j).dump());
}

TEST_CASE("config validation errors") {
  auto fails = [](const std::string& s) {
    try {
      parse_config_text(s, false);
    } catch (const Error& e) {
      return e.kind() == ErrKind::ConfigError;
    }
    return false;
  };
  CHECK(fails(R"({"p": 4, "f": 1, "weights": [[3, 0]], "slots": [{"type": "I", "a1": 1, "a2": 5}]})"));
  CHECK(fails(R"({"p": 5, "f": 2, "weights": [[3, 0]], "slots": [{"type": "I", "a1": 1, "a2": 5}]})"));
  CHECK(fails(R"({"p": 5, "f": 1, "weights": [[3, 0]], "slots": [{"type": "III", "a1": 1, "a2": 5}]})"));
  CHECK(fails(R"({"p": 5, "f": 1, "weights": [[3, 0]], "slots": [{"type": "I", "a1": 1}]})"));
  CHECK(fails(R"({"p": 5, "f": 1, "weights": [[3, 0]], "slots": [{"type": "I", "a1": 1, "a2": 5}], "bogus": 1})"));
  CHECK(fails("{not json"));
  CHECK_THROWS_AS(parse_config_text("p = = 5", true), Error);
}

TEST_CASE("preflight_precision") {
  auto c = type1_f1(3);
  auto pr = preflight_precision(c);
  CHECK(pr.M == 40);
  CHECK(pr.N == 5);
  CHECK_FALSE(pr.overridden);
  c.M = 77;
  c.N = 9;
  auto o = preflight_precision(c);
  CHECK(o.M == 77);
  CHECK(o.N == 9);
  CHECK(o.overridden);
  auto big = type1_f1(3);
  big.weights = {{20, 0}};
  auto pb = preflight_precision(big);
  CHECK(pb.M > pr.M);
  CHECK(pb.N > pr.N);
}

TEST_CASE("run_pipeline f = 1 Type I gives Ind omega_2^k") {
  auto rep = run_pipeline(type1_f1(2));
  REQUIRE(rep.status == "ok");
  REQUIRE(rep.character);
  CHECK(rep.character->shape == CharShape::Induced);
  CHECK(rep.character->t == 2);
  CHECK(rep.exit_code == 0);
  CHECK(rep.json["character"]["caveats"][0] == "up to unramified twist");
}

TEST_CASE("run_pipeline stops on all Type II and on the gate") {
  auto all2 = parse_config_text(
      R"({"p": 5, "f": 2, "weights": [[2, 0], [3, 0]],
          "slots": [{"type": "II", "a1": 1, "a2": 5}, {"type": "II", "a1": 2, "a2": 5, "alpha": 3}]})",
      false);
  auto r = run_pipeline(all2);
  CHECK(r.status == "reducible");
  CHECK(r.exit_code == ExitReducible);
  CHECK(r.reducibility->kind == Reducibility::ReducibleAllII);
  all2.halt_on_reducible = false;
  auto r2 = run_pipeline(all2);
  CHECK(r2.status == "ok");
  CHECK(r2.character->shape == CharShape::Split);

  // p = 5, k = 4: c = 2, bound 1; nu(a2) = 1 sits on the bound
  auto g = type1_f1(4, 1);
  auto rg = run_pipeline(g);
  CHECK(rg.status == "error");
  CHECK(rg.stage == "gate");
  CHECK(rg.exit_code == ExitGate);
  CHECK(rg.json["error"]["message"].get<std::string>().find("needs > 1") != std::string::npos);
  auto ok = run_pipeline(type1_f1(4, 2));
  CHECK(ok.status == "ok");
}

TEST_CASE("run_pipeline explicit matrices route through normalization") {
  auto c = parse_config_text(
      R"({"p": 5, "f": 1, "weights": [[3, 0]],
          "slots": [{"matrix": [[7, 2], [1, {"coords": [3], "pexp": 1}]]}]})",
      false);
  auto r = run_pipeline(c);
  CHECK(r.json.contains("parabolic"));
  CHECK(r.types[0] == TypeTag::I);
  CHECK(r.status == "ok");
}

TEST_CASE("modes and determinism") {
  auto c = type1_f1(3);
  c.mode = Mode::ClassifyOnly;
  auto r = run_pipeline(c);
  CHECK(r.status == "ok");
  CHECK_FALSE(r.json.contains("descent"));
  c.mode = Mode::ReduceOnly;
  auto r2 = run_pipeline(c);
  CHECK(r2.json.contains("reduction"));
  CHECK_FALSE(r2.json.contains("character"));
  c.mode = Mode::Full;
  CHECK(run_pipeline(c).dump() == run_pipeline(c).dump());
}

TEST_CASE("oracle_suite passes and catches an injected adjugate bug") {
  auto s = oracle_suite(SuiteOptions{7, 20, false});
  for (auto& c : s.checks) CHECK_MESSAGE(c.pass(), c.name << ": " << c.first_failure);
  auto bug = oracle_suite(SuiteOptions{7, 5, true});
  bool det_failed = false;
  for (auto& c : bug.checks)
    if (c.name == "det_conservation") det_failed = !c.pass();
  CHECK(det_failed);
}
