#include <string>

#include "doctest.h"
#include "voxproof/driver.hpp"
#include "voxproof/errors.hpp"
#include "voxproof/report.hpp"

using namespace voxproof;

namespace {

const std::string kData = VOXPROOF_TEST_DATA_DIR;

RunConfig config_for(const std::string& scene, const std::string& program) {
  RunConfig c;
  c.scene_path = kData + "/" + scene;
  c.program_path = kData + "/" + program;
  return c;
}

}  // namespace

TEST_CASE("a safe sequential run end to end") {
  const RunResult r = run(config_for("case_study.json", "scenario_a.gcode"));
  CHECK(r.report.verdict == Verdict::Safe);
  CHECK(r.scene.mu == 1);
  CHECK(r.program.commands.size() == 2);
  CHECK(r.compiled.triple.body.size() == 6);
  CHECK(r.report.heap.at({6, 0, 0}) == Occupancy::tool(0));
}

TEST_CASE("a faulting run keeps the evidence") {
  const RunResult r = run(config_for("case_study.json", "scenario_b.gcode"));
  CHECK(r.report.verdict == Verdict::Fault);
  REQUIRE(r.report.fault.has_value());
  CHECK(r.report.fault->cls == FaultClass::EnvCollision);
  CHECK(r.report.fault->label == 30);
  CHECK(r.report.fault->contested == VoxelSet{{8, 0, 0}, {9, 0, 0}});
}

TEST_CASE("a concurrent program routes through the parallel rule") {
  const RunResult r = run(config_for("handoff_cell.json", "handoff_phase2.gcode"));
  CHECK(r.report.verdict == Verdict::Safe);
  CHECK(r.program.concurrent());
  CHECK(r.compiled.triple.body.front().kind == SLCommand::Kind::Parallel);
}

TEST_CASE("overrides flow through the driver") {
  RunConfig c = config_for("case_study.json", "scenario_a.gcode");
  c.epsilon = 1;
  // A one-cell-high workspace cannot host a dilated tool.
  CHECK_THROWS_AS(run(c), SceneError);
}

TEST_CASE("missing files fail loudly") {
  CHECK_THROWS_AS(run(config_for("nonexistent.json", "scenario_a.gcode")), Error);
  CHECK_THROWS_AS(run(config_for("case_study.json", "nonexistent.gcode")), Error);
  CHECK_THROWS_AS(slurp("/nonexistent/file"), Error);
}

TEST_CASE("reports serialize deterministically") {
  const RunResult once = run(config_for("case_study.json", "scenario_b.gcode"));
  const RunResult twice = run(config_for("case_study.json", "scenario_b.gcode"));
  CHECK(text_report(once.report) == text_report(twice.report));
  CHECK(json_report(once.report) == json_report(twice.report));

  const std::string text = text_report(once.report);
  CHECK(text.find("verdict: Fault") != std::string::npos);
  CHECK(text.find("EnvCollision at line 3 (N30)") != std::string::npos);
  CHECK(text.find("(8,0,0)") != std::string::npos);

  const std::string json = json_report(once.report);
  CHECK(json.find("\"verdict\": \"Fault\"") != std::string::npos);
  CHECK(json.find("\"class\": \"EnvCollision\"") != std::string::npos);
  CHECK(json.back() == '\n');
}

TEST_CASE("safe reports mention no fault") {
  const RunResult r = run(config_for("case_study.json", "scenario_a.gcode"));
  const std::string text = text_report(r.report);
  CHECK(text.find("verdict: Safe") != std::string::npos);
  CHECK(text.find("fault") == std::string::npos);
  CHECK(json_report(r.report).find("\"fault\": null") != std::string::npos);
}

TEST_CASE("voxel dumps round trip") {
  const RunResult r = run(config_for("case_study.json", "scenario_a.gcode"));
  const std::string dump = voxel_dump(r.report.heap);
  const auto cells = parse_voxel_dump(dump);
  CHECK(cells.size() == r.report.heap.size());
  for (const auto& [v, occ] : cells) CHECK(r.report.heap.at(v) == occ);

  // Dump lines are sorted, one cell each.
  CHECK(dump.find("0 0 0 Empty") == 0);
  CHECK(dump.find("6 0 0 Tool") != std::string::npos);

  CHECK_THROWS_AS(parse_voxel_dump("1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_voxel_dump("1 2 3 Lava\n"), ParseError);
  CHECK_THROWS_AS(parse_voxel_dump("x y z Tool\n"), ParseError);
}

TEST_CASE("the helper verifier picks the right engine") {
  const RunResult seq = run(config_for("case_study.json", "scenario_a.gcode"));
  const VerificationReport again =
      verify_triple(seq.compiled.triple, initial_heap(seq.scene));
  CHECK(again.verdict == Verdict::Safe);
  CHECK(again.heap == seq.report.heap);

  const RunResult par = run(config_for("handoff_cell.json", "handoff_phase1.gcode"));
  const VerificationReport pagain =
      verify_triple(par.compiled.triple, initial_heap(par.scene));
  CHECK(pagain.verdict == Verdict::Safe);
  CHECK(pagain.heap == par.report.heap);
}

TEST_CASE("continue mode surfaces downstream damage") {
  RunConfig c = config_for("case_study.json", "scenario_b.gcode");
  c.continue_after_fault = true;
  const RunResult r = run(c);
  CHECK(r.report.verdict == Verdict::Fault);
  REQUIRE(r.report.fault.has_value());
  CHECK(r.report.fault->label == 30);  // primary fault is still the first
  CHECK(r.report.diagnostics.size() >= 1);
}
