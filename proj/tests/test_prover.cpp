#include <string>

#include "doctest.h"
#include "voxproof/compiler.hpp"
#include "voxproof/errors.hpp"
#include "voxproof/gcode.hpp"
#include "voxproof/prover.hpp"
#include "voxproof/scene.hpp"

using namespace voxproof;

namespace {

const std::string kLineScene = R"({
  "mu": 1,
  "workspace": {"min": [0,0,0], "max": [10,0,0]},
  "home": [0,0,0],
  "tool": {"voxels": [[0,0,0]]},
  "env": [{"min": [8,0,0], "max": [9,0,0]}],
  "stock": [{"min": [4,0,0], "max": [6,0,0]}]
})";

VerificationReport run_text(const std::string& scene_json, const std::string& program,
                            const ExecuteOptions& opts = {}) {
  const Scene scene = load_scene(scene_json);
  const SLTriple t = compile_program(scene, parse_program(program));
  return execute(t, initial_heap(scene), opts);
}

SLCommand motion(SLCommand::Kind kind, VoxelSet start, VoxelSet finish, VoxelSet path,
                 std::uint8_t owner = 0) {
  SLCommand c;
  c.kind = kind;
  c.line = 1;
  c.owner = owner;
  c.start = std::move(start);
  c.finish = std::move(finish);
  c.path = std::move(path);
  return c;
}

SpatialHeap line_heap(int n, std::initializer_list<std::pair<int, Occupancy>> cells) {
  SpatialHeap h = SpatialHeap::filled({{0, 0, 0}, {n, 0, 0}}, Occupancy::empty());
  for (const auto& [x, occ] : cells) h.store({x, 0, 0}, occ);
  return h;
}

}  // namespace

TEST_CASE("rapid execution sweeps through clear air") {
  SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)}});
  const auto fault =
      exec_g00(h, motion(SLCommand::Kind::G00, {{0, 0, 0}}, {{3, 0, 0}},
                         {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}));
  CHECK_FALSE(fault.has_value());
  CHECK(h.at({3, 0, 0}) == Occupancy::tool(0));
  CHECK(h.at({0, 0, 0}) == Occupancy::empty());
  CHECK(h.cells_with(Material::Tool) == VoxelSet{{3, 0, 0}});
}

TEST_CASE("rapids refuse stock, environment, and foreign tools") {
  const SLCommand c = motion(SLCommand::Kind::G00, {{0, 0, 0}}, {{3, 0, 0}},
                             {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
  {
    SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)}, {2, Occupancy::stock()}});
    const auto fault = exec_g00(h, c);
    REQUIRE(fault.has_value());
    CHECK(fault->cls == FaultClass::StockCollision);
    CHECK(fault->contested == VoxelSet{{2, 0, 0}});
    // The scan is a gateway: a refused move leaves the heap untouched.
    CHECK(h.at({0, 0, 0}) == Occupancy::tool(0));
    CHECK(h.at({2, 0, 0}) == Occupancy::stock());
  }
  {
    SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)}, {2, Occupancy::environment()}});
    const auto fault = exec_g00(h, c);
    REQUIRE(fault.has_value());
    CHECK(fault->cls == FaultClass::EnvCollision);
  }
  {
    SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)}, {3, Occupancy::tool(2)}});
    const auto fault = exec_g00(h, c);
    REQUIRE(fault.has_value());
    CHECK(fault->cls == FaultClass::MultiToolRace);
    CHECK(fault->contested == VoxelSet{{3, 0, 0}});
  }
}

TEST_CASE("environment outranks stock when both are hit") {
  SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)},
                                {1, Occupancy::stock()},
                                {2, Occupancy::environment()}});
  const auto fault = exec_g00(h, motion(SLCommand::Kind::G00, {{0, 0, 0}}, {{3, 0, 0}},
                                        {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}));
  REQUIRE(fault.has_value());
  CHECK(fault->cls == FaultClass::EnvCollision);
  CHECK(fault->contested.contains({2, 0, 0}));
}

TEST_CASE("cuts eat stock but still refuse the environment") {
  const SLCommand c = motion(SLCommand::Kind::G01, {{0, 0, 0}}, {{3, 0, 0}},
                             {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
  {
    SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)},
                                  {1, Occupancy::stock()},
                                  {2, Occupancy::stock()}});
    const auto fault = exec_g01(h, c);
    CHECK_FALSE(fault.has_value());
    CHECK(h.at({1, 0, 0}) == Occupancy::empty());
    CHECK(h.at({2, 0, 0}) == Occupancy::empty());
    CHECK(h.at({3, 0, 0}) == Occupancy::tool(0));
  }
  {
    SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)}, {2, Occupancy::environment()}});
    const auto fault = exec_g01(h, c);
    REQUIRE(fault.has_value());
    CHECK(fault->cls == FaultClass::EnvCollision);
  }
  {
    SpatialHeap h = line_heap(5, {{0, Occupancy::tool(0)}, {2, Occupancy::tool(7)}});
    const auto fault = exec_g01(h, c);
    REQUIRE(fault.has_value());
    CHECK(fault->cls == FaultClass::MultiToolRace);
  }
}

TEST_CASE("dual motions track the stock as it turns") {
  // Tool parked at 4; stock swings from (2,0,0) up to (0,2,0).
  SLCommand c = motion(SLCommand::Kind::G00Dual, {{4, 0, 0}}, {{4, 0, 0}}, {{4, 0, 0}});
  c.stock_start = {{2, 0, 0}};
  c.stock_finish = {{0, 2, 0}};
  c.stock_path = {{2, 0, 0}, {2, 1, 0}, {1, 2, 0}, {0, 2, 0}};

  SpatialHeap h = SpatialHeap::filled({{0, 0, 0}, {4, 2, 0}}, Occupancy::empty());
  h.store({4, 0, 0}, Occupancy::tool(0));
  h.store({2, 0, 0}, Occupancy::stock());
  const auto fault = exec_g00_dual(h, c);
  CHECK_FALSE(fault.has_value());
  CHECK(h.at({2, 0, 0}) == Occupancy::empty());
  CHECK(h.at({0, 2, 0}) == Occupancy::stock());
  CHECK(h.at({4, 0, 0}) == Occupancy::tool(0));

  // Same turn, but something else occupies the sweep: the move must refuse.
  SpatialHeap blocked = SpatialHeap::filled({{0, 0, 0}, {4, 2, 0}}, Occupancy::empty());
  blocked.store({4, 0, 0}, Occupancy::tool(0));
  blocked.store({2, 0, 0}, Occupancy::stock());
  blocked.store({1, 2, 0}, Occupancy::environment());
  const auto hit = exec_g00_dual(blocked, c);
  REQUIRE(hit.has_value());
  CHECK(hit->cls == FaultClass::EnvCollision);
  CHECK(blocked.at({2, 0, 0}) == Occupancy::stock());
}

TEST_CASE("a dual cut machines away stock landing in the tool path") {
  SLCommand c = motion(SLCommand::Kind::G01Dual, {{0, 2, 0}}, {{0, 2, 0}}, {{0, 2, 0}});
  c.stock_start = {{2, 0, 0}};
  c.stock_finish = {{0, 2, 0}};
  c.stock_path = {{2, 0, 0}, {2, 1, 0}, {1, 2, 0}, {0, 2, 0}};

  SpatialHeap h = SpatialHeap::filled({{0, 0, 0}, {4, 2, 0}}, Occupancy::empty());
  h.store({0, 2, 0}, Occupancy::tool(0));
  h.store({2, 0, 0}, Occupancy::stock());
  const auto fault = exec_g01_dual(h, c);
  CHECK_FALSE(fault.has_value());
  CHECK(h.cells_with(Material::Stock).empty());
  CHECK(h.at({0, 2, 0}) == Occupancy::tool(0));
}

TEST_CASE("contest classification ranks environment, stock, foreign tool") {
  const SpatialHeap h = line_heap(5, {{1, Occupancy::stock()},
                                      {2, Occupancy::environment()},
                                      {3, Occupancy::tool(2)}});
  CHECK(classify_contest(h, {{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, 0) == FaultClass::EnvCollision);
  CHECK(classify_contest(h, {{1, 0, 0}, {3, 0, 0}}, 0) == FaultClass::StockCollision);
  CHECK(classify_contest(h, {{3, 0, 0}}, 0) == FaultClass::MultiToolRace);
  CHECK(classify_contest(h, {{3, 0, 0}}, 2) == FaultClass::AssertUnsat);  // own tool
  CHECK(classify_contest(h, {{4, 0, 0}}, 0) == FaultClass::AssertUnsat);
}

TEST_CASE("a clean program verifies end to end") {
  const VerificationReport r = run_text(kLineScene, "N10 G00 X3\nN20 G01 X6 F100\n");
  CHECK(r.verdict == Verdict::Safe);
  CHECK_FALSE(r.fault.has_value());
  CHECK(r.diagnostics.empty());
  CHECK(r.steps == 6);
  CHECK(r.heap.at({6, 0, 0}) == Occupancy::tool(0));
  CHECK(r.heap.at({4, 0, 0}) == Occupancy::empty());
  CHECK(r.heap.at({5, 0, 0}) == Occupancy::empty());
  CHECK(r.heap.at({8, 0, 0}) == Occupancy::environment());
  CHECK(r.heap.at({9, 0, 0}) == Occupancy::environment());
}

TEST_CASE("a rapid into the wall reports the exact contested cells") {
  const VerificationReport r =
      run_text(kLineScene, "N10 G00 X3\nN20 G01 X6 F100\nN30 G00 X9\n");
  CHECK(r.verdict == Verdict::Fault);
  REQUIRE(r.fault.has_value());
  CHECK(r.fault->cls == FaultClass::EnvCollision);
  CHECK(r.fault->line == 3);
  CHECK(r.fault->label == 30);
  CHECK(r.fault->contested == VoxelSet{{8, 0, 0}, {9, 0, 0}});
  CHECK(r.fault->thread.empty());
  // The heap still shows the world as it stood when the move was refused.
  CHECK(r.heap.at({6, 0, 0}) == Occupancy::tool(0));
  CHECK(r.heap.at({8, 0, 0}) == Occupancy::environment());
}

TEST_CASE("execution stops at the first fault unless told otherwise") {
  // X7 is fine; X9 hits the wall; the retreat to X0 never happens.
  const std::string program = "N10 G00 X9\nN20 G00 X0\n";
  const VerificationReport stop = run_text(kLineScene, program);
  CHECK(stop.verdict == Verdict::Fault);
  CHECK(stop.diagnostics.size() == 1);
  CHECK(stop.steps == 1);  // the gateway assert ran, the rapid refused

  ExecuteOptions opts;
  opts.continue_after_fault = true;
  const VerificationReport go = run_text(kLineScene, program, opts);
  CHECK(go.verdict == Verdict::Fault);
  REQUIRE(go.fault.has_value());
  CHECK(go.fault->label == 10);
  CHECK(go.diagnostics.size() >= 2);  // the refused rapid plus fallout
  // Primary fault is still the first one.
  CHECK(go.diagnostics.front().command_index == go.fault->command_index);
}

TEST_CASE("precondition and postcondition failures") {
  const Scene scene = load_scene(kLineScene);
  SLTriple t = compile_program(scene, parse_program("G00 X3\n"));

  SpatialHeap wrong = initial_heap(scene);
  wrong.store({1, 0, 0}, Occupancy::stock());
  const VerificationReport pre = execute(t, wrong);
  CHECK(pre.verdict == Verdict::Fault);
  REQUIRE(pre.fault.has_value());
  CHECK(pre.fault->cls == FaultClass::PreconditionUnsat);
  CHECK(pre.steps == 0);

  t.post = Assertion::star({Assertion::region({{5, 0, 0}}, Occupancy::tool(0)),
                            Assertion::truth()});
  const VerificationReport post = execute(t, initial_heap(scene));
  CHECK(post.verdict == Verdict::Fault);
  REQUIRE(post.fault.has_value());
  CHECK(post.fault->cls == FaultClass::PostconditionUnsat);
  CHECK(post.fault->contested == VoxelSet{{5, 0, 0}});
}

TEST_CASE("the two-argument form reconstructs the heap from the precondition") {
  const Scene scene = load_scene(kLineScene);
  const SLTriple t = compile_program(scene, parse_program("G00 X3\nG01 X6 F100\n"));
  const VerificationReport a = execute(t, initial_heap(scene));
  const VerificationReport b = execute(t);
  CHECK(a.verdict == b.verdict);
  CHECK(a.heap == b.heap);
  CHECK(a.steps == b.steps);
}

TEST_CASE("observer sees every committed step and domain conservation holds") {
  const Scene scene = load_scene(kLineScene);
  const SLTriple t = compile_program(scene, parse_program("G00 X3\nG01 X6 F100\n"));
  std::size_t calls = 0;
  bool domains_ok = true;
  ExecuteOptions opts;
  opts.observer = [&](const SLCommand&, const SpatialHeap& h) {
    ++calls;
    domains_ok = domains_ok && h.size() == 11;
  };
  const VerificationReport r = execute(t, initial_heap(scene), opts);
  CHECK(r.verdict == Verdict::Safe);
  CHECK(calls == r.steps);
  CHECK(domains_ok);
}

TEST_CASE("with blocks on a full heap check the invariant at both ends") {
  const std::string scene_json = R"({
    "workspace": {"min": [0,0,0], "max": [20,0,0]},
    "home": [0,0,0],
    "resources": [{"name": "buffer", "region": {"min": [10,0,0], "max": [12,0,0]}}]
  })";
  // In-and-out: invariant (all empty) holds again on exit.
  const VerificationReport ok = run_text(scene_json,
                                         "RESOURCE gate IN buffer\n"
                                         "G01 X9 F100\n"
                                         "WITH gate DO\n"
                                         "N30 G01 X12 F100\n"
                                         "N40 G00 X9\n"
                                         "END\n");
  CHECK(ok.verdict == Verdict::Safe);

  // Parking inside the region leaves a tool where the invariant wants Empty.
  const VerificationReport stay = run_text(scene_json,
                                           "RESOURCE gate IN buffer\n"
                                           "G01 X9 F100\n"
                                           "WITH gate DO\n"
                                           "N30 G01 X12 F100\n"
                                           "END\n");
  CHECK(stay.verdict == Verdict::Fault);
  REQUIRE(stay.fault.has_value());
  CHECK(stay.fault->cls == FaultClass::InvariantViolation);
  CHECK(stay.fault->contested == VoxelSet{{12, 0, 0}});
}

TEST_CASE("parallel commands are not for the sequential engine") {
  SLCommand par;
  par.kind = SLCommand::Kind::Parallel;
  CHECK_THROWS_AS(
      execute_commands({par}, SpatialHeap::filled({{0, 0, 0}, {1, 0, 0}}, Occupancy::empty()), {}),
      Error);
}

TEST_CASE("foreach and mutate rewrite cells directly") {
  SLCommand wipe;
  wipe.kind = SLCommand::Kind::Foreach;
  wipe.line = 1;
  wipe.cells = {{1, 0, 0}, {2, 0, 0}};
  wipe.value = Occupancy::empty();
  const VerificationReport r = execute_commands(
      {wipe}, line_heap(3, {{1, Occupancy::stock()}, {2, Occupancy::stock()}}), {});
  CHECK(r.verdict == Verdict::Safe);
  CHECK(r.heap.cells_with(Material::Stock).empty());
}
