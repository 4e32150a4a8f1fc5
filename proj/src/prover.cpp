#include "voxproof/prover.hpp"

#include <utility>

#include "voxproof/errors.hpp"

namespace voxproof {

std::string to_string(Verdict v) { return v == Verdict::Safe ? "Safe" : "Fault"; }

std::string to_string(FaultClass c) {
  switch (c) {
    case FaultClass::PreconditionUnsat:
      return "PreconditionUnsat";
    case FaultClass::EnvCollision:
      return "EnvCollision";
    case FaultClass::StockCollision:
      return "StockCollision";
    case FaultClass::MultiToolRace:
      return "MultiToolRace";
    case FaultClass::AssertUnsat:
      return "AssertUnsat";
    case FaultClass::PostconditionUnsat:
      return "PostconditionUnsat";
    case FaultClass::InvariantViolation:
      return "InvariantViolation";
    case FaultClass::OwnershipViolation:
      return "OwnershipViolation";
  }
  return "AssertUnsat";
}

FaultClass classify_contest(const SpatialHeap& h, const VoxelSet& contested,
                            std::uint8_t owner) {
  bool stock = false, race = false;
  for (const Voxel& v : contested) {
    const auto occ = h.find(v);
    if (!occ) continue;
    if (occ->material == Material::Environment) return FaultClass::EnvCollision;
    if (occ->material == Material::Stock) stock = true;
    if (occ->material == Material::Tool && occ->owner != owner) race = true;
  }
  if (stock) return FaultClass::StockCollision;
  if (race) return FaultClass::MultiToolRace;
  return FaultClass::AssertUnsat;
}

namespace {

// Collision scan of swept cells. stock_ok admits stock (cutting moves eat it);
// every mode rejects the environment and foreign tools.
std::optional<MotionFault> scan_sweep(const SpatialHeap& h, const VoxelSet& swept,
                                      std::uint8_t owner, bool stock_ok) {
  VoxelSet env, stock, race;
  for (const Voxel& v : swept) {
    const Occupancy& occ = h.at(v);
    switch (occ.material) {
      case Material::Environment:
        env.insert(v);
        break;
      case Material::Stock:
        if (!stock_ok) stock.insert(v);
        break;
      case Material::Tool:
        if (occ.owner != owner) race.insert(v);
        break;
      case Material::Empty:
        break;
    }
  }
  if (!env.empty())
    return MotionFault{FaultClass::EnvCollision, env,
                       "sweep crosses the environment at " + to_string(env)};
  if (!stock.empty())
    return MotionFault{FaultClass::StockCollision, stock,
                       "rapid sweep crosses stock at " + to_string(stock)};
  if (!race.empty())
    return MotionFault{FaultClass::MultiToolRace, race,
                       "sweep crosses another tool at " + to_string(race)};
  return std::nullopt;
}

void commit_motion(SpatialHeap& h, const VoxelSet& cleared, const VoxelSet& stock_landed,
                   const VoxelSet& tool_landed, std::uint8_t owner) {
  for (const Voxel& v : cleared) h.store(v, Occupancy::empty());
  for (const Voxel& v : stock_landed) h.store(v, Occupancy::stock());
  for (const Voxel& v : tool_landed) h.store(v, Occupancy::tool(owner));
}

}  // namespace

std::optional<MotionFault> exec_g00(SpatialHeap& h, const SLCommand& c) {
  if (auto f = scan_sweep(h, c.path, c.owner, /*stock_ok=*/false)) return f;
  commit_motion(h, c.path - c.finish, {}, c.finish, c.owner);
  return std::nullopt;
}

std::optional<MotionFault> exec_g01(SpatialHeap& h, const SLCommand& c) {
  if (auto f = scan_sweep(h, c.path, c.owner, /*stock_ok=*/true)) return f;
  commit_motion(h, c.path - c.finish, {}, c.finish, c.owner);
  return std::nullopt;
}

std::optional<MotionFault> exec_g00_dual(SpatialHeap& h, const SLCommand& c) {
  if (auto f = scan_sweep(h, c.path, c.owner, /*stock_ok=*/false)) return f;
  // The rotating stock must not brush the environment or any tool either.
  VoxelSet env, hit;
  for (const Voxel& v : c.stock_path) {
    const Occupancy& occ = h.at(v);
    if (occ.material == Material::Environment) env.insert(v);
    if (occ.material == Material::Tool && !c.start.contains(v)) hit.insert(v);
  }
  if (!env.empty())
    return MotionFault{FaultClass::EnvCollision, env,
                       "stock sweep crosses the environment at " + to_string(env)};
  if (!hit.empty())
    return MotionFault{FaultClass::StockCollision, hit,
                       "stock sweep crosses a tool at " + to_string(hit)};
  commit_motion(h, (c.path | c.stock_path) - c.finish - c.stock_finish, c.stock_finish,
                c.finish, c.owner);
  return std::nullopt;
}

std::optional<MotionFault> exec_g01_dual(SpatialHeap& h, const SLCommand& c) {
  VoxelSet env, race;
  for (const Voxel& v : c.path | c.stock_path) {
    const Occupancy& occ = h.at(v);
    if (occ.material == Material::Environment) env.insert(v);
    if (occ.material == Material::Tool && occ.owner != c.owner) race.insert(v);
  }
  if (!env.empty())
    return MotionFault{FaultClass::EnvCollision, env,
                       "sweep crosses the environment at " + to_string(env)};
  if (!race.empty())
    return MotionFault{FaultClass::MultiToolRace, race,
                       "sweep crosses another tool at " + to_string(race)};
  const VoxelSet kept = c.stock_finish - (c.path & c.stock_path);
  commit_motion(h, (c.path | c.stock_path) - c.finish - kept, kept, c.finish, c.owner);
  return std::nullopt;
}

namespace {

// Heap fragment holding exactly what a resource invariant promises, addressed
// in the same box as the main heap so it can be spliced in.
SpatialHeap invariant_fragment(const GridBox& box, const ResourceSpec& res) {
  SpatialHeap h = SpatialHeap::over(box, res.region, Occupancy::empty());
  const auto visit = [&](const Assertion& node, const auto& self) -> void {
    if (node.kind() == Assertion::Kind::Star) {
      for (const Assertion& p : node.parts()) self(p, self);
    } else if (node.kind() == Assertion::Kind::Region ||
               node.kind() == Assertion::Kind::PointsTo) {
      for (const Voxel& v : node.cells()) h.store(v, node.value());
    }
  };
  visit(res.invariant, visit);
  return h;
}

class Executor {
 public:
  Executor(SpatialHeap h, const std::vector<ResourceSpec>& resources,
           const ExecuteOptions& opts)
      : resources_(resources), opts_(opts) {
    report_.heap = std::move(h);
  }

  // Returns false once execution should abort.
  bool run(const std::vector<SLCommand>& commands) {
    for (const SLCommand& c : commands)
      if (!step(c)) return false;
    return true;
  }

  bool fault(const SLCommand& c, FaultClass cls, VoxelSet contested, std::string what) {
    FaultDetail d;
    d.command_index = index_;
    d.line = c.line;
    d.label = c.label;
    d.cls = cls;
    d.contested = std::move(contested);
    d.what = std::move(what);
    if (!report_.fault) {
      report_.fault = d;
      report_.verdict = Verdict::Fault;
    }
    report_.diagnostics.push_back(std::move(d));
    return opts_.continue_after_fault;
  }

  VerificationReport take() { return std::move(report_); }
  SpatialHeap& heap() { return report_.heap; }

 private:
  const ResourceSpec* find_resource(const std::string& name) const {
    for (const ResourceSpec& r : resources_)
      if (r.name == name) return &r;
    return nullptr;
  }

  bool check_invariant(const SLCommand& c, const ResourceSpec& res, const char* when) {
    const CheckResult r = check(heap().restricted_to(res.region), res.invariant);
    if (r.ok) return true;
    return fault(c, FaultClass::InvariantViolation, r.contested,
                 "resource '" + res.name + "' invariant does not hold at " + when + ": " +
                     r.detail);
  }

  bool step(const SLCommand& c) {
    ++index_;
    ++report_.steps;
    bool ok = true;
    switch (c.kind) {
      case SLCommand::Kind::Assert: {
        const CheckResult r = check(heap(), c.assertion);
        if (!r.ok)
          ok = fault(c, classify_contest(heap(), r.contested, c.owner), r.contested, r.detail);
        break;
      }
      case SLCommand::Kind::G00:
        if (auto f = exec_g00(heap(), c)) ok = fault(c, f->cls, f->contested, f->what);
        break;
      case SLCommand::Kind::G01:
        if (auto f = exec_g01(heap(), c)) ok = fault(c, f->cls, f->contested, f->what);
        break;
      case SLCommand::Kind::G00Dual:
        if (auto f = exec_g00_dual(heap(), c)) ok = fault(c, f->cls, f->contested, f->what);
        break;
      case SLCommand::Kind::G01Dual:
        if (auto f = exec_g01_dual(heap(), c)) ok = fault(c, f->cls, f->contested, f->what);
        break;
      case SLCommand::Kind::Mutate:
        for (const Voxel& v : c.cells) heap().store(v, c.value);
        break;
      case SLCommand::Kind::Foreach:
        for (const Voxel& v : c.cells) heap().store(v, c.value);
        break;
      case SLCommand::Kind::With: {
        const ResourceSpec* res = find_resource(c.resource);
        if (!res)
          throw Error("with-block names unknown resource '" + c.resource + "'");
        bool holds_region = true;
        for (const Voxel& v : res->region)
          if (!heap().in_domain(v)) holds_region = false;
        if (holds_region) {
          // Whole-heap run: the region never left this heap, so the invariant
          // is a plain checkpoint at entry and exit.
          if (!check_invariant(c, *res, "entry")) return false;
          if (!run(c.body)) return false;
          ok = check_invariant(c, *res, "exit");
        } else {
          // Thread-local run: acquire the region in the state the invariant
          // promises, and surrender it only if the invariant is restored.
          heap().adopt(invariant_fragment(heap().box(), *res));
          if (!run(c.body)) return false;
          ok = check_invariant(c, *res, "exit");
          if (ok) heap().surrender(res->region);
        }
        break;
      }
      case SLCommand::Kind::Parallel:
        throw Error("parallel blocks require verify_parallel");
    }
    if (opts_.observer) opts_.observer(c, heap());
    return ok;
  }

  const std::vector<ResourceSpec>& resources_;
  const ExecuteOptions& opts_;
  VerificationReport report_;
  std::size_t index_ = static_cast<std::size_t>(-1);
};

}  // namespace

VerificationReport execute_commands(const std::vector<SLCommand>& commands, SpatialHeap h,
                                    const std::vector<ResourceSpec>& resources,
                                    const ExecuteOptions& opts) {
  Executor ex(std::move(h), resources, opts);
  ex.run(commands);
  return ex.take();
}

VerificationReport execute(const SLTriple& t, SpatialHeap h, const ExecuteOptions& opts) {
  {
    const CheckResult r = check(h, t.pre);
    if (!r.ok) {
      VerificationReport rep;
      rep.verdict = Verdict::Fault;
      FaultDetail d;
      d.cls = FaultClass::PreconditionUnsat;
      d.contested = r.contested;
      d.what = "initial heap does not satisfy the precondition: " + r.detail;
      rep.fault = d;
      rep.diagnostics.push_back(std::move(d));
      rep.heap = std::move(h);
      return rep;
    }
  }
  Executor ex(std::move(h), t.resources, opts);
  if (ex.run(t.body) || opts.continue_after_fault) {
    VerificationReport rep = ex.take();
    const CheckResult r = check(rep.heap, t.post);
    if (!r.ok) {
      FaultDetail d;
      d.command_index = rep.steps;
      d.cls = FaultClass::PostconditionUnsat;
      d.contested = r.contested;
      d.what = "final heap does not satisfy the postcondition: " + r.detail;
      if (!rep.fault) {
        rep.fault = d;
        rep.verdict = Verdict::Fault;
      }
      rep.diagnostics.push_back(std::move(d));
    }
    return rep;
  }
  return ex.take();
}

VerificationReport execute(const SLTriple& t, const ExecuteOptions& opts) {
  return execute(t, heap_from_assertion(t.workspace, t.pre), opts);
}

}  // namespace voxproof
