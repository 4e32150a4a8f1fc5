#include "voxproof/concurrency.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "voxproof/errors.hpp"

namespace voxproof {

namespace {

const ResourceSpec* find_resource(const std::vector<ResourceSpec>& resources,
                                  const std::string& name) {
  for (const ResourceSpec& r : resources)
    if (r.name == name) return &r;
  return nullptr;
}

const SLCommand* single_parallel(const SLTriple& t) {
  if (t.body.size() == 1 && t.body.front().kind == SLCommand::Kind::Parallel)
    return &t.body.front();
  return nullptr;
}

}  // namespace

VoxelSet thread_footprint(const std::vector<SLCommand>& body,
                          const std::vector<ResourceSpec>& resources) {
  VoxelSet foot;
  for (const SLCommand& c : body) {
    switch (c.kind) {
      case SLCommand::Kind::G00:
      case SLCommand::Kind::G01:
      case SLCommand::Kind::G00Dual:
      case SLCommand::Kind::G01Dual:
        foot |= c.path | c.stock_path;
        break;
      case SLCommand::Kind::Mutate:
      case SLCommand::Kind::Foreach:
        foot |= c.cells;
        break;
      case SLCommand::Kind::With: {
        VoxelSet inner = thread_footprint(c.body, resources);
        if (const ResourceSpec* res = find_resource(resources, c.resource))
          inner -= res->region;
        foot |= inner;
        break;
      }
      case SLCommand::Kind::Assert:
        break;  // reads only
      case SLCommand::Kind::Parallel:
        throw Error("nested parallel blocks are not supported");
    }
  }
  return foot;
}

VerificationReport verify_parallel(const SLTriple& t, SpatialHeap h,
                                   const ExecuteOptions& opts) {
  const SLCommand* par = single_parallel(t);
  if (!par) throw Error("verify_parallel expects a body that is one parallel block");

  VerificationReport rep;
  const auto fail = [&](FaultDetail d) {
    if (!rep.fault) {
      rep.fault = d;
      rep.verdict = Verdict::Fault;
    }
    rep.diagnostics.push_back(std::move(d));
  };

  {
    const CheckResult r = check(h, t.pre);
    if (!r.ok) {
      FaultDetail d;
      d.cls = FaultClass::PreconditionUnsat;
      d.contested = r.contested;
      d.what = "initial heap does not satisfy the precondition: " + r.detail;
      fail(std::move(d));
      rep.heap = std::move(h);
      return rep;
    }
  }

  struct Slot {
    const std::string* id;
    const std::vector<SLCommand>* body;
    const ThreadSpec* spec;
    VoxelSet foot;
  };
  std::vector<Slot> slots;
  for (const auto& [id, body] : par->threads) {
    const ThreadSpec* spec = nullptr;
    for (const ThreadSpec& s : t.threads)
      if (s.id == id) spec = &s;
    if (!spec) throw Error("parallel block names undeclared thread '" + id + "'");
    slots.push_back({&id, &body, spec, thread_footprint(body, t.resources)});
  }

  // Static separation: no two threads may touch a common cell outside a
  // resource, and no thread may reach past its own region.
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      const VoxelSet overlap = slots[i].foot & slots[j].foot;
      if (!overlap.empty()) {
        FaultDetail d;
        d.cls = FaultClass::MultiToolRace;
        d.contested = overlap;
        d.thread = *slots[i].id;
        d.what = "threads '" + *slots[i].id + "' and '" + *slots[j].id +
                 "' sweep a common region at " + to_string(overlap);
        fail(std::move(d));
      }
    }
  if (rep.fault) {
    rep.heap = std::move(h);
    return rep;
  }
  for (const Slot& s : slots) {
    const VoxelSet outside = s.foot - s.spec->local_region;
    if (!outside.empty()) {
      FaultDetail d;
      d.cls = FaultClass::OwnershipViolation;
      d.contested = outside;
      d.thread = *s.id;
      d.what = "thread '" + *s.id + "' sweeps outside its region at " + to_string(outside);
      fail(std::move(d));
    }
  }
  if (rep.fault) {
    rep.heap = std::move(h);
    return rep;
  }

  // Dynamic phase: each thread runs alone on its slice of the heap.
  SpatialHeap merged = h;
  for (const Slot& s : slots) {
    SpatialHeap slice = h.restricted_to(s.spec->local_region);
    VerificationReport sub;
    try {
      sub = execute_commands(*s.body, std::move(slice), t.resources, opts);
    } catch (const DomainError& e) {
      FaultDetail d;
      d.cls = FaultClass::OwnershipViolation;
      d.thread = *s.id;
      d.what = "thread '" + *s.id + "' touched cells outside its region: " + e.what();
      fail(std::move(d));
      continue;
    }
    rep.steps += sub.steps;
    for (FaultDetail& d : sub.diagnostics) {
      d.thread = *s.id;
      fail(std::move(d));
    }
    for (const Voxel& v : sub.heap.domain()) merged.store(v, sub.heap.at(v));
  }
  rep.heap = std::move(merged);
  if (rep.fault) return rep;

  const CheckResult r = check(rep.heap, t.post);
  if (!r.ok) {
    FaultDetail d;
    d.command_index = rep.steps;
    d.cls = FaultClass::PostconditionUnsat;
    d.contested = r.contested;
    d.what = "joined heap does not satisfy the postcondition: " + r.detail;
    fail(std::move(d));
  }
  return rep;
}

VerificationReport verify_parallel(const SLTriple& t, const ExecuteOptions& opts) {
  return verify_parallel(t, heap_from_assertion(t.workspace, t.pre), opts);
}

namespace {

struct OracleUnit {
  enum class Kind { Motion, Write, Acquire, Release } kind;
  const SLCommand* cmd = nullptr;
  int res_index = -1;
};

void flatten_units(const std::vector<SLCommand>& body,
                   const std::vector<ResourceSpec>& resources, std::vector<OracleUnit>& out) {
  for (const SLCommand& c : body) {
    switch (c.kind) {
      case SLCommand::Kind::G00:
      case SLCommand::Kind::G01:
      case SLCommand::Kind::G00Dual:
      case SLCommand::Kind::G01Dual:
        out.push_back({OracleUnit::Kind::Motion, &c, -1});
        break;
      case SLCommand::Kind::Mutate:
      case SLCommand::Kind::Foreach:
        out.push_back({OracleUnit::Kind::Write, &c, -1});
        break;
      case SLCommand::Kind::With: {
        int idx = -1;
        for (std::size_t r = 0; r < resources.size(); ++r)
          if (resources[r].name == c.resource) idx = static_cast<int>(r);
        if (idx < 0) throw Error("with-block names unknown resource '" + c.resource + "'");
        out.push_back({OracleUnit::Kind::Acquire, &c, idx});
        flatten_units(c.body, resources, out);
        out.push_back({OracleUnit::Kind::Release, &c, idx});
        break;
      }
      case SLCommand::Kind::Assert:
        break;
      case SLCommand::Kind::Parallel:
        throw Error("nested parallel blocks are not supported");
    }
  }
}

std::optional<MotionFault> oracle_step(SpatialHeap& h, const SLCommand& c) {
  switch (c.kind) {
    case SLCommand::Kind::G00:
      return exec_g00(h, c);
    case SLCommand::Kind::G01:
      return exec_g01(h, c);
    case SLCommand::Kind::G00Dual:
      return exec_g00_dual(h, c);
    case SLCommand::Kind::G01Dual:
      return exec_g01_dual(h, c);
    case SLCommand::Kind::Mutate:
    case SLCommand::Kind::Foreach:
      for (const Voxel& v : c.cells) h.store(v, c.value);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

class Scheduler {
 public:
  Scheduler(std::vector<std::vector<OracleUnit>> threads, std::size_t resource_count)
      : threads_(std::move(threads)), resource_count_(resource_count) {}

  OracleResult run(SpatialHeap h) {
    std::vector<std::size_t> pcs(threads_.size(), 0);
    std::vector<int> holders(resource_count_, -1);
    race_ = false;
    states_ = 0;
    seen_.clear();
    explore(pcs, holders, std::move(h));
    return {race_, states_};
  }

 private:
  std::string key_of(const std::vector<std::size_t>& pcs, const std::vector<int>& holders,
                     const SpatialHeap& h) const {
    std::string k;
    for (std::size_t pc : pcs) {
      k += std::to_string(pc);
      k += ',';
    }
    for (int holder : holders) {
      k += std::to_string(holder);
      k += ';';
    }
    k += '|';
    for (const Voxel& v : h.domain()) {
      const Occupancy& occ = h.at(v);
      k += static_cast<char>('0' + static_cast<int>(occ.material));
      k += static_cast<char>('a' + occ.owner % 26);
    }
    return k;
  }

  void explore(std::vector<std::size_t>& pcs, std::vector<int>& holders, SpatialHeap h) {
    if (race_) return;
    const std::string key = key_of(pcs, holders, h);
    if (!seen_.insert(key).second) return;
    ++states_;
    for (std::size_t i = 0; i < threads_.size() && !race_; ++i) {
      if (pcs[i] >= threads_[i].size()) continue;
      const OracleUnit& u = threads_[i][pcs[i]];
      if (u.kind == OracleUnit::Kind::Acquire && holders[u.res_index] >= 0) continue;
      int saved = 0;
      if (u.kind == OracleUnit::Kind::Acquire) {
        saved = holders[u.res_index];
        holders[u.res_index] = static_cast<int>(i);
      } else if (u.kind == OracleUnit::Kind::Release) {
        saved = holders[u.res_index];
        holders[u.res_index] = -1;
      }
      SpatialHeap next = h;
      if (u.kind == OracleUnit::Kind::Motion || u.kind == OracleUnit::Kind::Write) {
        if (oracle_step(next, *u.cmd)) {
          race_ = true;
          return;
        }
      }
      ++pcs[i];
      explore(pcs, holders, std::move(next));
      --pcs[i];
      if (u.kind == OracleUnit::Kind::Acquire || u.kind == OracleUnit::Kind::Release)
        holders[u.res_index] = saved;
    }
  }

  std::vector<std::vector<OracleUnit>> threads_;
  std::size_t resource_count_;
  bool race_ = false;
  std::size_t states_ = 0;
  std::unordered_set<std::string> seen_;
};

}  // namespace

OracleResult interleaving_oracle(const SLTriple& t, SpatialHeap h) {
  const SLCommand* par = single_parallel(t);
  if (!par) throw Error("interleaving_oracle expects a body that is one parallel block");
  std::vector<std::vector<OracleUnit>> threads;
  std::size_t motions = 0;
  for (const auto& [id, body] : par->threads) {
    std::vector<OracleUnit> units;
    flatten_units(body, t.resources, units);
    for (const OracleUnit& u : units)
      if (u.kind == OracleUnit::Kind::Motion || u.kind == OracleUnit::Kind::Write) ++motions;
    threads.push_back(std::move(units));
  }
  if (motions > 12)
    throw OracleOverflowError("interleaving oracle limited to 12 motion steps, got " +
                              std::to_string(motions));
  Scheduler sched(std::move(threads), t.resources.size());
  return sched.run(std::move(h));
}

OracleResult interleaving_oracle(const SLTriple& t) {
  return interleaving_oracle(t, heap_from_assertion(t.workspace, t.pre));
}

}  // namespace voxproof
