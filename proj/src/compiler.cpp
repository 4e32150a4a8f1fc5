#include "voxproof/compiler.hpp"

#include <algorithm>

#include "voxproof/errors.hpp"

namespace voxproof {

namespace {

char axis_letter(RotaryAxis a) {
  switch (a) {
    case RotaryAxis::A:
      return 'A';
    case RotaryAxis::B:
      return 'B';
    case RotaryAxis::C:
      return 'C';
  }
  return 'A';
}

// Stock cells a resource invariant promises to be present while nobody holds
// the resource.
VoxelSet invariant_stock(const Assertion& ri) {
  VoxelSet out;
  const auto visit = [&](const Assertion& node, const auto& self) -> void {
    if (node.kind() == Assertion::Kind::Star) {
      for (const Assertion& p : node.parts()) self(p, self);
    } else if ((node.kind() == Assertion::Kind::Region ||
                node.kind() == Assertion::Kind::PointsTo) &&
               node.value().material == Material::Stock) {
      out |= node.cells();
    }
  };
  visit(ri, visit);
  return out;
}

struct ResolvedTargets {
  Vec3 position;
  double primary_deg;
  double secondary_deg;
  bool rotates;
};

// Walks one motion list, emitting the discrete instruction stream.
class SequenceCompiler {
 public:
  SequenceCompiler(const Scene& scene, MotionContext& ctx, PathMode mode,
                   const std::vector<ResourceSpec>& resources,
                   std::vector<CompileSnapshot>* snapshots)
      : scene_(scene),
        ctx_(ctx),
        mode_(mode),
        resources_(resources),
        snapshots_(snapshots),
        tool_(dilated_tool(scene)) {
    refresh_views();
  }

  std::vector<SLCommand> run(const std::vector<RawCommand>& commands) {
    std::vector<SLCommand> out;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      compile_one(commands[i], out);
      if (snapshots_)
        snapshots_->push_back({i, commands[i].line, scale_point(ctx_.position, scene_.mu),
                               ctx_.stock});
    }
    return out;
  }

 private:
  void refresh_views() { env_view_ = scene_.env & ctx_.domain; }

  VoxelSet footprint(const Voxel& p) const {
    return minkowski_sum(VoxelSet::single(p), tool_);
  }

  SLCommand stamp(SLCommand::Kind kind, const RawCommand& rc) const {
    SLCommand c;
    c.kind = kind;
    c.line = rc.line;
    c.label = rc.label;
    c.owner = ctx_.owner;
    return c;
  }

  void emit_assert(std::vector<SLCommand>& out, const RawCommand& rc, Assertion a) const {
    SLCommand c = stamp(SLCommand::Kind::Assert, rc);
    c.assertion = std::move(a);
    out.push_back(std::move(c));
  }

  void check_in_workspace(const VoxelSet& swept, int line) const {
    VoxelSet outside;
    for (const Voxel& v : swept)
      if (!scene_.workspace.contains(v)) outside.insert(v);
    if (!outside.empty())
      throw OutOfWorkspaceError("motion sweeps outside the workspace: " + to_string(outside),
                                line);
  }

  ResolvedTargets resolve(const RawCommand& rc) {
    ResolvedTargets t{ctx_.position, ctx_.primary_deg, ctx_.secondary_deg, false};
    const auto apply = [&](char letter, double v) {
      switch (letter) {
        case 'X':
          t.position.x = v;
          return;
        case 'Y':
          t.position.y = v;
          return;
        case 'Z':
          t.position.z = v;
          return;
        default:
          break;
      }
      if (!scene_.rotary)
        throw ConfigError("line " + std::to_string(rc.line) + ": rotary word " +
                          std::string(1, letter) + " but the scene has no rotary configuration");
      if (letter == axis_letter(scene_.rotary->primary))
        t.primary_deg = v;
      else if (letter == axis_letter(scene_.rotary->secondary))
        t.secondary_deg = v;
      else
        throw ConfigError("line " + std::to_string(rc.line) + ": axis " +
                          std::string(1, letter) + " is not a configured rotary axis");
    };
    for (const auto& [letter, v] : ctx_.pending) apply(letter, v);
    ctx_.pending.clear();
    if (rc.x) apply('X', *rc.x);
    if (rc.y) apply('Y', *rc.y);
    if (rc.z) apply('Z', *rc.z);
    if (rc.a) apply('A', *rc.a);
    if (rc.b) apply('B', *rc.b);
    if (rc.c) apply('C', *rc.c);
    t.rotates = t.primary_deg != ctx_.primary_deg || t.secondary_deg != ctx_.secondary_deg;
    return t;
  }

  // Star of the named regions in canonical order, empty atoms dropped.
  static Assertion partition_assert(std::vector<std::pair<VoxelSet, Occupancy>> atoms,
                                    bool wildcard) {
    std::vector<Assertion> parts;
    for (auto& [cells, value] : atoms)
      if (!cells.empty()) parts.push_back(Assertion::region(std::move(cells), value));
    if (wildcard) parts.push_back(Assertion::truth());
    if (parts.size() == 1) return std::move(parts.front());
    return Assertion::star(std::move(parts));
  }

  void rapid(const RawCommand& rc, const Voxel& a, const Voxel& b,
             std::vector<SLCommand>& out) {
    const VoxelSet v_start = footprint(a);
    const VoxelSet v_final = footprint(b);
    const VoxelSet v_path = minkowski_sum(path_box(a, b), tool_);
    check_in_workspace(v_path, rc.line);
    emit_assert(out, rc,
                partition_assert({{v_start, Occupancy::tool(ctx_.owner)},
                                  {v_path - v_start, Occupancy::empty()}},
                                 /*wildcard=*/true));
    SLCommand c = stamp(SLCommand::Kind::G00, rc);
    c.start = v_start;
    c.finish = v_final;
    c.path = v_path;
    out.push_back(std::move(c));
  }

  void cut(const RawCommand& rc, const Voxel& a, const Voxel& b, std::vector<SLCommand>& out) {
    const VoxelSet v_start = footprint(a);
    const VoxelSet v_final = footprint(b);
    const VoxelSet v_path = minkowski_sum(trace_segment(a, b, mode_).to_set(), tool_);
    check_in_workspace(v_path, rc.line);
    const VoxelSet v_cut = v_path & ctx_.stock;
    const VoxelSet empty_snap = ctx_.domain - env_view_ - ctx_.stock - v_start;
    emit_assert(out, rc,
                partition_assert({{v_start, Occupancy::tool(ctx_.owner)},
                                  {ctx_.stock, Occupancy::stock()},
                                  {empty_snap, Occupancy::empty()},
                                  {env_view_, Occupancy::environment()}},
                                 /*wildcard=*/false));
    emit_assert(out, rc,
                Assertion::pure_subset(v_path - v_start, ctx_.stock | empty_snap));
    SLCommand c = stamp(SLCommand::Kind::G01, rc);
    c.start = v_start;
    c.finish = v_final;
    c.path = v_path;
    out.push_back(std::move(c));
    const VoxelSet clear = v_cut - v_final;
    if (!clear.empty()) {
      SLCommand f = stamp(SLCommand::Kind::Foreach, rc);
      f.cells = clear;
      f.value = Occupancy::empty();
      out.push_back(std::move(f));
    }
    ctx_.stock -= v_cut;
  }

  void dual(const RawCommand& rc, const Voxel& a, const Voxel& b, const ResolvedTargets& t,
            std::vector<SLCommand>& out) {
    const RotaryConfig& cfg = *scene_.rotary;
    const RotaryMove move{ctx_.primary_deg, t.primary_deg, ctx_.secondary_deg, t.secondary_deg};
    const VoxelSet v_start = footprint(a);
    const VoxelSet v_final = footprint(b);
    const VoxelSet v_path =
        a == b ? v_start
               : minkowski_sum(rc.kind == RawCommand::Kind::Rapid
                                   ? path_box(a, b)
                                   : trace_segment(a, b, mode_).to_set(),
                               tool_);
    const VoxelSet stock_start = ctx_.stock;
    const VoxelSet stock_path = stock_sweep(stock_start, cfg, move);
    const VoxelSet stock_final =
        stock_sweep_sampled(stock_start, cfg,
                            {t.primary_deg, t.primary_deg, t.secondary_deg, t.secondary_deg}, 0);
    check_in_workspace(v_path | stock_path, rc.line);

    SLCommand c = stamp(rc.kind == RawCommand::Kind::Rapid ? SLCommand::Kind::G00Dual
                                                           : SLCommand::Kind::G01Dual,
                        rc);
    c.start = v_start;
    c.finish = v_final;
    c.path = v_path;
    c.stock_start = stock_start;
    c.stock_finish = stock_final;
    c.stock_path = stock_path;

    if (rc.kind == RawCommand::Kind::Rapid) {
      emit_assert(out, rc,
                  partition_assert({{v_start, Occupancy::tool(ctx_.owner)},
                                    {stock_start, Occupancy::stock()},
                                    {env_view_, Occupancy::environment()},
                                    {(v_path - v_start) | (stock_path - stock_start),
                                     Occupancy::empty()}},
                                   /*wildcard=*/true));
      emit_assert(out, rc, Assertion::pure_equal((v_path | stock_path) & env_view_, {}));
      emit_assert(out, rc, Assertion::pure_equal(v_path & stock_path, {}));
      out.push_back(std::move(c));
      ctx_.stock = stock_final;
    } else {
      const VoxelSet v_cut = v_path & stock_path;
      const VoxelSet empty_snap = ctx_.domain - env_view_ - stock_start - v_start;
      emit_assert(out, rc,
                  partition_assert({{v_start, Occupancy::tool(ctx_.owner)},
                                    {stock_start, Occupancy::stock()},
                                    {empty_snap, Occupancy::empty()},
                                    {env_view_, Occupancy::environment()}},
                                   /*wildcard=*/false));
      emit_assert(out, rc, Assertion::pure_subset(v_path - v_start, empty_snap | v_cut));
      emit_assert(out, rc,
                  Assertion::pure_subset(stock_path - stock_start, empty_snap | v_cut));
      out.push_back(std::move(c));
      ctx_.stock = stock_final - v_cut;
    }
  }

  void with_block(const RawCommand& rc, std::vector<SLCommand>& out) {
    const ResourceSpec* res = nullptr;
    for (const ResourceSpec& r : resources_)
      if (r.name == rc.resource) res = &r;
    if (!res)
      throw SceneError("line " + std::to_string(rc.line) + ": with-block resource '" +
                       rc.resource + "' has no scene region");
    const VoxelSet saved_domain = ctx_.domain;
    ctx_.domain |= res->region;
    ctx_.stock |= invariant_stock(res->invariant);
    refresh_views();

    SLCommand w = stamp(SLCommand::Kind::With, rc);
    w.resource = rc.resource;
    for (const RawCommand& inner : rc.body) compile_one(inner, w.body);
    out.push_back(std::move(w));

    ctx_.domain = saved_domain;
    ctx_.stock -= res->region;
    refresh_views();
  }

  void compile_one(const RawCommand& rc, std::vector<SLCommand>& out) {
    switch (rc.kind) {
      case RawCommand::Kind::Assignment:
        ctx_.pending.emplace_back(rc.variable.front(), rc.value);
        return;
      case RawCommand::Kind::ResourceDecl:
        return;  // resolved by compile_program before sequences run
      case RawCommand::Kind::WithBlock:
        with_block(rc, out);
        return;
      case RawCommand::Kind::Rapid:
      case RawCommand::Kind::Linear: {
        const ResolvedTargets t = resolve(rc);
        const Voxel a = scale_point(ctx_.position, scene_.mu);
        const Voxel b = scale_point(t.position, scene_.mu);
        if (t.rotates)
          dual(rc, a, b, t, out);
        else if (rc.kind == RawCommand::Kind::Rapid)
          rapid(rc, a, b, out);
        else
          cut(rc, a, b, out);
        ctx_.position = t.position;
        ctx_.primary_deg = t.primary_deg;
        ctx_.secondary_deg = t.secondary_deg;
        return;
      }
    }
  }

  const Scene& scene_;
  MotionContext& ctx_;
  PathMode mode_;
  const std::vector<ResourceSpec>& resources_;
  std::vector<CompileSnapshot>* snapshots_;
  VoxelSet tool_;
  VoxelSet env_view_;
};

// Σ₀: every tool at its home footprint, then environment, stock, and the
// untouched remainder.
Assertion initial_assertion(const Scene& scene) {
  const VoxelSet w = VoxelSet::box(scene.workspace);
  const VoxelSet shape = dilated_tool(scene);
  std::vector<Assertion> parts;
  VoxelSet tools;
  if (scene.threads.empty()) {
    const VoxelSet foot = minkowski_sum(VoxelSet::single(scene.home), shape);
    parts.push_back(Assertion::region(foot, Occupancy::tool(0)));
    tools = foot;
  } else {
    for (const ThreadSpec& t : scene.threads) {
      const VoxelSet foot = minkowski_sum(VoxelSet::single(t.home), shape);
      parts.push_back(Assertion::region(foot, Occupancy::tool(t.owner)));
      tools |= foot;
    }
  }
  if (!scene.env.empty()) parts.push_back(Assertion::region(scene.env, Occupancy::environment()));
  if (!scene.stock.empty()) parts.push_back(Assertion::region(scene.stock, Occupancy::stock()));
  const VoxelSet rest = w - tools - scene.env - scene.stock;
  if (!rest.empty()) parts.push_back(Assertion::region(rest, Occupancy::empty()));
  if (parts.size() == 1) return std::move(parts.front());
  return Assertion::star(std::move(parts));
}

std::vector<ResourceSpec> resolve_resources(const Scene& scene, const RawProgram& program) {
  std::vector<ResourceSpec> out;
  for (const RawCommand& decl : program.resources) {
    const ResourceSpec* named = scene.find_resource(decl.region_ref);
    if (!named)
      throw SceneError("line " + std::to_string(decl.line) + ": resource '" + decl.resource +
                       "' refers to unknown scene region '" + decl.region_ref + "'");
    ResourceSpec spec = *named;
    spec.name = decl.resource;
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

std::vector<SLCommand> compile_sequence(const Scene& scene,
                                        const std::vector<RawCommand>& commands,
                                        MotionContext& ctx, PathMode mode) {
  static const std::vector<ResourceSpec> no_resources;
  SequenceCompiler sc(scene, ctx, mode, no_resources, nullptr);
  return sc.run(commands);
}

SpatialHeap initial_heap(const Scene& scene) {
  return heap_from_assertion(scene.workspace, initial_assertion(scene));
}

CompiledProgram compile_program_traced(const Scene& scene, const RawProgram& program,
                                       PathMode mode) {
  validate_scene(scene);
  CompiledProgram out;
  SLTriple& t = out.triple;
  t.workspace = scene.workspace;
  t.pre = initial_assertion(scene);
  t.resources = resolve_resources(scene, program);

  const VoxelSet shape = dilated_tool(scene);
  const VoxelSet w = VoxelSet::box(scene.workspace);

  if (!program.concurrent()) {
    MotionContext ctx;
    ctx.position = scene.home_real;
    ctx.stock = scene.stock;
    ctx.domain = w;
    ctx.owner = 0;
    SequenceCompiler sc(scene, ctx, mode, t.resources, &out.snapshots);
    t.body = sc.run(program.commands);
    const VoxelSet final_foot =
        minkowski_sum(VoxelSet::single(scale_point(ctx.position, scene.mu)), shape);
    t.post = Assertion::star({Assertion::region(final_foot, Occupancy::tool(0)),
                              Assertion::truth()});
    return out;
  }

  // Concurrent form: one Parallel command; every program thread needs a scene
  // declaration with a local region, and rotary motion is not modeled across
  // threads (the table is a single physical resource).
  SLCommand par;
  par.kind = SLCommand::Kind::Parallel;
  par.line = 0;
  std::vector<std::pair<std::string, VoxelSet>> finals;
  for (const RawThread& th : program.threads) {
    const ThreadSpec* spec = scene.find_thread(th.id);
    if (!spec) throw SceneError("program thread '" + th.id + "' is not declared in the scene");
    if (spec->local_region.empty())
      throw SceneError("thread '" + th.id + "' needs a local region for parallel verification");
    for (const RawCommand& rc : th.commands)
      if (rc.has_rotary_word())
        throw ConfigError("thread '" + th.id + "': rotary motion inside thread sections is not supported");

    MotionContext ctx;
    ctx.position = spec->home_real;
    ctx.stock = scene.stock & spec->local_region;
    ctx.domain = spec->local_region;
    ctx.owner = spec->owner;
    SequenceCompiler sc(scene, ctx, mode, t.resources, nullptr);
    par.threads.emplace_back(th.id, sc.run(th.commands));
    finals.emplace_back(
        th.id, minkowski_sum(VoxelSet::single(scale_point(ctx.position, scene.mu)), shape));
  }
  t.threads = scene.threads;
  t.body.push_back(std::move(par));

  std::vector<Assertion> post_parts;
  for (const ThreadSpec& spec : scene.threads) {
    VoxelSet foot = minkowski_sum(VoxelSet::single(spec.home), shape);
    for (const auto& [id, final_foot] : finals)
      if (id == spec.id) foot = final_foot;
    post_parts.push_back(Assertion::region(std::move(foot), Occupancy::tool(spec.owner)));
  }
  post_parts.push_back(Assertion::truth());
  t.post = Assertion::star(std::move(post_parts));
  return out;
}

SLTriple compile_program(const Scene& scene, const RawProgram& program, PathMode mode) {
  return compile_program_traced(scene, program, mode).triple;
}

}  // namespace voxproof
