#include "voxproof/scene.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "voxproof/errors.hpp"
#include "voxproof/geometry.hpp"

namespace voxproof {

namespace {

using nlohmann::json;

Vec3 read_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number())
    throw SceneError(what + " must be an array of three numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// Real-unit box -> inclusive grid box, flooring both corners.
GridBox read_box(const json& j, int mu, const std::string& what) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max"))
    throw SceneError(what + " must be an object with min and max corners");
  const GridBox box{scale_point(read_vec3(j["min"], what + ".min"), mu),
                    scale_point(read_vec3(j["max"], what + ".max"), mu)};
  if (!box.valid()) throw SceneError(what + " has max corner below min corner");
  return box;
}

VoxelSet read_box_list(const json& j, int mu, const std::string& what) {
  if (!j.is_array()) throw SceneError(what + " must be an array of boxes");
  VoxelSet out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out |= VoxelSet::box(read_box(j[i], mu, what + "[" + std::to_string(i) + "]"));
  return out;
}

VoxelSet read_voxel_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw SceneError(what + " must be an array of [x,y,z] triples");
  std::vector<Voxel> cells;
  for (const json& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number_integer())
      throw SceneError(what + " entries must be integer [x,y,z] triples");
    cells.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
  }
  return VoxelSet(std::move(cells));
}

RotaryAxis read_axis(const json& j, const std::string& what) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "A" || s == "a") return RotaryAxis::A;
  if (s == "B" || s == "b") return RotaryAxis::B;
  if (s == "C" || s == "c") return RotaryAxis::C;
  throw SceneError(what + " must be one of \"A\", \"B\", \"C\"");
}

// Resource invariants must be decidable by footprint accounting over exactly
// the shared region: a star of Region/PointsTo atoms (no wildcard, no pure).
void check_invariant_shape(const Assertion& a, const VoxelSet& region, const std::string& name) {
  VoxelSet claimed;
  const auto visit = [&](const Assertion& node, const auto& self) -> void {
    switch (node.kind()) {
      case Assertion::Kind::Region:
      case Assertion::Kind::PointsTo:
        if (claimed.intersects(node.cells()))
          throw SceneError("resource '" + name + "' invariant claims a cell twice");
        if (node.value().material == Material::Tool)
          throw SceneError("resource '" + name + "' invariant may not claim Tool cells");
        claimed |= node.cells();
        return;
      case Assertion::Kind::Emp:
        return;
      case Assertion::Kind::Star:
        for (const Assertion& p : node.parts()) self(p, self);
        return;
      default:
        throw SceneError("resource '" + name +
                         "' invariant must be a star of region atoms over its region");
    }
  };
  visit(a, visit);
  if (!(claimed == region))
    throw SceneError("resource '" + name + "' invariant must cover its region exactly");
}

}  // namespace

const ResourceSpec* Scene::find_resource(const std::string& name) const {
  for (const ResourceSpec& r : resources)
    if (r.name == name) return &r;
  return nullptr;
}

const ThreadSpec* Scene::find_thread(const std::string& id) const {
  for (const ThreadSpec& t : threads)
    if (t.id == id) return &t;
  return nullptr;
}

VoxelSet dilated_tool(const Scene& scene) {
  if (scene.epsilon == 0) return scene.tool_shape;
  return minkowski_sum(scene.tool_shape, chebyshev_ball(scene.epsilon));
}

Scene load_scene(const std::string& json_text, std::optional<int> mu_override,
                 std::optional<int> epsilon_override) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SceneError(std::string("scene is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SceneError("scene document must be a JSON object");

  Scene scene;
  scene.mu = mu_override ? *mu_override : doc.value("mu", 1);
  scene.epsilon = epsilon_override ? *epsilon_override : doc.value("epsilon", 0);
  if (scene.mu < 1) throw ConfigError("mu must be a positive integer");
  if (scene.epsilon < 0) throw ConfigError("epsilon must be >= 0");

  if (!doc.contains("workspace")) throw SceneError("scene needs a workspace box");
  scene.workspace = read_box(doc["workspace"], scene.mu, "workspace");

  if (doc.contains("home")) {
    scene.home_real = read_vec3(doc["home"], "home");
    scene.home = scale_point(scene.home_real, scene.mu);
  }

  if (doc.contains("tool")) {
    const json& tool = doc["tool"];
    if (tool.is_object() && tool.contains("voxels"))
      scene.tool_shape = read_voxel_list(tool["voxels"], "tool.voxels");
    else if (tool.is_object() && tool.contains("box"))
      scene.tool_shape = VoxelSet::box(read_box(tool["box"], scene.mu, "tool.box"));
    else if (tool.is_object() && tool.contains("min"))
      scene.tool_shape = VoxelSet::box(read_box(tool, scene.mu, "tool"));
    else
      throw SceneError("tool must give a box or an explicit voxel list");
    if (scene.tool_shape.empty()) throw SceneError("tool shape is empty");
  }

  if (doc.contains("env")) scene.env = read_box_list(doc["env"], scene.mu, "env");
  if (doc.contains("stock")) scene.stock = read_box_list(doc["stock"], scene.mu, "stock");

  if (doc.contains("rotary")) {
    const json& rot = doc["rotary"];
    RotaryConfig cfg;
    if (!rot.contains("primary_axis") || !rot.contains("secondary_axis"))
      throw SceneError("rotary block needs primary_axis and secondary_axis");
    cfg.primary = read_axis(rot["primary_axis"], "rotary.primary_axis");
    cfg.secondary = read_axis(rot["secondary_axis"], "rotary.secondary_axis");
    if (cfg.primary == cfg.secondary)
      throw SceneError("rotary primary and secondary axes must differ");
    if (rot.contains("pivot")) {
      const Vec3 pivot = read_vec3(rot["pivot"], "rotary.pivot");
      cfg.pivot = {pivot.x * scene.mu, pivot.y * scene.mu, pivot.z * scene.mu};
    }
    scene.rotary = cfg;
  }

  if (doc.contains("threads")) {
    if (!doc["threads"].is_array()) throw SceneError("threads must be an array");
    std::uint8_t next_owner = 1;
    for (const json& t : doc["threads"]) {
      if (!t.is_object() || !t.contains("id")) throw SceneError("each thread needs an id");
      ThreadSpec spec;
      spec.id = t["id"].get<std::string>();
      if (t.contains("local_region"))
        spec.local_region =
            VoxelSet::box(read_box(t["local_region"], scene.mu, "thread " + spec.id + " region"));
      if (!t.contains("home"))
        throw SceneError("thread '" + spec.id + "' needs a home position");
      spec.home_real = read_vec3(t["home"], "thread home");
      spec.home = scale_point(spec.home_real, scene.mu);
      if (next_owner == 255) throw SceneError("too many threads");
      spec.owner = next_owner++;
      scene.threads.push_back(std::move(spec));
    }
  }

  if (doc.contains("resources")) {
    if (!doc["resources"].is_array()) throw SceneError("resources must be an array");
    for (const json& r : doc["resources"]) {
      if (!r.is_object() || !r.contains("name") || !r.contains("region"))
        throw SceneError("each resource needs a name and a region");
      ResourceSpec spec;
      spec.name = r["name"].get<std::string>();
      spec.region = VoxelSet::box(read_box(r["region"], scene.mu, "resource " + spec.name));
      if (r.contains("invariant")) {
        try {
          spec.invariant = parse_assertion(r["invariant"].get<std::string>());
        } catch (const ParseError& e) {
          throw SceneError("resource '" + spec.name + "' invariant: " + e.what());
        }
      } else {
        spec.invariant = Assertion::region(spec.region, Occupancy::empty());
      }
      scene.resources.push_back(std::move(spec));
    }
  }

  validate_scene(scene);
  return scene;
}

Scene load_scene_file(const std::string& path, std::optional<int> mu_override,
                      std::optional<int> epsilon_override) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scene(buf.str(), mu_override, epsilon_override);
}

void validate_scene(const Scene& scene) {
  if (!scene.workspace.valid()) throw SceneError("workspace box is empty");
  const VoxelSet w = VoxelSet::box(scene.workspace);

  if (!scene.env.is_subset_of(w)) throw SceneError("environment extends outside the workspace");
  if (!scene.stock.is_subset_of(w)) throw SceneError("stock extends outside the workspace");
  if (scene.env.intersects(scene.stock))
    throw SceneError("environment and stock overlap: " + to_string(scene.env & scene.stock));

  const VoxelSet shape = dilated_tool(scene);
  const auto check_home = [&](const Voxel& home, const std::string& who) {
    const VoxelSet foot = minkowski_sum(VoxelSet::single(home), shape);
    if (!foot.is_subset_of(w))
      throw SceneError(who + " tool footprint extends outside the workspace");
    if (foot.intersects(scene.env))
      throw SceneError(who + " tool starts inside the environment: " +
                       to_string(foot & scene.env));
    if (foot.intersects(scene.stock))
      throw SceneError(who + " tool starts inside the stock: " + to_string(foot & scene.stock));
    return foot;
  };

  if (scene.threads.empty()) {
    check_home(scene.home, "home");
  } else {
    for (std::size_t i = 0; i < scene.threads.size(); ++i) {
      const ThreadSpec& t = scene.threads[i];
      const VoxelSet foot = check_home(t.home, "thread '" + t.id + "'");
      for (std::size_t j = i + 1; j < scene.threads.size(); ++j) {
        if (scene.threads[j].id == t.id)
          throw SceneError("duplicate thread id '" + t.id + "'");
        if (!t.local_region.empty() && t.local_region.intersects(scene.threads[j].local_region))
          throw SceneError("thread regions of '" + t.id + "' and '" + scene.threads[j].id +
                           "' overlap");
        const VoxelSet other_foot =
            minkowski_sum(VoxelSet::single(scene.threads[j].home), shape);
        if (foot.intersects(other_foot))
          throw SceneError("threads '" + t.id + "' and '" + scene.threads[j].id +
                           "' start overlapping: " + to_string(foot & other_foot));
      }
      if (!t.local_region.empty()) {
        if (!t.local_region.is_subset_of(w))
          throw SceneError("thread '" + t.id + "' region extends outside the workspace");
        if (!foot.is_subset_of(t.local_region))
          throw SceneError("thread '" + t.id + "' starts outside its own region");
      }
    }
  }

  for (std::size_t i = 0; i < scene.resources.size(); ++i) {
    const ResourceSpec& r = scene.resources[i];
    if (!r.region.is_subset_of(w))
      throw SceneError("resource '" + r.name + "' region extends outside the workspace");
    for (std::size_t j = i + 1; j < scene.resources.size(); ++j) {
      if (scene.resources[j].name == r.name)
        throw SceneError("duplicate resource name '" + r.name + "'");
      if (r.region.intersects(scene.resources[j].region))
        throw SceneError("resource regions '" + r.name + "' and '" + scene.resources[j].name +
                         "' overlap");
    }
    for (const ThreadSpec& t : scene.threads)
      if (r.region.intersects(t.local_region))
        throw SceneError("resource '" + r.name + "' region overlaps thread '" + t.id +
                         "' region");
    check_invariant_shape(r.invariant, r.region, r.name);
    if (r.region.intersects(scene.env))
      throw SceneError("resource '" + r.name + "' region overlaps the environment");

    // The machine starts with no thread holding the resource, so the scene's
    // own content must already satisfy the invariant: stock inside the region
    // has to be declared by it, and nothing else may be.
    VoxelSet ri_stock, ri_env;
    const auto collect = [&](const Assertion& node, const auto& self) -> void {
      if (node.kind() == Assertion::Kind::Star) {
        for (const Assertion& p : node.parts()) self(p, self);
      } else if (node.kind() == Assertion::Kind::Region ||
                 node.kind() == Assertion::Kind::PointsTo) {
        if (node.value().material == Material::Stock) ri_stock |= node.cells();
        if (node.value().material == Material::Environment) ri_env |= node.cells();
      }
    };
    collect(r.invariant, collect);
    if (!(ri_stock == (r.region & scene.stock)))
      throw SceneError("resource '" + r.name +
                       "' invariant disagrees with the stock initially inside its region");
    if (!ri_env.empty())
      throw SceneError("resource '" + r.name + "' invariant claims Environment cells");

    const VoxelSet shape2 = dilated_tool(scene);
    if (scene.threads.empty()) {
      if (minkowski_sum(VoxelSet::single(scene.home), shape2).intersects(r.region))
        throw SceneError("tool starts inside resource '" + r.name + "' region");
    } else {
      for (const ThreadSpec& t : scene.threads)
        if (minkowski_sum(VoxelSet::single(t.home), shape2).intersects(r.region))
          throw SceneError("thread '" + t.id + "' starts inside resource '" + r.name +
                           "' region");
    }
  }
}

}  // namespace voxproof
