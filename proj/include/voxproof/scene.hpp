#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voxproof/assertion.hpp"
#include "voxproof/geometry.hpp"
#include "voxproof/voxel.hpp"

namespace voxproof {

// A shared region with the assertion that must hold whenever no thread owns
// it. The default invariant is R(region, Empty).
struct ResourceSpec {
  std::string name;
  VoxelSet region;
  Assertion invariant = Assertion::emp();
};

struct ThreadSpec {
  std::string id;
  VoxelSet local_region;        // empty set = not declared
  Voxel home{0, 0, 0};          // grid units
  Vec3 home_real;               // machine units (feeds position tracking)
  std::uint8_t owner = 0;       // heap tool id, assigned at load (1-based)
};

// Fully scaled scene: every field is already in grid units. Loading applies
// floor(v * mu) to all real-unit inputs, so downstream code never sees a
// machine-unit coordinate again.
struct Scene {
  GridBox workspace{{0, 0, 0}, {-1, -1, -1}};
  int mu = 1;
  int epsilon = 0;
  VoxelSet tool_shape{{0, 0, 0}};  // relative to the controlled point
  Voxel home{0, 0, 0};             // grid units
  Vec3 home_real;                  // machine units
  VoxelSet env;
  VoxelSet stock;
  std::optional<RotaryConfig> rotary;
  std::vector<ThreadSpec> threads;
  std::vector<ResourceSpec> resources;

  const ResourceSpec* find_resource(const std::string& name) const;
  const ThreadSpec* find_thread(const std::string& id) const;
};

// Parse + scale + validate a scene document. Overrides, when given, replace
// the file's mu/epsilon before scaling. Throws SceneError on inconsistent
// geometry, ConfigError on bad parameters.
Scene load_scene(const std::string& json_text, std::optional<int> mu_override = {},
                 std::optional<int> epsilon_override = {});
Scene load_scene_file(const std::string& path, std::optional<int> mu_override = {},
                      std::optional<int> epsilon_override = {});

// Effective tool footprint shape: declared shape dilated by the safety ball.
VoxelSet dilated_tool(const Scene& scene);

// Structural checks: containment in W, asset disjointness, thread/resource
// partition sanity. load_scene calls this; exposed for tests that build
// scenes programmatically.
void validate_scene(const Scene& scene);

}  // namespace voxproof
