#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace voxproof {

enum class Material : std::uint8_t { Empty = 0, Tool = 1, Stock = 2, Environment = 3 };

// Value stored at one heap cell. owner distinguishes tools in concurrent
// scenes (0 for the single-tool case); it is ignored for non-Tool materials.
struct Occupancy {
  Material material = Material::Empty;
  std::uint8_t owner = 0;

  static Occupancy empty() { return {Material::Empty, 0}; }
  static Occupancy stock() { return {Material::Stock, 0}; }
  static Occupancy environment() { return {Material::Environment, 0}; }
  static Occupancy tool(std::uint8_t owner = 0) { return {Material::Tool, owner}; }

  bool is(Material m) const { return material == m; }

  friend bool operator==(const Occupancy& a, const Occupancy& b) {
    if (a.material != b.material) return false;
    return a.material != Material::Tool || a.owner == b.owner;
  }
};

// Token forms: Empty, Stock, Environment, Tool, Tool:3 (owner > 0).
std::string to_string(const Occupancy& o);
std::optional<Occupancy> parse_occupancy(const std::string& token);

}  // namespace voxproof
