#pragma once

#include <cstddef>

#include "voxproof/voxel.hpp"

namespace voxproof {

// Real-space point, used only on the analog side of the grid boundary
// (scene coordinates, rotation pivots, sampled sweep positions).
struct Vec3 {
  double x = 0;
  double y = 0;
  double z = 0;
};

// Grid quantization: floor(v * mu) per axis, floor toward minus infinity.
int scale_coord(double v, int mu);
Voxel scale_point(const Vec3& p, int mu);

// Chebyshev ball of radius epsilon: all cells with max-norm <= epsilon.
// Cardinality is (2*epsilon+1)^3. epsilon < 0 is a configuration error.
VoxelSet chebyshev_ball(int epsilon);

// Pointwise sums of two cell sets.
VoxelSet minkowski_sum(const VoxelSet& a, const VoxelSet& b);

enum class PathMode { Bresenham, Supercover };

// 3-D Bresenham between voxel centers: driving axis is the largest absolute
// delta (ties prefer x, then y, then z), secondary axes step when their error
// term is non-negative. Visits exactly max(|dx|,|dy|,|dz|) + 1 cells, in
// order from a to b.
PathTrace path_lin(const Voxel& a, const Voxel& b);

// Every cell whose closed unit cube the real segment between the two centers
// touches. Exact integer arithmetic; a crossing through a cube corner or edge
// admits all cells sharing it.
PathTrace path_supercover(const Voxel& a, const Voxel& b);

PathTrace trace_segment(const Voxel& a, const Voxel& b, PathMode mode);

// Axis-aligned inclusive bounding box of the two endpoints, as a box and as
// the full cell set (the conservative envelope of any monotone trace).
GridBox segment_box(const Voxel& a, const Voxel& b);
VoxelSet path_box(const Voxel& a, const Voxel& b);

// Rotary table axes: A rotates about X, B about Y, C about Z.
enum class RotaryAxis { A, B, C };

// Table-table kinematics: two stacked rotary axes moving the stock, both
// rotating about lines through a common pivot.
struct RotaryConfig {
  RotaryAxis primary = RotaryAxis::A;
  RotaryAxis secondary = RotaryAxis::C;
  Vec3 pivot;  // in grid units
};

// One simultaneous rotary move; angles in degrees, interpolated linearly.
struct RotaryMove {
  double primary_from = 0;
  double primary_to = 0;
  double secondary_from = 0;
  double secondary_to = 0;
};

Vec3 rotate_about(RotaryAxis axis, double radians, const Vec3& p);

// Position of grid point p after applying secondary then primary rotation
// about the pivot (the stack order of a table-table machine).
Vec3 table_transform(const RotaryConfig& cfg, double primary_rad, double secondary_rad,
                     const Vec3& p);

// Nearest cell with half-integer cases rounded away from zero.
Voxel round_to_voxel(const Vec3& p);

// Number of interpolation intervals used for a sweep: fine enough that
// consecutive samples of the farthest cell move well under a voxel
// (1/8 voxel per step, floor of 64). Exposed so tests can pin it.
std::size_t sweep_step_count(double r_max, double d_primary_rad, double d_secondary_rad);

// Union of the rotated stock set at steps+1 evenly spaced angle samples
// (both endpoints included), each sample rounded to the grid.
VoxelSet stock_sweep_sampled(const VoxelSet& stock, const RotaryConfig& cfg,
                             const RotaryMove& move, std::size_t steps);

// stock_sweep_sampled at the automatic step count. Throws ConfigError if the
// required step count exceeds the sampling budget.
VoxelSet stock_sweep(const VoxelSet& stock, const RotaryConfig& cfg, const RotaryMove& move);

// Largest Euclidean distance from the pivot to any cell of the set; the lever
// arm that drives sweep resolution.
double max_pivot_radius(const VoxelSet& stock, const Vec3& pivot);

}  // namespace voxproof
