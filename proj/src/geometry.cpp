#include "voxproof/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "voxproof/errors.hpp"

namespace voxproof {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
// Hard ceiling on sweep samples; anything beyond this is a scene asking for
// more resolution than the discretization can sensibly deliver.
constexpr std::size_t kMaxSweepSteps = 1'000'000;
}  // namespace

int scale_coord(double v, int mu) {
  return static_cast<int>(std::floor(v * static_cast<double>(mu)));
}

Voxel scale_point(const Vec3& p, int mu) {
  return {scale_coord(p.x, mu), scale_coord(p.y, mu), scale_coord(p.z, mu)};
}

VoxelSet chebyshev_ball(int epsilon) {
  if (epsilon < 0) throw ConfigError("tool radius (epsilon) must be >= 0");
  return VoxelSet::box({{-epsilon, -epsilon, -epsilon}, {epsilon, epsilon, epsilon}});
}

VoxelSet minkowski_sum(const VoxelSet& a, const VoxelSet& b) {
  std::vector<Voxel> cells;
  cells.reserve(a.size() * b.size());
  for (const Voxel& p : a)
    for (const Voxel& q : b) cells.push_back(p + q);
  return VoxelSet(std::move(cells));
}

PathTrace path_lin(const Voxel& a, const Voxel& b) {
  int cur[3] = {a.x, a.y, a.z};
  const int end[3] = {b.x, b.y, b.z};
  int delta[3], step[3];
  for (int i = 0; i < 3; ++i) {
    delta[i] = std::abs(end[i] - cur[i]);
    step[i] = end[i] > cur[i] ? 1 : end[i] < cur[i] ? -1 : 0;
  }
  // Driving axis: largest delta, ties resolved x before y before z.
  int drive = 0;
  if (delta[1] > delta[drive]) drive = 1;
  if (delta[2] > delta[drive]) drive = 2;
  const int u = (drive + 1) % 3;
  const int v = (drive + 2) % 3;

  std::vector<Voxel> out;
  out.reserve(static_cast<std::size_t>(delta[drive]) + 1);
  int pu = 2 * delta[u] - delta[drive];
  int pv = 2 * delta[v] - delta[drive];
  while (cur[drive] != end[drive]) {
    out.push_back({cur[0], cur[1], cur[2]});
    if (pu >= 0) {
      cur[u] += step[u];
      pu -= 2 * delta[drive];
    }
    if (pv >= 0) {
      cur[v] += step[v];
      pv -= 2 * delta[drive];
    }
    pu += 2 * delta[u];
    pv += 2 * delta[v];
    cur[drive] += step[drive];
  }
  out.push_back({cur[0], cur[1], cur[2]});
  return PathTrace(std::move(out));
}

PathTrace path_supercover(const Voxel& a, const Voxel& b) {
  const Voxel d = b - a;
  const long long dx = std::abs(d.x), dy = std::abs(d.y), dz = std::abs(d.z);
  const int sx = (d.x > 0) - (d.x < 0);
  const int sy = (d.y > 0) - (d.y < 0);
  const int sz = (d.z > 0) - (d.z < 0);

  std::vector<Voxel> out;
  out.push_back(a);
  Voxel cur = a;
  long long cx = 0, cy = 0, cz = 0;  // boundary crossings completed per axis
  while (cx < dx || cy < dy || cz < dz) {
    // Next crossing of axis i happens at parameter (2*c+1) / (2*delta);
    // exhausted axes never cross again. Compared exactly via cross products.
    const long long nx = 2 * cx + 1, px = cx < dx ? 2 * dx : 0;
    const long long ny = 2 * cy + 1, py = cy < dy ? 2 * dy : 0;
    const long long nz = 2 * cz + 1, pz = cz < dz ? 2 * dz : 0;
    long long bn = 0, bd = 0;
    auto consider = [&](long long n, long long den) {
      if (den != 0 && (bd == 0 || n * bd < bn * den)) {
        bn = n;
        bd = den;
      }
    };
    consider(nx, px);
    consider(ny, py);
    consider(nz, pz);
    const bool tx = px != 0 && nx * bd == bn * px;
    const bool ty = py != 0 && ny * bd == bn * py;
    const bool tz = pz != 0 && nz * bd == bn * pz;
    if (tx + ty + tz >= 2) {
      // The segment pierces a cube edge or corner; every forward cell that
      // shares it is touched and belongs in the cover.
      for (int ax = 0; ax <= (tx ? 1 : 0); ++ax)
        for (int ay = 0; ay <= (ty ? 1 : 0); ++ay)
          for (int az = 0; az <= (tz ? 1 : 0); ++az) {
            if (ax == 0 && ay == 0 && az == 0) continue;
            out.push_back({cur.x + ax * sx, cur.y + ay * sy, cur.z + az * sz});
          }
      if (tx) {
        cur.x += sx;
        ++cx;
      }
      if (ty) {
        cur.y += sy;
        ++cy;
      }
      if (tz) {
        cur.z += sz;
        ++cz;
      }
      // The loop above emitted the fully advanced cell last, so the trace
      // still ends at the current position.
    } else {
      if (tx) {
        cur.x += sx;
        ++cx;
      } else if (ty) {
        cur.y += sy;
        ++cy;
      } else {
        cur.z += sz;
        ++cz;
      }
      out.push_back(cur);
    }
  }
  return PathTrace(std::move(out));
}

PathTrace trace_segment(const Voxel& a, const Voxel& b, PathMode mode) {
  return mode == PathMode::Bresenham ? path_lin(a, b) : path_supercover(a, b);
}

GridBox segment_box(const Voxel& a, const Voxel& b) {
  return {{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)},
          {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}};
}

VoxelSet path_box(const Voxel& a, const Voxel& b) { return VoxelSet::box(segment_box(a, b)); }

Vec3 rotate_about(RotaryAxis axis, double radians, const Vec3& p) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  switch (axis) {
    case RotaryAxis::A:
      return {p.x, c * p.y - s * p.z, s * p.y + c * p.z};
    case RotaryAxis::B:
      return {c * p.x + s * p.z, p.y, -s * p.x + c * p.z};
    case RotaryAxis::C:
    default:
      return {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
  }
}

Vec3 table_transform(const RotaryConfig& cfg, double primary_rad, double secondary_rad,
                     const Vec3& p) {
  Vec3 q{p.x - cfg.pivot.x, p.y - cfg.pivot.y, p.z - cfg.pivot.z};
  q = rotate_about(cfg.secondary, secondary_rad, q);
  q = rotate_about(cfg.primary, primary_rad, q);
  return {q.x + cfg.pivot.x, q.y + cfg.pivot.y, q.z + cfg.pivot.z};
}

Voxel round_to_voxel(const Vec3& p) {
  return {static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y)),
          static_cast<int>(std::lround(p.z))};
}

std::size_t sweep_step_count(double r_max, double d_primary_rad, double d_secondary_rad) {
  const double travel = r_max * (std::abs(d_primary_rad) + std::abs(d_secondary_rad));
  const double needed = std::ceil(8.0 * travel);
  if (needed <= 64.0) return 64;
  return static_cast<std::size_t>(needed);
}

VoxelSet stock_sweep_sampled(const VoxelSet& stock, const RotaryConfig& cfg,
                             const RotaryMove& move, std::size_t steps) {
  const double pri_from = move.primary_from * kDegToRad;
  const double sec_from = move.secondary_from * kDegToRad;
  const double d_pri = (move.primary_to - move.primary_from) * kDegToRad;
  const double d_sec = (move.secondary_to - move.secondary_from) * kDegToRad;
  std::vector<Voxel> cells;
  cells.reserve(stock.size() * (steps + 1));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = steps == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(steps);
    const double pri = pri_from + t * d_pri;
    const double sec = sec_from + t * d_sec;
    for (const Voxel& c : stock) {
      const Vec3 p = table_transform(
          cfg, pri, sec, {static_cast<double>(c.x), static_cast<double>(c.y), static_cast<double>(c.z)});
      cells.push_back(round_to_voxel(p));
    }
  }
  return VoxelSet(std::move(cells));
}

double max_pivot_radius(const VoxelSet& stock, const Vec3& pivot) {
  double r2 = 0;
  for (const Voxel& c : stock) {
    const double dx = c.x - pivot.x, dy = c.y - pivot.y, dz = c.z - pivot.z;
    r2 = std::max(r2, dx * dx + dy * dy + dz * dz);
  }
  return std::sqrt(r2);
}

VoxelSet stock_sweep(const VoxelSet& stock, const RotaryConfig& cfg, const RotaryMove& move) {
  const double d_pri = (move.primary_to - move.primary_from) * kDegToRad;
  const double d_sec = (move.secondary_to - move.secondary_from) * kDegToRad;
  const double r_max = max_pivot_radius(stock, cfg.pivot);
  const std::size_t steps = sweep_step_count(r_max, d_pri, d_sec);
  if (steps > kMaxSweepSteps)
    throw ConfigError("rotary sweep would need " + std::to_string(steps) +
                      " samples, over the budget of " + std::to_string(kMaxSweepSteps));
  return stock_sweep_sampled(stock, cfg, move, steps);
}

}  // namespace voxproof
