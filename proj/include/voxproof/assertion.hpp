#pragma once

#include <string>
#include <vector>

#include "voxproof/occupancy.hpp"
#include "voxproof/voxel.hpp"

namespace voxproof {

// Spatial assertion over the machine heap. The grammar is deliberately small:
//
//   A ::= emp | true | (x,y,z)->V | R{cells}:V | [S <= S] | [S == S] | A * A
//
// Region and points-to atoms claim exactly the cells they name; star demands
// the claims be disjoint; `true` absorbs whatever part of the heap the other
// conjuncts left unclaimed. Pure atoms ([..]) constrain cell sets without
// claiming heap.
class Assertion {
 public:
  enum class Kind { Emp, True, PointsTo, Region, Pure, Star };
  enum class PureOp { Subset, Equal };

  static Assertion emp();
  static Assertion truth();
  static Assertion points_to(const Voxel& cell, const Occupancy& value);
  static Assertion region(VoxelSet cells, const Occupancy& value);
  static Assertion pure_subset(VoxelSet lhs, VoxelSet rhs);
  static Assertion pure_equal(VoxelSet lhs, VoxelSet rhs);
  static Assertion star(std::vector<Assertion> parts);

  Kind kind() const { return kind_; }

  // PointsTo and Region
  const VoxelSet& cells() const { return cells_; }
  const Occupancy& value() const { return value_; }

  // Pure
  PureOp pure_op() const { return pure_op_; }
  const VoxelSet& lhs() const { return cells_; }
  const VoxelSet& rhs() const { return rhs_; }

  // Star
  const std::vector<Assertion>& parts() const { return parts_; }

  friend bool operator==(const Assertion&, const Assertion&);

 private:
  Assertion() = default;

  Kind kind_ = Kind::Emp;
  VoxelSet cells_;  // PointsTo (singleton), Region, Pure lhs
  VoxelSet rhs_;    // Pure rhs
  Occupancy value_;
  PureOp pure_op_ = PureOp::Subset;
  std::vector<Assertion> parts_;
};

// Canonical single-line rendering; parse_assertion inverts it exactly.
std::string to_string(const Assertion& a);
Assertion parse_assertion(const std::string& text);

// Parsers for the canonical voxel and set renderings, shared by the program
// serialization loader.
Voxel parse_voxel_text(const std::string& text);      // "(x,y,z)"
VoxelSet parse_voxel_set(const std::string& text);    // "{(x,y,z),...}"

}  // namespace voxproof
