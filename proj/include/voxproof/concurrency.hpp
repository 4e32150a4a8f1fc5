#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "voxproof/prover.hpp"
#include "voxproof/sl_program.hpp"

namespace voxproof {

// Every cell a thread body can touch on its own authority: motion sweeps and
// direct writes, with touches inside a held resource's region discounted.
VoxelSet thread_footprint(const std::vector<SLCommand>& body,
                          const std::vector<ResourceSpec>& resources);

// Verifies a triple whose body is a single Parallel command. Static phase:
// thread footprints must be pairwise disjoint and confined to each thread's
// declared region. Dynamic phase: each thread runs on its restricted sub-heap,
// resource regions move between threads only through their invariants. The
// sub-heaps are merged at the join and checked against the postcondition.
VerificationReport verify_parallel(const SLTriple& t, SpatialHeap h,
                                   const ExecuteOptions& opts = {});
VerificationReport verify_parallel(const SLTriple& t, const ExecuteOptions& opts = {});

// Exhaustive schedule exploration used to cross-check verify_parallel on
// small programs. Each motion or write is one atomic step; With blocks become
// acquire/release steps with blocking semantics; asserts are skipped (this is
// a physical simulation, not a proof). Reports whether any interleaving hits
// a collision. Throws OracleOverflowError past the step budget.
struct OracleResult {
  bool race = false;
  std::size_t states = 0;  // distinct states explored
};

OracleResult interleaving_oracle(const SLTriple& t, SpatialHeap h);
OracleResult interleaving_oracle(const SLTriple& t);

}  // namespace voxproof
