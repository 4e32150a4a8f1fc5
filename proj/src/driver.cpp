#include "voxproof/driver.hpp"

#include <fstream>
#include <sstream>

#include "voxproof/concurrency.hpp"
#include "voxproof/errors.hpp"

namespace voxproof {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

VerificationReport verify_triple(const SLTriple& t, SpatialHeap h, bool continue_after_fault) {
  ExecuteOptions opts;
  opts.continue_after_fault = continue_after_fault;
  const bool parallel =
      t.body.size() == 1 && t.body.front().kind == SLCommand::Kind::Parallel;
  return parallel ? verify_parallel(t, std::move(h), opts)
                  : execute(t, std::move(h), opts);
}

RunResult run(const RunConfig& config) {
  RunResult r;
  r.scene = load_scene_file(config.scene_path, config.mu, config.epsilon);
  r.program = parse_program(slurp(config.program_path));
  r.compiled = compile_program_traced(r.scene, r.program, config.path_mode);
  r.report = verify_triple(r.compiled.triple, initial_heap(r.scene),
                           config.continue_after_fault);
  return r;
}

}  // namespace voxproof
