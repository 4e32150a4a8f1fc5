#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "voxproof/compiler.hpp"
#include "voxproof/driver.hpp"
#include "voxproof/errors.hpp"
#include "voxproof/report.hpp"
#include "voxproof/sl_program.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw voxproof::Error("cannot write " + path);
  out << content;
}

voxproof::PathMode mode_of(const std::string& name) {
  return name == "supercover" ? voxproof::PathMode::Supercover
                              : voxproof::PathMode::Bresenham;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voxproof: proves G-code programs collision-free over a voxel heap"};
  app.require_subcommand(1);

  std::string scene_path, program_path;
  std::optional<int> mu, epsilon;
  std::string path_mode = "bresenham";
  const auto mode_check = CLI::IsMember({"bresenham", "supercover"});

  auto* verify = app.add_subcommand("verify", "verify a program against a scene");
  verify->add_option("scene", scene_path, "scene description (json)")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("program", program_path, "G-code program")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--mu", mu, "voxels per machine unit (overrides the scene)");
  verify->add_option("--epsilon", epsilon, "tool dilation radius in voxels");
  verify->add_option("--path-mode", path_mode, "segment rasterization")->check(mode_check);
  std::string report_path, voxels_path, triple_path;
  bool continue_after_fault = false;
  verify->add_option("--report", report_path, "write a json report here");
  verify->add_option("--dump-voxels", voxels_path, "write the final heap here");
  verify->add_option("--dump-triple", triple_path, "write the compiled triple here");
  verify->add_flag("--continue", continue_after_fault,
                   "keep scanning after the first fault (diagnostics only)");

  auto* compile = app.add_subcommand("compile", "print the compiled triple");
  compile->add_option("scene", scene_path, "scene description (json)")
      ->required()
      ->check(CLI::ExistingFile);
  compile->add_option("program", program_path, "G-code program")
      ->required()
      ->check(CLI::ExistingFile);
  compile->add_option("--mu", mu, "voxels per machine unit (overrides the scene)");
  compile->add_option("--epsilon", epsilon, "tool dilation radius in voxels");
  compile->add_option("--path-mode", path_mode, "segment rasterization")->check(mode_check);
  std::string out_path;
  compile->add_option("-o,--output", out_path, "write here instead of stdout");

  auto* dump = app.add_subcommand("dump-heap", "print the initial heap of a scene");
  dump->add_option("scene", scene_path, "scene description (json)")
      ->required()
      ->check(CLI::ExistingFile);
  dump->add_option("--mu", mu, "voxels per machine unit (overrides the scene)");
  dump->add_option("--epsilon", epsilon, "tool dilation radius in voxels");
  dump->add_option("-o,--output", out_path, "write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      voxproof::RunConfig config;
      config.scene_path = scene_path;
      config.program_path = program_path;
      config.mu = mu;
      config.epsilon = epsilon;
      config.path_mode = mode_of(path_mode);
      config.continue_after_fault = continue_after_fault;
      const voxproof::RunResult r = voxproof::run(config);
      std::cout << voxproof::text_report(r.report);
      if (!report_path.empty()) write_file(report_path, voxproof::json_report(r.report));
      if (!voxels_path.empty()) write_file(voxels_path, voxproof::voxel_dump(r.report.heap));
      if (!triple_path.empty())
        write_file(triple_path, voxproof::serialize(r.compiled.triple));
      return r.report.verdict == voxproof::Verdict::Safe ? 0 : 2;
    }
    if (compile->parsed()) {
      const voxproof::Scene scene = voxproof::load_scene_file(scene_path, mu, epsilon);
      const voxproof::RawProgram program =
          voxproof::parse_program(voxproof::slurp(program_path));
      const voxproof::SLTriple triple =
          voxproof::compile_program(scene, program, mode_of(path_mode));
      const std::string text = voxproof::serialize(triple);
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
      return 0;
    }
    const voxproof::Scene scene = voxproof::load_scene_file(scene_path, mu, epsilon);
    const std::string text = voxproof::voxel_dump(voxproof::initial_heap(scene));
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
