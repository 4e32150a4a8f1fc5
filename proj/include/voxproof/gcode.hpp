#pragma once

#include <optional>
#include <string>
#include <vector>

namespace voxproof {

// Raw parse result: no geometry, no logic, just the program structure.
// Motion targets stay in machine units; scaling happens in the compiler.
struct RawCommand {
  enum class Kind { Assignment, Rapid, Linear, ResourceDecl, WithBlock };

  Kind kind = Kind::Rapid;
  int line = 0;                  // physical source line, 1-based
  std::optional<int> label;      // N-number when present

  // Assignment ("X = 3"): axis letter and value.
  std::string variable;
  double value = 0;

  // Rapid / Linear axis words. Absent words inherit the current position.
  std::optional<double> x, y, z;
  std::optional<double> a, b, c;     // rotary axes, degrees
  std::optional<double> feed;        // recorded, never affects verification

  // ResourceDecl: name + the scene region it refers to.
  // WithBlock: `resource` names the declared resource.
  std::string resource;
  std::string region_ref;
  std::vector<RawCommand> body;  // WithBlock only

  bool has_linear_word() const { return x || y || z; }
  bool has_rotary_word() const { return a || b || c; }
};

struct RawThread {
  std::string id;
  std::vector<RawCommand> commands;
};

struct RawProgram {
  std::vector<RawCommand> resources;  // ResourceDecl prelude, in source order
  std::vector<RawCommand> commands;   // single-threaded body
  std::vector<RawThread> threads;     // concurrent form (commands then empty)

  bool concurrent() const { return !threads.empty(); }
};

// Parse a program text. Comments in parentheses and blank lines are skipped;
// G00/G01 are modal (a bare axis-word line continues the active mode);
// `THREAD <id>:` opens a thread section, `RESOURCE <name> [IN <region>]`
// declares a shared resource, `WITH <name> [DO] ... END` brackets a critical
// block. Throws ParseError / UnsupportedCommandError on bad input.
RawProgram parse_program(const std::string& text);

// Canonical renderer: parse_program(render_program(p)) is equivalent to p
// (same commands, labels, structure; physical line numbers may differ).
std::string render_program(const RawProgram& p);

// Structural equality ignoring physical line numbers.
bool equivalent(const RawCommand& a, const RawCommand& b);
bool equivalent(const RawProgram& a, const RawProgram& b);

}  // namespace voxproof
