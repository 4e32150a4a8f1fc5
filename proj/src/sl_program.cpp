#include "voxproof/sl_program.hpp"

#include <map>
#include <sstream>

#include "voxproof/errors.hpp"

namespace voxproof {

namespace {

const char* kind_word(SLCommand::Kind k) {
  switch (k) {
    case SLCommand::Kind::Assert:
      return "assert";
    case SLCommand::Kind::G00:
      return "g00";
    case SLCommand::Kind::G01:
      return "g01";
    case SLCommand::Kind::G00Dual:
      return "g00x";
    case SLCommand::Kind::G01Dual:
      return "g01x";
    case SLCommand::Kind::Mutate:
      return "set";
    case SLCommand::Kind::Foreach:
      return "foreach";
    case SLCommand::Kind::With:
      return "with";
    case SLCommand::Kind::Parallel:
      return "parallel";
  }
  return "assert";
}

void write_commands(std::ostream& os, const std::vector<SLCommand>& cmds, int depth);

void write_one(std::ostream& os, const SLCommand& c, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad << kind_word(c.kind) << " line=" << c.line;
  if (c.label) os << " label=" << *c.label;
  switch (c.kind) {
    case SLCommand::Kind::Assert:
      os << " :: " << to_string(c.assertion) << '\n';
      return;
    case SLCommand::Kind::G00:
    case SLCommand::Kind::G01:
      if (c.owner) os << " owner=" << static_cast<int>(c.owner);
      os << " start=" << to_string(c.start) << " final=" << to_string(c.finish)
         << " path=" << to_string(c.path) << '\n';
      return;
    case SLCommand::Kind::G00Dual:
    case SLCommand::Kind::G01Dual:
      if (c.owner) os << " owner=" << static_cast<int>(c.owner);
      os << " start=" << to_string(c.start) << " final=" << to_string(c.finish)
         << " path=" << to_string(c.path) << " stock_start=" << to_string(c.stock_start)
         << " stock_final=" << to_string(c.stock_finish)
         << " stock_path=" << to_string(c.stock_path) << '\n';
      return;
    case SLCommand::Kind::Mutate:
      if (c.owner) os << " owner=" << static_cast<int>(c.owner);
      os << " cell=" << to_string(c.cells.cells().front()) << " value=" << to_string(c.value)
         << '\n';
      return;
    case SLCommand::Kind::Foreach:
      os << " cells=" << to_string(c.cells) << " value=" << to_string(c.value) << '\n';
      return;
    case SLCommand::Kind::With:
      os << " resource=" << c.resource << " {\n";
      write_commands(os, c.body, depth + 1);
      os << pad << "}\n";
      return;
    case SLCommand::Kind::Parallel: {
      os << " {\n";
      const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
      for (const auto& [id, cmds] : c.threads) {
        os << inner << "thread " << id << " {\n";
        write_commands(os, cmds, depth + 2);
        os << inner << "}\n";
      }
      os << pad << "}\n";
      return;
    }
  }
}

void write_commands(std::ostream& os, const std::vector<SLCommand>& cmds, int depth) {
  for (const SLCommand& c : cmds) write_one(os, c, depth);
}

// One line of the serialized form, split into head word, key=value fields,
// an optional `::` tail, and an optional trailing `{`.
struct Line {
  int number = 0;
  std::string head;
  std::map<std::string, std::string> kv;
  std::string tail;
  bool has_tail = false;
  bool opens_block = false;
  bool closes_block = false;
  std::vector<std::string> bare;  // non key=value extras (names, corners)
};

Line split_line(const std::string& raw, int number) {
  Line out;
  out.number = number;
  std::string text = raw;
  const std::size_t sep = text.find(" :: ");
  if (sep != std::string::npos) {
    out.tail = text.substr(sep + 4);
    out.has_tail = true;
    text = text.substr(0, sep);
  }
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "{") {
      out.opens_block = true;
    } else if (tok == "}") {
      out.closes_block = true;
    } else if (out.head.empty()) {
      out.head = tok;
    } else {
      const std::size_t eq = tok.find('=');
      // Set literals contain no '=': anything with one is a field.
      if (eq != std::string::npos && eq > 0)
        out.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      else
        out.bare.push_back(tok);
    }
  }
  return out;
}

[[noreturn]] void bad(const Line& ln, const std::string& why) {
  throw ParseError("triple load: " + why + " (in '" + ln.head + "')", ln.number);
}

int field_int(const Line& ln, const std::string& key, int fallback, bool required) {
  const auto it = ln.kv.find(key);
  if (it == ln.kv.end()) {
    if (required) bad(ln, "missing field '" + key + "'");
    return fallback;
  }
  try {
    return std::stoi(it->second);
  } catch (...) {
    bad(ln, "field '" + key + "' is not an integer");
  }
}

VoxelSet field_set(const Line& ln, const std::string& key) {
  const auto it = ln.kv.find(key);
  if (it == ln.kv.end()) bad(ln, "missing field '" + key + "'");
  return parse_voxel_set(it->second);
}

Occupancy field_value(const Line& ln, const std::string& key) {
  const auto it = ln.kv.find(key);
  if (it == ln.kv.end()) bad(ln, "missing field '" + key + "'");
  const auto occ = parse_occupancy(it->second);
  if (!occ) bad(ln, "bad occupancy '" + it->second + "'");
  return *occ;
}

struct TripleReader {
  std::vector<Line> lines;
  std::size_t pos = 0;

  bool done() const { return pos >= lines.size(); }
  const Line& peek() const { return lines[pos]; }
  const Line& take() { return lines[pos++]; }

  void fill_common(SLCommand& c, const Line& ln) {
    c.line = field_int(ln, "line", 0, true);
    if (ln.kv.count("label")) c.label = field_int(ln, "label", 0, true);
    c.owner = static_cast<std::uint8_t>(field_int(ln, "owner", 0, false));
  }

  std::vector<SLCommand> read_block();  // consumes up to a closing '}'

  SLCommand read_command(const Line& ln) {
    SLCommand c;
    fill_common(c, ln);
    if (ln.head == "assert") {
      c.kind = SLCommand::Kind::Assert;
      if (!ln.has_tail) bad(ln, "assert needs ':: <assertion>'");
      c.assertion = parse_assertion(ln.tail);
      return c;
    }
    if (ln.head == "g00" || ln.head == "g01" || ln.head == "g00x" || ln.head == "g01x") {
      c.kind = ln.head == "g00"    ? SLCommand::Kind::G00
               : ln.head == "g01"  ? SLCommand::Kind::G01
               : ln.head == "g00x" ? SLCommand::Kind::G00Dual
                                   : SLCommand::Kind::G01Dual;
      c.start = field_set(ln, "start");
      c.finish = field_set(ln, "final");
      c.path = field_set(ln, "path");
      if (c.kind == SLCommand::Kind::G00Dual || c.kind == SLCommand::Kind::G01Dual) {
        c.stock_start = field_set(ln, "stock_start");
        c.stock_finish = field_set(ln, "stock_final");
        c.stock_path = field_set(ln, "stock_path");
      }
      return c;
    }
    if (ln.head == "set") {
      c.kind = SLCommand::Kind::Mutate;
      const auto it = ln.kv.find("cell");
      if (it == ln.kv.end()) bad(ln, "set needs cell=");
      c.cells = VoxelSet::single(parse_voxel_text(it->second));
      c.value = field_value(ln, "value");
      return c;
    }
    if (ln.head == "foreach") {
      c.kind = SLCommand::Kind::Foreach;
      c.cells = field_set(ln, "cells");
      c.value = field_value(ln, "value");
      return c;
    }
    if (ln.head == "with") {
      c.kind = SLCommand::Kind::With;
      const auto it = ln.kv.find("resource");
      if (it == ln.kv.end()) bad(ln, "with needs resource=");
      c.resource = it->second;
      if (!ln.opens_block) bad(ln, "with needs an opening '{'");
      c.body = read_block();
      return c;
    }
    if (ln.head == "parallel") {
      c.kind = SLCommand::Kind::Parallel;
      if (!ln.opens_block) bad(ln, "parallel needs an opening '{'");
      while (!done() && !peek().closes_block) {
        const Line& th = take();
        if (th.head != "thread" || th.bare.empty() || !th.opens_block)
          bad(th, "expected 'thread <id> {' inside parallel");
        c.threads.emplace_back(th.bare.front(), read_block());
      }
      if (done()) bad(ln, "parallel block never closed");
      take();  // consume '}'
      return c;
    }
    bad(ln, "unknown command");
  }
};

std::vector<SLCommand> TripleReader::read_block() {
  std::vector<SLCommand> out;
  while (!done() && !peek().closes_block) out.push_back(read_command(take()));
  if (done()) throw ParseError("triple load: block never closed", lines.back().number);
  take();  // consume '}'
  return out;
}

}  // namespace

std::string serialize(const SLTriple& t) {
  std::ostringstream os;
  os << "slprogram v1\n";
  os << "workspace " << to_string(t.workspace.lo) << ' ' << to_string(t.workspace.hi) << '\n';
  os << "pre :: " << to_string(t.pre) << '\n';
  os << "post :: " << to_string(t.post) << '\n';
  for (const ResourceSpec& r : t.resources)
    os << "resource " << r.name << " region=" << to_string(r.region) << " :: "
       << to_string(r.invariant) << '\n';
  for (const ThreadSpec& th : t.threads)
    os << "thread-decl " << th.id << " owner=" << static_cast<int>(th.owner)
       << " local=" << to_string(th.local_region) << " home=" << to_string(th.home) << '\n';
  os << "begin\n";
  write_commands(os, t.body, 1);
  os << "end\n";
  return os.str();
}

SLTriple parse_triple(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  std::vector<Line> lines;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(split_line(raw, number));
  }
  if (lines.empty()) throw ParseError("triple load: empty input", 1);

  std::size_t i = 0;
  const auto expect_head = [&](const std::string& head) -> const Line& {
    if (i >= lines.size()) throw ParseError("triple load: unexpected end of input", number);
    if (lines[i].head != head)
      throw ParseError("triple load: expected '" + head + "', got '" + lines[i].head + "'",
                       lines[i].number);
    return lines[i++];
  };

  const Line& magic = expect_head("slprogram");
  if (magic.bare.empty() || magic.bare.front() != "v1")
    throw ParseError("triple load: unsupported version", magic.number);

  SLTriple t;
  const Line& ws = expect_head("workspace");
  if (ws.bare.size() != 2) bad(ws, "workspace needs two corners");
  t.workspace = {parse_voxel_text(ws.bare[0]), parse_voxel_text(ws.bare[1])};

  const Line& pre = expect_head("pre");
  if (!pre.has_tail) bad(pre, "pre needs ':: <assertion>'");
  t.pre = parse_assertion(pre.tail);
  const Line& post = expect_head("post");
  if (!post.has_tail) bad(post, "post needs ':: <assertion>'");
  t.post = parse_assertion(post.tail);

  while (i < lines.size() && lines[i].head == "resource") {
    const Line& r = lines[i++];
    if (r.bare.empty()) bad(r, "resource needs a name");
    ResourceSpec spec;
    spec.name = r.bare.front();
    spec.region = field_set(r, "region");
    if (!r.has_tail) bad(r, "resource needs ':: <invariant>'");
    spec.invariant = parse_assertion(r.tail);
    t.resources.push_back(std::move(spec));
  }
  while (i < lines.size() && lines[i].head == "thread-decl") {
    const Line& th = lines[i++];
    if (th.bare.empty()) bad(th, "thread-decl needs an id");
    ThreadSpec spec;
    spec.id = th.bare.front();
    spec.owner = static_cast<std::uint8_t>(field_int(th, "owner", 0, true));
    spec.local_region = field_set(th, "local");
    const auto it = th.kv.find("home");
    if (it == th.kv.end()) bad(th, "thread-decl needs home=");
    spec.home = parse_voxel_text(it->second);
    t.threads.push_back(std::move(spec));
  }

  expect_head("begin");
  TripleReader reader;
  reader.lines.assign(lines.begin() + static_cast<std::ptrdiff_t>(i), lines.end());
  while (!reader.done() && reader.peek().head != "end")
    t.body.push_back(reader.read_command(reader.take()));
  if (reader.done()) throw ParseError("triple load: missing 'end'", lines.back().number);
  return t;
}

SpatialHeap heap_from_assertion(const GridBox& workspace, const Assertion& partition) {
  if (!workspace.valid()) throw SceneError("workspace box is empty");
  SpatialHeap h = SpatialHeap::filled(workspace, Occupancy::empty());
  VoxelSet claimed;
  const auto visit = [&](const Assertion& node, const auto& self) -> void {
    switch (node.kind()) {
      case Assertion::Kind::Region:
      case Assertion::Kind::PointsTo: {
        if (claimed.intersects(node.cells()))
          throw SceneError("precondition claims a cell twice: " +
                           to_string(claimed & node.cells()));
        for (const Voxel& v : node.cells()) {
          if (!workspace.contains(v))
            throw SceneError("precondition cell " + to_string(v) + " outside the workspace");
          h.store(v, node.value());
        }
        claimed |= node.cells();
        return;
      }
      case Assertion::Kind::Emp:
        return;
      case Assertion::Kind::Star:
        for (const Assertion& p : node.parts()) self(p, self);
        return;
      case Assertion::Kind::True:
      case Assertion::Kind::Pure:
        throw SceneError("precondition must be a concrete partition of the workspace");
    }
  };
  visit(partition, visit);
  if (static_cast<std::int64_t>(claimed.size()) != workspace.volume())
    throw SceneError("precondition does not cover the workspace exactly");
  return h;
}

}  // namespace voxproof
