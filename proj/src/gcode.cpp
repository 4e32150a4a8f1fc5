#include "voxproof/gcode.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "voxproof/errors.hpp"

namespace voxproof {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  return s;
}

// Strips ( ... ) comments; parens do not nest in classic G-code.
std::string strip_comments(const std::string& line, int line_no) {
  std::string out;
  bool in_comment = false;
  for (char ch : line) {
    if (in_comment) {
      if (ch == ')') in_comment = false;
    } else if (ch == '(') {
      in_comment = true;
    } else {
      out.push_back(ch);
    }
  }
  if (in_comment) throw ParseError("unterminated comment", line_no);
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return !std::isdigit(static_cast<unsigned char>(s.front()));
}

// One axis/G/N word with its numeric argument.
struct Word {
  char letter;
  double value;
  bool had_equals;
};

// Scans "N10 G01 X3 Y 2" or "X = 5" into letter/number pairs. Letters and
// numbers may be juxtaposed or separated; '=' is accepted as a separator.
std::vector<Word> scan_words(const std::string& line, int line_no) {
  std::vector<Word> words;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  };
  while (true) {
    skip_ws();
    if (i >= line.size()) break;
    const char raw = line[i];
    if (!std::isalpha(static_cast<unsigned char>(raw)))
      throw ParseError(std::string("expected a word letter, got '") + raw + "'", line_no);
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
    ++i;
    skip_ws();
    bool had_equals = false;
    if (i < line.size() && line[i] == '=') {
      had_equals = true;
      ++i;
      skip_ws();
    }
    std::size_t start = i;
    if (i < line.size() && (line[i] == '-' || line[i] == '+')) ++i;
    while (i < line.size() && (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '.'))
      ++i;
    if (i == start)
      throw ParseError(std::string("word '") + letter + "' is missing its number", line_no);
    double value = 0;
    // from_chars takes no explicit '+' sign, so step past one ourselves.
    const char* first = line.data() + start + (line[start] == '+' ? 1 : 0);
    const char* last = line.data() + i;
    if (first == last)
      throw ParseError(std::string("word '") + letter + "' is missing its number", line_no);
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw ParseError("malformed number '" + line.substr(start, i - start) + "'", line_no);
    words.push_back({letter, value, had_equals});
  }
  return words;
}

constexpr const char* kAxisLetters = "XYZABC";

bool is_axis(char letter) {
  for (const char* p = kAxisLetters; *p; ++p)
    if (*p == letter) return true;
  return false;
}

std::string shortest_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Parser {
  RawProgram program;
  // Where commands currently land: top-level, a thread body, or a with-body.
  std::vector<std::vector<RawCommand>*> sinks;
  std::vector<std::string> open_with;  // resource names of enclosing blocks
  std::optional<RawCommand::Kind> mode;
  bool saw_thread = false;
  bool saw_plain = false;

  bool resource_declared(const std::string& name) const {
    for (const RawCommand& r : program.resources)
      if (r.resource == name) return true;
    return false;
  }

  void handle_keyword_line(const std::vector<std::string>& toks, int line_no) {
    const std::string kw = upper(toks[0]);
    if (kw == "THREAD") {
      if (!open_with.empty()) throw ParseError("THREAD header inside WITH block", line_no);
      if (saw_plain)
        throw ParseError("thread sections cannot mix with top-level motion commands", line_no);
      if (toks.size() < 2) throw ParseError("THREAD header needs an id", line_no);
      std::string id = toks[1];
      if (!id.empty() && id.back() == ':') id.pop_back();
      if (!is_identifier(id)) throw ParseError("bad thread id '" + id + "'", line_no);
      for (const RawThread& t : program.threads)
        if (t.id == id) throw ParseError("duplicate thread id '" + id + "'", line_no);
      program.threads.push_back({id, {}});
      sinks.assign(1, &program.threads.back().commands);
      mode.reset();
      saw_thread = true;
      return;
    }
    if (kw == "RESOURCE") {
      if (!open_with.empty() || sinks.size() > 1)
        throw ParseError("RESOURCE declaration must be at top level", line_no);
      if (toks.size() < 2) throw ParseError("RESOURCE needs a name", line_no);
      RawCommand decl;
      decl.kind = RawCommand::Kind::ResourceDecl;
      decl.line = line_no;
      decl.resource = toks[1];
      if (!is_identifier(decl.resource))
        throw ParseError("bad resource name '" + decl.resource + "'", line_no);
      std::size_t next = 2;
      if (next < toks.size() && upper(toks[next]) == "IN") ++next;
      decl.region_ref = next < toks.size() ? toks[next] : decl.resource;
      if (resource_declared(decl.resource))
        throw ParseError("resource '" + decl.resource + "' declared twice", line_no);
      program.resources.push_back(std::move(decl));
      return;
    }
    if (kw == "WITH") {
      if (toks.size() < 2) throw ParseError("WITH needs a resource name", line_no);
      std::string name = toks[1];
      if (toks.size() > 2 && upper(toks[2]) != "DO")
        throw ParseError("unexpected token after WITH " + name, line_no);
      if (!resource_declared(name))
        throw UnsupportedCommandError("with-block references undeclared resource '" + name + "'",
                                      line_no);
      if (std::find(open_with.begin(), open_with.end(), name) != open_with.end())
        throw ParseError("nested WITH on resource '" + name + "'", line_no);
      RawCommand block;
      block.kind = RawCommand::Kind::WithBlock;
      block.line = line_no;
      block.resource = name;
      sinks.back()->push_back(std::move(block));
      sinks.push_back(&sinks.back()->back().body);
      open_with.push_back(name);
      return;
    }
    if (kw == "END") {
      if (open_with.empty()) throw ParseError("END without open WITH block", line_no);
      sinks.pop_back();
      open_with.pop_back();
      return;
    }
    throw UnsupportedCommandError("unrecognized directive '" + toks[0] + "'", line_no);
  }

  void handle_word_line(const std::string& content, int line_no) {
    const std::vector<Word> words = scan_words(content, line_no);
    std::optional<int> label;
    std::optional<double> g;
    RawCommand cmd;
    cmd.line = line_no;
    bool any_axis = false;
    bool assignment_form = false;
    for (std::size_t w = 0; w < words.size(); ++w) {
      const Word& word = words[w];
      switch (word.letter) {
        case 'N': {
          if (w != 0) throw ParseError("N label must start the line", line_no);
          if (word.value < 0 || word.value != static_cast<int>(word.value))
            throw ParseError("N label must be a non-negative integer", line_no);
          label = static_cast<int>(word.value);
          break;
        }
        case 'G': {
          if (g) throw ParseError("multiple G words on one line", line_no);
          if (word.value != 0 && word.value != 1)
            throw UnsupportedCommandError("G" + shortest_double(word.value) + " is not supported",
                                          line_no);
          g = word.value;
          break;
        }
        case 'F':
          cmd.feed = word.value;
          break;
        case 'X':
        case 'Y':
        case 'Z':
        case 'A':
        case 'B':
        case 'C': {
          any_axis = true;
          if (word.had_equals) assignment_form = true;
          auto& slot = word.letter == 'X'   ? cmd.x
                       : word.letter == 'Y' ? cmd.y
                       : word.letter == 'Z' ? cmd.z
                       : word.letter == 'A' ? cmd.a
                       : word.letter == 'B' ? cmd.b
                                            : cmd.c;
          if (slot) throw ParseError(std::string("axis ") + word.letter + " given twice", line_no);
          slot = word.value;
          break;
        }
        default:
          throw UnsupportedCommandError(std::string("word '") + word.letter + "' is not supported",
                                        line_no);
      }
    }

    if (assignment_form) {
      if (g || words.size() != (label ? 2u : 1u))
        throw ParseError("assignment must be a lone '<axis> = <value>'", line_no);
      RawCommand assign;
      assign.kind = RawCommand::Kind::Assignment;
      assign.line = line_no;
      assign.label = label;
      for (const Word& word : words)
        if (is_axis(word.letter)) {
          assign.variable = std::string(1, word.letter);
          assign.value = word.value;
        }
      sinks.back()->push_back(std::move(assign));
      return;
    }

    if (g) mode = (*g == 0) ? RawCommand::Kind::Rapid : RawCommand::Kind::Linear;
    if (!any_axis) {
      // A bare G (or lone N) line switches mode without emitting a command.
      if (!g && !label && !cmd.feed) throw ParseError("line has no words", line_no);
      return;
    }
    if (!mode)
      throw ParseError("axis words with no active motion mode (no G00/G01 seen yet)", line_no);
    cmd.kind = *mode;
    cmd.label = label;
    saw_plain = saw_plain || sinks.back() == &program.commands;
    sinks.back()->push_back(std::move(cmd));
  }
};

void render_commands(std::ostream& os, const std::vector<RawCommand>& cmds, int depth);

void render_one(std::ostream& os, const RawCommand& cmd, int depth) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  switch (cmd.kind) {
    case RawCommand::Kind::Assignment:
      os << indent;
      if (cmd.label) os << 'N' << *cmd.label << ' ';
      os << cmd.variable << " = " << shortest_double(cmd.value) << '\n';
      return;
    case RawCommand::Kind::Rapid:
    case RawCommand::Kind::Linear: {
      os << indent;
      if (cmd.label) os << 'N' << *cmd.label << ' ';
      os << (cmd.kind == RawCommand::Kind::Rapid ? "G00" : "G01");
      const std::pair<char, const std::optional<double>*> axes[] = {
          {'X', &cmd.x}, {'Y', &cmd.y}, {'Z', &cmd.z},
          {'A', &cmd.a}, {'B', &cmd.b}, {'C', &cmd.c}};
      for (const auto& [letter, slot] : axes)
        if (*slot) os << ' ' << letter << shortest_double(**slot);
      if (cmd.feed) os << " F" << shortest_double(*cmd.feed);
      os << '\n';
      return;
    }
    case RawCommand::Kind::ResourceDecl:
      os << indent << "RESOURCE " << cmd.resource;
      if (cmd.region_ref != cmd.resource) os << " IN " << cmd.region_ref;
      os << '\n';
      return;
    case RawCommand::Kind::WithBlock:
      os << indent << "WITH " << cmd.resource << " DO\n";
      render_commands(os, cmd.body, depth + 1);
      os << indent << "END\n";
      return;
  }
}

void render_commands(std::ostream& os, const std::vector<RawCommand>& cmds, int depth) {
  for (const RawCommand& cmd : cmds) render_one(os, cmd, depth);
}

}  // namespace

RawProgram parse_program(const std::string& text) {
  Parser p;
  p.sinks.push_back(&p.program.commands);
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string stripped = strip_comments(raw, line_no);
    // ';' separates statements sharing a physical line.
    std::istringstream parts(stripped);
    std::string content;
    while (std::getline(parts, content, ';')) {
      const std::vector<std::string> toks = split_ws(content);
      if (toks.empty()) continue;
      const std::string kw = upper(toks[0]);
      if (kw == "THREAD" || kw == "RESOURCE" || kw == "WITH" || kw == "END" ||
          (toks[0].size() > 1 && is_identifier(toks[0]) &&
           !is_axis(static_cast<char>(std::toupper(static_cast<unsigned char>(toks[0][0])))) &&
           toks[0][0] != 'N' && toks[0][0] != 'n' && toks[0][0] != 'G' && toks[0][0] != 'g')) {
        p.handle_keyword_line(toks, line_no);
      } else {
        p.handle_word_line(content, line_no);
      }
    }
  }
  if (!p.open_with.empty())
    throw ParseError("WITH block for '" + p.open_with.back() + "' is never closed",
                     line_no == 0 ? 1 : line_no);
  return p.program;
}

std::string render_program(const RawProgram& p) {
  std::ostringstream os;
  render_commands(os, p.resources, 0);
  render_commands(os, p.commands, 0);
  for (const RawThread& t : p.threads) {
    os << "THREAD " << t.id << ":\n";
    render_commands(os, t.commands, 0);
  }
  return os.str();
}

bool equivalent(const RawCommand& a, const RawCommand& b) {
  if (a.kind != b.kind || a.label != b.label) return false;
  switch (a.kind) {
    case RawCommand::Kind::Assignment:
      return a.variable == b.variable && a.value == b.value;
    case RawCommand::Kind::Rapid:
    case RawCommand::Kind::Linear:
      return a.x == b.x && a.y == b.y && a.z == b.z && a.a == b.a && a.b == b.b && a.c == b.c &&
             a.feed == b.feed;
    case RawCommand::Kind::ResourceDecl:
      return a.resource == b.resource && a.region_ref == b.region_ref;
    case RawCommand::Kind::WithBlock: {
      if (a.resource != b.resource || a.body.size() != b.body.size()) return false;
      for (std::size_t i = 0; i < a.body.size(); ++i)
        if (!equivalent(a.body[i], b.body[i])) return false;
      return true;
    }
  }
  return false;
}

bool equivalent(const RawProgram& a, const RawProgram& b) {
  const auto lists_equal = [](const std::vector<RawCommand>& x, const std::vector<RawCommand>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!equivalent(x[i], y[i])) return false;
    return true;
  };
  if (!lists_equal(a.resources, b.resources) || !lists_equal(a.commands, b.commands)) return false;
  if (a.threads.size() != b.threads.size()) return false;
  for (std::size_t i = 0; i < a.threads.size(); ++i) {
    if (a.threads[i].id != b.threads[i].id) return false;
    if (!lists_equal(a.threads[i].commands, b.threads[i].commands)) return false;
  }
  return true;
}

}  // namespace voxproof
