#include "voxproof/assertion.hpp"

#include <cctype>
#include <sstream>

#include "voxproof/errors.hpp"

namespace voxproof {

std::string to_string(const Occupancy& o) {
  switch (o.material) {
    case Material::Empty:
      return "Empty";
    case Material::Stock:
      return "Stock";
    case Material::Environment:
      return "Environment";
    case Material::Tool:
      return o.owner == 0 ? "Tool" : "Tool:" + std::to_string(static_cast<int>(o.owner));
  }
  return "Empty";
}

std::optional<Occupancy> parse_occupancy(const std::string& token) {
  if (token == "Empty") return Occupancy::empty();
  if (token == "Stock") return Occupancy::stock();
  if (token == "Environment") return Occupancy::environment();
  if (token == "Tool") return Occupancy::tool(0);
  if (token.rfind("Tool:", 0) == 0) {
    const std::string id = token.substr(5);
    if (id.empty()) return std::nullopt;
    int owner = 0;
    for (char c : id) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      owner = owner * 10 + (c - '0');
      if (owner > 255) return std::nullopt;
    }
    return Occupancy::tool(static_cast<std::uint8_t>(owner));
  }
  return std::nullopt;
}

Assertion Assertion::emp() {
  Assertion a;
  a.kind_ = Kind::Emp;
  return a;
}

Assertion Assertion::truth() {
  Assertion a;
  a.kind_ = Kind::True;
  return a;
}

Assertion Assertion::points_to(const Voxel& cell, const Occupancy& value) {
  Assertion a;
  a.kind_ = Kind::PointsTo;
  a.cells_ = VoxelSet::single(cell);
  a.value_ = value;
  return a;
}

Assertion Assertion::region(VoxelSet cells, const Occupancy& value) {
  Assertion a;
  a.kind_ = Kind::Region;
  a.cells_ = std::move(cells);
  a.value_ = value;
  return a;
}

Assertion Assertion::pure_subset(VoxelSet lhs, VoxelSet rhs) {
  Assertion a;
  a.kind_ = Kind::Pure;
  a.pure_op_ = PureOp::Subset;
  a.cells_ = std::move(lhs);
  a.rhs_ = std::move(rhs);
  return a;
}

Assertion Assertion::pure_equal(VoxelSet lhs, VoxelSet rhs) {
  Assertion a = pure_subset(std::move(lhs), std::move(rhs));
  a.pure_op_ = PureOp::Equal;
  return a;
}

Assertion Assertion::star(std::vector<Assertion> parts) {
  Assertion a;
  a.kind_ = Kind::Star;
  a.parts_ = std::move(parts);
  return a;
}

bool operator==(const Assertion& a, const Assertion& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Assertion::Kind::Emp:
    case Assertion::Kind::True:
      return true;
    case Assertion::Kind::PointsTo:
    case Assertion::Kind::Region:
      return a.cells_ == b.cells_ && a.value_ == b.value_;
    case Assertion::Kind::Pure:
      return a.pure_op_ == b.pure_op_ && a.cells_ == b.cells_ && a.rhs_ == b.rhs_;
    case Assertion::Kind::Star:
      return a.parts_ == b.parts_;
  }
  return false;
}

std::string to_string(const Assertion& a) {
  switch (a.kind()) {
    case Assertion::Kind::Emp:
      return "emp";
    case Assertion::Kind::True:
      return "true";
    case Assertion::Kind::PointsTo:
      return to_string(a.cells().cells().front()) + "->" + to_string(a.value());
    case Assertion::Kind::Region:
      return "R" + to_string(a.cells()) + ":" + to_string(a.value());
    case Assertion::Kind::Pure:
      return "[" + to_string(a.lhs()) +
             (a.pure_op() == Assertion::PureOp::Subset ? " <= " : " == ") + to_string(a.rhs()) +
             "]";
    case Assertion::Kind::Star: {
      std::ostringstream os;
      bool first = true;
      for (const Assertion& p : a.parts()) {
        if (!first) os << " * ";
        first = false;
        if (p.kind() == Assertion::Kind::Star)
          os << '(' << to_string(p) << ')';
        else
          os << to_string(p);
      }
      return os.str();
    }
  }
  return "emp";
}

namespace {

// Minimal cursor-based parser for the canonical assertion rendering.
class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_raw(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool try_consume(const std::string& word) {
    skip_ws();
    if (text_.compare(pos_, word.size(), word) == 0) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }
  std::string parse_word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ':' ||
            text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected word");
    return text_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("assertion syntax: " + why + " at offset " + std::to_string(pos_) +
                         " in \"" + text_ + "\"",
                     0);
  }

  Voxel parse_voxel() {
    expect('(');
    const int x = parse_int();
    expect(',');
    const int y = parse_int();
    expect(',');
    const int z = parse_int();
    expect(')');
    return {x, y, z};
  }

  VoxelSet parse_set() {
    expect('{');
    std::vector<Voxel> cells;
    if (peek() != '}') {
      cells.push_back(parse_voxel());
      while (peek() == ',') {
        expect(',');
        cells.push_back(parse_voxel());
      }
    }
    expect('}');
    return VoxelSet(std::move(cells));
  }

  Occupancy parse_value() {
    const std::string word = parse_word();
    const auto occ = parse_occupancy(word);
    if (!occ) fail("unknown occupancy '" + word + "'");
    return *occ;
  }

  Assertion parse_atom() {
    const char c = peek();
    if (c == 'R' && peek_raw(1) == '{') {
      advance();
      VoxelSet cells = parse_set();
      expect(':');
      return Assertion::region(std::move(cells), parse_value());
    }
    if (try_consume("emp")) return Assertion::emp();
    if (try_consume("true")) return Assertion::truth();
    if (c == '[') {
      expect('[');
      VoxelSet lhs = parse_set();
      Assertion::PureOp op;
      if (try_consume("<="))
        op = Assertion::PureOp::Subset;
      else if (try_consume("=="))
        op = Assertion::PureOp::Equal;
      else
        fail("expected <= or ==");
      VoxelSet rhs = parse_set();
      expect(']');
      return op == Assertion::PureOp::Subset
                 ? Assertion::pure_subset(std::move(lhs), std::move(rhs))
                 : Assertion::pure_equal(std::move(lhs), std::move(rhs));
    }
    if (c == '(') {
      // Either a points-to cell or a parenthesized group; a digit or sign
      // right after the paren means a coordinate.
      skip_ws();
      const char n = peek_raw(1);
      if (std::isdigit(static_cast<unsigned char>(n)) || n == '-' || n == '+') {
        const Voxel cell = parse_voxel();
        if (!try_consume("->")) fail("expected ->");
        return Assertion::points_to(cell, parse_value());
      }
      expect('(');
      Assertion inner = parse_star();
      expect(')');
      return inner;
    }
    fail("unexpected character");
  }

  Assertion parse_star() {
    std::vector<Assertion> parts;
    parts.push_back(parse_atom());
    while (true) {
      skip_ws();
      if (peek() == '*') {
        expect('*');
        parts.push_back(parse_atom());
      } else {
        break;
      }
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Assertion::star(std::move(parts));
  }

 private:
  void advance() { ++pos_; }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Assertion parse_assertion(const std::string& text) {
  Cursor cur(text);
  Assertion a = cur.parse_star();
  if (!cur.done()) cur.fail("trailing input");
  return a;
}

Voxel parse_voxel_text(const std::string& text) {
  Cursor cur(text);
  const Voxel v = cur.parse_voxel();
  if (!cur.done()) cur.fail("trailing input after voxel");
  return v;
}

VoxelSet parse_voxel_set(const std::string& text) {
  Cursor cur(text);
  VoxelSet s = cur.parse_set();
  if (!cur.done()) cur.fail("trailing input after voxel set");
  return s;
}

}  // namespace voxproof
