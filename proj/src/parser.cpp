// Recursive-descent parser for the class expression DSL.
//
//   expr := "Av(" permlist ")" | "merge(" expr "," expr ")"
//         | "grid(" "[" row ("," row)* "]" ")" | "set(" permlist ")"
//         | "sumclose(" expr ")" | "skewclose(" expr ")"
//         | "inter(" expr ("," expr)* ")"
//         | "staircase(" ("inc"|"spiral") "," cell "," cell "," integer ")"
//   row  := "[" cell ("," cell)* "]"      cell := expr | "E"
//   perm := digits | "[" int ("," int)* "]" | "e"
//
// Whitespace is insignificant.

#include <cctype>
#include <string>

#include "permgrid/class_expr.hpp"
#include "permgrid/errors.hpp"
#include "permgrid/grid.hpp"

namespace permgrid {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ClassExpr parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ClassExpr expr() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string head = word();
    if (head.empty()) fail("expected a class expression");
    if (head == "Av") {
      expect('(');
      auto perms = perm_list();
      expect(')');
      return ClassExpr::avoid(std::move(perms));
    }
    if (head == "set") {
      expect('(');
      auto perms = perm_list();
      expect(')');
      return ClassExpr::finite_set(std::move(perms));
    }
    if (head == "merge") {
      expect('(');
      auto l = expr();
      expect(',');
      auto r = expr();
      expect(')');
      return ClassExpr::merge(std::move(l), std::move(r));
    }
    if (head == "sumclose" || head == "skewclose") {
      expect('(');
      auto inner = expr();
      expect(')');
      return head == "sumclose" ? ClassExpr::sum_closure(std::move(inner)) : ClassExpr::skew_closure(std::move(inner));
    }
    if (head == "inter") {
      expect('(');
      std::vector<ClassExpr> parts{expr()};
      while (accept(',')) parts.push_back(expr());
      expect(')');
      return ClassExpr::intersection(std::move(parts));
    }
    if (head == "grid") return grid();
    if (head == "staircase") return staircase();
    pos_ = start;
    fail("unknown class constructor '" + head + "'");
  }

  std::optional<ClassExpr> cell() {
    skip_ws();
    const std::size_t save = pos_;
    if (word() == "E") return std::nullopt;
    pos_ = save;
    return expr();
  }

  ClassExpr grid() {
    expect('(');
    expect('[');
    std::vector<std::vector<std::optional<ClassExpr>>> rows;
    do {
      expect('[');
      std::vector<std::optional<ClassExpr>> row{cell()};
      while (accept(',')) row.push_back(cell());
      expect(']');
      if (!rows.empty() && row.size() != rows.front().size()) fail("grid rows differ in length");
      rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    expect(')');
    return ClassExpr::grid(GridMatrix::from_rows(rows));
  }

  ClassExpr staircase() {
    expect('(');
    const std::string kind = word();
    if (kind != "inc" && kind != "spiral") fail("staircase kind must be 'inc' or 'spiral'");
    expect(',');
    auto c = cell();
    if (!c) fail("the C class of a staircase cannot be empty");
    expect(',');
    auto d = cell();
    expect(',');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 4) fail("expected a step count");
    const auto steps = static_cast<std::size_t>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    if (steps < 1) fail("staircase needs at least one step");
    expect(')');
    StaircaseSpec spec{kind == "inc" ? StaircaseKind::increasing : StaircaseKind::spiral, *c, d, steps};
    return ClassExpr::grid(build_staircase(spec));
  }

  std::vector<Permutation> perm_list() {
    std::vector<Permutation> perms;
    if (peek(')')) return perms;
    do {
      perms.push_back(perm());
    } while (accept(','));
    return perms;
  }

  Permutation perm() {
    skip_ws();
    const std::size_t start = pos_;
    if (accept('[')) {
      while (pos_ < text_.size() && text_[pos_] != ']') ++pos_;
      if (pos_ == text_.size()) fail("unterminated '['");
      ++pos_;
    } else if (pos_ < text_.size() && text_[pos_] == 'e') {
      ++pos_;
      return Permutation{};
    } else {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a permutation");
    }
    try {
      return Permutation::parse(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError("malformed permutation", start + e.position());
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), start);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ClassExpr parse_class_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace permgrid
