#include "olmc/formula.hpp"

#include <cassert>
#include <sstream>

namespace olmc {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Connective imp_connective(int i) {
  switch (i) {
    case 0: return Connective::Imp0;
    case 1: return Connective::Imp1;
    case 2: return Connective::Imp2;
    case 3: return Connective::Imp3;
    case 4: return Connective::Imp4;
    case 5: return Connective::Imp5;
  }
  throw std::invalid_argument("implication index must be 0..5");
}

Formula Formula::variable(int index) {
  if (index < 0) throw std::invalid_argument("variable index must be non-negative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->conn = Connective::Conj;
  n->var = index;
  n->hash = hash_combine(0x11, static_cast<std::size_t>(index));
  n->count = 1;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negation;
  n->conn = Connective::Conj;
  n->var = -1;
  n->a = child.node_;
  n->hash = hash_combine(0x22, child.hash());
  n->count = 1 + child.node_count();
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Disjunction;
  n->conn = Connective::Conj;
  n->var = -1;
  n->a = left.node_;
  n->b = right.node_;
  n->hash = hash_combine(hash_combine(0x33, left.hash()), right.hash());
  n->count = 1 + left.node_count() + right.node_count();
  return Formula(std::move(n));
}

Formula Formula::sugar(Connective id, Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sugar;
  n->conn = id;
  n->var = -1;
  n->a = left.node_;
  n->b = right.node_;
  n->hash = hash_combine(
      hash_combine(hash_combine(0x44, static_cast<std::size_t>(id)), left.hash()),
      right.hash());
  n->count = 1 + left.node_count() + right.node_count();
  return Formula(std::move(n));
}

int Formula::var_index() const {
  assert(kind() == Kind::Variable);
  return node_->var;
}

Connective Formula::connective() const {
  assert(kind() == Kind::Sugar);
  return node_->conn;
}

const Formula& Formula::child() const {
  assert(kind() == Kind::Negation);
  return *reinterpret_cast<const Formula*>(&node_->a);
}

const Formula& Formula::left() const {
  assert(kind() == Kind::Disjunction || kind() == Kind::Sugar);
  return *reinterpret_cast<const Formula*>(&node_->a);
}

const Formula& Formula::right() const {
  assert(kind() == Kind::Disjunction || kind() == Kind::Sugar);
  return *reinterpret_cast<const Formula*>(&node_->b);
}

bool Formula::operator==(const Formula& other) const {
  const Node* x = node_.get();
  const Node* y = other.node_.get();
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Variable:
      return x->var == y->var;
    case Kind::Negation:
      return Formula(x->a) == Formula(y->a);
    case Kind::Sugar:
      if (x->conn != y->conn) return false;
      [[fallthrough]];
    case Kind::Disjunction:
      return Formula(x->a) == Formula(y->a) && Formula(x->b) == Formula(y->b);
  }
  return false;
}

// --------------------------------------------------------------------------
// Parsing
// --------------------------------------------------------------------------

namespace {

enum class Tok : std::uint8_t {
  End, LParen, RParen, Not, Or, And, Imp, Equiv, Equiv0, Var
};

struct Token {
  Tok kind;
  int value;        // implication index or variable index
  std::size_t pos;  // byte offset of token start
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) const {
    throw parse_error(msg, pos);
  }

  bool starts_with(std::string_view w) const {
    return s_.substr(i_).substr(0, w.size()) == w;
  }

  // Maps a UTF-8 subscript digit U+2080..U+2085 to 0..5, or -1.
  int subscript_at(std::size_t j) const {
    if (j + 3 > s_.size()) return -1;
    if (static_cast<unsigned char>(s_[j]) != 0xE2 ||
        static_cast<unsigned char>(s_[j + 1]) != 0x82)
      return -1;
    int d = static_cast<unsigned char>(s_[j + 2]) - 0x80;
    return (d >= 0 && d <= 5) ? d : -1;
  }

  void advance() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' ||
                              s_[i_] == '\r'))
      ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_ = {Tok::End, 0, i_};
      return;
    }
    char c = s_[i_];
    switch (c) {
      case '(': tok_ = {Tok::LParen, 0, i_}; ++i_; return;
      case ')': tok_ = {Tok::RParen, 0, i_}; ++i_; return;
      case '~': tok_ = {Tok::Not, 0, i_}; ++i_; return;
      case 'v': tok_ = {Tok::Or, 0, i_}; ++i_; return;
      case '^': tok_ = {Tok::And, 0, i_}; ++i_; return;
      case '-': {
        if (i_ + 2 < s_.size() && s_[i_ + 1] >= '0' && s_[i_ + 1] <= '5' &&
            s_[i_ + 2] == '>') {
          tok_ = {Tok::Imp, s_[i_ + 1] - '0', i_};
          i_ += 3;
          return;
        }
        fail("unknown symbol '-' (implications are written -0> .. -5>)", i_);
      }
      case '=': {
        if (i_ + 2 < s_.size() && s_[i_ + 1] == '0' && s_[i_ + 2] == '=') {
          tok_ = {Tok::Equiv0, 0, i_};
          i_ += 3;
          return;
        }
        tok_ = {Tok::Equiv, 0, i_};
        ++i_;
        return;
      }
      case 'p': {
        std::size_t j = i_ + 1;
        if (j >= s_.size() || !isdigit(static_cast<unsigned char>(s_[j])))
          fail("variables are written p0, p1, ...", i_);
        long idx = 0;
        while (j < s_.size() && isdigit(static_cast<unsigned char>(s_[j]))) {
          idx = idx * 10 + (s_[j] - '0');
          if (idx > 1000000) fail("variable index too large", i_);
          ++j;
        }
        tok_ = {Tok::Var, static_cast<int>(idx), i_};
        i_ = j;
        return;
      }
      default: break;
    }
    // Unicode aliases.
    if (starts_with("¬")) { tok_ = {Tok::Not, 0, i_}; i_ += 2; return; }
    if (starts_with("∨")) { tok_ = {Tok::Or, 0, i_}; i_ += 3; return; }
    if (starts_with("∧")) { tok_ = {Tok::And, 0, i_}; i_ += 3; return; }
    if (starts_with("→")) {
      int d = subscript_at(i_ + 3);
      if (d < 0) fail("implication arrow needs a subscript 0..5", i_);
      tok_ = {Tok::Imp, d, i_};
      i_ += 6;
      return;
    }
    if (starts_with("≡")) {
      if (subscript_at(i_ + 3) == 0) {
        tok_ = {Tok::Equiv0, 0, i_};
        i_ += 6;
        return;
      }
      tok_ = {Tok::Equiv, 0, i_};
      i_ += 3;
      return;
    }
    fail("unknown symbol", i_);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token tok_{};
};

class Parser {
 public:
  explicit Lexer& lex() { return lx_; }
  explicit Parser(std::string_view s) : lx_(s) {}

  Formula parse_all() {
    Formula f = parse_imp();
    if (lx_.peek().kind != Tok::End)
      throw parse_error("unexpected trailing input", lx_.peek().pos);
    return f;
  }

 private:
  Formula parse_imp() {
    Formula lhs = parse_eq();
    if (lx_.peek().kind == Tok::Imp) {
      Token op = lx_.take();
      Formula rhs = parse_eq();
      if (lx_.peek().kind == Tok::Imp)
        throw parse_error("implication chains need explicit parentheses",
                          lx_.peek().pos);
      return Formula::sugar(imp_connective(op.value), std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_eq() {
    Formula lhs = parse_or();
    Tok k = lx_.peek().kind;
    if (k == Tok::Equiv || k == Tok::Equiv0) {
      Token op = lx_.take();
      Formula rhs = parse_or();
      Tok k2 = lx_.peek().kind;
      if (k2 == Tok::Equiv || k2 == Tok::Equiv0)
        throw parse_error("equivalence chains need explicit parentheses",
                          lx_.peek().pos);
      return Formula::sugar(
          op.kind == Tok::Equiv ? Connective::EquivQ : Connective::Equiv0,
          std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    if (lx_.peek().kind == Tok::Or) {
      lx_.take();
      Formula rhs = parse_and();
      if (lx_.peek().kind == Tok::Or)
        throw parse_error("disjunction chains need explicit parentheses",
                          lx_.peek().pos);
      return Formula::disjunction(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    if (lx_.peek().kind == Tok::And) {
      lx_.take();
      Formula rhs = parse_unary();
      if (lx_.peek().kind == Tok::And)
        throw parse_error("conjunction chains need explicit parentheses",
                          lx_.peek().pos);
      return Formula::sugar(Connective::Conj, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_unary() {
    if (lx_.peek().kind == Tok::Not) {
      lx_.take();
      return Formula::negation(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    Token t = lx_.take();
    if (t.kind == Tok::Var) return Formula::variable(t.value);
    if (t.kind == Tok::LParen) {
      Formula f = parse_imp();
      Token close = lx_.take();
      if (close.kind != Tok::RParen)
        throw parse_error("expected ')'", close.pos);
      return f;
    }
    throw parse_error("expected a formula", t.pos);
  }

  Lexer lx_;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

// --------------------------------------------------------------------------
// Rendering
// --------------------------------------------------------------------------

namespace {

// Binding strength; higher binds tighter.
int level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Variable: return 6;
    case Formula::Kind::Negation: return 5;
    case Formula::Kind::Disjunction: return 3;
    case Formula::Kind::Sugar:
      switch (f.connective()) {
        case Connective::Conj: return 4;
        case Connective::EquivQ:
        case Connective::Equiv0: return 2;
        default: return 1;  // implications
      }
  }
  return 6;
}

const char* op_text(const Formula& f) {
  if (f.kind() == Formula::Kind::Disjunction) return " v ";
  switch (f.connective()) {
    case Connective::Conj: return " ^ ";
    case Connective::Imp0: return " -0> ";
    case Connective::Imp1: return " -1> ";
    case Connective::Imp2: return " -2> ";
    case Connective::Imp3: return " -3> ";
    case Connective::Imp4: return " -4> ";
    case Connective::Imp5: return " -5> ";
    case Connective::EquivQ: return " = ";
    case Connective::Equiv0: return " =0= ";
  }
  return "?";
}

void render_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Variable:
      out += 'p';
      out += std::to_string(f.var_index());
      return;
    case Formula::Kind::Negation: {
      out += '~';
      const Formula& c = f.child();
      if (level(c) < 5) {
        out += '(';
        render_to(c, out);
        out += ')';
      } else {
        render_to(c, out);
      }
      return;
    }
    case Formula::Kind::Disjunction:
    case Formula::Kind::Sugar: {
      int lv = level(f);
      auto side = [&](const Formula& c) {
        if (level(c) <= lv) {
          out += '(';
          render_to(c, out);
          out += ')';
        } else {
          render_to(c, out);
        }
      };
      side(f.left());
      out += op_text(f);
      side(f.right());
      return;
    }
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_to(f, out);
  return out;
}

// --------------------------------------------------------------------------
// Expansion
// --------------------------------------------------------------------------

namespace {

// Primitive conjunction of already-primitive operands.
Formula pc(const Formula& a, const Formula& b) {
  return neg(disj(neg(a), neg(b)));
}

Formula expand_template(Connective c, const Formula& a, const Formula& b) {
  switch (c) {
    case Connective::Conj:
      return pc(a, b);
    case Connective::Imp0:
      return disj(neg(a), b);
    case Connective::Imp1:
      return disj(neg(a), pc(a, b));
    case Connective::Imp2:
      return expand_template(Connective::Imp1, neg(b), neg(a));
    case Connective::Imp3:
      return disj(disj(pc(neg(a), b), pc(neg(a), neg(b))), pc(a, disj(neg(a), b)));
    case Connective::Imp4:
      return expand_template(Connective::Imp3, neg(b), neg(a));
    case Connective::Imp5:
      return disj(disj(pc(a, b), pc(neg(a), b)), pc(neg(a), neg(b)));
    case Connective::EquivQ:
      return disj(pc(a, b), pc(neg(a), neg(b)));
    case Connective::Equiv0:
      return pc(disj(neg(a), b), disj(neg(b), a));
  }
  throw std::logic_error("unhandled connective");
}

}  // namespace

Formula expand(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Variable:
      return f;
    case Formula::Kind::Negation:
      return neg(expand(f.child()));
    case Formula::Kind::Disjunction:
      return disj(expand(f.left()), expand(f.right()));
    case Formula::Kind::Sugar:
      return expand_template(f.connective(), expand(f.left()), expand(f.right()));
  }
  throw std::logic_error("unhandled formula kind");
}

namespace {

void collect_vars(const Formula& f, std::vector<int>& out) {
  switch (f.kind()) {
    case Formula::Kind::Variable:
      out.push_back(f.var_index());
      return;
    case Formula::Kind::Negation:
      collect_vars(f.child(), out);
      return;
    default:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
  }
}

}  // namespace

std::vector<int> variables(const Formula& f) {
  std::vector<int> out;
  collect_vars(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace olmc
