#include "tpds/expr.hpp"

#include "tpds/error.hpp"
#include "tpds/matrix.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace tpds {

struct Expr::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  int index = 0;
  BinaryOp op = BinaryOp::Add;
  UnaryFn fn = UnaryFn::Sin;
  std::optional<Expr> a;  // optional so that a default Expr does not recurse
  std::optional<Expr> b;
  int max_state = 0;
  bool time = false;
  bool input = false;
};

namespace {

struct FnName {
  std::string_view name;
  UnaryFn fn;
};

constexpr std::array<FnName, 10> kFunctions{{{"sin", UnaryFn::Sin},
                                             {"cos", UnaryFn::Cos},
                                             {"tan", UnaryFn::Tan},
                                             {"sinh", UnaryFn::Sinh},
                                             {"cosh", UnaryFn::Cosh},
                                             {"tanh", UnaryFn::Tanh},
                                             {"exp", UnaryFn::Exp},
                                             {"log", UnaryFn::Log},
                                             {"sqrt", UnaryFn::Sqrt},
                                             {"abs", UnaryFn::Abs}}};

std::string_view fn_name(UnaryFn fn) {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

}  // namespace

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::time() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Time;
  n->time = true;
  return Expr(std::move(n));
}

Expr Expr::state(int one_based_index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::State;
  n->index = one_based_index;
  n->max_state = one_based_index;
  return Expr(std::move(n));
}

Expr Expr::input() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Input;
  n->input = true;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->max_state = operand.max_state_index();
  n->time = operand.uses_time();
  n->input = operand.uses_input();
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->max_state = std::max(lhs.max_state_index(), rhs.max_state_index());
  n->time = lhs.uses_time() || rhs.uses_time();
  n->input = lhs.uses_input() || rhs.uses_input();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::call(UnaryFn fn, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->fn = fn;
  n->max_state = arg.max_state_index();
  n->time = arg.uses_time();
  n->input = arg.uses_input();
  n->a = std::move(arg);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
int Expr::state_index() const { return node_->index; }
BinaryOp Expr::op() const { return node_->op; }
UnaryFn Expr::fn() const { return node_->fn; }
const Expr& Expr::lhs() const { return *node_->a; }
const Expr& Expr::rhs() const { return *node_->b; }
int Expr::max_state_index() const { return node_->max_state; }
bool Expr::uses_time() const { return node_->time; }
bool Expr::uses_input() const { return node_->input; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Number: return a.value() == b.value();
    case Expr::Kind::Time:
    case Expr::Kind::Input: return true;
    case Expr::Kind::State: return a.state_index() == b.state_index();
    case Expr::Kind::Negate: return a.lhs() == b.lhs();
    case Expr::Kind::Binary: return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Expr::Kind::Call: return a.fn() == b.fn() && a.lhs() == b.lhs();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view src, const Scope& scope) : src_(src), scope_(scope) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != src_.size()) fail("end of input");
    return e;
  }

 private:
  std::string_view src_;
  Scope scope_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::string_view expected) const {
    std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw Error(ErrorCode::SyntaxError,
                "offset " + std::to_string(pos_) + ": expected " + std::string(expected) + ", found " + found);
  }

  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::negate(unary());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, unary());
    return base;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("number, identifier or '('");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      if (!accept(')')) fail("')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("number, identifier or '('");
  }

  Expr number() {
    double v = 0.0;
    const char* first = src_.data() + pos_;
    auto [p, ec] = std::from_chars(first, src_.data() + src_.size(), v, std::chars_format::general);
    if (ec != std::errc{}) fail("number");
    pos_ += static_cast<std::size_t>(p - first);
    return Expr::number(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    for (const auto& f : kFunctions) {
      if (f.name == name) {
        if (!accept('(')) fail("'(' after function name");
        Expr arg = expression();
        if (!accept(')')) fail("')'");
        return Expr::call(f.fn, arg);
      }
    }
    auto unknown = [&](const std::string& why) {
      throw Error(ErrorCode::UnknownIdentifier,
                  "offset " + std::to_string(start) + ": '" + std::string(name) + "' " + why);
    };
    if (name == "pi") return Expr::number(std::numbers::pi);
    if (name == "e") return Expr::number(std::numbers::e);
    if (name == "t") {
      if (!scope_.allow_time) unknown("(time) is not available here");
      return Expr::time();
    }
    if (name == "u") {
      if (!scope_.allow_input) unknown("(input) is not available here");
      return Expr::input();
    }
    if (name.size() >= 2 && name[0] == 'x') {
      int k = 0;
      auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
      if (ec == std::errc{} && p == name.data() + name.size() && k >= 1 && name[1] != '0') {
        if (scope_.state_dim == 0) unknown("(state variable) is not available in a time-only expression");
        if (scope_.state_dim > 0 && k > scope_.state_dim)
          unknown("exceeds the state dimension " + std::to_string(scope_.state_dim));
        return Expr::state(k);
      }
    }
    unknown("is not a known variable, constant or function");
    return {};
  }
};

}  // namespace

Expr parse_expr(std::string_view source, const Scope& scope) { return Parser(source, scope).parse(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain(const std::string& what) { throw Error(ErrorCode::DomainError, what); }

double checked(double v, const char* what) {
  if (!std::isfinite(v)) domain(std::string("non-finite result in ") + what);
  return v;
}

}  // namespace

double evaluate(const Expr& e, const EvalContext& ctx) {
  switch (e.kind()) {
    case Expr::Kind::Number: return e.value();
    case Expr::Kind::Time: return ctx.t;
    case Expr::Kind::Input:
      if (!ctx.u) throw Error(ErrorCode::UnboundVariable, "input u is not bound");
      return *ctx.u;
    case Expr::Kind::State: {
      const auto k = static_cast<std::size_t>(e.state_index());
      if (!ctx.x || k > ctx.x->size()) {
        throw Error(ErrorCode::UnboundVariable, "state variable x" + std::to_string(k) + " is not bound");
      }
      return (*ctx.x)[k - 1];
    }
    case Expr::Kind::Negate: return -evaluate(e.lhs(), ctx);
    case Expr::Kind::Binary: {
      const double a = evaluate(e.lhs(), ctx);
      const double b = evaluate(e.rhs(), ctx);
      switch (e.op()) {
        case BinaryOp::Add: return checked(a + b, "addition");
        case BinaryOp::Sub: return checked(a - b, "subtraction");
        case BinaryOp::Mul: return checked(a * b, "multiplication");
        case BinaryOp::Div:
          if (b == 0.0) domain("division by zero");
          return checked(a / b, "division");
        case BinaryOp::Pow: return checked(std::pow(a, b), "power");
      }
      break;
    }
    case Expr::Kind::Call: {
      const double a = evaluate(e.lhs(), ctx);
      switch (e.fn()) {
        case UnaryFn::Sin: return std::sin(a);
        case UnaryFn::Cos: return std::cos(a);
        case UnaryFn::Tan: return checked(std::tan(a), "tan");
        case UnaryFn::Sinh: return checked(std::sinh(a), "sinh");
        case UnaryFn::Cosh: return checked(std::cosh(a), "cosh");
        case UnaryFn::Tanh: return std::tanh(a);
        case UnaryFn::Exp: return checked(std::exp(a), "exp");
        case UnaryFn::Log:
          if (!(a > 0.0)) domain("log of a nonpositive argument");
          return std::log(a);
        case UnaryFn::Sqrt:
          if (a < 0.0) domain("sqrt of a negative argument");
          return std::sqrt(a);
        case UnaryFn::Abs: return std::abs(a);
      }
      break;
    }
  }
  domain("malformed expression");
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Binary:
      switch (e.op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
      return 1;
    case Expr::Kind::Negate: return 3;
    case Expr::Kind::Number: return e.value() < 0 || std::signbit(e.value()) ? 0 : 5;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Number: out += format_double(e.value()); return;
    case Expr::Kind::Time: out += 't'; return;
    case Expr::Kind::Input: out += 'u'; return;
    case Expr::Kind::State: out += 'x' + std::to_string(e.state_index()); return;
    case Expr::Kind::Negate:
      out += '-';
      print_child(e.lhs(), 3, out);
      return;
    case Expr::Kind::Call:
      out += fn_name(e.fn());
      out += '(';
      print(e.lhs(), out);
      out += ')';
      return;
    case Expr::Kind::Binary: {
      const int p = precedence(e);
      if (e.op() == BinaryOp::Pow) {
        print_child(e.lhs(), 5, out);
        out += '^';
        print_child(e.rhs(), 3, out);
        return;
      }
      print_child(e.lhs(), p, out);
      switch (e.op()) {
        case BinaryOp::Add: out += " + "; break;
        case BinaryOp::Sub: out += " - "; break;
        case BinaryOp::Mul: out += '*'; break;
        case BinaryOp::Div: out += '/'; break;
        case BinaryOp::Pow: break;
      }
      print_child(e.rhs(), p + 1, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace tpds
