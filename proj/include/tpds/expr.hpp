#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tpds {

enum class UnaryFn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

/// Immutable expression tree over t, x1..xn, u. Nodes are shared, so copies are cheap.
class Expr {
 public:
  enum class Kind { Number, Time, State, Input, Negate, Binary, Call };

  Expr();  // the literal 0

  static Expr number(double v);
  static Expr time();
  static Expr state(int one_based_index);
  static Expr input();
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(UnaryFn fn, Expr arg);

  Kind kind() const;
  double value() const;      // Number
  int state_index() const;   // State (1-based)
  BinaryOp op() const;       // Binary
  UnaryFn fn() const;        // Call
  const Expr& lhs() const;   // Binary, or the operand of Negate/Call
  const Expr& rhs() const;   // Binary

  /// Largest state index referenced (0 if none).
  int max_state_index() const;
  bool uses_time() const;
  bool uses_input() const;
  bool is_constant() const { return max_state_index() == 0 && !uses_time() && !uses_input(); }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Variables an expression may refer to; parse rejects anything outside it with UnknownIdentifier.
struct Scope {
  int state_dim = -1;        // -1: any x<k>; 0: no state variables
  bool allow_input = true;
  bool allow_time = true;

  static Scope any() { return {}; }
  static Scope time_only() { return {0, false, true}; }
  static Scope state(int n, bool with_input) { return {n, with_input, true}; }
};

/// Recursive-descent parser. Precedence: ^ (right assoc) > unary minus > * / > + -.
/// Constants `pi` and `e` are accepted. SyntaxError messages start with the byte offset.
Expr parse_expr(std::string_view source, const Scope& scope = Scope::any());

struct EvalContext {
  double t = 0.0;
  std::optional<std::span<const double>> x;
  std::optional<double> u;
};

/// IEEE double evaluation. Throws UnboundVariable and DomainError (division by zero,
/// log/sqrt outside the domain, non-finite results).
double evaluate(const Expr& e, const EvalContext& ctx);

/// Text that parses back to a structurally identical tree.
std::string to_string(const Expr& e);

}  // namespace tpds
