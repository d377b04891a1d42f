#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "oblique/errors.hpp"

namespace oblique::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class Func { Sin, Cos, Tan, Sqrt, Exp, Log, Abs };

struct Expr;

/// ASTs are immutable after parse; shared ownership lets jobs and
/// configs copy them freely.
using ExprPtr = std::shared_ptr<const Expr>;

struct Number {
  double value;
};

/// One of the two surface variables, 'x' or 'y'.
struct Variable {
  char name;
};

/// A free parameter such as the a, b of sin((x-y)/a)*cos((x+y)/b);
/// bound at evaluation time through a ParamEnv.
struct Parameter {
  std::string name;
};

struct Negate {
  ExprPtr operand;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Call {
  Func func;
  ExprPtr arg;
};

struct Expr {
  std::variant<Number, Variable, Parameter, Negate, Binary, Call> node;
};

/// Bindings for the free parameters of an expression.
using ParamEnv = std::map<std::string, double>;

/// Parses `source` against the grammar
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?        (right-associative)
///   primary := number | 'x' | 'y' | ident | func '(' expr ')' | '(' expr ')'
/// Unary minus binds looser than '^', so -x^2 is -(x^2). 'pi' and 'e'
/// are built-in constants; recognized functions are sin, cos, tan,
/// sqrt, exp, log, abs. Throws ParseError with the byte offset of the
/// failure.
ExprPtr parse(std::string_view source);

/// IEEE-style evaluation: division by zero, log of a non-positive
/// value and friends yield non-finite results rather than errors.
/// Integer exponents with |n| <= 16 are computed by repeated
/// multiplication; anything else goes through pow(). Throws
/// UnboundParameter for a parameter missing from `env`.
double evaluate(const Expr& ast, double x, double y, const ParamEnv& env = {});

/// The set of parameter names appearing in the AST (x, y and the
/// built-in constants excluded).
std::set<std::string> free_parameters(const Expr& ast);

/// Renders the AST back to parseable text. parse(unparse(a)) yields an
/// AST equal to a.
std::string unparse(const Expr& ast);

/// Structural equality; number literals compare exactly.
bool equal(const Expr& a, const Expr& b);

const char* func_name(Func f);

}  // namespace oblique::expr
