#include "oblique/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace oblique::expr {

namespace {

enum class TokenKind {
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  Comma,
  End,
};

struct Token {
  TokenKind kind{TokenKind::End};
  std::size_t offset{0};
  double number{0};
  std::string text;
};

Token plain_token(TokenKind kind, std::size_t offset) {
  Token t;
  t.kind = kind;
  t.offset = offset;
  return t;
}

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"sqrt", Func::Sqrt},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"abs", Func::Abs},
}};

std::optional<Func> lookup_function(std::string_view name) {
  for (const auto& [fname, f] : kFunctions) {
    if (fname == name) return f;
  }
  return std::nullopt;
}

class Lexer {
 public:
  explicit Lexer(std::string_view source) : source_(source) {}

  Token next() {
    while (pos_ < source_.size() &&
           std::isspace(static_cast<unsigned char>(source_[pos_]))) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= source_.size()) {
      return plain_token(TokenKind::End, start);
    }
    const char c = source_[pos_];
    switch (c) {
      case '+':
        ++pos_;
        return plain_token(TokenKind::Plus, start);
      case '-':
        ++pos_;
        return plain_token(TokenKind::Minus, start);
      case '*':
        ++pos_;
        return plain_token(TokenKind::Star, start);
      case '/':
        ++pos_;
        return plain_token(TokenKind::Slash, start);
      case '^':
        ++pos_;
        return plain_token(TokenKind::Caret, start);
      case '(':
        ++pos_;
        return plain_token(TokenKind::LParen, start);
      case ')':
        ++pos_;
        return plain_token(TokenKind::RParen, start);
      case ',':
        ++pos_;
        return plain_token(TokenKind::Comma, start);
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lex_number(start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < source_.size() &&
             (std::isalnum(static_cast<unsigned char>(source_[pos_])) ||
              source_[pos_] == '_')) {
        ++pos_;
      }
      Token t = plain_token(TokenKind::Ident, start);
      t.text = std::string(source_.substr(start, pos_ - start));
      return t;
    }
    throw ParseError(start, "a number, name, operator, or parenthesis");
  }

 private:
  Token lex_number(std::size_t start) {
    std::size_t end = pos_;
    bool have_digits = false;
    while (end < source_.size() &&
           std::isdigit(static_cast<unsigned char>(source_[end]))) {
      ++end;
      have_digits = true;
    }
    if (end < source_.size() && source_[end] == '.') {
      ++end;
      while (end < source_.size() &&
             std::isdigit(static_cast<unsigned char>(source_[end]))) {
        ++end;
        have_digits = true;
      }
    }
    if (!have_digits) {
      throw ParseError(start, "a digit");
    }
    if (end < source_.size() && (source_[end] == 'e' || source_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < source_.size() &&
          (source_[exp] == '+' || source_[exp] == '-')) {
        ++exp;
      }
      if (exp >= source_.size() ||
          !std::isdigit(static_cast<unsigned char>(source_[exp]))) {
        throw ParseError(exp, "an exponent digit");
      }
      end = exp;
      while (end < source_.size() &&
             std::isdigit(static_cast<unsigned char>(source_[end]))) {
        ++end;
      }
    }
    double value = 0;
    const char* first = source_.data() + start;
    const char* last = source_.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw ParseError(start, "a valid number literal");
    }
    pos_ = end;
    Token t = plain_token(TokenKind::Number, start);
    t.number = value;
    return t;
  }

  std::string_view source_;
  std::size_t pos_{0};
};

class Parser {
 public:
  explicit Parser(std::string_view source) : lexer_(source) { advance(); }

  ExprPtr run() {
    ExprPtr e = parse_expr();
    if (current_.kind != TokenKind::End) {
      throw ParseError(current_.offset, "an operator or end of input");
    }
    return e;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  bool accept(TokenKind kind) {
    if (current_.kind == kind) {
      advance();
      return true;
    }
    return false;
  }

  void expect(TokenKind kind, const char* what) {
    if (!accept(kind)) {
      throw ParseError(current_.offset, what);
    }
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept(TokenKind::Plus)) {
        lhs = make(Binary{BinaryOp::Add, std::move(lhs), parse_term()});
      } else if (accept(TokenKind::Minus)) {
        lhs = make(Binary{BinaryOp::Sub, std::move(lhs), parse_term()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (accept(TokenKind::Star)) {
        lhs = make(Binary{BinaryOp::Mul, std::move(lhs), parse_unary()});
      } else if (accept(TokenKind::Slash)) {
        lhs = make(Binary{BinaryOp::Div, std::move(lhs), parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept(TokenKind::Minus)) {
      return make(Negate{parse_unary()});
    }
    return parse_power();
  }

  // Right-associative, and the exponent may carry its own sign:
  // 2^3^2 is 2^(3^2), x^-2 is x^(-2).
  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (accept(TokenKind::Caret)) {
      return make(Binary{BinaryOp::Pow, std::move(base), parse_unary()});
    }
    return base;
  }

  ExprPtr parse_primary() {
    if (current_.kind == TokenKind::Number) {
      const double v = current_.number;
      advance();
      return make(Number{v});
    }
    if (current_.kind == TokenKind::Ident) {
      const std::string name = current_.text;
      const std::size_t at = current_.offset;
      advance();
      if (accept(TokenKind::LParen)) {
        const auto func = lookup_function(name);
        if (!func) {
          throw ParseError(at, "a known function (sin, cos, tan, sqrt, exp, "
                               "log, abs), got '" +
                               name + "'");
        }
        ExprPtr arg = parse_expr();
        if (current_.kind == TokenKind::Comma) {
          throw ParseError(current_.offset,
                           "')' — functions take exactly one argument");
        }
        expect(TokenKind::RParen, "')'");
        return make(Call{*func, std::move(arg)});
      }
      if (lookup_function(name)) {
        throw ParseError(at, "'(' after function '" + name + "'");
      }
      if (name == "x" || name == "y") {
        return make(Variable{name[0]});
      }
      if (name == "pi") {
        return make(Number{std::numbers::pi});
      }
      if (name == "e") {
        return make(Number{std::numbers::e});
      }
      return make(Parameter{std::move(name)});
    }
    if (accept(TokenKind::LParen)) {
      ExprPtr e = parse_expr();
      expect(TokenKind::RParen, "')'");
      return e;
    }
    throw ParseError(current_.offset, "a number, name, or '('");
  }

  template <typename Node>
  static ExprPtr make(Node&& node) {
    return std::make_shared<const Expr>(Expr{std::forward<Node>(node)});
  }

  Lexer lexer_;
  Token current_;
};

// x^n for integral n in [-16, 16] by repeated multiplication, so small
// integer powers are deterministic and exact where the inputs are.
double eval_pow(double base, double exponent) {
  if (std::isfinite(exponent) && exponent == std::trunc(exponent) &&
      std::abs(exponent) <= 16) {
    const int n = static_cast<int>(exponent);
    double r = 1.0;
    for (int i = 0; i < std::abs(n); ++i) {
      r *= base;
    }
    return n < 0 ? 1.0 / r : r;
  }
  return std::pow(base, exponent);
}

double eval_call(Func f, double a) {
  switch (f) {
    case Func::Sin:
      return std::sin(a);
    case Func::Cos:
      return std::cos(a);
    case Func::Tan:
      return std::tan(a);
    case Func::Sqrt:
      return std::sqrt(a);
    case Func::Exp:
      return std::exp(a);
    case Func::Log:
      return std::log(a);
    case Func::Abs:
      return std::abs(a);
  }
  return std::nan("");
}

void collect_parameters(const Expr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Parameter>) {
          out.insert(node.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_parameters(*node.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_parameters(*node.lhs, out);
          collect_parameters(*node.rhs, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          collect_parameters(*node.arg, out);
        }
      },
      e.node);
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return '+';
    case BinaryOp::Sub:
      return '-';
    case BinaryOp::Mul:
      return '*';
    case BinaryOp::Div:
      return '/';
    case BinaryOp::Pow:
      return '^';
  }
  return '?';
}

}  // namespace

ExprPtr parse(std::string_view source) {
  if (source.empty()) {
    throw ParseError(0, "a non-empty expression");
  }
  return Parser(source).run();
}

double evaluate(const Expr& ast, double x, double y, const ParamEnv& env) {
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Number>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return node.name == 'x' ? x : y;
        } else if constexpr (std::is_same_v<T, Parameter>) {
          const auto it = env.find(node.name);
          if (it == env.end()) {
            throw UnboundParameter(node.name);
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -evaluate(*node.operand, x, y, env);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double l = evaluate(*node.lhs, x, y, env);
          const double r = evaluate(*node.rhs, x, y, env);
          switch (node.op) {
            case BinaryOp::Add:
              return l + r;
            case BinaryOp::Sub:
              return l - r;
            case BinaryOp::Mul:
              return l * r;
            case BinaryOp::Div:
              return l / r;
            case BinaryOp::Pow:
              return eval_pow(l, r);
          }
          return std::nan("");
        } else {
          return eval_call(node.func, evaluate(*node.arg, x, y, env));
        }
      },
      ast.node);
}

std::set<std::string> free_parameters(const Expr& ast) {
  std::set<std::string> out;
  collect_parameters(ast, out);
  return out;
}

std::string unparse(const Expr& ast) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Number>) {
          return format_number(node.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return std::string(1, node.name);
        } else if constexpr (std::is_same_v<T, Parameter>) {
          return node.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "-(" + unparse(*node.operand) + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + unparse(*node.lhs) + ")" + op_char(node.op) + "(" +
                 unparse(*node.rhs) + ")";
        } else {
          return std::string(func_name(node.func)) + "(" +
                 unparse(*node.arg) + ")";
        }
      },
      ast.node);
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) {
    return false;
  }
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Number>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<T, Parameter>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return equal(*na.operand, *nb.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return na.op == nb.op && equal(*na.lhs, *nb.lhs) &&
                 equal(*na.rhs, *nb.rhs);
        } else {
          return na.func == nb.func && equal(*na.arg, *nb.arg);
        }
      },
      a.node);
}

const char* func_name(Func f) {
  for (const auto& [name, func] : kFunctions) {
    if (func == f) return name.data();
  }
  return "?";
}

}  // namespace oblique::expr
