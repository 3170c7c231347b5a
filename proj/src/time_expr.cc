#include "fracdelay/time_expr.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fracdelay/errors.h"

namespace fracdelay {

enum class Func { kSin, kCos, kTan, kExp, kLog, kSqrt, kAbs };

struct TimeExpr::Node {
  enum class Kind { kNumber, kVariable, kPi, kE, kNegate, kBinary, kCall };

  Kind kind = Kind::kNumber;
  double value = 0.0;
  char op = 0;
  Func func = Func::kSin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = TimeExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr int kMaxDepth = 256;

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions = {{
    {"sin", Func::kSin},
    {"cos", Func::kCos},
    {"tan", Func::kTan},
    {"exp", Func::kExp},
    {"log", Func::kLog},
    {"sqrt", Func::kSqrt},
    {"abs", Func::kAbs},
}};

std::string_view FuncName(Func f) {
  for (const auto& [name, func] : kFunctions) {
    if (func == f) return name;
  }
  return "?";
}

const std::vector<std::string>& OperandStart() {
  static const std::vector<std::string> kStart = {"number", "identifier", "(",
                                                  "-"};
  return kStart;
}

std::string JoinExpected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += ", ";
    out += "'" + expected[i] + "'";
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr ParseAll() {
    NodePtr root = ParseExpr();
    SkipSpace();
    if (pos_ != src_.size()) {
      SyntaxError({"+", "-", "*", "/", "^", ")", "end of input"});
    }
    return root;
  }

 private:
  [[noreturn]] void SyntaxError(std::vector<std::string> expected) {
    std::string found = pos_ < src_.size()
                            ? "'" + std::string(1, src_[pos_]) + "'"
                            : std::string("end of input");
    std::string msg = "syntax error at offset " + std::to_string(pos_) +
                      ": found " + found + ", expected one of " +
                      JoinExpected(expected);
    throw ParseError(ParseError::Kind::kSyntax, pos_, std::move(expected),
                     msg);
  }

  void SkipSpace() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(char c) {
    SkipSpace();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void Enter() {
    if (++depth_ > kMaxDepth) {
      throw ParseError(ParseError::Kind::kSyntax, pos_, {},
                       "expression nested deeper than " +
                           std::to_string(kMaxDepth) + " levels at offset " +
                           std::to_string(pos_));
    }
  }

  static NodePtr MakeBinary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kBinary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  NodePtr ParseExpr() {
    Enter();
    NodePtr lhs = ParseTerm();
    for (;;) {
      if (Accept('+')) {
        lhs = MakeBinary('+', lhs, ParseTerm());
      } else if (Accept('-')) {
        lhs = MakeBinary('-', lhs, ParseTerm());
      } else {
        break;
      }
    }
    --depth_;
    return lhs;
  }

  NodePtr ParseTerm() {
    NodePtr lhs = ParseUnary();
    for (;;) {
      if (Accept('*')) {
        lhs = MakeBinary('*', lhs, ParseUnary());
      } else if (Accept('/')) {
        lhs = MakeBinary('/', lhs, ParseUnary());
      } else {
        break;
      }
    }
    return lhs;
  }

  NodePtr ParseUnary() {
    Enter();
    NodePtr out;
    if (Accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::kNegate;
      n->lhs = ParseUnary();
      out = n;
    } else {
      out = ParsePower();
    }
    --depth_;
    return out;
  }

  NodePtr ParsePower() {
    NodePtr base = ParsePrimary();
    if (Accept('^')) return MakeBinary('^', base, ParseUnary());
    return base;
  }

  NodePtr ParsePrimary() {
    SkipSpace();
    if (pos_ >= src_.size()) SyntaxError(OperandStart());
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return ParseNumber();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return ParseIdentifier();
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = ParseExpr();
      if (!Accept(')')) SyntaxError({")", "+", "-", "*", "/", "^"});
      return inner;
    }
    SyntaxError(OperandStart());
  }

  NodePtr ParseNumber() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      SyntaxError({"number"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      // Only an exponent if digits follow; otherwise "2e" is 2 then `e`,
      // which the caller rejects as a syntax error.
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
        ++look;
      }
      if (look < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      pos_ = start;
      SyntaxError({"finite number"});
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kNumber;
    n->value = value;
    return n;
  }

  NodePtr ParseIdentifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    auto n = std::make_shared<Node>();
    if (name == "t" || name == "pi" || name == "e") {
      n->kind = name == "t"    ? Node::Kind::kVariable
                : name == "pi" ? Node::Kind::kPi
                               : Node::Kind::kE;
      SkipSpace();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        throw ParseError(ParseError::Kind::kArity, start, {},
                         "'" + std::string(name) + "' at offset " +
                             std::to_string(start) +
                             " is not a function and takes no arguments");
      }
      return n;
    }
    for (const auto& [fname, func] : kFunctions) {
      if (name != fname) continue;
      if (!Accept('(')) SyntaxError({"("});
      n->kind = Node::Kind::kCall;
      n->func = func;
      n->lhs = ParseExpr();
      SkipSpace();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        throw ParseError(ParseError::Kind::kArity, pos_, {")"},
                         "function '" + std::string(fname) +
                             "' takes exactly 1 argument (extra argument at "
                             "offset " +
                             std::to_string(pos_) + ")");
      }
      if (!Accept(')')) SyntaxError({")", "+", "-", "*", "/", "^"});
      return n;
    }
    std::vector<std::string> known = {"t", "pi", "e"};
    for (const auto& entry : kFunctions) known.emplace_back(entry.first);
    throw ParseError(ParseError::Kind::kUnknownIdentifier, start, known,
                     "unknown identifier '" + std::string(name) +
                         "' at offset " + std::to_string(start));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

[[noreturn]] void Fail(const std::string& what, double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", t);
  throw EvalError(what + " at t = " + buf);
}

double Checked(double v, double t) {
  if (!std::isfinite(v)) Fail("non-finite value", t);
  return v;
}

double EvalNode(const Node& n, double t) {
  switch (n.kind) {
    case Node::Kind::kNumber:
      return n.value;
    case Node::Kind::kVariable:
      return t;
    case Node::Kind::kPi:
      return std::numbers::pi;
    case Node::Kind::kE:
      return std::numbers::e;
    case Node::Kind::kNegate:
      return -EvalNode(*n.lhs, t);
    case Node::Kind::kBinary: {
      const double a = EvalNode(*n.lhs, t);
      const double b = EvalNode(*n.rhs, t);
      switch (n.op) {
        case '+':
          return Checked(a + b, t);
        case '-':
          return Checked(a - b, t);
        case '*':
          return Checked(a * b, t);
        case '/':
          if (b == 0.0) Fail("division by zero", t);
          return Checked(a / b, t);
        default:
          return Checked(std::pow(a, b), t);
      }
    }
    case Node::Kind::kCall: {
      const double a = EvalNode(*n.lhs, t);
      switch (n.func) {
        case Func::kSin:
          return std::sin(a);
        case Func::kCos:
          return std::cos(a);
        case Func::kTan:
          return Checked(std::tan(a), t);
        case Func::kExp:
          return Checked(std::exp(a), t);
        case Func::kLog:
          if (!(a > 0.0)) Fail("log of non-positive value", t);
          return std::log(a);
        case Func::kSqrt:
          if (a < 0.0) Fail("sqrt of negative value", t);
          return std::sqrt(a);
        case Func::kAbs:
          return std::abs(a);
      }
    }
  }
  return 0.0;
}

std::string FormatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::kNumber:
      out += FormatNumber(n.value);
      return;
    case Node::Kind::kVariable:
      out += "t";
      return;
    case Node::Kind::kPi:
      out += "pi";
      return;
    case Node::Kind::kE:
      out += "e";
      return;
    case Node::Kind::kNegate:
      out += "(-";
      Print(*n.lhs, out);
      out += ")";
      return;
    case Node::Kind::kBinary:
      out += "(";
      Print(*n.lhs, out);
      out += ' ';
      out += n.op;
      out += ' ';
      Print(*n.rhs, out);
      out += ")";
      return;
    case Node::Kind::kCall:
      out += FuncName(n.func);
      out += "(";
      Print(*n.lhs, out);
      out += ")";
      return;
  }
}

bool MentionsT(const Node& n) {
  if (n.kind == Node::Kind::kVariable) return true;
  if (n.lhs && MentionsT(*n.lhs)) return true;
  return n.rhs && MentionsT(*n.rhs);
}

NodePtr NumberNode(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kNumber;
  n->value = v;
  return n;
}

}  // namespace

TimeExpr::TimeExpr() : TimeExpr(NumberNode(0.0), "0") {}

TimeExpr::TimeExpr(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

TimeExpr TimeExpr::Parse(std::string_view source) {
  Parser parser(source);
  return TimeExpr(parser.ParseAll(), std::string(source));
}

TimeExpr TimeExpr::Constant(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("TimeExpr::Constant: value must be finite");
  }
  // Negative values print with a leading minus, which parses as negation of
  // the magnitude: the same double.
  return Parse(FormatNumber(value));
}

double TimeExpr::Eval(double t) const {
  return Checked(EvalNode(*root_, t), t);
}

std::string TimeExpr::ToString() const {
  std::string out;
  Print(*root_, out);
  return out;
}

bool TimeExpr::IsZeroLiteral() const {
  const Node* n = root_.get();
  while (n->kind == Node::Kind::kNegate) n = n->lhs.get();
  return n->kind == Node::Kind::kNumber && n->value == 0.0;
}

bool TimeExpr::IsConstant() const { return !MentionsT(*root_); }

}  // namespace fracdelay
