#include "projinv/curve.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "projinv/error.hpp"
#include "rng.hpp"

namespace projinv {

ExprPtr make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Number;
  e->number = v;
  return e;
}

ExprPtr make_variable() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Variable;
  e->name = "t";
  return e;
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binary;
  e->op = op;
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr make_negate(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Negate;
  e->args = {std::move(operand)};
  return e;
}

ExprPtr make_call(std::string name, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Call;
  e->name = std::move(name);
  e->args = {std::move(arg)};
  return e;
}

namespace {

ExprPtr make_constant(const std::string& name, double value) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Constant;
  e->name = name;
  e->number = value;
  return e;
}

bool is_function(const std::string& name) {
  return name == "sin" || name == "cos" || name == "tan" || name == "exp" || name == "log" ||
         name == "sqrt" || name == "atan";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse_single() {
    ExprPtr e = expression();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

  std::vector<ExprPtr> parse_list() {
    std::vector<ExprPtr> out{expression()};
    skip_space();
    while (pos_ < src_.size() && src_[pos_] == ',') {
      ++pos_;
      out.push_back(expression());
      skip_space();
    }
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_ + 1); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expression() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary('+', lhs, term());
      } else if (accept('-')) {
        lhs = make_binary('-', lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary('*', lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary('/', lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) return make_negate(unary());
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) return make_binary('^', base, unary());
    return base;
  }

  ExprPtr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("expected expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("expected expression");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    if (text == ".") {
      pos_ = start;
      fail("malformed number");
    }
    return make_number(std::stod(text));
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(src_.substr(start, pos_ - start));
    if (name == "t") return make_variable();
    if (name == "pi") return make_constant(name, std::numbers::pi);
    if (name == "e") return make_constant(name, std::numbers::e);
    if (is_function(name)) {
      if (!accept('(')) fail("expected '(' after " + name);
      ExprPtr arg = expression();
      if (!accept(')')) fail("expected ')'");
      return make_call(name, arg);
    }
    throw Error(ErrorKind::UnknownIdentifier,
                "'" + name + "' at offset " + std::to_string(start + 1));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      switch (e.op) {
        case '+':
        case '-': return 1;
        case '*':
        case '/': return 2;
        default: return 4;
      }
    case Expr::Kind::Negate: return 3;
    case Expr::Kind::Number: return e.number < 0.0 ? 3 : 5;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::abs(v));
  std::string s = buf;
  // Shortest representation that still round-trips keeps printed curves tidy.
  for (int digits = 1; digits < 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, std::abs(v));
    if (std::stod(buf) == std::abs(v)) {
      s = buf;
      break;
    }
  }
  return v < 0.0 ? "-" + s : s;
}

void print(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, bool paren) {
    if (paren) out += '(';
    print(c, out);
    if (paren) out += ')';
  };
  switch (e.kind) {
    case Expr::Kind::Number: out += format_number(e.number); return;
    case Expr::Kind::Variable: out += 't'; return;
    case Expr::Kind::Constant: out += e.name; return;
    case Expr::Kind::Negate:
      out += '-';
      child(*e.args[0], precedence(*e.args[0]) < 3);
      return;
    case Expr::Kind::Call:
      out += e.name;
      out += '(';
      print(*e.args[0], out);
      out += ')';
      return;
    case Expr::Kind::Binary: {
      const int p = precedence(e);
      if (e.op == '^') {
        child(*e.args[0], precedence(*e.args[0]) <= 4);
        out += '^';
        child(*e.args[1], precedence(*e.args[1]) < 3);
      } else {
        child(*e.args[0], precedence(*e.args[0]) < p);
        out += ' ';
        out += e.op;
        out += ' ';
        child(*e.args[1], precedence(*e.args[1]) <= p);
      }
      return;
    }
  }
}

// Shared evaluator for double and Jet.
double apply_fn(const std::string& fn, double x) {
  if (fn == "sin") return std::sin(x);
  if (fn == "cos") return std::cos(x);
  if (fn == "tan") return std::tan(x);
  if (fn == "exp") return std::exp(x);
  if (fn == "atan") return std::atan(x);
  if (fn == "log") {
    if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "log of non-positive value");
    return std::log(x);
  }
  if (fn == "sqrt") {
    if (x < 0.0) throw Error(ErrorKind::DomainError, "sqrt of negative value");
    return std::sqrt(x);
  }
  throw Error(ErrorKind::UnknownIdentifier, fn);
}

Jet apply_fn(const std::string& fn, const Jet& x) {
  if (fn == "sin") return sin(x);
  if (fn == "cos") return cos(x);
  if (fn == "tan") return tan(x);
  if (fn == "exp") return exp(x);
  if (fn == "atan") return atan(x);
  if (fn == "log") return log(x);
  if (fn == "sqrt") return sqrt(x);
  throw Error(ErrorKind::UnknownIdentifier, fn);
}

double lift(double v, double /*like*/) { return v; }
Jet lift(double v, const Jet& like) { return Jet::constant(like.base_point(), v, like.order()); }

double raise(double a, const Expr& exponent, double t) {
  const double r = evaluate(exponent, t);
  if (r != std::round(r) && a < 0.0) {
    throw Error(ErrorKind::NegativeBaseFractionalPower, "negative base with fractional exponent");
  }
  return std::pow(a, r);
}

Jet raise(const Jet& a, const Expr& exponent, const Jet& t) {
  if (!depends_on_t(exponent)) return pow(a, evaluate(exponent, t.value()));
  return exp(evaluate(exponent, t) * log(a));
}

template <typename T>
T eval_impl(const Expr& e, const T& t) {
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Constant: return lift(e.number, t);
    case Expr::Kind::Variable: return t;
    case Expr::Kind::Negate: return -eval_impl(*e.args[0], t);
    case Expr::Kind::Call: return apply_fn(e.name, eval_impl(*e.args[0], t));
    case Expr::Kind::Binary: {
      if (e.op == '^') return raise(eval_impl(*e.args[0], t), *e.args[1], t);
      const T a = eval_impl(*e.args[0], t);
      const T b = eval_impl(*e.args[1], t);
      switch (e.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default: {
          if constexpr (std::is_same_v<T, double>) {
            if (b == 0.0) throw Error(ErrorKind::DivisionByNearZero, "division by zero");
          }
          return a / b;
        }
      }
    }
  }
  throw Error(ErrorKind::InvalidArgument, "corrupt expression node");
}

}  // namespace

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.op != b.op || a.args.size() != b.args.size()) return false;
  if ((a.kind == Expr::Kind::Number || a.kind == Expr::Kind::Constant) && a.number != b.number) {
    return false;
  }
  if ((a.kind == Expr::Kind::Call || a.kind == Expr::Kind::Constant) && a.name != b.name) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

ExprPtr parse_expression(std::string_view source) { return Parser(source).parse_single(); }

std::string to_text(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool depends_on_t(const Expr& e) {
  if (e.kind == Expr::Kind::Variable) return true;
  for (const auto& a : e.args) {
    if (depends_on_t(*a)) return true;
  }
  return false;
}

double evaluate(const Expr& e, double t) { return eval_impl<double>(e, t); }
Jet evaluate(const Expr& e, const Jet& t) { return eval_impl<Jet>(e, t); }

CurveSpec parse_curve(std::string_view source, std::string label) {
  CurveSpec c;
  c.components = Parser(source).parse_list();
  if (c.components.size() != 2 && c.components.size() != 3) {
    throw Error(ErrorKind::DimensionMismatch,
                "curve needs 2 or 3 components, got " + std::to_string(c.components.size()));
  }
  c.dimension = static_cast<int>(c.components.size());
  c.label = label.empty() ? std::string(source) : std::move(label);
  return c;
}

std::string to_text(const CurveSpec& c) {
  std::string out;
  for (std::size_t i = 0; i < c.components.size(); ++i) {
    if (i) out += ", ";
    out += to_text(*c.components[i]);
  }
  return out;
}

CurveSpec curve_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("invalid curve JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("components") || !doc["components"].is_array()) {
    throw SyntaxError("curve JSON needs a 'components' array", 1);
  }
  std::string joined;
  for (const auto& comp : doc["components"]) {
    if (!joined.empty()) joined += ", ";
    joined += comp.get<std::string>();
  }
  CurveSpec c = parse_curve(joined, doc.value("label", joined));
  if (doc.contains("dim") && doc["dim"].get<int>() != c.dimension) {
    throw Error(ErrorKind::DimensionMismatch, "'dim' does not match the component count");
  }
  return c;
}

std::string curve_to_json(const CurveSpec& c) {
  nlohmann::json doc;
  doc["label"] = c.label;
  doc["dim"] = c.dimension;
  doc["components"] = nlohmann::json::array();
  for (const auto& comp : c.components) doc["components"].push_back(to_text(*comp));
  return doc.dump();
}

SpaceCurveJet eval_space_jet(const CurveSpec& c, double t, int order) {
  if (c.dimension != 3) throw Error(ErrorKind::DimensionMismatch, "space jet of a plane curve");
  const Jet var = Jet::variable(t, order);
  return {t, evaluate(*c.components[0], var), evaluate(*c.components[1], var),
          evaluate(*c.components[2], var)};
}

PlaneCurveJet eval_plane_jet(const CurveSpec& c, double t, int order) {
  if (c.dimension != 2) throw Error(ErrorKind::DimensionMismatch, "plane jet of a space curve");
  const Jet var = Jet::variable(t, order);
  return {t, evaluate(*c.components[0], var), evaluate(*c.components[1], var)};
}

double eval_component(const CurveSpec& c, int index, double t) {
  return evaluate(*c.components.at(static_cast<std::size_t>(index)), t);
}

CurveSpec random_curve(std::uint64_t seed, int dimension, RandomCurveKind kind, int degree) {
  if (dimension != 2 && dimension != 3) {
    throw Error(ErrorKind::DimensionMismatch, "random curves are 2D or 3D");
  }
  if (degree < 3) throw Error(ErrorKind::InvalidArgument, "degree must be at least 3");
  detail::UniformSource rng(seed);
  CurveSpec c;
  c.dimension = dimension;
  for (int comp = 0; comp < dimension; ++comp) {
    const bool is_z = comp == 2;
    ExprPtr sum;
    auto add = [&sum](ExprPtr term) { sum = sum ? make_binary('+', sum, term) : term; };
    if (kind == RandomCurveKind::Poly) {
      for (int k = 0; k <= degree; ++k) {
        double coeff = rng.symmetric();
        if (k == 0 && is_z) coeff += 1.5;
        ExprPtr term = make_number(coeff);
        if (k == 1) term = make_binary('*', term, make_variable());
        if (k > 1) {
          term = make_binary('*', term,
                             make_binary('^', make_variable(), make_number(static_cast<double>(k))));
        }
        add(term);
      }
    } else {
      double constant = rng.symmetric();
      if (is_z) constant += 1.5;
      add(make_number(constant));
      for (int k = 1; k <= degree; ++k) {
        const double a = rng.symmetric();
        const double b = rng.symmetric();
        ExprPtr arg = make_binary('*', make_number(static_cast<double>(k)), make_variable());
        add(make_binary('*', make_number(a), make_call("cos", arg)));
        add(make_binary('*', make_number(b), make_call("sin", arg)));
      }
    }
    c.components.push_back(sum);
  }
  // Trig-poly z has value constant + sum a_k at t = 0; keep the same bound.
  if (kind == RandomCurveKind::TrigPoly && dimension == 3) {
    const double z0 = evaluate(*c.components[2], 0.0);
    if (z0 < 0.5) {
      c.components[2] = make_binary('+', c.components[2], make_number(0.5 - z0 + 1.0));
    }
  }
  c.label = std::string(kind == RandomCurveKind::Poly ? "poly" : "trig") + "-" +
            std::to_string(dimension) + "d-seed" + std::to_string(seed);
  return c;
}

namespace {

struct Builtin {
  const char* name;
  const char* text;
};

constexpr Builtin kBuiltins[] = {
    {"twisted_cubic", "t, t^2, t^3"},
    {"helix", "cos(t), sin(t), t"},
    {"line", "t, 1 + 2*t, 3 - t"},
    {"circle3", "cos(t), sin(t), 1"},
    {"exp_blend", "t + 0.5*t^2, exp(0.5*t) + 0.2*t^3, 1 + exp(-t) + 0.3*t^2"},
    {"unit_circle", "cos(t), sin(t)"},
    {"lower_circle", "t, -sqrt(1 - t^2)"},
    {"parabola", "t, t^2"},
    {"ellipse", "t, -sqrt(1 - t^2/4)"},
    {"exp_curve", "t, exp(t)"},
    {"cubic", "t, t^3"},
};

}  // namespace

CurveSpec builtin_curve(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) return parse_curve(b.text, b.name);
  }
  throw Error(ErrorKind::UnknownIdentifier, "no builtin curve '" + std::string(name) + "'");
}

std::vector<std::string> builtin_curve_names() {
  std::vector<std::string> names;
  for (const auto& b : kBuiltins) names.emplace_back(b.name);
  return names;
}

CurveSpec load_curve(std::string_view text_or_path) {
  for (const auto& b : kBuiltins) {
    if (text_or_path == b.name) return builtin_curve(b.name);
  }
  std::error_code ec;
  const std::filesystem::path path(text_or_path);
  if (std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string content = ss.str();
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') return curve_from_json(content);
    return parse_curve(content, path.filename().string());
  }
  return parse_curve(text_or_path);
}

}  // namespace projinv
