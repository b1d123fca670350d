#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "projinv/taylor.hpp"

namespace projinv {

/// Node of a parsed component expression in the free variable t.
struct Expr {
  enum class Kind { Number, Variable, Constant, Negate, Binary, Call };

  Kind kind = Kind::Number;
  double number = 0.0;   // Number, and the value of a Constant
  char op = 0;           // Binary: one of + - * / ^
  std::string name;      // Constant or Call name
  std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr make_number(double v);
ExprPtr make_variable();
ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_negate(ExprPtr operand);
ExprPtr make_call(std::string name, ExprPtr arg);

/// Structural equality (numbers compared exactly).
bool same_tree(const Expr& a, const Expr& b);

/// Parses one expression. Throws SyntaxError (with 1-based column) or
/// Error{UnknownIdentifier}.
ExprPtr parse_expression(std::string_view source);
/// Canonical text with the minimal parentheses that reproduce the tree.
std::string to_text(const Expr& e);
/// True if the expression references t.
bool depends_on_t(const Expr& e);

double evaluate(const Expr& e, double t);
Jet evaluate(const Expr& e, const Jet& t);

struct CurveSpec {
  int dimension = 3;
  std::vector<ExprPtr> components;
  std::string label;
};

/// "t, t^2, t^3" style component lists with 2 or 3 entries.
CurveSpec parse_curve(std::string_view source, std::string label = {});
std::string to_text(const CurveSpec& c);
/// JSON document {"label": ..., "dim": 2|3, "components": [text, ...]}.
CurveSpec curve_from_json(std::string_view json_text);
std::string curve_to_json(const CurveSpec& c);

struct SpaceCurveJet {
  double t = 0.0;
  Jet x, y, z;
};

struct PlaneCurveJet {
  double t = 0.0;
  Jet X, Y;
};

SpaceCurveJet eval_space_jet(const CurveSpec& c, double t, int order = kDefaultJetOrder);
PlaneCurveJet eval_plane_jet(const CurveSpec& c, double t, int order = kDefaultJetOrder);

/// Evaluates a single coordinate as a plain double.
double eval_component(const CurveSpec& c, int index, double t);

enum class RandomCurveKind { Poly, TrigPoly };

/// Deterministic per seed. Coefficients are uniform in [-1, 1]; the constant
/// term of z is shifted by +1.5 so that z(0) >= 0.5.
CurveSpec random_curve(std::uint64_t seed, int dimension, RandomCurveKind kind, int degree);

/// Builtin catalog: twisted_cubic, helix, line, circle3, exp_blend, unit_circle,
/// lower_circle, parabola, ellipse, exp_curve, cubic.
CurveSpec builtin_curve(std::string_view name);
std::vector<std::string> builtin_curve_names();

/// Resolves a builtin name, a JSON file path, or inline component text.
CurveSpec load_curve(std::string_view text_or_path);

}  // namespace projinv
