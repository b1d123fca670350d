#include "projinv/transform.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "projinv/error.hpp"
#include "rng.hpp"

namespace projinv {
namespace {

constexpr double kMinDet = 1e-9;

void require_invertible(double det, const char* what) {
  if (!(std::abs(det) > kMinDet)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " is singular");
  }
}

template <int N>
Eigen::Matrix<double, N, N> random_matrix(detail::UniformSource& rng) {
  Eigen::Matrix<double, N, N> m;
  for (;;) {
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) m(i, j) = rng.symmetric();
    }
    const double d = std::abs(m.determinant());
    if (d >= 0.1 && d <= 10.0) return m;
  }
}

template <int N>
Eigen::Matrix<double, N, 1> random_vector(detail::UniformSource& rng) {
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = rng.symmetric();
  return v;
}

}  // namespace

Affine3 Affine3::shear(double b1, double b2) {
  Affine3 g;
  g.A(0, 2) = b1;
  g.A(1, 2) = b2;
  return g;
}

Affine3 Affine3::inverse() const {
  require_invertible(A.determinant(), "affine map");
  const Eigen::Matrix3d inv = A.inverse();
  return {inv, -inv * b};
}

Affine2 Affine2::inverse() const {
  require_invertible(A.determinant(), "planar affine map");
  const Eigen::Matrix2d inv = A.inverse();
  return {inv, -inv * b};
}

Projective2::Projective2(const Eigen::Matrix3d& A) {
  require_invertible(A.determinant() / std::pow(A.cwiseAbs().maxCoeff(), 3), "projective map");
  Eigen::Index r = 0, c = 0;
  A.cwiseAbs().maxCoeff(&r, &c);
  A_ = A / A(r, c);
  A_(r, c) = 1.0;
}

Projective2 Projective2::from_affine(const Affine2& g) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m.topLeftCorner<2, 2>() = g.A;
  m.topRightCorner<2, 1>() = g.b;
  return Projective2(m);
}

Projective2 Projective2::translation(double c1, double c2) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 2) = c1;
  m(1, 2) = c2;
  return Projective2(m);
}

bool Projective2::approx_equal(const Projective2& other, double tol) const {
  // Representatives can differ by a scalar when the max entry is a near tie.
  const double s = A_.cwiseProduct(other.A_).sum() / other.A_.squaredNorm();
  return (A_ - s * other.A_).norm() <= tol * A_.norm();
}

SpaceCurveJet act_space(const Affine3& g, const SpaceCurveJet& c) {
  const Jet* w[3] = {&c.x, &c.y, &c.z};
  Jet out[3];
  for (int i = 0; i < 3; ++i) {
    out[i] = g.A(i, 0) * *w[0] + g.A(i, 1) * *w[1] + g.A(i, 2) * *w[2] + g.b(i);
  }
  return {c.t, out[0], out[1], out[2]};
}

PlaneCurveJet act_plane_affine(const Affine2& g, const PlaneCurveJet& c) {
  return {c.t, g.A(0, 0) * c.X + g.A(0, 1) * c.Y + g.b(0),
          g.A(1, 0) * c.X + g.A(1, 1) * c.Y + g.b(1)};
}

PlaneCurveJet act_projective(const Projective2& g, const PlaneCurveJet& c) {
  const Eigen::Matrix3d& a = g.matrix();
  const Jet den = a(2, 0) * c.X + a(2, 1) * c.Y + a(2, 2);
  if (!(std::abs(den.value()) > kDefaultEpsDiv)) {
    throw Error(ErrorKind::OnHyperplaneAtInfinity, "point maps to the line at infinity");
  }
  return {c.t, (a(0, 0) * c.X + a(0, 1) * c.Y + a(0, 2)) / den,
          (a(1, 0) * c.X + a(1, 1) * c.Y + a(1, 2)) / den};
}

Affine3 conjugate(const Affine3& g, const Affine3& h) { return g * h * g.inverse(); }

Affine2 planar_part(const Affine3& h) {
  return {h.A.topLeftCorner<2, 2>(), h.b.head<2>()};
}

bool in_parallel_subgroup(const Affine3& h, double tol) {
  return std::abs(h.A(0, 2)) <= tol && std::abs(h.A(1, 2)) <= tol;
}

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::GL3Plus: return "GL3+";
    case GroupKind::SL3: return "SL3";
    case GroupKind::GL3: return "GL3";
    case GroupKind::PGL3: return "PGL3";
    case GroupKind::A2: return "A2";
    case GroupKind::SA2: return "SA2";
    case GroupKind::A3: return "A3";
    case GroupKind::H: return "H";
  }
  return "?";
}

GroupKind group_kind_from_string(std::string_view name) {
  for (GroupKind k : {GroupKind::GL3Plus, GroupKind::SL3, GroupKind::GL3, GroupKind::PGL3,
                      GroupKind::A2, GroupKind::SA2, GroupKind::A3, GroupKind::H}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorKind::UnknownIdentifier, "unknown group kind '" + std::string(name) + "'");
}

GroupElement random_group_element(std::uint64_t seed, GroupKind kind) {
  detail::UniformSource rng(seed);
  switch (kind) {
    case GroupKind::GL3Plus: {
      Eigen::Matrix3d m = random_matrix<3>(rng);
      if (m.determinant() < 0.0) m.row(0) *= -1.0;
      return Affine3::linear(m);
    }
    case GroupKind::SL3: {
      Eigen::Matrix3d m = random_matrix<3>(rng);
      m /= std::cbrt(m.determinant());
      return Affine3::linear(m);
    }
    case GroupKind::GL3: return Affine3::linear(random_matrix<3>(rng));
    case GroupKind::PGL3: return Projective2(random_matrix<3>(rng));
    case GroupKind::A2: {
      Eigen::Matrix2d m = random_matrix<2>(rng);
      return Affine2{m, random_vector<2>(rng)};
    }
    case GroupKind::SA2: {
      Eigen::Matrix2d m = random_matrix<2>(rng);
      if (m.determinant() < 0.0) m.row(0) *= -1.0;
      m /= std::sqrt(m.determinant());
      return Affine2{m, random_vector<2>(rng)};
    }
    case GroupKind::A3: {
      Eigen::Matrix3d m = random_matrix<3>(rng);
      return Affine3{m, random_vector<3>(rng)};
    }
    case GroupKind::H: {
      Eigen::Matrix3d m;
      for (;;) {
        m.setZero();
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) m(i, j) = rng.symmetric();
        }
        m(2, 0) = rng.symmetric();
        m(2, 1) = rng.symmetric();
        m(2, 2) = rng.symmetric();
        const double d = std::abs(m.determinant());
        if (d >= 0.1 && d <= 10.0) break;
      }
      if (m.topLeftCorner<2, 2>().determinant() < 0.0) m.row(0) *= -1.0;
      return Affine3{m, random_vector<3>(rng)};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unhandled group kind");
}

namespace {

// sum_j coeff_j * expr_j + offset, skipping exact zeros.
ExprPtr linear_combination(const std::vector<double>& coeffs, const std::vector<ExprPtr>& exprs,
                           double offset) {
  ExprPtr sum;
  auto add = [&sum](ExprPtr term) { sum = sum ? make_binary('+', sum, term) : term; };
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0.0) continue;
    if (coeffs[j] == 1.0) {
      add(exprs[j]);
    } else {
      add(make_binary('*', make_number(coeffs[j]), exprs[j]));
    }
  }
  if (offset != 0.0 || !sum) add(make_number(offset));
  return sum;
}

}  // namespace

CurveSpec transform_curve(const CurveSpec& c, const Affine3& g) {
  if (c.dimension != 3) throw Error(ErrorKind::DimensionMismatch, "Affine3 needs a space curve");
  CurveSpec out;
  out.dimension = 3;
  out.label = c.label + " (affine image)";
  for (int i = 0; i < 3; ++i) {
    out.components.push_back(
        linear_combination({g.A(i, 0), g.A(i, 1), g.A(i, 2)}, c.components, g.b(i)));
  }
  return out;
}

CurveSpec transform_curve(const CurveSpec& c, const Affine2& g) {
  if (c.dimension != 2) throw Error(ErrorKind::DimensionMismatch, "Affine2 needs a plane curve");
  CurveSpec out;
  out.dimension = 2;
  out.label = c.label + " (affine image)";
  for (int i = 0; i < 2; ++i) {
    out.components.push_back(linear_combination({g.A(i, 0), g.A(i, 1)}, c.components, g.b(i)));
  }
  return out;
}

CurveSpec transform_curve(const CurveSpec& c, const Projective2& g) {
  if (c.dimension != 2) throw Error(ErrorKind::DimensionMismatch, "PGL(3) needs a plane curve");
  const Eigen::Matrix3d& a = g.matrix();
  const ExprPtr den = linear_combination({a(2, 0), a(2, 1)}, c.components, a(2, 2));
  CurveSpec out;
  out.dimension = 2;
  out.label = c.label + " (projective image)";
  for (int i = 0; i < 2; ++i) {
    out.components.push_back(
        make_binary('/', linear_combination({a(i, 0), a(i, 1)}, c.components, a(i, 2)), den));
  }
  return out;
}

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

template <int N>
Eigen::Matrix<double, N, N> read_matrix(const nlohmann::json& doc) {
  if (!doc.contains("A") || doc["A"].size() != N) {
    throw Error(ErrorKind::InvalidArgument, "group element JSON needs an " + std::to_string(N) +
                                                "x" + std::to_string(N) + " 'A'");
  }
  Eigen::Matrix<double, N, N> m;
  for (int i = 0; i < N; ++i) {
    if (doc["A"][i].size() != N) throw Error(ErrorKind::InvalidArgument, "ragged matrix row");
    for (int j = 0; j < N; ++j) m(i, j) = doc["A"][i][j].get<double>();
  }
  return m;
}

template <int N>
Eigen::Matrix<double, N, 1> read_vector(const nlohmann::json& doc) {
  Eigen::Matrix<double, N, 1> v = Eigen::Matrix<double, N, 1>::Zero();
  if (!doc.contains("b")) return v;
  if (doc["b"].size() != N) throw Error(ErrorKind::InvalidArgument, "translation has wrong size");
  for (int i = 0; i < N; ++i) v(i) = doc["b"][i].get<double>();
  return v;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const Affine3& g) {
  return nlohmann::json{{"A", matrix_json(g.A)}, {"b", vector_json(g.b)}}.dump();
}

std::string to_json(const Affine2& g) {
  return nlohmann::json{{"A", matrix_json(g.A)}, {"b", vector_json(g.b)}}.dump();
}

std::string to_json(const Projective2& g) {
  return nlohmann::json{{"A", matrix_json(g.matrix())}}.dump();
}

Affine3 affine3_from_json(std::string_view text) {
  const auto doc = parse_json(text);
  Affine3 g{read_matrix<3>(doc), read_vector<3>(doc)};
  require_invertible(g.A.determinant(), "affine map");
  return g;
}

Affine2 affine2_from_json(std::string_view text) {
  const auto doc = parse_json(text);
  Affine2 g{read_matrix<2>(doc), read_vector<2>(doc)};
  require_invertible(g.A.determinant(), "planar affine map");
  return g;
}

Projective2 projective2_from_json(std::string_view text) {
  return Projective2(read_matrix<3>(parse_json(text)));
}

}  // namespace projinv
