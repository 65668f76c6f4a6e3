#include "nilmat/matrix.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

namespace nilmat {

Matrix::Matrix(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (rows_ < 1 || cols_ < 1)
    throw Error(ErrorCode::ShapeMismatch, "matrix sides must be >= 1");
  entries_.assign(static_cast<size_t>(rows_) * cols_, ring_.zero());
}

int Matrix::length() const {
  if (!is_vector())
    throw Error(ErrorCode::ShapeMismatch, "expected a vector");
  return rows_ * cols_;
}

const RingElement& Matrix::at(int i, int j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_)
    throw Error(ErrorCode::IndexOutOfRange, "matrix index out of range");
  return entries_[static_cast<size_t>(i - 1) * cols_ + (j - 1)];
}

void Matrix::set(int i, int j, RingElement v) {
  if (i < 1 || i > rows_ || j < 1 || j > cols_)
    throw Error(ErrorCode::IndexOutOfRange, "matrix index out of range");
  if (!v.spec()->same(*ring_.spec()))
    throw Error(ErrorCode::RingMismatch, "entry from a different ring");
  entries_[static_cast<size_t>(i - 1) * cols_ + (j - 1)] = std::move(v);
}

const RingElement& Matrix::vec_at(int k) const {
  if (!is_vector())
    throw Error(ErrorCode::ShapeMismatch, "expected a vector");
  return rows_ == 1 ? at(1, k) : at(k, 1);
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

Matrix Matrix::row(int i) const {
  Matrix out(ring_, 1, cols_);
  for (int j = 1; j <= cols_; ++j) out.set(1, j, at(i, j));
  return out;
}

Matrix Matrix::col(int j) const {
  Matrix out(ring_, rows_, 1);
  for (int i = 1; i <= rows_; ++i) out.set(i, 1, at(i, j));
  return out;
}

Matrix Matrix::submatrix(const std::vector<int>& rows,
                         const std::vector<int>& cols) const {
  Matrix out(ring_, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t a = 0; a < rows.size(); ++a)
    for (size_t b = 0; b < cols.size(); ++b)
      out.set(static_cast<int>(a) + 1, static_cast<int>(b) + 1,
              at(rows[a], cols[b]));
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorCode::ShapeMismatch, "shape mismatch in addition");
  Matrix out(ring_, rows_, cols_);
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= cols_; ++j) out.set(i, j, at(i, j) + o.at(i, j));
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorCode::ShapeMismatch, "shape mismatch in subtraction");
  Matrix out(ring_, rows_, cols_);
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= cols_; ++j) out.set(i, j, at(i, j) - o.at(i, j));
  return out;
}

Matrix Matrix::scaled(const RingElement& c) const {
  Matrix out(ring_, rows_, cols_);
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= cols_; ++j) out.set(i, j, c * at(i, j));
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= cols_; ++j)
      if (!(at(i, j) == o.at(i, j))) return false;
  return true;
}

bool is_in_D(const Matrix& x) {
  if (!x.is_vector())
    throw Error(ErrorCode::ShapeMismatch, "is_in_D expects a vector");
  int n = x.length();
  for (int j = 1; j <= n; ++j)
    for (int jp = j; jp <= n; ++jp)
      if (!(x.vec_at(j) * x.vec_at(jp)).is_zero()) return false;
  return true;
}

bool is_in_dtilde(const Matrix& x) {
  if (x.is_vector()) return is_in_D(x); // the D~(1,n) = D(n) convention
  // the defining equation only involves four indices, so running over all
  // 2x2 choices covers everything
  for (int i = 1; i <= x.rows(); ++i)
    for (int ip = i; ip <= x.rows(); ++ip)
      for (int j = 1; j <= x.cols(); ++j)
        for (int jp = j; jp <= x.cols(); ++jp)
          if (!(x.at(i, j) * x.at(ip, jp) + x.at(ip, j) * x.at(i, jp)).is_zero())
            return false;
  return true;
}

bool is_special(const Matrix& x) {
  if (x.rows() < 2 || x.cols() < 2)
    throw Error(ErrorCode::ShapeMismatch, "is_special needs m, n >= 2");
  for (int i = 1; i <= x.rows(); ++i)
    for (int ip = i + 1; ip <= x.rows(); ++ip)
      for (int j = 1; j <= x.cols(); ++j)
        for (int jp = j + 1; jp <= x.cols(); ++jp)
          if (!(x.at(i, j) * x.at(ip, jp) + x.at(ip, j) * x.at(i, jp)).is_zero())
            return false;
  return true;
}

bool are_neighbors(const Matrix& x, const Matrix& y) {
  if (!x.is_vector() || !y.is_vector() || x.length() != y.length())
    throw Error(ErrorCode::ShapeMismatch, "neighbors need equal-length vectors");
  Matrix diff(x.ring(), 1, x.length());
  for (int k = 1; k <= x.length(); ++k)
    diff.set(1, k, x.vec_at(k) - y.vec_at(k));
  return is_in_D(diff);
}

bool is_infinitesimal_simplex(const std::vector<Matrix>& points) {
  for (size_t a = 0; a < points.size(); ++a)
    for (size_t b = a + 1; b < points.size(); ++b)
      if (!are_neighbors(points[a], points[b])) return false;
  return true;
}

Matrix beta(const Matrix& x, const Matrix& y) {
  if (!x.is_vector() || !y.is_vector() || x.length() != y.length())
    throw Error(ErrorCode::ShapeMismatch, "beta needs equal-length vectors");
  int n = x.length();
  Matrix out(x.ring(), 1, n * n);
  for (int j = 1; j <= n; ++j)
    for (int jp = 1; jp <= n; ++jp)
      out.set(1, (j - 1) * n + jp,
              x.vec_at(j) * y.vec_at(jp) + x.vec_at(jp) * y.vec_at(j));
  return out;
}

Matrix mat_mul(const Matrix& p, const Matrix& x) {
  if (p.cols() != x.rows())
    throw Error(ErrorCode::ShapeMismatch, "inner dimensions disagree");
  Matrix out(p.ring(), p.rows(), x.cols());
  for (int i = 1; i <= p.rows(); ++i)
    for (int j = 1; j <= x.cols(); ++j) {
      RingElement acc = p.ring().zero();
      for (int k = 1; k <= p.cols(); ++k) acc = acc + p.at(i, k) * x.at(k, j);
      out.set(i, j, acc);
    }
  return out;
}

RingElement det(const Matrix& x) {
  if (x.rows() != x.cols())
    throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  int n = x.rows();
  if (n > 6)
    throw Error(ErrorCode::CapExceeded, "Leibniz determinant capped at n <= 6");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  RingElement acc = x.ring().zero();
  do {
    int sign = 1;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) sign = -sign;
    RingElement prod = x.ring().one();
    for (int i = 1; i <= n; ++i) prod = prod * x.at(i, perm[i - 1]);
    acc = sign > 0 ? acc + prod : acc - prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

RingElement mult_trace(const Matrix& x) {
  if (x.rows() != x.cols())
    throw Error(ErrorCode::ShapeMismatch, "multiplicative trace needs a square matrix");
  RingElement acc = x.ring().one();
  for (int i = 1; i <= x.rows(); ++i) acc = acc * x.at(i, i);
  return acc;
}

PolyMap::PolyMap(int domain, std::vector<Polynomial> comps)
    : domain_dim(domain), codomain_dim(static_cast<int>(comps.size())),
      components(std::move(comps)) {
  if (domain_dim < 1 || codomain_dim < 1)
    throw Error(ErrorCode::ShapeMismatch, "polynomial map dimensions must be >= 1");
  for (const auto& c : components) {
    if (c.constant_term() != 0)
      throw Error(ErrorCode::Unsupported, "polynomial map must be 0-preserving");
    for (const auto& [mono, coeff] : c.terms())
      for (const auto& [v, e] : mono.exponents()) {
        if (v.family == Variable::Family::Matrix)
          throw Error(ErrorCode::Unsupported,
                      "matrix variables cannot appear in a polynomial map");
        if (v.family == Variable::Family::Input && (v.i < 1 || v.i > domain_dim))
          throw Error(ErrorCode::IndexOutOfRange,
                      "input " + v.str() + " outside the map's domain");
      }
  }
}

int PolyMap::degree() const {
  int d = 0;
  for (const auto& c : components)
    d = std::max(d, c.degree_in(Variable::Family::Input));
  return d;
}

PolyMap PolyMap::homogeneous_piece(int k) const {
  std::vector<Polynomial> comps;
  comps.reserve(components.size());
  for (const auto& c : components)
    comps.push_back(c.piece_of_degree_in(Variable::Family::Input, k));
  return {domain_dim, std::move(comps)};
}

std::vector<RingElement> PolyMap::apply(const Ring& ring,
                                        const std::vector<RingElement>& point) const {
  if (static_cast<int>(point.size()) != domain_dim)
    throw Error(ErrorCode::ShapeMismatch, "point dimension disagrees with the map");
  std::vector<RingElement> out;
  out.reserve(components.size());
  for (const auto& comp : components) {
    RingElement acc = ring.zero();
    for (const auto& [mono, coeff] : comp.terms()) {
      RingElement term = ring.from_rational(coeff);
      for (const auto& [v, e] : mono.exponents()) {
        RingElement factor = v.family == Variable::Family::Input
                                 ? point[v.i - 1]
                                 : ring.from_poly(Polynomial::var(v));
        for (int k = 0; k < e; ++k) term = term * factor;
      }
      acc = acc + term;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

Matrix apply_polymap_columns(const PolyMap& g, const Matrix& x) {
  if (g.domain_dim != x.rows())
    throw Error(ErrorCode::ShapeMismatch,
                "map domain disagrees with the matrix's row count");
  Matrix out(x.ring(), g.codomain_dim, x.cols());
  for (int j = 1; j <= x.cols(); ++j) {
    std::vector<RingElement> column;
    for (int i = 1; i <= x.rows(); ++i) column.push_back(x.at(i, j));
    auto image = g.apply(x.ring(), column);
    for (int i = 1; i <= g.codomain_dim; ++i) out.set(i, j, image[i - 1]);
  }
  return out;
}

Matrix generic_matrix(int m, int n, IdealSpec::Kind kind, int param_count) {
  RingSpecPtr spec;
  if (kind == IdealSpec::Kind::FullDtilde) {
    spec = RingSpec::generic_dtilde(m, n);
  } else {
    if (m != n)
      throw Error(ErrorCode::ShapeMismatch, "the special algebra is square");
    spec = RingSpec::generic_special(n);
  }
  if (param_count > 0) spec = RingSpec::with_params(std::move(spec), param_count);
  Ring ring(spec);
  Matrix out(ring, m, n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      out.set(i, j, ring.from_poly(Polynomial::var(Variable::matrix(i, j))));
  return out;
}

nlohmann::json matrix_to_json(const Matrix& x) {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 1; i <= x.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= x.cols(); ++j) row.push_back(x.at(i, j).str());
    entries.push_back(std::move(row));
  }
  return {{"ring", x.ring().spec()->str()},
          {"rows", x.rows()},
          {"cols", x.cols()},
          {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.contains("ring") || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw Error(ErrorCode::ParseError, "matrix JSON needs ring/rows/cols/entries");
  Ring ring(RingSpec::parse(j.at("ring").get<std::string>()));
  int m = j.at("rows").get<int>();
  int n = j.at("cols").get<int>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != m)
    throw Error(ErrorCode::ParseError, "entries row count disagrees with rows");
  Matrix out(ring, m, n);
  for (int i = 1; i <= m; ++i) {
    const auto& row = entries.at(i - 1);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(ErrorCode::ParseError, "entries column count disagrees with cols");
    for (int jj = 1; jj <= n; ++jj)
      out.set(i, jj, ring.parse(row.at(jj - 1).get<std::string>()));
  }
  return out;
}

nlohmann::json polymap_to_json(const PolyMap& g) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : g.components) comps.push_back(c.str());
  return {{"domain", g.domain_dim},
          {"codomain", g.codomain_dim},
          {"components", std::move(comps)}};
}

PolyMap polymap_from_json(const nlohmann::json& j) {
  if (!j.contains("domain") || !j.contains("components"))
    throw Error(ErrorCode::ParseError, "polymap JSON needs domain/components");
  int domain = j.at("domain").get<int>();
  std::vector<Polynomial> comps;
  for (const auto& c : j.at("components"))
    comps.push_back(parse_polynomial(c.get<std::string>()));
  PolyMap g(domain, std::move(comps));
  if (j.contains("codomain") && j.at("codomain").get<int>() != g.codomain_dim)
    throw Error(ErrorCode::ParseError, "codomain disagrees with component count");
  return g;
}

} // namespace nilmat
