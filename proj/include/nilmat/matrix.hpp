#pragma once

#include "nilmat/ring.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace nilmat {

// Dense m×n matrix over one ring; the carrier for all of the predicates.
class Matrix {
public:
  Matrix(Ring ring, int rows, int cols);

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] bool is_vector() const { return rows_ == 1 || cols_ == 1; }
  [[nodiscard]] int length() const; // vectors only

  // 1-based indexing throughout, matching the index conventions of the
  // defining equations.
  [[nodiscard]] const RingElement& at(int i, int j) const;
  void set(int i, int j, RingElement v);
  [[nodiscard]] const RingElement& vec_at(int k) const; // vectors only

  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix row(int i) const;
  [[nodiscard]] Matrix col(int j) const;
  [[nodiscard]] Matrix submatrix(const std::vector<int>& rows,
                                 const std::vector<int>& cols) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  [[nodiscard]] Matrix scaled(const RingElement& c) const;

  bool operator==(const Matrix& o) const;

private:
  Ring ring_;
  int rows_;
  int cols_;
  std::vector<RingElement> entries_;
};

// x_j * x_j' = 0 for all j, j'. Requires vector shape.
bool is_in_D(const Matrix& x);

// The defining equations x_ij x_i'j' + x_i'j x_ij' = 0, checked on all 2x2
// submatrices; vectors fall back to is_in_D.
bool is_in_dtilde(const Matrix& x);

// The restricted equations (i != i', j != j') only. Requires m, n >= 2.
bool is_special(const Matrix& x);

// x - y in D(n); reflexive and symmetric.
bool are_neighbors(const Matrix& x, const Matrix& y);

// Every pair of the given points are neighbors.
bool is_infinitesimal_simplex(const std::vector<Matrix>& points);

// The bilinear map into R^(n^2): entry (j,j') is x_j y_j' + x_j' y_j,
// returned as a 1×n² row in (j,j') lexicographic order.
Matrix beta(const Matrix& x, const Matrix& y);

Matrix mat_mul(const Matrix& p, const Matrix& x);

// Leibniz-sum determinant; rings here have zero divisors, so no elimination.
// Capped at n <= 6.
RingElement det(const Matrix& x);

// Multiplicative trace: the product of the diagonal entries.
RingElement mult_trace(const Matrix& x);

// Zero-preserving polynomial map R^m -> R^l; components are polynomials in
// the input variables u_1..u_m (params allowed over WithParams rings).
struct PolyMap {
  int domain_dim;
  int codomain_dim;
  std::vector<Polynomial> components;

  PolyMap(int domain, std::vector<Polynomial> comps);

  [[nodiscard]] int degree() const;
  // The degree-k homogeneous piece (in the input variables) of the map.
  [[nodiscard]] PolyMap homogeneous_piece(int k) const;
  [[nodiscard]] std::vector<RingElement>
  apply(const Ring& ring, const std::vector<RingElement>& point) const;
};

// Column j of the result is g applied to column j of X.
Matrix apply_polymap_columns(const PolyMap& g, const Matrix& x);

// The matrix of indeterminate classes [X_ij] over the matching quotient ring
// (optionally with params adjoined for generic-coefficient arguments).
Matrix generic_matrix(int m, int n, IdealSpec::Kind kind, int param_count = 0);

// JSON interchange:
//   {"ring": "<spec DSL>", "rows": m, "cols": n, "entries": [["..."]]}
//   {"domain": m, "codomain": l, "components": ["<poly in u1..um>"]}
nlohmann::json matrix_to_json(const Matrix& x);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json polymap_to_json(const PolyMap& g);
PolyMap polymap_from_json(const nlohmann::json& j);

} // namespace nilmat
