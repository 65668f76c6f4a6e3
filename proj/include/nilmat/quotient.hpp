#pragma once

#include "nilmat/poly.hpp"

#include <string>
#include <vector>

namespace nilmat {

// The two quotient ideals of the polynomial ring k[X_11..X_mn]:
//   FullDtilde: generated by X_ij*X_i'j' + X_i'j*X_ij' over all i,i',j,j'
//   SpecialOnly: the same quadratics restricted to i != i', j != j'
struct IdealSpec {
  enum class Kind { FullDtilde, SpecialOnly };

  Kind kind;
  int m;
  int n;

  static IdealSpec full_dtilde(int m, int n) { return {Kind::FullDtilde, m, n}; }
  static IdealSpec special_only(int n) { return {Kind::SpecialOnly, n, n}; }

  [[nodiscard]] std::vector<Polynomial> generators() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const IdealSpec&, const IdealSpec&) = default;
};

// Canonical basis monomial of k[X]/J: strictly increasing rows paired with
// strictly increasing columns, one per (row-set, col-set) pair.
struct BasisLabel {
  std::vector<int> rows;
  std::vector<int> cols;

  [[nodiscard]] int degree() const { return static_cast<int>(rows.size()); }
  [[nodiscard]] Monomial monomial() const;
  [[nodiscard]] std::string str() const; // det{1,2|1,2}
};

struct AlgebraBasis {
  Integer dimension;
  std::vector<BasisLabel> labels;
};

// Canonical representative of p + J for the full D-tilde ideal, computed by
// structural rewriting: monomials with a repeated row or column die; the rest
// sort to increasing rows and columns, the sign absorbing the column
// permutation parity. Param variables pass through as coefficients.
// Throws Error(IndexOutOfRange) if p mentions X_ij outside the m×n grid.
Polynomial normal_form_poly(const Polynomial& p, int m, int n);

class NormalForm {
public:
  NormalForm(const Polynomial& p, int m, int n)
      : poly_(normal_form_poly(p, m, n)), m_(m), n_(n) {}

  [[nodiscard]] const Polynomial& poly() const { return poly_; }
  [[nodiscard]] bool is_zero() const { return poly_.is_zero(); }
  [[nodiscard]] int rows() const { return m_; }
  [[nodiscard]] int cols() const { return n_; }
  [[nodiscard]] std::string str() const { return poly_.str(); }

  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.poly_ == b.poly_;
  }

private:
  Polynomial poly_;
  int m_;
  int n_;
};

struct OracleCaps {
  int max_xdegree = 4;
  int max_vars = 16; // m*n
};

// Graded linear-algebra ideal membership: p is split by param monomial and
// X-degree; each homogeneous piece is reduced against a cached row-echelon
// basis of { mu * g : g generator, mu monomial of matching degree }.
// Throws Error(CapExceeded) when the monomial space is too large.
bool membership_oracle(const Polynomial& p, const IdealSpec& ideal,
                       const OracleCaps& caps = {});

// Rank of the degree-d slice of the ideal, from the same echelon bases.
int ideal_rank_in_degree(const IdealSpec& ideal, int d,
                         const OracleCaps& caps = {});

// Dimension and basis of k[X]/J_full over the m×n grid:
// sum over p of C(m,p)*C(n,p), with (row-set, col-set) labels.
AlgebraBasis algebra_dimension(int m, int n, int size_cap = 5);

// Independent dimension computation: sum over degrees of
// (#monomials of degree d) - rank(J_d), stopping once a slice vanishes.
Integer quotient_dimension_by_oracle(const IdealSpec& ideal,
                                     const OracleCaps& caps = {});

} // namespace nilmat
