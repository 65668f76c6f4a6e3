#pragma once

#include "nilmat/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nilmat {

// Variables come in three disjoint families. Params a_r conceptually live in
// the coefficient ring and are never reduced; Input variables u_k are the
// formal arguments of polynomial maps. The total order puts params before
// matrix variables, matrix variables lexicographic by (row, col).
struct Variable {
  enum class Family : std::uint8_t { Input = 0, Param = 1, Matrix = 2 };

  Family family = Family::Matrix;
  int i = 0; // row for Matrix; index for Input/Param
  int j = 0; // col for Matrix, unused otherwise

  static Variable matrix(int row, int col) {
    return Variable{Family::Matrix, row, col};
  }
  static Variable param(int r) { return Variable{Family::Param, r, 0}; }
  static Variable input(int k) { return Variable{Family::Input, k, 0}; }

  friend auto operator<=>(const Variable&, const Variable&) = default;

  [[nodiscard]] std::string str() const;
};

// Exponent vector, sorted by variable; zero exponents are never stored.
class Monomial {
public:
  using Exponents = std::vector<std::pair<Variable, int>>;

  Monomial() = default;
  explicit Monomial(Exponents exps);

  static Monomial one() { return Monomial{}; }
  static Monomial var(Variable v, int exp = 1);

  [[nodiscard]] const Exponents& exponents() const { return exps_; }
  [[nodiscard]] bool is_one() const { return exps_.empty(); }
  [[nodiscard]] int degree() const;
  [[nodiscard]] int degree_in(Variable::Family f) const;
  // X-degree: matrix-variable degree only.
  [[nodiscard]] int xdegree() const { return degree_in(Variable::Family::Matrix); }
  [[nodiscard]] int exponent_of(Variable v) const;

  [[nodiscard]] Monomial times(const Monomial& other) const;
  // Split into (non-matrix part, matrix part).
  [[nodiscard]] std::pair<Monomial, Monomial> split_matrix_part() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  [[nodiscard]] std::string str() const;

private:
  Exponents exps_;
};

// Exact multivariate polynomial over the rationals. Canonical: no zero
// coefficients stored; the zero polynomial is the empty term map.
class Polynomial {
public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;

  static Polynomial zero() { return {}; }
  static Polynomial constant(Rational c);
  static Polynomial var(Variable v);
  static Polynomial term(Monomial m, Rational c);

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] int degree() const;
  [[nodiscard]] int xdegree() const;
  [[nodiscard]] int degree_in(Variable::Family f) const;
  [[nodiscard]] bool uses_family(Variable::Family f) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& q) const;
  Polynomial operator-(const Polynomial& q) const;
  Polynomial operator*(const Polynomial& q) const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  [[nodiscard]] Polynomial scaled(const Rational& c) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Sum of the terms whose X-degree equals d; summing over all d recovers
  // the polynomial.
  [[nodiscard]] Polynomial graded_piece(int d) const;
  [[nodiscard]] Polynomial piece_of_degree_in(Variable::Family f, int d) const;

  // Group terms by their non-matrix monomial part. Each value is a pure
  // matrix-variable polynomial; keys are param/input monomials.
  [[nodiscard]] std::map<Monomial, Polynomial> split_by_non_matrix_part() const;

  // Substitute a polynomial for every occurrence of variable v.
  [[nodiscard]] Polynomial substituted(Variable v, const Polynomial& value) const;

  [[nodiscard]] std::string str() const;

private:
  Terms terms_;
};

// All monomials in the matrix variables of an m×n grid with X-degree exactly
// d, deterministically ordered. Count is C(mn + d - 1, d).
std::vector<Monomial> monomials_of_xdegree(int m, int n, int d);

Integer binomial(int n, int k);

// Parses the polynomial grammar: terms joined by + / -, variables `Xij`
// (single-digit indices) or `X{i,j}`, params `a1..aR`, inputs `u1..um`,
// `^` exponents, rational coefficients `p/q`. Throws Error(ParseError).
Polynomial parse_polynomial(const std::string& text);

} // namespace nilmat
