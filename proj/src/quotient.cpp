#include "nilmat/quotient.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace nilmat {

std::vector<Polynomial> IdealSpec::generators() const {
  std::vector<Polynomial> gens;
  auto add = [&](int i, int ip, int j, int jp) {
    Polynomial g;
    g.add_term(Monomial::var(Variable::matrix(i, j))
                   .times(Monomial::var(Variable::matrix(ip, jp))),
               1);
    g.add_term(Monomial::var(Variable::matrix(ip, j))
                   .times(Monomial::var(Variable::matrix(i, jp))),
               1);
    gens.push_back(std::move(g));
  };
  if (kind == Kind::FullDtilde) {
    for (int i = 1; i <= m; ++i)
      for (int ip = i; ip <= m; ++ip)
        for (int j = 1; j <= n; ++j)
          for (int jp = j; jp <= n; ++jp) add(i, ip, j, jp);
  } else {
    for (int i = 1; i <= m; ++i)
      for (int ip = i + 1; ip <= m; ++ip)
        for (int j = 1; j <= n; ++j)
          for (int jp = j + 1; jp <= n; ++jp) add(i, ip, j, jp);
  }
  return gens;
}

std::string IdealSpec::str() const {
  std::ostringstream os;
  if (kind == Kind::FullDtilde)
    os << "FullDtilde(" << m << ',' << n << ')';
  else
    os << "SpecialOnly(" << n << ')';
  return os.str();
}

Monomial BasisLabel::monomial() const {
  Monomial::Exponents e;
  for (size_t k = 0; k < rows.size(); ++k)
    e.emplace_back(Variable::matrix(rows[k], cols[k]), 1);
  return Monomial{std::move(e)};
}

std::string BasisLabel::str() const {
  if (rows.empty()) return "det{|}";
  std::ostringstream os;
  os << "det{";
  for (size_t k = 0; k < rows.size(); ++k) os << (k ? "," : "") << rows[k];
  os << '|';
  for (size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << '}';
  return os.str();
}

namespace {

void check_grid(const Polynomial& p, int m, int n) {
  for (const auto& [mono, c] : p.terms())
    for (const auto& [v, e] : mono.exponents())
      if (v.family == Variable::Family::Matrix &&
          (v.i < 1 || v.i > m || v.j < 1 || v.j > n))
        throw Error(ErrorCode::IndexOutOfRange,
                    "variable " + v.str() + " outside the " + std::to_string(m) +
                        "x" + std::to_string(n) + " grid");
}

// Rewrites one squarefree matrix monomial to canonical form. Returns sign 0
// when the monomial dies (repeated row or column, or a squared variable).
int canonicalize_matrix_monomial(const Monomial& mat, Monomial& out) {
  std::vector<std::pair<int, int>> cells; // (row, col), row-sorted by order
  for (const auto& [v, e] : mat.exponents()) {
    if (e >= 2) return 0;
    cells.emplace_back(v.i, v.j);
  }
  // variable order is lex by (i, j), so rows are already non-decreasing
  for (size_t k = 0; k + 1 < cells.size(); ++k)
    if (cells[k].first == cells[k + 1].first) return 0; // shared row
  std::vector<int> cols;
  cols.reserve(cells.size());
  for (const auto& c : cells) cols.push_back(c.second);
  auto sorted = cols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return 0; // shared column
  // parity of the permutation sorting the column sequence
  int sign = 1;
  for (size_t a = 0; a < cols.size(); ++a)
    for (size_t b = a + 1; b < cols.size(); ++b)
      if (cols[a] > cols[b]) sign = -sign;
  Monomial::Exponents e;
  for (size_t k = 0; k < cells.size(); ++k)
    e.emplace_back(Variable::matrix(cells[k].first, sorted[k]), 1);
  out = Monomial{std::move(e)};
  return sign;
}

} // namespace

Polynomial normal_form_poly(const Polynomial& p, int m, int n) {
  check_grid(p, m, n);
  Polynomial out;
  for (const auto& [mono, c] : p.terms()) {
    auto [rest, mat] = mono.split_matrix_part();
    Monomial canon;
    int sign = canonicalize_matrix_monomial(mat, canon);
    if (sign == 0) continue;
    out.add_term(rest.times(canon), sign > 0 ? c : -c);
  }
  return out;
}

namespace {

// Row-echelon span with rows keyed by leading (largest) monomial.
class EchelonBasis {
public:
  // Reduce p against the rows; returns the remainder.
  [[nodiscard]] Polynomial reduce(Polynomial p) const {
    while (!p.is_zero()) {
      const auto& [lm, lc] = *p.terms().rbegin();
      auto it = rows_.find(lm);
      if (it == rows_.end()) break;
      p -= it->second.scaled(lc);
      // by construction the leading term cancels exactly
    }
    return p;
  }

  // Full reduction: also reduces trailing terms, so membership is remainder==0.
  [[nodiscard]] bool reduces_to_zero(Polynomial p) const {
    Polynomial acc = std::move(p);
    while (!acc.is_zero()) {
      const auto& [lm, lc] = *acc.terms().rbegin();
      auto it = rows_.find(lm);
      if (it == rows_.end()) return false;
      acc -= it->second.scaled(lc);
    }
    return true;
  }

  void insert(Polynomial p) {
    p = reduce(std::move(p));
    if (p.is_zero()) return;
    const auto& [lm, lc] = *p.terms().rbegin();
    rows_.emplace(lm, p.scaled(Rational(1) / lc));
  }

  [[nodiscard]] int rank() const { return static_cast<int>(rows_.size()); }

private:
  std::map<Monomial, Polynomial> rows_;
};

using CacheKey = std::tuple<int, int, int, int>; // kind, m, n, degree

const EchelonBasis& ideal_slice_basis(const IdealSpec& ideal, int d,
                                      const OracleCaps& caps) {
  if (d > caps.max_xdegree || ideal.m * ideal.n > caps.max_vars)
    throw Error(ErrorCode::CapExceeded,
                "oracle cap exceeded: degree " + std::to_string(d) + " on " +
                    ideal.str());
  static std::map<CacheKey, EchelonBasis> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  CacheKey key{static_cast<int>(ideal.kind), ideal.m, ideal.n, d};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  EchelonBasis basis;
  if (d >= 2) {
    auto gens = ideal.generators();
    for (const auto& mu_ : monomials_of_xdegree(ideal.m, ideal.n, d - 2)) {
      Polynomial mup = Polynomial::term(mu_, 1);
      for (const auto& g : gens) basis.insert(mup * g);
    }
  }
  return cache.emplace(key, std::move(basis)).first->second;
}

bool homogeneous_piece_in_ideal(const Polynomial& piece, int d,
                                const IdealSpec& ideal, const OracleCaps& caps) {
  if (piece.is_zero()) return true;
  if (d < 2) return false; // the ideal has no nonzero elements below degree 2
  return ideal_slice_basis(ideal, d, caps).reduces_to_zero(piece);
}

} // namespace

bool membership_oracle(const Polynomial& p, const IdealSpec& ideal,
                       const OracleCaps& caps) {
  check_grid(p, ideal.m, ideal.n);
  // Params live in the coefficient ring and the generators are param-free,
  // so p lies in the extended ideal iff every param-monomial coefficient does.
  for (const auto& [rest, xpoly] : p.split_by_non_matrix_part()) {
    for (int d = 0; d <= xpoly.xdegree(); ++d)
      if (!homogeneous_piece_in_ideal(xpoly.graded_piece(d), d, ideal, caps))
        return false;
  }
  return true;
}

int ideal_rank_in_degree(const IdealSpec& ideal, int d, const OracleCaps& caps) {
  return ideal_slice_basis(ideal, d, caps).rank();
}

AlgebraBasis algebra_dimension(int m, int n, int size_cap) {
  if (m < 1 || n < 1)
    throw Error(ErrorCode::IndexOutOfRange, "grid sides must be >= 1");
  if (m > size_cap || n > size_cap)
    throw Error(ErrorCode::CapExceeded,
                "grid " + std::to_string(m) + "x" + std::to_string(n) +
                    " exceeds the size cap " + std::to_string(size_cap));
  AlgebraBasis out;
  out.dimension = 0;
  int pmax = std::min(m, n);
  auto subsets = [](int bound, int p) {
    std::vector<std::vector<int>> subs;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(cur.size()) == p) {
        subs.push_back(cur);
        return;
      }
      for (int v = start; v <= bound; ++v) {
        cur.push_back(v);
        self(self, v + 1);
        cur.pop_back();
      }
    };
    rec(rec, 1);
    return subs;
  };
  for (int p = 0; p <= pmax; ++p) {
    auto row_subs = subsets(m, p);
    auto col_subs = subsets(n, p);
    for (const auto& rs : row_subs)
      for (const auto& cs : col_subs) out.labels.push_back(BasisLabel{rs, cs});
    out.dimension += binomial(m, p) * binomial(n, p);
  }
  return out;
}

Integer quotient_dimension_by_oracle(const IdealSpec& ideal,
                                     const OracleCaps& caps) {
  Integer dim = 0;
  for (int d = 0;; ++d) {
    Integer monos = binomial(ideal.m * ideal.n + d - 1, d);
    Integer slice = monos - ideal_rank_in_degree(ideal, d, caps);
    if (slice == 0 && d >= 1) break; // an empty slice stays empty upward
    dim += slice;
  }
  return dim;
}

} // namespace nilmat
