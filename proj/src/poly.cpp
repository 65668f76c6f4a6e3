#include "nilmat/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nilmat {

std::string Variable::str() const {
  std::ostringstream os;
  switch (family) {
  case Family::Matrix:
    if (i >= 1 && i <= 9 && j >= 1 && j <= 9)
      os << 'X' << i << j;
    else
      os << "X{" << i << ',' << j << '}';
    break;
  case Family::Param:
    os << 'a' << i;
    break;
  case Family::Input:
    os << 'u' << i;
    break;
  }
  return os.str();
}

Monomial::Monomial(Exponents exps) : exps_(std::move(exps)) {
  std::sort(exps_.begin(), exps_.end());
  // merge duplicates, drop zero exponents
  Exponents merged;
  for (const auto& [v, e] : exps_) {
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += e;
    else
      merged.emplace_back(v, e);
  }
  std::erase_if(merged, [](const auto& p) { return p.second == 0; });
  exps_ = std::move(merged);
}

Monomial Monomial::var(Variable v, int exp) {
  if (exp == 0) return Monomial{};
  return Monomial{Exponents{{v, exp}}};
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : exps_) d += e;
  return d;
}

int Monomial::degree_in(Variable::Family f) const {
  int d = 0;
  for (const auto& [v, e] : exps_)
    if (v.family == f) d += e;
  return d;
}

int Monomial::exponent_of(Variable v) const {
  for (const auto& [w, e] : exps_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::times(const Monomial& other) const {
  Exponents merged;
  merged.reserve(exps_.size() + other.exps_.size());
  auto a = exps_.begin();
  auto b = other.exps_.begin();
  while (a != exps_.end() && b != other.exps_.end()) {
    if (a->first < b->first)
      merged.push_back(*a++);
    else if (b->first < a->first)
      merged.push_back(*b++);
    else {
      merged.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  merged.insert(merged.end(), a, exps_.end());
  merged.insert(merged.end(), b, other.exps_.end());
  Monomial out;
  out.exps_ = std::move(merged);
  return out;
}

std::pair<Monomial, Monomial> Monomial::split_matrix_part() const {
  Monomial rest, mat;
  for (const auto& p : exps_) {
    if (p.first.family == Variable::Family::Matrix)
      mat.exps_.push_back(p);
    else
      rest.exps_.push_back(p);
  }
  return {rest, mat};
}

std::string Monomial::str() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : exps_) {
    if (!first) os << '*';
    first = false;
    os << v.str();
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

Polynomial Polynomial::constant(Rational c) {
  Polynomial p;
  p.add_term(Monomial::one(), c);
  return p;
}

Polynomial Polynomial::var(Variable v) {
  Polynomial p;
  p.add_term(Monomial::var(v), 1);
  return p;
}

Polynomial Polynomial::term(Monomial m, Rational c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial::one());
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Polynomial::xdegree() const { return degree_in(Variable::Family::Matrix); }

int Polynomial::degree_in(Variable::Family f) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(f));
  return d;
}

bool Polynomial::uses_family(Variable::Family f) const {
  for (const auto& [m, c] : terms_)
    if (m.degree_in(f) > 0) return true;
  return false;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& q) const {
  Polynomial out = *this;
  out += q;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& q) const {
  Polynomial out = *this;
  out -= q;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& q) const {
  Polynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : q.terms_) out.add_term(ma.times(mb), ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  *this = *this * q;
  return *this;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

Polynomial Polynomial::graded_piece(int d) const {
  return piece_of_degree_in(Variable::Family::Matrix, d);
}

Polynomial Polynomial::piece_of_degree_in(Variable::Family f, int d) const {
  Polynomial out;
  for (const auto& [m, c] : terms_)
    if (m.degree_in(f) == d) out.terms_.emplace(m, c);
  return out;
}

std::map<Monomial, Polynomial> Polynomial::split_by_non_matrix_part() const {
  std::map<Monomial, Polynomial> out;
  for (const auto& [m, c] : terms_) {
    auto [rest, mat] = m.split_matrix_part();
    out[rest].add_term(mat, c);
  }
  return out;
}

Polynomial Polynomial::substituted(Variable v, const Polynomial& value) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Monomial::Exponents kept;
    int e = 0;
    for (const auto& p : m.exponents()) {
      if (p.first == v)
        e = p.second;
      else
        kept.push_back(p);
    }
    Polynomial piece = Polynomial::term(Monomial{std::move(kept)}, c);
    for (int k = 0; k < e; ++k) piece *= value;
    out += piece;
  }
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (m.is_one())
      os << rational_to_string(a);
    else if (a == 1)
      os << m.str();
    else
      os << rational_to_string(a) << '*' << m.str();
  }
  return os.str();
}

std::vector<Monomial> monomials_of_xdegree(int m, int n, int d) {
  if (d < 0) throw Error(ErrorCode::IndexOutOfRange, "negative degree");
  std::vector<Variable> vars;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) vars.push_back(Variable::matrix(i, j));
  std::vector<Monomial> out;
  // multisets of size d over vars, lexicographic
  std::vector<int> exps(vars.size(), 0);
  auto emit = [&] {
    Monomial::Exponents e;
    for (size_t k = 0; k < vars.size(); ++k)
      if (exps[k] > 0) e.emplace_back(vars[k], exps[k]);
    out.emplace_back(std::move(e));
  };
  auto rec = [&](auto&& self, size_t idx, int remaining) -> void {
    if (idx + 1 == vars.size()) {
      exps[idx] = remaining;
      emit();
      exps[idx] = 0;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exps[idx] = e;
      self(self, idx + 1, remaining - e);
    }
    exps[idx] = 0;
  };
  if (vars.empty()) {
    if (d == 0) out.push_back(Monomial::one());
    return out;
  }
  rec(rec, 0, d);
  return out;
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

namespace {

class PolyParser {
public:
  explicit PolyParser(const std::string& text) : s_(text) {}

  Polynomial parse() {
    Polynomial p = parse_sum();
    skip_ws();
    if (pos_ != s_.size())
      fail("unexpected trailing input");
    return p;
  }

private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                "polynomial parse error at offset " + std::to_string(pos_) +
                    ": " + msg + " in \"" + s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Integer parse_integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return Integer(s_.substr(start, pos_ - start));
  }

  int parse_small_int() {
    Integer v = parse_integer();
    if (v > 1000000) fail("index too large");
    return static_cast<int>(v);
  }

  Rational parse_number() {
    Integer num = parse_integer();
    if (eat('/')) {
      Integer den = parse_integer();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  Variable parse_variable() {
    skip_ws();
    char c = s_[pos_++];
    if (c == 'X') {
      if (peek() == '{') {
        eat('{');
        int i = parse_small_int();
        if (!eat(',')) fail("expected ',' in X{i,j}");
        int j = parse_small_int();
        if (!eat('}')) fail("expected '}' in X{i,j}");
        return Variable::matrix(i, j);
      }
      skip_ws();
      if (pos_ + 1 < s_.size() + 1 && pos_ < s_.size() &&
          std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        int i = s_[pos_++] - '0';
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("expected two digit indices after X");
        int j = s_[pos_++] - '0';
        return Variable::matrix(i, j);
      }
      fail("expected indices after X");
    }
    if (c == 'a') return Variable::param(parse_small_int());
    if (c == 'u') return Variable::input(parse_small_int());
    --pos_;
    fail("expected a variable");
  }

  // factor: number | variable ['^' exp]
  Polynomial parse_term() {
    Polynomial acc = Polynomial::constant(1);
    bool first = true;
    for (;;) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc.scaled(parse_number());
      } else if (c == 'X' || c == 'a' || c == 'u') {
        Variable v = parse_variable();
        int e = 1;
        if (eat('^')) e = parse_small_int();
        acc *= Polynomial::term(Monomial::var(v, e), 1);
      } else if (first) {
        fail("expected a term");
      }
      first = false;
      if (!eat('*')) break;
    }
    return acc;
  }

  Polynomial parse_sum() {
    Polynomial acc;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    for (;;) {
      Polynomial t = parse_term();
      acc += neg ? -t : t;
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        break;
    }
    return acc;
  }
};

} // namespace

Polynomial parse_polynomial(const std::string& text) {
  return PolyParser(text).parse();
}

} // namespace nilmat
