#include "nilmat/ring.hpp"

#include <cctype>
#include <sstream>

namespace nilmat {

namespace {

void validate(const RingSpec& s) {
  switch (s.kind) {
  case RingSpec::Kind::Rationals:
    break;
  case RingSpec::Kind::IntegersMod:
    if (s.modulus < 1)
      throw Error(ErrorCode::ParseError, "modulus must be positive");
    if (s.modulus % 2 == 0)
      throw Error(ErrorCode::EvenModulus,
                  "2 is not cancellable modulo " + std::to_string(s.modulus));
    break;
  case RingSpec::Kind::NilpotentExt:
    if (!s.base) throw Error(ErrorCode::ParseError, "missing base ring");
    if (s.base->kind != RingSpec::Kind::Rationals &&
        s.base->kind != RingSpec::Kind::IntegersMod)
      throw Error(ErrorCode::Unsupported,
                  "nilpotent extensions are supported over Q and Z/m only");
    if (s.nil_count < 1)
      throw Error(ErrorCode::ParseError, "generator count must be >= 1");
    validate(*s.base);
    break;
  case RingSpec::Kind::GenericDtilde:
    if (s.rows < 1 || s.cols < 1)
      throw Error(ErrorCode::ParseError, "grid sides must be >= 1");
    break;
  case RingSpec::Kind::GenericSpecial:
    if (s.rows < 2 || s.rows != s.cols)
      throw Error(ErrorCode::ParseError, "GenericSpecial needs square n >= 2");
    break;
  case RingSpec::Kind::WithParams:
    if (!s.base) throw Error(ErrorCode::ParseError, "missing base ring");
    if (s.param_count < 1)
      throw Error(ErrorCode::ParseError, "param count must be >= 1");
    if (s.base->kind != RingSpec::Kind::Rationals && !s.base->quotient_core())
      throw Error(ErrorCode::Unsupported,
                  "WithParams wraps Q or a generic quotient algebra");
    validate(*s.base);
    break;
  }
}

RingSpecPtr make(RingSpec s) {
  validate(s);
  return std::make_shared<const RingSpec>(std::move(s));
}

} // namespace

RingSpecPtr RingSpec::rationals() { return make(RingSpec{}); }

RingSpecPtr RingSpec::integers_mod(long long m) {
  RingSpec s;
  s.kind = Kind::IntegersMod;
  s.modulus = m;
  return make(std::move(s));
}

RingSpecPtr RingSpec::nilpotent_ext(RingSpecPtr base, int k) {
  RingSpec s;
  s.kind = Kind::NilpotentExt;
  s.base = std::move(base);
  s.nil_count = k;
  return make(std::move(s));
}

RingSpecPtr RingSpec::generic_dtilde(int m, int n) {
  RingSpec s;
  s.kind = Kind::GenericDtilde;
  s.rows = m;
  s.cols = n;
  return make(std::move(s));
}

RingSpecPtr RingSpec::generic_special(int n) {
  RingSpec s;
  s.kind = Kind::GenericSpecial;
  s.rows = n;
  s.cols = n;
  return make(std::move(s));
}

RingSpecPtr RingSpec::with_params(RingSpecPtr base, int r) {
  RingSpec s;
  s.kind = Kind::WithParams;
  s.base = std::move(base);
  s.param_count = r;
  return make(std::move(s));
}

bool RingSpec::same(const RingSpec& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
  case Kind::Rationals:
    return true;
  case Kind::IntegersMod:
    return modulus == other.modulus;
  case Kind::NilpotentExt:
    return nil_count == other.nil_count && base->same(*other.base);
  case Kind::GenericDtilde:
  case Kind::GenericSpecial:
    return rows == other.rows && cols == other.cols;
  case Kind::WithParams:
    return param_count == other.param_count && base->same(*other.base);
  }
  return false;
}

std::string RingSpec::str() const {
  std::ostringstream os;
  switch (kind) {
  case Kind::Rationals:
    os << "Q";
    break;
  case Kind::IntegersMod:
    os << "Zmod:" << modulus;
    break;
  case Kind::NilpotentExt:
    os << "nil:" << base->str() << ':' << nil_count;
    break;
  case Kind::GenericDtilde:
    os << "gdt:" << rows << ':' << cols;
    break;
  case Kind::GenericSpecial:
    os << "gsp:" << rows;
    break;
  case Kind::WithParams:
    os << "params:" << param_count << ':' << base->str();
    break;
  }
  return os.str();
}

namespace {

RingSpecPtr parse_spec_tokens(const std::vector<std::string>& toks, size_t& pos) {
  auto next = [&]() -> const std::string& {
    if (pos >= toks.size())
      throw Error(ErrorCode::ParseError, "truncated ring spec");
    return toks[pos++];
  };
  auto next_int = [&]() {
    const std::string& t = next();
    try {
      return std::stoll(t);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "expected an integer, got '" + t + "'");
    }
  };
  const std::string& head = next();
  if (head == "Q") return RingSpec::rationals();
  if (head == "Zmod") return RingSpec::integers_mod(next_int());
  if (head == "nil") {
    RingSpecPtr base = parse_spec_tokens(toks, pos);
    return RingSpec::nilpotent_ext(std::move(base), static_cast<int>(next_int()));
  }
  if (head == "gdt") {
    int m = static_cast<int>(next_int());
    int n = static_cast<int>(next_int());
    return RingSpec::generic_dtilde(m, n);
  }
  if (head == "gsp") return RingSpec::generic_special(static_cast<int>(next_int()));
  if (head == "params") {
    int r = static_cast<int>(next_int());
    RingSpecPtr base = parse_spec_tokens(toks, pos);
    return RingSpec::with_params(std::move(base), r);
  }
  throw Error(ErrorCode::ParseError, "unknown ring spec '" + head + "'");
}

} // namespace

RingSpecPtr RingSpec::parse(const std::string& dsl) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : dsl) {
    if (c == ':') {
      toks.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  toks.push_back(cur);
  size_t pos = 0;
  RingSpecPtr spec = parse_spec_tokens(toks, pos);
  if (pos != toks.size())
    throw Error(ErrorCode::ParseError, "trailing input in ring spec '" + dsl + "'");
  return spec;
}

const RingSpec* RingSpec::quotient_core() const {
  if (kind == Kind::GenericDtilde || kind == Kind::GenericSpecial) return this;
  if (kind == Kind::WithParams) return base->quotient_core();
  return nullptr;
}

namespace {

long long mod_reduce(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

long long mod_mul(long long a, long long b, long long m) {
  return static_cast<long long>(static_cast<__int128>(a) * b % m);
}

// x such that a*x = 1 (mod m); throws when gcd(a, m) != 1.
long long mod_inverse(long long a, long long m) {
  long long old_r = mod_reduce(a, m), r = m;
  long long old_s = 1, s = 0;
  while (r != 0) {
    long long q = old_r / r;
    long long t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1)
    throw Error(ErrorCode::Unsupported,
                std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod_reduce(old_s, m);
}

void check_poly_families(const Polynomial& p, const RingSpec& spec) {
  int params = spec.kind == RingSpec::Kind::WithParams ? spec.param_count : 0;
  const RingSpec* core = spec.quotient_core();
  for (const auto& [mono, c] : p.terms()) {
    for (const auto& [v, e] : mono.exponents()) {
      switch (v.family) {
      case Variable::Family::Input:
        throw Error(ErrorCode::Unsupported,
                    "input variables are not ring elements");
      case Variable::Family::Param:
        if (v.i < 1 || v.i > params)
          throw Error(ErrorCode::IndexOutOfRange,
                      "parameter " + v.str() + " not adjoined to this ring");
        break;
      case Variable::Family::Matrix:
        if (!core || v.i < 1 || v.i > core->rows || v.j < 1 || v.j > core->cols)
          throw Error(ErrorCode::IndexOutOfRange,
                      "variable " + v.str() + " outside this ring's grid");
        break;
      }
    }
  }
}

Polynomial normalize_for_spec(const Polynomial& p, const RingSpec& spec) {
  check_poly_families(p, spec);
  const RingSpec* core = spec.quotient_core();
  if (core && core->kind == RingSpec::Kind::GenericDtilde)
    return normal_form_poly(p, core->rows, core->cols);
  return p; // GenericSpecial has no rewriting normal form; params are free
}

} // namespace

RingElement::RingElement(RingSpecPtr spec, Payload payload)
    : spec_(std::move(spec)), payload_(std::move(payload)) {
  switch (spec_->kind) {
  case RingSpec::Kind::IntegersMod:
    payload_ = mod_reduce(std::get<long long>(payload_), spec_->modulus);
    break;
  case RingSpec::Kind::GenericDtilde:
  case RingSpec::Kind::GenericSpecial:
  case RingSpec::Kind::WithParams:
    payload_ = normalize_for_spec(std::get<Polynomial>(payload_), *spec_);
    break;
  default:
    break;
  }
}

const Polynomial& RingElement::poly() const {
  if (!std::holds_alternative<Polynomial>(payload_))
    throw Error(ErrorCode::Unsupported, "element has no polynomial payload");
  return std::get<Polynomial>(payload_);
}

bool RingElement::is_zero() const {
  switch (spec_->kind) {
  case RingSpec::Kind::Rationals:
    return std::get<Rational>(payload_) == 0;
  case RingSpec::Kind::IntegersMod:
    return std::get<long long>(payload_) == 0;
  case RingSpec::Kind::NilpotentExt: {
    for (const auto& c : std::get<NilPayload>(payload_))
      if (!c.is_zero()) return false;
    return true;
  }
  default: {
    const RingSpec* core = spec_->quotient_core();
    const auto& p = std::get<Polynomial>(payload_);
    if (core && core->kind == RingSpec::Kind::GenericSpecial)
      return membership_oracle(p, IdealSpec::special_only(core->rows));
    return p.is_zero();
  }
  }
}

namespace {

void require_same_spec(const RingElement& a, const RingElement& b) {
  if (!a.spec() || !b.spec() || !a.spec()->same(*b.spec()))
    throw Error(ErrorCode::RingMismatch, "operands from different rings");
}

} // namespace

RingElement RingElement::operator+(const RingElement& o) const {
  require_same_spec(*this, o);
  switch (spec_->kind) {
  case RingSpec::Kind::Rationals:
    return {spec_, std::get<Rational>(payload_) + std::get<Rational>(o.payload_)};
  case RingSpec::Kind::IntegersMod:
    return {spec_, std::get<long long>(payload_) + std::get<long long>(o.payload_)};
  case RingSpec::Kind::NilpotentExt: {
    const auto& a = std::get<NilPayload>(payload_);
    const auto& b = std::get<NilPayload>(o.payload_);
    NilPayload out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return {spec_, std::move(out)};
  }
  default:
    return {spec_, std::get<Polynomial>(payload_) + std::get<Polynomial>(o.payload_)};
  }
}

RingElement RingElement::operator-() const {
  switch (spec_->kind) {
  case RingSpec::Kind::Rationals:
    return {spec_, -std::get<Rational>(payload_)};
  case RingSpec::Kind::IntegersMod:
    return {spec_, -std::get<long long>(payload_)};
  case RingSpec::Kind::NilpotentExt: {
    NilPayload out;
    for (const auto& c : std::get<NilPayload>(payload_)) out.push_back(-c);
    return {spec_, std::move(out)};
  }
  default:
    return {spec_, -std::get<Polynomial>(payload_)};
  }
}

RingElement RingElement::operator-(const RingElement& o) const {
  return *this + (-o);
}

RingElement RingElement::operator*(const RingElement& o) const {
  require_same_spec(*this, o);
  switch (spec_->kind) {
  case RingSpec::Kind::Rationals:
    return {spec_, std::get<Rational>(payload_) * std::get<Rational>(o.payload_)};
  case RingSpec::Kind::IntegersMod:
    return {spec_, mod_mul(std::get<long long>(payload_),
                           std::get<long long>(o.payload_), spec_->modulus)};
  case RingSpec::Kind::NilpotentExt: {
    // (b0 + sum b_i e_i)(c0 + sum c_i e_i) = b0 c0 + sum (b0 c_i + c0 b_i) e_i
    const auto& a = std::get<NilPayload>(payload_);
    const auto& b = std::get<NilPayload>(o.payload_);
    NilPayload out;
    out.reserve(a.size());
    out.push_back(a[0] * b[0]);
    for (size_t i = 1; i < a.size(); ++i)
      out.push_back(a[0] * b[i] + b[0] * a[i]);
    return {spec_, std::move(out)};
  }
  default:
    return {spec_, std::get<Polynomial>(payload_) * std::get<Polynomial>(o.payload_)};
  }
}

bool RingElement::operator==(const RingElement& o) const {
  require_same_spec(*this, o);
  const RingSpec* core = spec_->quotient_core();
  if (core && core->kind == RingSpec::Kind::GenericSpecial)
    return (*this - o).is_zero();
  return payload_ == o.payload_;
}

namespace {

bool scalar_is_one(const RingElement& e) {
  if (const auto* r = std::get_if<Rational>(&e.payload())) return *r == 1;
  if (const auto* v = std::get_if<long long>(&e.payload())) return *v == 1;
  return false;
}

bool scalar_is_minus_one(const RingElement& e) {
  if (const auto* r = std::get_if<Rational>(&e.payload())) return *r == -1;
  return false;
}

} // namespace

std::string RingElement::str() const {
  switch (spec_->kind) {
  case RingSpec::Kind::Rationals:
    return rational_to_string(std::get<Rational>(payload_));
  case RingSpec::Kind::IntegersMod:
    return std::to_string(std::get<long long>(payload_));
  case RingSpec::Kind::NilpotentExt: {
    const auto& coeffs = std::get<NilPayload>(payload_);
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const RingElement& c, int idx) {
      if (c.is_zero()) return;
      std::string cs = c.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (first) {
        if (neg) {
          os << '-';
          cs = cs.substr(1);
        }
      } else {
        os << (neg ? " - " : " + ");
        if (neg) cs = cs.substr(1);
      }
      first = false;
      if (idx == 0) {
        os << cs;
      } else if (scalar_is_one(c) || scalar_is_minus_one(c)) {
        os << 'e' << idx;
      } else {
        os << cs << "*e" << idx;
      }
    };
    for (size_t i = 0; i < coeffs.size(); ++i)
      emit(coeffs[i], static_cast<int>(i));
    return first ? "0" : os.str();
  }
  default:
    return std::get<Polynomial>(payload_).str();
  }
}

Ring::Ring(RingSpecPtr spec) : spec_(std::move(spec)) {
  if (!spec_) throw Error(ErrorCode::ParseError, "null ring spec");
  validate(*spec_);
}

RingElement Ring::zero() const { return from_rational(0); }
RingElement Ring::one() const { return from_rational(1); }

RingElement Ring::from_integer(const Integer& v) const {
  return from_rational(Rational(v));
}

RingElement Ring::from_rational(const Rational& v) const {
  switch (spec_->kind) {
  case RingSpec::Kind::Rationals:
    return {spec_, v};
  case RingSpec::Kind::IntegersMod: {
    long long num = mod_reduce(static_cast<long long>(numerator(v) % spec_->modulus),
                               spec_->modulus);
    long long den = mod_reduce(static_cast<long long>(denominator(v) % spec_->modulus),
                               spec_->modulus);
    return {spec_, mod_mul(num, mod_inverse(den, spec_->modulus), spec_->modulus)};
  }
  case RingSpec::Kind::NilpotentExt: {
    Ring base(spec_->base);
    RingElement::NilPayload coeffs;
    coeffs.push_back(base.from_rational(v));
    for (int i = 0; i < spec_->nil_count; ++i) coeffs.push_back(base.zero());
    return {spec_, std::move(coeffs)};
  }
  default:
    return {spec_, Polynomial::constant(v)};
  }
}

RingElement Ring::from_poly(const Polynomial& p) const {
  if (spec_->kind == RingSpec::Kind::Rationals ||
      spec_->kind == RingSpec::Kind::IntegersMod) {
    if (!p.is_constant())
      throw Error(ErrorCode::Unsupported, "scalar ring expects a constant");
    return from_rational(p.constant_term());
  }
  if (spec_->kind == RingSpec::Kind::NilpotentExt)
    throw Error(ErrorCode::Unsupported,
                "nilpotent extensions have no polynomial payload");
  return {spec_, p};
}

std::vector<RingElement> Ring::nilpotent_generators() const {
  switch (spec_->kind) {
  case RingSpec::Kind::NilpotentExt: {
    Ring base(spec_->base);
    std::vector<RingElement> gens;
    for (int i = 1; i <= spec_->nil_count; ++i) {
      RingElement::NilPayload coeffs(spec_->nil_count + 1, base.zero());
      coeffs[i] = base.one();
      gens.emplace_back(spec_, std::move(coeffs));
    }
    return gens;
  }
  default: {
    const RingSpec* core = spec_->quotient_core();
    if (!core)
      throw Error(ErrorCode::NotANilpotentRing,
                  spec_->str() + " has no distinguished nilpotent generators");
    std::vector<RingElement> gens;
    for (int i = 1; i <= core->rows; ++i)
      for (int j = 1; j <= core->cols; ++j)
        gens.push_back(from_poly(Polynomial::var(Variable::matrix(i, j))));
    return gens;
  }
  }
}

std::vector<RingElement> Ring::params() const {
  if (spec_->kind != RingSpec::Kind::WithParams)
    throw Error(ErrorCode::Unsupported, spec_->str() + " has no parameters");
  std::vector<RingElement> out;
  for (int r = 1; r <= spec_->param_count; ++r)
    out.push_back(from_poly(Polynomial::var(Variable::param(r))));
  return out;
}

namespace {

// Element grammar for nilpotent extensions: sum of terms, each a scalar, a
// generator eI, or scalar*eI.
class NilParser {
public:
  NilParser(const Ring& ring, const std::string& text) : ring_(ring), s_(text) {}

  RingElement parse() {
    RingElement v = parse_sum();
    skip_ws();
    if (pos_ != s_.size())
      throw Error(ErrorCode::ParseError, "trailing input in element '" + s_ + "'");
    return v;
  }

private:
  const Ring& ring_;
  const std::string& s_;
  size_t pos_ = 0;

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

  Rational parse_number() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start)
      throw Error(ErrorCode::ParseError, "expected digits in '" + s_ + "'");
    Integer num(s_.substr(start, pos_ - start));
    if (eat('/')) {
      size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer den(s_.substr(dstart, pos_ - dstart));
      return {num, den};
    }
    return Rational(num);
  }

  RingElement parse_factor() {
    if (peek() == 'e') {
      ++pos_;
      int idx = static_cast<int>(static_cast<long long>(parse_number()));
      auto gens = ring_.nilpotent_generators();
      if (idx < 1 || idx > static_cast<int>(gens.size()))
        throw Error(ErrorCode::IndexOutOfRange, "no generator e" + std::to_string(idx));
      return gens[idx - 1];
    }
    return ring_.from_rational(parse_number());
  }

  RingElement parse_term() {
    RingElement acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  RingElement parse_sum() {
    bool neg = eat('-');
    if (!neg) eat('+');
    RingElement acc = neg ? -parse_term() : parse_term();
    for (;;) {
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        break;
    }
    return acc;
  }
};

} // namespace

RingElement Ring::parse(const std::string& text) const {
  switch (spec_->kind) {
  case RingSpec::Kind::Rationals:
  case RingSpec::Kind::IntegersMod: {
    Polynomial p = parse_polynomial(text);
    return from_poly(p);
  }
  case RingSpec::Kind::NilpotentExt:
    return NilParser(*this, text).parse();
  default:
    return from_poly(parse_polynomial(text));
  }
}

bool is_two_cancellable_witness(const RingElement& x) {
  return !(x + x).is_zero() || x.is_zero();
}

} // namespace nilmat
