#pragma once

#include "nilmat/poly.hpp"
#include "nilmat/quotient.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace nilmat {

// Description of a supported commutative ring. The standing assumption that
// 2 is cancellable rules out even moduli at construction time.
struct RingSpec;
using RingSpecPtr = std::shared_ptr<const RingSpec>;

struct RingSpec {
  enum class Kind {
    Rationals,
    IntegersMod,   // odd modulus only
    NilpotentExt,  // base ring plus generators e_1..e_k with e_i*e_j = 0
    GenericDtilde, // k[X_11..X_mn] / J_full
    GenericSpecial,// k[X_11..X_nn] / J_special
    WithParams,    // adjoin free polynomial parameters a_1..a_r
  };

  Kind kind = Kind::Rationals;
  long long modulus = 0; // IntegersMod
  RingSpecPtr base;      // NilpotentExt, WithParams
  int nil_count = 0;     // NilpotentExt
  int rows = 0;          // GenericDtilde / GenericSpecial
  int cols = 0;
  int param_count = 0;   // WithParams

  static RingSpecPtr rationals();
  static RingSpecPtr integers_mod(long long m); // throws Error(EvenModulus)
  static RingSpecPtr nilpotent_ext(RingSpecPtr base, int k);
  static RingSpecPtr generic_dtilde(int m, int n);
  static RingSpecPtr generic_special(int n);
  static RingSpecPtr with_params(RingSpecPtr base, int r);

  [[nodiscard]] bool same(const RingSpec& other) const;

  // Ring-spec mini-DSL: Q, Zmod:9, nil:Q:3, gdt:2:2, gsp:3, params:2:gdt:2:2
  [[nodiscard]] std::string str() const;
  static RingSpecPtr parse(const std::string& dsl);

  // The GenericDtilde/GenericSpecial spec underneath any WithParams wrapper,
  // or nullptr if the core is not a quotient algebra.
  [[nodiscard]] const RingSpec* quotient_core() const;
};

class RingElement {
public:
  // NilPayload holds k+1 base-ring coefficients: constant, then e_1..e_k.
  using NilPayload = std::vector<RingElement>;
  using Payload = std::variant<Rational, long long, NilPayload, Polynomial>;

  RingElement() = default;
  RingElement(RingSpecPtr spec, Payload payload);

  [[nodiscard]] const RingSpecPtr& spec() const { return spec_; }
  [[nodiscard]] const Payload& payload() const { return payload_; }
  [[nodiscard]] const Polynomial& poly() const; // quotient rings only

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::string str() const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  // Exact equality of canonical payloads; for GenericSpecial rings this runs
  // the ideal-membership oracle on the difference.
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

private:
  RingSpecPtr spec_;
  Payload payload_ = Rational(0);
};

// Handle exposing zero, one, arithmetic-ready elements, generators, and the
// element parse/print grammar for one RingSpec.
class Ring {
public:
  explicit Ring(RingSpecPtr spec);

  [[nodiscard]] const RingSpecPtr& spec() const { return spec_; }

  [[nodiscard]] RingElement zero() const;
  [[nodiscard]] RingElement one() const;
  [[nodiscard]] RingElement from_integer(const Integer& v) const;
  // Throws Error(Unsupported) when the denominator is not invertible.
  [[nodiscard]] RingElement from_rational(const Rational& v) const;
  // Wrap a polynomial as an element of a quotient/param ring (reduces it).
  [[nodiscard]] RingElement from_poly(const Polynomial& p) const;

  // Distinguished generators: e_i for NilpotentExt, classes of X_ij for the
  // generic algebras. Throws Error(NotANilpotentRing) for Q and Z/m.
  [[nodiscard]] std::vector<RingElement> nilpotent_generators() const;
  // Free parameters a_1..a_r of a WithParams ring.
  [[nodiscard]] std::vector<RingElement> params() const;

  [[nodiscard]] RingElement parse(const std::string& text) const;

private:
  RingSpecPtr spec_;
};

inline Ring ring_make(RingSpecPtr spec) { return Ring(std::move(spec)); }

// True iff (x + x = 0 implies x = 0) holds for this particular x.
bool is_two_cancellable_witness(const RingElement& x);

} // namespace nilmat
