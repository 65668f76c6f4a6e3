#include "nilmat/ring.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace nilmat;

namespace {

RingElement random_element(const Ring& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-6, 6);
  const RingSpec& spec = *ring.spec();
  switch (spec.kind) {
    case RingSpec::Kind::Rationals:
      return ring.from_rational(Rational(small(rng), 1 + (rng() % 5)));
    case RingSpec::Kind::IntegersMod:
      return ring.from_integer(small(rng));
    case RingSpec::Kind::NilpotentExt: {
      Ring base(spec.base);
      RingElement e = ring.from_integer(small(rng));
      auto gens = ring.nilpotent_generators();
      for (const auto& g : gens)
        e = e + g * ring.from_integer(small(rng));
      return e;
    }
    default: { // quotient / param rings: random low-degree polynomial
      std::uniform_int_distribution<int> nterms(0, 3);
      const RingSpec* core = spec.quotient_core();
      Polynomial p = Polynomial::constant(small(rng));
      int t = nterms(rng);
      for (int k = 0; k < t; ++k) {
        Monomial mono;
        int d = static_cast<int>(rng() % 3);
        for (int e2 = 0; e2 < d; ++e2)
          mono = mono.times(Monomial::var(Variable::matrix(
              1 + static_cast<int>(rng() % core->rows),
              1 + static_cast<int>(rng() % core->cols))));
        if (spec.kind == RingSpec::Kind::WithParams && rng() % 2)
          mono = mono.times(
              Monomial::var(Variable::param(1 + static_cast<int>(rng() % spec.param_count))));
        p.add_term(mono, small(rng));
      }
      return ring.from_poly(p);
    }
  }
}

} // namespace

TEST_CASE("spec construction and validation") {
  CHECK_NOTHROW((void)RingSpec::integers_mod(9));
  CHECK_THROWS_AS((void)RingSpec::integers_mod(8), Error);
  CHECK_THROWS_AS((void)RingSpec::integers_mod(2), Error);
  CHECK_NOTHROW((void)RingSpec::nilpotent_ext(RingSpec::rationals(), 3));
  CHECK_NOTHROW((void)RingSpec::with_params(RingSpec::generic_dtilde(2, 2), 2));
}

TEST_CASE("ring-spec DSL round-trips") {
  for (const char* dsl : {"Q", "Zmod:9", "nil:Q:3", "nil:Zmod:9:2", "gdt:2:2",
                          "gsp:3", "params:2:gdt:2:2", "params:1:Q"}) {
    auto spec = RingSpec::parse(dsl);
    CHECK(spec->str() == dsl);
    CHECK(RingSpec::parse(spec->str())->same(*spec));
  }
  CHECK_THROWS_AS((void)RingSpec::parse("frobnicate"), Error);
  CHECK_THROWS_AS((void)RingSpec::parse("Zmod:4"), Error);
}

TEST_CASE("two-cancellability witnesses") {
  Ring q(RingSpec::rationals());
  CHECK(is_two_cancellable_witness(q.from_integer(5)));
  CHECK(is_two_cancellable_witness(q.zero()));
  Ring z9(RingSpec::integers_mod(9));
  CHECK(is_two_cancellable_witness(z9.from_integer(3)));
  Ring nil2(RingSpec::nilpotent_ext(RingSpec::rationals(), 2));
  CHECK(is_two_cancellable_witness(nil2.nilpotent_generators()[0]));
}

TEST_CASE("nilpotent generators") {
  Ring nil3(RingSpec::nilpotent_ext(RingSpec::rationals(), 3));
  auto es = nil3.nilpotent_generators();
  REQUIRE(es.size() == 3);
  for (const auto& a : es)
    for (const auto& b : es)
      CHECK((a * b).is_zero());

  Ring gdt(RingSpec::generic_dtilde(2, 2));
  auto xs = gdt.nilpotent_generators();
  REQUIRE(xs.size() == 4);
  CHECK((xs[0] * xs[0]).is_zero()); // X11^2 = 0 in the full quotient

  Ring gsp(RingSpec::generic_special(2));
  auto ys = gsp.nilpotent_generators();
  CHECK_FALSE((ys[0] * ys[0]).is_zero()); // X11^2 survives the special ideal
  // but the off-diagonal relation holds
  CHECK(ys[0] * ys[3] + ys[1] * ys[2] == gsp.zero());

  CHECK_THROWS_AS((void)Ring(RingSpec::rationals()).nilpotent_generators(), Error);
  CHECK_THROWS_AS((void)Ring(RingSpec::integers_mod(9)).nilpotent_generators(), Error);
}

TEST_CASE("commutative ring axioms, randomized") {
  std::mt19937_64 rng(41);
  for (const char* dsl : {"Q", "Zmod:9", "Zmod:7", "nil:Q:2", "nil:Zmod:9:3",
                          "gdt:2:2", "gsp:2", "params:2:gdt:2:2"}) {
    Ring ring(RingSpec::parse(dsl));
    CAPTURE(dsl);
    for (int t = 0; t < 1000; ++t) {
      RingElement a = random_element(ring, rng);
      RingElement b = random_element(ring, rng);
      RingElement c = random_element(ring, rng);
      CHECK(a + b == b + a);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + ring.zero() == a);
      CHECK((a - a).is_zero());
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * ring.one() == a);
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("element print/parse round-trips") {
  Ring q(RingSpec::rationals());
  CHECK(q.parse("3/4") == q.from_rational(Rational(3, 4)));
  CHECK(q.parse("3/4").str() == "3/4");

  Ring nil2(RingSpec::nilpotent_ext(RingSpec::rationals(), 2));
  RingElement x = nil2.parse("2*e1 + e2");
  CHECK(x.str() == "2*e1 + e2");
  auto es = nil2.nilpotent_generators();
  CHECK(x == es[0] + es[0] + es[1]);

  Ring gdt(RingSpec::generic_dtilde(2, 2));
  RingElement y = gdt.parse("5 + 2*X11*X22");
  CHECK(y.str() == "5 + 2*X11*X22");
  CHECK(gdt.parse("X12*X21") == -gdt.parse("X11*X22")); // reduced on entry

  std::mt19937_64 rng(43);
  for (const char* dsl : {"Q", "Zmod:9", "nil:Q:3", "gdt:2:2", "params:2:gdt:2:2"}) {
    Ring ring(RingSpec::parse(dsl));
    for (int t = 0; t < 200; ++t) {
      RingElement a = random_element(ring, rng);
      CHECK(ring.parse(a.str()) == a);
    }
  }
}

TEST_CASE("modular inverses and unsupported denominators") {
  Ring z9(RingSpec::integers_mod(9));
  CHECK(z9.from_rational(Rational(1, 2)) == z9.from_integer(5)); // 2*5 = 10 = 1
  CHECK_THROWS_AS((void)z9.from_rational(Rational(1, 3)), Error);
}

TEST_CASE("mixed-ring arithmetic is rejected") {
  Ring q(RingSpec::rationals());
  Ring z9(RingSpec::integers_mod(9));
  CHECK_THROWS_AS((void)(q.one() + z9.one()), Error);
}
