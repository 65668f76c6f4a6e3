// End-to-end acceptance checks: one pass/fail line per criterion, nonzero
// exit status if any fail.
#include "nilmat/matrix.hpp"
#include "nilmat/quotient.hpp"
#include "nilmat/ring.hpp"
#include "nilmat/verifier.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

using namespace nilmat;

namespace {

int g_failures = 0;

void run(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& ex) {
    detail = std::string("exception: ") + ex.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::printf("[%s] %d. %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", number,
              title.c_str(), static_cast<long long>(ms), detail.empty() ? "" : " — ",
              detail.c_str());
  if (!ok) ++g_failures;
}

Polynomial X(int i, int j) { return Polynomial::var(Variable::matrix(i, j)); }

Polynomial random_poly(std::mt19937_64& rng, int m, int n) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Polynomial p;
  int t = static_cast<int>(rng() % 5);
  for (int k = 0; k < t; ++k) {
    Monomial mono;
    int d = static_cast<int>(rng() % 4);
    for (int e = 0; e < d; ++e)
      mono = mono.times(Monomial::var(Variable::matrix(
          1 + static_cast<int>(rng() % m), 1 + static_cast<int>(rng() % n))));
    p.add_term(mono, coeff(rng));
  }
  return p;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

} // namespace

int main() {
  run(1, "dimension of the 2x2 quotient algebra is 6, by both routes", [](std::string& d) {
    auto basis = algebra_dimension(2, 2);
    if (basis.dimension != 6) { d = "rewriting dimension != 6"; return false; }
    std::set<std::string> labels;
    for (const auto& l : basis.labels) labels.insert(l.str());
    std::set<std::string> expected{"det{|}", "det{1|1}", "det{1|2}",
                                   "det{2|1}", "det{2|2}", "det{1,2|1,2}"};
    if (labels != expected) { d = "basis labels differ"; return false; }
    if (quotient_dimension_by_oracle(IdealSpec::full_dtilde(2, 2)) != 6) {
      d = "oracle dimension != 6";
      return false;
    }
    return true;
  });

  run(2, "dimension sweep m,n <= 3: rewriting = oracle = sum C(m,p)C(n,p)", [](std::string& d) {
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        Integer closed = 0;
        for (int p = 0; p <= std::min(m, n); ++p) closed += binomial(m, p) * binomial(n, p);
        Integer rew = algebra_dimension(m, n).dimension;
        Integer orc = quotient_dimension_by_oracle(IdealSpec::full_dtilde(m, n));
        if (rew != closed || orc != closed) {
          d = "mismatch at " + std::to_string(m) + "x" + std::to_string(n);
          return false;
        }
      }
    return true;
  });

  run(3, "det(G) = n! * tr_m(G): normal form (full ideal) and oracle (restricted ideal), n = 2, 3",
      [](std::string& d) {
        for (int n = 2; n <= 3; ++n) {
          Matrix g = generic_matrix(n, n, IdealSpec::Kind::FullDtilde);
          Polynomial diff =
              det(g).poly() - mult_trace(g).poly().scaled(Rational(factorial(n)));
          if (!normal_form_poly(diff, n, n).is_zero()) {
            d = "normal form nonzero at n = " + std::to_string(n);
            return false;
          }
          Matrix s = generic_matrix(n, n, IdealSpec::Kind::SpecialOnly);
          Polynomial diff2 =
              det(s).poly() - mult_trace(s).poly().scaled(Rational(factorial(n)));
          if (!membership_oracle(diff2, IdealSpec::special_only(n))) {
            d = "not in the restricted ideal at n = " + std::to_string(n);
            return false;
          }
        }
        return true;
      });

  run(4, "non-vanishing: NF(det(G)) != 0 for n = 2, 3; det of an all-infinitesimal matrix is 0",
      [](std::string& d) {
        for (int n = 2; n <= 3; ++n) {
          Matrix g = generic_matrix(n, n, IdealSpec::Kind::FullDtilde);
          if (det(g).is_zero()) {
            d = "det(G) reduced to zero at n = " + std::to_string(n);
            return false;
          }
        }
        Ring r(RingSpec::nilpotent_ext(RingSpec::rationals(), 1));
        RingElement e1 = r.nilpotent_generators()[0];
        for (int n = 2; n <= 4; ++n) {
          Matrix m(r, n, n);
          for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
              m.set(i, j, e1 * r.from_integer(i + 2 * j));
          if (!det(m).is_zero()) {
            d = "all-infinitesimal det nonzero at n = " + std::to_string(n);
            return false;
          }
        }
        return true;
      });

  run(5, "full proposition suite: 14 checks, randomized (1000 cases each) and symbolic",
      [](std::string& d) {
        Budget b;
        b.cases = 1000;
        b.seed = 2026;
        for (const auto& r : verify_all(b)) {
          if (r.status != PropositionReport::Status::Pass) {
            d = r.json_line();
            return false;
          }
        }
        return true;
      });

  run(6, "mutation soundness: every proposition check rejects its corrupted input family",
      [](std::string& d) {
        Budget b;
        b.cases = 50;
        b.seed = 11;
        std::set<PropId> failed;
        for (const auto& r : verify_all_mutated(b))
          if (r.status == PropositionReport::Status::Fail) failed.insert(r.id);
        for (PropId id : all_prop_ids())
          if (!failed.count(id)) {
            d = "no fail report for " + prop_id_name(id);
            return false;
          }
        return true;
      });

  run(7, "confluence: 10^4 polynomial pairs, NF-equality vs oracle membership of the difference",
      [](std::string& d) {
        std::mt19937_64 rng(61);
        for (int t = 0; t < 10000; ++t) {
          int m = 1 + static_cast<int>(rng() % 3);
          int n = 1 + static_cast<int>(rng() % 3);
          IdealSpec ideal = IdealSpec::full_dtilde(m, n);
          Polynomial p = random_poly(rng, m, n);
          Polynomial q;
          switch (rng() % 3) {
            case 0: q = random_poly(rng, m, n); break;
            case 1: q = p + normal_form_poly(random_poly(rng, m, n), m, n); break;
            default: {
              // p plus an explicit ideal element, so equality cases occur often
              auto gens = ideal.generators();
              q = p + gens[rng() % gens.size()].scaled(1 + static_cast<int>(rng() % 3));
              if (rng() % 2) q = p + (q - p) * X(1, 1);
              break;
            }
          }
          bool nf_eq = normal_form_poly(p, m, n) == normal_form_poly(q, m, n);
          bool member = membership_oracle(p - q, ideal);
          if (nf_eq != member) {
            d = "discrepancy at pair " + std::to_string(t) + ": p = " + p.str() +
                ", q = " + q.str();
            return false;
          }
        }
        return true;
      });

  run(8, "separation: [[1,-1],[1,1]] is special, not in D-tilde, det = 2 = 2! * tr_m",
      [](std::string& d) {
        Ring q(RingSpec::rationals());
        Matrix m(q, 2, 2);
        m.set(1, 1, q.one());
        m.set(1, 2, -q.one());
        m.set(2, 1, q.one());
        m.set(2, 2, q.one());
        if (!is_special(m)) { d = "is_special failed"; return false; }
        if (is_in_dtilde(m)) { d = "is_in_dtilde unexpectedly true"; return false; }
        if (det(m) != q.from_integer(2)) { d = "det != 2"; return false; }
        if (det(m) != q.from_integer(2) * mult_trace(m)) {
          d = "det != 2! * tr_m";
          return false;
        }
        return true;
      });

  if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures ? 1 : 0;
}
