#include "doctest.h"

#include <numeric>

#include "ellgen/cyclo.hpp"
#include "ellgen/errors.hpp"
#include "ellgen/rational.hpp"
#include "oracles.hpp"

using namespace ellgen;

TEST_CASE("rationals serialize as num/den and parse back") {
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(parse_rational("-3/2") == make_rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("10/4") == make_rational(5, 2));
  for (const char* bad : {"", "1/0", "x", "1/2/3", "1.5", "/3", " 2"})
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
}

TEST_CASE("binomials and factorials") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(4, 7) == 0);
  CHECK(factorial(10) == 3628800);
}

TEST_CASE("Bernoulli numbers satisfy sum_k binom(n+1, k) B_k = 0") {
  const auto b = bernoulli_numbers(20);
  CHECK(b[0] == 1);
  CHECK(b[1] == make_rational(-1, 2));
  CHECK(b[12] == make_rational(-691, 2730));
  for (int n = 1; n <= 20; ++n) {
    Rational s = 0;
    for (int k = 0; k <= n; ++k) s += Rational(binomial(n + 1, k)) * b[k];
    CHECK(s == 0);
  }
  for (int n = 3; n <= 20; n += 2) CHECK(b[n] == 0);
}

TEST_CASE("cyclotomic polynomials multiply to x^n - 1") {
  for (int n = 1; n <= 30; ++n) {
    IntPoly prod{Integer(1)};
    for (int d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const IntPoly& phi = cyclotomic_poly(d);
      IntPoly next(prod.size() + phi.size() - 1, Integer(0));
      for (std::size_t i = 0; i < prod.size(); ++i)
        for (std::size_t j = 0; j < phi.size(); ++j) next[i + j] += prod[i] * phi[j];
      prod = next;
    }
    IntPoly expected(n + 1, Integer(0));
    expected[0] = -1;
    expected[n] = 1;
    CHECK(prod == expected);
    CHECK(static_cast<int>(cyclotomic_poly(n).size()) == euler_phi(n) + 1);
  }
}

TEST_CASE("field axioms in Q(zeta_N)") {
  std::mt19937_64 rng(7);
  for (int n : {4, 5, 6, 7, 8, 9, 12, 15}) {
    const auto& f = CycloField::get(n);
    CHECK(&f == &CycloField::get(n));
    const Cyclo one(f, Rational(1));
    for (int trial = 0; trial < 20; ++trial) {
      const Cyclo a = oracle::random_cyclo(f, rng), b = oracle::random_cyclo(f, rng), c = oracle::random_cyclo(f, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == Cyclo(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == one);
      CHECK(a.conj().conj() == a);
      CHECK((a * b).conj() == a.conj() * b.conj());
      // the numeric embedding is a ring homomorphism
      CHECK(std::abs(oracle::numeric(a * b) - oracle::numeric(a) * oracle::numeric(b)) < 1e-6);
      CHECK(std::abs(oracle::numeric(a.conj()) - std::conj(oracle::numeric(a))) < 1e-9);
    }
  }
}

TEST_CASE("roots of unity") {
  for (int n : {4, 5, 6, 9, 12}) {
    const auto& f = CycloField::get(n);
    CHECK(Cyclo::zeta_power(f, n) == Cyclo(f, Rational(1)));
    CHECK(Cyclo::zeta_power(f, -1) * Cyclo::zeta_power(f, 1) == Cyclo(f, Rational(1)));
    Cyclo s(f);
    for (int j = 0; j < n; ++j) s += Cyclo::zeta_power(f, j);
    CHECK(s.is_zero());
    CHECK(std::abs(to_complex(Cyclo::zeta_power(f, 1)) - std::polar(1.0, 2 * 3.14159265358979323846 / n)) < 1e-12);
  }
  CHECK_THROWS_AS(Cyclo(CycloField::get(5)).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Cyclo(CycloField::get(5)) + Cyclo(CycloField::get(7)), LevelMismatch);
}

TEST_CASE("NZ membership and coset representatives") {
  const auto& f = CycloField::get(6);
  CHECK(in_NZ(Cyclo(f, make_rational(5, 72))));
  CHECK_FALSE(in_NZ(Cyclo(f, make_rational(1, 5))));
  // 1/10 = 1/2 * 1/5 with 1/2 a unit: representative r/5 with r = 2^{-1} mod 5 = 3
  CHECK(reduce_mod_NZ(Cyclo(f, make_rational(1, 10))).rep == Cyclo(f, make_rational(3, 5)));
  CHECK(reduce_mod_NZ(Cyclo(f, make_rational(-7, 12))).is_zero());

  std::mt19937_64 rng(11);
  for (int n : {4, 5, 6, 8}) {
    const auto& g = CycloField::get(n);
    for (int trial = 0; trial < 30; ++trial) {
      const Cyclo a = oracle::random_cyclo(g, rng, 50, 30);
      const NZCoset k = reduce_mod_NZ(a);
      CHECK(reduce_mod_NZ(k.rep) == k);
      CHECK(in_NZ(a - k.rep));
      CHECK(reduce_mod_NZ(a + oracle::random_unit_denominator(g, rng)) == k);
      for (const auto& c : k.rep.coords()) {
        CHECK(c >= 0);
        CHECK(c < 1);
        CHECK(std::gcd(c.get_den().get_si(), static_cast<long>(n)) == 1);
      }
    }
  }
}

TEST_CASE("embedding and restriction between cyclotomic fields") {
  std::mt19937_64 rng(3);
  const auto& f5 = CycloField::get(5);
  const auto& f20 = CycloField::get(20);
  for (int trial = 0; trial < 10; ++trial) {
    const Cyclo a = oracle::random_cyclo(f5, rng), b = oracle::random_cyclo(f5, rng);
    CHECK(embed(a * b, f20) == embed(a, f20) * embed(b, f20));
    CHECK(restrict_to(embed(a, f20), f5) == a);
  }
  CHECK_FALSE(restrict_to(Cyclo::zeta_power(f20, 1), f5).has_value());
  // zeta_20^4 = zeta_5
  CHECK(restrict_to(Cyclo::zeta_power(f20, 4), f5) == Cyclo::zeta_power(f5, 1));
}

TEST_CASE("serialization round trip and malformed coordinates") {
  std::mt19937_64 rng(5);
  const auto& f = CycloField::get(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Cyclo a = oracle::random_cyclo(f, rng);
    CHECK(parse_cyclo(f, serialize(a)) == a);
  }
  CHECK(serialize(Cyclo(f, make_rational(1, 2)))[0] == "1/2");
  CHECK_THROWS_AS(parse_cyclo(f, {"1/2"}), ParseError);
  CHECK_THROWS_AS(parse_cyclo(CycloField::get(4), {"1/2", "a"}), ParseError);
  CHECK(to_display(Cyclo(CycloField::get(5), std::vector<Rational>{make_rational(1, 2), -3, 1, 0})) ==
        "1/2 - 3*z + z^2");
}

TEST_CASE("chi_y of projective spaces") {
  const auto& f = CycloField::get(5);
  for (int n = 0; n <= 4; ++n) {
    // sum_{i<=n} (-y)^i at y = 2 is ((-2)^{n+1} - 1) / (-3)
    Integer p = 1;
    for (int i = 0; i <= n; ++i) p *= -2;
    CHECK(chi_y_projective(n, Cyclo(f, Rational(2))) == Cyclo(f, make_rational(Integer(p - 1), Integer(-3))));
  }
  // y = -1 gives the Euler characteristic n + 1
  CHECK(chi_y_projective(3, Cyclo(f, Rational(-1))) == Cyclo(f, Rational(4)));
}

TEST_CASE("small cyclotomic facts") {
  CHECK(cyclotomic_poly(1) == IntPoly{-1, 1});
  CHECK(cyclotomic_poly(4) == IntPoly{1, 0, 1});
  CHECK(cyclotomic_poly(5) == IntPoly{1, 1, 1, 1, 1});
  const auto& f5 = CycloField::get(5);
  const Cyclo z = Cyclo::zeta_power(f5, 1), one(f5, Rational(1));
  CHECK(z * Cyclo::zeta_power(f5, 4) == one);
  const Cyclo inv = (one - z).inverse();
  CHECK(inv * (one - z) == one);
  const Cyclo scaled = inv * Rational(5);
  for (const auto& c : scaled.coords()) CHECK(c.get_den() == 1);
  const auto& f4 = CycloField::get(4);
  CHECK((Cyclo::zeta_power(f4, 1) + Cyclo::zeta_power(f4, 3)).is_zero());

  CHECK(in_NZ(Cyclo(f5, make_rational(1, 5))));
  CHECK_FALSE(in_NZ(Cyclo(f5, make_rational(1, 2))));
  CHECK(in_NZ((one + z) * make_rational(1, 25)));
  CHECK(reduce_mod_NZ(Cyclo(f5, make_rational(7, 10))).rep == Cyclo(f5, make_rational(1, 2)));
  CHECK(reduce_mod_NZ(Cyclo(f5, make_rational(3, 25))).is_zero());
  CHECK(reduce_mod_NZ(Cyclo(f4, make_rational(5, 6))).rep == Cyclo(f4, make_rational(1, 3)));
}
