#include "doctest.h"

#include <numeric>

#include "ellgen/errors.hpp"
#include "ellgen/modforms.hpp"
#include "oracles.hpp"

using namespace ellgen;

namespace {

/// |{(c, d) in (Z/N)^2 : gcd(c, d, N) = 1}|: the SL_2(Z)-orbit of (0, 1), whose stabilizer is Gamma_1(N).
long brute_index(int n) {
  long count = 0;
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      if (std::gcd(std::gcd(c, d), n) == 1) ++count;
  return count;
}

QSeries e4(const CycloField& f, std::size_t prec) {
  QSeries s = QSeries::one(f, prec);
  for (std::size_t n = 1; n < prec; ++n) s.set(n, Cyclo(f, Rational(240 * oracle::sigma(3, n))));
  return s;
}

}  // namespace

TEST_CASE("Dirichlet characters") {
  for (int m : {3, 4, 5, 7, 8, 12, 15}) {
    const int l = ambient_level(m);
    const auto chars = dirichlet_characters(m, l);
    CHECK(static_cast<int>(chars.size()) == euler_phi(m));
    const auto& f = CycloField::get(l);
    for (const auto& chi : chars) {
      for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
      CHECK(chi.value(1) == Cyclo(f, Rational(1)));
      CHECK(chi.value(m + 2) == chi.value(2));
      // orthogonality: sum_a chi(a) = phi(m) for the trivial character, 0 otherwise
      Cyclo s(f);
      for (long a = 0; a < m; ++a) s += chi.value(a);
      CHECK(s == Cyclo(f, Rational(chi.is_trivial() ? euler_phi(m) : 0)));
      CHECK(m % chi.conductor() == 0);
    }
  }
  // primitive characters mod p: all but the trivial one; mod 8 there are two
  CHECK(primitive_characters(5, ambient_level(5)).size() == 3);
  CHECK(primitive_characters(8, ambient_level(8)).size() == 2);
  CHECK(primitive_characters(1, 1).size() == 1);
  CHECK(carmichael(8) == 2);
  CHECK(carmichael(15) == 4);
}

TEST_CASE("generalized Bernoulli numbers") {
  const auto triv = dirichlet_characters(1, 1).front();
  const auto b = bernoulli_numbers(8);
  for (int k = 2; k <= 8; ++k) CHECK(gen_bernoulli(triv, k) == Cyclo(CycloField::get(1), b[k]));
  // for odd chi, B_{1,chi} = (1/M) sum_a a chi(a)
  for (int m : {3, 4, 5, 7, 8}) {
    const int l = ambient_level(m);
    for (const auto& chi : primitive_characters(m, l)) {
      if (chi.parity() != -1) continue;
      Cyclo s(chi.field());
      for (long a = 1; a < m; ++a) s += chi.value(a) * Rational(a);
      CHECK(gen_bernoulli(chi, 1) == s * make_rational(1, m));
    }
  }
  const auto chi4 = primitive_characters(4, 4).front();
  CHECK(gen_bernoulli(chi4, 1) == Cyclo(CycloField::get(4), make_rational(-1, 2)));
}

TEST_CASE("Eisenstein series for trivial characters") {
  const auto one = dirichlet_characters(1, 1).front();
  const QSeries e = eisenstein(one, one, 1, 4, 10, 1);
  CHECK(e[0] == Cyclo(e.field(), make_rational(1, 240)));
  for (std::size_t n = 1; n < 10; ++n) CHECK(e[n] == Cyclo(e.field(), Rational(oracle::sigma(3, n))));
  const QSeries e2 = eisenstein(one, one, 3, 2, 10, 3);
  // E_2(q) - 3 E_2(q^3) with E_2 = -1/24 + sum sigma_1(n) q^n
  for (std::size_t n = 0; n < 10; ++n) {
    Rational expected = n == 0 ? make_rational(-1, 24) + make_rational(3, 24) : Rational(oracle::sigma(1, n));
    if (n > 0 && n % 3 == 0) expected -= 3 * Rational(oracle::sigma(1, n / 3));
    CHECK(e2[n] == Cyclo(e2.field(), expected));
  }
}

TEST_CASE("index, cusps, genus and dimensions of Gamma_1(N)") {
  for (int n = 4; n <= 30; ++n) CHECK(gamma1_index(n) == brute_index(n));
  const std::vector<std::pair<int, long>> cusps{{4, 3}, {5, 4}, {6, 4}, {7, 6}, {8, 6}, {11, 10}, {12, 10}};
  for (const auto& [n, c] : cusps) CHECK(gamma1_cusps(n) == c);
  const std::vector<std::pair<int, long>> genera{{5, 0}, {10, 0}, {11, 1}, {13, 2}, {16, 2}, {17, 5}, {20, 3}};
  for (const auto& [n, g] : genera) CHECK(gamma1_genus(n) == g);
  CHECK(dim_Mk(5, 2) == 3);
  CHECK(dim_Mk(5, 1) == 2);
  CHECK(dim_Mk(4, 3) == 2);
  CHECK(dim_Mk(11, 2) == 10);
  CHECK(dim_Mk(7, 2) == 5);
  CHECK(sturm_bound(5, 2) == 5);
  CHECK(sturm_bound(4, 4) == 5);
  CHECK_THROWS_AS(dim_Mk(23, 1), UnsupportedLevel);
}

TEST_CASE("weight bases have full rank and contain E_4") {
  for (int n : {4, 5, 6, 7, 8})
    for (int k = 1; k <= 4; ++k) {
      const std::size_t prec = sturm_bound(n, k) + 2;
      const ModFormBasis b = weight_basis(n, k, prec);
      CHECK(static_cast<long>(b.elements.size()) == dim_Mk(n, k));
      CHECK(b.certificate.rank == b.certificate.dimension);
      CHECK(b.field().level() == n);
      for (std::size_t i = 0; i < b.elements.size(); ++i)
        for (std::size_t j = 0; j < b.pivots.size(); ++j)
          CHECK(b.elements[i][b.pivots[j]] == Cyclo(b.field(), Rational(i == j ? 1 : 0)));
      if (k == 4) {
        const auto& f = b.field();
        CHECK(is_in_span(e4(f, prec), b).member);
        CHECK(is_in_span(e4(f, prec).substitute_power(n), b).member);
      }
    }
}

TEST_CASE("span membership and its failure modes") {
  const std::size_t prec = 12;
  const ModFormBasis b = weight_basis(5, 2, prec);
  const auto& f = b.field();
  // a form vanishing to order > Sturm bound is zero
  CHECK_FALSE(is_in_span(QSeries::monomial(Cyclo(f, Rational(1)), prec - 1, prec), b).member);
  QSeries combo(f, prec);
  combo += b.elements[0] * Cyclo::zeta_power(f, 2);
  combo += b.elements[2] * Rational(7);
  const SpanResult r = is_in_span(combo, b);
  REQUIRE(r.member);
  CHECK(r.coefficients[0] == Cyclo::zeta_power(f, 2));
  CHECK(r.coefficients[1].is_zero());
  CHECK(r.coefficients[2] == Cyclo(f, Rational(7)));

  CHECK_THROWS_AS(weight_basis(5, 2, 4), PrecisionInsufficient);
  CandidatePolicy starved;
  starved.max_candidates = 1;
  CHECK_THROWS_AS(weight_basis(5, 2, 5, starved), SpanFailure);
  CandidatePolicy no_eis;
  no_eis.eisenstein = false;
  // weight 1 has no lower-weight products to fall back on
  CHECK_THROWS_AS(weight_basis(5, 1, sturm_bound(5, 1), no_eis), SpanFailure);
}

TEST_CASE("weight zero, trivial spans and Eisenstein preconditions") {
  CHECK(dim_Mk(5, 0) == 1);
  CHECK(sturm_bound(4, 2) == 3);
  CHECK(sturm_bound(7, 0) == 1);
  const ModFormBasis b0 = weight_basis(5, 0, 4);
  REQUIRE(b0.elements.size() == 1);
  CHECK(b0.elements[0] == QSeries::one(CycloField::get(5), 4));

  for (const auto& chi : dirichlet_characters(5, ambient_level(5)))
    if (!chi.is_trivial()) CHECK(gen_bernoulli(chi, 0).is_zero());

  const ModFormBasis b = weight_basis(5, 2, 7);
  const auto& f = b.field();
  const SpanResult zero = is_in_span(QSeries(f, 7), b);
  CHECK(zero.member);
  for (const auto& c : zero.coefficients) CHECK(c.is_zero());
  const SpanResult unit = is_in_span(b.elements[1], b);
  CHECK(unit.member);
  CHECK(unit.coefficients == std::vector<Cyclo>{Cyclo(f), Cyclo(f, Rational(1)), Cyclo(f)});
  CHECK_THROWS_AS(is_in_span(QSeries(f, 6), b), PrecisionInsufficient);

  const int l = ambient_level(5);
  const auto triv = dirichlet_characters(1, l).front();
  for (const auto& chi : primitive_characters(5, l)) {
    const int k = chi.parity() == 1 ? 2 : 3;
    const QSeries e = eisenstein(triv, chi, 1, k, 8, 5);
    CHECK(e[1] == Cyclo(e.field(), Rational(1)));
    CHECK_THROWS_AS(eisenstein(triv, chi, 1, k + 1, 8, 5), IncompatibleParity);
    CHECK_THROWS_AS(eisenstein(triv, chi, 2, k, 8, 5), BadLevelDivisibility);
  }
  const QSeries e2 = eisenstein(triv, triv, 1, 4, 9, 5).substitute_power(2);
  for (std::size_t n = 1; n < 9; n += 2) CHECK(e2[n].is_zero());
}
