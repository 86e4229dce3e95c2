#include "doctest.h"

#include "ellgen/errors.hpp"
#include "ellgen/genus.hpp"
#include "ellgen/reduce.hpp"
#include "oracles.hpp"

using namespace ellgen;

namespace {

QSeries random_nz_series(const CycloField& f, std::size_t prec, std::mt19937_64& rng) {
  QSeries z(f, prec);
  for (std::size_t j = 0; j < prec; ++j) z.set(j, oracle::random_unit_denominator(f, rng));
  return z;
}

}  // namespace

TEST_CASE("genera of closed manifolds are trivial in U^q") {
  for (int level : {4, 5, 6}) {
    for (const auto& m : {cp_chern(2), chern_product(cp_chern(1), cp_chern(1))}) {
      const std::size_t prec = sturm_bound(level, 2) + 2;
      const UqClass c = reduce_Uq(genus(m, level, prec), level, 4, prec);
      CHECK(c.trivial);
      CHECK(c.sturm == sturm_bound(level, 2));
      CHECK(c.certificate.rank == dim_Mk(level, 2));
    }
    for (const auto& m : {cp_chern(3), chern_product(cp_chern(1), cp_chern(2))}) {
      const std::size_t prec = sturm_bound(level, 3) + 1;
      CHECK(reduce_Uq(genus(m, level, prec), level, 6, prec).trivial);
    }
  }
}

TEST_CASE("the modular part reconstructs the input up to the residual") {
  const int level = 5;
  const std::size_t prec = 9;
  std::mt19937_64 rng(41);
  const auto& f = CycloField::get(level);
  QSeries s(f, prec);
  for (std::size_t j = 0; j < prec; ++j) s.set(j, oracle::random_cyclo(f, rng));
  const UqClass c = reduce_Uq(s, level, 4, prec);
  const ModFormBasis b = weight_basis(level, 2, prec);
  REQUIRE(c.modular_part.size() == b.elements.size() + 1);
  QSeries rebuilt = QSeries::constant(c.modular_part.back(), prec);
  for (std::size_t i = 0; i < b.elements.size(); ++i) rebuilt += b.elements[i] * c.modular_part[i];
  rebuilt += QSeries(f, c.residual);
  CHECK(rebuilt == s);
  // a generic series with small denominators is not in the quotient kernel
  CHECK_FALSE(c.trivial);
}

TEST_CASE("constants, basis elements and NZ series are trivial; small fractions are not") {
  const int level = 5;
  const std::size_t prec = 8;
  const auto& f = CycloField::get(level);
  const ModFormBasis b = weight_basis(level, 2, prec);
  CHECK(reduce_Uq(QSeries::constant(Cyclo::zeta_power(f, 3) * make_rational(2, 7), prec), level, 4, prec).trivial);
  for (const auto& e : b.elements) CHECK(reduce_Uq(e * make_rational(1, 11), level, 4, prec).trivial);
  std::mt19937_64 rng(1);
  CHECK(reduce_Uq(random_nz_series(f, prec, rng), level, 4, prec).trivial);

  const UqClass half = reduce_Uq(QSeries::monomial(Cyclo(f, make_rational(1, 2)), 6, prec), level, 4, prec);
  CHECK_FALSE(half.trivial);
  const QSeries cp2 = genus(cp_chern(2), level, prec);
  CHECK_FALSE(reduce_Uq(cp2 + QSeries::monomial(Cyclo(f, make_rational(1, 3)), 7, prec), level, 4, prec).trivial);
  CHECK(reduce_Uq(cp2 * Rational(5), level, 4, prec).trivial);
}

TEST_CASE("representatives are invariant under the quotient relations") {
  std::mt19937_64 rng(2718);
  for (const auto& [level, degree] : std::vector<std::pair<int, int>>{{5, 4}, {5, 6}, {4, 6}, {7, 4}}) {
    const std::size_t prec = sturm_bound(level, degree / 2) + 2;
    const auto& f = CycloField::get(level);
    const ModFormBasis b = weight_basis(level, degree / 2, prec);
    for (int trial = 0; trial < 8; ++trial) {
      QSeries s(f, prec);
      for (std::size_t j = 0; j < prec; ++j) s.set(j, oracle::random_cyclo(f, rng, 10, 6));
      const UqClass ref = reduce_Uq(s, level, degree, prec);
      QSeries t = s + random_nz_series(f, prec, rng) + QSeries::constant(oracle::random_cyclo(f, rng), prec);
      for (const auto& e : b.elements) t += e * oracle::random_cyclo(f, rng);
      const UqClass moved = reduce_Uq(t, level, degree, prec);
      CHECK(moved.trivial == ref.trivial);
      CHECK(moved.cosets == ref.cosets);
      // idempotence: the representative reduces to itself
      std::vector<Cyclo> rep;
      for (const auto& k : ref.cosets) rep.push_back(k.rep);
      CHECK(reduce_Uq(QSeries(f, rep), level, degree, prec).cosets == ref.cosets);
      for (const auto& k : ref.cosets)
        for (const auto& c : k.rep.coords()) {
          CHECK(c >= 0);
          CHECK(c < 1);
        }
    }
  }
}

TEST_CASE("reduction preconditions") {
  const auto& f = CycloField::get(5);
  const QSeries s = QSeries::one(f, 8);
  CHECK_THROWS_AS(reduce_Uq(s, 5, 4, 4), PrecisionInsufficient);
  CHECK_THROWS_AS(reduce_Uq(s, 5, 4, 9), PrecisionInsufficient);
  CHECK_THROWS_AS(reduce_Uq(s, 5, 5, 8), std::invalid_argument);
  CHECK_THROWS_AS(reduce_Uq(s, 7, 4, 8), LevelMismatch);
  CHECK_THROWS_AS(reduce_Wtilde(PQSeries(f, 3, 8), 5, 4), PrecisionInsufficient);
}

TEST_CASE("two-variable representatives of products are trivial in W~") {
  for (int level : {4, 5}) {
    for (const auto& [a, b] : std::vector<std::pair<ChernData, ChernData>>{{cp_chern(1), cp_chern(1)},
                                                                          {cp_chern(1), cp_chern(2)},
                                                                          {cp_chern(2), cp_chern(1)}}) {
      const SplitChernData x = split_product(a, b);
      const std::size_t prec = sturm_bound(level, x.dim()) + 1;
      const PQSeries f = genus_bivariate(x, level, prec, prec);
      const WtClass c = reduce_Wtilde(f, level, 2 * x.dim());
      CHECK(c.trivial);
      // q -> 0 gives phi(A)(p) times the constant term of phi(B)
      CHECK(project_q0(f) == genus(a, level, prec) * genus(b, level, prec)[0]);
      CHECK(reduce_Uq(project_q0(f), level, 2 * x.dim(), prec).trivial);
    }
  }
}

TEST_CASE("W~ detects non-integral mixed cells and non-modular edges") {
  const int level = 5;
  const std::size_t prec = 6;
  const auto& f = CycloField::get(level);
  const PQSeries base = genus_bivariate(split_product(cp_chern(1), cp_chern(1)), level, prec, prec);

  PQSeries mixed = base;
  mixed.set(1, 1, mixed.at(1, 1) + Cyclo(f, make_rational(1, 2)));
  const WtClass m = reduce_Wtilde(mixed, level, 4);
  CHECK_FALSE(m.trivial);
  CHECK(m.p_series.trivial);
  CHECK(m.q_series.trivial);
  CHECK(m.mixed[1][1].rep == Cyclo(f, make_rational(1, 2)));

  PQSeries edge = base;
  edge.set(3, 0, edge.at(3, 0) + Cyclo(f, make_rational(1, 3)));
  const WtClass e = reduce_Wtilde(edge, level, 4);
  CHECK_FALSE(e.trivial);
  CHECK_FALSE(e.p_series.trivial);
  CHECK(e.q_series.trivial);

  // the constant cell is absorbed by C
  PQSeries constant = base;
  constant.set(0, 0, constant.at(0, 0) + Cyclo(f, make_rational(1, 7)));
  CHECK(reduce_Wtilde(constant, level, 4).trivial);
}

TEST_CASE("verdicts are linear, truncation-monotone and compatible with q -> 0") {
  const int level = 5;
  const std::size_t prec = 9;
  const auto& f = CycloField::get(level);
  const QSeries a = genus(cp_chern(2), level, prec);
  const QSeries b = genus(chern_product(cp_chern(1), cp_chern(1)), level, prec);
  const Cyclo lambda = Cyclo::zeta_power(f, 2) * make_rational(3, 125);
  CHECK(reduce_Uq(a + b, level, 4, prec).trivial);
  CHECK(reduce_Uq(a * lambda, level, 4, prec).trivial);
  for (std::size_t p = sturm_bound(level, 2); p <= prec; ++p) CHECK(reduce_Uq(a, level, 4, p).trivial);
  // a class nontrivial only at q^8 becomes trivial after truncating below 8
  const QSeries late = a + QSeries::monomial(Cyclo(f, make_rational(1, 2)), 8, prec);
  CHECK_FALSE(reduce_Uq(late, level, 4, prec).trivial);
  CHECK(reduce_Uq(late, level, 4, 8).trivial);

  PQSeries upper(f, 4, 4);
  upper.set(2, 1, Cyclo(f, make_rational(1, 3)));
  CHECK(project_q0(upper).is_zero());
}
