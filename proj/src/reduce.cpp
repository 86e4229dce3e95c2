#include "ellgen/reduce.hpp"

#include <algorithm>

#include "ellgen/errors.hpp"
#include "ellgen/linalg.hpp"

namespace ellgen {

namespace {

Integer n_free_part(Integer d, int level) {
  Integer g, n = level;
  while (true) {
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return d;
    d /= g;
  }
}

/// Canonical representatives of vectors in Q^D modulo the Z[1/N]-lattice
/// Z[1/N]^D + sum_k Z[1/N] g_k. All values are scaled by D0, the N-free part of
/// the common denominator, and handled modulo D0 where N is a unit.
class CosetLattice {
 public:
  CosetLattice(int level, const std::vector<std::vector<Rational>>& gens, const std::vector<Rational>& target)
      : level_(level), dim_(target.size()), d0_(1) {
    auto absorb = [&](const Rational& x) {
      Integer rest = n_free_part(x.get_den(), level_);
      mpz_lcm(d0_.get_mpz_t(), d0_.get_mpz_t(), rest.get_mpz_t());
    };
    for (const auto& g : gens)
      for (const auto& x : g) absorb(x);
    for (const auto& x : target) absorb(x);
    if (d0_ == 1) return;
    std::vector<std::vector<Integer>> work;
    for (const auto& g : gens) {
      auto v = scaled(g);
      if (std::any_of(v.begin(), v.end(), [](const Integer& z) { return z != 0; })) work.push_back(std::move(v));
    }
    pivots_.reserve(dim_);
    for (std::size_t c = 0; c < dim_; ++c) {
      std::vector<Integer> piv(dim_, Integer(0));
      piv[c] = d0_;
      for (auto& v : work) {
        if (v[c] == 0) continue;
        Integer g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), piv[c].get_mpz_t(), v[c].get_mpz_t());
        const Integer a = piv[c] / g, b = v[c] / g;
        for (std::size_t j = c + 1; j < dim_; ++j) {
          Integer p = x * piv[j] + y * v[j];
          Integer w = a * v[j] - b * piv[j];
          piv[j] = mod(p);
          v[j] = mod(w);
        }
        piv[c] = g;
        v[c] = 0;
      }
      pivots_.push_back(std::move(piv));
    }
  }

  /// Reduced coordinates in [0, 1) with N-free denominators; zero iff the target lies in the lattice.
  std::vector<Rational> reduce(const std::vector<Rational>& target) const {
    std::vector<Rational> out(dim_, Rational(0));
    if (d0_ == 1) return out;
    auto t = scaled(target);
    for (std::size_t c = 0; c < dim_; ++c) {
      const auto& piv = pivots_[c];
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), t[c].get_mpz_t(), piv[c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < dim_; ++j) t[j] = mod(t[j] - q * piv[j]);
    }
    for (std::size_t c = 0; c < dim_; ++c) out[c] = make_rational(t[c], d0_);
    return out;
  }

 private:
  Integer mod(const Integer& z) const {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), d0_.get_mpz_t());
    return r;
  }

  std::vector<Integer> scaled(const std::vector<Rational>& v) const {
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const auto& x : v) {
      const Integer den = x.get_den();
      const Integer rest = n_free_part(den, level_);
      const Integer smooth = den / rest;
      Integer inv;
      mpz_invert(inv.get_mpz_t(), smooth.get_mpz_t(), d0_.get_mpz_t());
      out.push_back(mod(x.get_num() * (d0_ / rest) * inv));
    }
    return out;
  }

  int level_;
  std::size_t dim_;
  Integer d0_;
  std::vector<std::vector<Integer>> pivots_;
};

std::vector<Rational> flatten(const std::vector<Cyclo>& v) {
  std::vector<Rational> out;
  for (const auto& c : v) out.insert(out.end(), c.coords().begin(), c.coords().end());
  return out;
}

int weight_of_degree(int degree) {
  if (degree < 2 || degree % 2 != 0)
    throw std::invalid_argument("reduction degree must be even and at least 2, got " + std::to_string(degree));
  return degree / 2;
}

}  // namespace

UqClass reduce_Uq(const QSeries& s, int level, int degree, std::size_t prec) {
  const int w = weight_of_degree(degree);
  if (s.level() != level)
    throw LevelMismatch("series has level " + std::to_string(s.level()) + ", reduction asked for " +
                        std::to_string(level));
  const std::size_t sturm = sturm_bound(level, w);
  if (prec < sturm)
    throw PrecisionInsufficient("precision " + std::to_string(prec) + " is below the Sturm bound " +
                                std::to_string(sturm));
  if (s.prec() < prec)
    throw PrecisionInsufficient("series carries " + std::to_string(s.prec()) + " coefficients, need " +
                                std::to_string(prec));

  ModFormBasis basis = weight_basis(level, w, prec);
  const CycloField& field = s.field();
  if (&basis.field() != &field) throw std::logic_error("weight basis is not defined over Q(zeta_N)");

  std::vector<CycloRow> rows;
  for (const auto& e : basis.elements) rows.push_back(e.coeffs());
  rows.push_back(QSeries::one(field, prec).coeffs());
  Echelon ech = row_reduce(rows, /*track_transform=*/true);

  UqClass out;
  out.level = level;
  out.degree = degree;
  out.prec = prec;
  out.sturm = sturm;
  out.certificate = basis.certificate;
  out.modular_part.assign(rows.size(), Cyclo(field));
  out.residual = s.truncated(prec).coeffs();

  auto eliminate = [&](std::size_t r) {
    const Cyclo c = out.residual[ech.pivots[r]];
    if (c.is_zero()) return;
    for (std::size_t j = 0; j < prec; ++j)
      if (!ech.rows[r][j].is_zero()) out.residual[j] -= c * ech.rows[r][j];
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!ech.transform[r][i].is_zero()) out.modular_part[i] += c * ech.transform[r][i];
  };
  // modular rows, then the constant row (the one pivoting at q^0)
  for (std::size_t r = 0; r < ech.rank(); ++r)
    if (ech.pivots[r] != 0) eliminate(r);
  for (std::size_t r = 0; r < ech.rank(); ++r)
    if (ech.pivots[r] == 0) eliminate(r);

  // The residual is fixed up to Z[1/N, zeta_N]-multiples of the echelon rows plus NZ[[q]].
  const int d = field.degree();
  std::vector<std::vector<Rational>> gens;
  for (std::size_t r = 0; r < ech.rank(); ++r)
    for (int i = 0; i < d; ++i) {
      const Cyclo z = Cyclo::zeta_power(field, i);
      std::vector<Cyclo> shifted;
      shifted.reserve(prec);
      for (const auto& c : ech.rows[r]) shifted.push_back(z * c);
      gens.push_back(flatten(shifted));
    }
  const auto target = flatten(out.residual);
  const auto reduced = CosetLattice(level, gens, target).reduce(target);

  out.trivial = true;
  out.cosets.reserve(prec);
  for (std::size_t j = 0; j < prec; ++j) {
    std::vector<Rational> coords(reduced.begin() + j * d, reduced.begin() + (j + 1) * d);
    out.cosets.push_back(NZCoset{Cyclo(field, std::move(coords))});
    if (!out.cosets.back().is_zero()) out.trivial = false;
  }
  return out;
}

WtClass reduce_Wtilde(const PQSeries& s, int level, int degree) {
  const int w = weight_of_degree(degree);
  const std::size_t sturm = sturm_bound(level, w);
  if (s.prec_p() < sturm || s.prec_q() < sturm)
    throw PrecisionInsufficient("rectangle " + std::to_string(s.prec_p()) + "x" + std::to_string(s.prec_q()) +
                                " is below the Sturm bound " + std::to_string(sturm));
  WtClass out{.level = level,
              .degree = degree,
              .prec_p = s.prec_p(),
              .prec_q = s.prec_q(),
              .p_series = reduce_Uq(s.q_zero(), level, degree, s.prec_p()),
              .q_series = reduce_Uq(s.p_zero(), level, degree, s.prec_q()),
              .mixed = {},
              .trivial = false};
  const NZCoset zero{Cyclo(s.field())};
  out.mixed.assign(s.prec_p(), std::vector<NZCoset>(s.prec_q(), zero));
  bool mixed_zero = true;
  for (std::size_t i = 1; i < s.prec_p(); ++i)
    for (std::size_t j = 1; j < s.prec_q(); ++j) {
      out.mixed[i][j] = reduce_mod_NZ(s.at(i, j));
      if (!out.mixed[i][j].is_zero()) mixed_zero = false;
    }
  out.trivial = out.p_series.trivial && out.q_series.trivial && mixed_zero;
  return out;
}

QSeries project_q0(const PQSeries& s) { return s.q_zero(); }

}  // namespace ellgen
