#include "ellgen/genus.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <tuple>

#include "ellgen/errors.hpp"

namespace ellgen {

Integer ChernData::at(const Partition& p) const {
  auto it = numbers.find(p);
  return it == numbers.end() ? Integer(0) : it->second;
}

namespace {

bool well_formed(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

int largest_part(const Partition& p) { return p.empty() ? 0 : p.front(); }

}  // namespace

void ChernData::validate() const {
  if (dim < 0) throw BadChernData("negative complex dimension");
  for (const auto& [p, v] : numbers) {
    if (!well_formed(p)) throw BadChernData("Chern key '" + format_partition(p) + "' is not a partition");
    if (weight(p) != dim)
      throw BadChernData("Chern key '" + format_partition(p) + "' is not a partition of " + std::to_string(dim));
  }
}

void SplitChernData::validate() const {
  if (dim0 < 0 || dim1 < 0) throw BadSplitChernData("negative rank");
  for (const auto& [key, v] : numbers) {
    const auto& [lambda, mu] = key;
    const std::string name = format_partition(lambda) + "|" + format_partition(mu);
    if (!well_formed(lambda) || !well_formed(mu)) throw BadSplitChernData("key '" + name + "' is not a pair of partitions");
    if (weight(lambda) + weight(mu) != dim())
      throw BadSplitChernData("key '" + name + "' does not have total degree " + std::to_string(dim()));
    if (v != 0 && (largest_part(lambda) > dim0 || largest_part(mu) > dim1))
      throw BadSplitChernData("key '" + name + "' uses a Chern class above the rank of its summand");
  }
}

QSeries q_factor_a(int level, std::size_t prec_q) {
  const auto& field = CycloField::get(level);
  const Cyclo one(field, Rational(1));
  const Cyclo z = Cyclo::zeta_power(field, 1);
  const Cyclo z_inv = Cyclo::zeta_power(field, -1);
  // Q_{-z}(0)(q) = (1 - z) prod_n (1 - z q^n)(1 - z^{-1} q^n) / (1 - q^n)^2
  QSeries prod = q_product(field, prec_q, [&](std::size_t n) {
    QSeries a = QSeries::one(field, prec_q) - QSeries::monomial(z, n, prec_q);
    QSeries b = QSeries::one(field, prec_q) - QSeries::monomial(z_inv, n, prec_q);
    QSeries c = QSeries::one(field, prec_q) - QSeries::monomial(one, n, prec_q);
    return a * b * (c * c).inverse();
  });
  return (prod * (one - z)).inverse();
}

namespace {

XQSeries compute_phi_series(int level, std::size_t prec_x, std::size_t prec_q) {
  const auto& field = CycloField::get(level);
  const Cyclo one(field, Rational(1));
  const Cyclo z = Cyclo::zeta_power(field, 1);

  // Td(x) (1 - z e^{-x}) / (1 - z)
  RatSeries td = todd_series(prec_x);
  RatSeries em = exp_linear(Rational(-1), prec_x);
  std::vector<Cyclo> lin(prec_x, Cyclo(field));
  for (std::size_t k = 0; k < prec_x; ++k) lin[k] = (k == 0 ? one : Cyclo(field)) - z * em[k];
  std::vector<Cyclo> tdc;
  for (const auto& r : td) tdc.emplace_back(field, r);
  std::vector<Cyclo> pre = kernel::mul(tdc, lin);
  const Cyclo norm = (one - z).inverse();
  XQSeries prefactor(field, prec_x, prec_q);
  for (std::size_t k = 0; k < prec_x; ++k) prefactor.set(k, QSeries::constant(pre[k] * norm, prec_q));

  // L(x) - L(0): x^k coefficient sum_{n,m} q^{nm} m^{k-1}/k! [(-1)^k (1 - z^m) + (1 - z^{-m})]
  std::vector<Cyclo> plus, minus;  // 1 - z^m, 1 - z^{-m}
  for (std::size_t m = 0; m < prec_q; ++m) {
    plus.push_back(one - Cyclo::zeta_power(field, static_cast<long>(m)));
    minus.push_back(one - Cyclo::zeta_power(field, -static_cast<long>(m)));
  }
  XQSeries lambert(field, prec_x, prec_q);
  for (std::size_t k = 1; k < prec_x; ++k) {
    QSeries coeff(field, prec_q);
    std::vector<Cyclo> acc(prec_q, Cyclo(field));
    const Rational inv_fact = make_rational(Integer(1), factorial(static_cast<long>(k)));
    for (std::size_t m = 1; m < prec_q; ++m) {
      Integer mk;
      mpz_pow_ui(mk.get_mpz_t(), Integer(static_cast<unsigned long>(m)).get_mpz_t(), static_cast<unsigned long>(k - 1));
      Cyclo bracket = (k % 2 == 1 ? -plus[m] : plus[m]) + minus[m];
      bracket *= Rational(mk) * inv_fact;
      for (std::size_t n = 1; n * m < prec_q; ++n) acc[n * m] += bracket;
    }
    lambert.set(k, QSeries(field, std::move(acc)));
  }
  return prefactor * lambert.exp();
}

}  // namespace

XQSeries phi_series(int level, std::size_t prec_x, std::size_t prec_q) {
  if (prec_x == 0 || prec_q == 0) throw std::invalid_argument("phi_series: precisions must be positive");
  using Key = std::tuple<int, std::size_t, std::size_t>;
  static std::mutex mu;
  static std::map<Key, XQSeries> cache;
  const Key key{level, prec_x, prec_q};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  XQSeries value = compute_phi_series(level, prec_x, prec_q);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(value)).first->second;
}

namespace {

// 1 + c q^n e^{sign x}
XQSeries line_character(const Cyclo& c, std::size_t n, int sign, std::size_t prec_x, std::size_t prec_q) {
  const auto& field = c.field();
  RatSeries e = exp_linear(Rational(sign), prec_x);
  XQSeries out(field, prec_x, prec_q);
  for (std::size_t k = 0; k < prec_x; ++k) {
    QSeries s = QSeries::monomial(c * e[k], n, prec_q);
    if (k == 0) s += QSeries::one(field, prec_q);
    out.set(k, std::move(s));
  }
  return out;
}

}  // namespace

XQSeries q_bundle_series(int level, std::size_t prec_x, std::size_t prec_q) {
  const auto& field = CycloField::get(level);
  const Cyclo one(field, Rational(1));
  const Cyclo y = -Cyclo::zeta_power(field, 1);
  const Cyclo y_inv = -Cyclo::zeta_power(field, -1);

  XQSeries acc = XQSeries::from_rational(field, todd_series(prec_x), prec_q);
  acc *= line_character(y, 0, -1, prec_x, prec_q);  // Lambda_y V*
  for (std::size_t n = 1; n < prec_q; ++n) {
    acc *= line_character(y, n, -1, prec_x, prec_q);      // Lambda_{q^n y} V*
    acc *= line_character(y_inv, n, +1, prec_x, prec_q);  // Lambda_{q^n / y} V
    // S_{q^n}(V + V*)
    acc *= line_character(-one, n, +1, prec_x, prec_q).inverse();
    acc *= line_character(-one, n, -1, prec_x, prec_q).inverse();
  }
  return acc;
}

bool verify_Q_identity(int level, std::size_t prec_x, std::size_t prec_q) {
  XQSeries lhs = phi_series(level, prec_x, prec_q) * q_factor_a(level, prec_q).inverse();
  return lhs == q_bundle_series(level, prec_x, prec_q);
}

GradedSymPoly multiplicative_class(const XQSeries& phi, int n) {
  if (n < 0) throw std::invalid_argument("multiplicative_class: negative degree");
  if (phi.prec_x() <= static_cast<std::size_t>(n))
    throw InsufficientXPrecision("x-precision " + std::to_string(phi.prec_x()) + " cannot resolve degree " +
                                 std::to_string(n));
  XQSeries head = phi.truncated(static_cast<std::size_t>(n) + 1, phi.prec_q());
  XQSeries log_phi = head.log();
  GradedSymPoly out;
  out.degree = n;
  out.terms = multiplicative_sequence(log_phi.coeffs(), n);
  return out;
}

QSeries genus(const ChernData& m, int level, std::size_t prec_q, std::size_t prec_x) {
  m.validate();
  const std::size_t px = prec_x ? prec_x : static_cast<std::size_t>(m.dim) + 2;
  if (px <= static_cast<std::size_t>(m.dim))
    throw InsufficientXPrecision("x-precision must exceed the complex dimension");
  GradedSymPoly k = multiplicative_class(phi_series(level, px, prec_q), m.dim);
  const auto& field = CycloField::get(level);
  QSeries out(field, prec_q);
  for (const auto& [lambda, series] : k.terms) {
    Integer c = m.at(lambda);
    if (c != 0) out += series * Rational(c);
  }
  return out;
}

PQSeries genus_bivariate(const SplitChernData& x, int level, std::size_t prec_p, std::size_t prec_q,
                         std::size_t prec_x) {
  x.validate();
  const int dim = x.dim();
  const std::size_t px = prec_x ? prec_x : static_cast<std::size_t>(dim) + 2;
  if (px <= static_cast<std::size_t>(dim))
    throw InsufficientXPrecision("x-precision must exceed the complex dimension");
  XQSeries phi_p = phi_series(level, px, prec_p);
  XQSeries phi_q = phi_series(level, px, prec_q);
  std::vector<GradedSymPoly> kp, kq;
  for (int a = 0; a <= dim; ++a) {
    kp.push_back(multiplicative_class(phi_p, a));
    kq.push_back(multiplicative_class(phi_q, a));
  }
  const auto& field = CycloField::get(level);
  PQSeries out(field, prec_p, prec_q);
  for (const auto& [key, value] : x.numbers) {
    if (value == 0) continue;
    const auto& [lambda, mu] = key;
    const auto& tp = kp[static_cast<std::size_t>(weight(lambda))].terms;
    const auto& tq = kq[static_cast<std::size_t>(weight(mu))].terms;
    auto ip = tp.find(lambda);
    auto iq = tq.find(mu);
    if (ip == tp.end() || iq == tq.end()) continue;
    out += PQSeries::outer(ip->second * Rational(value), iq->second);
  }
  return out;
}

ChernData chern_product(const ChernData& a, const ChernData& b) {
  a.validate();
  b.validate();
  ChernData out;
  out.dim = a.dim + b.dim;
  for (const auto& lambda : partitions_of(out.dim)) {
    // each c_k of the product is sum_{i+j=k} c_i(A) c_j(B); only terms of bidegree (dim A, dim B) pair nontrivially
    Integer total = 0;
    Partition left, right;
    std::function<void(std::size_t, int)> rec = [&](std::size_t t, int used) {
      if (used > a.dim) return;
      if (t == lambda.size()) {
        if (used != a.dim) return;
        Partition l = left, r = right;
        std::sort(l.begin(), l.end(), std::greater<>());
        std::sort(r.begin(), r.end(), std::greater<>());
        total += a.at(l) * b.at(r);
        return;
      }
      for (int i = 0; i <= lambda[t]; ++i) {
        int j = lambda[t] - i;
        if (i > a.dim || j > b.dim) continue;
        if (i) left.push_back(i);
        if (j) right.push_back(j);
        rec(t + 1, used + i);
        if (i) left.pop_back();
        if (j) right.pop_back();
      }
    };
    rec(0, 0);
    if (total != 0) out.numbers[lambda] = total;
  }
  return out;
}

ChernData cp_chern(int n) {
  if (n < 0) throw std::invalid_argument("cp_chern: negative dimension");
  ChernData out;
  out.dim = n;
  for (const auto& lambda : partitions_of(n)) {
    Integer c = 1;
    for (int part : lambda) c *= binomial(n + 1, part);
    if (c != 0) out.numbers[lambda] = c;
  }
  return out;
}

SplitChernData split_product(const ChernData& a, const ChernData& b) {
  a.validate();
  b.validate();
  SplitChernData out;
  out.dim0 = a.dim;
  out.dim1 = b.dim;
  for (const auto& [la, va] : a.numbers)
    for (const auto& [lb, vb] : b.numbers)
      if (va * vb != 0) out.numbers[{la, lb}] = va * vb;
  return out;
}

}  // namespace ellgen
