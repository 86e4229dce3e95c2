#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ellgen/cyclo.hpp"
#include "ellgen/errors.hpp"
#include "ellgen/rational.hpp"

namespace ellgen {

/// Dense truncated-series kernels over any commutative coefficient ring R.
///
/// R must provide zero_like/one_like/is_zero/invert (found by ADL or declared
/// above) and multiplication by Rational. Every result has the length of the
/// first argument; nothing beyond that truncation is ever read.
namespace kernel {

template <class R>
std::vector<R> mul(const std::vector<R>& a, const std::vector<R>& b) {
  if (a.size() != b.size()) throw PrecMismatch("series truncations differ");
  const std::size_t n = a.size();
  if (n == 0) return {};
  std::vector<R> out(n, zero_like(a[0]));
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (is_zero(b[j])) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

template <class R>
std::vector<R> inverse(const std::vector<R>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  if (is_zero(a[0])) throw NonUnitConstantTerm("series inverse needs an invertible constant term");
  R c0 = invert(a[0]);  // may itself throw NonUnitConstantTerm for nested series
  std::vector<R> out(n, zero_like(a[0]));
  out[0] = c0;
  for (std::size_t k = 1; k < n; ++k) {
    R acc = zero_like(a[0]);
    for (std::size_t j = 1; j <= k; ++j) {
      if (is_zero(a[j])) continue;
      acc += a[j] * out[k - j];
    }
    out[k] = zero_like(a[0]) - c0 * acc;
  }
  return out;
}

/// exp of a series with zero constant term; g' = f' g.
template <class R>
std::vector<R> exp(const std::vector<R>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  if (!is_zero(a[0])) throw BadConstantTerm("exp needs a zero constant term");
  std::vector<R> out(n, zero_like(a[0]));
  out[0] = one_like(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    R acc = zero_like(a[0]);
    for (std::size_t j = 1; j <= k; ++j) {
      if (is_zero(a[j])) continue;
      acc += (a[j] * out[k - j]) * Rational(static_cast<long>(j));
    }
    out[k] = acc * make_rational(1, static_cast<long>(k));
  }
  return out;
}

/// log of a series with constant term 1; f' = g'/g.
template <class R>
std::vector<R> log(const std::vector<R>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  if (!(a[0] == one_like(a[0]))) throw BadConstantTerm("log needs constant term 1");
  std::vector<R> out(n, zero_like(a[0]));
  for (std::size_t k = 1; k < n; ++k) {
    R acc = a[k] * Rational(static_cast<long>(k));
    for (std::size_t j = 1; j < k; ++j) {
      if (is_zero(out[j])) continue;
      acc -= (out[j] * a[k - j]) * Rational(static_cast<long>(j));
    }
    out[k] = acc * make_rational(1, static_cast<long>(k));
  }
  return out;
}

}  // namespace kernel

/// Series in one variable over Q, used for the scalar x-expansions.
using RatSeries = std::vector<Rational>;

/// x/(1 - e^{-x}) to x^{prec_x - 1}.
RatSeries todd_series(std::size_t prec_x);
/// e^{a x} to x^{prec_x - 1}.
RatSeries exp_linear(const Rational& a, std::size_t prec_x);

/// Truncated power series in q over Q(zeta_N); coefficients of q^0..q^{prec-1}.
class QSeries {
 public:
  QSeries(const CycloField& field, std::size_t prec);
  QSeries(const CycloField& field, std::vector<Cyclo> coeffs);

  static QSeries constant(const Cyclo& c, std::size_t prec);
  static QSeries one(const CycloField& field, std::size_t prec);
  /// c * q^k (zero if k >= prec).
  static QSeries monomial(const Cyclo& c, std::size_t k, std::size_t prec);

  const CycloField& field() const { return *field_; }
  int level() const { return field_->level(); }
  std::size_t prec() const { return coeffs_.size(); }
  const std::vector<Cyclo>& coeffs() const { return coeffs_; }
  const Cyclo& operator[](std::size_t i) const { return coeffs_.at(i); }
  void set(std::size_t i, Cyclo c);

  bool is_zero() const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const QSeries& o);
  QSeries& operator*=(const Cyclo& c);
  QSeries& operator*=(const Rational& r);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const QSeries& b) { return a *= b; }
  friend QSeries operator*(QSeries a, const Cyclo& c) { return a *= c; }
  friend QSeries operator*(QSeries a, const Rational& r) { return a *= r; }
  QSeries operator-() const;
  friend bool operator==(const QSeries& a, const QSeries& b);
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  QSeries inverse() const;
  QSeries exp() const;
  QSeries log() const;

  QSeries truncated(std::size_t prec) const;
  /// q -> q^t.
  QSeries substitute_power(std::size_t t) const;
  /// Coefficientwise image in Q(zeta_L) for N | L.
  QSeries embedded(const CycloField& target) const;

 private:
  void check_compatible(const QSeries& o) const;

  const CycloField* field_;
  std::vector<Cyclo> coeffs_;
};

inline QSeries zero_like(const QSeries& s) { return QSeries(s.field(), s.prec()); }
inline QSeries one_like(const QSeries& s) { return QSeries::one(s.field(), s.prec()); }
inline bool is_zero(const QSeries& s) { return s.is_zero(); }
inline QSeries invert(const QSeries& s) { return s.inverse(); }

/// Product of factor(1) * factor(2) * ... * factor(prec - 1). Each factor must
/// be congruent to 1 modulo q^n so the product is exact below the truncation.
QSeries q_product(const CycloField& field, std::size_t prec, const std::function<QSeries(std::size_t)>& factor);

/// Series in x whose coefficients are q-series sharing level and truncation.
class XQSeries {
 public:
  XQSeries(const CycloField& field, std::size_t prec_x, std::size_t prec_q);
  explicit XQSeries(std::vector<QSeries> coeffs);
  /// A rational x-series, constant in q.
  static XQSeries from_rational(const CycloField& field, const RatSeries& xs, std::size_t prec_q);

  const CycloField& field() const { return coeffs_.front().field(); }
  std::size_t prec_x() const { return coeffs_.size(); }
  std::size_t prec_q() const { return coeffs_.front().prec(); }
  const std::vector<QSeries>& coeffs() const { return coeffs_; }
  const QSeries& operator[](std::size_t k) const { return coeffs_.at(k); }
  void set(std::size_t k, QSeries s);

  XQSeries& operator+=(const XQSeries& o);
  XQSeries& operator-=(const XQSeries& o);
  XQSeries& operator*=(const XQSeries& o);
  XQSeries& operator*=(const QSeries& s);
  friend XQSeries operator+(XQSeries a, const XQSeries& b) { return a += b; }
  friend XQSeries operator-(XQSeries a, const XQSeries& b) { return a -= b; }
  friend XQSeries operator*(XQSeries a, const XQSeries& b) { return a *= b; }
  friend XQSeries operator*(XQSeries a, const QSeries& s) { return a *= s; }
  friend bool operator==(const XQSeries& a, const XQSeries& b) { return a.coeffs_ == b.coeffs_; }

  XQSeries inverse() const;
  XQSeries exp() const;
  XQSeries log() const;
  XQSeries truncated(std::size_t prec_x, std::size_t prec_q) const;

 private:
  std::vector<QSeries> coeffs_;
};

/// Truncated power series in (p, q): a prec_p x prec_q rectangle, cell (i, j)
/// holding the coefficient of p^i q^j.
class PQSeries {
 public:
  PQSeries(const CycloField& field, std::size_t prec_p, std::size_t prec_q);
  /// rows[i] is the q-series multiplying p^i.
  explicit PQSeries(std::vector<QSeries> rows);

  /// f(p) g(q) as a rectangle of f.prec() x g.prec().
  static PQSeries outer(const QSeries& in_p, const QSeries& in_q);

  const CycloField& field() const { return rows_.front().field(); }
  int level() const { return field().level(); }
  std::size_t prec_p() const { return rows_.size(); }
  std::size_t prec_q() const { return rows_.front().prec(); }
  const Cyclo& at(std::size_t i, std::size_t j) const { return rows_.at(i)[j]; }
  void set(std::size_t i, std::size_t j, Cyclo c) { rows_.at(i).set(j, std::move(c)); }
  const std::vector<QSeries>& rows() const { return rows_; }

  PQSeries& operator+=(const PQSeries& o);
  PQSeries& operator-=(const PQSeries& o);
  PQSeries& operator*=(const PQSeries& o);
  PQSeries& operator*=(const Cyclo& c);
  friend PQSeries operator+(PQSeries a, const PQSeries& b) { return a += b; }
  friend PQSeries operator-(PQSeries a, const PQSeries& b) { return a -= b; }
  friend PQSeries operator*(PQSeries a, const PQSeries& b) { return a *= b; }
  friend PQSeries operator*(PQSeries a, const Cyclo& c) { return a *= c; }
  friend bool operator==(const PQSeries& a, const PQSeries& b) { return a.rows_ == b.rows_; }

  PQSeries inverse() const;
  /// Swap the roles of p and q.
  PQSeries transposed() const;
  /// Cells (i, 0): the series in p obtained by q -> 0.
  QSeries q_zero() const;
  /// Cells (0, j): the series in q obtained by p -> 0.
  QSeries p_zero() const;

 private:
  std::vector<QSeries> rows_;
};

}  // namespace ellgen
