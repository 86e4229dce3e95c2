#include "ellgen/series.hpp"

#include <string>

namespace ellgen {

RatSeries todd_series(std::size_t prec_x) {
  if (prec_x == 0) throw std::invalid_argument("todd_series: prec_x must be positive");
  // x/(1 - e^{-x}) = sum_n B_n (-x)^n / n!
  auto b = bernoulli_numbers(static_cast<int>(prec_x) - 1);
  RatSeries out(prec_x);
  for (std::size_t n = 0; n < prec_x; ++n) {
    Rational c = b[n] / Rational(factorial(static_cast<long>(n)));
    out[n] = (n % 2 == 1) ? Rational(-c) : c;
  }
  return out;
}

RatSeries exp_linear(const Rational& a, std::size_t prec_x) {
  RatSeries out(prec_x);
  Rational term = 1;
  for (std::size_t n = 0; n < prec_x; ++n) {
    out[n] = term;
    term *= a / Rational(static_cast<long>(n + 1));
  }
  return out;
}

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(const CycloField& field, std::size_t prec) : field_(&field), coeffs_(prec, Cyclo(field)) {}

QSeries::QSeries(const CycloField& field, std::vector<Cyclo> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (&c.field() != field_) throw LevelMismatch("q-series coefficient lives in a different cyclotomic field");
}

QSeries QSeries::constant(const Cyclo& c, std::size_t prec) {
  QSeries s(c.field(), prec);
  if (prec > 0) s.coeffs_[0] = c;
  return s;
}

QSeries QSeries::one(const CycloField& field, std::size_t prec) { return constant(Cyclo(field, Rational(1)), prec); }

QSeries QSeries::monomial(const Cyclo& c, std::size_t k, std::size_t prec) {
  QSeries s(c.field(), prec);
  if (k < prec) s.coeffs_[k] = c;
  return s;
}

void QSeries::set(std::size_t i, Cyclo c) {
  if (&c.field() != field_) throw LevelMismatch("q-series coefficient lives in a different cyclotomic field");
  coeffs_.at(i) = std::move(c);
}

bool QSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

void QSeries::check_compatible(const QSeries& o) const {
  if (field_ != o.field_) throw LevelMismatch("q-series levels differ");
  if (prec() != o.prec())
    throw PrecMismatch("q-series precisions differ: " + std::to_string(prec()) + " vs " + std::to_string(o.prec()));
}

QSeries& QSeries::operator+=(const QSeries& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& o) {
  check_compatible(o);
  coeffs_ = kernel::mul(coeffs_, o.coeffs_);
  return *this;
}

QSeries& QSeries::operator*=(const Cyclo& c) {
  if (&c.field() != field_) throw LevelMismatch("scalar lives in a different cyclotomic field");
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QSeries& QSeries::operator*=(const Rational& r) {
  for (auto& x : coeffs_) x *= r;
  return *this;
}

QSeries QSeries::operator-() const {
  QSeries r(*this);
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

bool operator==(const QSeries& a, const QSeries& b) { return a.field_ == b.field_ && a.coeffs_ == b.coeffs_; }

QSeries QSeries::inverse() const {
  if (coeffs_.empty()) return *this;
  if (coeffs_[0].is_zero()) throw NonUnitConstantTerm("q-series inverse needs a nonzero constant term");
  return QSeries(*field_, kernel::inverse(coeffs_));
}

QSeries QSeries::exp() const { return QSeries(*field_, kernel::exp(coeffs_)); }

QSeries QSeries::log() const { return QSeries(*field_, kernel::log(coeffs_)); }

QSeries QSeries::truncated(std::size_t prec) const {
  if (prec > coeffs_.size()) throw PrecMismatch("cannot raise the precision of a truncated series");
  return QSeries(*field_, std::vector<Cyclo>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(prec)));
}

QSeries QSeries::substitute_power(std::size_t t) const {
  if (t == 0) throw std::invalid_argument("substitute_power: t must be positive");
  QSeries r(*field_, prec());
  for (std::size_t i = 0; i * t < prec(); ++i) r.coeffs_[i * t] = coeffs_[i];
  return r;
}

QSeries QSeries::embedded(const CycloField& target) const {
  if (&target == field_) return *this;
  std::vector<Cyclo> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(embed(c, target));
  return QSeries(target, std::move(out));
}

QSeries q_product(const CycloField& field, std::size_t prec, const std::function<QSeries(std::size_t)>& factor) {
  QSeries acc = QSeries::one(field, prec);
  const Cyclo one(field, Rational(1));
  for (std::size_t n = 1; n < prec; ++n) {
    QSeries f = factor(n);
    if (f.prec() != prec) throw PrecMismatch("q_product factor " + std::to_string(n) + " has the wrong precision");
    if (f[0] != one) throw FactorNotUnitModQn("q_product factor " + std::to_string(n) + " has constant term != 1");
    for (std::size_t i = 1; i < n && i < prec; ++i)
      if (!f[i].is_zero())
        throw FactorNotUnitModQn("q_product factor " + std::to_string(n) + " is not 1 modulo q^" + std::to_string(n));
    acc *= f;
  }
  return acc;
}

// ---------------------------------------------------------------- XQSeries

XQSeries::XQSeries(const CycloField& field, std::size_t prec_x, std::size_t prec_q)
    : coeffs_(prec_x, QSeries(field, prec_q)) {
  if (prec_x == 0) throw std::invalid_argument("XQSeries: prec_x must be positive");
}

XQSeries::XQSeries(std::vector<QSeries> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("XQSeries: prec_x must be positive");
  for (const auto& c : coeffs_) {
    if (&c.field() != &coeffs_.front().field()) throw LevelMismatch("x-coefficients live in different fields");
    if (c.prec() != coeffs_.front().prec()) throw PrecMismatch("x-coefficients have different q-precisions");
  }
}

XQSeries XQSeries::from_rational(const CycloField& field, const RatSeries& xs, std::size_t prec_q) {
  XQSeries r(field, xs.size(), prec_q);
  for (std::size_t k = 0; k < xs.size(); ++k) r.coeffs_[k] = QSeries::constant(Cyclo(field, xs[k]), prec_q);
  return r;
}

void XQSeries::set(std::size_t k, QSeries s) {
  if (&s.field() != &field() || s.prec() != prec_q()) throw PrecMismatch("x-coefficient does not match the series");
  coeffs_.at(k) = std::move(s);
}

XQSeries& XQSeries::operator+=(const XQSeries& o) {
  if (prec_x() != o.prec_x()) throw PrecMismatch("x-precisions differ");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

XQSeries& XQSeries::operator-=(const XQSeries& o) {
  if (prec_x() != o.prec_x()) throw PrecMismatch("x-precisions differ");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

XQSeries& XQSeries::operator*=(const XQSeries& o) {
  coeffs_ = kernel::mul(coeffs_, o.coeffs_);
  return *this;
}

XQSeries& XQSeries::operator*=(const QSeries& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

XQSeries XQSeries::inverse() const { return XQSeries(kernel::inverse(coeffs_)); }
XQSeries XQSeries::exp() const { return XQSeries(kernel::exp(coeffs_)); }
XQSeries XQSeries::log() const { return XQSeries(kernel::log(coeffs_)); }

XQSeries XQSeries::truncated(std::size_t prec_x, std::size_t prec_q) const {
  if (prec_x > this->prec_x()) throw PrecMismatch("cannot raise the x-precision of a truncated series");
  std::vector<QSeries> out;
  out.reserve(prec_x);
  for (std::size_t k = 0; k < prec_x; ++k) out.push_back(coeffs_[k].truncated(prec_q));
  return XQSeries(std::move(out));
}

// ---------------------------------------------------------------- PQSeries

PQSeries::PQSeries(const CycloField& field, std::size_t prec_p, std::size_t prec_q)
    : rows_(prec_p, QSeries(field, prec_q)) {
  if (prec_p == 0 || prec_q == 0) throw std::invalid_argument("PQSeries: precisions must be positive");
}

PQSeries::PQSeries(std::vector<QSeries> rows) : rows_(std::move(rows)) {
  if (rows_.empty() || rows_.front().prec() == 0) throw std::invalid_argument("PQSeries: precisions must be positive");
  for (const auto& r : rows_) {
    if (&r.field() != &rows_.front().field()) throw LevelMismatch("rows live in different fields");
    if (r.prec() != rows_.front().prec()) throw PrecMismatch("rows of a (p,q)-rectangle must share prec_q");
  }
}

PQSeries PQSeries::outer(const QSeries& in_p, const QSeries& in_q) {
  if (&in_p.field() != &in_q.field()) throw LevelMismatch("outer product of series from different fields");
  std::vector<QSeries> rows;
  rows.reserve(in_p.prec());
  for (std::size_t i = 0; i < in_p.prec(); ++i) rows.push_back(in_q * in_p[i]);
  return PQSeries(std::move(rows));
}

PQSeries& PQSeries::operator+=(const PQSeries& o) {
  if (prec_p() != o.prec_p()) throw PrecMismatch("p-precisions differ");
  for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] += o.rows_[i];
  return *this;
}

PQSeries& PQSeries::operator-=(const PQSeries& o) {
  if (prec_p() != o.prec_p()) throw PrecMismatch("p-precisions differ");
  for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] -= o.rows_[i];
  return *this;
}

PQSeries& PQSeries::operator*=(const PQSeries& o) {
  rows_ = kernel::mul(rows_, o.rows_);
  return *this;
}

PQSeries& PQSeries::operator*=(const Cyclo& c) {
  for (auto& r : rows_) r *= c;
  return *this;
}

PQSeries PQSeries::inverse() const { return PQSeries(kernel::inverse(rows_)); }

PQSeries PQSeries::transposed() const {
  PQSeries t(field(), prec_q(), prec_p());
  for (std::size_t i = 0; i < prec_p(); ++i)
    for (std::size_t j = 0; j < prec_q(); ++j) t.set(j, i, at(i, j));
  return t;
}

QSeries PQSeries::q_zero() const {
  QSeries s(field(), prec_p());
  for (std::size_t i = 0; i < prec_p(); ++i) s.set(i, at(i, 0));
  return s;
}

QSeries PQSeries::p_zero() const { return rows_.front(); }

}  // namespace ellgen
