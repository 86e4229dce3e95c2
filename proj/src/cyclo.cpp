#include "ellgen/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "ellgen/errors.hpp"

namespace ellgen {

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Exact division by a monic integer polynomial.
IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    Integer c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return quot;
}

// Returns (q, r) with a = q b + r over Q.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {RatPoly{}, a};
  RatPoly q(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  const std::size_t shift_max = a.size() - b.size();
  for (std::size_t s = shift_max + 1; s-- > 0;) {
    const std::size_t i = s + b.size() - 1;
    if (sgn(a[i]) == 0) continue;
    Rational c = a[i] / lead;
    q[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
  }
  trim(a);
  return {q, a};
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

RatPoly poly_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

bool is_unit_mod(const Integer& d, int n) {
  // d has only prime factors dividing n
  Integer rest = d;
  Integer nn = n;
  Integer g;
  while (true) {
    mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), nn.get_mpz_t());
    if (g == 1) break;
    rest /= g;
  }
  return rest == 1;
}

}  // namespace

int euler_phi(int n) {
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

IntPoly cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
  // x^n - 1 divided by Phi_d for every proper divisor d
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = exact_divide(p, cyclotomic_poly(d));
  }
  return p;
}

const CycloField& CycloField::get(int level) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloField>> registry;
  if (level < 1) throw std::invalid_argument("cyclotomic level must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(level);
  if (it == registry.end()) {
    it = registry.emplace(level, std::unique_ptr<CycloField>(new CycloField(level))).first;
  }
  return *it->second;
}

CycloField::CycloField(int level) : level_(level), phi_(cyclotomic_poly(level)) {
  degree_ = static_cast<int>(phi_.size()) - 1;
  const auto d = static_cast<std::size_t>(degree_);
  powers_.reserve(static_cast<std::size_t>(level));
  std::vector<Integer> v(d, 0);
  v[0] = 1;
  if (d == 0) v.assign(0, 0);
  for (int j = 0; j < level; ++j) {
    powers_.push_back(v);
    // multiply by z, then reduce the overflow coefficient with the monic Phi_N
    std::vector<Integer> next(d, 0);
    Integer top = d ? v[d - 1] : Integer(0);
    for (std::size_t i = d; i-- > 1;) next[i] = v[i - 1];
    for (std::size_t i = 0; i < d; ++i) next[i] -= top * phi_[i];
    v = std::move(next);
  }
}

const std::vector<Integer>& CycloField::power(long j) const {
  long r = j % level_;
  if (r < 0) r += level_;
  return powers_[static_cast<std::size_t>(r)];
}

Cyclo::Cyclo(const CycloField& field)
    : field_(&field), coords_(static_cast<std::size_t>(field.degree()), Rational(0)) {}

Cyclo::Cyclo(const CycloField& field, const Rational& r) : Cyclo(field) { coords_[0] = r; }

Cyclo::Cyclo(const CycloField& field, std::vector<Rational> coords) : field_(&field), coords_(std::move(coords)) {
  if (coords_.size() != static_cast<std::size_t>(field.degree()))
    throw LevelMismatch("coordinate vector has length " + std::to_string(coords_.size()) + ", expected " +
                        std::to_string(field.degree()));
}

Cyclo Cyclo::zeta_power(const CycloField& field, long j) {
  Cyclo r(field);
  const auto& p = field.power(j);
  for (std::size_t i = 0; i < p.size(); ++i) r.coords_[i] = Rational(p[i]);
  return r;
}

bool Cyclo::is_zero() const {
  for (const auto& c : coords_)
    if (sgn(c) != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (sgn(coords_[i]) != 0) return false;
  return true;
}

void Cyclo::check_same_field(const Cyclo& o) const {
  if (field_ != o.field_)
    throw LevelMismatch("cyclotomic levels differ: " + std::to_string(level()) + " vs " + std::to_string(o.level()));
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) { return *this = *this * o; }

Cyclo& Cyclo::operator*=(const Rational& r) {
  for (auto& c : coords_) c *= r;
  return *this;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  a.check_same_field(b);
  const std::size_t d = a.coords_.size();
  std::vector<Rational> conv(d ? 2 * d - 1 : 0, Rational(0));
  Rational t;
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(a.coords_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(b.coords_[j]) == 0) continue;
      mpq_mul(t.get_mpq_t(), a.coords_[i].get_mpq_t(), b.coords_[j].get_mpq_t());
      conv[i + j] += t;
    }
  }
  Cyclo r(*a.field_);
  for (std::size_t k = 0; k < conv.size(); ++k) {
    if (sgn(conv[k]) == 0) continue;
    if (k < d) {
      r.coords_[k] += conv[k];
    } else {
      const auto& p = a.field_->power(static_cast<long>(k));
      for (std::size_t i = 0; i < d; ++i)
        if (p[i] != 0) r.coords_[i] += conv[k] * p[i];
    }
  }
  return r;
}

Cyclo Cyclo::operator-() const {
  Cyclo r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(level()) + ")");
  // s*a + t*Phi = g with g a nonzero constant
  RatPoly phi(field_->minimal_poly().begin(), field_->minimal_poly().end());
  RatPoly a = coords_;
  trim(a);
  RatPoly r0 = phi, r1 = a;
  RatPoly s0{}, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since Phi_N is irreducible and a != 0 mod Phi_N
  Rational g = r1.at(0);
  auto [unused, s] = divmod(s1, phi);
  std::vector<Rational> out(coords_.size(), Rational(0));
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] / g;
  return Cyclo(*field_, std::move(out));
}

Cyclo Cyclo::conj() const {
  Cyclo r(*field_);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (sgn(coords_[i]) == 0) continue;
    const auto& p = field_->power(-static_cast<long>(i));
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k] != 0) r.coords_[k] += coords_[i] * p[k];
  }
  return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  return a.field_ == b.field_ && a.coords_ == b.coords_;
}

bool in_NZ(const Cyclo& a) {
  for (const auto& c : a.coords())
    if (!is_unit_mod(c.get_den(), a.level())) return false;
  return true;
}

NZCoset reduce_mod_NZ(const Cyclo& a) {
  const int n = a.level();
  std::vector<Rational> out;
  out.reserve(a.coords().size());
  for (const auto& c : a.coords()) {
    // den = smooth * rest with smooth N-smooth, rest coprime to N;
    // the representative is r/rest with r == num * smooth^{-1} (mod rest)
    Integer rest = c.get_den();
    Integer nn = n;
    Integer g;
    while (true) {
      mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), nn.get_mpz_t());
      if (g == 1) break;
      rest /= g;
    }
    if (rest == 1) {
      out.emplace_back(0);
      continue;
    }
    Integer smooth = c.get_den() / rest;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), smooth.get_mpz_t(), rest.get_mpz_t());
    Integer r = c.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t());
    out.push_back(make_rational(r, rest));
  }
  return NZCoset{Cyclo(a.field(), std::move(out))};
}

Cyclo embed(const Cyclo& a, const CycloField& target) {
  if (&a.field() == &target) return a;
  if (target.level() % a.level() != 0)
    throw LevelMismatch("cannot embed Q(zeta_" + std::to_string(a.level()) + ") into Q(zeta_" +
                        std::to_string(target.level()) + ")");
  const long step = target.level() / a.level();
  Cyclo r(target);
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    if (sgn(a.coords()[i]) == 0) continue;
    r += Cyclo::zeta_power(target, step * static_cast<long>(i)) * a.coords()[i];
  }
  return r;
}

std::optional<Cyclo> restrict_to(const Cyclo& a, const CycloField& sub) {
  if (&a.field() == &sub) return a;
  if (a.level() % sub.level() != 0)
    throw LevelMismatch("Q(zeta_" + std::to_string(sub.level()) + ") is not a subfield of Q(zeta_" +
                        std::to_string(a.level()) + ")");
  if (a.is_rational()) return Cyclo(sub, a.coords()[0]);
  // Solve sum_i c_i * embed(z_M^i) = a by elimination on the augmented system.
  const std::size_t rows = a.coords().size();
  const std::size_t cols = static_cast<std::size_t>(sub.degree());
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1, Rational(0)));
  for (std::size_t j = 0; j < cols; ++j) {
    Cyclo e = embed(Cyclo::zeta_power(sub, static_cast<long>(j)), a.field());
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = e.coords()[i];
  }
  for (std::size_t i = 0; i < rows; ++i) m[i][cols] = a.coords()[i];
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k <= cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(m[i][cols]) != 0) return std::nullopt;
  std::vector<Rational> out(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) out[pivot_col[i]] = m[i][cols];
  return Cyclo(sub, std::move(out));
}

std::vector<std::string> serialize(const Cyclo& a) {
  std::vector<std::string> out;
  out.reserve(a.coords().size());
  for (const auto& c : a.coords()) out.push_back(to_string(c));
  return out;
}

Cyclo parse_cyclo(const CycloField& field, const std::vector<std::string>& coords) {
  if (coords.size() != static_cast<std::size_t>(field.degree()))
    throw ParseError("expected " + std::to_string(field.degree()) + " coordinates for level " +
                     std::to_string(field.level()) + ", got " + std::to_string(coords.size()));
  std::vector<Rational> v;
  v.reserve(coords.size());
  for (const auto& s : coords) v.push_back(parse_rational(s));
  return Cyclo(field, std::move(v));
}

std::string to_display(const Cyclo& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    Rational c = a.coords()[i];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Rational mag = abs(c);
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

std::complex<double> to_complex(const Cyclo& a, int root) {
  std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi * root / a.level());
  std::complex<double> acc = 0, zp = 1;
  for (const auto& c : a.coords()) {
    acc += c.get_d() * zp;
    zp *= z;
  }
  return acc;
}

}  // namespace ellgen

namespace ellgen {

Cyclo chi_y_projective(int n, const Cyclo& y) {
  Cyclo acc(y.field());
  Cyclo term(y.field(), Rational(1));
  const Cyclo minus_y = -y;
  for (int i = 0; i <= n; ++i) {
    acc += term;
    term *= minus_y;
  }
  return acc;
}

}  // namespace ellgen
