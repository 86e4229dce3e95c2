#include "ellgen/modforms.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

#include "ellgen/errors.hpp"
#include "ellgen/linalg.hpp"

namespace ellgen {

namespace {

std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> f;
  for (int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long mod_pow(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

long multiplicative_order(long a, long m) {
  long x = a % m;
  long k = 1;
  while (x != 1 % m) {
    x = x * a % m;
    ++k;
  }
  return k;
}

// x == a (mod m1), x == 1 (mod m2), gcd(m1, m2) = 1
long crt_lift(long a, long m1, long m2) {
  for (long x = a % m1; x < m1 * m2; x += m1)
    if (x % m2 == 1 % m2) return x;
  throw std::logic_error("crt_lift: moduli not coprime");
}

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

}  // namespace

// ------------------------------------------------------------ characters

DirichletCharacter::DirichletCharacter(int modulus, int ambient_level, std::vector<int> exponents)
    : modulus_(modulus), ambient_(ambient_level), exps_(std::move(exponents)) {
  if (modulus_ < 1 || static_cast<int>(exps_.size()) != modulus_)
    throw std::invalid_argument("DirichletCharacter: exponent table must have one entry per residue");
}

std::optional<int> DirichletCharacter::exponent(long a) const {
  long r = a % modulus_;
  if (r < 0) r += modulus_;
  int e = exps_[static_cast<std::size_t>(r)];
  if (e < 0) return std::nullopt;
  return e;
}

Cyclo DirichletCharacter::value(long a) const {
  auto e = exponent(a);
  if (!e) return Cyclo(field());
  return Cyclo::zeta_power(field(), *e);
}

bool DirichletCharacter::is_trivial() const {
  for (int e : exps_)
    if (e > 0) return false;
  return true;
}

int DirichletCharacter::parity() const {
  auto e = exponent(-1);
  return (e && *e == 0) ? 1 : -1;
}

int DirichletCharacter::conductor() const {
  for (int d : divisors(modulus_)) {
    bool induced = true;
    for (int a = 0; a < modulus_ && induced; ++a) {
      if (exps_[static_cast<std::size_t>(a)] < 0 || a % d != 1 % d) continue;
      if (exps_[static_cast<std::size_t>(a)] != 0) induced = false;
    }
    if (induced) return d;
  }
  return modulus_;
}

int carmichael(int n) {
  int lam = 1;
  for (auto [p, e] : factorize(n)) {
    int part;
    if (p == 2) part = e == 1 ? 1 : (e == 2 ? 2 : ipow(2, e - 2));
    else part = (p - 1) * ipow(p, e - 1);
    lam = std::lcm(lam, part);
  }
  return lam;
}

int ambient_level(int level) { return std::lcm(level, carmichael(level)); }

std::vector<DirichletCharacter> dirichlet_characters(int modulus, int ambient) {
  if (modulus < 1) throw std::invalid_argument("dirichlet_characters: modulus must be positive");
  if (ambient % carmichael(modulus) != 0)
    throw LevelMismatch("Q(zeta_" + std::to_string(ambient) + ") does not hold the values of characters mod " +
                        std::to_string(modulus));
  // generators of (Z/M)^* with their orders, one cyclic factor each
  std::vector<std::pair<long, long>> gens;
  for (auto [p, e] : factorize(modulus)) {
    const long pe = ipow(p, e);
    const long rest = modulus / pe;
    if (p == 2) {
      if (e >= 2) gens.emplace_back(crt_lift(pe - 1, pe, rest), 2);
      if (e >= 3) gens.emplace_back(crt_lift(5, pe, rest), pe / 4);
    } else {
      const long order = (p - 1) * (pe / p);
      long g = 2;
      while (std::gcd(g, pe) != 1 || multiplicative_order(g, pe) != order) ++g;
      gens.emplace_back(crt_lift(g, pe, rest), order);
    }
  }
  // discrete logarithms of every unit
  std::vector<std::vector<long>> logs(static_cast<std::size_t>(modulus));
  std::vector<long> idx(gens.size(), 0);
  while (true) {
    long r = 1 % modulus;
    for (std::size_t s = 0; s < gens.size(); ++s) r = r * mod_pow(gens[s].first, idx[s], modulus) % modulus;
    logs[static_cast<std::size_t>(r)] = idx;
    std::size_t s = 0;
    while (s < gens.size() && ++idx[s] == gens[s].second) idx[s++] = 0;
    if (s == gens.size()) break;
  }
  std::vector<DirichletCharacter> out;
  std::vector<long> j(gens.size(), 0);
  while (true) {
    std::vector<int> exps(static_cast<std::size_t>(modulus), -1);
    for (int a = 0; a < modulus; ++a) {
      if (std::gcd(a, modulus) != 1) continue;
      long e = 0;
      for (std::size_t s = 0; s < gens.size(); ++s) e += j[s] * logs[static_cast<std::size_t>(a)][s] * (ambient / gens[s].second);
      exps[static_cast<std::size_t>(a)] = static_cast<int>(e % ambient);
    }
    out.emplace_back(modulus, ambient, std::move(exps));
    std::size_t s = 0;
    while (s < gens.size() && ++j[s] == gens[s].second) j[s++] = 0;
    if (s == gens.size()) break;
  }
  return out;
}

std::vector<DirichletCharacter> primitive_characters(int modulus, int ambient) {
  std::vector<DirichletCharacter> out;
  for (auto& chi : dirichlet_characters(modulus, ambient))
    if (chi.is_primitive()) out.push_back(std::move(chi));
  return out;
}

Cyclo gen_bernoulli(const DirichletCharacter& chi, int k) {
  if (k < 0) throw std::invalid_argument("gen_bernoulli: k must be non-negative");
  const auto& field = chi.field();
  const int m = chi.modulus();
  auto b = bernoulli_numbers(k);
  Cyclo acc(field);
  for (int a = 1; a <= m; ++a) {
    Cyclo v = chi.value(a);
    if (v.is_zero()) continue;
    // B_k(x) = sum_j binom(k, j) B_j x^{k-j}
    const Rational x = make_rational(a, m);
    Rational bk = 0;
    Rational xp = 1;
    for (int j = k; j >= 0; --j) {
      bk += Rational(binomial(k, j)) * b[static_cast<std::size_t>(j)] * xp;
      xp *= x;
    }
    acc += v * bk;
  }
  Rational scale = 1;
  if (k >= 1) {
    for (int i = 0; i < k - 1; ++i) scale *= m;
  } else {
    scale = make_rational(1, m);
  }
  return acc * scale;
}

// ------------------------------------------------------------ Eisenstein series

QSeries eisenstein(const DirichletCharacter& psi, const DirichletCharacter& chi, int t, int k, std::size_t prec,
                   int level) {
  if (k < 1) throw std::invalid_argument("eisenstein: weight must be positive");
  if (t < 1) throw std::invalid_argument("eisenstein: t must be positive");
  if (psi.ambient_level() != chi.ambient_level()) throw LevelMismatch("characters use different value fields");
  if (!psi.is_primitive() || !chi.is_primitive()) throw NonPrimitiveCharacter("Eisenstein pair must be primitive");
  if (level % (psi.modulus() * chi.modulus() * t) != 0)
    throw BadLevelDivisibility(std::to_string(psi.modulus()) + "*" + std::to_string(chi.modulus()) + "*" +
                               std::to_string(t) + " does not divide " + std::to_string(level));
  const int sign = (k % 2 == 0) ? 1 : -1;
  if (psi.parity() * chi.parity() != sign)
    throw IncompatibleParity("psi(-1) chi(-1) must equal (-1)^" + std::to_string(k));
  const bool both_trivial = psi.is_trivial() && chi.is_trivial();
  if (k == 2 && both_trivial && t == 1)
    throw ExcludedEisenstein("E_2 is not modular; use t > 1 for the combination E_2(q) - t E_2(q^t)");

  const auto& field = psi.field();
  QSeries base(field, prec);
  for (std::size_t n = 1; n < prec; ++n) {
    Cyclo c(field);
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      Cyclo term = psi.value(static_cast<long>(n / d)) * chi.value(static_cast<long>(d));
      if (term.is_zero()) continue;
      Integer dk;
      mpz_ui_pow_ui(dk.get_mpz_t(), d, static_cast<unsigned long>(k - 1));
      c += term * Rational(dk);
    }
    base.set(n, std::move(c));
  }
  Cyclo c0(field);
  if (k == 1) {
    if (psi.modulus() == 1) c0 = gen_bernoulli(chi, 1) * make_rational(-1, 2);
    else if (chi.modulus() == 1) c0 = gen_bernoulli(psi, 1) * make_rational(-1, 2);
  } else if (psi.modulus() == 1) {
    c0 = gen_bernoulli(chi, k) * make_rational(-1, 2 * k);
  }
  base.set(0, c0);
  if (k == 2 && both_trivial) return base - base.substitute_power(static_cast<std::size_t>(t)) * Rational(t);
  return base.substitute_power(static_cast<std::size_t>(t));
}

std::vector<QSeries> eisenstein_candidates(int level, int k, std::size_t prec) {
  const int ambient = ambient_level(level);
  std::vector<QSeries> out;
  const int sign = (k % 2 == 0) ? 1 : -1;
  for (int u : divisors(level)) {
    auto first = primitive_characters(u, ambient);
    for (int v : divisors(level / u)) {
      auto second = primitive_characters(v, ambient);
      for (int t : divisors(level / (u * v))) {
        for (const auto& psi : first)
          for (const auto& chi : second) {
            if (psi.parity() * chi.parity() != sign) continue;
            if (k == 2 && t == 1 && psi.is_trivial() && chi.is_trivial()) continue;
            out.push_back(eisenstein(psi, chi, t, k, prec, level));
          }
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ dimensions

long gamma1_index(int level) {
  long mu = static_cast<long>(level) * level;
  for (auto [p, e] : factorize(level)) mu = mu / (static_cast<long>(p) * p) * (static_cast<long>(p) * p - 1);
  return mu;
}

long gamma1_cusps(int level) {
  if (level < 4) throw UnsupportedLevel("Gamma_1(" + std::to_string(level) + ") has torsion; need N >= 4");
  if (level == 4) return 3;
  long c = 0;
  for (int d : divisors(level)) c += static_cast<long>(euler_phi(d)) * euler_phi(level / d);
  return c / 2;
}

long gamma1_genus(int level) {
  // 12 g = 12 + mu/2 - 6 c for the torsion-free Gamma_1(N), index mu/2 in PSL_2(Z)
  const long twelve_g = 12 + gamma1_index(level) / 2 - 6 * gamma1_cusps(level);
  return twelve_g / 12;
}

long dim_Mk(int level, int k) {
  if (level < 4) throw UnsupportedLevel("dim_Mk needs N >= 4, got " + std::to_string(level));
  if (k < 0) return 0;
  if (k == 0) return 1;
  const long g = gamma1_genus(level);
  const long cusps = gamma1_cusps(level);
  const long irregular = level == 4 ? 1 : 0;
  const long regular = cusps - irregular;
  if (k == 1) {
    if (level > 22) throw UnsupportedLevel("weight-1 cusp forms may exist for N > 22");
    return regular / 2;
  }
  if (k % 2 == 0) return (k - 1) * (g - 1) + (k / 2) * cusps;
  return (k - 1) * (g - 1) + (k * regular) / 2 + ((k - 1) / 2) * irregular;
}

std::size_t sturm_bound(int level, int k) {
  if (k <= 0) return 1;
  return static_cast<std::size_t>(static_cast<long>(k) * gamma1_index(level) / 12) + 1;
}

// ------------------------------------------------------------ bases

namespace {

ModFormBasis build_basis(int level, int k, std::size_t prec, const CandidatePolicy& policy) {
  const auto& native = CycloField::get(level);
  ModFormBasis basis;
  basis.level = level;
  basis.weight = k;
  basis.prec = prec;
  basis.certificate.dimension = dim_Mk(level, k);
  basis.certificate.sturm = sturm_bound(level, k);
  basis.certificate.prec = prec;

  if (k == 0) {
    basis.elements.push_back(QSeries::one(native, prec));
    basis.pivots.push_back(0);
    basis.certificate.rank = 1;
    basis.certificate.candidates = 1;
    return basis;
  }

  const auto& ambient = CycloField::get(ambient_level(level));
  std::vector<CycloRow> rows;
  auto add = [&](const QSeries& s) {
    if (rows.size() >= policy.max_candidates) return;
    rows.push_back(s.embedded(ambient).coeffs());
  };
  if (policy.eisenstein)
    for (const auto& e : eisenstein_candidates(level, k, prec)) add(e);
  if (policy.products) {
    for (int k1 = 1; 2 * k1 <= k; ++k1) {
      ModFormBasis lo = weight_basis(level, k1, prec);
      ModFormBasis hi = weight_basis(level, k - k1, prec);
      for (std::size_t i = 0; i < lo.elements.size(); ++i)
        for (std::size_t j = (k1 == k - k1 ? i : 0); j < hi.elements.size(); ++j)
          add(lo.elements[i].embedded(ambient) * hi.elements[j].embedded(ambient));
    }
  }
  basis.certificate.candidates = rows.size();

  Echelon ech = rows.empty() ? Echelon{} : row_reduce(rows);
  basis.certificate.rank = static_cast<long>(ech.rank());
  if (basis.certificate.rank < basis.certificate.dimension)
    throw SpanFailure("weight " + std::to_string(k) + " level " + std::to_string(level) + ": rank " +
                      std::to_string(ech.rank()) + " < dimension " + std::to_string(basis.certificate.dimension));
  if (basis.certificate.rank > basis.certificate.dimension)
    throw std::logic_error("candidate pool spans more than dim M_k; a candidate is not modular");

  // The echelon form of a Galois-stable space has rational entries, so the
  // rows normally come back to Q(zeta_N); otherwise they stay in the ambient field.
  bool restricts = true;
  std::vector<QSeries> native_rows;
  for (const auto& row : ech.rows) {
    std::vector<Cyclo> coeffs;
    for (const auto& c : row) {
      auto r = restrict_to(c, native);
      if (!r) {
        restricts = false;
        break;
      }
      coeffs.push_back(std::move(*r));
    }
    if (!restricts) break;
    native_rows.emplace_back(native, std::move(coeffs));
  }
  if (restricts) {
    basis.elements = std::move(native_rows);
  } else {
    for (auto& row : ech.rows) basis.elements.emplace_back(ambient, std::move(row));
  }
  basis.pivots = ech.pivots;
  return basis;
}

}  // namespace

ModFormBasis weight_basis(int level, int k, std::size_t prec, const CandidatePolicy& policy) {
  if (k < 0) throw std::invalid_argument("weight_basis: negative weight");
  const std::size_t sturm = sturm_bound(level, k);
  if (prec < sturm)
    throw PrecisionInsufficient("precision " + std::to_string(prec) + " is below the Sturm bound " +
                                std::to_string(sturm) + " for weight " + std::to_string(k) + " level " +
                                std::to_string(level));
  if (!policy.is_default()) return build_basis(level, k, prec, policy);

  using Key = std::tuple<int, int, std::size_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const ModFormBasis>> cache;
  const Key key{level, k, prec};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto value = std::make_shared<const ModFormBasis>(build_basis(level, k, prec, policy));
  std::lock_guard<std::mutex> lock(mu);
  return *cache.emplace(key, std::move(value)).first->second;
}

SpanResult is_in_span(const QSeries& s, const ModFormBasis& basis) {
  if (s.prec() < basis.prec)
    throw PrecisionInsufficient("series precision " + std::to_string(s.prec()) + " is below the basis precision " +
                                std::to_string(basis.prec));
  // work in whichever of the two fields contains the other
  const CycloField& field = basis.field().level() % s.level() == 0 ? basis.field() : s.field();
  if (field.level() % basis.field().level() != 0)
    throw LevelMismatch("series and basis live in unrelated cyclotomic fields");
  QSeries residual = s.truncated(basis.prec).embedded(field);
  std::vector<Cyclo> coeffs;
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    Cyclo c = residual[basis.pivots[i]];
    if (!c.is_zero()) residual -= basis.elements[i].embedded(field) * c;
    coeffs.push_back(std::move(c));
  }
  SpanResult out;
  out.member = residual.is_zero();
  if (out.member) {
    // hand coefficients back in the series' own field when they live there
    if (&s.field() != &field) {
      for (auto& c : coeffs)
        if (auto r = restrict_to(c, s.field())) c = std::move(*r);
    }
    out.coefficients = std::move(coeffs);
  }
  return out;
}

}  // namespace ellgen
