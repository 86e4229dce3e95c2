#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "ellgen/cyclo.hpp"
#include "ellgen/series.hpp"

namespace ellgen {

/// Dirichlet character mod M with values in the roots of unity of Q(zeta_L).
///
/// Values are stored as exponents: chi(a) = zeta_L^{exponent(a)}, with no
/// exponent for non-units.
class DirichletCharacter {
 public:
  DirichletCharacter(int modulus, int ambient_level, std::vector<int> exponents);

  int modulus() const { return modulus_; }
  int ambient_level() const { return ambient_; }
  const CycloField& field() const { return CycloField::get(ambient_); }

  std::optional<int> exponent(long a) const;
  /// chi(a) in Q(zeta_L); zero when gcd(a, M) > 1.
  Cyclo value(long a) const;

  bool is_trivial() const;
  /// chi(-1) as +1 or -1.
  int parity() const;
  int conductor() const;
  bool is_primitive() const { return conductor() == modulus_; }

  friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;

 private:
  int modulus_;
  int ambient_;
  std::vector<int> exps_;  // -1 marks non-units
};

/// Carmichael exponent of (Z/n)^*.
int carmichael(int n);
/// L = lcm(N, exponent of (Z/N)^*): the field holding every character of modulus dividing N.
int ambient_level(int level);

/// Every character mod `modulus` with values in Q(zeta_L); requires carmichael(modulus) | L.
std::vector<DirichletCharacter> dirichlet_characters(int modulus, int ambient);
std::vector<DirichletCharacter> primitive_characters(int modulus, int ambient);

/// B_{k,chi} = M^{k-1} sum_{a=1}^{M} chi(a) B_k(a/M), with B_1(x) = x - 1/2.
Cyclo gen_bernoulli(const DirichletCharacter& chi, int k);

/// Eisenstein series attached to the primitive pair (psi, chi), evaluated at q^t.
///
/// Coefficient of q^n (n >= 1) before the substitution is
/// sum_{d | n} psi(n/d) chi(d) d^{k-1}. The constant term is -B_{k,chi}/(2k)
/// when psi is trivial and 0 otherwise; in weight 1 it is -B_{1,chi}/2 or
/// -B_{1,psi}/2 when either character is trivial. Weight 2 with both characters
/// trivial yields E_2(q) - t E_2(q^t), which needs t > 1.
QSeries eisenstein(const DirichletCharacter& psi, const DirichletCharacter& chi, int t, int k, std::size_t prec,
                   int level);

/// Weight-k Eisenstein series spanning E_k(Gamma_1(N)), over Q(zeta_L).
std::vector<QSeries> eisenstein_candidates(int level, int k, std::size_t prec);

/// Index of Gamma_1(N) in SL_2(Z): N^2 prod_{p | N} (1 - 1/p^2).
long gamma1_index(int level);
long gamma1_cusps(int level);
long gamma1_genus(int level);

/// dim M_k(Gamma_1(N)); N >= 4. Weight 1 assumes S_1 = 0, which holds for N <= 22.
long dim_Mk(int level, int k);
/// floor(k mu / 12) + 1.
std::size_t sturm_bound(int level, int k);

struct BasisCertificate {
  long dimension = 0;
  long rank = 0;
  std::size_t sturm = 0;
  std::size_t prec = 0;
  std::size_t candidates = 0;
};

/// Echelonized q-expansion basis of M_k(Gamma_1(N)) to a fixed precision.
/// elements[i] has a 1 at q^{pivots[i]} and 0 at every other pivot.
struct ModFormBasis {
  int level = 0;
  int weight = 0;
  std::size_t prec = 0;
  std::vector<QSeries> elements;
  std::vector<std::size_t> pivots;
  BasisCertificate certificate;

  const CycloField& field() const { return elements.front().field(); }
};

/// Restricts the candidate pool; the default builds the full pool.
struct CandidatePolicy {
  bool eisenstein = true;
  bool products = true;
  std::size_t max_candidates = std::numeric_limits<std::size_t>::max();

  bool is_default() const {
    return eisenstein && products && max_candidates == std::numeric_limits<std::size_t>::max();
  }
};

/// Eisenstein series plus products of lower-weight basis elements, row reduced.
/// Throws SpanFailure if the rank falls short of dim_Mk and PrecisionInsufficient
/// below the Sturm bound. Default-policy results are memoized.
ModFormBasis weight_basis(int level, int k, std::size_t prec, const CandidatePolicy& policy = {});

struct SpanResult {
  bool member = false;
  /// Coefficients on basis.elements when member; empty otherwise.
  std::vector<Cyclo> coefficients;
};

/// Exact membership of the first basis.prec coefficients of s in the span.
SpanResult is_in_span(const QSeries& s, const ModFormBasis& basis);

}  // namespace ellgen
