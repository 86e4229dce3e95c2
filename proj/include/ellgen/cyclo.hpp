#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ellgen/rational.hpp"

namespace ellgen {

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<Integer>;

/// The N-th cyclotomic polynomial Phi_N.
IntPoly cyclotomic_poly(int n);

int euler_phi(int n);

/// Shared, immutable description of Q(zeta_N) in the power basis 1, z, ..., z^{phi(N)-1}.
///
/// Instances are interned: `get` returns the same object for the same level, so
/// two values live in the same field iff their field pointers compare equal.
class CycloField {
 public:
  static const CycloField& get(int level);

  int level() const { return level_; }
  int degree() const { return degree_; }
  const IntPoly& minimal_poly() const { return phi_; }
  /// Coordinates of z^j for any integer j.
  const std::vector<Integer>& power(long j) const;

  CycloField(const CycloField&) = delete;
  CycloField& operator=(const CycloField&) = delete;

 private:
  explicit CycloField(int level);

  int level_;
  int degree_;
  IntPoly phi_;
  std::vector<std::vector<Integer>> powers_;  // z^j for 0 <= j < level
};

/// An element of Q(zeta_N), stored by its coordinates in the power basis.
class Cyclo {
 public:
  explicit Cyclo(const CycloField& field);
  Cyclo(const CycloField& field, const Rational& r);
  Cyclo(const CycloField& field, std::vector<Rational> coords);

  static Cyclo zeta_power(const CycloField& field, long j);

  const CycloField& field() const { return *field_; }
  int level() const { return field_->level(); }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator*=(const Rational& r);

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(Cyclo a, const Rational& r) { return a *= r; }
  friend Cyclo operator*(const Rational& r, Cyclo a) { return a *= r; }
  Cyclo operator-() const;

  /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
  Cyclo inverse() const;
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

  /// Complex conjugation z -> z^{-1}.
  Cyclo conj() const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

 private:
  void check_same_field(const Cyclo& o) const;

  const CycloField* field_;
  std::vector<Rational> coords_;
};

// Scalar hooks for the generic series kernels.
inline Cyclo zero_like(const Cyclo& c) { return Cyclo(c.field()); }
inline Cyclo one_like(const Cyclo& c) { return Cyclo(c.field(), Rational(1)); }
inline bool is_zero(const Cyclo& c) { return c.is_zero(); }
inline Cyclo invert(const Cyclo& c) { return c.inverse(); }

/// True iff every coordinate denominator is a product of primes dividing N,
/// i.e. the element lies in Z[1/N, zeta_N].
bool in_NZ(const Cyclo& a);

/// Canonical representative of a + Z[1/N, zeta_N]: every coordinate in [0,1)
/// with denominator coprime to N.
struct NZCoset {
  Cyclo rep;
  bool is_zero() const { return rep.is_zero(); }
  int level() const { return rep.level(); }
  friend bool operator==(const NZCoset& a, const NZCoset& b) { return a.rep == b.rep; }
};

NZCoset reduce_mod_NZ(const Cyclo& a);

/// Image under Q(zeta_N) -> Q(zeta_L), z_N -> z_L^{L/N}. Requires N | L.
Cyclo embed(const Cyclo& a, const CycloField& target);
/// Preimage in the subfield Q(zeta_M) (M | level), if the element lies there.
std::optional<Cyclo> restrict_to(const Cyclo& a, const CycloField& sub);

/// chi_y(CP^n) = sum_{i=0}^{n} (-y)^i evaluated at y.
Cyclo chi_y_projective(int n, const Cyclo& y);

/// "num/den" strings, little-endian in powers of zeta_N, length phi(N).
std::vector<std::string> serialize(const Cyclo& a);
Cyclo parse_cyclo(const CycloField& field, const std::vector<std::string>& coords);

/// Human-readable form such as "1/2 - 3*z + z^2" with z = zeta_N.
std::string to_display(const Cyclo& a);
/// Display-only numerical value with zeta_N -> exp(2 pi i root / N). Never used in computation.
std::complex<double> to_complex(const Cyclo& a, int root = 1);

}  // namespace ellgen
