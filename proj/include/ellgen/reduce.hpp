#pragma once

#include <cstddef>
#include <vector>

#include "ellgen/cyclo.hpp"
#include "ellgen/modforms.hpp"
#include "ellgen/series.hpp"

namespace ellgen {

/// Class of a q-series in C[[q]] / (E_{m+2}[[q]] + NZ[[q]] + C).
struct UqClass {
  int level = 0;
  int degree = 0;  // m + 2; the modular weight is degree / 2
  std::size_t prec = 0;
  std::size_t sturm = 0;
  /// Coefficients of s minus the recorded modular combination, exactly.
  std::vector<Cyclo> residual;
  /// Canonical representative of the residual's class, coefficientwise in [0,1).
  std::vector<NZCoset> cosets;
  /// Coefficients on basis.elements, followed by the coefficient of the constant series 1.
  std::vector<Cyclo> modular_part;
  BasisCertificate certificate;
  bool trivial = false;

  int weight() const { return degree / 2; }
};

/// Class of a (p,q)-series in C[[p,q]] / (NZ[[p,q]] + E[[q]] + E[[p]] + C).
struct WtClass {
  int level = 0;
  int degree = 0;
  std::size_t prec_p = 0;
  std::size_t prec_q = 0;
  /// Cells (i, 0): reduced as a series in p.
  UqClass p_series;
  /// Cells (0, j): reduced as a series in q.
  UqClass q_series;
  /// Cosets of the cells with i >= 1 and j >= 1, row-major; row 0 and column 0 are left zero.
  std::vector<std::vector<NZCoset>> mixed;
  bool trivial = false;
};

/// Canonical representative of s in U^q at degree m+2.
///
/// The weight (m+2)/2 basis and the constant series 1 are echelonized together
/// with pivots at the earliest q-exponents. The constant row is exactly 1, so
/// eliminating it zeroes q^0; the modular rows are eliminated first, then the
/// constant. The residual is then reduced modulo NZ[[q]] plus the
/// Z[1/N, zeta_N]-span of the echelon rows, whose entries need not be
/// N-integral, via a Hermite form over Z/D0 with D0 the N-free denominator.
/// A trivial verdict certifies triviality at the stated precision.
UqClass reduce_Uq(const QSeries& s, int level, int degree, std::size_t prec);

/// Canonical representative of s in the two-variable quotient at degree m+2.
/// The constant cell is absorbed by C; mixed cells reduce coefficientwise.
WtClass reduce_Wtilde(const PQSeries& s, int level, int degree);

/// The projection q -> 0: cells (i, 0) as a series in p.
QSeries project_q0(const PQSeries& s);

}  // namespace ellgen
