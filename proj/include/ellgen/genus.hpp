#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "ellgen/partition.hpp"
#include "ellgen/series.hpp"

namespace ellgen {

/// Chern numbers c_lambda[M] of a stably almost complex manifold of complex dimension `dim`.
/// Missing partitions mean 0.
struct ChernData {
  int dim = 0;
  std::map<Partition, Integer> numbers;

  Integer at(const Partition& p) const;
  /// Throws BadChernData unless every key is a partition of dim.
  void validate() const;
  friend bool operator==(const ChernData&, const ChernData&) = default;
};

/// Chern numbers <c_lambda(T0) c_mu(T1), [X]> for a split tangent bundle T0 + T1.
struct SplitChernData {
  int dim0 = 0;
  int dim1 = 0;
  std::map<std::pair<Partition, Partition>, Integer> numbers;

  int dim() const { return dim0 + dim1; }
  /// Throws BadSplitChernData on keys of the wrong total degree or with parts above the ranks.
  void validate() const;
};

/// Homogeneous polynomial in Chern classes with q-series coefficients.
struct GradedSymPoly {
  int degree = 0;
  std::map<Partition, QSeries> terms;
};

/// a(q) = Q_{-zeta_N}(0)(q)^{-1}.
QSeries q_factor_a(int level, std::size_t prec_q);

/// phi(x)(q) = a(q) Q_{-zeta_N}(x)(q), expanded as sum_n phi_n(q) x^n.
///
/// Built from the logarithm: outside the n = 0 factor,
///   log prod_n (...) = sum_{n,m>=1} q^{nm}/m [(1 - z^m) e^{-mx} + (1 - z^{-m}) e^{mx}]
/// so phi = Td(x) (1 - z e^{-x})/(1 - z) * exp(L(x) - L(0)) and phi_0 = 1 exactly.
/// Results are memoized per (level, prec_x, prec_q).
XQSeries phi_series(int level, std::size_t prec_x, std::size_t prec_q);

/// Right-hand side of the bundle identity for one Chern root x, expanded from
/// characters: Td(x) ch[L_y V* prod_n L_{q^n y} V* L_{q^n/y} V S_{q^n}(V + V*)]
/// with y = -zeta_N, ch L_t V = 1 + t e^x and ch S_t V = (1 - t e^x)^{-1}.
XQSeries q_bundle_series(int level, std::size_t prec_x, std::size_t prec_q);

/// Compares q_bundle_series with Q_{-zeta_N}(x)(q) = phi_series / a(q).
bool verify_Q_identity(int level, std::size_t prec_x, std::size_t prec_q);

/// Degree-n multiplicative class of phi in the elementary symmetric functions (= Chern classes).
GradedSymPoly multiplicative_class(const XQSeries& phi, int n);

/// Level-N elliptic genus of M as a q-series. prec_x = 0 selects dim + 2.
QSeries genus(const ChernData& m, int level, std::size_t prec_q, std::size_t prec_x = 0);

/// Two-variable representative <prod_{T0} phi(x_i)(p) prod_{T1} phi(y_j)(q), [X]>.
PQSeries genus_bivariate(const SplitChernData& x, int level, std::size_t prec_p, std::size_t prec_q,
                         std::size_t prec_x = 0);

/// Chern numbers of the product manifold via c(T(A x B)) = c(TA) c(TB).
ChernData chern_product(const ChernData& a, const ChernData& b);

/// CP^n: c_lambda = prod_i binom(n+1, lambda_i).
ChernData cp_chern(int n);

/// A x B with T0 = TA and T1 = TB.
SplitChernData split_product(const ChernData& a, const ChernData& b);

}  // namespace ellgen
