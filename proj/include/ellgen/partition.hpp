#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ellgen/rational.hpp"

namespace ellgen {

/// Weakly decreasing positive parts. The empty partition is the partition of 0.
using Partition = std::vector<int>;

/// All partitions of n, in reverse lexicographic order ({n} first).
std::vector<Partition> partitions_of(int n);

int weight(const Partition& p);
/// Multiset union of the parts, kept weakly decreasing.
Partition merge(const Partition& a, const Partition& b);

/// "2,1,1"; the empty partition encodes as "".
std::string format_partition(const Partition& p);
/// Inverse of format_partition. Throws ParseError on malformed or increasing input.
Partition parse_partition(std::string_view text);

/// Polynomial in the elementary symmetric functions e_1, e_2, ... keyed by the
/// monomial e_{l1} e_{l2} ... written as a partition.
using ElementaryPoly = std::map<Partition, Rational>;

/// p_lambda expressed in elementary symmetric functions, for every lambda |- n.
/// Built from Newton's identities p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k.
const std::map<Partition, ElementaryPoly>& power_sums_in_elementary(int n);

/// Degree-n piece of prod_i f(x_i) written in the e-basis, where log f = sum_k log_coeffs[k] x^k.
///
/// prod_i f(x_i) = exp(sum_k l_k p_k), so the degree-n part is
/// sum_{lambda |- n} prod_k l_k^{m_k} / m_k! p_lambda, and each p_lambda is rewritten in e's.
/// `log_coeffs` must have length > n; entry 0 is ignored.
template <class R>
std::map<Partition, R> multiplicative_sequence(const std::vector<R>& log_coeffs, int n) {
  std::map<Partition, R> out;
  const R zero = zero_like(log_coeffs.at(0));
  if (n == 0) {
    out.emplace(Partition{}, one_like(log_coeffs[0]));
    return out;
  }
  for (const auto& [lambda, expansion] : power_sums_in_elementary(n)) {
    // weight prod_k l_k^{m_k} / m_k!
    R w = one_like(log_coeffs[0]);
    std::map<int, int> mult;
    for (int part : lambda) ++mult[part];
    bool vanishes = false;
    for (const auto& [k, m] : mult) {
      const R& lk = log_coeffs.at(static_cast<std::size_t>(k));
      if (is_zero(lk)) {
        vanishes = true;
        break;
      }
      for (int i = 0; i < m; ++i) w = w * lk;
      w = w * make_rational(Integer(1), factorial(m));
    }
    if (vanishes) continue;
    for (const auto& [mu, c] : expansion) {
      auto it = out.find(mu);
      if (it == out.end()) it = out.emplace(mu, zero).first;
      it->second += w * c;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (is_zero(it->second)) it = out.erase(it);
    else ++it;
  }
  return out;
}

}  // namespace ellgen
