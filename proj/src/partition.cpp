#include "ellgen/partition.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>

#include "ellgen/errors.hpp"

namespace ellgen {

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      cur.push_back(k);
      rec(remaining - k, k);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n, n);
  return out;
}

int weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

Partition merge(const Partition& a, const Partition& b) {
  Partition out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), std::greater<>());
  return out;
}

std::string format_partition(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s;
}

Partition parse_partition(std::string_view text) {
  Partition p;
  if (text.empty()) return p;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (tok.empty() || tok.size() > 9 || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("malformed partition '" + std::string(text) + "'");
    int part = std::stoi(std::string(tok));
    if (part <= 0) throw ParseError("partition parts must be positive in '" + std::string(text) + "'");
    if (!p.empty() && part > p.back())
      throw ParseError("partition parts must be weakly decreasing in '" + std::string(text) + "'");
    p.push_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return p;
}

namespace {

ElementaryPoly poly_mul(const ElementaryPoly& a, const ElementaryPoly& b) {
  ElementaryPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) out[merge(ma, mb)] += ca * cb;
  for (auto it = out.begin(); it != out.end();) {
    if (sgn(it->second) == 0) it = out.erase(it);
    else ++it;
  }
  return out;
}

// p_1..p_n in the e-basis
std::vector<ElementaryPoly> newton_power_sums(int n) {
  std::vector<ElementaryPoly> p(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) {
    ElementaryPoly pk;
    for (int i = 1; i < k; ++i) {
      ElementaryPoly ei{{Partition{i}, Rational(i % 2 == 1 ? 1 : -1)}};
      for (const auto& [m, c] : poly_mul(ei, p[static_cast<std::size_t>(k - i)])) pk[m] += c;
    }
    pk[Partition{k}] += Rational(k % 2 == 1 ? k : -k);
    for (auto it = pk.begin(); it != pk.end();) {
      if (sgn(it->second) == 0) it = pk.erase(it);
      else ++it;
    }
    p[static_cast<std::size_t>(k)] = std::move(pk);
  }
  return p;
}

}  // namespace

const std::map<Partition, ElementaryPoly>& power_sums_in_elementary(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::map<Partition, ElementaryPoly>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto table = std::make_unique<std::map<Partition, ElementaryPoly>>();
    auto p = newton_power_sums(n);
    for (const auto& lambda : partitions_of(n)) {
      ElementaryPoly acc{{Partition{}, Rational(1)}};
      for (int part : lambda) acc = poly_mul(acc, p[static_cast<std::size_t>(part)]);
      (*table)[lambda] = std::move(acc);
    }
    slot = std::move(table);
  }
  return *slot;
}

}  // namespace ellgen
