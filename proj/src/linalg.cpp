#include "ellgen/linalg.hpp"

#include "ellgen/errors.hpp"

namespace ellgen {

Echelon row_reduce(const std::vector<CycloRow>& input, bool track_transform) {
  Echelon out;
  if (input.empty()) return out;
  const CycloField& field = input.front().front().field();
  const std::size_t cols = input.front().size();
  const std::size_t n = input.size();
  for (const auto& r : input)
    if (r.size() != cols) throw PrecMismatch("row_reduce: ragged input");

  std::vector<CycloRow> m = input;
  std::vector<CycloRow> t;
  if (track_transform) {
    t.assign(n, CycloRow(n, Cyclo(field)));
    for (std::size_t i = 0; i < n; ++i) t[i][i] = Cyclo(field, Rational(1));
  }

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < n; ++c) {
    std::size_t p = rank;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(m[p], m[rank]);
    if (track_transform) std::swap(t[p], t[rank]);
    const Cyclo inv = m[rank][c].inverse();
    for (auto& x : m[rank]) x *= inv;
    if (track_transform)
      for (auto& x : t[rank]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == rank || m[i][c].is_zero()) continue;
      const Cyclo f = m[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!m[rank][k].is_zero()) m[i][k] -= f * m[rank][k];
      if (track_transform)
        for (std::size_t k = 0; k < n; ++k)
          if (!t[rank][k].is_zero()) t[i][k] -= f * t[rank][k];
    }
    out.pivots.push_back(c);
    ++rank;
  }
  m.resize(rank);
  out.rows = std::move(m);
  if (track_transform) {
    t.resize(rank);
    out.transform = std::move(t);
  }
  return out;
}

}  // namespace ellgen
