#pragma once

#include <initializer_list>
#include <utility>

#include "casimir/series.hpp"

namespace casimir::test {

// Series with integer exponents and integer coefficients.
inline QSeries Q(std::initializer_list<std::pair<long, long>> terms, long order) {
  QSeries::TermMap m;
  for (auto [e, c] : terms) m[HalfInt(e)] = c;
  return QSeries(m, order);
}

inline BiSeries B(std::initializer_list<std::tuple<long, int, long>> terms, long order) {
  BiSeries::TermMap m;
  for (auto [q, x, c] : terms) m[BiExponent{HalfInt(q), x}] = c;
  return BiSeries(m, order);
}

}  // namespace casimir::test
