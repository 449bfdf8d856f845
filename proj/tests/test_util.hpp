#pragma once

#include <initializer_list>

#include "dilato/linalg.hpp"

namespace dilato::testutil {

inline double diff(const CMat& a, const CMat& b) { return op_norm(a - b); }

inline CMat mat(Index rows, Index cols, std::initializer_list<Complex> entries) {
  CMat m(rows, cols);
  Index k = 0;
  for (Complex v : entries) {
    m(k / cols, k % cols) = v;
    ++k;
  }
  return m;
}

inline CMat scalar(double re, double im = 0.0) {
  CMat m(1, 1);
  m(0, 0) = Complex(re, im);
  return m;
}

}  // namespace dilato::testutil
