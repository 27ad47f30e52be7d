#pragma once

#include "measurecost/protocols.hpp"
#include "measurecost/random.hpp"

#include <cmath>
#include <numbers>

namespace mc = measurecost;

inline mc::ComplexVector ket(std::initializer_list<mc::Complex> amps) {
  mc::ComplexVector v(static_cast<mc::Index>(amps.size()));
  mc::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return v;
}

inline mc::DensityMatrix pure(std::initializer_list<mc::Complex> amps) {
  mc::ComplexVector v = ket(amps);
  return mc::DensityMatrix::pure(v / v.norm());
}

inline mc::DensityMatrix diag_state(std::initializer_list<double> p) {
  std::vector<double> w(p);
  return mc::DensityMatrix::diagonal(std::span<const double>(w));
}

inline mc::DensityMatrix plus_state() { return pure({1.0, 1.0}); }

inline double max_abs(const mc::ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline const double kLn2 = std::numbers::ln2;
