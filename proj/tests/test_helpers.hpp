// Shared random generators for the test suites. Deterministic: every suite
// seeds its own mt19937_64, and doubles are drawn from the top 53 bits so the
// streams do not depend on library-specific distribution internals.
#pragma once

#include <random>

#include "qsthermo/qmat.hpp"

namespace test_helpers {

inline double unit_double(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * unit_double(g);
}

template <std::size_t N>
qsthermo::CMat<N> random_hermitian(std::mt19937_64& g) {
  qsthermo::CMat<N> m;
  for (std::size_t i = 0; i < N; ++i) {
    m(i, i) = uniform(g, -1.0, 1.0);
    for (std::size_t j = i + 1; j < N; ++j) {
      const qsthermo::cplx v(uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

// Uniform over the Bloch ball by cube rejection.
inline qsthermo::DensityMatrix<2> random_state2(std::mt19937_64& g) {
  double x, y, z;
  do {
    x = uniform(g, -1.0, 1.0);
    y = uniform(g, -1.0, 1.0);
    z = uniform(g, -1.0, 1.0);
  } while (x * x + y * y + z * z > 1.0);
  qsthermo::CMat2 m;
  m(0, 0) = 0.5 * (1.0 + z);
  m(1, 1) = 0.5 * (1.0 - z);
  m(0, 1) = 0.5 * qsthermo::cplx(x, -y);
  m(1, 0) = 0.5 * qsthermo::cplx(x, y);
  return qsthermo::DensityMatrix<2>(m);
}

// Random orthonormal qubit basis: c0 = (a, b), c1 = (-conj(b), conj(a)).
inline std::pair<qsthermo::Ket, qsthermo::Ket> random_basis(std::mt19937_64& g) {
  const double t = uniform(g, 0.0, 3.14159265358979323846);
  const double phi = uniform(g, 0.0, 2.0 * 3.14159265358979323846);
  const qsthermo::cplx a(std::cos(t));
  const qsthermo::cplx b = std::sin(t) * qsthermo::cplx(std::cos(phi), std::sin(phi));
  return {qsthermo::Ket{a, b}, qsthermo::Ket{-std::conj(b), std::conj(a)}};
}

// Random PSD unit-trace 4x4 via G G^dagger normalization.
inline qsthermo::DensityMatrix<4> random_state4(std::mt19937_64& g) {
  qsthermo::CMat<4> gm;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      gm(i, j) = qsthermo::cplx(uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0));
  auto psd = gm * qsthermo::dagger(gm);
  psd *= qsthermo::cplx(1.0 / qsthermo::trace(psd).real());
  return qsthermo::DensityMatrix<4>(psd);
}

}  // namespace test_helpers
