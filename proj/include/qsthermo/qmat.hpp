// Dense complex-matrix kernel for the 2- and 4-dimensional operators used
// throughout the library: algebra, Kronecker product, partial trace,
// Hermitian eigenvalues and trace distance. Dimensions are fixed at compile
// time to {2, 4}; nothing here is meant to scale beyond a qubit pair.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace qsthermo {

using cplx = std::complex<double>;

// Tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;       // looser: Jacobi rounding on near-singular states
inline constexpr double kJacobiOffTol = 1e-14; // off-diagonal Frobenius mass at convergence
inline constexpr int kJacobiMaxSweeps = 100;

template <std::size_t N>
  requires(N == 2 || N == 4)
class CMat {
 public:
  static constexpr std::size_t dim = N;

  constexpr CMat() : e_{} {}
  explicit constexpr CMat(const std::array<cplx, N * N>& entries) : e_(entries) {}

  static constexpr CMat identity() {
    CMat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr CMat diagonal(const std::array<cplx, N>& d) {
    CMat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr cplx& operator()(std::size_t i, std::size_t j) { return e_[i * N + j]; }
  constexpr const cplx& operator()(std::size_t i, std::size_t j) const { return e_[i * N + j]; }

  CMat& operator+=(const CMat& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] += o.e_[k];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] -= o.e_[k];
    return *this;
  }
  CMat& operator*=(const cplx& s) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] *= s;
    return *this;
  }

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, const cplx& s) { return a *= s; }
  friend CMat operator*(const cplx& s, CMat a) { return a *= s; }

  friend CMat operator*(const CMat& a, const CMat& b) {
    CMat r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < N; ++k) acc += a(i, k) * b(k, j);
        r(i, j) = acc;
      }
    return r;
  }

 private:
  std::array<cplx, N * N> e_;
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

template <std::size_t N>
CMat<N> dagger(const CMat<N>& a) {
  CMat<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

template <std::size_t N>
cplx trace(const CMat<N>& a) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

template <std::size_t N>
double max_abs(const CMat<N>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

template <std::size_t N>
double max_abs_diff(const CMat<N>& a, const CMat<N>& b) {
  return max_abs(a - b);
}

template <std::size_t N>
double hermiticity_defect(const CMat<N>& a) {
  return max_abs_diff(a, dagger(a));
}

// Kronecker product, subsystem order (system, controller): entry
// (2i+k, 2j+l) of the result is a(i,j) * b(k,l).
inline CMat4 tensor(const CMat2& a, const CMat2& b) {
  CMat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

enum class Subsystem { system, controller };

inline CMat2 partial_trace(const CMat4& joint, Subsystem keep) {
  CMat2 r;
  if (keep == Subsystem::system) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) r(i, j) = joint(2 * i, 2 * j) + joint(2 * i + 1, 2 * j + 1);
  } else {
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l) r(k, l) = joint(k, l) + joint(2 + k, 2 + l);
  }
  return r;
}

namespace detail {

// Frobenius norm of the off-diagonal part.
template <std::size_t N>
double off_diagonal_mass(const CMat<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values;  // ascending
  CMat<N> vectors;               // columns are the matching eigenvectors
};

// Cyclic Jacobi for a Hermitian matrix: pivots swept in the fixed order
// (0,1),(0,2),...,(2,3) until the off-diagonal Frobenius mass falls below
// kJacobiOffTol, capped at kJacobiMaxSweeps sweeps. Each rotation is the
// unitary J = I except J(p,p)=J(q,q)=c, J(p,q)=s*phase, J(q,p)=-s*conj(phase)
// with phase = a_pq/|a_pq| and (c,s) the classic real Jacobi pair for the
// phase-stripped 2x2 block.
template <std::size_t N>
EigenSystem<N> jacobi_eigensystem(const CMat<N>& input) {
  CMat<N> a = input;
  CMat<N> v = CMat<N>::identity();
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= kJacobiOffTol) break;
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const cplx phase = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        CMat<N> j = CMat<N>::identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s * phase;
        j(q, p) = -s * std::conj(phase);
        a = dagger(j) * a * j;
        a(p, q) = 0.0;  // rotation zeroes the pivot exactly
        a(q, p) = 0.0;
        v = v * j;
      }
    }
  }
  EigenSystem<N> sys;
  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::array<double, N> raw;
  for (std::size_t i = 0; i < N; ++i) raw[i] = a(i, i).real();
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return raw[x] < raw[y]; });
  for (std::size_t i = 0; i < N; ++i) {
    sys.values[i] = raw[order[i]];
    for (std::size_t r = 0; r < N; ++r) sys.vectors(r, i) = v(r, order[i]);
  }
  return sys;
}

inline std::array<double, 2> eigvals2(const CMat2& a) {
  const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
  const double disc = std::hypot(0.5 * (a(0, 0).real() - a(1, 1).real()), std::abs(a(0, 1)));
  return {mean - disc, mean + disc};
}

}  // namespace detail

// Eigenvalues of a Hermitian matrix, ascending. 2x2 inputs use the closed
// form; 4x4 inputs go through cyclic Jacobi.
template <std::size_t N>
std::array<double, N> herm_eigvals(const CMat<N>& a) {
  if (hermiticity_defect(a) > kHermitianTol)
    throw std::invalid_argument("herm_eigvals: input is not Hermitian within 1e-12");
  if constexpr (N == 2) {
    return detail::eigvals2(a);
  } else {
    return detail::jacobi_eigensystem(a).values;
  }
}

template <std::size_t N>
  requires(N == 2 || N == 4)
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMat<N>& m) : mat_(m) {
    if (hermiticity_defect(m) > kHermitianTol)
      throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(trace(m) - cplx(1.0)) > kTraceTol)
      throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-12");
    const auto ev = herm_eigvals(m);
    if (ev.front() < -kPsdTol)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond 1e-10");
  }

  const CMat<N>& mat() const { return mat_; }

  static DensityMatrix maximally_mixed() {
    return DensityMatrix(CMat<N>::identity() * cplx(1.0 / static_cast<double>(N)));
  }

 private:
  CMat<N> mat_;
};

// Half the absolute eigenvalue sum of the difference.
template <std::size_t N>
double trace_distance(const DensityMatrix<N>& a, const DensityMatrix<N>& b) {
  const auto ev = herm_eigvals<N>(a.mat() - b.mat());
  double s = 0.0;
  for (double l : ev) s += std::abs(l);
  return 0.5 * s;
}

// Qubit kets and projectors used all over the switch and the tests.
using Ket = std::array<cplx, 2>;

inline Ket ket0() { return {cplx(1.0), cplx(0.0)}; }
inline Ket ket1() { return {cplx(0.0), cplx(1.0)}; }
inline Ket ket_plus() { return {cplx(1.0 / std::sqrt(2.0)), cplx(1.0 / std::sqrt(2.0))}; }
inline Ket ket_minus() { return {cplx(1.0 / std::sqrt(2.0)), cplx(-1.0 / std::sqrt(2.0))}; }

inline cplx inner(const Ket& a, const Ket& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

inline CMat2 projector(const Ket& k) {
  CMat2 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = k[i] * std::conj(k[j]);
  return m;
}

// Exact Hadamard-basis projectors. projector(ket_plus()) rounds through
// 1/sqrt(2) and misses 1/2 by one ulp, which matters where |+><+| enters as
// a state (its entropy must vanish exactly).
inline CMat2 plus_projector() {
  CMat2 m;
  m(0, 0) = 0.5;
  m(0, 1) = 0.5;
  m(1, 0) = 0.5;
  m(1, 1) = 0.5;
  return m;
}

inline CMat2 minus_projector() {
  CMat2 m;
  m(0, 0) = 0.5;
  m(0, 1) = -0.5;
  m(1, 0) = -0.5;
  m(1, 1) = 0.5;
  return m;
}

}  // namespace qsthermo
