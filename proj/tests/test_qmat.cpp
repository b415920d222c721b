#include <catch_amalgamated.hpp>

#include "qsthermo/qmat.hpp"
#include "test_helpers.hpp"

using namespace qsthermo;
using test_helpers::random_hermitian;
using test_helpers::random_state2;
using test_helpers::uniform;

namespace {

CMat2 diag2(double a, double b) { return CMat2::diagonal({cplx(a), cplx(b)}); }

}  // namespace

TEST_CASE("tensor: identity and basis projectors") {
  const auto i4 = tensor(CMat2::identity(), CMat2::identity());
  REQUIRE(max_abs_diff(i4, CMat4::identity()) == 0.0);

  const auto proj01 = tensor(diag2(1, 0), diag2(0, 1));
  REQUIRE(max_abs_diff(proj01, CMat4::diagonal({cplx(0), cplx(1), cplx(0), cplx(0)})) == 0.0);
}

TEST_CASE("tensor: |+><+| x |0><0| by hand expansion") {
  // Kronecker by hand: a(i,j)*b(k,l) puts 0.5 at (0,0),(0,2),(2,0),(2,2).
  const auto t = tensor(projector(ket_plus()), projector(ket0()));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool hit = (i == 0 || i == 2) && (j == 0 || j == 2);
      REQUIRE(std::abs(t(i, j) - (hit ? cplx(0.5) : cplx(0.0))) < 1e-15);
    }
}

TEST_CASE("partial_trace: product states factor back out") {
  std::mt19937_64 g(101);
  for (int n = 0; n < 200; ++n) {
    const auto a = random_state2(g);
    const auto b = random_state2(g);
    const auto back = partial_trace(tensor(a.mat(), b.mat()), Subsystem::system);
    REQUIRE(max_abs_diff(back, a.mat()) <= 1e-12);
    const auto ctrl = partial_trace(tensor(a.mat(), b.mat()), Subsystem::controller);
    REQUIRE(max_abs_diff(ctrl, b.mat()) <= 1e-12);
  }
}

TEST_CASE("partial_trace: maximally mixed and scaling") {
  const auto half = partial_trace(CMat4::identity() * cplx(0.25), Subsystem::controller);
  REQUIRE(max_abs_diff(half, CMat2::identity() * cplx(0.5)) == 0.0);

  // partial_trace(tensor(a,b)) = a * trace(b) for non-normalized b
  std::mt19937_64 g(102);
  const auto a = random_hermitian<2>(g);
  const auto b = random_hermitian<2>(g);
  const auto lhs = partial_trace(tensor(a, b), Subsystem::system);
  REQUIRE(max_abs_diff(lhs, a * trace(b)) <= 1e-13);
}

TEST_CASE("partial_trace: trace-preserving and linear") {
  std::mt19937_64 g(103);
  for (int n = 0; n < 200; ++n) {
    const auto j1 = random_hermitian<4>(g);
    const auto j2 = random_hermitian<4>(g);
    const double w = uniform(g, 0.0, 1.0);
    for (auto keep : {Subsystem::system, Subsystem::controller}) {
      REQUIRE(std::abs(trace(partial_trace(j1, keep)) - trace(j1)) <= 1e-13);
      const auto mixed = partial_trace(j1 * cplx(w) + j2 * cplx(1.0 - w), keep);
      const auto split = partial_trace(j1, keep) * cplx(w) + partial_trace(j2, keep) * cplx(1.0 - w);
      REQUIRE(max_abs_diff(mixed, split) <= 1e-13);
    }
  }
}

TEST_CASE("herm_eigvals: fixed 2x2 cases") {
  const auto d = herm_eigvals(diag2(0.8, 0.2));
  REQUIRE(std::abs(d[0] - 0.2) < 1e-15);
  REQUIRE(std::abs(d[1] - 0.8) < 1e-15);

  const auto pl = herm_eigvals(plus_projector());
  REQUIRE(pl[0] == 0.0);
  REQUIRE(pl[1] == 1.0);

  // closed-form quadratic: 0.5 +- 0.3
  CMat2 m;
  m(0, 0) = 0.5;
  m(0, 1) = 0.3;
  m(1, 0) = 0.3;
  m(1, 1) = 0.5;
  const auto e = herm_eigvals(m);
  REQUIRE(std::abs(e[0] - 0.2) < 1e-15);
  REQUIRE(std::abs(e[1] - 0.8) < 1e-15);
}

TEST_CASE("herm_eigvals: rejects non-Hermitian input") {
  CMat2 m;
  m(0, 1) = cplx(0.0, 1.0);
  m(1, 0) = cplx(0.0, 1.0);  // should be -i
  REQUIRE_THROWS_AS(herm_eigvals(m), std::invalid_argument);
}

TEST_CASE("herm_eigvals: eigenvalue sum equals trace") {
  std::mt19937_64 g(104);
  for (int n = 0; n < 1000; ++n) {
    const auto a2 = random_hermitian<2>(g);
    const auto e2 = herm_eigvals(a2);
    REQUIRE(std::abs(e2[0] + e2[1] - trace(a2).real()) <= 1e-12);

    const auto a4 = random_hermitian<4>(g);
    const auto e4 = herm_eigvals(a4);
    double s = 0.0;
    for (double l : e4) s += l;
    REQUIRE(std::abs(s - trace(a4).real()) <= 1e-12);
    REQUIRE(std::is_sorted(e4.begin(), e4.end()));
  }
}

TEST_CASE("jacobi eigensystem reconstructs the input") {
  std::mt19937_64 g(105);
  for (int n = 0; n < 1000; ++n) {
    const auto a = random_hermitian<4>(g);
    const auto sys = detail::jacobi_eigensystem(a);
    CMat4 lambda;
    for (std::size_t i = 0; i < 4; ++i) lambda(i, i) = sys.values[i];
    const auto rebuilt = sys.vectors * lambda * dagger(sys.vectors);
    REQUIRE(max_abs_diff(rebuilt, a) <= 1e-10);
  }
}

TEST_CASE("ring operations") {
  std::mt19937_64 g(106);
  const auto a = random_hermitian<2>(g);
  REQUIRE(max_abs_diff(CMat2::identity() * a, a) == 0.0);
  REQUIRE(max_abs_diff(dagger(dagger(a)), a) == 0.0);

  // F1 of the phase flip with q = 0.36 is real diagonal, so self-adjoint.
  const auto f1 = diag2(std::sqrt(0.64), -std::sqrt(0.64));
  REQUIRE(max_abs_diff(dagger(f1), f1) == 0.0);

  // energy expectation with H = |1><1|
  const double r = 0.3;
  REQUIRE(std::abs(trace(diag2(r, 1 - r) * diag2(0, 1)) - cplx(1 - r)) < 1e-15);

  // trace(ab) = trace(ba) on random pairs
  for (int n = 0; n < 100; ++n) {
    const auto x = random_hermitian<4>(g);
    const auto y = random_hermitian<4>(g);
    REQUIRE(std::abs(trace(x * y) - trace(y * x)) <= 1e-13);
  }
}

TEST_CASE("trace_distance") {
  const DensityMatrix<2> t08(diag2(0.8, 0.2));
  const DensityMatrix<2> mixed(diag2(0.5, 0.5));
  const DensityMatrix<2> zero(projector(ket0()));
  const DensityMatrix<2> one(projector(ket1()));

  REQUIRE(trace_distance(t08, t08) == 0.0);
  REQUIRE(std::abs(trace_distance(zero, one) - 1.0) < 1e-15);
  // diagonal difference spectrum {0.3, -0.3} -> distance 0.3
  REQUIRE(std::abs(trace_distance(t08, mixed) - 0.3) < 1e-15);

  std::mt19937_64 g(107);
  for (int n = 0; n < 100; ++n) {
    const auto a = random_state2(g);
    const auto b = random_state2(g);
    const double d = trace_distance(a, b);
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 1.0 + 1e-15);
    REQUIRE(std::abs(d - trace_distance(b, a)) <= 1e-15);
  }
}

TEST_CASE("DensityMatrix validation") {
  REQUIRE_THROWS_AS(DensityMatrix<2>(diag2(0.9, 0.2)), std::invalid_argument);   // trace 1.1
  REQUIRE_THROWS_AS(DensityMatrix<2>(diag2(1.5, -0.5)), std::invalid_argument);  // negative eigenvalue

  CMat2 skew;
  skew(0, 0) = 0.5;
  skew(1, 1) = 0.5;
  skew(0, 1) = cplx(0.0, 0.2);
  skew(1, 0) = cplx(0.0, 0.2);
  REQUIRE_THROWS_AS(DensityMatrix<2>(skew), std::invalid_argument);  // not Hermitian

  REQUIRE(max_abs_diff(DensityMatrix<2>::maximally_mixed().mat(), diag2(0.5, 0.5)) == 0.0);
}

TEST_CASE("tensor / partial_trace round trip") {
  std::mt19937_64 g(108);
  for (int n = 0; n < 500; ++n) {
    const auto a = random_hermitian<2>(g);
    const auto b = random_state2(g);  // unit trace
    const auto round = partial_trace(tensor(a, b.mat()), Subsystem::system);
    REQUIRE(max_abs_diff(round, a) <= 1e-12);
  }
}
