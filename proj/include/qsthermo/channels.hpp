// Kraus-represented CPTP channels: the generalized amplitude damping and
// phase flip constructors, completeness validation, application, sequential
// composition, and the causally separable convex mixture of the two orders.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsthermo/qmat.hpp"

namespace qsthermo {

inline constexpr double kCptpTol = 1e-12;

template <std::size_t N>
struct KrausChannel {
  std::vector<CMat<N>> ops;
  std::string label;
};

using QubitChannel = KrausChannel<2>;

// Generalized amplitude damping with equilibrium parameter p and annihilation
// parameter gamma. Kraus list, in index order 0..3:
//   E0 = sqrt(p)   [[1, 0], [0, sqrt(1-gamma)]]
//   E1 = sqrt(p)   [[0, sqrt(gamma)], [0, 0]]
//   E2 = sqrt(1-p) [[sqrt(1-gamma), 0], [0, 1]]
//   E3 = sqrt(1-p) [[0, 0], [sqrt(gamma), 0]]
// Zero operators (gamma = 0) are kept so indices stay aligned.
inline QubitChannel gad_channel(double p, double gamma) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gad_channel: p outside [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gad_channel: gamma outside [0, 1]");
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  const double sg = std::sqrt(gamma);
  const double sgbar = std::sqrt(1.0 - gamma);

  CMat2 e0, e1, e2, e3;
  e0(0, 0) = sp;
  e0(1, 1) = sp * sgbar;
  e1(0, 1) = sp * sg;
  e2(0, 0) = sq * sgbar;
  e2(1, 1) = sq;
  e3(1, 0) = sq * sg;
  return {{e0, e1, e2, e3}, "gad"};
}

// Phase flip keeping the state with probability q:
//   F0 = sqrt(q) I,  F1 = sqrt(1-q) diag(1, -1)
inline QubitChannel pf_channel(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("pf_channel: q outside [0, 1]");
  CMat2 f0, f1;
  f0(0, 0) = std::sqrt(q);
  f0(1, 1) = std::sqrt(q);
  f1(0, 0) = std::sqrt(1.0 - q);
  f1(1, 1) = -std::sqrt(1.0 - q);
  return {{f0, f1}, "pf"};
}

inline QubitChannel identity_channel() { return {{CMat2::identity()}, "id"}; }

struct CptpReport {
  double max_deviation = 0.0;  // max-abs-entry of sum E^dag E - I
  bool pass = false;
};

template <std::size_t N>
CptpReport validate_cptp(std::span<const CMat<N>> ops) {
  CMat<N> sum;
  for (const auto& e : ops) sum += dagger(e) * e;
  CptpReport rep;
  rep.max_deviation = max_abs_diff(sum, CMat<N>::identity());
  rep.pass = rep.max_deviation <= kCptpTol;
  return rep;
}

template <std::size_t N>
CptpReport validate_cptp(const KrausChannel<N>& ch) {
  return validate_cptp(std::span<const CMat<N>>(ch.ops));
}

// Kraus sum  rho -> sum_k E_k rho E_k^dagger  on the raw matrix.
template <std::size_t N>
CMat<N> kraus_apply(std::span<const CMat<N>> ops, const CMat<N>& rho) {
  CMat<N> out;
  for (const auto& e : ops) out += e * rho * dagger(e);
  return out;
}

template <std::size_t N>
DensityMatrix<N> apply(const KrausChannel<N>& ch, const DensityMatrix<N>& rho) {
  if (ch.ops.empty()) throw std::invalid_argument("apply: channel has no Kraus operators");
  return DensityMatrix<N>(kraus_apply(std::span<const CMat<N>>(ch.ops), rho.mat()));
}

// compose(second, first): "first" acts first, matching mathematical
// composition order. Kraus list is every product second_a * first_b.
template <std::size_t N>
KrausChannel<N> compose(const KrausChannel<N>& second, const KrausChannel<N>& first) {
  KrausChannel<N> out;
  out.ops.reserve(second.ops.size() * first.ops.size());
  for (const auto& s : second.ops)
    for (const auto& f : first.ops) out.ops.push_back(s * f);
  out.label = second.label + "*" + first.label;
  return out;
}

// Convex mixture of the two definite orders of a channel pair. The branches
// are kept as separate channels; lam weighs first_then_second.
struct SeparableMixture {
  double lam = 0.0;                 // weight of the first_then_second branch
  QubitChannel first_then_second;   // "first" acts first
  QubitChannel second_then_first;
};

inline SeparableMixture separable_mixture(double lam, const QubitChannel& first,
                                          const QubitChannel& second) {
  if (!(lam >= 0.0 && lam <= 1.0)) throw std::invalid_argument("separable_mixture: lam outside [0, 1]");
  return {lam, compose(second, first), compose(first, second)};
}

inline DensityMatrix<2> apply_separable(const SeparableMixture& mix, const DensityMatrix<2>& rho) {
  const auto a = kraus_apply(std::span<const CMat2>(mix.first_then_second.ops), rho.mat());
  const auto b = kraus_apply(std::span<const CMat2>(mix.second_then_first.ops), rho.mat());
  return DensityMatrix<2>(a * cplx(mix.lam) + b * cplx(1.0 - mix.lam));
}

}  // namespace qsthermo
