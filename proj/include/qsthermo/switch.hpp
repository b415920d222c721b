// Quantum-switch supermap for a GAD/PF channel pair: controlled Kraus set,
// application to a system (x) controller state, controller measurement, and
// the closed-form conditional outputs of the two studied scenarios.
//
// Subsystem order everywhere is (system, controller).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsthermo/channels.hpp"
#include "qsthermo/qmat.hpp"

namespace qsthermo {

inline constexpr double kDegenerateProb = 1e-14;
inline constexpr double kOrthoTol = 1e-12;

// Which channel acts first on the branch assigned to a control-basis vector.
// pf_then_gad corresponds to products E_i * F_j, gad_then_pf to F_j * E_i.
enum class ChannelOrder { pf_then_gad, gad_then_pf };

class ControlAssignment {
 public:
  ControlAssignment(const Ket& c0, const Ket& c1, ChannelOrder on_c0, ChannelOrder on_c1)
      : c0_(c0), c1_(c1), on_c0_(on_c0), on_c1_(on_c1) {
    if (std::abs(inner(c0, c0) - cplx(1.0)) > kOrthoTol ||
        std::abs(inner(c1, c1) - cplx(1.0)) > kOrthoTol)
      throw std::invalid_argument("ControlAssignment: basis vectors must be normalized");
    if (std::abs(inner(c0, c1)) > kOrthoTol)
      throw std::invalid_argument("ControlAssignment: basis vectors must be orthogonal");
    if (on_c0 == on_c1)
      throw std::invalid_argument("ControlAssignment: the two assigned orders must differ");
  }

  const Ket& c0() const { return c0_; }
  const Ket& c1() const { return c1_; }
  ChannelOrder order_on_c0() const { return on_c0_; }
  ChannelOrder order_on_c1() const { return on_c1_; }

 private:
  Ket c0_, c1_;
  ChannelOrder on_c0_, on_c1_;
};

// Control on |0>: PF first then GAD; control on |1>: the reverse.
inline ControlAssignment computational_assignment() {
  return {ket0(), ket1(), ChannelOrder::pf_then_gad, ChannelOrder::gad_then_pf};
}

// Control on |+>: PF first then GAD; control on |->: the reverse.
inline ControlAssignment hadamard_assignment() {
  return {ket_plus(), ket_minus(), ChannelOrder::pf_then_gad, ChannelOrder::gad_then_pf};
}

struct SwitchConfig {
  ControlAssignment assignment;
  DensityMatrix<2> controller;
  QubitChannel gad;
  QubitChannel pf;
};

namespace detail {

inline CMat2 branch_product(const QubitChannel& gad, const QubitChannel& pf, std::size_t i,
                            std::size_t j, ChannelOrder order) {
  return order == ChannelOrder::pf_then_gad ? gad.ops[i] * pf.ops[j] : pf.ops[j] * gad.ops[i];
}

}  // namespace detail

// Controlled Kraus set  K_ij = (product on c0) (x) |c0><c0|
//                            + (product on c1) (x) |c1><c1|
// over all pairs (i, j) of GAD and PF Kraus indices.
inline std::vector<CMat4> switch_kraus(const SwitchConfig& cfg) {
  if (cfg.gad.ops.empty() || cfg.pf.ops.empty())
    throw std::invalid_argument("switch_kraus: channels must have Kraus operators");
  const auto p0 = projector(cfg.assignment.c0());
  const auto p1 = projector(cfg.assignment.c1());
  std::vector<CMat4> ks;
  ks.reserve(cfg.gad.ops.size() * cfg.pf.ops.size());
  for (std::size_t i = 0; i < cfg.gad.ops.size(); ++i)
    for (std::size_t j = 0; j < cfg.pf.ops.size(); ++j) {
      const auto a = detail::branch_product(cfg.gad, cfg.pf, i, j, cfg.assignment.order_on_c0());
      const auto b = detail::branch_product(cfg.gad, cfg.pf, i, j, cfg.assignment.order_on_c1());
      ks.push_back(tensor(a, p0) + tensor(b, p1));
    }
  return ks;
}

// sum_ij K_ij (rho (x) controller) K_ij^dagger
inline DensityMatrix<4> apply_switch(const SwitchConfig& cfg, const DensityMatrix<2>& rho) {
  const auto ks = switch_kraus(cfg);
  const auto joint_in = tensor(rho.mat(), cfg.controller.mat());
  CMat4 out;
  for (const auto& k : ks) out += k * joint_in * dagger(k);
  return DensityMatrix<4>(out);
}

struct MeasurementBasis {
  Ket b0, b1;
  std::string label0, label1;
};

inline MeasurementBasis computational_basis() { return {ket0(), ket1(), "0", "1"}; }
inline MeasurementBasis hadamard_basis() { return {ket_plus(), ket_minus(), "+", "-"}; }

struct Outcome {
  double probability = 0.0;
  DensityMatrix<2> state;
  std::string label;
  bool degenerate = false;  // probability below kDegenerateProb; state is I/2
};

struct OutcomeEnsemble {
  std::vector<Outcome> entries;
};

namespace detail {

// (I (x) <b|) joint (I (x) |b>), unnormalized.
inline CMat2 controller_compression(const CMat4& joint, const Ket& b) {
  CMat2 c;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          acc += std::conj(b[k]) * joint(2 * i + k, 2 * j + l) * b[l];
      c(i, j) = acc;
    }
  return c;
}

}  // namespace detail

// Projective measurement of the controller. Outcomes keep the basis order;
// a branch with probability below kDegenerateProb is flagged and carries the
// maximally mixed state instead of an ill-defined normalization.
inline OutcomeEnsemble measure_controller(const DensityMatrix<4>& joint, const MeasurementBasis& basis) {
  if (std::abs(inner(basis.b0, basis.b0) - cplx(1.0)) > kOrthoTol ||
      std::abs(inner(basis.b1, basis.b1) - cplx(1.0)) > kOrthoTol ||
      std::abs(inner(basis.b0, basis.b1)) > kOrthoTol)
    throw std::invalid_argument("measure_controller: basis is not orthonormal within 1e-12");

  OutcomeEnsemble ens;
  const Ket* kets[2] = {&basis.b0, &basis.b1};
  const std::string* labels[2] = {&basis.label0, &basis.label1};
  for (int k = 0; k < 2; ++k) {
    const auto compressed = detail::controller_compression(joint.mat(), *kets[k]);
    const double prob = trace(compressed).real();
    if (prob < kDegenerateProb) {
      ens.entries.push_back({std::max(prob, 0.0), DensityMatrix<2>::maximally_mixed(), *labels[k], true});
    } else {
      ens.entries.push_back({prob, DensityMatrix<2>(compressed * cplx(1.0 / prob)), *labels[k], false});
    }
  }
  return ens;
}

// Closed forms for p = q, gamma = 1, diagonal input diag(r, 1-r).
//
// Scenario 1: controller |+>, computational control assignment. The joint
// output is lam * rho_minus (x) |-><-| + (1-lam) * rho_plus (x) |+><+| with
//   lam     = (1-p)(p + r - 2 p r)
//   p_minus = p (1-p) (1-r) / lam
//   p_plus  = p (p + r - p r) / (1 - lam)
struct Case1Branches {
  double lam = 0.0;
  double p_minus = 0.0;
  double p_plus = 0.0;
};

inline Case1Branches closed_form_case1(double p, double r) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("closed_form_case1: p outside (0, 1)");
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("closed_form_case1: r outside [0, 1]");
  const double lam = (1.0 - p) * (p + r - 2.0 * p * r);
  if (lam < kDegenerateProb || 1.0 - lam < kDegenerateProb)
    throw std::domain_error("closed_form_case1: degenerate branch (lam is 0 or 1)");
  return {lam, p * (1.0 - p) * (1.0 - r) / lam, p * (p + r - p * r) / (1.0 - lam)};
}

// Scenario 2: controller is the thermal input itself, Hadamard control
// assignment, measurement in the computational basis. The joint output is
// lam * rho_0 (x) |0><0| + (1-lam) * rho_1 (x) |1><1| with
//   lam = (p + 2 r (1-p)) (1 - r + p (2 r - 1))
//   p_0 = p [(1-p)(1 + 2 r^2) + (3 p - 2) r] / lam
//   p_1 = p (1-r) [p + 2 r (1-p)] / (1 - lam)
struct Case2Branches {
  double lam = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
};

inline Case2Branches closed_form_case2(double p, double r) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("closed_form_case2: p outside (0, 1)");
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("closed_form_case2: r outside [0, 1]");
  const double lam = (p + 2.0 * r * (1.0 - p)) * (1.0 - r + p * (2.0 * r - 1.0));
  if (lam < kDegenerateProb || 1.0 - lam < kDegenerateProb)
    throw std::domain_error("closed_form_case2: degenerate branch (lam is 0 or 1)");
  const double p0 = p * ((1.0 - p) * (1.0 + 2.0 * r * r) + (3.0 * p - 2.0) * r) / lam;
  const double p1 = p * (1.0 - r) * (p + 2.0 * r * (1.0 - p)) / (1.0 - lam);
  return {lam, p0, p1};
}

}  // namespace qsthermo
