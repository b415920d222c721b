// Thermodynamic quantities against a two-level bath: thermal states, bath
// temperature, von Neumann and Renyi entropies (in bits), free energy and the
// measurement-averaged extractable work.
//
// Units: k_B = 1 and the system Hamiltonian is H = |1><1|, so energies are in
// units of the qubit gap. The free energy is
//   F_p(rho) = Tr(rho H) - T_p * ln2 * S(rho),  T_p = 1 / ln(p / (1-p)),
// with S in bits; the ln2 factor converts the entropy term to gap units.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsthermo/qmat.hpp"
#include "qsthermo/switch.hpp"

namespace qsthermo {

// Sentinel alpha selecting the min-entropy limit -log2(lambda_max).
inline constexpr double kAlphaInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kRankCutoff = 1e-12;

class ThermalBath {
 public:
  // Ground population must sit strictly inside (0.5, 1) so the temperature
  // 1/ln(p/(1-p)) is finite and positive; the endpoints are rejected rather
  // than extrapolated.
  explicit ThermalBath(double ground_population) : p_(ground_population) {
    if (!(p_ > 0.5 && p_ < 1.0))
      throw std::invalid_argument("ThermalBath: ground population outside (0.5, 1)");
    temperature_ = 1.0 / std::log(p_ / (1.0 - p_));
  }

  double p() const { return p_; }
  double temperature() const { return temperature_; }

 private:
  double p_;
  double temperature_;
};

inline ThermalBath bath_from_state(double r) { return ThermalBath(r); }

// diag(p, 1-p)
inline DensityMatrix<2> tau(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("tau: p outside [0, 1]");
  return DensityMatrix<2>(CMat2::diagonal({cplx(p), cplx(1.0 - p)}));
}

inline CMat2 hamiltonian() { return CMat2::diagonal({cplx(0.0), cplx(1.0)}); }

namespace detail {

// Spectrum cleanup before logarithms: Jacobi rounding may leave eigenvalues
// slightly below 0 or above 1.
template <std::size_t N>
std::array<double, N> clipped_spectrum(const DensityMatrix<N>& rho) {
  auto ev = herm_eigvals(rho.mat());
  for (double& l : ev) {
    if (l < 0.0) l = 0.0;
    if (l > 1.0) l = 1.0;
  }
  return ev;
}

}  // namespace detail

template <std::size_t N>
double vn_entropy_bits(const DensityMatrix<N>& rho) {
  double s = 0.0;
  for (double l : detail::clipped_spectrum(rho))
    if (l > 0.0) s -= l * std::log2(l);
  return std::max(s, 0.0);
}

template <std::size_t N>
double renyi_entropy_bits(const DensityMatrix<N>& rho, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("renyi_entropy_bits: alpha must be >= 0");
  if (std::abs(alpha - 1.0) < 1e-6) return vn_entropy_bits(rho);  // removable singularity
  const auto ev = detail::clipped_spectrum(rho);
  if (alpha == kAlphaInfinity) return -std::log2(ev.back());
  if (alpha == 0.0) {
    int rank = 0;
    for (double l : ev)
      if (l > kRankCutoff) ++rank;
    return std::log2(static_cast<double>(rank));
  }
  double sum = 0.0;
  for (double l : ev)
    if (l > 0.0) sum += std::pow(l, alpha);
  return std::log2(sum) / (1.0 - alpha);
}

inline double energy(const DensityMatrix<2>& rho) { return trace(rho.mat() * hamiltonian()).real(); }

inline double free_energy(const DensityMatrix<2>& rho, const ThermalBath& bath) {
  const double s = vn_entropy_bits(rho);
  return energy(rho) - bath.temperature() * std::log(2.0) * s;
}

inline double renyi_free_energy(const DensityMatrix<2>& rho, const ThermalBath& bath, double alpha) {
  return energy(rho) - bath.temperature() * std::log(2.0) * renyi_entropy_bits(rho, alpha);
}

// Probability-weighted free-energy gaps of the post-measurement states
// against the bath's own thermal state. Each gap is nonnegative because
// tau_p minimizes F_p, so the average is too.
inline double avg_work(const OutcomeEnsemble& outcomes, const ThermalBath& bath) {
  const double f_ref = free_energy(tau(bath.p()), bath);
  double w = 0.0;
  for (const auto& o : outcomes.entries) w += o.probability * (free_energy(o.state, bath) - f_ref);
  return w;
}

}  // namespace qsthermo
