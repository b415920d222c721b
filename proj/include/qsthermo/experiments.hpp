// Scenario runners wiring channels + switch + thermo into reproducible
// parameter sweeps, plus the tabular output they hand to the CLI writers.
//
// The four r-sweep scenarios (case1/case2, fixed/varying bath) emit the
// closed-form values, which are exact for p = q, gamma = 1; the full switch
// engine is evaluated alongside at every grid point and the deviations are
// surfaced through RunDiagnostics so callers can enforce them. The general
// sweep has no closed form and records the engine output directly.
#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qsthermo/channels.hpp"
#include "qsthermo/qmat.hpp"
#include "qsthermo/switch.hpp"
#include "qsthermo/thermo.hpp"

namespace qsthermo {

inline constexpr double kTheoremTol = 1e-12;

// One row of a scenario table. lam follows each scenario's own convention:
// case 1 uses the probability of the second outcome ("-"), case 2 the first
// ("0"); the general sweep records the second outcome to match case 1.
// pop0/pop1 are the ground populations of the conditional states in
// measurement-basis order.
struct SweepRecord {
  std::string scenario;
  double r = 0.0, p = 0.0, q = 0.0, gamma = 1.0;
  double lam = 0.0;
  double pop0 = 0.0, pop1 = 0.0;
  double f_switch = 0.0, f_separable = 0.0;
  double w_switch = 0.0, w_separable = 0.0;
  double w_pf_then_gad = 0.0, w_gad_then_pf = 0.0, w_mix_half = 0.0;
  double ctrl_offdiag = 0.0;  // max |entry| of the cross block in the measurement basis
  std::string note;           // empty on clean rows; per-point domain errors land here
};

struct RunDiagnostics {
  double max_closed_engine_dev = 0.0;
  double max_marginal_pinning = 0.0;
  double max_prob_sum_dev = 0.0;
  double min_dominance_slack = std::numeric_limits<double>::infinity();  // w_switch - w_separable
};

inline std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  std::vector<double> out;
  out.reserve(steps);
  if (steps == 1) {
    out.push_back(lo);
    return out;
  }
  for (std::size_t i = 0; i < steps; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
  return out;
}

// Doubles from the top 53 bits of mt19937_64, so streams are identical on
// every platform for a given seed.
inline double canonical_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform over the Bloch ball: cube rejection on (x, y, z).
inline DensityMatrix<2> random_bloch_state(std::mt19937_64& g) {
  double x, y, z;
  do {
    x = 2.0 * canonical_unit(g) - 1.0;
    y = 2.0 * canonical_unit(g) - 1.0;
    z = 2.0 * canonical_unit(g) - 1.0;
  } while (x * x + y * y + z * z > 1.0);
  CMat2 m;
  m(0, 0) = 0.5 * (1.0 + z);
  m(1, 1) = 0.5 * (1.0 - z);
  m(0, 1) = 0.5 * cplx(x, -y);
  m(1, 0) = 0.5 * cplx(x, y);
  return DensityMatrix<2>(m);
}

struct Theorem1Report {
  double p = 0.0, q = 0.0, gamma = 1.0;
  std::vector<double> lambda_grid;
  std::vector<double> max_distance_per_lambda;
  double max_distance = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool theorem_applies = false;  // gamma == 1, where the pin-map argument holds
  bool pass = false;
};

// Max trace distance between apply_separable output and tau_p over seeded
// random input states and the given lambda grid. For gamma < 1 the distances
// are reported as out-of-theorem information and pass is not asserted.
inline Theorem1Report run_theorem1(double p, double q, double gamma,
                                   const std::vector<double>& lambda_grid, std::size_t n_samples,
                                   std::uint64_t seed) {
  const auto gad = gad_channel(p, gamma);
  const auto pf = pf_channel(q);
  std::vector<SeparableMixture> mixes;
  mixes.reserve(lambda_grid.size());
  for (double lam : lambda_grid) mixes.push_back(separable_mixture(lam, gad, pf));

  Theorem1Report rep;
  rep.p = p;
  rep.q = q;
  rep.gamma = gamma;
  rep.lambda_grid = lambda_grid;
  rep.max_distance_per_lambda.assign(lambda_grid.size(), 0.0);
  rep.samples = n_samples;
  rep.seed = seed;
  rep.theorem_applies = gamma == 1.0;

  const auto ref = tau(p);
  std::mt19937_64 g(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto rho = random_bloch_state(g);
    for (std::size_t k = 0; k < mixes.size(); ++k) {
      const double d = trace_distance(apply_separable(mixes[k], rho), ref);
      rep.max_distance_per_lambda[k] = std::max(rep.max_distance_per_lambda[k], d);
      rep.max_distance = std::max(rep.max_distance, d);
    }
  }
  rep.pass = !rep.theorem_applies || rep.max_distance <= kTheoremTol;
  return rep;
}

namespace detail {

// (I (x) <b0|) joint (I (x) |b1>): the controller-off-diagonal block.
inline CMat2 controller_cross_block(const CMat4& joint, const Ket& b0, const Ket& b1) {
  CMat2 c;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          acc += std::conj(b0[k]) * joint(2 * i + k, 2 * j + l) * b1[l];
      c(i, j) = acc;
    }
  return c;
}

inline double ground_population(const DensityMatrix<2>& s) { return s.mat()(0, 0).real(); }

inline void track(RunDiagnostics* diag, double closed_engine_dev, double pinning, double prob_dev,
                  double dominance_slack) {
  if (!diag) return;
  diag->max_closed_engine_dev = std::max(diag->max_closed_engine_dev, closed_engine_dev);
  diag->max_marginal_pinning = std::max(diag->max_marginal_pinning, pinning);
  diag->max_prob_sum_dev = std::max(diag->max_prob_sum_dev, prob_dev);
  diag->min_dominance_slack = std::min(diag->min_dominance_slack, dominance_slack);
}

// Shared engine evaluation for the closed-form scenarios: runs the full
// Kraus pipeline and reports how far it sits from the closed-form ensemble.
struct EngineCheck {
  double dev = 0.0;       // worst |closed - engine| over probabilities and populations
  double pinning = 0.0;   // trace_distance(system marginal, tau(p))
  double prob_dev = 0.0;  // |sum of probabilities - 1|
  double offdiag = 0.0;
};

inline EngineCheck engine_check(const SwitchConfig& cfg, const DensityMatrix<2>& input,
                                const MeasurementBasis& basis, double tau_p,
                                const std::vector<double>& probs, const std::vector<double>& pops) {
  EngineCheck chk;
  const auto joint = apply_switch(cfg, input);
  const auto ens = measure_controller(joint, basis);
  for (std::size_t k = 0; k < ens.entries.size(); ++k) {
    chk.dev = std::max(chk.dev, std::abs(ens.entries[k].probability - probs[k]));
    if (!ens.entries[k].degenerate)
      chk.dev = std::max(chk.dev, std::abs(ground_population(ens.entries[k].state) - pops[k]));
  }
  chk.pinning = trace_distance(DensityMatrix<2>(partial_trace(joint.mat(), Subsystem::system)), tau(tau_p));
  double sum = 0.0;
  for (const auto& o : ens.entries) sum += o.probability;
  chk.prob_dev = std::abs(sum - 1.0);
  chk.offdiag = max_abs(controller_cross_block(joint.mat(), basis.b0, basis.b1));
  return chk;
}

}  // namespace detail

// Case 1 (resourceful |+> controller, computational control assignment,
// measurement in |+>/|->), fixed bath at T_p. Emits the closed-form ensemble
// per r; w_* columns are probability-weighted free-energy gaps.
inline std::vector<SweepRecord> run_case1_fixed_bath(double p, const std::vector<double>& r_grid,
                                                     RunDiagnostics* diag = nullptr) {
  const ThermalBath bath(p);
  const double f_ref = free_energy(tau(p), bath);
  const auto basis = hadamard_basis();
  const SwitchConfig cfg{computational_assignment(), DensityMatrix<2>(plus_projector()),
                         gad_channel(p, 1.0), pf_channel(p)};
  std::vector<SweepRecord> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    const auto c = closed_form_case1(p, r);
    const auto rho_plus = tau(c.p_plus);
    const auto rho_minus = tau(c.p_minus);
    SweepRecord rec;
    rec.scenario = "case1-fixed";
    rec.r = r;
    rec.p = p;
    rec.q = p;
    rec.gamma = 1.0;
    rec.lam = c.lam;
    rec.pop0 = c.p_plus;   // outcome "+" comes first in the basis
    rec.pop1 = c.p_minus;
    rec.f_switch = (1.0 - c.lam) * free_energy(rho_plus, bath) + c.lam * free_energy(rho_minus, bath);
    rec.f_separable = f_ref;  // any separable order pins to tau_p
    rec.w_switch = rec.f_switch - f_ref;
    rec.w_separable = 0.0;
    rec.w_pf_then_gad = 0.0;
    rec.w_gad_then_pf = 0.0;
    rec.w_mix_half = 0.0;

    const auto chk = detail::engine_check(cfg, tau(r), basis, p, {1.0 - c.lam, c.lam},
                                          {c.p_plus, c.p_minus});
    rec.ctrl_offdiag = chk.offdiag;
    detail::track(diag, chk.dev, chk.pinning, chk.prob_dev, rec.w_switch - rec.w_separable);
    out.push_back(std::move(rec));
  }
  return out;
}

// Case 1 against a bath at the input state's own temperature T_r. The
// separable branch still lands on tau_p, so its work is the free-energy gap
// of tau_p against the bath state tau_r. r values are clamped away from the
// endpoints where T_r is undefined or zero.
inline std::vector<SweepRecord> run_case1_varying_bath(double p, const std::vector<double>& r_grid,
                                                       RunDiagnostics* diag = nullptr) {
  const auto basis = hadamard_basis();
  const SwitchConfig cfg{computational_assignment(), DensityMatrix<2>(plus_projector()),
                         gad_channel(p, 1.0), pf_channel(p)};
  std::vector<SweepRecord> out;
  out.reserve(r_grid.size());
  for (double raw_r : r_grid) {
    const double r = std::clamp(raw_r, 0.5 + 1e-6, 1.0 - 1e-6);
    const ThermalBath bath(r);
    const double f_bath = free_energy(tau(r), bath);
    const auto c = closed_form_case1(p, r);
    SweepRecord rec;
    rec.scenario = "case1-varying";
    rec.r = r;
    rec.p = p;
    rec.q = p;
    rec.gamma = 1.0;
    rec.lam = c.lam;
    rec.pop0 = c.p_plus;
    rec.pop1 = c.p_minus;
    rec.f_switch = (1.0 - c.lam) * free_energy(tau(c.p_plus), bath) + c.lam * free_energy(tau(c.p_minus), bath);
    rec.f_separable = free_energy(tau(p), bath);
    rec.w_switch = rec.f_switch - f_bath;
    rec.w_separable = rec.f_separable - f_bath;
    rec.w_pf_then_gad = rec.w_separable;
    rec.w_gad_then_pf = rec.w_separable;
    rec.w_mix_half = rec.w_separable;

    const auto chk = detail::engine_check(cfg, tau(r), basis, p, {1.0 - c.lam, c.lam},
                                          {c.p_plus, c.p_minus});
    rec.ctrl_offdiag = chk.offdiag;
    detail::track(diag, chk.dev, chk.pinning, chk.prob_dev, rec.w_switch - rec.w_separable);
    out.push_back(std::move(rec));
  }
  return out;
}

enum class BathScenario { fixed, varying };

// Case 2 (thermal controller diag(r, 1-r), Hadamard control assignment,
// measurement in the computational basis), with either bath convention.
inline std::vector<SweepRecord> run_case2(double p, const std::vector<double>& r_grid,
                                          BathScenario scenario, RunDiagnostics* diag = nullptr) {
  const auto basis = computational_basis();
  std::vector<SweepRecord> out;
  out.reserve(r_grid.size());
  for (double raw_r : r_grid) {
    const double r = scenario == BathScenario::varying ? std::clamp(raw_r, 0.5 + 1e-6, 1.0 - 1e-6) : raw_r;
    const ThermalBath bath(scenario == BathScenario::fixed ? p : r);
    const double f_bath = free_energy(tau(bath.p()), bath);
    const auto c = closed_form_case2(p, r);
    SweepRecord rec;
    rec.scenario = scenario == BathScenario::fixed ? "case2-fixed" : "case2-varying";
    rec.r = r;
    rec.p = p;
    rec.q = p;
    rec.gamma = 1.0;
    rec.lam = c.lam;  // probability of outcome "0"
    rec.pop0 = c.p0;
    rec.pop1 = c.p1;
    rec.f_switch = c.lam * free_energy(tau(c.p0), bath) + (1.0 - c.lam) * free_energy(tau(c.p1), bath);
    rec.f_separable = free_energy(tau(p), bath);
    rec.w_switch = rec.f_switch - f_bath;
    rec.w_separable = rec.f_separable - f_bath;
    rec.w_pf_then_gad = rec.w_separable;
    rec.w_gad_then_pf = rec.w_separable;
    rec.w_mix_half = rec.w_separable;

    const SwitchConfig cfg{hadamard_assignment(), tau(r), gad_channel(p, 1.0), pf_channel(p)};
    const auto chk = detail::engine_check(cfg, tau(r), basis, p, {c.lam, 1.0 - c.lam}, {c.p0, c.p1});
    rec.ctrl_offdiag = chk.offdiag;
    detail::track(diag, chk.dev, chk.pinning, chk.prob_dev, rec.w_switch - rec.w_separable);
    out.push_back(std::move(rec));
  }
  return out;
}

// Brute-force engine sweep over channel parameters; no closed forms. The
// free-energy columns use the fixed bath at T_p, so p values must lie in
// (0.5, 1); a point whose thermodynamics is undefined is recorded with the
// error in its note instead of aborting the sweep.
inline std::vector<SweepRecord> run_general_sweep(
    const std::vector<double>& p_grid, const std::vector<double>& q_grid,
    const std::vector<double>& gamma_grid, const std::vector<double>& r_grid,
    const ControlAssignment& assignment, const MeasurementBasis& basis,
    const DensityMatrix<2>& controller = DensityMatrix<2>(plus_projector()),
    RunDiagnostics* diag = nullptr) {
  std::vector<SweepRecord> out;
  out.reserve(p_grid.size() * q_grid.size() * gamma_grid.size() * r_grid.size());
  for (double p : p_grid)
    for (double q : q_grid)
      for (double gamma : gamma_grid)
        for (double r : r_grid) {
          SweepRecord rec;
          rec.scenario = "sweep";
          rec.r = r;
          rec.p = p;
          rec.q = q;
          rec.gamma = gamma;
          try {
            const ThermalBath bath(p);
            const double f_bath = free_energy(tau(p), bath);
            const auto gad = gad_channel(p, gamma);
            const auto pf = pf_channel(q);
            const SwitchConfig cfg{assignment, controller, gad, pf};
            const auto input = tau(r);
            const auto joint = apply_switch(cfg, input);
            const auto ens = measure_controller(joint, basis);

            rec.lam = ens.entries[1].probability;
            rec.pop0 = detail::ground_population(ens.entries[0].state);
            rec.pop1 = detail::ground_population(ens.entries[1].state);
            rec.f_switch = 0.0;
            for (const auto& o : ens.entries) rec.f_switch += o.probability * free_energy(o.state, bath);
            rec.w_switch = rec.f_switch - f_bath;
            rec.ctrl_offdiag = max_abs(detail::controller_cross_block(joint.mat(), basis.b0, basis.b1));

            const auto half = apply_separable(separable_mixture(0.5, gad, pf), input);
            rec.f_separable = free_energy(half, bath);
            rec.w_mix_half = rec.f_separable - f_bath;
            rec.w_separable = rec.w_mix_half;
            rec.w_pf_then_gad =
                free_energy(apply(compose(gad, pf), input), bath) - f_bath;
            rec.w_gad_then_pf =
                free_energy(apply(compose(pf, gad), input), bath) - f_bath;

            double sum = 0.0;
            for (const auto& o : ens.entries) sum += o.probability;
            detail::track(diag, 0.0, 0.0, std::abs(sum - 1.0),
                          std::numeric_limits<double>::infinity());
          } catch (const std::exception& e) {
            rec.note = e.what();
          }
          out.push_back(std::move(rec));
        }
  return out;
}

// ---------------------------------------------------------------------------
// Tabular output
// ---------------------------------------------------------------------------

// Shortest round-trip rendering, byte-stable across runs and platforms.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<bool> text_column;  // quoted in JSON output
  std::vector<std::vector<std::string>> rows;
};

inline Table to_table(const std::vector<SweepRecord>& records) {
  Table t;
  t.columns = {"scenario", "r",          "p",           "q",          "gamma",
               "lam",      "pop0",       "pop1",        "f_switch",   "f_separable",
               "w_switch", "w_separable", "w_pf_then_gad", "w_gad_then_pf", "w_mix_half",
               "ctrl_offdiag", "note"};
  t.text_column.assign(t.columns.size(), false);
  t.text_column.front() = true;
  t.text_column.back() = true;
  for (const auto& rec : records) {
    t.rows.push_back({rec.scenario, format_double(rec.r), format_double(rec.p),
                      format_double(rec.q), format_double(rec.gamma), format_double(rec.lam),
                      format_double(rec.pop0), format_double(rec.pop1), format_double(rec.f_switch),
                      format_double(rec.f_separable), format_double(rec.w_switch),
                      format_double(rec.w_separable), format_double(rec.w_pf_then_gad),
                      format_double(rec.w_gad_then_pf), format_double(rec.w_mix_half),
                      format_double(rec.ctrl_offdiag), rec.note});
  }
  return t;
}

inline Table to_table(const Theorem1Report& rep) {
  Table t;
  t.columns = {"lambda", "max_trace_distance"};
  t.text_column = {false, false};
  for (std::size_t k = 0; k < rep.lambda_grid.size(); ++k)
    t.rows.push_back({format_double(rep.lambda_grid[k]), format_double(rep.max_distance_per_lambda[k])});
  return t;
}

}  // namespace qsthermo
