// Minimal tour of the channel layer: both definite orders of GAD and PF pin
// every input to the thermal state tau_p, while the coherently controlled
// switch leaves the conditional outputs off the pin point.
#include <cstdio>

#include "qsthermo/switch.hpp"
#include "qsthermo/thermo.hpp"

using namespace qsthermo;

int main() {
  const double p = 0.8;
  const double r = 0.8;
  const auto gad = gad_channel(p, 1.0);
  const auto pf = pf_channel(p);
  const auto input = tau(r);

  const auto pf_after_gad = apply(compose(pf, gad), input);
  const auto gad_after_pf = apply(compose(gad, pf), input);
  std::printf("input diag(%.2f, %.2f)\n", r, 1 - r);
  std::printf("PF(GAD(rho)) ground population: %.12f\n", pf_after_gad.mat()(0, 0).real());
  std::printf("GAD(PF(rho)) ground population: %.12f\n", gad_after_pf.mat()(0, 0).real());

  const SwitchConfig cfg{computational_assignment(), DensityMatrix<2>(plus_projector()), gad, pf};
  const auto joint = apply_switch(cfg, input);
  const auto outcomes = measure_controller(joint, hadamard_basis());
  for (const auto& o : outcomes.entries)
    std::printf("outcome %-2s p=%.6f ground population %.6f\n", o.label.c_str(), o.probability,
                o.state.mat()(0, 0).real());

  const ThermalBath bath(p);
  std::printf("avg extractable work: %.9f (definite orders: 0)\n", avg_work(outcomes, bath));
  return 0;
}
