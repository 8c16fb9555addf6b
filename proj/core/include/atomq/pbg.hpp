#pragma once

#include "atomq/qstate.hpp"

namespace atomq {

/// Two atoms crossing a resonant defect mode one after the other.
struct TransitPlan {
    double g = 1.0;
    double t1 = 0.0;  // atom-1 interaction time
    double t2 = 0.0;  // atom-2 interaction time
    double mode_loss = 0.0;  // optional defect-mode amplitude decay, 0 inside an ideal gap

    void validate() const;
};

struct JcAmplitudes {
    Complex excited;  // c_e: |e>|0>
    Complex ground;   // c_g: |g>|1>
};

/// Vacuum Rabi solution starting from |e>|0> with coupling
/// i g (b sigma+ - h.c.): c_e = cos(g t), c_g = -sin(g t) when lossless.
/// A non-zero mode_loss damps the |g>|1> amplitude as -i mode_loss b^dagger b.
JcAmplitudes jc_amplitudes(double g, double t, double mode_loss = 0.0);

/// atom1 (x) atom2 (x) mode, each of dimension 2; atom index 0 = g, 1 = e.
HilbertLayout pbg_layout();

/// c_e(t1)|e g 0> + c_g(t1) c_e(t2)|g g 1> + c_g(t1) c_g(t2)|g e 0>.
StateVector pbg_final_state(const TransitPlan& plan);

/// Sequential Jaynes-Cummings evolution of the same passage, atom 1 then
/// atom 2, independent of the amplitude product formula above. The two agree
/// except for the sign of the |g e 0> term, which the reverse (photon to
/// atom 2) transfer carries as +sin(g t2) rather than c_g(t2) = -sin(g t2).
StateVector pbg_simulated_state(const TransitPlan& plan);

/// (|e g> + |g e>)/sqrt(2) (x) |0>.
StateVector pbg_bell_target();

/// Fidelity of pbg_final_state(plan) to pbg_bell_target().
double pbg_bell_fidelity(const TransitPlan& plan);

/// g t1 = pi/4, g t2 = pi/2.
TransitPlan pbg_optimal_times(double g);

}  // namespace atomq
