#include "atomq/pbg.hpp"

#include <cmath>
#include <numbers>

#include "atomq/expm.hpp"

namespace atomq {

namespace {

constexpr std::size_t kG = 0;
constexpr std::size_t kE = 1;

void require_time(double t) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidInput("interaction time must be finite and >= 0");
}

/// i g (b sigma+_atom - h.c.) - i loss b^dagger b on pbg_layout().
Matrix jc_hamiltonian(const HilbertLayout& layout, const std::string& atom, double g, double loss) {
    const Matrix b = embed(ladder(2), "mode", layout).entries();
    const Matrix up = embed(outer(2, kE, kG), atom, layout).entries();
    const Matrix c = b * up;
    return kI * g * (c - c.adjoint()) - kI * loss * (b.adjoint() * b);
}

}  // namespace

void TransitPlan::validate() const {
    if (!std::isfinite(g) || g <= 0.0) throw InvalidInput("defect coupling g must be positive");
    require_time(t1);
    require_time(t2);
    if (!std::isfinite(mode_loss) || mode_loss < 0.0) throw InvalidInput("mode loss must be >= 0");
}

JcAmplitudes jc_amplitudes(double g, double t, double mode_loss) {
    if (!std::isfinite(g) || g <= 0.0) throw InvalidInput("coupling g must be positive");
    require_time(t);
    if (mode_loss == 0.0) return {std::cos(g * t), -std::sin(g * t)};
    if (!std::isfinite(mode_loss) || mode_loss < 0.0) throw InvalidInput("mode loss must be >= 0");
    // Single-excitation block in {|e,0>, |g,1>}.
    Matrix h(2, 2);
    h << 0.0, kI * g, -kI * g, -kI * mode_loss;
    const Matrix u = matrix_exponential(-kI * t * h);
    return {u(0, 0), u(1, 0)};
}

HilbertLayout pbg_layout() { return compose({{"atom1", 2}, {"atom2", 2}, {"mode", 2}}); }

StateVector pbg_final_state(const TransitPlan& plan) {
    plan.validate();
    const JcAmplitudes first = jc_amplitudes(plan.g, plan.t1, plan.mode_loss);
    const JcAmplitudes second = jc_amplitudes(plan.g, plan.t2, plan.mode_loss);
    return superpose(pbg_layout(), {{first.excited, {kE, kG, 0}},
                                    {first.ground * second.excited, {kG, kG, 1}},
                                    {first.ground * second.ground, {kG, kE, 0}}});
}

StateVector pbg_simulated_state(const TransitPlan& plan) {
    plan.validate();
    const HilbertLayout layout = pbg_layout();
    const Vector psi0 = basis_state(layout, {kE, kG, 0}).amplitudes();
    const Matrix u1 = matrix_exponential(-kI * plan.t1 * jc_hamiltonian(layout, "atom1", plan.g, plan.mode_loss));
    const Matrix u2 = matrix_exponential(-kI * plan.t2 * jc_hamiltonian(layout, "atom2", plan.g, plan.mode_loss));
    return {layout, u2 * (u1 * psi0)};
}

StateVector pbg_bell_target() {
    const double s = 1.0 / std::sqrt(2.0);
    return superpose(pbg_layout(), {{s, {kE, kG, 0}}, {s, {kG, kE, 0}}});
}

double pbg_bell_fidelity(const TransitPlan& plan) {
    return fidelity(pbg_final_state(plan), pbg_bell_target());
}

TransitPlan pbg_optimal_times(double g) {
    if (!std::isfinite(g) || g <= 0.0) throw InvalidInput("coupling g must be positive");
    return {.g = g, .t1 = std::numbers::pi / (4.0 * g), .t2 = std::numbers::pi / (2.0 * g)};
}

}  // namespace atomq
