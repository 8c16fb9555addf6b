#include "atomq/dynamics.hpp"

#include <cmath>
#include <limits>

#include "atomq/expm.hpp"

namespace atomq {

namespace {

bool valid_transition(std::size_t levels, const std::string& t) {
    if (levels == 2) return t == "0-1";
    if (levels == 3) return t == "0-2" || t == "1-2";
    return false;
}

std::size_t excited_level(std::size_t levels) {
    return levels == 2 ? level::two_level_excited : level::lambda_excited;
}

std::size_t cavity_lower_level(std::size_t levels) { return levels == 2 ? 0 : 1; }

std::size_t laser_lower_level(const std::string& transition) {
    return transition.front() == '0' ? 0 : 1;
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::string atom_label(std::size_t atom) { return "atom" + std::to_string(atom + 1); }

void SystemSpec::validate() const {
    if (atom_levels.empty()) throw InvalidInput("system needs at least one atom");
    for (std::size_t lv : atom_levels) {
        if (lv != 2 && lv != 3) throw InvalidInput("atoms must have 2 or 3 levels");
    }
    if (!finite(g) || g <= 0.0) throw InvalidInput("coupling g must be positive");
    if (!finite(kappa) || kappa < 0.0) throw InvalidInput("kappa must be non-negative");
    if (!finite(gamma) || gamma < 0.0) throw InvalidInput("gamma must be non-negative");
    if (n_max < 1) throw InvalidInput("Fock truncation n_max must be >= 1");
    for (const auto& [key, value] : rabi) {
        if (key.atom >= atom_levels.size()) throw InvalidInput("rabi entry for unknown atom");
        if (!valid_transition(atom_levels[key.atom], key.transition)) {
            throw InvalidInput("invalid transition '" + key.transition + "' for " +
                               atom_label(key.atom));
        }
        if (!finite(value.real()) || !finite(value.imag())) {
            throw InvalidInput("rabi frequency must be finite");
        }
    }
}

HilbertLayout SystemSpec::layout() const {
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < atom_levels.size(); ++i) {
        factors.push_back({atom_label(i), atom_levels[i]});
    }
    factors.push_back({kCavityLabel, n_max + 1});
    return compose(std::move(factors));
}

SystemSpec pair_spec(double g, double kappa, double gamma, Complex omega_minus, std::size_t n_max) {
    SystemSpec spec;
    spec.atom_levels = {2, 2};
    spec.g = g;
    spec.kappa = kappa;
    spec.gamma = gamma;
    spec.n_max = n_max;
    spec.rabi[{0, "0-1"}] = omega_minus / std::sqrt(2.0);
    spec.rabi[{1, "0-1"}] = -omega_minus / std::sqrt(2.0);
    spec.validate();
    return spec;
}

SystemSpec lambda_spec(double g, double kappa, double gamma, double omega, std::size_t n_max) {
    SystemSpec spec;
    spec.atom_levels = {3, 3};
    spec.g = g;
    spec.kappa = kappa;
    spec.gamma = gamma;
    spec.n_max = n_max;
    spec.rabi[{0, "1-2"}] = std::sqrt(2.0) * omega;
    spec.rabi[{1, "0-2"}] = std::sqrt(2.0) * omega;
    spec.validate();
    return spec;
}

OperatorMatrix h_cond(const SystemSpec& spec) {
    spec.validate();
    const HilbertLayout layout = spec.layout();
    const std::size_t fock = spec.n_max + 1;
    const OperatorMatrix b = embed(ladder(fock), kCavityLabel, layout);

    Matrix h = Matrix::Zero(static_cast<Eigen::Index>(layout.total_dim()),
                            static_cast<Eigen::Index>(layout.total_dim()));
    for (std::size_t i = 0; i < spec.n_atoms(); ++i) {
        const std::size_t lv = spec.atom_levels[i];
        const std::size_t e = excited_level(lv);
        const std::string label = atom_label(i);

        const Matrix raise = embed(outer(lv, e, cavity_lower_level(lv)), label, layout).entries();
        const Matrix coupling = b.entries() * raise;
        h += kI * spec.g * (coupling - coupling.adjoint());

        h += -kI * spec.gamma * embed(outer(lv, e, e), label, layout).entries();
    }
    for (const auto& [key, omega] : spec.rabi) {
        const std::size_t lv = spec.atom_levels[key.atom];
        const Matrix up = embed(outer(lv, excited_level(lv), laser_lower_level(key.transition)),
                                atom_label(key.atom), layout)
                              .entries();
        h += 0.5 * (omega * up + std::conj(omega) * up.adjoint());
    }
    h += -kI * spec.kappa * (b.entries().adjoint() * b.entries());
    return {layout, std::move(h)};
}

OperatorMatrix h_cond_two_level(const SystemSpec& spec) {
    if (spec.atom_levels != std::vector<std::size_t>{2, 2}) {
        throw InvalidInput("two-level conditional Hamiltonian needs two 2-level atoms");
    }
    return h_cond(spec);
}

OperatorMatrix h_cond_lambda(const SystemSpec& spec) {
    if (spec.atom_levels != std::vector<std::size_t>{3, 3}) {
        throw InvalidInput("lambda conditional Hamiltonian needs two 3-level atoms");
    }
    for (const RabiKey& key : {RabiKey{0, "1-2"}, RabiKey{1, "0-2"}}) {
        if (!spec.rabi.contains(key)) {
            throw InvalidInput("missing rabi entry for " + atom_label(key.atom) + " transition " +
                               key.transition);
        }
    }
    return h_cond(spec);
}

OperatorMatrix interaction_hamiltonian(const SystemSpec& spec) {
    SystemSpec bare = spec;
    bare.rabi.clear();
    bare.gamma = 0.0;
    return h_cond(bare);
}

OperatorMatrix cavity_jump_operator(const SystemSpec& spec) {
    spec.validate();
    const HilbertLayout layout = spec.layout();
    return std::sqrt(2.0 * spec.kappa) * embed(ladder(spec.n_max + 1), kCavityLabel, layout);
}

std::vector<OperatorMatrix> jump_operators(const SystemSpec& spec) {
    spec.validate();
    const HilbertLayout layout = spec.layout();
    std::vector<OperatorMatrix> ops;
    if (spec.kappa > 0.0) ops.push_back(cavity_jump_operator(spec));
    if (spec.gamma > 0.0) {
        for (std::size_t i = 0; i < spec.n_atoms(); ++i) {
            const std::size_t lv = spec.atom_levels[i];
            ops.push_back(std::sqrt(2.0 * spec.gamma) *
                          embed(outer(lv, cavity_lower_level(lv), excited_level(lv)),
                                atom_label(i), layout));
        }
    }
    return ops;
}

Matrix propagator(const OperatorMatrix& h, double t) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidInput("evolution time must be >= 0");
    return matrix_exponential(-kI * t * h.entries());
}

StateVector evolve_no_jump(const OperatorMatrix& h, const StateVector& psi0, double t) {
    require_same_layout(h.layout(), psi0.layout(), "no-jump evolution");
    if (std::abs(psi0.norm_squared() - 1.0) > 1e-9) {
        throw InvalidInput("initial state must be normalized");
    }
    const Matrix u = propagator(h, t);
    return {psi0.layout(), u * psi0.amplitudes()};
}

double no_photon_probability(const OperatorMatrix& h, const StateVector& psi0, double t) {
    return evolve_no_jump(h, psi0, t).norm_squared();
}

std::array<double, 3> RegimeReport::margins() const {
    return {threshold - gamma_over_omega, threshold - omega_kappa_over_g2,
            threshold - omega_over_kappa};
}

RegimeReport check_regime(const SystemSpec& spec, double omega_eff, double threshold) {
    RegimeReport r;
    r.threshold = threshold;
    const double w = std::abs(omega_eff);
    if (w == 0.0) throw InvalidInput("effective Rabi frequency must be non-zero");
    r.gamma_over_omega = spec.gamma / w;
    r.omega_kappa_over_g2 = w * spec.kappa / (spec.g * spec.g);
    r.omega_over_kappa =
        spec.kappa > 0.0 ? w / spec.kappa : std::numeric_limits<double>::infinity();
    r.in_regime = r.gamma_over_omega < threshold && r.omega_kappa_over_g2 < threshold &&
                  r.omega_over_kappa < threshold;
    return r;
}

}  // namespace atomq
