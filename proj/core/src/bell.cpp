#include "atomq/bell.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace atomq {

namespace {

constexpr double kImagTolerance = 1e-12;
constexpr double kNormTolerance = 1e-9;

void require_normalized(const StateVector& s, const char* what) {
    if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
        throw InvalidInput(std::string(what) + ": state must be normalized");
    }
}

void require_qubit(const HilbertLayout& layout, std::size_t k) {
    if (k >= layout.size()) throw InvalidInput("qubit index out of range");
    if (layout.factors()[k].dim != 2) {
        throw InvalidInput("factor '" + layout.factors()[k].label + "' is not a qubit");
    }
}

double real_expectation(const StateVector& s, const Matrix& op) {
    const Complex v = s.amplitudes().dot(op * s.amplitudes());
    if (std::abs(v.imag()) > kImagTolerance) {
        throw NumericError("expectation of a Hermitian observable has imaginary part " +
                           std::to_string(v.imag()));
    }
    return v.real();
}

Matrix pauli_matrix(char c) {
    switch (c) {
        case 'I': return pauli::identity();
        case 'X': return pauli::x();
        case 'Y': return pauli::y();
        case 'Z': return pauli::z();
        default: throw InvalidInput(std::string("unknown Pauli label '") + c + "'");
    }
}

}  // namespace

AnalyzerSettings AnalyzerSettings::chain(double vartheta) {
    return {.theta1 = vartheta, .theta1p = -vartheta, .theta2 = 0.0, .theta2p = -2.0 * vartheta};
}

Matrix sigma_theta(double theta) {
    return std::cos(theta) * pauli::x() + std::sin(theta) * pauli::y();
}

double correlation(const StateVector& state, std::size_t i, std::size_t j, double theta_i,
                   double theta_j) {
    const HilbertLayout& layout = state.layout();
    require_qubit(layout, i);
    require_qubit(layout, j);
    if (i == j) throw InvalidInput("correlation needs two distinct qubits");
    require_normalized(state, "correlation");
    const Matrix op = embed(sigma_theta(theta_i), layout.factors()[i].label, layout).entries() *
                      embed(sigma_theta(theta_j), layout.factors()[j].label, layout).entries();
    return real_expectation(state, op);
}

BellResult bs_value(const StateVector& state, const AnalyzerSettings& s, std::size_t i,
                    std::size_t j) {
    BellResult r;
    r.correlations = {correlation(state, i, j, s.theta1, s.theta2),
                      correlation(state, i, j, s.theta1, s.theta2p),
                      correlation(state, i, j, s.theta1p, s.theta2),
                      correlation(state, i, j, s.theta1p, s.theta2p)};
    const auto& e = r.correlations;
    r.b_s = e[0] - e[1] + e[2] + e[3];
    r.violated = std::abs(r.b_s) > kBellClassicalBound;
    return r;
}

double bs_reduced(const StateVector& state, double vartheta, std::size_t i, std::size_t j) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int k = 0; k < 20; ++k) {
        const double a = angle(rng);
        const double b = angle(rng);
        const double diff = correlation(state, i, j, a, b) - correlation(state, i, j, a - b, 0.0);
        if (std::abs(diff) > 1e-10) {
            throw InvalidInput("correlation is not a function of the angle difference");
        }
    }
    return std::abs(3.0 * correlation(state, i, j, vartheta, 0.0) -
                    correlation(state, i, j, 3.0 * vartheta, 0.0));
}

std::vector<LandscapeRow> bs_landscape(std::span<const double> omega_t_grid,
                                       std::span<const double> vartheta_grid) {
    if (omega_t_grid.empty() || vartheta_grid.empty()) throw InvalidInput("landscape grids must be non-empty");
    std::vector<LandscapeRow> rows;
    rows.reserve(omega_t_grid.size() * vartheta_grid.size());
    for (double wt : omega_t_grid) {
        const double s = std::sin(wt / 2.0);
        const double weight = s * s;
        for (double v : vartheta_grid) {
            const double e1 = -weight * std::cos(v);
            const double e3 = -weight * std::cos(3.0 * v);
            const double b = std::abs(3.0 * e1 - e3);
            rows.push_back({wt, v, b, b > kBellClassicalBound});
        }
    }
    return rows;
}

StateVector entangled_pair_qubits(Complex alpha) {
    const double a2 = std::norm(alpha);
    if (a2 > 1.0 + 1e-12) throw InvalidInput("|alpha| must not exceed 1");
    const double s = std::sqrt(0.5);
    Vector v = Vector::Zero(4);
    v(0) = std::sqrt(std::max(0.0, 1.0 - a2));
    v(2) = alpha * s;   // |10>
    v(1) = -alpha * s;  // |01>
    return {qubit_layout(2), std::move(v)};
}

StateVector ghz_state(std::size_t n) {
    if (n < 1) throw InvalidInput("GHZ state needs at least one qubit");
    const HilbertLayout layout = qubit_layout(n);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    v(0) = std::sqrt(0.5);
    v(v.size() - 1) = std::sqrt(0.5);
    return {layout, std::move(v)};
}

Complex pauli_expectation(const StateVector& state, std::string_view paulis) {
    const HilbertLayout& layout = state.layout();
    if (paulis.size() != layout.size()) throw InvalidInput("Pauli string length must equal factor count");
    Vector v = state.amplitudes();
    for (std::size_t k = 0; k < paulis.size(); ++k) {
        require_qubit(layout, k);
        if (paulis[k] == 'I') continue;
        v = embed(pauli_matrix(paulis[k]), layout.factors()[k].label, layout).entries() * v;
    }
    return state.amplitudes().dot(v);
}

double mermin_value(const StateVector& state) {
    if (state.layout().size() != 3) throw InvalidInput("Mermin value needs exactly three qubits");
    require_normalized(state, "mermin_value");
    const double f = pauli_expectation(state, "XXX").real() - pauli_expectation(state, "YYX").real() -
                     pauli_expectation(state, "YXY").real() - pauli_expectation(state, "XYY").real();
    return std::abs(f);
}

Matrix mermin_operator(std::size_t n) {
    if (n < 1) throw InvalidInput("Mermin operator needs at least one qubit");
    const Matrix local = pauli::x() + kI * pauli::y();
    Matrix a = local;
    for (std::size_t k = 1; k < n; ++k) {
        Matrix next(a.rows() * 2, a.cols() * 2);
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            for (Eigen::Index c = 0; c < a.cols(); ++c) {
                next.block<2, 2>(2 * r, 2 * c) = a(r, c) * local;
            }
        }
        a = std::move(next);
    }
    return 0.5 * (a + a.adjoint());
}

MerminResult mermin_n(const StateVector& state) {
    const HilbertLayout& layout = state.layout();
    const std::size_t n = layout.size();
    if (n < 3) throw InvalidInput("generalized Mermin value needs N >= 3");
    for (std::size_t k = 0; k < n; ++k) require_qubit(layout, k);
    require_normalized(state, "mermin_n");
    MerminResult r;
    r.value = std::abs(real_expectation(state, mermin_operator(n)));
    r.classical_bound = std::ldexp(1.0, static_cast<int>(n / 2));
    r.quantum_bound = std::ldexp(1.0, static_cast<int>(n - 1));
    r.violated = r.value > r.classical_bound + 1e-12;
    return r;
}

SampleEstimate sample_correlation(const StateVector& state, std::size_t i, std::size_t j,
                                  double theta_i, double theta_j, std::uint64_t shots,
                                  std::uint64_t seed, double readout_error) {
    const HilbertLayout& layout = state.layout();
    require_qubit(layout, i);
    require_qubit(layout, j);
    if (i == j) throw InvalidInput("correlation needs two distinct qubits");
    if (shots < 1) throw InvalidInput("shots must be >= 1");
    if (!(readout_error >= 0.0 && readout_error <= 0.5)) {
        throw InvalidInput("readout error must lie in [0, 0.5]");
    }
    require_normalized(state, "sample_correlation");

    // Joint outcome probabilities; outcome index 0 is +1, 1 is -1.
    const auto eig = [](double theta, int outcome, std::size_t digit) -> Complex {
        if (digit == 0) return std::sqrt(0.5);
        return (outcome == 0 ? 1.0 : -1.0) * std::exp(kI * theta) * std::sqrt(0.5);
    };
    std::array<double, 4> prob{};
    const auto n = layout.total_dim();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Vector rest = Vector::Zero(static_cast<Eigen::Index>(n));
            for (std::size_t k = 0; k < n; ++k) {
                auto d = layout.digits(k);
                const Complex w = std::conj(eig(theta_i, a, d[i])) * std::conj(eig(theta_j, b, d[j]));
                d[i] = 0;
                d[j] = 0;
                rest(static_cast<Eigen::Index>(layout.index(d))) += w * state[k];
            }
            prob[static_cast<std::size_t>(2 * a + b)] = rest.squaredNorm();
        }
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    const std::uint64_t blocks = (shots + kShotBlock - 1) / kShotBlock;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        std::mt19937_64 rng(seed + blk);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const std::uint64_t count = std::min(kShotBlock, shots - blk * kShotBlock);
        for (std::uint64_t s = 0; s < count; ++s) {
            const double u = uniform(rng);
            std::size_t outcome = 0;
            double acc = prob[0];
            while (outcome < 3 && u >= acc) acc += prob[++outcome];
            int va = (outcome / 2 == 0) ? 1 : -1;
            int vb = (outcome % 2 == 0) ? 1 : -1;
            if (uniform(rng) < readout_error) va = -va;
            if (uniform(rng) < readout_error) vb = -vb;
            const double v = va * vb;
            sum += v;
            sum_sq += v * v;
        }
    }
    const double m = static_cast<double>(shots);
    SampleEstimate est;
    est.estimate = sum / m;
    if (shots > 1) {
        const double var = std::max(0.0, (sum_sq - m * est.estimate * est.estimate) / (m - 1.0));
        est.standard_error = std::sqrt(var / m);
    }
    return est;
}

}  // namespace atomq
