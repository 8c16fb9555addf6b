#include "atomq/verify/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace atomq::verify {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

namespace {

Vector rk4(const Matrix& h, const Vector& psi, double dt) {
    const auto f = [&](const Vector& v) -> Vector { return -kI * (h * v); };
    const Vector k1 = f(psi);
    const Vector k2 = f(psi + 0.5 * dt * k1);
    const Vector k3 = f(psi + 0.5 * dt * k2);
    const Vector k4 = f(psi + dt * k3);
    return psi + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Vector rk_step_halving(const Matrix& h, const Vector& psi0, double t, double rel_tol) {
    Vector psi = psi0;
    double now = 0.0;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    double dt = std::min(t, 0.1 / scale);
    while (now < t) {
        dt = std::min(dt, t - now);
        const Vector full = rk4(h, psi, dt);
        const Vector half = rk4(h, rk4(h, psi, 0.5 * dt), 0.5 * dt);
        const double err = (full - half).norm() / std::max(psi.norm(), 1e-300);
        if (err > rel_tol && dt > 1e-12) {
            dt *= 0.5;
            continue;
        }
        // Richardson extrapolation of the two RK4 estimates.
        psi = half + (half - full) / 15.0;
        now += dt;
        if (err < rel_tol / 64.0) dt *= 2.0;
    }
    return psi;
}

double lhv_max_chsh() {
    double best = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
        const double a = (mask & 1) ? -1.0 : 1.0;
        const double ap = (mask & 2) ? -1.0 : 1.0;
        const double b = (mask & 4) ? -1.0 : 1.0;
        const double bp = (mask & 8) ? -1.0 : 1.0;
        best = std::max(best, std::abs(a * b - a * bp + ap * b + ap * bp));
    }
    return best;
}

double lhv_max_mermin(std::size_t n) {
    double best = 0.0;
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Complex prod = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double a = (mask >> (2 * k) & 1) ? -1.0 : 1.0;
            const double b = (mask >> (2 * k + 1) & 1) ? -1.0 : 1.0;
            prod *= Complex(a, b);
        }
        best = std::max(best, std::abs(prod.real()));
    }
    return best;
}

StateVector random_state(const HilbertLayout& layout, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vector v(static_cast<Eigen::Index>(layout.total_dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
    v.normalize();
    return {layout, std::move(v)};
}

Matrix random_matrix(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
    return m;
}

}  // namespace atomq::verify
