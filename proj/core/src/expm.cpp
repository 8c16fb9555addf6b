#include "atomq/expm.hpp"

#include <array>
#include <cmath>

namespace atomq {

namespace {

constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

/// Odd/even split of the Pade numerator for degrees 7 and 9.
template <std::size_t N>
void pade_low(const Matrix& a, const std::array<double, N>& b, Matrix& u, Matrix& v) {
    const auto n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix power = id;
    Matrix odd = b[1] * id;
    Matrix even = b[0] * id;
    for (std::size_t k = 2; k + 1 < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        odd += b[k + 1] * power;
    }
    u = a * odd;
    v = even;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
    const auto& b = kPade13;
    const auto n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
    u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Matrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

Matrix matrix_exponential(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidInput("matrix exponential needs a square matrix");
    if (a.size() == 0) return a;
    if (!a.allFinite()) throw NumericError("matrix exponential of non-finite matrix");

    const double norm = one_norm(a);
    Matrix u;
    Matrix v;
    int squarings = 0;
    if (norm <= kTheta7) {
        pade_low(a, kPade7, u, v);
    } else if (norm <= kTheta9) {
        pade_low(a, kPade9, u, v);
    } else {
        if (norm > kTheta13) {
            squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
        }
        pade13(a / std::ldexp(1.0, squarings), u, v);
    }
    Matrix result = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) result = result * result;
    if (!result.allFinite()) throw NumericError("matrix exponential overflowed");
    return result;
}

}  // namespace atomq
