#include "floqa/linalg.hpp"

#include <cstdio>

#include <Eigen/Eigenvalues>

namespace floqa {

std::string format_g17(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

double hermiticity_defect(const Matrix& M) {
    return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& U) {
    Matrix d = U.adjoint() * U;
    d -= Matrix::Identity(U.rows(), U.cols());
    return d.cwiseAbs().maxCoeff();
}

Matrix hermitian_generator_exp(const Matrix& G) {
    const auto n = G.rows();
    if (n == 2) {
        // Pauli decomposition: G = a I + d sz + Re(c) sx - Im(c) sy.
        const double a = 0.5 * (G(0, 0).real() + G(1, 1).real());
        const double d = 0.5 * (G(0, 0).real() - G(1, 1).real());
        const Complex c = G(0, 1);
        const double b = std::sqrt(d * d + std::norm(c));
        const Complex phase = std::exp(Complex(0.0, -a));
        Matrix U(2, 2);
        if (b < 1e-300) {
            U << phase, 0.0, 0.0, phase;
            return U;
        }
        const double cb = std::cos(b);
        const Complex f = Complex(0.0, -std::sin(b) / b);
        U(0, 0) = phase * (cb + f * d);
        U(0, 1) = phase * (f * c);
        U(1, 0) = phase * (f * std::conj(c));
        U(1, 1) = phase * (cb - f * d);
        return U;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(G);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("hermitian_generator_exp: eigensolver failed");
    }
    Vector ph(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        ph(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
    }
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryEigensystem unitary_eigensystem(const Matrix& U) {
    const auto n = U.rows();
    // Simultaneous diagonalization of the commuting Hermitian pair
    // A = (U + U^dag)/2, B = (U - U^dag)/2i: diagonalize A, then resolve
    // clusters of its spectrum with B restricted to the cluster subspace.
    Matrix A = 0.5 * (U + U.adjoint());
    Matrix B = (U - U.adjoint()) / Complex(0.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Matrix> esA(A);
    if (esA.info() != Eigen::Success) {
        throw NumericalFailure("unitary_eigensystem: eigensolver failed");
    }
    Matrix V = esA.eigenvectors();
    const auto& evA = esA.eigenvalues();
    const double tol = 1e-8 * std::max(1.0, evA.cwiseAbs().maxCoeff());
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i + 1;
        while (j < n && evA(j) - evA(j - 1) < tol) ++j;
        if (j - i > 1) {
            Matrix Vc = V.middleCols(i, j - i);
            Matrix Bc = Vc.adjoint() * B * Vc;
            Eigen::SelfAdjointEigenSolver<Matrix> esB(0.5 * (Bc + Bc.adjoint()));
            if (esB.info() != Eigen::Success) {
                throw NumericalFailure("unitary_eigensystem: cluster eigensolver failed");
            }
            V.middleCols(i, j - i) = Vc * esB.eigenvectors();
        }
        i = j;
    }
    UnitaryEigensystem out;
    out.eigenvectors = V;
    out.eigenvalues = Vector(n);
    out.residual = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Vector v = V.col(k);
        const Complex lam = v.dot(U * v);  // Rayleigh quotient; exact for eigenvectors
        out.eigenvalues(k) = lam;
        out.residual = std::max(out.residual, (U * v - lam * v).cwiseAbs().maxCoeff());
    }
    return out;
}

Matrix unitary_power(const UnitaryEigensystem& es, long long n) {
    const auto dim = es.eigenvalues.size();
    Vector ph(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double arg = std::arg(es.eigenvalues(i));
        ph(i) = std::polar(1.0, arg * static_cast<double>(n));
    }
    return es.eigenvectors * ph.asDiagonal() * es.eigenvectors.adjoint();
}

}  // namespace floqa
