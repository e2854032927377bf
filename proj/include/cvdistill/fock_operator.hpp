#pragma once

#include <complex>
#include <Eigen/Dense>

#include "cvdistill/basis.hpp"

namespace cvd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Dense operator on a truncated multimode Fock basis.
///
/// Hermiticity and positivity are checkable predicates, never assumptions:
/// the toolkit routinely manipulates non-Hermitian objects (filtered states).
struct FockOperator {
    BasisSpec basis;
    Matrix mat;

    FockOperator() = default;
    FockOperator(BasisSpec b, Matrix m) : basis(std::move(b)), mat(std::move(m)) {
        if (mat.rows() != basis.dim() || mat.cols() != basis.dim())
            throw dimension_error("FockOperator: matrix size does not match basis");
    }

    static FockOperator zero(const BasisSpec& b) {
        return FockOperator(b, Matrix::Zero(b.dim(), b.dim()));
    }
    static FockOperator identity(const BasisSpec& b) {
        return FockOperator(b, Matrix::Identity(b.dim(), b.dim()));
    }

    int dim() const { return static_cast<int>(mat.rows()); }
    Complex trace() const { return mat.trace(); }
    FockOperator adjoint() const { return {basis, mat.adjoint()}; }

    FockOperator operator*(const FockOperator& o) const {
        if (basis != o.basis) throw dimension_error("FockOperator: basis mismatch in product");
        return {basis, mat * o.mat};
    }
    FockOperator operator+(const FockOperator& o) const {
        if (basis != o.basis) throw dimension_error("FockOperator: basis mismatch in sum");
        return {basis, mat + o.mat};
    }
    FockOperator operator-(const FockOperator& o) const {
        if (basis != o.basis) throw dimension_error("FockOperator: basis mismatch in difference");
        return {basis, mat - o.mat};
    }
    friend FockOperator operator*(Complex c, const FockOperator& o) { return {o.basis, c * o.mat}; }

    double hermiticity_defect() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
    bool is_hermitian(double tol = 1e-10) const { return hermiticity_defect() <= tol; }

    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es((mat + mat.adjoint()) / 2.0);
        return es.eigenvalues().minCoeff();
    }

    /// Same operator scaled to unit trace.
    FockOperator normalized(double tol = 1e-14) const {
        Complex t = trace();
        if (std::abs(t) < tol) throw numerical_error("FockOperator::normalized: trace is zero");
        return {basis, mat / t};
    }
};

} // namespace cvd
