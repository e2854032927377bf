#pragma once

#include <vector>

#include "cvdistill/fock_operator.hpp"

namespace cvd {

/// Symplectic form for m modes in (X_1, P_1, ..., X_m, P_m) ordering:
/// block-diagonal with 2x2 blocks [[0,1],[-1,0]].  Sigma^T = -Sigma, Sigma^2 = -1.
RealMatrix symplectic_form(int modes);

/// Gaussian operator in characteristic-function form:
///   chi(r) = scale * exp(i r.d - r^T Gamma r / 4).
/// Gamma is complex symmetric; physical states have real Gamma with
/// Gamma + i Sigma >= 0.
struct GaussianOperator {
    Complex scale{1.0, 0.0};
    Vector d;       ///< length 2m
    Matrix gamma;   ///< 2m x 2m, symmetric

    int modes() const { return static_cast<int>(d.size()) / 2; }
    static GaussianOperator vacuum(int modes);
};

Complex gaussian_char(const GaussianOperator& g, const RealVector& r);

/// Physicality / reality diagnostics of a covariance matrix.
struct PhysicalityReport {
    double min_eigenvalue;   ///< of the Hermitian matrix Re(Gamma) + i Sigma
    double imag_norm;        ///< max |Im Gamma|
    double asymmetry;        ///< max |Gamma - Gamma^T|
    bool physical(double tol = 1e-9) const {
        return min_eigenvalue >= -tol && imag_norm <= tol && asymmetry <= tol;
    }
};
PhysicalityReport physicality_check(const Matrix& gamma, const RealMatrix& sigma);

/// Covariance of the operator product A*B from the factor covariances
/// (zero first moments):
///   Gamma_AB = Gamma_B - (Gamma_B + i Sigma)(Gamma_A + Gamma_B)^{-1}(Gamma_B - i Sigma).
/// Errors when Gamma_A + Gamma_B is numerically singular.
Matrix gaussian_product_cov(const Matrix& gamma_a, const Matrix& gamma_b, const RealMatrix& sigma,
                            double cond_limit = 1e12);

/// Covariance of the convergent state from the filtered-state covariance:
///   Gamma_inf = (Gamma_Pi - i Sigma)(Gamma_Pi - Gamma_sigma)^{-1}(Gamma_Pi + i Sigma) - Gamma_Pi.
///
/// At the vacuum-projector endpoint (Gamma_Pi = 1) the inverse is genuinely
/// singular; there the fixed point is reconstructed as the pure Gaussian
/// whose pair-creation matrix matches the <a_j a_k> moments of Gamma_sigma,
/// and the result is verified by substituting back into the product formula.
/// Throws numerical_error when no fixed point exists for the pair.
Matrix fixed_point_cov(const Matrix& gamma_sigma, const Matrix& gamma_pi, const RealMatrix& sigma,
                       double cond_limit = 1e12);

/// <a_j a_k> moments extracted from a (possibly complex) covariance matrix.
Matrix pair_moment_matrix(const Matrix& gamma);

/// Covariance of the normalized pure Gaussian exp(1/2 a† A a†)|0>;
/// requires spectral radius of A conj(A) < 1.
Matrix pure_gaussian_cov(const Matrix& pair_matrix);

/// Absolute values of the eigenvalues of i Sigma Gamma, deduplicated to m
/// values sorted descending.  Physical Gamma gives all >= 1.
RealVector symplectic_eigenvalues(const Matrix& gamma, const RealMatrix& sigma,
                                  double imag_tol = 1e-8);

/// Log-negativity of a Gaussian state: momentum-sign flip on the bipartition,
/// then sum of max(0, -log2 nu) over the symplectic eigenvalues.
double logneg_gaussian(const Matrix& gamma, const std::vector<int>& bipartition,
                       const RealMatrix& sigma);

/// Normally ordered moment tr((⊗ a_k^{x_k})† (⊗ a_j^{y_j}) G) of a zero-mean
/// Gaussian operator, evaluated by summing over perfect pairings (Wick
/// contractions) of the covariance in creation/annihilation coordinates.
/// Odd total order returns exactly 0; nonzero first moments are rejected.
Complex wick_moments(const GaussianOperator& g, const std::vector<int>& x_vec,
                     const std::vector<int>& y_vec);

} // namespace cvd
