#pragma once

#include <vector>

#include "cvdistill/fock_operator.hpp"

namespace cvd {

// --- mode operators ---------------------------------------------------------

/// Lowering operator on one mode, identity elsewhere.
FockOperator annihilation(const BasisSpec& basis, int mode);
FockOperator creation(const BasisSpec& basis, int mode);
FockOperator number_operator(const BasisSpec& basis, int mode);

/// Quadratures X_j = (a† + a)/sqrt2, P_j = i(a† - a)/sqrt2.
FockOperator quadrature_x(const BasisSpec& basis, int mode);
FockOperator quadrature_p(const BasisSpec& basis, int mode);

/// R_k for k = 0..2m-1 in the (X_1, P_1, ..., X_m, P_m) ordering.
FockOperator quadrature_r(const BasisSpec& basis, int k);

// --- structural operations --------------------------------------------------

/// Tensor product on the concatenated basis (A's modes first).
FockOperator tensor(const FockOperator& a, const FockOperator& b);

/// Reduced operator over the kept (sorted, nonempty) mode set; preserves trace.
FockOperator partial_trace(const FockOperator& a, const std::vector<int>& keep);

/// Transpose over the given mode set.
FockOperator partial_transpose(const FockOperator& a, const std::vector<int>& modes);

/// Embed into a larger basis (same mode count, per-mode dims >= current);
/// extra matrix elements are zero.  truncate() is the adjoint restriction.
FockOperator embed(const FockOperator& a, const BasisSpec& bigger);
FockOperator truncate(const FockOperator& a, const BasisSpec& smaller);

// --- gates ------------------------------------------------------------------

/// 50:50 beam splitter between two equal-cutoff modes, built by exponentiating
/// the pair-photon-conserving generator.  Heisenberg action:
///   U a_a U† = (a_a - a_b)/sqrt2,   U a_b U† = (a_a + a_b)/sqrt2.
/// Exact on the subspace with pair photon number below the cutoff.
FockOperator beam_splitter_5050(const BasisSpec& basis, int mode_a, int mode_b);

/// Displacement D(r) = exp(i r . R).  Single-mode factors are produced at a
/// headroom cutoff and cropped, so matrix elements on the stored basis are
/// accurate to ~1e-12; |r| beyond the guard (work dimension > max_work_dim)
/// is rejected.
FockOperator displacement(const BasisSpec& basis, const RealVector& r, int max_work_dim = 256);

/// Characteristic function tr(D(r) A).
Complex char_fn(const FockOperator& a, const RealVector& r, int max_work_dim = 256);

/// Single-mode displacement factor for phase-space point (r_x, r_p).
Matrix displacement_single_mode(double rx, double rp, int dim, int max_work_dim = 256);

// --- moments and measures ---------------------------------------------------

/// First moments d_k = tr(R_k A) and anticommutator second moments
/// Gamma_jk = tr({R_j - d_j, R_k - d_k}+ A) of the unit-trace operator A.
/// Vacuum gives Gamma = identity.  For non-Hermitian A both are complex;
/// Gamma is symmetrized, and an asymmetry above asym_tol is an error.
struct QuadratureMoments {
    Vector d;
    Matrix gamma;
};
QuadratureMoments quadrature_moments(const FockOperator& a, double asym_tol = 1e-8);

/// log2 of the trace norm of the partial transpose over the bipartition.
double logneg_fock(const FockOperator& rho, const std::vector<int>& bipartition);

/// Sum of singular values.
double trace_norm(const FockOperator& a);
double trace_norm(const Matrix& a);

/// |<psi|phi>| for unit vectors.
double fidelity(const Vector& psi, const Vector& phi);
/// sqrt(<psi|rho|psi>) for a unit vector against a density operator.
double fidelity(const Vector& psi, const FockOperator& rho);
/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)) via eigensolvers.
double fidelity(const FockOperator& rho, const FockOperator& sigma);

// --- states -----------------------------------------------------------------

FockOperator vacuum_state(const BasisSpec& basis);

/// Thermal state with mean photon number nbar on every mode.
FockOperator thermal_state(const BasisSpec& basis, double nbar);

/// |Psi_lambda> ∝ |0,0> + lambda |1,1>  (two modes, cutoff >= 1).
Vector psi_lambda_vector(double lambda, const BasisSpec& basis);
FockOperator state_psi_lambda(double lambda, const BasisSpec& basis);

/// |Phi_mu> ∝ |0,0,0> + mu (|1,1,0> + |1,0,1> + |0,1,1>)  (three modes).
Vector phi_mu_vector(double mu, const BasisSpec& basis);
FockOperator state_phi_mu(double mu, const BasisSpec& basis);

/// Two-mode state ∝ Σ_k amps[k] |k,k>.
Vector pair_diagonal_vector(const std::vector<double>& amps, const BasisSpec& basis);
FockOperator state_pair_diagonal(const std::vector<double>& amps, const BasisSpec& basis);

/// m-mode target ∝ Σ_n ratio^n |n,...,n>, normalized on the given basis.
Vector geometric_diagonal_vector(double ratio, const BasisSpec& basis);

FockOperator density_from_vector(const Vector& psi, const BasisSpec& basis);

} // namespace cvd
