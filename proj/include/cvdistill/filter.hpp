#pragma once

#include <vector>

#include "cvdistill/fock_operator.hpp"
#include "cvdistill/gaussian.hpp"

namespace cvd {

/// The Delta-parameterized separable Gaussian filter family.
///
/// Per mode: Gamma_Pi = Delta^{-1} on both quadratures, and the Fock
/// representation is diagonal with weights q^n, q = (1-Delta)/(1+Delta)
/// (thermal form, so its Gaussian unitary is the identity).  Delta = 1 is the
/// vacuum projector; the identity filter (no measurement) is the Delta -> 0
/// limit and carries its own flag.  Normalization: the maximum diagonal entry
/// is 1, so tr(rho Pi) reads directly as a per-round success probability.
struct FilterSpec {
    std::vector<double> delta;  ///< per mode, in (0, 1]; empty when identity
    std::vector<double> q;      ///< per mode, q = (1-Delta)/(1+Delta)
    bool identity = false;      ///< no-measurement limit (q = 1 on every mode)
    int mode_count = 0;

    int modes() const { return mode_count; }

    /// Gamma_Pi = diag(1/Delta_j) on (X_j, P_j); undefined for the identity filter.
    RealMatrix gamma_pi() const;

    /// Fock weight of photon number n on the given mode.
    double weight(int mode, int n) const;
};

/// Uniform Delta on m modes.
FilterSpec filter_from_delta(double delta, int modes);
/// Heterogeneous per-mode Delta.
FilterSpec filter_from_delta(const std::vector<double>& delta);
/// The identity (no-measurement) filter.
FilterSpec filter_identity(int modes);

/// Diagonal Fock realization ⊗_j Σ_n q_j^n |n><n| on the given basis.
FockOperator filter_fock(const FilterSpec& spec, const BasisSpec& basis);

/// Diagonal inverse with weights q^{-n}.  For the vacuum projector (q = 0)
/// the inverse exists only on the vacuum component; asking for more errors.
FockOperator filter_inverse_fock(const FilterSpec& spec, const BasisSpec& basis);

/// sigma = rho Pi / tr(rho Pi) and the acceptance probability tr(rho Pi).
struct SigmaResult {
    FockOperator sigma;
    double accept;
};
SigmaResult sigma_of(const FockOperator& rho, const FilterSpec& spec, double accept_tol = 1e-12);

} // namespace cvd
