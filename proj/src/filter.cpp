#include "cvdistill/filter.hpp"

#include <cmath>

namespace cvd {

RealMatrix FilterSpec::gamma_pi() const {
    if (identity)
        throw numerical_error("FilterSpec::gamma_pi: the identity filter has no finite covariance");
    RealMatrix g = RealMatrix::Zero(2 * mode_count, 2 * mode_count);
    for (int j = 0; j < mode_count; ++j) {
        g(2 * j, 2 * j) = 1.0 / delta[j];
        g(2 * j + 1, 2 * j + 1) = 1.0 / delta[j];
    }
    return g;
}

double FilterSpec::weight(int mode, int n) const {
    if (mode < 0 || mode >= mode_count) throw dimension_error("FilterSpec::weight: mode out of range");
    if (identity) return 1.0;
    if (n == 0) return 1.0;  // q^0, including q = 0
    return std::pow(q[mode], n);
}

FilterSpec filter_from_delta(const std::vector<double>& delta) {
    FilterSpec spec;
    spec.mode_count = static_cast<int>(delta.size());
    if (spec.mode_count < 1) throw dimension_error("filter_from_delta: need at least one mode");
    spec.delta = delta;
    spec.q.resize(delta.size());
    for (size_t j = 0; j < delta.size(); ++j) {
        if (!(delta[j] > 0.0 && delta[j] <= 1.0))
            throw dimension_error("filter_from_delta: Delta must lie in (0, 1]");
        spec.q[j] = (1.0 - delta[j]) / (1.0 + delta[j]);
    }
    return spec;
}

FilterSpec filter_from_delta(double delta, int modes) {
    return filter_from_delta(std::vector<double>(modes, delta));
}

FilterSpec filter_identity(int modes) {
    if (modes < 1) throw dimension_error("filter_identity: need at least one mode");
    FilterSpec spec;
    spec.mode_count = modes;
    spec.identity = true;
    spec.q.assign(modes, 1.0);
    return spec;
}

FockOperator filter_fock(const FilterSpec& spec, const BasisSpec& basis) {
    if (basis.modes() != spec.modes()) throw dimension_error("filter_fock: mode count mismatch");
    const int n = basis.dim();
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> idx = basis.unflatten(i);
        double w = 1.0;
        for (int j = 0; j < basis.modes(); ++j) w *= spec.weight(j, idx[j]);
        m(i, i) = w;
    }
    return {basis, m};
}

FockOperator filter_inverse_fock(const FilterSpec& spec, const BasisSpec& basis) {
    if (basis.modes() != spec.modes()) throw dimension_error("filter_inverse_fock: mode count mismatch");
    for (int j = 0; j < spec.modes(); ++j)
        if (!spec.identity && spec.q[j] == 0.0 && basis.dims[j] > 1)
            throw numerical_error("filter_inverse_fock: the vacuum projector has no inverse beyond the vacuum component");
    const int n = basis.dim();
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> idx = basis.unflatten(i);
        double w = 1.0;
        for (int j = 0; j < basis.modes(); ++j) w *= spec.weight(j, idx[j]);
        m(i, i) = 1.0 / w;
    }
    return {basis, m};
}

SigmaResult sigma_of(const FockOperator& rho, const FilterSpec& spec, double accept_tol) {
    FockOperator pi = filter_fock(spec, rho.basis);
    FockOperator prod = rho * pi;
    Complex acc = prod.trace();
    if (std::abs(acc) < accept_tol)
        throw numerical_error("sigma_of: vanishing acceptance, state is orthogonal to the filter support");
    return {FockOperator(rho.basis, prod.mat / acc), acc.real()};
}

} // namespace cvd
