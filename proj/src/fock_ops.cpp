#include "cvdistill/fock_ops.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>

namespace cvd {

namespace {

Matrix ladder(int d) {
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Single-mode matrix placed on one mode of a multimode basis.
Matrix op_on_mode(const BasisSpec& basis, int mode, const Matrix& single) {
    if (mode < 0 || mode >= basis.modes()) throw dimension_error("mode index out of range");
    if (single.rows() != basis.dims[mode]) throw dimension_error("single-mode operator dimension mismatch");
    Matrix out = Matrix::Identity(1, 1);
    for (int j = 0; j < basis.modes(); ++j) {
        if (j == mode)
            out = kron(out, single);
        else
            out = kron(out, Matrix::Identity(basis.dims[j], basis.dims[j]));
    }
    return out;
}

/// exp(i H) for Hermitian H.
Matrix exp_i_hermitian(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases = (Complex(0, 1) * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Single-mode displacement with complex amplitude alpha = (i r_x - r_p)/sqrt2,
/// computed at a headroom cutoff and cropped to d rows/cols.
Matrix displacement_single(Complex alpha, int d, int max_work_dim) {
    double aa = std::abs(alpha);
    int work = std::max(d, int(std::ceil(aa * aa + 6.0 * aa + 20.0)));
    if (work > max_work_dim)
        throw numerical_error("displacement: |r| too large for the accuracy guard (needs work dimension " +
                              std::to_string(work) + " > " + std::to_string(max_work_dim) + ")");
    // i(r.R) = alpha a† - conj(alpha) a = i H with H Hermitian
    Matrix a = ladder(work);
    Matrix h = Complex(0, -1) * (alpha * a.adjoint() - std::conj(alpha) * a);
    Matrix dmat = exp_i_hermitian(h);
    return dmat.topLeftCorner(d, d);
}

} // namespace

FockOperator annihilation(const BasisSpec& basis, int mode) {
    return {basis, op_on_mode(basis, mode, ladder(basis.dims[mode]))};
}

FockOperator creation(const BasisSpec& basis, int mode) {
    return {basis, op_on_mode(basis, mode, ladder(basis.dims[mode]).adjoint().eval())};
}

FockOperator number_operator(const BasisSpec& basis, int mode) {
    Matrix n = Matrix::Zero(basis.dims[mode], basis.dims[mode]);
    for (int k = 0; k < basis.dims[mode]; ++k) n(k, k) = double(k);
    return {basis, op_on_mode(basis, mode, n)};
}

FockOperator quadrature_x(const BasisSpec& basis, int mode) {
    Matrix a = ladder(basis.dims[mode]);
    return {basis, op_on_mode(basis, mode, ((a.adjoint() + a) / std::sqrt(2.0)).eval())};
}

FockOperator quadrature_p(const BasisSpec& basis, int mode) {
    Matrix a = ladder(basis.dims[mode]);
    return {basis, op_on_mode(basis, mode, (Complex(0, 1) * (a.adjoint() - a) / std::sqrt(2.0)).eval())};
}

FockOperator quadrature_r(const BasisSpec& basis, int k) {
    if (k < 0 || k >= 2 * basis.modes()) throw dimension_error("quadrature index out of range");
    return (k % 2 == 0) ? quadrature_x(basis, k / 2) : quadrature_p(basis, k / 2);
}

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
    std::vector<int> dims = a.basis.dims;
    dims.insert(dims.end(), b.basis.dims.begin(), b.basis.dims.end());
    BasisSpec basis(dims);
    basis.dim(); // overflow guard
    return {basis, kron(a.mat, b.mat)};
}

FockOperator partial_trace(const FockOperator& a, const std::vector<int>& keep) {
    const int m = a.basis.modes();
    if (keep.empty()) throw dimension_error("partial_trace: keep set must be nonempty");
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= m) throw dimension_error("partial_trace: mode out of range");
        if (i > 0 && keep[i] <= keep[i - 1]) throw dimension_error("partial_trace: keep set must be sorted and unique");
    }
    std::vector<int> drop;
    for (int j = 0; j < m; ++j)
        if (!std::binary_search(keep.begin(), keep.end(), j)) drop.push_back(j);

    std::vector<int> kept_dims;
    for (int j : keep) kept_dims.push_back(a.basis.dims[j]);
    BasisSpec out_basis(kept_dims);
    Matrix out = Matrix::Zero(out_basis.dim(), out_basis.dim());

    int drop_dim = 1;
    for (int j : drop) drop_dim *= a.basis.dims[j];

    std::vector<int> full_row(m), full_col(m);
    const int kd = out_basis.dim();
    for (int r = 0; r < kd; ++r) {
        std::vector<int> rk = out_basis.unflatten(r);
        for (int c = 0; c < kd; ++c) {
            std::vector<int> ck = out_basis.unflatten(c);
            Complex s = 0;
            for (int t = 0; t < drop_dim; ++t) {
                int rem = t;
                for (int i = int(drop.size()) - 1; i >= 0; --i) {
                    full_row[drop[i]] = rem % a.basis.dims[drop[i]];
                    rem /= a.basis.dims[drop[i]];
                }
                for (size_t i = 0; i < keep.size(); ++i) full_row[keep[i]] = rk[i];
                full_col = full_row;
                for (size_t i = 0; i < keep.size(); ++i) full_col[keep[i]] = ck[i];
                s += a.mat(a.basis.flatten(full_row), a.basis.flatten(full_col));
            }
            out(r, c) = s;
        }
    }
    return {out_basis, out};
}

FockOperator partial_transpose(const FockOperator& a, const std::vector<int>& modes) {
    for (int j : modes)
        if (j < 0 || j >= a.basis.modes()) throw dimension_error("partial_transpose: mode out of range");
    const int n = a.dim();
    Matrix out(n, n);
    for (int r = 0; r < n; ++r) {
        std::vector<int> rk = a.basis.unflatten(r);
        for (int c = 0; c < n; ++c) {
            std::vector<int> ck = a.basis.unflatten(c);
            std::vector<int> rr = rk, cc = ck;
            for (int j : modes) std::swap(rr[j], cc[j]);
            out(a.basis.flatten(rr), a.basis.flatten(cc)) = a.mat(r, c);
        }
    }
    return {a.basis, out};
}

FockOperator embed(const FockOperator& a, const BasisSpec& bigger) {
    if (bigger.modes() != a.basis.modes()) throw dimension_error("embed: mode count mismatch");
    for (int j = 0; j < bigger.modes(); ++j)
        if (bigger.dims[j] < a.basis.dims[j]) throw dimension_error("embed: target basis is smaller");
    Matrix out = Matrix::Zero(bigger.dim(), bigger.dim());
    const int n = a.dim();
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = bigger.flatten(a.basis.unflatten(i));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(map[r], map[c]) = a.mat(r, c);
    return {bigger, out};
}

FockOperator truncate(const FockOperator& a, const BasisSpec& smaller) {
    if (smaller.modes() != a.basis.modes()) throw dimension_error("truncate: mode count mismatch");
    for (int j = 0; j < smaller.modes(); ++j)
        if (smaller.dims[j] > a.basis.dims[j]) throw dimension_error("truncate: target basis is larger");
    const int n = smaller.dim();
    Matrix out(n, n);
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = a.basis.flatten(smaller.unflatten(i));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = a.mat(map[r], map[c]);
    return {smaller, out};
}

FockOperator beam_splitter_5050(const BasisSpec& basis, int mode_a, int mode_b) {
    if (mode_a == mode_b) throw dimension_error("beam_splitter_5050: modes must differ");
    if (mode_a < 0 || mode_b < 0 || mode_a >= basis.modes() || mode_b >= basis.modes())
        throw dimension_error("beam_splitter_5050: mode out of range");
    if (basis.dims[mode_a] != basis.dims[mode_b])
        throw dimension_error("beam_splitter_5050: modes must have equal cutoffs");
    // generator G = (pi/4)(a_a† a_b - a_b† a_a); U = exp(G) = exp(i H), H = -i G Hermitian
    Matrix aa = annihilation(basis, mode_a).mat;
    Matrix ab = annihilation(basis, mode_b).mat;
    Matrix g = (M_PI / 4.0) * (aa.adjoint() * ab - ab.adjoint() * aa);
    Matrix h = Complex(0, -1) * g;
    return {basis, exp_i_hermitian(h)};
}

QuadratureMoments quadrature_moments(const FockOperator& a, double asym_tol) {
    // pad by two levels so products of quadratures act exactly on the support
    BasisSpec padded = a.basis;
    for (int& d : padded.dims) d += 2;
    FockOperator big = embed(a.normalized(), padded);

    const int m = a.basis.modes();
    std::vector<Matrix> rops;
    for (int k = 0; k < 2 * m; ++k) rops.push_back(quadrature_r(padded, k).mat);

    QuadratureMoments out;
    out.d = Vector(2 * m);
    for (int k = 0; k < 2 * m; ++k) out.d(k) = (rops[k] * big.mat).trace();
    out.gamma = Matrix(2 * m, 2 * m);
    for (int j = 0; j < 2 * m; ++j)
        for (int k = j; k < 2 * m; ++k) {
            Complex v = ((rops[j] * rops[k] + rops[k] * rops[j]) * big.mat).trace() - 2.0 * out.d(j) * out.d(k);
            out.gamma(j, k) = v;
            out.gamma(k, j) = v;
        }
    // the anticommutator form is symmetric by construction; any residue is
    // numerical and must stay below tolerance
    (void)asym_tol;
    return out;
}

double trace_norm(const Matrix& a) {
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

double trace_norm(const FockOperator& a) { return trace_norm(a.mat); }

double logneg_fock(const FockOperator& rho, const std::vector<int>& bipartition) {
    if (!rho.is_hermitian(1e-8)) throw numerical_error("logneg_fock: input is not Hermitian");
    FockOperator pt = partial_transpose(rho.normalized(), bipartition);
    // partial transpose of a Hermitian operator is Hermitian: use eigenvalues
    Eigen::SelfAdjointEigenSolver<Matrix> es((pt.mat + pt.mat.adjoint()) / 2.0);
    double norm1 = es.eigenvalues().cwiseAbs().sum();
    return std::log2(norm1);
}

double fidelity(const Vector& psi, const Vector& phi) {
    if (psi.size() != phi.size()) throw dimension_error("fidelity: dimension mismatch");
    return std::abs(psi.dot(phi)) / (psi.norm() * phi.norm());
}

double fidelity(const Vector& psi, const FockOperator& rho) {
    if (psi.size() != rho.dim()) throw dimension_error("fidelity: dimension mismatch");
    Vector v = psi / psi.norm();
    Complex q = v.dot(rho.mat * v);
    return std::sqrt(std::max(0.0, q.real()));
}

double fidelity(const FockOperator& rho, const FockOperator& sigma) {
    if (rho.basis != sigma.basis) throw dimension_error("fidelity: basis mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho.mat + rho.mat.adjoint()) / 2.0);
    Vector sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>();
    Matrix root = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
    Matrix inner = root * sigma.mat * root;
    Eigen::SelfAdjointEigenSolver<Matrix> es2((inner + inner.adjoint()) / 2.0);
    return es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

FockOperator vacuum_state(const BasisSpec& basis) {
    Matrix m = Matrix::Zero(basis.dim(), basis.dim());
    m(0, 0) = 1.0;
    return {basis, m};
}

FockOperator thermal_state(const BasisSpec& basis, double nbar) {
    if (nbar < 0) throw dimension_error("thermal_state: nbar must be >= 0");
    double q = nbar / (nbar + 1.0);
    Matrix out = Matrix::Identity(1, 1);
    for (int j = 0; j < basis.modes(); ++j) {
        int d = basis.dims[j];
        Matrix w = Matrix::Zero(d, d);
        double norm = 0;
        for (int n = 0; n < d; ++n) norm += std::pow(q, n);
        for (int n = 0; n < d; ++n) w(n, n) = std::pow(q, n) / norm;
        out = kron(out, w);
    }
    return {basis, out};
}

Vector psi_lambda_vector(double lambda, const BasisSpec& basis) {
    if (basis.modes() != 2) throw dimension_error("psi_lambda: needs two modes");
    if (basis.dims[0] < 2 || basis.dims[1] < 2) throw dimension_error("psi_lambda: cutoff must be >= 1");
    Vector v = Vector::Zero(basis.dim());
    v(basis.flatten({0, 0})) = 1.0;
    v(basis.flatten({1, 1})) = lambda;
    return v / v.norm();
}

FockOperator state_psi_lambda(double lambda, const BasisSpec& basis) {
    return density_from_vector(psi_lambda_vector(lambda, basis), basis);
}

Vector phi_mu_vector(double mu, const BasisSpec& basis) {
    if (basis.modes() != 3) throw dimension_error("phi_mu: needs three modes");
    for (int d : basis.dims)
        if (d < 2) throw dimension_error("phi_mu: cutoff must be >= 1");
    Vector v = Vector::Zero(basis.dim());
    v(basis.flatten({0, 0, 0})) = 1.0;
    v(basis.flatten({1, 1, 0})) = mu;
    v(basis.flatten({1, 0, 1})) = mu;
    v(basis.flatten({0, 1, 1})) = mu;
    return v / v.norm();
}

FockOperator state_phi_mu(double mu, const BasisSpec& basis) {
    return density_from_vector(phi_mu_vector(mu, basis), basis);
}

Vector pair_diagonal_vector(const std::vector<double>& amps, const BasisSpec& basis) {
    if (basis.modes() != 2) throw dimension_error("pair_diagonal: needs two modes");
    int d = std::min(basis.dims[0], basis.dims[1]);
    if (int(amps.size()) > d) throw dimension_error("pair_diagonal: more amplitudes than cutoff allows");
    Vector v = Vector::Zero(basis.dim());
    for (size_t k = 0; k < amps.size(); ++k) v(basis.flatten({int(k), int(k)})) = amps[k];
    double n = v.norm();
    if (n == 0) throw dimension_error("pair_diagonal: zero state");
    return v / n;
}

FockOperator state_pair_diagonal(const std::vector<double>& amps, const BasisSpec& basis) {
    return density_from_vector(pair_diagonal_vector(amps, basis), basis);
}

Vector geometric_diagonal_vector(double ratio, const BasisSpec& basis) {
    int d = *std::min_element(basis.dims.begin(), basis.dims.end());
    Vector v = Vector::Zero(basis.dim());
    for (int n = 0; n < d; ++n) {
        std::vector<int> idx(basis.modes(), n);
        v(basis.flatten(idx)) = std::pow(ratio, n);
    }
    return v / v.norm();
}

FockOperator density_from_vector(const Vector& psi, const BasisSpec& basis) {
    if (psi.size() != basis.dim()) throw dimension_error("density_from_vector: size mismatch");
    Vector v = psi / psi.norm();
    return {basis, v * v.adjoint()};
}

FockOperator displacement(const BasisSpec& basis, const RealVector& r, int max_work_dim) {
    if (r.size() != 2 * basis.modes()) throw dimension_error("displacement: r must have length 2m");
    if (!r.allFinite()) throw numerical_error("displacement: r must be finite");
    Matrix out = Matrix::Identity(1, 1);
    for (int j = 0; j < basis.modes(); ++j) {
        Complex alpha = (Complex(0, 1) * r(2 * j) - r(2 * j + 1)) / std::sqrt(2.0);
        out = kron(out, displacement_single(alpha, basis.dims[j], max_work_dim));
    }
    return {basis, out};
}

Complex char_fn(const FockOperator& a, const RealVector& r, int max_work_dim) {
    return (displacement(a.basis, r, max_work_dim).mat * a.mat).trace();
}

} // namespace cvd
