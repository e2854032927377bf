#include "cvdistill/gaussian.hpp"

#include <cmath>
#include <algorithm>

namespace cvd {

RealMatrix symplectic_form(int modes) {
    RealMatrix s = RealMatrix::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        s(2 * j, 2 * j + 1) = 1.0;
        s(2 * j + 1, 2 * j) = -1.0;
    }
    return s;
}

GaussianOperator GaussianOperator::vacuum(int modes) {
    GaussianOperator g;
    g.d = Vector::Zero(2 * modes);
    g.gamma = Matrix::Identity(2 * modes, 2 * modes);
    return g;
}

Complex gaussian_char(const GaussianOperator& g, const RealVector& r) {
    if (r.size() != g.d.size()) throw dimension_error("gaussian_char: r length mismatch");
    Vector rc = r.cast<Complex>();
    // plain bilinear forms, no conjugation
    Complex lin = Complex(0, 1) * (rc.transpose() * g.d)(0, 0);
    Complex quad = -(rc.transpose() * g.gamma * rc)(0, 0) / 4.0;
    return g.scale * std::exp(lin + quad);
}

PhysicalityReport physicality_check(const Matrix& gamma, const RealMatrix& sigma) {
    if (gamma.rows() != gamma.cols() || gamma.rows() != sigma.rows())
        throw dimension_error("physicality_check: size mismatch");
    PhysicalityReport rep;
    rep.imag_norm = gamma.imag().cwiseAbs().maxCoeff();
    rep.asymmetry = (gamma - gamma.transpose()).cwiseAbs().maxCoeff();
    Matrix h = gamma.real().cast<Complex>() + Complex(0, 1) * sigma.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    return rep;
}

namespace {

/// Solve M X = B with a condition-number guard.
Matrix guarded_solve(const Matrix& m, const Matrix& b, double cond_limit, const char* who) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues().maxCoeff();
    double smin = svd.singularValues().minCoeff();
    if (smin <= 0 || smax / smin > cond_limit)
        throw numerical_error(std::string(who) + ": matrix is numerically singular (condition number " +
                              std::to_string(smin > 0 ? smax / smin : std::numeric_limits<double>::infinity()) + ")");
    return svd.solve(b);
}

Matrix symmetrized(const Matrix& m) { return (m + m.transpose()) / 2.0; }

} // namespace

Matrix gaussian_product_cov(const Matrix& gamma_a, const Matrix& gamma_b, const RealMatrix& sigma,
                            double cond_limit) {
    if (gamma_a.rows() != gamma_b.rows() || gamma_a.rows() != sigma.rows())
        throw dimension_error("gaussian_product_cov: size mismatch");
    Matrix is = Complex(0, 1) * sigma.cast<Complex>();
    Matrix inv_right = guarded_solve(gamma_a + gamma_b, gamma_b - is, cond_limit, "gaussian_product_cov");
    return symmetrized(gamma_b - (gamma_b + is) * inv_right);
}

Matrix pair_moment_matrix(const Matrix& gamma) {
    const int m = static_cast<int>(gamma.rows()) / 2;
    Matrix gxx(m, m), gpp(m, m), gxp(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            gxx(j, k) = gamma(2 * j, 2 * k);
            gpp(j, k) = gamma(2 * j + 1, 2 * k + 1);
            gxp(j, k) = gamma(2 * j, 2 * k + 1);
        }
    Matrix sym_xp = (gxp + gxp.transpose()) / 2.0;
    return (gxx - gpp) / 4.0 + Complex(0, 0.5) * sym_xp;
}

Matrix pure_gaussian_cov(const Matrix& a) {
    const int m = static_cast<int>(a.rows());
    // spectral radius guard: the state exists only for ||A|| < 1
    Eigen::JacobiSVD<Matrix> svd(a);
    if (svd.singularValues().maxCoeff() >= 1.0 - 1e-12)
        throw numerical_error("pure_gaussian_cov: pair-creation matrix has norm >= 1, no normalizable fixed point");
    Matrix one = Matrix::Identity(m, m);
    Matrix s = (one - a * a.conjugate()).fullPivLu().solve(a);  // <a a>
    Matrix c = s.conjugate() * a;                               // <a† a>, C(j,k) = <a_j† a_k>
    Matrix g(2 * m, 2 * m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            Complex sjk = s(j, k), tjk = std::conj(s(j, k));
            Complex cjk = c(j, k), ckj = c(k, j);
            double delta = (j == k) ? 1.0 : 0.0;
            g(2 * j, 2 * k) = sjk + tjk + cjk + ckj + delta;
            g(2 * j + 1, 2 * k + 1) = -(sjk + tjk) + cjk + ckj + delta;
            g(2 * j, 2 * k + 1) = Complex(0, 1) * (tjk - sjk) + Complex(0, 1) * (ckj - cjk);
            g(2 * j + 1, 2 * k) = Complex(0, 1) * (tjk - sjk) + Complex(0, 1) * (cjk - ckj);
        }
    return symmetrized(g);
}

Matrix fixed_point_cov(const Matrix& gamma_sigma, const Matrix& gamma_pi, const RealMatrix& sigma,
                       double cond_limit) {
    if (gamma_sigma.rows() != gamma_pi.rows() || gamma_sigma.rows() != sigma.rows())
        throw dimension_error("fixed_point_cov: size mismatch");
    Matrix is = Complex(0, 1) * sigma.cast<Complex>();
    Matrix k = gamma_pi - gamma_sigma;

    Eigen::JacobiSVD<Matrix> svd(k);
    double smax = svd.singularValues().maxCoeff();
    double smin = svd.singularValues().minCoeff();
    bool singular = (smin <= 0 || smax / smin > cond_limit);

    if (!singular) {
        Matrix inv_right = k.fullPivLu().solve(gamma_pi + is);
        return symmetrized((gamma_pi - is) * inv_right - gamma_pi);
    }

    // Vacuum-projector endpoint: Gamma_Pi = 1 makes (Gamma_Pi - Gamma_sigma)
    // rank-deficient.  The convergent state is then the pure Gaussian whose
    // pair-creation matrix reproduces the <a_j a_k> moments of Gamma_sigma.
    bool vacuum_pi = (gamma_pi - Matrix::Identity(gamma_pi.rows(), gamma_pi.cols())).cwiseAbs().maxCoeff() < 1e-12;
    if (!vacuum_pi)
        throw numerical_error("fixed_point_cov: fixed point does not exist for this filter/state pair "
                              "(Gamma_Pi - Gamma_sigma is singular)");
    Matrix a = pair_moment_matrix(gamma_sigma);
    Matrix g = pure_gaussian_cov(a);
    // verify by substituting back into the product formula
    Matrix check = gaussian_product_cov(g, gamma_pi, sigma, cond_limit);
    if ((check - gamma_sigma).cwiseAbs().maxCoeff() > 1e-8)
        throw numerical_error("fixed_point_cov: vacuum-endpoint reconstruction failed the consistency check");
    return g;
}

RealVector symplectic_eigenvalues(const Matrix& gamma, const RealMatrix& sigma, double imag_tol) {
    if (gamma.imag().cwiseAbs().maxCoeff() > imag_tol)
        throw numerical_error("symplectic_eigenvalues: covariance matrix has an imaginary part");
    Matrix m = Complex(0, 1) * sigma.cast<Complex>() * gamma;
    Eigen::ComplexEigenSolver<Matrix> es(m);
    Vector ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i).imag()) > imag_tol * std::max(1.0, std::abs(ev(i))) + imag_tol)
            throw numerical_error("symplectic_eigenvalues: complex residue above tolerance");
    std::vector<double> v(ev.size());
    for (int i = 0; i < ev.size(); ++i) v[i] = std::abs(ev(i));
    std::sort(v.begin(), v.end(), std::greater<>());
    const int m2 = static_cast<int>(v.size()) / 2;
    RealVector out(m2);
    for (int i = 0; i < m2; ++i) {
        // eigenvalues come in +/- pairs; adjacent entries after sorting
        out(i) = (v[2 * i] + v[2 * i + 1]) / 2.0;
    }
    return out;
}

double logneg_gaussian(const Matrix& gamma, const std::vector<int>& bipartition, const RealMatrix& sigma) {
    const int m = static_cast<int>(gamma.rows()) / 2;
    RealVector flip = RealVector::Ones(2 * m);
    for (int j : bipartition) {
        if (j < 0 || j >= m) throw dimension_error("logneg_gaussian: mode out of range");
        flip(2 * j + 1) = -1.0;
    }
    Matrix gt = flip.cast<Complex>().asDiagonal() * gamma * flip.cast<Complex>().asDiagonal();
    RealVector nu = symplectic_eigenvalues(gt, sigma);
    double en = 0;
    for (int i = 0; i < nu.size(); ++i)
        if (nu(i) < 1.0) en += -std::log2(nu(i));
    return en;
}

namespace {

/// Sum over perfect matchings of W restricted to the slot list.
Complex wick_sum(const Matrix& w, const std::vector<int>& slots) {
    const size_t n = slots.size();
    if (n == 0) return Complex(1, 0);
    if (n % 2 == 1) return Complex(0, 0);
    // pair slot 0 with each other slot, recurse
    Complex total = 0;
    int first = slots[0];
    for (size_t i = 1; i < n; ++i) {
        std::vector<int> rest;
        rest.reserve(n - 2);
        for (size_t k = 1; k < n; ++k)
            if (k != i) rest.push_back(slots[k]);
        total += w(first, slots[i]) * wick_sum(w, rest);
    }
    return total;
}

} // namespace

Complex wick_moments(const GaussianOperator& g, const std::vector<int>& x_vec, const std::vector<int>& y_vec) {
    const int m = g.modes();
    if (static_cast<int>(x_vec.size()) != m || static_cast<int>(y_vec.size()) != m)
        throw dimension_error("wick_moments: multi-index length mismatch");
    if (g.d.cwiseAbs().maxCoeff() > 1e-12)
        throw numerical_error("wick_moments: only zero-mean Gaussian operators are supported");

    // Normally ordered generating function N(alpha, beta) =
    // chi(r(alpha,beta)) * exp(-sum alpha_k beta_k / 2) with
    //   r_x,k = -i(alpha_k + beta_k)/sqrt2,  r_p,k = (beta_k - alpha_k)/sqrt2.
    // Its exponent is (1/2) z^T W z for z = (alpha_1..alpha_m, beta_1..beta_m).
    Matrix t = Matrix::Zero(2 * m, 2 * m);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < m; ++k) {
        t(2 * k, k) = Complex(0, -inv_sqrt2);
        t(2 * k, m + k) = Complex(0, -inv_sqrt2);
        t(2 * k + 1, k) = -inv_sqrt2;
        t(2 * k + 1, m + k) = inv_sqrt2;
    }
    Matrix w = -0.5 * (t.transpose() * g.gamma * t);
    for (int k = 0; k < m; ++k) {
        w(k, m + k) -= 0.5;
        w(m + k, k) -= 0.5;
    }

    std::vector<int> slots;
    for (int j = 0; j < m; ++j)
        for (int c = 0; c < x_vec[j]; ++c) slots.push_back(j);
    for (int j = 0; j < m; ++j)
        for (int c = 0; c < y_vec[j]; ++c) slots.push_back(m + j);
    if (slots.size() > 16)
        throw dimension_error("wick_moments: total order too large for direct pairing enumeration");
    return g.scale * wick_sum(w, slots);
}

} // namespace cvd
