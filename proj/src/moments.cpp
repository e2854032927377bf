#include "cvdistill/moments.hpp"

#include <cmath>
#include <numeric>

namespace cvd {

namespace {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

void enumerate_indices(int modes, int budget, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == modes) {
        out.push_back(cur);
        return;
    }
    for (int t = 0; t <= budget; ++t) {
        cur.push_back(t);
        enumerate_indices(modes, budget - t, cur, out);
        cur.pop_back();
    }
}

int isum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

} // namespace

std::vector<std::vector<int>> MomentTable::index_set(int modes, int max_order) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    enumerate_indices(modes, max_order, cur, out);
    return out;
}

Complex MomentTable::at(const std::vector<int>& x, const std::vector<int>& y) const {
    auto it = entries.find({x, y});
    if (it == entries.end()) throw dimension_error("MomentTable::at: index pair not in table");
    return it->second;
}

CoefficientExact recursion_coefficient_exact(const std::vector<int>& x, const std::vector<int>& y,
                                             const std::vector<int>& u, const std::vector<int>& v) {
    if (x.size() != u.size() || y.size() != v.size() || x.size() != y.size())
        throw dimension_error("recursion_coefficient: multi-index length mismatch");
    CoefficientExact c{1, 0};
    for (size_t j = 0; j < x.size(); ++j) {
        if (u[j] < 0 || u[j] > x[j] || v[j] < 0 || v[j] > y[j])
            throw dimension_error("recursion_coefficient: componentwise bound violated");
        c.mantissa *= binomial(x[j], u[j]) * binomial(y[j], v[j]);
        c.half_power += x[j] + y[j];
    }
    return c;
}

double recursion_coefficient(const std::vector<int>& x, const std::vector<int>& y,
                             const std::vector<int>& u, const std::vector<int>& v) {
    CoefficientExact c = recursion_coefficient_exact(x, y, u, v);
    return double(c.mantissa) * std::pow(2.0, -0.5 * c.half_power);
}

namespace {

void enumerate_below(const std::vector<int>& cap, std::vector<int>& cur, size_t pos,
                     std::vector<std::vector<int>>& out) {
    if (pos == cap.size()) {
        out.push_back(cur);
        return;
    }
    for (int t = 0; t <= cap[pos]; ++t) {
        cur[pos] = t;
        enumerate_below(cap, cur, pos + 1, out);
    }
}

std::vector<std::vector<int>> all_below(const std::vector<int>& cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(cap.size(), 0);
    enumerate_below(cap, cur, 0, out);
    return out;
}

} // namespace

MomentTable moment_step(const MomentTable& table) {
    MomentTable out;
    out.modes = table.modes;
    out.max_order = table.max_order;
    for (const auto& [key, unused] : table.entries) {
        (void)unused;
        const auto& [x, y] = key;
        Complex acc = 0;
        for (const auto& u : all_below(x)) {
            for (const auto& v : all_below(y)) {
                std::vector<int> xu(x.size()), yv(y.size());
                for (size_t j = 0; j < x.size(); ++j) xu[j] = x[j] - u[j];
                for (size_t j = 0; j < y.size(); ++j) yv[j] = y[j] - v[j];
                acc += recursion_coefficient(x, y, u, v) * table.at(u, v) * table.at(xu, yv);
            }
        }
        out.entries[key] = acc;
    }
    return out;
}

MomentTable moments_from_fock(const FockOperator& sigma, int max_order) {
    const int m = sigma.basis.modes();
    for (int d : sigma.basis.dims)
        if (d <= max_order)
            throw dimension_error("moments_from_fock: cutoff too small for the requested order");
    if (std::abs(sigma.trace() - Complex(1, 0)) > 1e-9)
        throw numerical_error("moments_from_fock: sigma must have unit trace");

    // pad so creation chains act exactly
    BasisSpec padded = sigma.basis;
    for (int& d : padded.dims) d += max_order + 1;
    FockOperator big = embed(sigma, padded);

    std::vector<Matrix> lower;
    for (int j = 0; j < m; ++j) lower.push_back(annihilation(padded, j).mat);

    MomentTable out;
    out.modes = m;
    out.max_order = max_order;
    auto idx = MomentTable::index_set(m, max_order);
    for (const auto& x : idx) {
        for (const auto& y : idx) {
            Matrix op = Matrix::Identity(padded.dim(), padded.dim());
            for (int j = 0; j < m; ++j)
                for (int c = 0; c < x[j]; ++c) op = op * lower[j].adjoint();
            for (int j = 0; j < m; ++j)
                for (int c = 0; c < y[j]; ++c) op = op * lower[j];
            out.entries[{x, y}] = (op * big.mat).trace();
        }
    }
    return out;
}

StrongConvergenceReport strong_convergence_check(const MomentTable& alpha0,
                                                 const GaussianOperator& sigma_inf,
                                                 int max_order, double tol) {
    StrongConvergenceReport rep;
    rep.max_order = max_order;
    rep.all_ok = true;
    auto idx = MomentTable::index_set(alpha0.modes, max_order);
    for (const auto& x : idx) {
        for (const auto& y : idx) {
            StrongConvergenceReport::Entry e;
            e.x = x;
            e.y = y;
            e.abs_alpha0 = std::abs(alpha0.at(x, y));
            e.alpha_inf = wick_moments(sigma_inf, x, y);
            bool real_nonneg = std::abs(e.alpha_inf.imag()) <= tol && e.alpha_inf.real() >= -tol;
            e.ok = real_nonneg && (e.abs_alpha0 <= e.alpha_inf.real() + tol);
            if (!e.ok) {
                rep.all_ok = false;
                rep.violations.push_back(e);
            }
            rep.checked.push_back(e);
        }
    }
    return rep;
}

} // namespace cvd
