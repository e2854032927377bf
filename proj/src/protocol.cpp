#include "cvdistill/protocol.hpp"

#include <cmath>
#include <numeric>

namespace cvd {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMajorMatrix>;
using MapRMConst = Eigen::Map<const RowMajorMatrix>;

constexpr std::int64_t kMaxTensorElements = 400'000'000;

/// Flat row-major tensor with labeled legs (leg 0 varies slowest).
struct Tens {
    std::vector<int> dims;
    std::vector<int> labels;
    Vector data;

    std::int64_t size() const { return data.size(); }
    int find(int label) const {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        throw dimension_error("protocol engine: tensor leg not found");
    }
};

/// Reorder legs so that `front` (in order) come first; stable for the rest.
Tens permute_to_front(const Tens& t, const std::vector<int>& front) {
    std::vector<int> order;
    order.reserve(t.labels.size());
    for (int lb : front) order.push_back(t.find(lb));
    for (size_t i = 0; i < t.labels.size(); ++i)
        if (std::find(order.begin(), order.end(), static_cast<int>(i)) == order.end())
            order.push_back(static_cast<int>(i));

    bool already = true;
    for (size_t i = 0; i < order.size(); ++i)
        if (order[i] != static_cast<int>(i)) already = false;
    if (already) return t;

    const size_t rank = t.dims.size();
    std::vector<std::int64_t> in_stride(rank, 1);
    for (int i = static_cast<int>(rank) - 2; i >= 0; --i)
        in_stride[i] = in_stride[i + 1] * t.dims[i + 1];

    Tens out;
    out.dims.resize(rank);
    out.labels.resize(rank);
    for (size_t i = 0; i < rank; ++i) {
        out.dims[i] = t.dims[order[i]];
        out.labels[i] = t.labels[order[i]];
    }
    out.data.resize(t.size());

    std::vector<std::int64_t> stride_for_out(rank);
    for (size_t i = 0; i < rank; ++i) stride_for_out[i] = in_stride[order[i]];

    std::vector<int> idx(rank, 0);
    std::int64_t src = 0;
    const std::int64_t n = t.size();
    for (std::int64_t dst = 0; dst < n; ++dst) {
        out.data(dst) = t.data(src);
        for (int i = static_cast<int>(rank) - 1; i >= 0; --i) {
            if (++idx[i] < out.dims[i]) {
                src += stride_for_out[i];
                break;
            }
            idx[i] = 0;
            src -= stride_for_out[i] * (out.dims[i] - 1);
        }
    }
    return out;
}

/// Contract a matrix M[new, k] against the first legs of T (their flattened
/// dimension must equal k); result legs = new_legs followed by the rest.
Tens apply_front(const Matrix& m, const std::vector<int>& new_dims, const std::vector<int>& new_labels,
                 const Tens& t, size_t front_count) {
    std::int64_t k = 1;
    for (size_t i = 0; i < front_count; ++i) k *= t.dims[i];
    if (m.cols() != k) throw dimension_error("protocol engine: contraction size mismatch");
    std::int64_t rest = t.size() / k;
    std::int64_t out_elems = m.rows() * rest;
    if (out_elems > kMaxTensorElements)
        throw dimension_error("protocol engine: intermediate tensor exceeds the size guard");

    Tens out;
    out.dims = new_dims;
    out.labels = new_labels;
    for (size_t i = front_count; i < t.dims.size(); ++i) {
        out.dims.push_back(t.dims[i]);
        out.labels.push_back(t.labels[i]);
    }
    out.data.resize(out_elems);
    MapRMConst tin(t.data.data(), k, rest);
    MapRM tout(out.data.data(), m.rows(), rest);
    tout.noalias() = m * tin;
    return out;
}

// Leg label scheme, by party j:
//   ket of copy 1: 100+j     bra of copy 1: 200+j
//   ket of copy 2: 300+j     bra of copy 2: 400+j
//   kept output ket/bra: 500+j / 700+j       filtered output: 600+j
struct Legs {
    static int n(int j) { return 100 + j; }
    static int nb(int j) { return 200 + j; }
    static int m(int j) { return 300 + j; }
    static int mb(int j) { return 400 + j; }
    static int I(int j) { return 500 + j; }
    static int s(int j) { return 600 + j; }
    static int J(int j) { return 700 + j; }
};

/// The round map as a single contraction: for filter weights w,
///   OUT[I,J] = sum over s, copies of prod_j w_j(s_j) <I_j s_j|U|n_j m_j>
///              conj(<J_j s_j|U|n'_j m'_j>) rho[n,n'] rho[m,m'].
Matrix contract_round(const FockOperator& rho, int d, int m_modes, int dbig, const Matrix& u_pair,
                      const std::vector<std::vector<double>>& weights) {
    // per-party accepted outcome lists (weights may vanish identically, e.g.
    // the vacuum projector keeps only s = 0)
    std::vector<std::vector<int>> s_list(m_modes);
    for (int j = 0; j < m_modes; ++j)
        for (int s = 0; s < dbig; ++s)
            if (weights[j][s] != 0.0) s_list[j].push_back(s);

    // rho as a 2m-leg tensor, copy 1
    Tens g;
    g.dims.assign(2 * m_modes, d);
    g.labels.clear();
    for (int j = 0; j < m_modes; ++j) g.labels.push_back(Legs::n(j));
    for (int j = 0; j < m_modes; ++j) g.labels.push_back(Legs::nb(j));
    g.data = Eigen::Map<const Vector>(Matrix(rho.mat.transpose()).data(), rho.mat.size());
    // note: Eigen matrices are column-major, so the transpose's raw data is
    // the row-major layout of rho.mat

    // ---- party 0: contract u over n_0 ----
    {
        const auto& sl = s_list[0];
        const int ns = static_cast<int>(sl.size());
        Matrix m1(ns * dbig * d, d);  // rows (s, I, mm), cols n
        for (int a = 0; a < ns; ++a)
            for (int i = 0; i < dbig; ++i)
                for (int mm = 0; mm < d; ++mm)
                    for (int n = 0; n < d; ++n)
                        m1((std::int64_t(a) * dbig + i) * d + mm, n) = u_pair(i * dbig + sl[a], n * dbig + mm);
        g = permute_to_front(g, {Legs::n(0)});
        g = apply_front(m1, {ns, dbig, d}, {Legs::s(0), Legs::I(0), Legs::m(0)}, g, 1);
    }
    // ---- party 0: contract conj(u) * w over (s_0, n'_0) ----
    {
        const auto& sl = s_list[0];
        const int ns = static_cast<int>(sl.size());
        Matrix m2(dbig * d, ns * d);  // rows (J, m'), cols (s, n')
        for (int jj = 0; jj < dbig; ++jj)
            for (int mp = 0; mp < d; ++mp)
                for (int a = 0; a < ns; ++a)
                    for (int np = 0; np < d; ++np)
                        m2(jj * d + mp, a * d + np) =
                            std::conj(u_pair(jj * dbig + sl[a], np * dbig + mp)) * weights[0][sl[a]];
        g = permute_to_front(g, {Legs::s(0), Legs::nb(0)});
        g = apply_front(m2, {dbig, d}, {Legs::J(0), Legs::mb(0)}, g, 2);
    }
    // ---- party 0: attach copy 2 through (m_0, m'_0) ----
    {
        // rho2 permuted to legs [m_0, m'_0, rest], then transposed to rows=rest
        Tens r2;
        r2.dims.assign(2 * m_modes, d);
        for (int j = 0; j < m_modes; ++j) r2.labels.push_back(Legs::m(j));
        for (int j = 0; j < m_modes; ++j) r2.labels.push_back(Legs::mb(j));
        r2.data = Eigen::Map<const Vector>(Matrix(rho.mat.transpose()).data(), rho.mat.size());
        r2 = permute_to_front(r2, {Legs::m(0), Legs::mb(0)});
        std::int64_t rest = r2.size() / (d * d);
        Matrix m3 = MapRMConst(r2.data.data(), d * d, rest).transpose();
        std::vector<int> nd, nl;
        for (size_t i = 2; i < r2.dims.size(); ++i) {
            nd.push_back(r2.dims[i]);
            nl.push_back(r2.labels[i]);
        }
        g = permute_to_front(g, {Legs::m(0), Legs::mb(0)});
        g = apply_front(m3, nd, nl, g, 2);
    }
    // ---- parties 1..m-1 ----
    for (int j = 1; j < m_modes; ++j) {
        const auto& sl = s_list[j];
        const int ns = static_cast<int>(sl.size());
        {
            Matrix ma(dbig * ns, d * d);  // rows (I, s), cols (n, mm)
            for (int i = 0; i < dbig; ++i)
                for (int a = 0; a < ns; ++a)
                    for (int n = 0; n < d; ++n)
                        for (int mm = 0; mm < d; ++mm)
                            ma(i * ns + a, n * d + mm) = u_pair(i * dbig + sl[a], n * dbig + mm);
            g = permute_to_front(g, {Legs::n(j), Legs::m(j)});
            g = apply_front(ma, {dbig, ns}, {Legs::I(j), Legs::s(j)}, g, 2);
        }
        {
            Matrix mb(dbig, ns * d * d);  // rows J, cols (s, n', m')
            for (int jj = 0; jj < dbig; ++jj)
                for (int a = 0; a < ns; ++a)
                    for (int np = 0; np < d; ++np)
                        for (int mp = 0; mp < d; ++mp)
                            mb(jj, (a * d + np) * d + mp) =
                                std::conj(u_pair(jj * dbig + sl[a], np * dbig + mp)) * weights[j][sl[a]];
            g = permute_to_front(g, {Legs::s(j), Legs::nb(j), Legs::mb(j)});
            g = apply_front(mb, {dbig}, {Legs::J(j)}, g, 3);
        }
    }
    // ---- collect OUT[I, J] ----
    std::vector<int> final_order;
    for (int j = 0; j < m_modes; ++j) final_order.push_back(Legs::I(j));
    for (int j = 0; j < m_modes; ++j) final_order.push_back(Legs::J(j));
    g = permute_to_front(g, final_order);
    std::int64_t dout = 1;
    for (int j = 0; j < m_modes; ++j) dout *= dbig;
    Matrix out = MapRMConst(g.data.data(), dout, dout);
    return out;
}

} // namespace

IterationRecord iterate_once(const FockOperator& rho, const FilterSpec& filter, const ProtocolOptions& opts) {
    const int m_modes = rho.basis.modes();
    if (filter.modes() != m_modes) throw dimension_error("iterate_once: filter/state mode count mismatch");
    const int d = rho.basis.dims[0];
    for (int dd : rho.basis.dims)
        if (dd != d) throw dimension_error("iterate_once: per-mode cutoffs must be uniform");
    const int dbig = (opts.policy == HeadroomPolicy::exact_pair) ? 2 * d - 1 : d;

    BasisSpec pair_basis = BasisSpec::uniform(2, dbig - 1);
    Matrix u_pair = beam_splitter_5050(pair_basis, 0, 1).mat;

    std::vector<std::vector<double>> weights(m_modes, std::vector<double>(dbig));
    for (int j = 0; j < m_modes; ++j)
        for (int s = 0; s < dbig; ++s) weights[j][s] = filter.weight(j, s);

    Matrix out = contract_round(rho.normalized(), d, m_modes, dbig, u_pair, weights);

    IterationRecord rec;
    Complex tr = out.trace();
    if (std::abs(tr.imag()) > 1e-9)
        throw numerical_error("iterate_once: output trace has an imaginary part");
    rec.success_prob = tr.real();
    if (rec.success_prob < opts.accept_tol)
        throw numerical_error("iterate_once: acceptance probability below tolerance");

    BasisSpec big_basis = BasisSpec::uniform(m_modes, dbig - 1);
    Matrix pre = out / tr;
    pre = (pre + pre.adjoint()).eval() / 2.0;
    FockOperator rho_pre(big_basis, pre);

    if (opts.keep_sigma_pre) rec.sigma_pre = sigma_of(rho_pre, filter, opts.accept_tol).sigma;

    double unitary_defect = 0.0;
    if (opts.policy == HeadroomPolicy::fixed) {
        // trace lost inside the non-exact beam-splitter step: rerun with the
        // identity filter and measure the departure from unit trace
        std::vector<std::vector<double>> ones(m_modes, std::vector<double>(dbig, 1.0));
        Matrix out_ep = contract_round(rho.normalized(), d, m_modes, dbig, u_pair, ones);
        unitary_defect = std::max(0.0, 1.0 - out_ep.trace().real());
    }

    FockOperator cut = truncate(rho_pre, rho.basis);
    double kept = cut.trace().real();
    rec.leakage = (opts.policy == HeadroomPolicy::exact_pair) ? std::max(0.0, 1.0 - kept) : unitary_defect;
    if (kept <= 0)
        throw numerical_error("iterate_once: truncation removed the entire state");
    rec.rho = FockOperator(rho.basis, cut.mat / kept);

    rec.hermiticity_defect = rec.rho.hermiticity_defect();
    rec.min_eigenvalue = rec.rho.min_eigenvalue();
    rec.rho_moments = quadrature_moments(rec.rho);
    SigmaResult sg = sigma_of(rec.rho, filter, opts.accept_tol);
    rec.sigma_accept = sg.accept;
    rec.sigma_moments = quadrature_moments(sg.sigma);
    return rec;
}

RunResult run(const ProtocolConfig& config) {
    if (config.rounds < 0) throw dimension_error("run: rounds must be >= 0");
    RunResult result;

    IterationRecord first;
    first.round = 0;
    first.rho = config.initial.normalized();
    first.cumulative_copies = 1;
    first.hermiticity_defect = first.rho.hermiticity_defect();
    first.min_eigenvalue = first.rho.min_eigenvalue();
    first.rho_moments = quadrature_moments(first.rho);
    SigmaResult sg0 = sigma_of(first.rho, config.filter, config.opts.accept_tol);
    first.sigma_accept = sg0.accept;
    first.sigma_moments = quadrature_moments(sg0.sigma);
    result.records.push_back(std::move(first));

    for (int n = 1; n <= config.rounds; ++n) {
        IterationRecord rec;
        try {
            rec = iterate_once(result.records.back().rho, config.filter, config.opts);
        } catch (const numerical_error& e) {
            result.aborted = true;
            result.abort_round = n;
            result.abort_reason = e.what();
            return result;
        }
        rec.round = n;
        if (n >= 63) throw numerical_error("run: copy counter would overflow");
        rec.cumulative_copies = std::uint64_t(1) << n;
        if (rec.leakage > config.opts.leakage_abort) {
            result.aborted = true;
            result.abort_round = n;
            result.abort_reason = "leakage " + std::to_string(rec.leakage) + " exceeds the per-round bound " +
                                  std::to_string(config.opts.leakage_abort) +
                                  "; results beyond this round would be untrustworthy";
            result.records.push_back(std::move(rec));
            return result;
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

LeakageReport leakage_report(const std::vector<IterationRecord>& records, double bound) {
    LeakageReport rep;
    for (const auto& r : records) {
        rep.per_round.push_back(r.leakage);
        rep.total += r.leakage;
        rep.max_round = std::max(rep.max_round, r.leakage);
        if (r.leakage > bound) rep.flagged.push_back(r.round);
    }
    return rep;
}

} // namespace cvd
