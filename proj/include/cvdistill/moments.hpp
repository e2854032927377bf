#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cvdistill/fock_operator.hpp"
#include "cvdistill/gaussian.hpp"

namespace cvd {

/// Normally ordered expectation values alpha^{x,y} = tr((⊗ a^x)† (⊗ a^y) sigma)
/// indexed by multi-index pairs with sum(x) <= max_order and sum(y) <= max_order.
struct MomentTable {
    using Key = std::pair<std::vector<int>, std::vector<int>>;
    int modes = 0;
    int max_order = 0;
    std::map<Key, Complex> entries;

    Complex at(const std::vector<int>& x, const std::vector<int>& y) const;
    /// All multi-indices with componentwise sum <= max_order (for `modes` modes).
    static std::vector<std::vector<int>> index_set(int modes, int max_order);
};

/// Combinatorial weight of the iteration step,
///   C = prod_j 2^{-(x_j+y_j)/2} binom(x_j, u_j) binom(y_j, v_j),
/// nonnegative and real; errors if u or v exceeds x or y componentwise.
double recursion_coefficient(const std::vector<int>& x, const std::vector<int>& y,
                             const std::vector<int>& u, const std::vector<int>& v);

/// Exact integer part: prod binom(x_j,u_j) binom(y_j,v_j), with the power k
/// such that C = mantissa * 2^{-k/2}.  Lets identities be checked exactly.
struct CoefficientExact {
    std::uint64_t mantissa;
    int half_power;
};
CoefficientExact recursion_coefficient_exact(const std::vector<int>& x, const std::vector<int>& y,
                                             const std::vector<int>& u, const std::vector<int>& v);

/// One iteration of the moment recursion:
///   alpha'^{x,y} = sum_{u<=x, v<=y} C alpha^{u,v} alpha^{x-u, y-v}.
MomentTable moment_step(const MomentTable& table);

/// Direct evaluation of the table from a Fock-space operator (needs the
/// basis cutoff to exceed max_order; computed with padded ladder operators).
MomentTable moments_from_fock(const FockOperator& sigma, int max_order);

/// Theorem-style strong-convergence hypothesis check, truncated at max_order:
/// per index, alpha_inf must be real nonnegative and satisfy
/// |alpha_0^{x,y}| <= alpha_inf^{x,y}.  The verdict covers the checked orders
/// only; the all-orders hypothesis is not certifiable by any finite check.
struct StrongConvergenceReport {
    struct Entry {
        std::vector<int> x, y;
        double abs_alpha0;
        Complex alpha_inf;
        bool ok;
    };
    int max_order = 0;
    bool all_ok = false;
    std::vector<Entry> violations;
    std::vector<Entry> checked;
};
StrongConvergenceReport strong_convergence_check(const MomentTable& alpha0,
                                                 const GaussianOperator& sigma_inf,
                                                 int max_order, double tol = 1e-9);

} // namespace cvd
