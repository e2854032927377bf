#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvdistill/filter.hpp"
#include "cvdistill/fock_ops.hpp"
#include "cvdistill/gaussian.hpp"
#include "cvdistill/protocol.hpp"

namespace cvd {

/// Cartesian sampling grid in phase space: points_per_axis values per axis
/// (odd, so the origin is included; symmetric under r -> -r) on [-radius, radius],
/// over 2m axes.
struct PhaseSpaceGrid {
    double radius = 4.0;
    int points_per_axis = 9;
    int modes = 2;

    PhaseSpaceGrid() = default;
    PhaseSpaceGrid(double r, int ppa, int m) : radius(r), points_per_axis(ppa), modes(m) {
        if (ppa < 1 || ppa % 2 == 0) throw dimension_error("PhaseSpaceGrid: points per axis must be odd");
        if (r <= 0) throw dimension_error("PhaseSpaceGrid: radius must be positive");
    }

    std::vector<double> axis() const {
        std::vector<double> v(points_per_axis);
        for (int i = 0; i < points_per_axis; ++i)
            v[i] = (points_per_axis == 1) ? 0.0 : -radius + 2.0 * radius * i / (points_per_axis - 1);
        return v;
    }
    std::int64_t total_points() const {
        std::int64_t t = 1;
        for (int i = 0; i < 2 * modes; ++i) t *= points_per_axis;
        return t;
    }
};

/// chi_A evaluated on every grid point (flat, row-major over axes), with the
/// grid optionally scaled by `scale`.  Uses per-mode displacement stacks, so
/// cost is a few small matrix products rather than one exponential per point.
std::vector<Complex> char_grid(const FockOperator& a, const PhaseSpaceGrid& grid, double scale = 1.0);

/// max over the grid of |chi_{sigma_next}(r) - chi_{sigma}(r/sqrt2)^2|.
/// sigma_next should be the exact pre-truncation filtered state of the round
/// (IterationRecord::sigma_pre); sigma is the stored filtered state it grew
/// from.  The two operators may live on different cutoffs.
double doubling_check(const FockOperator& sigma, const FockOperator& sigma_next,
                      const PhaseSpaceGrid& grid);

struct BoundedChiReport {
    double max_abs = 0.0;
    bool bounded = true;  ///< max |chi| <= 1 + 1e-9 on the sampled grid
};
/// Sampled (not universal) check of |chi_sigma(r)| <= 1.
BoundedChiReport bounded_chi_check(const FockOperator& sigma, const PhaseSpaceGrid& grid);

/// Distinct one-mode-versus-rest bipartitions (a single cut for two modes).
std::vector<std::vector<int>> single_mode_bipartitions(int modes);

/// Fixed-point prediction from the input state alone (no protocol rounds).
struct PredictReport {
    Vector d_sigma;
    Matrix gamma_sigma;
    Matrix gamma_rho_inf;
    std::vector<double> logneg;  ///< per bipartition, order of single_mode_bipartitions
    double logneg_sum = 0.0;
    // convergence-theorem conditions, with numeric evidence
    bool zero_mean_ok = false;       ///< (i) d_sigma = 0
    double d_sigma_norm = 0.0;
    bool chi_bounded_ok = false;     ///< (ii) sampled |chi_sigma| <= 1
    double chi_max_abs = 0.0;
    bool gamma_positive_ok = false;  ///< (iii) Gamma_inf real symmetric positive definite
    double gamma_min_eig = 0.0;
    double gamma_imag_norm = 0.0;
    bool all_ok = false;
    std::string failure;             ///< names the violated condition when !all_ok
};
PredictReport predict(const FockOperator& rho, const FilterSpec& filter, const PhaseSpaceGrid& grid,
                      double mean_tol = 1e-10);

/// Eigenvector-pair convergence table: for Fock flat-index pairs (x, y), the
/// sequence <x|rho_n|y> / tr(rho_n Pi) and its successive differences.
struct WeakConvergenceTable {
    struct Series {
        int x, y;
        std::vector<double> value;
        std::vector<double> diff;  ///< |value_n - value_{n-1}|, length rounds
    };
    std::vector<Series> series;
};
WeakConvergenceTable weak_convergence_report(const std::vector<IterationRecord>& records,
                                             const std::vector<std::pair<int, int>>& pairs);

/// Photon-number ladder ratio <kk..|rho|kk..> / <00..|rho|00..>.
double diagonal_ratio(const FockOperator& rho, int k);

/// One Delta-sweep row.  The identity filter is requested with delta = 0.
struct SweepPoint {
    double delta = 0.0;
    double en_rho_inf = 0.0;        ///< sum over bipartitions, from predict
    double en_rho_ref = 0.0;        ///< logneg_fock of the input, same cuts
    bool theorem_ok = false;
    std::vector<double> success;    ///< per engine round
    std::string error;              ///< nonempty when this point failed
};
SweepPoint sweep_point(const FockOperator& rho, double delta, int engine_rounds,
                       const PhaseSpaceGrid& grid, const ProtocolOptions& opts);

} // namespace cvd
