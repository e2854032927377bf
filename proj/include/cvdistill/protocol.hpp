#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvdistill/filter.hpp"
#include "cvdistill/fock_ops.hpp"

namespace cvd {

/// Working-cutoff policy for one iteration.
///
/// exact_pair embeds every mode at cutoff 2(d-1) so the photon-number-
/// conserving beam splitter acts without truncation error; the only loss is
/// the final, explicitly measured re-truncation.  fixed keeps the working
/// cutoff at d-1, so the beam-splitter step itself loses trace (recorded as
/// leakage); nothing is re-truncated afterwards.
enum class HeadroomPolicy { exact_pair, fixed };

struct ProtocolOptions {
    HeadroomPolicy policy = HeadroomPolicy::exact_pair;
    double leakage_abort = 1e-4;  ///< per-round bound; breach aborts the run
    double accept_tol = 1e-12;    ///< minimum acceptance probability
    bool keep_sigma_pre = true;   ///< record the pre-truncation filtered state
};

/// Per-round ledger entry.
struct IterationRecord {
    int round = 0;
    FockOperator rho;                      ///< Hermitian, unit trace, working cutoff
    double success_prob = 1.0;             ///< tr[U (rho ⊗ rho) U† (1 ⊗ Pi)]
    std::uint64_t cumulative_copies = 1;   ///< 2^round input copies consumed
    double leakage = 0.0;                  ///< trace removed by truncation this round
    QuadratureMoments rho_moments;
    QuadratureMoments sigma_moments;
    double sigma_accept = 1.0;             ///< tr(rho_n Pi)
    /// Filtered state sigma(rho') of the exact pre-truncation output rho',
    /// on the enlarged basis; this is the object obeying the doubling law.
    std::optional<FockOperator> sigma_pre;
    double hermiticity_defect = 0.0;
    double min_eigenvalue = 0.0;
};

/// One iteration of the protocol applied as a deterministic completely
/// positive map (the accepted-outcome mixture is never sampled).
IterationRecord iterate_once(const FockOperator& rho, const FilterSpec& filter,
                             const ProtocolOptions& opts = {});

struct ProtocolConfig {
    FockOperator initial;
    FilterSpec filter;
    int rounds = 1;
    ProtocolOptions opts;
};

struct RunResult {
    std::vector<IterationRecord> records;  ///< records[0] echoes the input
    bool aborted = false;
    int abort_round = -1;
    std::string abort_reason;
};

/// Run `rounds` iterations; deterministic.  On a guard breach the partial
/// ledger is returned with the failing round marked.
RunResult run(const ProtocolConfig& config);

struct LeakageReport {
    double total = 0.0;
    double max_round = 0.0;
    std::vector<double> per_round;
    std::vector<int> flagged;  ///< rounds whose leakage exceeded the bound
};
LeakageReport leakage_report(const std::vector<IterationRecord>& records, double bound);

} // namespace cvd
