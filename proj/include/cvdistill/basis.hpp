#pragma once

#include <vector>
#include <cstdint>

#include "cvdistill/errors.hpp"

namespace cvd {

/// Truncated multimode Fock basis.
///
/// Mode ordering is fixed once and for all: modes are listed party-major,
/// copy-minor.  With two copies present, mode (party j, copy k) precedes
/// (j, k+1) and every (j, .) precedes (j+1, .).  Multi-indices flatten
/// row-major over that list, i.e. mode 0 varies slowest.
struct BasisSpec {
    std::vector<int> dims;  ///< per-mode dimension d_j (cutoff_j = d_j - 1)

    BasisSpec() = default;
    explicit BasisSpec(std::vector<int> per_mode_dims) : dims(std::move(per_mode_dims)) {
        for (int d : dims)
            if (d < 1) throw dimension_error("BasisSpec: mode dimension must be >= 1");
    }

    /// m modes, all with the same photon-number cutoff (dimension cutoff+1).
    static BasisSpec uniform(int modes, int cutoff) {
        if (modes < 1) throw dimension_error("BasisSpec: need at least one mode");
        if (cutoff < 0) throw dimension_error("BasisSpec: cutoff must be >= 0");
        return BasisSpec(std::vector<int>(modes, cutoff + 1));
    }

    int modes() const { return static_cast<int>(dims.size()); }

    /// Total Hilbert-space dimension, with an overflow guard.
    int dim() const {
        std::int64_t n = 1;
        for (int d : dims) {
            n *= d;
            if (n > (1 << 26)) throw dimension_error("BasisSpec: total dimension too large");
        }
        return static_cast<int>(n);
    }

    /// Flat index of a photon-number multi-index (mode 0 slowest).
    int flatten(const std::vector<int>& n) const {
        if (static_cast<int>(n.size()) != modes())
            throw dimension_error("BasisSpec::flatten: multi-index length mismatch");
        int f = 0;
        for (int j = 0; j < modes(); ++j) {
            if (n[j] < 0 || n[j] >= dims[j])
                throw dimension_error("BasisSpec::flatten: photon number out of range");
            f = f * dims[j] + n[j];
        }
        return f;
    }

    /// Inverse of flatten.
    std::vector<int> unflatten(int flat) const {
        if (flat < 0 || flat >= dim()) throw dimension_error("BasisSpec::unflatten: index out of range");
        std::vector<int> n(modes());
        for (int j = modes() - 1; j >= 0; --j) {
            n[j] = flat % dims[j];
            flat /= dims[j];
        }
        return n;
    }

    bool operator==(const BasisSpec& o) const { return dims == o.dims; }
    bool operator!=(const BasisSpec& o) const { return !(*this == o); }
};

} // namespace cvd
