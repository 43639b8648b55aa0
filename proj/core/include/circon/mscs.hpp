#pragma once

#include <optional>
#include <vector>

#include "circon/costfn.hpp"
#include "circon/cyclic.hpp"

namespace circon {

struct MscsInstance {
    std::vector<BinaryString> strings;
    CostTable cost;
    std::optional<Rational> target;

    std::size_t k() const { return strings.size(); }
    std::size_t n() const;
    void validate() const;
};

struct MscsSolution {
    ShiftVector delta;
    Rational cost;
    bool optimal = false;
    /// Present when the instance carries a target: cost <= target.
    std::optional<bool> meets_target;
};

struct SolveOptions {
    /// Restrict every delta_j to multiples of this stride.
    std::optional<std::size_t> stride;
    unsigned threads = 1;
};

/// Exact cost of one multiple circular shift (naive column-by-column sum).
Rational cost_of_shift(const MscsInstance& inst, const ShiftVector& delta);

/// Number of columns of each weight 0..k under the given shift.
std::vector<std::size_t> weight_histogram(const MscsInstance& inst, const ShiftVector& delta);

/// Exhaustive minimum over shift vectors with the first string unshifted.
/// Ties break toward the lexicographically smallest shift vector; the result
/// is identical for any worker count.
MscsSolution solve_exhaustive(const MscsInstance& inst, const SolveOptions& opts = {});

}  // namespace circon
