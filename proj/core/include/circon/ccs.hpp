#pragma once

#include <optional>
#include <span>
#include <vector>

#include "circon/cyclic.hpp"
#include "circon/mscs.hpp"

namespace circon {

struct CcsSolution {
    ShiftVector delta;
    BinaryString consensus;
    unsigned long long cost = 0;  // sum of Hamming distances
};

/// Majority consensus for a fixed shift. Column ties resolve to symbol 0; the
/// cost min(#0, #1) is the same either way.
CcsSolution consensus_for_shift(std::span<const BinaryString> strings, const ShiftVector& delta);

/// Global minimum over shift vectors with the first string unshifted.
/// Implemented on top of the f-MSCS solver with the ccs cost table, so the
/// equivalence with f-MSCS[ccs] holds by construction.
CcsSolution solve_ccs_exhaustive(const std::vector<BinaryString>& strings,
                                 const SolveOptions& opts = {});

}  // namespace circon
