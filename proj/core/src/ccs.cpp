#include "circon/ccs.hpp"

namespace circon {

CcsSolution consensus_for_shift(std::span<const BinaryString> strings, const ShiftVector& delta) {
    const std::size_t n = common_length(strings);
    const std::size_t k = strings.size();
    std::vector<bool> consensus(n);
    unsigned long long cost = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const Column col = column_at(strings, delta, i);
        const std::size_t ones = col.weight;
        const std::size_t zeros = k - ones;
        consensus[i - 1] = ones > zeros;  // tie -> 0
        cost += std::min(ones, zeros);
    }
    return CcsSolution{delta, BinaryString(std::move(consensus)), cost};
}

CcsSolution solve_ccs_exhaustive(const std::vector<BinaryString>& strings,
                                 const SolveOptions& opts) {
    MscsInstance inst{strings, tabulate_builtin(Builtin::ccs, strings.size()), std::nullopt};
    const MscsSolution mscs = solve_exhaustive(inst, opts);
    CcsSolution sol = consensus_for_shift(strings, mscs.delta);
    if (Rational(sol.cost) != mscs.cost)
        throw InstanceError("ccs/f-MSCS[ccs] cost mismatch");  // cannot happen
    return sol;
}

}  // namespace circon
