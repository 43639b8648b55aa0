#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circon/costfn.hpp"
#include "circon/dtw.hpp"
#include "circon/mscs.hpp"
#include "circon/rmcc.hpp"

namespace circon {

// --------------------------------------------------------------------------
// RMCC -> f-MSCS
// --------------------------------------------------------------------------

struct MscsReductionParams {
    std::size_t k = 0, n = 0, d = 0;
    std::size_t m = 0, m_prime = 0;        // m' = m + k
    std::size_t kappa = 0, gamma = 0;      // kappa = knd + kn + k, gamma = nk
    std::size_t lambda = 0, ell = 0;       // ell = lambda (m'+1)
    Rational eps, mu;                      // gap/range of f at arity k+1
    Rational target_cost;
    bool lambda_overridden = false;
};

struct MscsReduction {
    MscsInstance instance;  // k+1 strings, dummy s_0 first; target = params.target_cost
    MscsReductionParams params;
    RmccGraph source;
};

struct MscsReductionOverrides {
    std::optional<std::size_t> lambda;
};

/// Requires a valid graph with k >= 3 and a cost family that is grouping at
/// arity k+1.
MscsReduction rmcc_to_mscs(const RmccGraph& g, const CostFamily& f,
                           const MscsReductionOverrides& overrides = {});

/// delta_0 = 0 and delta_j = (i_j - 1)(m'+1)(gamma + j + 1).
ShiftVector witness_shift_from_clique(const MscsReduction& red, const MulticoloredClique& clique);

struct StructureReport {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Structural scan of the emitted strings: lengths, separator placement,
/// coding-value counts.
StructureReport check_mscs_structure(const MscsReduction& red);

struct AlignedShiftAudit {
    bool aligned = false;        // all shifts multiples of m'+1
    bool separators_heavy = false;  // every separator column has weight k+1
    bool obs_vertex_ok = false;  // no vertex-column of weight >= 3
    bool obs_edge_ok = false;    // no edge-column of weight >= 3
    std::size_t weight2_columns = 0;
    Rational cost;
};

AlignedShiftAudit audit_aligned_shift(const MscsReduction& red, const ShiftVector& delta);

// --------------------------------------------------------------------------
// f-MSCS[g] -> Circular Consensus String
// --------------------------------------------------------------------------

struct CcsPaddedInstance {
    std::vector<BinaryString> strings;  // 2k-2 strings; the last k-2 are all-ones
    std::optional<Rational> target;
    std::size_t source_k = 0;
};

/// Requires the source instance to carry the g cost table.
CcsPaddedInstance mscs_g_to_ccs(const MscsInstance& inst);

// --------------------------------------------------------------------------
// f-MSCS[phi] -> DTW-Mean
// --------------------------------------------------------------------------

struct DtwReductionParams {
    std::size_t k = 0, n = 0;
    std::size_t m = 0, r = 0;
    Rational source_target;  // c
    Rational eps;            // gap of phi_k
    Rational f0;             // f_k(0) = k/(k+1)
    Rational target_cost;    // c' = r(c + mn f_k(0)) + 3mnk
    bool m_overridden = false, r_overridden = false;
    bool outside_proof_regime = false;
};

struct SeriesBlock {
    std::size_t start = 0, len = 0;  // 1-based start
    bool value = false;
    bool coding = false;
    bool b_coding = false;
};

using BlockMap = std::vector<std::vector<SeriesBlock>>;  // one list per main series

struct DtwReduction {
    DtwInstance instance;  // k main series followed by the extra series (1)
    DtwReductionParams params;
    BlockMap blocks;
};

struct DtwReductionOverrides {
    std::optional<std::size_t> m, r;
    bool allow_small_k = false;  // permit k < 15 (marks the result outside proof regime)
};

/// Source strings are read over {A=0, B=1}; the instance must carry the phi
/// table at its arity.
DtwReduction mscs_phi_to_dtw(const MscsInstance& inst, const Rational& c,
                             const DtwReductionOverrides& overrides = {});

struct WitnessMean {
    TimeSeries mean;
    std::vector<WarpingPath> paths;  // k+1 fixed alignment paths
    Rational alignment_cost;         // cost of the fixed alignment (>= Fcost(mean))
    Rational regular_cost;           // = (r-1)(mn f_k(0) + cost_phi(delta)), asserted
    Rational extreme_cost;           // with least-squares extreme values
    Rational extreme_cost_value0;    // with extreme values forced to 0
};

/// Builds the explicit low-cost mean from a multiple circular shift of the
/// source strings (0 <= delta_j < n). Extreme values are set to the exact
/// least-squares average of their aligned elements, which can only lower the
/// cost relative to the value-0 variant.
WitnessMean witness_mean_from_shift(const DtwReduction& red, const ShiftVector& delta);

// --------------------------------------------------------------------------
// Per-position lower-bound audit
// --------------------------------------------------------------------------

struct PositionReport {
    std::size_t p = 0;
    std::size_t matched0 = 0, matched1 = 0;  // matched positions among main series
    std::size_t blocks0 = 0, blocks1 = 0;    // matched 0-/1-blocks
    std::size_t q = 0, g = 0;
    bool simple0 = false, simple1 = false, bad = false;
    Rational cost;  // C(p) at the per-position optimal value
    Rational lb;    // blocks0/(k+1) + q/((k+q+1)(k+1)) + g/100
    bool ok = false;
};

struct PositionAudit {
    std::vector<PositionReport> positions;
    bool all_ok = true;
};

/// Audits any candidate mean length with valid paths against the k main
/// series of a reduction output.
PositionAudit position_cost_audit(const DtwReduction& red, std::size_t mean_len,
                                  std::span<const WarpingPath> main_paths);

}  // namespace circon
