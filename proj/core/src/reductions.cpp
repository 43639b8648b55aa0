#include "circon/reductions.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace circon {

namespace {

BigInt rational_ceil(const Rational& x) {
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;
    if (num > 0 && num % den != 0) ++q;
    return q;
}

std::size_t to_size(const BigInt& x, const char* what) {
    if (x < 0 || x > std::numeric_limits<std::size_t>::max())
        throw InstanceError(std::string(what) + " does not fit in a machine word");
    return static_cast<std::size_t>(x);
}

}  // namespace

// --------------------------------------------------------------------------
// RMCC -> f-MSCS
// --------------------------------------------------------------------------

MscsReduction rmcc_to_mscs(const RmccGraph& g, const CostFamily& f,
                           const MscsReductionOverrides& overrides) {
    if (auto problems = validate(g); !problems.empty())
        throw InstanceError("graph rejected: " + problems.front());
    if (g.k < 3) throw InstanceError("construction needs at least 3 color classes");

    const std::size_t k = g.k, n = g.n, d = g.d, m = g.m();
    MscsReductionParams P;
    P.k = k;
    P.n = n;
    P.d = d;
    P.m = m;
    P.m_prime = m + k;
    P.kappa = k * n * d + k * n + k;
    P.gamma = n * k;

    CostTable table = f.tabulate(k + 1);
    validate_table(table);
    const DerivedCost dc = derive(table);
    if (!dc.is_grouping || !dc.gap)
        throw InstanceError("cost function '" + f.name + "' is not grouping at arity " +
                            std::to_string(k + 1));
    P.eps = *dc.gap;
    P.mu = dc.range;

    if (overrides.lambda) {
        P.lambda = *overrides.lambda;
        P.lambda_overridden = true;
        // The trailing filler of s_k has lambda - n(gamma+k+1) chunks.
        if (P.lambda < n * (P.gamma + k + 1) + 1)
            throw InstanceError("lambda override too small for the string layout");
    } else {
        const BigInt a = rational_ceil(Rational(P.kappa) * (2 * P.mu / P.eps + 1));
        const BigInt b = BigInt(2) * n * (P.gamma + k + 1);
        P.lambda = to_size(std::max(a, b) + 1, "lambda");
    }
    const std::size_t mp1 = P.m_prime + 1;
    P.ell = P.lambda * mp1;

    // Every string is lambda chunks of the shape (1 w) with |w| = m'.
    std::vector<BinaryString> strings;
    strings.reserve(k + 1);
    {
        std::vector<bool> bits(P.ell, false);
        for (std::size_t c = 0; c < P.lambda; ++c) bits[c * mp1] = true;
        for (std::size_t h = 0; h < k; ++h) bits[1 + h] = true;  // s_0 = 1 1^k 0^m (1 0^m')^(l-1)
        strings.emplace_back(std::move(bits));
    }
    for (std::size_t j = 1; j <= k; ++j) {
        std::vector<bool> bits(P.ell, false);
        for (std::size_t c = 0; c < P.lambda; ++c) bits[c * mp1] = true;
        for (std::size_t i = 1; i <= n; ++i) {
            // u_{j,i} = p_j q_{j,i} sits in chunk (i-1)(gamma+j+1).
            const std::size_t base = (i - 1) * (P.gamma + j + 1) * mp1 + 1;
            bits[base + (j - 1)] = true;
            for (std::size_t h = 0; h < m; ++h) {
                const auto& [a, b] = g.edges[h];
                if (a == VertexId{j, i} || b == VertexId{j, i}) bits[base + k + h] = true;
            }
        }
        strings.emplace_back(std::move(bits));
    }

    const Rational f0 = table.at_weight(0);
    const Rational& fp1 = dc.fprime_at(1);
    const Rational& fp2 = dc.fprime_at(2);
    const Rational& fpk1 = dc.fprime_at(k + 1);
    P.target_cost = Rational(P.ell) * f0 + Rational(P.lambda) * (k + 1) * fpk1 +
                    Rational(2 * (k + k * (k - 1) / 2)) * (fp2 - fp1) + Rational(P.kappa) * fp1;

    MscsReduction red;
    red.instance = MscsInstance{std::move(strings), std::move(table), P.target_cost};
    red.params = P;
    red.source = g;
    return red;
}

ShiftVector witness_shift_from_clique(const MscsReduction& red, const MulticoloredClique& clique) {
    const auto& P = red.params;
    if (clique.indices.size() != P.k) throw InstanceError("clique must pick one vertex per color");
    if (!is_multicolored_clique(red.source, clique))
        throw InstanceError("transversal is not a clique of the source graph");
    ShiftVector delta;
    delta.deltas.assign(P.k + 1, 0);
    for (std::size_t j = 1; j <= P.k; ++j)
        delta.deltas[j] =
            ((clique.indices[j - 1] - 1) * (P.m_prime + 1) * (P.gamma + j + 1)) % red.params.ell;
    return delta;
}

StructureReport check_mscs_structure(const MscsReduction& red) {
    const auto& P = red.params;
    StructureReport rep;
    auto flag = [&](std::string msg) {
        rep.ok = false;
        rep.problems.push_back(std::move(msg));
    };
    if (red.instance.strings.size() != P.k + 1) flag("expected k+1 strings");
    const std::size_t mp1 = P.m_prime + 1;
    std::size_t coding_total = 0;
    for (std::size_t j = 0; j < red.instance.strings.size(); ++j) {
        const auto& s = red.instance.strings[j];
        if (s.length() != P.ell) {
            flag("string " + std::to_string(j) + " has wrong length");
            continue;
        }
        std::size_t separators = 0;
        for (std::size_t c = 0; c < P.lambda; ++c)
            if (s.at(c * mp1 + 1)) ++separators;
        if (separators != P.lambda) flag("string " + std::to_string(j) + " misses separators");
        const std::size_t coding = s.popcount() - separators;
        coding_total += coding;
        const std::size_t expect = j == 0 ? P.k : P.n * (1 + P.d);
        if (coding != expect)
            flag("string " + std::to_string(j) + " has " + std::to_string(coding) +
                 " coding ones, expected " + std::to_string(expect));
    }
    if (coding_total != P.kappa) flag("total coding count differs from kappa");
    return rep;
}

AlignedShiftAudit audit_aligned_shift(const MscsReduction& red, const ShiftVector& delta) {
    const auto& P = red.params;
    const auto& strings = red.instance.strings;
    if (delta.size() != strings.size()) throw InstanceError("shift vector arity mismatch");
    const std::size_t mp1 = P.m_prime + 1;

    AlignedShiftAudit audit;
    audit.aligned = true;
    for (std::size_t dj : delta.deltas)
        if (dj % mp1 != 0) audit.aligned = false;

    std::vector<std::uint16_t> weight(P.ell, 0);
    for (std::size_t j = 0; j < strings.size(); ++j) {
        const auto& bits = strings[j].bits();
        const std::size_t dj = delta.deltas[j] % P.ell;
        for (std::size_t i = 0; i < P.ell; ++i) weight[i] += bits[(i + dj) % P.ell];
    }

    audit.separators_heavy = true;
    audit.obs_vertex_ok = true;
    audit.obs_edge_ok = true;
    std::vector<std::size_t> hist(strings.size() + 1, 0);
    for (std::size_t i = 0; i < P.ell; ++i) {
        const std::size_t w = weight[i];
        ++hist[w];
        const std::size_t bi = i % mp1;  // block index of 1-based column i+1
        if (bi == 0) {
            if (w != P.k + 1) audit.separators_heavy = false;
        } else {
            if (w == 2) ++audit.weight2_columns;
            if (w >= 3) (bi <= P.k ? audit.obs_vertex_ok : audit.obs_edge_ok) = false;
        }
    }
    audit.cost = 0;
    for (std::size_t w = 0; w < hist.size(); ++w)
        if (hist[w]) audit.cost += Rational(hist[w]) * red.instance.cost.at_weight(w);
    return audit;
}

// --------------------------------------------------------------------------
// f-MSCS[g] -> Circular Consensus String
// --------------------------------------------------------------------------

CcsPaddedInstance mscs_g_to_ccs(const MscsInstance& inst) {
    inst.validate();
    const std::size_t k = inst.k();
    if (k < 2) throw InstanceError("padding needs at least 2 strings");
    const CostTable expect = tabulate_builtin(Builtin::g, k);
    if (inst.cost.values != expect.values)
        throw InstanceError("source instance must carry the g cost table");

    CcsPaddedInstance out;
    out.source_k = k;
    out.target = inst.target;
    out.strings = inst.strings;
    const BinaryString ones(std::vector<bool>(inst.n(), true));
    for (std::size_t j = k; j < 2 * k - 2; ++j) out.strings.push_back(ones);
    return out;
}

// --------------------------------------------------------------------------
// f-MSCS[phi] -> DTW-Mean
// --------------------------------------------------------------------------

DtwReduction mscs_phi_to_dtw(const MscsInstance& inst, const Rational& c,
                             const DtwReductionOverrides& overrides) {
    inst.validate();
    const std::size_t k = inst.k(), n = inst.n();
    if (k < 2) throw InstanceError("construction needs at least 2 strings");
    const CostTable phi = tabulate_builtin(Builtin::phi, k);
    if (inst.cost.values != phi.values)
        throw InstanceError("source instance must carry the phi cost table");
    if (k < 15 && !overrides.allow_small_k)
        throw InstanceError("hardness argument assumes k >= 15 (pass allow_small_k to proceed)");

    DtwReductionParams P;
    P.k = k;
    P.n = n;
    P.source_target = c;
    P.eps = *derive(phi).gap;
    P.f0 = Rational(k, k + 1);
    P.outside_proof_regime = k < 15;
    const Rational ce = c + P.eps;

    if (overrides.m) {
        P.m = *overrides.m;
        P.m_overridden = true;
        P.outside_proof_regime = true;
    } else {
        P.m = to_size(rational_ceil(Rational(1600) * k * ce), "m");
    }
    if (P.m == 0) throw InstanceError("m must be positive");
    if (overrides.r) {
        P.r = *overrides.r;
        P.r_overridden = true;
        P.outside_proof_regime = true;
    } else {
        P.r = to_size(rational_ceil((Rational(3 * P.m * n * k) + 2 * ce) / P.eps) + 1, "r");
    }
    if (P.r == 0) throw InstanceError("r must be positive");
    P.target_cost = Rational(P.r) * (c + Rational(P.m * n) * P.f0) + Rational(3 * P.m * n * k);

    BigInt total = 0;
    for (const auto& s : inst.strings)
        total += BigInt(P.r) * (BigInt(2) * P.m * n + s.popcount());
    if (total > 50'000'000)
        throw GuardExceeded("output series would hold " + total.str() +
                            " elements; use overrides for desk-scale instances");

    DtwReduction red;
    red.params = P;
    red.blocks.resize(k);
    const Rational one = 1, zero = 0;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Rational> vals;
        auto& blocks = red.blocks[j];
        auto push_block = [&](bool value, std::size_t len, bool coding, bool b_coding) {
            blocks.push_back({vals.size() + 1, len, value, coding, b_coding});
            vals.insert(vals.end(), len, value ? one : zero);
        };
        for (std::size_t copy = 0; copy < P.r; ++copy)
            for (std::size_t i = 1; i <= n; ++i) {
                const bool B = inst.strings[j].at(i);  // A = 0, B = 1
                push_block(true, 1, false, false);
                push_block(false, B ? 2 : 1, true, B);
                for (std::size_t h = 1; h < P.m; ++h) {
                    push_block(true, 1, false, false);
                    push_block(false, 1, false, false);
                }
            }
        red.instance.series.emplace_back(std::move(vals));
    }
    red.instance.series.emplace_back(std::vector<Rational>{one});
    red.instance.target = P.target_cost;
    return red;
}

WitnessMean witness_mean_from_shift(const DtwReduction& red, const ShiftVector& delta) {
    const auto& P = red.params;
    if (delta.size() != P.k) throw InstanceError("shift vector must have one entry per string");
    const std::size_t N = 2 * P.m * P.n * (P.r - 1) + 2;

    std::vector<WarpingPath> paths;
    paths.reserve(P.k + 1);
    for (std::size_t j = 0; j < P.k; ++j) {
        const std::size_t dj = delta.deltas[j] % P.n;
        const std::size_t off = 2 * dj * P.m;
        const auto& blocks = red.blocks[j];
        WarpingPath path;
        auto match_block = [&](std::size_t b, std::size_t v) {  // 1-based block
            const auto& blk = blocks[b - 1];
            for (std::size_t i = blk.start; i < blk.start + blk.len; ++i)
                path.pairs.emplace_back(i, v);
        };
        for (std::size_t b = 1; b <= std::max<std::size_t>(off, 1); ++b) match_block(b, 1);
        for (std::size_t v = 2; v + 1 <= N; ++v) match_block((v - 1) + off, v);
        for (std::size_t b = off + 2 * P.m * P.n * (P.r - 1) + 1; b <= blocks.size(); ++b)
            match_block(b, N);
        if (!path.valid_for(red.instance.series[j].length(), N))
            throw InstanceError("constructed witness path is not a warping path");
        paths.push_back(std::move(path));
    }
    {
        WarpingPath extra;
        for (std::size_t v = 1; v <= N; ++v) extra.pairs.emplace_back(1, v);
        paths.push_back(std::move(extra));
    }

    std::span<const TimeSeries> series(red.instance.series);
    WitnessMean w{optimal_values_for_alignment(paths, series, N), std::move(paths), 0, 0, 0, 0};

    std::vector<Rational> pos_cost(N + 1, Rational(0));
    Rational extreme0 = 0;
    for (std::size_t j = 0; j <= P.k; ++j)
        for (const auto& [i, v] : w.paths[j].pairs) {
            const Rational diff = series[j].at(i) - w.mean.at(v);
            pos_cost[v] += diff * diff;
            if (v == 1 || v == N) extreme0 += series[j].at(i) * series[j].at(i);
        }
    w.regular_cost = 0;
    for (std::size_t v = 2; v + 1 <= N; ++v) w.regular_cost += pos_cost[v];
    w.extreme_cost = pos_cost[1] + pos_cost[N];
    w.extreme_cost_value0 = extreme0;
    w.alignment_cost = w.regular_cost + w.extreme_cost;
    if (w.alignment_cost != alignment_cost(w.mean, series, w.paths))
        throw InstanceError("witness cost bookkeeping mismatch");

    // The regular positions reproduce (r-1) copies of the shifted source
    // columns on top of the background cost.
    Rational shift_cost = 0;
    const CostTable phi = tabulate_builtin(Builtin::phi, P.k);
    for (std::size_t col = 0; col < P.n; ++col) {
        std::size_t weight = 0;
        for (std::size_t j = 0; j < P.k; ++j) {
            const std::size_t i = (col + delta.deltas[j]) % P.n;
            // Coding block of segment i+1 in the first copy.
            weight += red.blocks[j][2 * P.m * i + 1].b_coding;
        }
        shift_cost += phi.at_weight(weight);
    }
    const Rational expect =
        Rational(P.r - 1) * (Rational(P.m * P.n) * P.f0 + shift_cost);
    if (w.regular_cost != expect)
        throw InstanceError("regular-position cost differs from the closed form");
    return w;
}

// --------------------------------------------------------------------------
// Per-position lower-bound audit
// --------------------------------------------------------------------------

PositionAudit position_cost_audit(const DtwReduction& red, std::size_t mean_len,
                                  std::span<const WarpingPath> main_paths) {
    const auto& P = red.params;
    if (main_paths.size() != P.k) throw InstanceError("expected one path per main series");
    for (std::size_t j = 0; j < P.k; ++j)
        if (!main_paths[j].valid_for(red.instance.series[j].length(), mean_len))
            throw InstanceError("path " + std::to_string(j) + " is not a warping path");

    PositionAudit audit;
    audit.positions.resize(mean_len);
    for (std::size_t p = 1; p <= mean_len; ++p) audit.positions[p - 1].p = p;

    // elem_pos[j][i-1] = contiguous mean positions matched to x_j[i];
    // block_of[j][i-1] = 0-based block holding x_j[i].
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> elem_pos(P.k);
    std::vector<std::vector<std::size_t>> block_of(P.k);
    for (std::size_t j = 0; j < P.k; ++j) {
        const std::size_t len = red.instance.series[j].length();
        elem_pos[j].assign(len, {mean_len + 1, 0});
        for (const auto& [i, v] : main_paths[j].pairs) {
            auto& [lo, hi] = elem_pos[j][i - 1];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        block_of[j].resize(len);
        for (std::size_t b = 0; b < red.blocks[j].size(); ++b) {
            const auto& blk = red.blocks[j][b];
            for (std::size_t i = blk.start; i < blk.start + blk.len; ++i) block_of[j][i - 1] = b;
        }
    }

    std::vector<std::size_t> rj_max(mean_len + 1, 0);
    for (std::size_t j = 0; j < P.k; ++j) {
        std::vector<std::pair<std::size_t, std::size_t>> range(mean_len + 1,
                                                               {block_of[j].size(), 0});
        for (const auto& [i, v] : main_paths[j].pairs) {
            auto& rep = audit.positions[v - 1];
            red.instance.series[j].at(i) == 0 ? ++rep.matched0 : ++rep.matched1;
            auto& [blo, bhi] = range[v];
            blo = std::min(blo, block_of[j][i - 1]);
            bhi = std::max(bhi, block_of[j][i - 1]);
        }
        for (std::size_t p = 1; p <= mean_len; ++p)
            rj_max[p] = std::max(rj_max[p], range[p].second - range[p].first + 1);
    }

    for (auto& rep : audit.positions) {
        rep.simple0 = rep.matched1 == 0;
        rep.simple1 = rep.matched0 == 0;
        rep.bad = !rep.simple0 && !rep.simple1;
        rep.g = rep.bad ? std::max<std::size_t>(1, rj_max[rep.p] - 1) : 0;
        rep.cost = Rational(rep.matched0 * (rep.matched1 + 1),
                            rep.matched0 + rep.matched1 + 1);
    }

    for (std::size_t j = 0; j < P.k; ++j)
        for (const auto& blk : red.blocks[j]) {
            std::size_t pmin = mean_len + 1, pmax = 0;   // positions matched to blk
            std::size_t flo = 1, fhi = mean_len;         // positions fully matched to blk
            for (std::size_t i = blk.start; i < blk.start + blk.len; ++i) {
                const auto& [lo, hi] = elem_pos[j][i - 1];
                pmin = std::min(pmin, lo);
                pmax = std::max(pmax, hi);
                flo = std::max(flo, lo);
                fhi = std::min(fhi, hi);
            }
            for (std::size_t p = pmin; p <= pmax; ++p)
                blk.value ? ++audit.positions[p - 1].blocks1 : ++audit.positions[p - 1].blocks0;

            std::size_t assigned = 0;  // 1-based mean position, 0 = none
            for (std::size_t p = flo; p <= fhi && !assigned; ++p)
                if (!audit.positions[p - 1].bad) assigned = p;
            for (std::size_t p = pmin; p <= pmax && !assigned; ++p)
                if (audit.positions[p - 1].bad) assigned = p;
            if (assigned && blk.b_coding) ++audit.positions[assigned - 1].q;
        }

    for (auto& rep : audit.positions) {
        rep.lb = Rational(rep.blocks0, P.k + 1) +
                 Rational(rep.q, (P.k + rep.q + 1) * (P.k + 1)) + Rational(rep.g, 100);
        rep.ok = rep.cost >= rep.lb;
        audit.all_ok = audit.all_ok && rep.ok;
    }
    return audit;
}

}  // namespace circon
