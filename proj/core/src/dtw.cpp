#include "circon/dtw.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace circon {

bool WarpingPath::valid_for(std::size_t m, std::size_t n) const {
    if (pairs.empty()) return false;
    if (pairs.front() != std::pair<std::size_t, std::size_t>{1, 1}) return false;
    if (pairs.back() != std::pair<std::size_t, std::size_t>{m, n}) return false;
    for (std::size_t l = 0; l + 1 < pairs.size(); ++l) {
        const auto di = pairs[l + 1].first - pairs[l].first;
        const auto dj = pairs[l + 1].second - pairs[l].second;
        if (pairs[l + 1].first < pairs[l].first || pairs[l + 1].second < pairs[l].second)
            return false;
        if (!((di == 1 && dj == 0) || (di == 0 && dj == 1) || (di == 1 && dj == 1)))
            return false;
    }
    return true;
}

std::pair<Rational, WarpingPath> dtw_sq(const TimeSeries& x, const TimeSeries& y) {
    const std::size_t m = x.length(), n = y.length();
    std::vector<std::vector<Rational>> dp(m + 1, std::vector<Rational>(n + 1));
    std::vector<std::vector<char>> ok(m + 1, std::vector<char>(n + 1, 0));
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            Rational d = x.at(i) - y.at(j);
            d *= d;
            if (i == 1 && j == 1) {
                dp[i][j] = d;
                ok[i][j] = 1;
                continue;
            }
            bool set = false;
            Rational best;
            auto consider = [&](std::size_t pi, std::size_t pj) {
                if (pi == 0 || pj == 0 || !ok[pi][pj]) return;
                if (!set || dp[pi][pj] < best) {
                    best = dp[pi][pj];
                    set = true;
                }
            };
            consider(i - 1, j - 1);
            consider(i - 1, j);
            consider(i, j - 1);
            dp[i][j] = best + d;
            ok[i][j] = 1;
        }
    }
    // Backtrack, preferring diagonal, then row, then column predecessors.
    WarpingPath path;
    std::size_t i = m, j = n;
    path.pairs.emplace_back(i, j);
    while (i > 1 || j > 1) {
        const Rational here = dp[i][j];
        Rational d = x.at(i) - y.at(j);
        d *= d;
        const Rational need = here - d;
        if (i > 1 && j > 1 && dp[i - 1][j - 1] == need) {
            --i;
            --j;
        } else if (i > 1 && dp[i - 1][j] == need) {
            --i;
        } else {
            --j;
        }
        path.pairs.emplace_back(i, j);
    }
    std::reverse(path.pairs.begin(), path.pairs.end());
    return {dp[m][n], path};
}

BigInt count_warping_paths(std::size_t m, std::size_t n) {
    // Delannoy D(m-1, n-1)
    std::vector<std::vector<BigInt>> d(m, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < m; ++i) d[i][0] = 1;
    for (std::size_t j = 0; j < n; ++j) d[0][j] = 1;
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 1; j < n; ++j)
            d[i][j] = d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1];
    return d[m - 1][n - 1];
}

namespace {

void enumerate_rec(std::size_t m, std::size_t n, WarpingPath& path,
                   const std::function<void(const WarpingPath&)>& fn) {
    const auto [i, j] = path.pairs.back();
    if (i == m && j == n) {
        fn(path);
        return;
    }
    auto step = [&](std::size_t ni, std::size_t nj) {
        if (ni > m || nj > n) return;
        path.pairs.emplace_back(ni, nj);
        enumerate_rec(m, n, path, fn);
        path.pairs.pop_back();
    };
    step(i + 1, j + 1);
    step(i + 1, j);
    step(i, j + 1);
}

}  // namespace

void enumerate_paths(std::size_t m, std::size_t n,
                     const std::function<void(const WarpingPath&)>& fn, std::uint64_t guard) {
    if (m < 1 || n < 1) throw InstanceError("path order must be at least 1x1");
    if (count_warping_paths(m, n) > guard)
        throw GuardExceeded("warping path count exceeds guard for order " + std::to_string(m) +
                            "x" + std::to_string(n));
    WarpingPath path;
    path.pairs.emplace_back(1, 1);
    enumerate_rec(m, n, path, fn);
}

Rational fcost(const TimeSeries& z, std::span<const TimeSeries> inputs) {
    Rational total = 0;
    for (const TimeSeries& x : inputs) total += dtw_sq(z, x).first;
    return total;
}

Rational alignment_cost(const TimeSeries& z, std::span<const TimeSeries> inputs,
                        std::span<const WarpingPath> paths) {
    if (inputs.size() != paths.size()) throw InstanceError("one path per input required");
    Rational total = 0;
    for (std::size_t j = 0; j < inputs.size(); ++j) {
        if (!paths[j].valid_for(inputs[j].length(), z.length()))
            throw InstanceError("warping path order mismatch");
        for (const auto& [i, v] : paths[j].pairs) {
            Rational d = inputs[j].at(i) - z.at(v);
            total += d * d;
        }
    }
    return total;
}

TimeSeries optimal_values_for_alignment(std::span<const WarpingPath> paths,
                                        std::span<const TimeSeries> inputs,
                                        std::size_t mean_len) {
    if (inputs.size() != paths.size()) throw InstanceError("one path per input required");
    std::vector<Rational> sums(mean_len, Rational(0));
    std::vector<std::size_t> counts(mean_len, 0);
    for (std::size_t j = 0; j < inputs.size(); ++j) {
        if (!paths[j].valid_for(inputs[j].length(), mean_len))
            throw InstanceError("warping path order mismatch");
        for (const auto& [i, v] : paths[j].pairs) {
            sums[v - 1] += inputs[j].at(i);
            ++counts[v - 1];
        }
    }
    std::vector<Rational> out(mean_len);
    for (std::size_t v = 0; v < mean_len; ++v) out[v] = sums[v] / Rational(counts[v]);
    return TimeSeries(std::move(out));
}

// ---------------------------------------------------------------------------
// Exact mean: DP over tuples of per-series alignment interval endpoints.
//
// A warping path between x_j and a mean z partitions z's positions into
// nonempty contiguous intervals of x_j; consecutive intervals overlap in at
// most one element. State after mean position v: the tuple of interval end
// indices.
// ---------------------------------------------------------------------------

namespace {

struct MixedRadix {
    std::vector<std::size_t> lens;
    std::size_t states = 1;

    explicit MixedRadix(std::vector<std::size_t> l) : lens(std::move(l)) {
        for (std::size_t n : lens) states *= n;
    }
    std::size_t encode(const std::vector<std::size_t>& digits1based) const {
        std::size_t s = 0;
        for (std::size_t j = 0; j < lens.size(); ++j) s = s * lens[j] + (digits1based[j] - 1);
        return s;
    }
    std::vector<std::size_t> decode(std::size_t s) const {
        std::vector<std::size_t> d(lens.size());
        for (std::size_t j = lens.size(); j-- > 0;) {
            d[j] = s % lens[j] + 1;
            s /= lens[j];
        }
        return d;
    }
};

struct Layer {
    std::vector<char> reach;
    std::vector<Rational> cost;
    std::vector<std::size_t> prev_state;
    std::vector<std::size_t> start_enc;

    explicit Layer(std::size_t states)
        : reach(states, 0), cost(states), prev_state(states, 0), start_enc(states, 0) {}
};

constexpr std::size_t kNoPrev = std::numeric_limits<std::size_t>::max();

}  // namespace

MeanSolution solve_mean_exact(std::span<const TimeSeries> inputs, const MeanOptions& opts) {
    if (inputs.empty()) throw InstanceError("mean of zero series is undefined");
    const std::size_t k = inputs.size();
    std::vector<std::size_t> lens(k);
    std::size_t total_len = 0;
    for (std::size_t j = 0; j < k; ++j) {
        lens[j] = inputs[j].length();
        total_len += lens[j];
    }
    const std::size_t max_len = opts.max_len.value_or(total_len);
    if (max_len < 1) throw InstanceError("max_len must be at least 1");

    const MixedRadix radix(lens);
    {
        BigInt work = max_len;
        work *= radix.states;
        for (std::size_t n : lens) work *= 2 * n;
        if (work > opts.max_transitions)
            throw GuardExceeded("mean DP state space exceeds configured transition guard");
    }

    // Prefix sums of values and squared values, 1-based.
    std::vector<std::vector<Rational>> ps(k), pss(k);
    for (std::size_t j = 0; j < k; ++j) {
        ps[j].assign(lens[j] + 1, Rational(0));
        pss[j].assign(lens[j] + 1, Rational(0));
        for (std::size_t i = 1; i <= lens[j]; ++i) {
            const Rational& v = inputs[j].at(i);
            ps[j][i] = ps[j][i - 1] + v;
            pss[j][i] = pss[j][i - 1] + v * v;
        }
    }

    auto interval_stats = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                              Rational& pos_cost) {
        std::size_t cnt = 0;
        Rational s = 0, ss = 0;
        for (std::size_t j = 0; j < k; ++j) {
            cnt += b[j] - a[j] + 1;
            s += ps[j][b[j]] - ps[j][a[j] - 1];
            ss += pss[j][b[j]] - pss[j][a[j] - 1];
        }
        pos_cost = ss - s * s / Rational(cnt);
    };

    std::vector<Layer> layers;
    layers.reserve(max_len);

    // Layer for v = 1: intervals [1, b_j].
    {
        Layer first(radix.states);
        std::vector<std::size_t> a(k, 1), b(k, 1);
        std::function<void(std::size_t)> fill = [&](std::size_t j) {
            if (j == k) {
                Rational c;
                interval_stats(a, b, c);
                const std::size_t s = radix.encode(b);
                first.reach[s] = 1;
                first.cost[s] = c;
                first.prev_state[s] = kNoPrev;
                first.start_enc[s] = radix.encode(a);
                return;
            }
            for (b[j] = 1; b[j] <= lens[j]; ++b[j]) fill(j + 1);
            b[j] = 1;
        };
        fill(0);
        layers.push_back(std::move(first));
    }

    const std::size_t full_state = radix.states - 1;  // all digits at max

    for (std::size_t v = 1; v < max_len; ++v) {
        Layer next(radix.states);
        const Layer& cur = layers.back();
        std::vector<std::size_t> b(k), a(k), nb(k);
        for (std::size_t s = 0; s < radix.states; ++s) {
            if (!cur.reach[s]) continue;
            b = radix.decode(s);
            const Rational& base = cur.cost[s];
            std::function<void(std::size_t)> go = [&](std::size_t j) {
                if (j == k) {
                    Rational c;
                    interval_stats(a, nb, c);
                    c += base;
                    const std::size_t t = radix.encode(nb);
                    if (!next.reach[t] || c < next.cost[t]) {
                        next.reach[t] = 1;
                        next.cost[t] = std::move(c);
                        next.prev_state[t] = s;
                        next.start_enc[t] = radix.encode(a);
                    }
                    return;
                }
                for (std::size_t start : {b[j], b[j] + 1}) {
                    if (start > lens[j]) continue;
                    a[j] = start;
                    for (nb[j] = start; nb[j] <= lens[j]; ++nb[j]) go(j + 1);
                }
            };
            go(0);
        }
        layers.push_back(std::move(next));
    }

    // Pick the cheapest completed layer; ties go to the shortest mean.
    std::optional<std::size_t> best_v;
    for (std::size_t v = 0; v < layers.size(); ++v) {
        if (!layers[v].reach[full_state]) continue;
        if (!best_v || layers[v].cost[full_state] < layers[*best_v].cost[full_state]) best_v = v;
    }
    if (!best_v) throw InstanceError("no feasible mean within length cap");  // cannot happen

    const std::size_t len = *best_v + 1;
    std::vector<std::vector<std::size_t>> starts(len), ends(len);
    std::size_t state = full_state;
    for (std::size_t v = len; v-- > 0;) {
        ends[v] = radix.decode(state);
        starts[v] = radix.decode(layers[v].start_enc[state]);
        state = layers[v].prev_state[state];
    }

    MeanSolution sol{TimeSeries(std::vector<Rational>(len, Rational(0))),
                     layers[*best_v].cost[full_state],
                     {},
                     len == max_len};
    sol.paths.resize(k);
    for (std::size_t v = 0; v < len; ++v) {
        std::size_t cnt = 0;
        Rational s = 0;
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = starts[v][j]; i <= ends[v][j]; ++i) {
                sol.paths[j].pairs.emplace_back(i, v + 1);
                s += inputs[j].at(i);
                ++cnt;
            }
        }
        sol.mean.values[v] = s / Rational(cnt);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: enumerate path tuples, complete by least squares.
// Integer-scaled arithmetic keeps the inner loop off big rationals.
// ---------------------------------------------------------------------------

namespace {

struct PathStats {
    std::vector<std::int64_t> cnt, sum, sumsq;  // per mean position
};

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

Rational rational_from_int128(__int128 v) {
    const bool neg = v < 0;
    const auto uv = static_cast<unsigned __int128>(neg ? -v : v);
    BigInt hi = static_cast<std::uint64_t>(uv >> 64);
    BigInt out = (hi << 64) + static_cast<std::uint64_t>(uv);
    if (neg) out = -out;
    return Rational(out);
}

}  // namespace

MeanSolution brute_force_mean_oracle(std::span<const TimeSeries> inputs, std::size_t max_len,
                                     std::uint64_t max_tuples) {
    if (inputs.empty()) throw InstanceError("mean of zero series is undefined");
    const std::size_t k = inputs.size();
    std::size_t total_len = 0;
    for (const auto& x : inputs) total_len += x.length();
    if (total_len > 30)
        throw GuardExceeded("oracle guard: total input length above 30");

    // Scale all values to integers.
    BigInt scale = 1;
    for (const auto& x : inputs)
        for (const Rational& v : x.values) scale = lcm(scale, denominator(v));
    std::vector<std::vector<std::int64_t>> scaled(k);
    for (std::size_t j = 0; j < k; ++j)
        for (const Rational& v : inputs[j].values) {
            BigInt iv = numerator(v) * (scale / denominator(v));
            if (abs(iv) > 1'000'000)
                throw GuardExceeded("oracle guard: scaled values above 10^6");
            scaled[j].push_back(iv.convert_to<std::int64_t>());
        }

    // D = lcm(1..total_len): every per-position element count divides it.
    BigInt dbig = 1;
    for (std::size_t c = 2; c <= total_len; ++c) dbig = lcm(dbig, BigInt(c));
    const auto d_over = [&](std::size_t c) {
        return (dbig / c).convert_to<std::int64_t>();
    };
    std::vector<std::int64_t> dq(total_len + 1, 0);
    for (std::size_t c = 1; c <= total_len; ++c) dq[c] = d_over(c);

    {
        BigInt tuples = 0;
        for (std::size_t len = 1; len <= max_len; ++len) {
            BigInt t = 1;
            for (const auto& x : inputs) t *= count_warping_paths(x.length(), len);
            tuples += t;
        }
        if (tuples > max_tuples) throw GuardExceeded("oracle guard: too many path tuples");
    }

    bool have_best = false;
    __int128 best_cost = 0;
    std::size_t best_len = 0;
    std::vector<std::size_t> best_tuple;

    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<PathStats>> stats(k);
        for (std::size_t j = 0; j < k; ++j) {
            enumerate_paths(inputs[j].length(), len, [&](const WarpingPath& p) {
                PathStats st;
                st.cnt.assign(len, 0);
                st.sum.assign(len, 0);
                st.sumsq.assign(len, 0);
                for (const auto& [i, v] : p.pairs) {
                    const std::int64_t val = scaled[j][i - 1];
                    ++st.cnt[v - 1];
                    st.sum[v - 1] += val;
                    st.sumsq[v - 1] += val * val;
                }
                stats[j].push_back(std::move(st));
            });
        }

        std::vector<std::int64_t> acc_cnt(len, 0), acc_sum(len, 0), acc_ss(len, 0);
        std::vector<std::size_t> tuple(k, 0);
        std::function<void(std::size_t)> go = [&](std::size_t j) {
            if (j == k) {
                __int128 cost = 0;
                for (std::size_t v = 0; v < len; ++v) {
                    const std::int64_t c = acc_cnt[v];
                    const __int128 term =
                        static_cast<__int128>(c) * acc_ss[v] -
                        static_cast<__int128>(acc_sum[v]) * acc_sum[v];
                    cost += term * dq[static_cast<std::size_t>(c)];
                }
                if (!have_best || cost < best_cost) {
                    have_best = true;
                    best_cost = cost;
                    best_len = len;
                    best_tuple = tuple;
                }
                return;
            }
            for (std::size_t idx = 0; idx < stats[j].size(); ++idx) {
                const PathStats& st = stats[j][idx];
                tuple[j] = idx;
                for (std::size_t v = 0; v < len; ++v) {
                    acc_cnt[v] += st.cnt[v];
                    acc_sum[v] += st.sum[v];
                    acc_ss[v] += st.sumsq[v];
                }
                go(j + 1);
                for (std::size_t v = 0; v < len; ++v) {
                    acc_cnt[v] -= st.cnt[v];
                    acc_sum[v] -= st.sum[v];
                    acc_ss[v] -= st.sumsq[v];
                }
            }
        };
        go(0);
    }

    // Rebuild the winning tuple's paths and complete the alignment exactly.
    std::vector<WarpingPath> paths(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t idx = 0;
        enumerate_paths(inputs[j].length(), best_len, [&](const WarpingPath& p) {
            if (idx++ == best_tuple[j]) paths[j] = p;
        });
    }
    TimeSeries mean = optimal_values_for_alignment(paths, inputs, best_len);
    Rational cost = alignment_cost(mean, inputs, paths);

    // Cross-check the scaled accumulation against the exact recomputation.
    if (cost * Rational(dbig * scale * scale) != rational_from_int128(best_cost))
        throw InstanceError("oracle internal accounting mismatch");
    (void)abs128;

    return MeanSolution{std::move(mean), std::move(cost), std::move(paths),
                        best_len == max_len};
}

}  // namespace circon
