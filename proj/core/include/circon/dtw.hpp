#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circon/rational.hpp"

namespace circon {

struct TimeSeries {
    std::vector<Rational> values;

    explicit TimeSeries(std::vector<Rational> v) : values(std::move(v)) {
        if (values.empty()) throw InstanceError("time series must be nonempty");
    }
    std::size_t length() const { return values.size(); }
    const Rational& at(std::size_t i) const { return values[i - 1]; }  // 1-based

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// Monotone index-pair sequence from (1,1) to (m,n), steps (1,0),(0,1),(1,1).
struct WarpingPath {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    bool valid_for(std::size_t m, std::size_t n) const;
};

struct DtwInstance {
    std::vector<TimeSeries> series;
    std::optional<Rational> target;
};

struct MeanSolution {
    TimeSeries mean;
    Rational cost;
    std::vector<WarpingPath> paths;  // paths[j]: order (|x_j|, |mean|)
    bool hit_length_cap = false;
};

/// Squared dtw-distance and one optimal path, by the standard O(mn) dynamic
/// program. Squares keep everything rational.
std::pair<Rational, WarpingPath> dtw_sq(const TimeSeries& x, const TimeSeries& y);

/// Number of warping paths of order m x n (Delannoy number D(m-1, n-1)).
BigInt count_warping_paths(std::size_t m, std::size_t n);

/// Calls `fn` once for every warping path of order m x n, in a fixed
/// deterministic order. Throws GuardExceeded when the path count exceeds
/// `guard`.
void enumerate_paths(std::size_t m, std::size_t n,
                     const std::function<void(const WarpingPath&)>& fn,
                     std::uint64_t guard = 2'000'000);

Rational fcost(const TimeSeries& z, std::span<const TimeSeries> inputs);

/// Total squared deviation of the fixed alignment (no re-optimization of
/// paths).
Rational alignment_cost(const TimeSeries& z, std::span<const TimeSeries> inputs,
                        std::span<const WarpingPath> paths);

/// Least-squares completion of a fixed alignment: position v of the mean gets
/// the arithmetic mean of every input element aligned to it.
TimeSeries optimal_values_for_alignment(std::span<const WarpingPath> paths,
                                        std::span<const TimeSeries> inputs,
                                        std::size_t mean_len);

struct MeanOptions {
    std::optional<std::size_t> max_len;  // default: sum of input lengths
    std::uint64_t max_transitions = 50'000'000;
};

/// Fcost-minimizing mean of length <= max_len, by dynamic programming over
/// tuples of per-series alignment interval endpoints. Ties resolve to the
/// shortest mean, then by the canonical (deterministic) transition order.
MeanSolution solve_mean_exact(std::span<const TimeSeries> inputs, const MeanOptions& opts = {});

/// Independent oracle: enumerates every mean length and every tuple of
/// warping paths, completing each fixed alignment by least squares. Tiny
/// sizes only.
MeanSolution brute_force_mean_oracle(std::span<const TimeSeries> inputs, std::size_t max_len,
                                     std::uint64_t max_tuples = 100'000'000);

}  // namespace circon
