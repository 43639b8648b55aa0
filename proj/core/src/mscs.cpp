#include "circon/mscs.hpp"

#include <cstdint>
#include <map>
#include <thread>

namespace circon {

std::size_t MscsInstance::n() const { return common_length(strings); }

void MscsInstance::validate() const {
    const std::size_t len = common_length(strings);
    (void)len;
    validate_table(cost);
    if (cost.k != strings.size())
        throw InstanceError("cost table arity " + std::to_string(cost.k) +
                            " does not match string count " + std::to_string(strings.size()));
}

Rational cost_of_shift(const MscsInstance& inst, const ShiftVector& delta) {
    inst.validate();
    const std::size_t n = inst.n();
    Rational total = 0;
    for (std::size_t i = 1; i <= n; ++i)
        total += eval_local(inst.cost, column_at(inst.strings, delta, i));
    return total;
}

std::vector<std::size_t> weight_histogram(const MscsInstance& inst, const ShiftVector& delta) {
    inst.validate();
    const std::size_t n = inst.n();
    std::vector<std::size_t> hist(inst.k() + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) ++hist[column_at(inst.strings, delta, i).weight];
    return hist;
}

namespace {

using Row = std::vector<std::uint8_t>;

struct Best {
    bool set = false;
    Rational cost;
    std::vector<std::size_t> delta;

    void offer(const Rational& c, const std::vector<std::size_t>& d) {
        // Strictly-less keeps the first (lexicographically smallest) optimum
        // when deltas are enumerated in increasing order.
        if (!set || c < cost) {
            set = true;
            cost = c;
            delta = d;
        }
    }
    void merge_ordered(const Best& other) {
        if (!other.set) return;
        if (!set || other.cost < cost) {
            *this = other;
        }
    }
};

class Searcher {
public:
    Searcher(const std::vector<Row>& rows, const CostTable& table,
             const std::vector<std::vector<std::size_t>>& candidates)
        : rows_(rows), table_(table), candidates_(candidates), n_(rows.front().size()) {
        partials_.assign(rows.size() + 1, std::vector<std::uint16_t>(n_, 0));
        delta_.assign(rows.size(), 0);
    }

    Best run(std::size_t split_row, std::size_t begin, std::size_t end) {
        split_row_ = split_row;
        split_begin_ = begin;
        split_end_ = end;
        recurse(0);
        return best_;
    }

private:
    void add_row(std::size_t j, std::size_t delta) {
        const Row& row = rows_[j];
        const auto& src = partials_[j];
        auto& dst = partials_[j + 1];
        const std::size_t n = n_;
        const std::size_t head = n - delta;
        for (std::size_t i = 0; i < head; ++i) dst[i] = src[i] + row[i + delta];
        for (std::size_t i = head; i < n; ++i) dst[i] = src[i] + row[i + delta - n];
    }

    void recurse(std::size_t j) {
        if (j == rows_.size()) {
            leaf();
            return;
        }
        const auto& cand = candidates_[j];
        std::size_t begin = 0, end = cand.size();
        if (j == split_row_) {
            begin = split_begin_;
            end = split_end_;
        }
        for (std::size_t idx = begin; idx < end; ++idx) {
            delta_[j] = cand[idx];
            add_row(j, cand[idx]);
            recurse(j + 1);
        }
    }

    void leaf() {
        const auto& weights = partials_[rows_.size()];
        std::vector<std::size_t> hist(rows_.size() + 1, 0);
        for (std::uint16_t w : weights) ++hist[w];
        auto it = cost_cache_.find(hist);
        if (it == cost_cache_.end()) {
            Rational c = 0;
            for (std::size_t w = 0; w < hist.size(); ++w)
                if (hist[w]) c += Rational(hist[w]) * table_.at_weight(w);
            it = cost_cache_.emplace(hist, std::move(c)).first;
        }
        best_.offer(it->second, delta_);
    }

    const std::vector<Row>& rows_;
    const CostTable& table_;
    const std::vector<std::vector<std::size_t>>& candidates_;
    std::size_t n_;
    std::vector<std::vector<std::uint16_t>> partials_;
    std::vector<std::size_t> delta_;
    std::map<std::vector<std::size_t>, Rational> cost_cache_;
    Best best_;
    std::size_t split_row_ = 0, split_begin_ = 0, split_end_ = 0;
};

}  // namespace

MscsSolution solve_exhaustive(const MscsInstance& inst, const SolveOptions& opts) {
    inst.validate();
    const std::size_t k = inst.k();
    const std::size_t n = inst.n();
    const std::size_t stride = opts.stride.value_or(1);
    if (stride == 0) throw InstanceError("stride must be positive");

    std::vector<Row> rows(k, Row(n, 0));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) rows[j][i] = inst.strings[j].bits()[i];

    // First string stays unshifted; the rest range over stride multiples.
    std::vector<std::vector<std::size_t>> candidates(k);
    candidates[0] = {0};
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t d = 0; d < n; d += stride) candidates[j].push_back(d);

    const std::size_t split_row = k > 1 ? 1 : 0;
    const std::size_t split_count = candidates[split_row].size();
    const unsigned threads =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(split_count)));

    Best best;
    if (threads == 1) {
        Searcher s(rows, inst.cost, candidates);
        best = s.run(split_row, 0, split_count);
    } else {
        std::vector<Best> results(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = split_count * t / threads;
            const std::size_t end = split_count * (t + 1) / threads;
            pool.emplace_back([&, t, begin, end] {
                Searcher s(rows, inst.cost, candidates);
                results[t] = s.run(split_row, begin, end);
            });
        }
        for (auto& th : pool) th.join();
        for (const Best& r : results) best.merge_ordered(r);
    }

    MscsSolution sol;
    sol.delta = ShiftVector{best.delta};
    sol.cost = best.cost;
    sol.optimal = true;
    if (inst.target) sol.meets_target = best.cost <= *inst.target;
    return sol;
}

}  // namespace circon
