#include "circon/costfn.hpp"

#include <algorithm>

namespace circon {

void validate_table(const CostTable& t) {
    if (t.values.size() != t.k + 1)
        throw InstanceError("cost table for arity " + std::to_string(t.k) + " must have " +
                            std::to_string(t.k + 1) + " values, got " +
                            std::to_string(t.values.size()));
}

Rational eval_local(const CostTable& t, const Column& c) {
    validate_table(t);
    if (c.entries.size() != t.k)
        throw InstanceError("column arity does not match cost table arity");
    return t.values[c.weight];
}

DerivedCost derive(const CostTable& t) {
    validate_table(t);
    if (t.k < 2) throw InstanceError("derive requires arity k >= 2");
    DerivedCost d;
    d.fprime.reserve(t.k);
    for (std::size_t x = 1; x <= t.k; ++x)
        d.fprime.push_back((t.values[x] - t.values[0]) / Rational(x));

    // gap: smallest positive difference between distinct f' values
    for (const Rational& a : d.fprime)
        for (const Rational& b : d.fprime)
            if (a > b) {
                Rational diff = a - b;
                if (!d.gap || diff < *d.gap) d.gap = diff;
            }

    d.range = 0;
    for (const Rational& a : d.fprime) d.range = std::max(d.range, Rational(abs(a)));

    Rational min_below_k = d.fprime[0];
    for (std::size_t x = 2; x < t.k; ++x) min_below_k = std::min(min_below_k, d.fprime[x - 1]);
    d.is_grouping = d.fprime[t.k - 1] < min_below_k && d.fprime[1] < d.fprime[0];
    return d;
}

CostTable tabulate_builtin(Builtin which, std::size_t k) {
    if (k < 1) throw InstanceError("builtin cost tables require k >= 1");
    CostTable t;
    t.k = k;
    t.name = builtin_name(which);
    t.values.reserve(k + 1);
    for (std::size_t w = 0; w <= k; ++w) {
        switch (which) {
            case Builtin::sigma:
                t.values.emplace_back(Rational(w * (k - w), k));
                break;
            case Builtin::phi:
                t.values.emplace_back(Rational(w, (k + w + 1) * (k + 1)));
                break;
            case Builtin::phi_f:
                t.values.emplace_back(Rational(k + w, k + w + 1));
                break;
            case Builtin::ccs:
                t.values.emplace_back(Rational(std::min(w, k - w)));
                break;
            case Builtin::g: {
                // min{w + k - 2, k - w}; negative branch cannot occur for k >= 2
                const long long a = static_cast<long long>(w) + static_cast<long long>(k) - 2;
                const long long b = static_cast<long long>(k) - static_cast<long long>(w);
                t.values.emplace_back(Rational(std::min(a, b)));
                break;
            }
        }
    }
    return t;
}

std::optional<Builtin> builtin_from_name(std::string_view name) {
    if (name == "sigma") return Builtin::sigma;
    if (name == "phi") return Builtin::phi;
    if (name == "phi_f") return Builtin::phi_f;
    if (name == "ccs") return Builtin::ccs;
    if (name == "g") return Builtin::g;
    return std::nullopt;
}

std::string builtin_name(Builtin which) {
    switch (which) {
        case Builtin::sigma: return "sigma";
        case Builtin::phi: return "phi";
        case Builtin::phi_f: return "phi_f";
        case Builtin::ccs: return "ccs";
        case Builtin::g: return "g";
    }
    return "?";
}

CostFamily builtin_family(Builtin which) {
    return CostFamily{builtin_name(which),
                      [which](std::size_t k) { return tabulate_builtin(which, k); }};
}

}  // namespace circon
