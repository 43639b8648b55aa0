#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circon/cyclic.hpp"
#include "circon/rational.hpp"

namespace circon {

/// Order-independent local cost: a table of f_k(w) for column weights 0..k.
struct CostTable {
    std::size_t k = 0;
    std::vector<Rational> values;  // exactly k+1 entries
    std::string name;

    const Rational& at_weight(std::size_t w) const { return values[w]; }
};

/// Per-1 cost f'_k, gap, range and the grouping flag derived from a table.
/// gap is empty when f' is constant (no positive difference exists).
struct DerivedCost {
    std::vector<Rational> fprime;  // fprime[x-1] = f'_k(x) for x = 1..k
    std::optional<Rational> gap;
    Rational range;
    bool is_grouping = false;

    const Rational& fprime_at(std::size_t x) const { return fprime[x - 1]; }
};

enum class Builtin { sigma, phi, phi_f, ccs, g };

Rational eval_local(const CostTable& t, const Column& c);
DerivedCost derive(const CostTable& t);  // requires t.k >= 2

CostTable tabulate_builtin(Builtin which, std::size_t k);  // k >= 1
std::optional<Builtin> builtin_from_name(std::string_view name);
std::string builtin_name(Builtin which);

/// A cost function available at every arity; reductions instantiate it at the
/// arity the construction needs.
struct CostFamily {
    std::string name;
    std::function<CostTable(std::size_t)> tabulate;
};

CostFamily builtin_family(Builtin which);

/// Throws InstanceError if the table is malformed (wrong entry count).
void validate_table(const CostTable& t);

}  // namespace circon
