#pragma once

// Group cohomology of lattices, the de Rham input of the irrational torus, and a
// dimension solver for exact sequences of finite-dimensional vector spaces.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffcoh/errors.hpp"

namespace diffcoh::torus {

// dim H^k(Z^n; R) from the Koszul resolution of R over the group ring of Z^n.
std::size_t koszul_group_cohomology(std::size_t n, std::size_t k);

// dim H^k(Z^n; R) from inhomogeneous bar cochains that are polynomials of degree <= truncation
// on (Z^n)^k. Oracle range k <= 2, n <= 3; truncation defaults to k.
std::size_t bar_cohomology(std::size_t n, std::size_t k, std::optional<std::size_t> truncation = std::nullopt);

// dim of forms on T_alpha in degree k; all of them are closed and d = 0, so this is also
// Omega^k_cl and H^k_dR. Fixed data, not computed.
std::size_t derham_input_torus(std::size_t k);

// Natural-number interval, hi = nullopt means unbounded.
struct Interval {
    std::size_t lo = 0;
    std::optional<std::size_t> hi;

    bool forced() const { return hi && *hi == lo; }
    bool bounded() const { return hi.has_value(); }
    bool contains(std::size_t v) const { return v >= lo && (!hi || v <= *hi); }
    std::string str() const;  // "2", "[0,1]", "[3,inf)"
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct SeqTerm {
    std::string name;
    std::optional<std::size_t> dim;
};

struct KnownRank {
    std::size_t map;  // map i goes from term i to term i+1
    std::size_t rank;
};

// A complex of vector spaces t_0 -> t_1 -> ... -> t_m, exact at the listed positions.
// left_zero / right_zero: the sequence starts with 0 -> t_0 / ends with t_m -> 0.
// Terms with the same name are the same space (also across sequences solved together).
struct ExactSeqSpec {
    std::vector<SeqTerm> terms;
    std::vector<std::size_t> exact_at;
    std::vector<KnownRank> ranks;
    bool left_zero = false;
    bool right_zero = false;

    void validate() const;  // throws InvalidParameters
};

struct TermResult {
    std::string name;
    Interval dim;
};

struct MapResult {
    std::size_t sequence;
    std::string label;  // "a -> b", "0 -> a", "b -> ..."
    Interval rank;
};

struct SolveResult {
    std::vector<TermResult> terms;  // distinct names, first-appearance order
    std::vector<MapResult> maps;
    bool consistent = true;

    const TermResult* find(const std::string& name) const;
};

struct SolveOptions {
    bool throw_on_inconsistent = true;
    // 0 keeps the constraint order; anything else shuffles it with this seed
    std::uint64_t shuffle_seed = 0;
    bool shave = true;
};

SolveResult exact_solve(const ExactSeqSpec& spec, const SolveOptions& opt = {});
SolveResult exact_solve(const std::vector<ExactSeqSpec>& specs, const SolveOptions& opt = {});

// {"terms": [{"name": "a", "dim": 3}, {"name": "b", "dim": null}], "exact_at": [0, 1],
//  "ranks": [{"map": 0, "rank": 3}], "left_zero": true, "right_zero": true}
// or {"sequences": [<spec>, ...]} for a system sharing term names.
std::vector<ExactSeqSpec> parse_exact_specs(const std::string& text, const std::string& source = "<input>");
std::string write_exact_spec(const ExactSeqSpec& spec);

struct TableEntry {
    std::string quantity;  // "H", "H_dR", "H_nabla", "H_conn", "H_triv"
    std::size_t k;
    Interval value;
    std::string provenance;  // "input:group-cohomology", "input:de-rham", "forced", "interval"
};

struct TorusTable {
    std::size_t group_rank = 2;
    std::size_t max_k = 4;
    std::vector<TableEntry> entries;
    std::vector<ExactSeqSpec> sequences;

    const TableEntry* find(const std::string& quantity, std::size_t k) const;
};

// The sequences used, for degrees 1..max_k, on T_K with K of rank group_rank.
std::vector<ExactSeqSpec> torus_sequences(std::size_t group_rank = 2, std::size_t max_k = 4);
TorusTable torus_report(std::size_t group_rank = 2, std::size_t max_k = 4);

}  // namespace diffcoh::torus
