#pragma once

// Seeded property suite over randomly generated cases.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "diffcoh/totalize.hpp"

namespace diffcoh::props {

struct PropertyResult {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;  // case index and reason, empty when passed

    bool passed() const { return failures == 0 && cases > 0; }
};

PropertyResult dold_kan_roundtrip(std::uint64_t seed, std::size_t cases = 200);
// D o D = 0 under both sign conventions
PropertyResult tot_squares_to_zero(std::uint64_t seed, std::size_t cases = 200);
PropertyResult sign_iso_property(std::uint64_t seed, std::size_t cases = 200,
                                 const totalize::SignTable& sign = totalize::default_sign);
PropertyResult end_formula(std::uint64_t seed, std::size_t cases = 100);
// projection is a fibration, inclusion a quasi-isomorphism
PropertyResult path_object_property(std::uint64_t seed, std::size_t cases = 100);
// for a homotopy pullback right square, left is one iff the pasted rectangle is
PropertyResult pasting_law(std::uint64_t seed, std::size_t cases = 50);
// H_n of the homotopy pullback of 0 -> Z <- 0 is H_{n+1}(Z)
PropertyResult loop_shift(std::uint64_t seed, std::size_t cases = 50);
// d h + h d = id on positive-degree forms, n in 1..3
PropertyResult poincare_identity(std::uint64_t seed, std::size_t cases = 100);
// the matching map lands in the matching object and is onto it
PropertyResult matching_surjective(std::uint64_t seed, std::size_t cases = 40);

struct SuiteOptions {
    std::uint64_t seed = 1;
    double scale = 1.0;  // multiplies every case count
    bool corrupt_sign_table = false;
    std::size_t threads = 1;
};

// the sign table with p = 2 flipped, for exercising the failure path
int corrupt_sign(long p);

// results in a fixed order whatever the thread count
std::vector<PropertyResult> run_suite(const SuiteOptions& opt = {});

}  // namespace diffcoh::props
