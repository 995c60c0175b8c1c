#pragma once

// Test-side reference computations. They use plain mpq_class arithmetic on
// dense matrices and never call into the library's elimination code.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "diffcoh/chaincx.hpp"
#include "diffcoh/matrix.hpp"

namespace oracle {

using Dense = std::vector<std::vector<mpq_class>>;

Dense to_dense(const diffcoh::Matrix& m);
std::size_t rank(Dense a);
// dimension of the solution space of A x = 0
std::size_t nullity(const Dense& a, std::size_t cols);

std::vector<std::size_t> betti(const diffcoh::chaincx::ChainComplex& c);
// acyclicity of the mapping cone, an independent quasi-isomorphism test
bool cone_acyclic(const diffcoh::chaincx::ChainMap& f);

long binomial(long n, long k);

// simplicial cohomology of a finite simplicial complex given by its maximal faces
std::vector<std::size_t> simplicial_cohomology(const std::vector<std::vector<int>>& facets, std::size_t max_degree);

}  // namespace oracle
