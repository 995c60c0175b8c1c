#pragma once

// Cohomology classes on finite plot diagrams and the maps of the degree k sequence
//   H^k(R^delta) -alpha-> H^k_conn -beta-> H^{k+1}_dR -gamma-> H^{k+1}(R^delta),
// preceded for k = 1 by 0 -> H^1_dR -theta-> H^1(R^delta). All budgets are weight graded.

#include <cstddef>
#include <string>
#include <vector>

#include "diffcoh/plotdiag.hpp"

namespace diffcoh::plotdiag {

// Z / B inside Q^ambient
class Quotient {
public:
    Quotient() = default;
    Quotient(std::string name, LinearSubspace cycles, LinearSubspace boundaries);  // InvalidComplex unless B <= Z

    const std::string& name() const { return name_; }
    std::size_t ambient_dim() const { return cycles_.ambient_dim(); }
    std::size_t dim() const { return reps_.dim(); }
    const LinearSubspace& cycles() const { return cycles_; }
    const LinearSubspace& boundaries() const { return boundaries_; }

    // coordinates of the class of v in the basis of reduced cycles; SubspaceNotContained if v is not a cycle
    Vector coordinates(const Vector& v) const;
    bool is_boundary(const Vector& v) const { return boundaries_.contains(v); }

private:
    std::string name_;
    LinearSubspace cycles_, boundaries_, reps_;
};

struct CohClass {
    std::string space;
    Vector representative;
    Vector coordinates;
    bool is_zero() const;
};

CohClass make_class(const Quotient& q, const Vector& rep);

// Forms of one degree on the p-chains, concatenated in nerve_chains order
class ChainForms {
public:
    ChainForms(const PlotDiagram& d, std::size_t p, std::size_t form_degree, long bound);
    std::size_t dim() const { return offsets_.back(); }
    std::size_t size() const { return spaces_.size(); }
    const forms::FormSpace& space(std::size_t c) const { return spaces_.at(c); }
    Vector pack(const std::vector<forms::PolyForm>& per_chain) const;  // BudgetOverflow
    std::vector<forms::PolyForm> unpack(const Vector& v) const;

private:
    std::vector<forms::FormSpace> spaces_;
    std::vector<std::size_t> offsets_;
};

// the terms; j-forms carry coefficient degree <= D - j
Quotient derham_quotient(const PlotDiagram& d, std::size_t j, long D);       // global closed / d global
Quotient rdelta_quotient(const PlotDiagram& d, std::size_t k);              // constant Cech cochains
Quotient smooth_quotient(const PlotDiagram& d, std::size_t k, long D);      // function Cech cochains
Quotient deligne_quotient(const PlotDiagram& d, std::size_t k, long D);     // H_0 tot of the Deligne B^k R^delta
Quotient conn_quotient(const PlotDiagram& d, std::size_t k, long D);        // inside Omega^{k+1}(QX_0) + R(QX_k)

// classes of (curvature, bundle) in H^{k+1}_dR and H^k(R), and the pair in H^k_conn
struct ConnPair {
    std::size_t k = 1;
    long D = 0;
    CohClass curvature;
    CohClass bundle;
    CohClass pair;
};

// data in the tot sign convention of check_gerbe: components[p] on p-chains, g = (-1)^k components[k]
ConnPair class_map_alpha(const PlotDiagram& d, const GerbeData& flat, long D);  // NotFlat, InvalidComplex
CohClass class_map_beta(const ConnPair& pair);
CohClass class_map_gamma(const PlotDiagram& d, const std::vector<forms::PolyForm>& omega, long D);  // NotGlobal, NotClosed
CohClass class_map_theta(const PlotDiagram& d, const std::vector<forms::PolyForm>& A, long D);
// with an explicit primitive a (da = A on every object)
CohClass class_map_theta(const PlotDiagram& d, const std::vector<forms::PolyForm>& A,
                         const std::vector<Polynomial>& a, long D);

// global forms as per-object lists; NotGlobal / NotClosed
void require_global(const PlotDiagram& d, const std::vector<forms::PolyForm>& f);
void require_closed(const std::vector<forms::PolyForm>& f);

struct ExactnessAt {
    std::string term;
    std::size_t dim = 0;
    bool well_defined = true;  // the incoming map sends cycles to cycles and boundaries to boundaries
    bool exact = true;         // ker(out) = im(in)
    std::size_t ker_dim = 0;
    std::size_t im_dim = 0;
};

struct SequenceReport {
    std::string diagram;
    std::size_t k = 1;
    long D = 0;
    std::vector<ExactnessAt> terms;  // in sequence order
    bool ok() const;
};

// rank computations at every position; for k = 1 the theta prefix is included and
// exactness at H^1_dR is injectivity of theta
SequenceReport exact_sequence_report(const PlotDiagram& d, std::size_t k, long D);

// two connections on one cocycle: A' - A is global and dA' - dA = d(A' - A)
CheckResult check_curvature_uniqueness(const PlotDiagram& d, const CocycleData& g, const ConnectionData& A,
                                       const ConnectionData& A2);

}  // namespace diffcoh::plotdiag
