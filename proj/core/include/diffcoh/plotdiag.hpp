#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffcoh/polyforms.hpp"
#include "diffcoh/stacks.hpp"
#include "diffcoh/totalize.hpp"

namespace diffcoh::plotdiag {

using forms::Budget;
using stacks::StackModel;

struct PlotObject {
    std::string id;
    std::size_t dim = 0;
};

struct PlotMorphism {
    std::string id;
    std::size_t src = 0, tgt = 0;
    PolyMap map;
    bool identity = false;
};

// A finite category of cartesian spaces and polynomial maps. Identities are created with
// their objects; composites of non-identity pairs come from the table.
class PlotDiagram {
public:
    std::size_t add_object(const std::string& id, std::size_t dim);
    std::size_t add_morphism(const std::string& id, std::size_t src, std::size_t tgt, PolyMap map);
    void set_composite(std::size_t g, std::size_t f, std::size_t gf);  // gf = g after f
    void set_n_max(std::optional<std::size_t> n) { n_max_ = n; }

    const std::vector<PlotObject>& objects() const { return objects_; }
    const std::vector<PlotMorphism>& morphisms() const { return morphisms_; }  // identities included
    const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& composites() const { return table_; }
    std::optional<std::size_t> n_max() const { return n_max_; }

    const PlotObject& object(std::size_t i) const { return objects_.at(i); }
    const PlotMorphism& morphism(std::size_t i) const { return morphisms_.at(i); }
    std::size_t identity(std::size_t obj) const { return identities_.at(obj); }
    std::optional<std::size_t> find_object(const std::string& id) const;
    std::optional<std::size_t> find_morphism(const std::string& id) const;
    std::vector<std::size_t> non_identity() const;

    // g after f, through identities and the table; nullopt if not composable or missing
    std::optional<std::size_t> compose(std::size_t g, std::size_t f) const;

    // longest path of non-identity morphisms; nullopt when they contain a cycle
    std::optional<std::size_t> height() const;
    // the level above which no nondegenerate chains are enumerated
    std::size_t chain_bound() const;  // ChainBoundExceeded when neither height nor n_max is available

private:
    std::vector<PlotObject> objects_;
    std::vector<PlotMorphism> morphisms_;
    std::vector<std::size_t> identities_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> table_;
    std::optional<std::size_t> n_max_;
};

std::vector<std::string> validate_diagram(const PlotDiagram& d);

enum class Preset { circle_3arc, interval_2chart, torus_9patch };
Preset parse_preset(const std::string& s);  // ParseError
std::string to_string(Preset p);
PlotDiagram good_cover_diagram(Preset p);

// (f_{n-1}, ..., f_0) written from the source side: maps[0] leaves the source vertex
struct NerveChain {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> maps;
    std::size_t level() const { return maps.size(); }
    friend bool operator==(const NerveChain& a, const NerveChain& b) { return a.source == b.source && a.maps == b.maps; }
};

std::string chain_name(const PlotDiagram& d, const NerveChain& c);

// identity-free chains in canonical order; ChainBoundExceeded past n_max
std::vector<NerveChain> nerve_chains(const PlotDiagram& d, std::size_t n);
// every chain, degenerate ones included
std::vector<NerveChain> all_chains(const PlotDiagram& d, std::size_t n);

// face i drops vertex i counted from the source; inner faces compose
NerveChain face(const PlotDiagram& d, const NerveChain& c, std::size_t i);
bool is_degenerate(const PlotDiagram& d, const NerveChain& c);
NerveChain degeneracy(const PlotDiagram& d, const NerveChain& c, std::size_t j);

// The cosimplicial object A(QX_p) = prod over p-chains of A(U_source), on all chains, levels 0..top.
// The stack's chain degrees are raised by shift.
totalize::CosimplicialChain evaluate_cosimplicial(const PlotDiagram& d, const StackModel& s, const Budget& b,
                                                  std::size_t top, std::size_t shift = 0);

// The normalized double complex on nondegenerate chains, with the bookkeeping needed to
// move between tot coordinates and forms on chains.
class NerveEvaluation {
public:
    NerveEvaluation(const PlotDiagram& d, const StackModel& s, const Budget& b, std::size_t shift = 0);

    const totalize::DoubleComplex& double_complex() const { return dc_; }
    const PlotDiagram& diagram() const { return *d_; }
    const StackModel& stack() const { return stack_; }
    const Budget& budget() const { return budget_; }
    std::size_t shift() const { return shift_; }
    std::size_t columns() const { return chains_.size(); }
    const std::vector<NerveChain>& chains(std::size_t p) const { return chains_.at(p); }

    // sections of the stack in degree q on the source of chain c at level p
    const forms::SheafValue& slot(std::size_t p, long q, std::size_t c) const;
    std::size_t offset(std::size_t p, long q, std::size_t c) const;

    // per-chain forms in C^{p,q}; BudgetOverflow or SubspaceNotContained if they are not sections
    Vector pack(std::size_t p, long q, const std::vector<forms::PolyForm>& per_chain) const;
    std::vector<forms::PolyForm> unpack(std::size_t p, long q, const Vector& v) const;

private:
    const PlotDiagram* d_;
    StackModel stack_;
    Budget budget_;
    std::size_t shift_;
    std::vector<std::vector<NerveChain>> chains_;
    std::map<std::size_t, stacks::Evaluated> per_dim_;
    std::vector<std::vector<std::vector<std::size_t>>> offsets_;  // [p][q][chain]
    totalize::DoubleComplex dc_;
};

// H^n of X with coefficients in s: H_0 of the totalization with s delooped n times
totalize::FlaggedDim stack_cohomology_flagged(const PlotDiagram& d, const StackModel& s, std::size_t n, const Budget& b);
std::size_t stack_cohomology(const PlotDiagram& d, const StackModel& s, std::size_t n, const Budget& b);
std::size_t stack_cohomology(const PlotDiagram& d, const StackModel& s, std::size_t n, long D);

struct CheckResult {
    bool ok = true;
    std::string violation;  // first failure, empty when ok
    explicit operator bool() const { return ok; }
};

// g_f on the source of each morphism; identities carry 0
struct CocycleData {
    std::vector<Polynomial> g;  // indexed like d.morphisms()
};

struct ConnectionData {
    std::vector<forms::PolyForm> A;  // 1-forms per object
};

// components[p] are (k-p)-forms on the p-chains in nerve_chains order
struct GerbeData {
    std::size_t k = 1;
    std::vector<std::vector<forms::PolyForm>> components;
};

CocycleData zero_cocycle(const PlotDiagram& d);
// (delta lambda)_f = f^* lambda_tgt - lambda_src
CocycleData coboundary(const PlotDiagram& d, const std::vector<Polynomial>& lambda);

CheckResult check_cocycle(const PlotDiagram& d, const CocycleData& g);
CheckResult check_morphism(const PlotDiagram& d, const std::vector<Polynomial>& h, const CocycleData& g,
                           const CocycleData& g2);
CheckResult check_connection(const PlotDiagram& d, const CocycleData& g, const ConnectionData& A);
CheckResult check_gerbe(const PlotDiagram& d, const GerbeData& data);

GerbeData zero_gerbe(const PlotDiagram& d, std::size_t k, long bound);
// D of a tot degree 1 element of B^k_nabla R: (k-1-p)-forms on p-chains, p = 0..k-1
GerbeData gerbe_boundary(const PlotDiagram& d, std::size_t k, const std::vector<std::vector<forms::PolyForm>>& x);

// smallest uniform budget holding the data and its pullbacks
long gerbe_budget(const PlotDiagram& d, const GerbeData& data);

}  // namespace diffcoh::plotdiag
