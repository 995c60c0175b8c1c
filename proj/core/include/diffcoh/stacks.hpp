#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diffcoh/chaincx.hpp"
#include "diffcoh/polyforms.hpp"

namespace diffcoh::stacks {

using chaincx::ChainComplex;
using chaincx::ChainMap;
using forms::Budget;

enum class StackName {
    BkR,                 // R in degree k
    BkNablaR,            // [R -> Omega^1 -> ... -> Omega^k], Omega^k in degree 0
    BkRdelta_strict,     // constants in degree k
    BkRdelta_deligne,    // [R -> Omega^1 -> ... -> Omega^k_cl]
    BkOmega1cl_strict,   // closed 1-forms in degree k
    BkOmega1cl_deligne,  // [Omega^1 -> ... -> Omega^{k+1}_cl]
    OmegaBullet,         // [Omega^1 -> ... -> Omega^{k+1}]
    OmegaK,              // Omega^k in degree 0
    OmegaClK,            // Omega^k_cl in degree 0
    Point
};

std::string to_string(StackName n);
StackName parse_stack_name(const std::string& s);  // ParseError

// what sits in one chain degree
struct Slot {
    enum Kind { Zero, Forms, ClosedForms, Constants } kind = Zero;
    std::size_t form_degree = 0;
};

struct Evaluated {
    ChainComplex complex;
    std::vector<forms::SheafValue> slots;  // per chain degree, complex coordinates = section coordinates
};

class StackModel {
public:
    StackModel() = default;
    StackModel(StackName name, std::size_t k);

    StackName name() const { return name_; }
    std::size_t k() const { return k_; }
    std::size_t length() const { return slots_.empty() ? 0 : slots_.size() - 1; }
    Slot slot(long q) const;
    // largest form degree appearing anywhere, -1 if none
    long top_form_degree() const;

    Evaluated evaluate_full(std::size_t n, const Budget& b) const;
    ChainComplex evaluate(std::size_t n, const Budget& b) const { return evaluate_full(n, b).complex; }
    ChainComplex evaluate(std::size_t n, long D) const { return evaluate(n, Budget{D, forms::Grading::Uniform}); }

    std::string str() const;  // e.g. "B^2_nabla R"
    std::string layout() const;  // e.g. "[R -> Omega^1 -> Omega^2_cl]"

    friend bool operator==(const StackModel& a, const StackModel& b) { return a.name_ == b.name_ && a.k_ == b.k_; }
    friend bool operator<(const StackModel& a, const StackModel& b) {
        return std::pair(int(a.name_), a.k_) < std::pair(int(b.name_), b.k_);
    }

private:
    StackName name_ = StackName::Point;
    std::size_t k_ = 0;
    std::vector<Slot> slots_;
};

StackModel build_stack(StackName name, std::size_t k);  // InvalidParameters if k = 0 where it matters
StackModel build_stack(const std::string& name, std::size_t k);

// evaluations at one (n, budget), memoized per model
class EvalContext {
public:
    EvalContext(std::size_t n, Budget b) : n_(n), b_(b) {}
    std::size_t n() const { return n_; }
    const Budget& budget() const { return b_; }
    const Evaluated& get(const StackModel& m);

private:
    std::size_t n_;
    Budget b_;
    std::map<StackModel, std::shared_ptr<Evaluated>> cache_;
};

// one component between chain degree q of the source and q + shift of the target
struct Component {
    enum Kind { Include, Differential } kind = Include;
    long q = 0;
    int sign = 1;
};

// chain map (shift 0) or degree +1 homotopy (shift 1), given degreewise by inclusions and d
class StackMap {
public:
    StackMap() = default;
    StackMap(StackModel source, StackModel target, std::vector<Component> comps, long shift = 0);

    const StackModel& source() const { return source_; }
    const StackModel& target() const { return target_; }
    const std::vector<Component>& components() const { return comps_; }
    long shift() const { return shift_; }

    ChainMap evaluate(EvalContext& ctx) const;  // shift 0 only
    chaincx::DegreeKMap evaluate_homotopy(EvalContext& ctx) const;
    std::string describe() const;

private:
    std::vector<Matrix> matrices(EvalContext& ctx) const;
    StackModel source_, target_;
    std::vector<Component> comps_;
    long shift_ = 0;
};

struct Node {
    std::string id;  // "r1c2"
    StackModel model;
};

struct Arrow {
    std::string from, to;
    StackMap map;
};

struct Diagram {
    std::size_t k = 0;
    std::vector<Node> nodes;
    std::vector<Arrow> arrows;
    const Node& node(const std::string& id) const;
    const Arrow& arrow(const std::string& from, const std::string& to) const;
};

// the 4x4 diagram of deloopings; 20 arrows
Diagram theorem_diagram(std::size_t k);

const std::vector<std::string>& square_ids();  // 1..7, 4|5, 2/4

struct SquareCorners {
    std::string a, y, x, z;  // top-left, top-right, bottom-left, bottom-right
};
SquareCorners square_corners(const std::string& id);

// the square as chain maps at one evaluation
chaincx::Square evaluate_square(const Diagram& dg, const std::string& id, EvalContext& ctx);

struct SquareReport {
    std::string square_id;
    std::size_t k = 0, n = 0;
    long D = 0;
    bool commutes = false;
    std::string commutes_how;  // "strict" or "homotopy"
    std::string strategy;      // "pullback+fibration", "path-object comparison", "pasting"
    bool passed = false;
    bool window_stable = false;  // same verdict and apex/pullback agreement at D and D+1
    std::string detail;
    std::vector<std::size_t> apex_homology;  // the top-left corner, at D
    std::vector<std::size_t> pullback_homology;  // the (homotopy) pullback it is compared with
    std::vector<std::size_t> pullback_dims;
};

// UnstableWindow if D < k + 1; InvalidParameters on a bad id, k = 0 or n = 0
SquareReport verify_square(const std::string& id, std::size_t k, std::size_t n, long D);

struct PresentationReport {
    bool rdelta_quasi_iso = false;
    bool omega1cl_quasi_iso = false;
    std::size_t primitives_checked = 0;  // closed basis forms given a primitive by h
    bool primitives_ok = false;
    bool ok() const { return rdelta_quasi_iso && omega1cl_quasi_iso && primitives_ok; }
};

// strict -> Deligne inclusions for B^k R^delta and B^k Omega^1_cl; UnstableWindow if D < k + 1
PresentationReport presentation_report(std::size_t k, std::size_t n, long D);
bool verify_presentation_equivalence(std::size_t k, std::size_t n, long D);

// B^k R^delta -> B^k_nabla R -> Omega^{k+1}_cl exact on homology in the middle, every degree
bool fiber_sequence_exactness_check(std::size_t k, std::size_t n, long D);

}  // namespace diffcoh::stacks
