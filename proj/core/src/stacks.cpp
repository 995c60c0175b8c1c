#include "diffcoh/stacks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "diffcoh/errors.hpp"

namespace diffcoh::stacks {

using chaincx::DegreeKMap;
using chaincx::Square;

namespace {

struct NameEntry {
    StackName name;
    const char* id;
};

constexpr NameEntry kNames[] = {
    {StackName::BkR, "BkR"},
    {StackName::BkNablaR, "BkNablaR"},
    {StackName::BkRdelta_strict, "BkRdelta_strict"},
    {StackName::BkRdelta_deligne, "BkRdelta_deligne"},
    {StackName::BkOmega1cl_strict, "BkOmega1cl_strict"},
    {StackName::BkOmega1cl_deligne, "BkOmega1cl_deligne"},
    {StackName::OmegaBullet, "OmegaBullet"},
    {StackName::OmegaK, "OmegaK"},
    {StackName::OmegaClK, "OmegaClK"},
    {StackName::Point, "Point"},
};

Slot forms(std::size_t j) { return {Slot::Forms, j}; }
Slot closed(std::size_t j) { return {Slot::ClosedForms, j}; }

std::string slot_str(const Slot& s) {
    switch (s.kind) {
    case Slot::Zero: return "0";
    case Slot::Constants: return "R^delta";
    case Slot::Forms: return s.form_degree == 0 ? "R" : "Omega^" + std::to_string(s.form_degree);
    case Slot::ClosedForms: return "Omega^" + std::to_string(s.form_degree) + "_cl";
    }
    return "?";
}

forms::SheafValue slot_value(const Slot& s, std::size_t n, const Budget& b) {
    using forms::SheafKind;
    switch (s.kind) {
    case Slot::Zero: break;
    case Slot::Constants: return forms::eval_sheaf({SheafKind::Rdelta, 0}, n, b);
    case Slot::Forms: return forms::eval_sheaf({SheafKind::Omega, s.form_degree}, n, b);
    case Slot::ClosedForms: return forms::eval_sheaf({SheafKind::OmegaCl, s.form_degree}, n, b);
    }
    return {forms::FormSpace(n, 0, -1), LinearSubspace(0)};
}

// the ambient map of a component: identity for inclusions, d otherwise
Matrix ambient_map(Component::Kind kind, const forms::FormSpace& src, const forms::FormSpace& tgt) {
    if (kind == Component::Differential) return forms::d_matrix(src, tgt);
    if (src.dim() != tgt.dim() || src.degree() != tgt.degree())
        throw ShapeMismatch("inclusion between different form spaces");
    return Matrix::identity(src.dim());
}

bool is_iso(const chaincx::ChainMap& f) {
    for (std::size_t q = 0; q <= f.length(); ++q) {
        Matrix m = f.component(long(q));
        if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
    return true;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace

std::string to_string(StackName n) {
    for (const auto& e : kNames)
        if (e.name == n) return e.id;
    return "?";
}

StackName parse_stack_name(const std::string& s) {
    for (const auto& e : kNames)
        if (s == e.id) return e.name;
    throw ParseError("unknown stack '" + s + "'");
}

StackModel::StackModel(StackName name, std::size_t k) : name_(name), k_(k) {
    switch (name) {
    case StackName::BkR:
        slots_.assign(k + 1, Slot{});
        slots_[k] = forms(0);
        break;
    case StackName::BkNablaR:
        for (std::size_t q = 0; q <= k; ++q) slots_.push_back(forms(k - q));
        break;
    case StackName::BkRdelta_strict:
        slots_.assign(k + 1, Slot{});
        slots_[k] = {Slot::Constants, 0};
        break;
    case StackName::BkRdelta_deligne:
        slots_.push_back(closed(k));
        for (std::size_t q = 1; q <= k; ++q) slots_.push_back(forms(k - q));
        break;
    case StackName::BkOmega1cl_strict:
        slots_.assign(k + 1, Slot{});
        slots_[k] = closed(1);
        break;
    case StackName::BkOmega1cl_deligne:
        slots_.push_back(closed(k + 1));
        for (std::size_t q = 1; q <= k; ++q) slots_.push_back(forms(k + 1 - q));
        break;
    case StackName::OmegaBullet:
        for (std::size_t q = 0; q <= k; ++q) slots_.push_back(forms(k + 1 - q));
        break;
    case StackName::OmegaK: slots_.push_back(forms(k)); break;
    case StackName::OmegaClK: slots_.push_back(closed(k)); break;
    case StackName::Point: slots_.push_back(Slot{}); break;
    }
}

Slot StackModel::slot(long q) const {
    if (q < 0 || std::size_t(q) >= slots_.size()) return {};
    return slots_[std::size_t(q)];
}

long StackModel::top_form_degree() const {
    long top = -1;
    for (const auto& s : slots_)
        if (s.kind != Slot::Zero) top = std::max(top, long(s.form_degree));
    return top;
}

Evaluated StackModel::evaluate_full(std::size_t n, const Budget& b) const {
    Evaluated e;
    std::vector<std::size_t> dims;
    for (const auto& s : slots_) {
        e.slots.push_back(slot_value(s, n, b));
        dims.push_back(e.slots.back().dim());
    }
    std::vector<Matrix> d;
    for (std::size_t q = 1; q < slots_.size(); ++q) {
        const auto& src = e.slots[q];
        const auto& tgt = e.slots[q - 1];
        if (src.dim() == 0 || tgt.dim() == 0) {
            d.emplace_back(tgt.dim(), src.dim());
            continue;
        }
        d.push_back(restrict_map(forms::d_matrix(src.ambient, tgt.ambient), src.sections, tgt.sections));
    }
    e.complex = ChainComplex(dims, d);
    return e;
}

std::string StackModel::str() const {
    std::string ks = std::to_string(k_);
    switch (name_) {
    case StackName::BkR: return "B^" + ks + " R";
    case StackName::BkNablaR: return "B^" + ks + "_nabla R";
    case StackName::BkRdelta_strict: return "B^" + ks + " R^delta (strict)";
    case StackName::BkRdelta_deligne: return "B^" + ks + " R^delta";
    case StackName::BkOmega1cl_strict: return "B^" + ks + " Omega^1_cl (strict)";
    case StackName::BkOmega1cl_deligne: return "B^" + ks + " Omega^1_cl";
    case StackName::OmegaBullet: return "Omega^{1..." + std::to_string(k_ + 1) + "}";
    case StackName::OmegaK: return "Omega^" + ks;
    case StackName::OmegaClK: return "Omega^" + ks + "_cl";
    case StackName::Point: return "*";
    }
    return "?";
}

std::string StackModel::layout() const {
    // highest chain degree first, as complexes are usually written
    std::string s = "[";
    for (std::size_t i = slots_.size(); i-- > 0;) s += slot_str(slots_[i]) + (i ? " -> " : "");
    return s + "]";
}

StackModel build_stack(StackName name, std::size_t k) {
    bool needs_k = name == StackName::BkNablaR || name == StackName::BkRdelta_deligne ||
                   name == StackName::OmegaBullet || name == StackName::BkOmega1cl_deligne;
    if (needs_k && k == 0) throw InvalidParameters(to_string(name) + " needs k >= 1");
    if (k > 64) throw InvalidParameters("k too large");
    return StackModel(name, k);
}

StackModel build_stack(const std::string& name, std::size_t k) { return build_stack(parse_stack_name(name), k); }

const Evaluated& EvalContext::get(const StackModel& m) {
    auto it = cache_.find(m);
    if (it == cache_.end()) it = cache_.emplace(m, std::make_shared<Evaluated>(m.evaluate_full(n_, b_))).first;
    return *it->second;
}

StackMap::StackMap(StackModel source, StackModel target, std::vector<Component> comps, long shift)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)), shift_(shift) {
    for (const auto& c : comps_) {
        Slot s = source_.slot(c.q), t = target_.slot(c.q + shift_);
        if (s.kind == Slot::Zero || t.kind == Slot::Zero)
            throw InvalidParameters("component at a zero slot in " + describe());
        std::size_t expect = c.kind == Component::Differential ? s.form_degree + 1 : s.form_degree;
        if (t.form_degree != expect) throw ShapeMismatch("form degrees do not match in " + describe());
    }
}

std::vector<Matrix> StackMap::matrices(EvalContext& ctx) const {
    const Evaluated& s = ctx.get(source_);
    const Evaluated& t = ctx.get(target_);
    std::vector<Matrix> f;
    for (std::size_t q = 0; q <= source_.length(); ++q)
        f.emplace_back(t.complex.dim(long(q) + shift_), s.complex.dim(long(q)));
    for (const auto& c : comps_) {
        const auto& sv = s.slots[std::size_t(c.q)];
        const auto& tv = t.slots[std::size_t(c.q + shift_)];
        if (sv.dim() == 0 || tv.dim() == 0) continue;
        Matrix m = restrict_map(ambient_map(c.kind, sv.ambient, tv.ambient), sv.sections, tv.sections);
        if (c.sign < 0) m = -m;
        f[std::size_t(c.q)] += m;
    }
    return f;
}

ChainMap StackMap::evaluate(EvalContext& ctx) const {
    if (shift_ != 0) throw InvalidParameters("evaluate on a homotopy");
    return ChainMap(ctx.get(source_).complex, ctx.get(target_).complex, matrices(ctx));
}

DegreeKMap StackMap::evaluate_homotopy(EvalContext& ctx) const {
    return DegreeKMap(ctx.get(source_).complex, ctx.get(target_).complex, shift_, matrices(ctx));
}

std::string StackMap::describe() const {
    std::ostringstream os;
    os << source_.str() << " -> " << target_.str() << ":";
    if (comps_.empty()) os << " 0";
    for (const auto& c : comps_)
        os << " " << (c.sign < 0 ? "-" : "") << (c.kind == Component::Include ? "incl" : "d") << "@" << c.q;
    return os.str();
}

const Node& Diagram::node(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw InvalidParameters("no node " + id);
}

const Arrow& Diagram::arrow(const std::string& from, const std::string& to) const {
    for (const auto& a : arrows)
        if (a.from == from && a.to == to) return a;
    throw InvalidParameters("no arrow " + from + " -> " + to);
}

Diagram theorem_diagram(std::size_t k) {
    if (k == 0) throw InvalidParameters("theorem_diagram needs k >= 1");
    Diagram dg;
    dg.k = k;
    StackModel pt(StackName::Point, 0);
    auto add = [&](const std::string& id, StackModel m) { dg.nodes.push_back({id, std::move(m)}); };
    add("r1c1", pt);
    add("r1c2", StackModel(StackName::BkRdelta_deligne, k));
    add("r1c3", pt);
    add("r1c4", pt);
    add("r2c1", pt);
    add("r2c2", StackModel(StackName::BkNablaR, k));
    add("r2c3", StackModel(StackName::OmegaClK, k + 1));
    add("r2c4", StackModel(StackName::OmegaK, k + 1));
    add("r3c2", StackModel(StackName::BkR, k));
    add("r3c3", StackModel(StackName::BkOmega1cl_deligne, k));
    add("r3c4", StackModel(StackName::OmegaBullet, k));
    add("r4c2", pt);
    add("r4c3", StackModel(StackName::BkRdelta_deligne, k + 1));
    add("r4c4", StackModel(StackName::BkNablaR, k + 1));

    auto incl_all = [](const StackModel& s, const StackModel& t) {
        std::vector<Component> c;
        for (long q = 0; q <= long(s.length()); ++q)
            if (s.slot(q).kind != Slot::Zero && t.slot(q).kind != Slot::Zero) c.push_back({Component::Include, q, 1});
        return c;
    };
    auto arrow = [&](const std::string& from, const std::string& to, std::optional<std::vector<Component>> comps = {}) {
        const auto& s = dg.node(from).model;
        const auto& t = dg.node(to).model;
        dg.arrows.push_back({from, to, StackMap(s, t, comps ? *comps : incl_all(s, t))});
    };
    int sk = k % 2 ? -1 : 1;
    // rows
    arrow("r1c1", "r1c2");
    arrow("r1c2", "r1c3");
    arrow("r1c3", "r1c4");
    arrow("r2c1", "r2c2");
    arrow("r2c2", "r2c3", std::vector<Component>{{Component::Differential, 0, 1}});
    arrow("r2c3", "r2c4");
    arrow("r3c2", "r3c3", std::vector<Component>{{Component::Differential, long(k), sk}});
    arrow("r3c3", "r3c4");
    arrow("r4c2", "r4c3");
    arrow("r4c3", "r4c4");
    // columns
    arrow("r1c1", "r2c1");
    arrow("r1c2", "r2c2");
    arrow("r2c2", "r3c2", std::vector<Component>{{Component::Include, long(k), 1}});
    arrow("r3c2", "r4c2");
    arrow("r1c3", "r2c3");
    arrow("r2c3", "r3c3");
    arrow("r3c3", "r4c3");
    arrow("r1c4", "r2c4");
    arrow("r2c4", "r3c4");
    arrow("r3c4", "r4c4");
    return dg;
}

const std::vector<std::string>& square_ids() {
    static const std::vector<std::string> ids = {"1", "2", "3", "4", "5", "6", "7", "4|5", "2/4"};
    return ids;
}

SquareCorners square_corners(const std::string& id) {
    static const std::map<std::string, SquareCorners> corners = {
        {"1", {"r1c1", "r1c2", "r2c1", "r2c2"}},   {"2", {"r1c2", "r1c3", "r2c2", "r2c3"}},
        {"3", {"r1c3", "r1c4", "r2c3", "r2c4"}},   {"4", {"r2c2", "r2c3", "r3c2", "r3c3"}},
        {"5", {"r2c3", "r2c4", "r3c3", "r3c4"}},   {"6", {"r3c2", "r3c3", "r4c2", "r4c3"}},
        {"7", {"r3c3", "r3c4", "r4c3", "r4c4"}},   {"4|5", {"r2c2", "r2c4", "r3c2", "r3c4"}},
        {"2/4", {"r1c2", "r1c3", "r3c2", "r3c3"}},
    };
    auto it = corners.find(id);
    if (it == corners.end()) throw InvalidParameters("unknown square '" + id + "'");
    return it->second;
}

namespace {

// degree +1 homotopies for the squares that commute only up to homotopy
std::optional<StackMap> square_homotopy(const Diagram& dg, const std::string& id) {
    std::size_t k = dg.k;
    if (id == "4") {
        std::vector<Component> c;
        for (std::size_t i = 0; i < k; ++i) c.push_back({Component::Include, long(i), i % 2 ? -1 : 1});
        return StackMap(dg.node("r2c2").model, dg.node("r3c3").model, c, 1);
    }
    if (id == "6")
        return StackMap(dg.node("r3c2").model, dg.node("r4c3").model,
                        {{Component::Include, long(k), k % 2 ? -1 : 1}}, 1);
    return std::nullopt;
}

}  // namespace

Square evaluate_square(const Diagram& dg, const std::string& id, EvalContext& ctx) {
    if (id == "4|5") return chaincx::paste_horizontal(evaluate_square(dg, "4", ctx), evaluate_square(dg, "5", ctx));
    if (id == "2/4") return chaincx::paste_vertical(evaluate_square(dg, "2", ctx), evaluate_square(dg, "4", ctx));
    SquareCorners c = square_corners(id);
    Square s{dg.arrow(c.a, c.y).map.evaluate(ctx), dg.arrow(c.a, c.x).map.evaluate(ctx),
             dg.arrow(c.y, c.z).map.evaluate(ctx), dg.arrow(c.x, c.z).map.evaluate(ctx), std::nullopt};
    if (auto h = square_homotopy(dg, id)) s.homotopy = h->evaluate_homotopy(ctx);
    return s;
}

namespace {

struct Outcome {
    bool commutes = false;
    std::string how;
    std::string strategy;
    bool passed = false;
    std::string detail;
    std::vector<std::size_t> apex_h, pb_h, pb_dims;
};

// homology tables of complexes with different lengths, padded to a common length
void pad(std::vector<std::size_t>& a, std::vector<std::size_t>& b) {
    std::size_t m = std::max(a.size(), b.size());
    a.resize(m, 0);
    b.resize(m, 0);
}

std::string how_str(chaincx::Commutes c) { return c == chaincx::Commutes::Strict ? "strict" : "homotopy"; }

Outcome path_object_check(const Square& s) {
    Outcome o;
    o.strategy = "path-object comparison";
    o.apex_h = chaincx::homology_dims(s.top.source());
    try {
        auto cmp = chaincx::compare_into_homotopy_pullback(s);
        o.commutes = true;
        o.how = how_str(cmp.commutes);
        o.passed = cmp.quasi_iso;
        o.pb_h = chaincx::homology_dims(cmp.hp.apex);
        o.pb_dims = cmp.hp.apex.dims();
        o.detail = o.passed ? "comparison map into the homotopy pullback is a quasi-isomorphism"
                            : "comparison map is not a quasi-isomorphism";
    } catch (const SquareNotCommuting& e) {
        o.detail = e.what();
    }
    return o;
}

Outcome pullback_check(const Square& s) {
    Outcome o;
    o.strategy = "pullback+fibration";
    o.apex_h = chaincx::homology_dims(s.top.source());
    try {
        o.how = how_str(chaincx::check_square(s));
        o.commutes = true;
    } catch (const SquareNotCommuting& e) {
        o.detail = e.what();
        return o;
    }
    auto pb = chaincx::pullback(s.bottom, s.right);
    o.pb_h = chaincx::homology_dims(pb.apex);
    o.pb_dims = pb.apex.dims();
    bool strict = o.how == "strict";
    bool fib = chaincx::is_fibration(s.right) || chaincx::is_fibration(s.bottom);
    bool iso = strict && is_iso(chaincx::factor_through(pb, s.left, s.top));
    o.passed = strict && fib && iso;
    if (!strict) o.detail = "square does not commute strictly";
    else if (!fib) o.detail = "neither leg of the cospan is a fibration";
    else if (!iso) o.detail = "comparison into the strict pullback is not an isomorphism";
    else o.detail = "strict pullback along a fibration";
    return o;
}

Outcome outcome(const Diagram& dg, const std::string& id, EvalContext& ctx, std::map<std::string, Outcome>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    Square s = evaluate_square(dg, id, ctx);
    Outcome o;
    if (id == "1" || id == "3" || id == "5" || id == "7") {
        o = pullback_check(s);
    } else if (id == "6" || id == "4|5" || id == "2/4") {
        o = path_object_check(s);
    } else {
        // pasting law: with the lower/right square a homotopy pullback, this one is iff the composite is
        std::string outer = id == "4" ? "4|5" : "2/4";
        std::string other = id == "4" ? "5" : "4";
        bool deduced = outcome(dg, outer, ctx, memo).passed && outcome(dg, other, ctx, memo).passed;
        o = path_object_check(s);
        o.strategy = "pasting";
        o.detail = "[" + outer + "] and [" + other + "] " + (deduced ? "pass" : "do not both pass") +
                   "; direct comparison: " + o.detail;
        o.passed = o.passed && deduced;
    }
    pad(o.apex_h, o.pb_h);
    memo[id] = o;
    return o;
}

void check_params(std::size_t k, std::size_t n, long D) {
    if (k == 0) throw InvalidParameters("k must be >= 1");
    if (n == 0) throw InvalidParameters("n must be >= 1");
    if (D < long(k) + 1)
        throw UnstableWindow("budget D=" + std::to_string(D) + " cannot hold (k+1)-forms for k=" + std::to_string(k));
}

}  // namespace

SquareReport verify_square(const std::string& id, std::size_t k, std::size_t n, long D) {
    square_corners(id);
    check_params(k, n, D);
    Diagram dg = theorem_diagram(k);
    EvalContext ctx(n, {D, forms::Grading::Weight});
    EvalContext next(n, {D + 1, forms::Grading::Weight});
    std::map<std::string, Outcome> memo, memo_next;
    Outcome o = outcome(dg, id, ctx, memo);
    Outcome o2 = outcome(dg, id, next, memo_next);

    SquareReport r;
    r.square_id = id;
    r.k = k;
    r.n = n;
    r.D = D;
    r.commutes = o.commutes;
    r.commutes_how = o.how;
    r.strategy = o.strategy;
    // homology of function-valued corners grows with D, so stability asks for the same verdict and
    // the same apex/pullback agreement at D and D+1
    r.window_stable = o.passed == o2.passed && (o.apex_h == o.pb_h) == (o2.apex_h == o2.pb_h);
    r.passed = o.passed && r.window_stable;
    r.detail = o.detail;
    if (!r.window_stable)
        r.detail += "; verdict changes between D and D+1, apex " + join(o.apex_h) + " vs " + join(o2.apex_h);
    r.apex_homology = o.apex_h;
    r.pullback_homology = o.pb_h;
    r.pullback_dims = o.pb_dims;
    return r;
}

PresentationReport presentation_report(std::size_t k, std::size_t n, long D) {
    check_params(k, n, D);
    Budget b{D, forms::Grading::Weight};
    EvalContext ctx(n, b);
    PresentationReport r;

    auto incl = [&](StackName strict, StackName deligne) {
        StackModel s(strict, k), t(deligne, k);
        return StackMap(s, t, {{Component::Include, long(k), 1}}).evaluate(ctx);
    };
    r.rdelta_quasi_iso = chaincx::is_quasi_iso(incl(StackName::BkRdelta_strict, StackName::BkRdelta_deligne));
    r.omega1cl_quasi_iso = chaincx::is_quasi_iso(incl(StackName::BkOmega1cl_strict, StackName::BkOmega1cl_deligne));

    // every closed j-form below the top of either model has the primitive h(omega) within budget
    r.primitives_ok = true;
    for (std::size_t j = 1; j <= std::min(k + 1, n); ++j) {
        forms::FormSpace amb(n, j, b.bound(j));
        LinearSubspace cl = forms::eval_sheaf({forms::SheafKind::OmegaCl, j}, n, b).sections;
        for (std::size_t i = 0; i < cl.dim(); ++i) {
            forms::PolyForm w = amb.from_sparse(cl.basis().row(i));
            try {
                forms::PolyForm p = forms::poincare_h(w, b.bound(j - 1));
                if (!(forms::exterior_d(p) == w)) r.primitives_ok = false;
            } catch (const BudgetOverflow&) {
                r.primitives_ok = false;
            }
            ++r.primitives_checked;
        }
    }
    return r;
}

bool verify_presentation_equivalence(std::size_t k, std::size_t n, long D) { return presentation_report(k, n, D).ok(); }

bool fiber_sequence_exactness_check(std::size_t k, std::size_t n, long D) {
    check_params(k, n, D);
    Diagram dg = theorem_diagram(k);
    EvalContext ctx(n, {D, forms::Grading::Weight});
    ChainMap f = dg.arrow("r1c2", "r2c2").map.evaluate(ctx);
    ChainMap g = dg.arrow("r2c2", "r2c3").map.evaluate(ctx);
    const auto& E = f.target();
    const auto& B = g.target();
    for (std::size_t i = 0; i <= E.length(); ++i) {
        long q = long(i);
        if (!compose(g, f).component(q).is_zero()) return false;
        LinearSubspace zf = chaincx::cycles(f.source(), q);
        LinearSubspace ze = chaincx::cycles(E, q);
        LinearSubspace be = chaincx::boundaries(E, q);
        Matrix fz = f.component(q) * zf.basis().transpose();
        LinearSubspace im = LinearSubspace::span(fz.transpose()).sum(be);
        LinearSubspace ker = ze.intersect(preimage(g.component(q), chaincx::boundaries(B, q)));
        if (!(im == ker)) return false;
    }
    return true;
}

}  // namespace diffcoh::stacks
