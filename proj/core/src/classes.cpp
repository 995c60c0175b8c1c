#include "diffcoh/classes.hpp"

#include "diffcoh/errors.hpp"

namespace diffcoh::plotdiag {

using forms::PolyForm;
using stacks::StackName;

Quotient::Quotient(std::string name, LinearSubspace cycles, LinearSubspace boundaries)
    : name_(std::move(name)), cycles_(std::move(cycles)), boundaries_(std::move(boundaries)) {
    if (!cycles_.contains(boundaries_)) throw InvalidComplex(name_ + ": boundaries are not cycles");
    std::vector<SparseVector> rows;
    for (const auto& r : cycles_.basis().row_data()) rows.push_back(boundaries_.reduce(r));
    reps_ = LinearSubspace::span(Matrix::from_rows(std::move(rows), cycles_.ambient_dim()));
}

Vector Quotient::coordinates(const Vector& v) const {
    if (!cycles_.contains(v)) throw SubspaceNotContained(name_ + ": not a cycle");
    return reps_.coordinates(boundaries_.reduce(SparseVector::from_dense(v)));
}

bool CohClass::is_zero() const {
    for (const auto& c : coordinates)
        if (!c.is_zero()) return false;
    return true;
}

CohClass make_class(const Quotient& q, const Vector& rep) { return {q.name(), rep, q.coordinates(rep)}; }

ChainForms::ChainForms(const PlotDiagram& d, std::size_t p, std::size_t form_degree, long bound) {
    offsets_.push_back(0);
    for (const auto& c : nerve_chains(d, p)) {
        spaces_.emplace_back(d.object(c.source).dim, form_degree, bound);
        offsets_.push_back(offsets_.back() + spaces_.back().dim());
    }
}

Vector ChainForms::pack(const std::vector<PolyForm>& per_chain) const {
    if (per_chain.size() != spaces_.size()) throw ShapeMismatch("one form per chain expected");
    Vector v(dim(), Rational(0));
    for (std::size_t c = 0; c < spaces_.size(); ++c) {
        SparseVector s = spaces_[c].to_sparse(per_chain[c]);
        for (const auto& [i, x] : s.entries()) v[offsets_[c] + i] = x;
    }
    return v;
}

std::vector<PolyForm> ChainForms::unpack(const Vector& v) const {
    std::vector<PolyForm> out;
    for (std::size_t c = 0; c < spaces_.size(); ++c) {
        Vector part(v.begin() + long(offsets_[c]), v.begin() + long(offsets_[c + 1]));
        out.push_back(spaces_[c].from_vector(part));
    }
    return out;
}

namespace {

Budget weight(long D) { return {D, forms::Grading::Weight}; }

// delta : j-forms on p-chains -> j-forms on (p+1)-chains
Matrix cech_delta(const PlotDiagram& d, std::size_t p, std::size_t j, long D) {
    NerveEvaluation ev(d, StackModel(StackName::OmegaK, j), weight(D));
    return ev.double_complex().delta(long(p), 0);
}

Matrix constants_delta(const PlotDiagram& d, std::size_t p) {
    NerveEvaluation ev(d, StackModel(StackName::BkRdelta_strict, 0), weight(0));
    return ev.double_complex().delta(long(p), 0);
}

// exterior d on j-forms over the p-chains
Matrix chain_d(const PlotDiagram& d, std::size_t p, std::size_t j, long D) {
    std::vector<Matrix> blocks;
    for (const auto& c : nerve_chains(d, p)) {
        std::size_t n = d.object(c.source).dim;
        blocks.push_back(forms::d_matrix(forms::FormSpace(n, j, D - long(j)), forms::FormSpace(n, j + 1, D - long(j) - 1)));
    }
    return Matrix::block_diag(blocks);
}

LinearSubspace image_of(const Matrix& m, const LinearSubspace& s) {
    return image(m * s.basis().transpose());
}

LinearSubspace zero_space(std::size_t n) { return LinearSubspace(n); }

// rows of s shifted into Q^total at offset
Matrix embedded(const LinearSubspace& s, std::size_t offset, std::size_t total) {
    std::vector<SparseVector> rows;
    for (const auto& r : s.basis().row_data()) {
        SparseVector e;
        for (const auto& [i, x] : r.entries()) e.push_back_unchecked(i + offset, x);
        rows.push_back(std::move(e));
    }
    return Matrix::from_rows(std::move(rows), total);
}

Vector concat(const Vector& a, const Vector& b) {
    Vector v = a;
    v.insert(v.end(), b.begin(), b.end());
    return v;
}

// the tot degree 0 block (p, p) of a nerve evaluation
struct Block {
    std::size_t offset = 0;
    std::size_t dim = 0;
    bool present = false;
};

Block diagonal_block(const NerveEvaluation& ev, const totalize::TotComplex& t, std::size_t p) {
    for (const auto& bl : t.layout[1])
        if (bl.p == long(p) && p < ev.columns())
            return {bl.offset, ev.double_complex().dim(bl.p, bl.q), true};
    return {};
}

Vector slice(const Vector& v, const Block& b) { return Vector(v.begin() + long(b.offset), v.begin() + long(b.offset + b.dim)); }

Polynomial as_function(const PolyForm& f) { return f.coefficient({}); }

Vector constant_cochain(const PlotDiagram& d, const std::vector<Polynomial>& a) {
    auto chains = nerve_chains(d, 1);
    Vector v;
    for (const auto& c : chains) {
        const auto& m = d.morphism(c.maps[0]);
        Polynomial diff = a[m.tgt].compose(m.map.components(), m.map.source_dim()) - a[m.src];
        if (diff.degree() > 0) throw NotGlobal("delta a is not constant on " + m.id);
        v.push_back(diff.coefficient(Monomial(m.map.source_dim(), 0)));
    }
    return v;
}

}  // namespace

void require_global(const PlotDiagram& d, const std::vector<PolyForm>& f) {
    if (f.size() != d.objects().size()) throw ShapeMismatch("one form per object expected");
    for (std::size_t m : d.non_identity()) {
        const auto& mm = d.morphism(m);
        if (!(forms::pullback(mm.map, f[mm.tgt]) == f[mm.src])) throw NotGlobal("form is not global: fails on " + mm.id);
    }
}

void require_closed(const std::vector<PolyForm>& f) {
    for (std::size_t o = 0; o < f.size(); ++o)
        if (!forms::exterior_d(f[o]).is_zero()) throw NotClosed("form is not closed on object " + std::to_string(o));
}

Quotient derham_quotient(const PlotDiagram& d, std::size_t j, long D) {
    LinearSubspace Z = kernel(cech_delta(d, 0, j, D)).intersect(kernel(chain_d(d, 0, j, D)));
    LinearSubspace B = j == 0 ? zero_space(Z.ambient_dim()) : image_of(chain_d(d, 0, j - 1, D), kernel(cech_delta(d, 0, j - 1, D)));
    return Quotient("H^" + std::to_string(j) + "_dR", Z, B);
}

Quotient rdelta_quotient(const PlotDiagram& d, std::size_t k) {
    LinearSubspace Z = kernel(constants_delta(d, k));
    LinearSubspace B = k == 0 ? zero_space(Z.ambient_dim()) : image(constants_delta(d, k - 1));
    return Quotient("H^" + std::to_string(k) + "(R^delta)", Z, B);
}

Quotient smooth_quotient(const PlotDiagram& d, std::size_t k, long D) {
    LinearSubspace Z = kernel(cech_delta(d, k, 0, D));
    LinearSubspace B = k == 0 ? zero_space(Z.ambient_dim()) : image(cech_delta(d, k - 1, 0, D));
    return Quotient("H^" + std::to_string(k) + "(R)", Z, B);
}

Quotient deligne_quotient(const PlotDiagram& d, std::size_t k, long D) {
    NerveEvaluation ev(d, StackModel(StackName::BkRdelta_deligne, k), weight(D));
    auto t = totalize::tot(ev.double_complex());
    return Quotient("H^" + std::to_string(k) + "(R^delta)", kernel(t.full.diff(0)), image(t.full.diff(1)));
}

namespace {

struct ConnModel {
    ChainForms curv, fns;
    Quotient q;
};

ConnModel conn_model(const PlotDiagram& d, std::size_t k, long D) {
    ChainForms curv(d, 0, k + 1, D - long(k) - 1), fns(d, k, 0, D);
    std::size_t total = curv.dim() + fns.dim();

    NerveEvaluation ev(d, StackModel(StackName::BkNablaR, k), weight(D));
    auto t = totalize::tot(ev.double_complex());
    Block top = diagonal_block(ev, t, 0), bottom = diagonal_block(ev, t, k);
    Matrix dtop = chain_d(d, 0, k, D);
    Rational sign = k % 2 ? Rational(-1) : Rational(1);
    std::vector<SparseVector> rows;
    LinearSubspace cyc = kernel(t.full.diff(0));
    for (const auto& x : cyc.basis().row_data()) {
        Vector xv = x.to_dense(t.full.dim(0));
        Vector F = dtop.apply(slice(xv, top));
        Vector g = bottom.present ? slice(xv, bottom) : Vector(fns.dim(), Rational(0));
        for (auto& c : g) c *= sign;
        rows.push_back(SparseVector::from_dense(concat(F, g)));
    }
    LinearSubspace gen = LinearSubspace::span(Matrix::from_rows(std::move(rows), total));
    LinearSubspace Bf = image_of(chain_d(d, 0, k, D), kernel(cech_delta(d, 0, k, D)));
    LinearSubspace Bg = image(cech_delta(d, k - 1, 0, D));
    LinearSubspace B = LinearSubspace::span(Matrix::vstack({embedded(Bf, 0, total), embedded(Bg, curv.dim(), total)}, total));
    return {curv, fns, Quotient("H^" + std::to_string(k) + "_conn", gen.sum(B), B)};
}

}  // namespace

Quotient conn_quotient(const PlotDiagram& d, std::size_t k, long D) {
    if (k == 0) throw InvalidParameters("H^k_conn needs k >= 1");
    return conn_model(d, k, D).q;
}

ConnPair class_map_alpha(const PlotDiagram& d, const GerbeData& flat, long D) {
    std::size_t k = flat.k;
    if (auto r = check_gerbe(d, flat); !r) throw InvalidComplex("not a gerbe with connection: " + r.violation);
    for (const auto& w : flat.components.at(0))
        if (!forms::exterior_d(w).is_zero()) throw NotFlat("curvature d omega^" + std::to_string(k) + " is nonzero");
    auto cm = conn_model(d, k, D);
    std::vector<PolyForm> g;
    for (const auto& f : flat.components.at(k)) g.push_back(k % 2 ? -f : f);
    Vector gv = cm.fns.pack(g);
    ConnPair out;
    out.k = k;
    out.D = D;
    Vector zero(cm.curv.dim(), Rational(0));
    out.curvature = make_class(derham_quotient(d, k + 1, D), zero);
    out.bundle = make_class(smooth_quotient(d, k, D), gv);
    out.pair = make_class(cm.q, concat(zero, gv));
    return out;
}

CohClass class_map_beta(const ConnPair& pair) { return pair.curvature; }

CohClass class_map_gamma(const PlotDiagram& d, const std::vector<PolyForm>& omega, long D) {
    require_global(d, omega);
    require_closed(omega);
    std::size_t deg = omega.empty() ? 0 : omega[0].degree();
    if (deg == 0) throw InvalidParameters("gamma needs forms of degree >= 1");
    NerveEvaluation ev(d, StackModel(StackName::BkRdelta_deligne, deg), weight(D));
    auto t = totalize::tot(ev.double_complex());
    Vector v(t.full.dim(0), Rational(0));
    Block b = diagonal_block(ev, t, 0);
    Vector x = ev.pack(0, 0, omega);
    for (std::size_t i = 0; i < x.size(); ++i) v[b.offset + i] = x[i];
    return make_class(Quotient("H^" + std::to_string(deg) + "(R^delta)", kernel(t.full.diff(0)), image(t.full.diff(1))), v);
}

CohClass class_map_theta(const PlotDiagram& d, const std::vector<PolyForm>& A, const std::vector<Polynomial>& a, long D) {
    require_global(d, A);
    require_closed(A);
    if (a.size() != A.size()) throw ShapeMismatch("one primitive per object expected");
    for (std::size_t o = 0; o < a.size(); ++o) {
        if (a[o].degree() > D) throw BudgetOverflow("primitive on object " + d.object(o).id + " exceeds the budget");
        if (!(forms::exterior_d(PolyForm::function(a[o])) == A[o]))
            throw InvalidParameters("a is not a primitive of A on " + d.object(o).id);
    }
    return make_class(rdelta_quotient(d, 1), constant_cochain(d, a));
}

CohClass class_map_theta(const PlotDiagram& d, const std::vector<PolyForm>& A, long D) {
    std::vector<Polynomial> a;
    for (const auto& f : A) a.push_back(as_function(forms::poincare_h(f, D)));
    return class_map_theta(d, A, a, D);
}

bool SequenceReport::ok() const {
    for (const auto& t : terms)
        if (!t.well_defined || !t.exact) return false;
    return true;
}

namespace {

using RepMap = std::function<Vector(const Vector&)>;

struct Stage {
    Quotient q;
    RepMap out;  // to the next stage; empty for the last
};

Matrix columns_of(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            if (!cols[j][i].is_zero()) m.set(i, j, cols[j][i]);
    return m;
}

std::vector<Vector> rows_dense(const LinearSubspace& s) {
    std::vector<Vector> out;
    for (const auto& r : s.basis().row_data()) out.push_back(r.to_dense(s.ambient_dim()));
    return out;
}

}  // namespace

SequenceReport exact_sequence_report(const PlotDiagram& d, std::size_t k, long D) {
    if (k == 0) throw InvalidParameters("k must be >= 1");
    SequenceReport rep;
    rep.k = k;
    rep.D = D;

    auto cm = conn_model(d, k, D);
    std::vector<Stage> st;
    std::size_t curv_dim = cm.curv.dim();
    ChainForms fns = cm.fns;

    if (k == 1) {
        ChainForms ones(d, 0, 1, D - 1);
        st.push_back({derham_quotient(d, 1, D), [&d, ones, D](const Vector& v) {
                          std::vector<Polynomial> a;
                          for (const auto& f : ones.unpack(v)) a.push_back(as_function(forms::poincare_h(f, D)));
                          return constant_cochain(d, a);
                      }});
    }
    auto kchains = nerve_chains(d, k);
    st.push_back({rdelta_quotient(d, k), [&d, kchains, fns, curv_dim](const Vector& c) {
                      std::vector<PolyForm> g;
                      for (std::size_t i = 0; i < kchains.size(); ++i)
                          g.push_back(PolyForm::function(Polynomial::constant(d.object(kchains[i].source).dim, c[i]), 0));
                      return concat(Vector(curv_dim, Rational(0)), fns.pack(g));
                  }});
    st.push_back({cm.q, [curv_dim](const Vector& v) { return Vector(v.begin(), v.begin() + long(curv_dim)); }});

    NerveEvaluation ev(d, StackModel(StackName::BkRdelta_deligne, k + 1), weight(D));
    auto t = totalize::tot(ev.double_complex());
    Block b0 = diagonal_block(ev, t, 0);
    ChainForms top(d, 0, k + 1, D - long(k) - 1);
    std::size_t tot0 = t.full.dim(0);
    st.push_back({derham_quotient(d, k + 1, D), [&ev, top, b0, tot0](const Vector& w) {
                      Vector v(tot0, Rational(0));
                      Vector x = ev.pack(0, 0, top.unpack(w));
                      for (std::size_t i = 0; i < x.size(); ++i) v[b0.offset + i] = x[i];
                      return v;
                  }});
    st.push_back({Quotient("H^" + std::to_string(k + 1) + "(R^delta)", kernel(t.full.diff(0)), image(t.full.diff(1))), {}});

    // images and kernels
    std::vector<LinearSubspace> im(st.size()), ker(st.size());
    std::vector<bool> well(st.size(), true);
    for (std::size_t i = 0; i < st.size(); ++i) {
        const auto& q = st[i].q;
        if (!st[i].out) continue;
        const auto& next = st[i + 1].q;
        auto zs = rows_dense(q.cycles());
        std::vector<Vector> imgs;
        for (const auto& z : zs) imgs.push_back(st[i].out(z));
        Matrix M = columns_of(imgs, next.ambient_dim());
        for (const auto& y : imgs)
            if (!next.cycles().contains(y)) well[i + 1] = false;
        for (const auto& b : rows_dense(q.boundaries()))
            if (!next.boundaries().contains(st[i].out(b))) well[i + 1] = false;
        im[i + 1] = image(M).sum(next.boundaries());
        LinearSubspace c = preimage(M, next.boundaries());
        Matrix zb = q.cycles().basis();
        LinearSubspace kz = LinearSubspace::span(zb.rows() ? c.basis() * zb : Matrix(0, q.ambient_dim()));
        ker[i] = kz.sum(q.boundaries());
    }
    static const char* names1[] = {"H^1_dR", "H^1(R^delta)", "H^1_conn", "H^2_dR", "H^2(R^delta)"};
    for (std::size_t i = 0; i < st.size(); ++i) {
        ExactnessAt e;
        e.term = k == 1 ? names1[i] : st[i].q.name();
        e.dim = st[i].q.dim();
        e.well_defined = well[i];
        bool has_in = i > 0, has_out = bool(st[i].out);
        if (has_out) e.ker_dim = ker[i].dim() - st[i].q.boundaries().dim();
        if (has_in) e.im_dim = im[i].dim() - st[i].q.boundaries().dim();
        if (k == 1 && i == 0) e.exact = ker[0] == st[0].q.boundaries();  // theta injective
        else if (has_in && has_out) e.exact = ker[i] == im[i];
        rep.terms.push_back(e);
    }
    return rep;
}

CheckResult check_curvature_uniqueness(const PlotDiagram& d, const CocycleData& g, const ConnectionData& A,
                                       const ConnectionData& A2) {
    if (auto r = check_connection(d, g, A); !r) return {false, "first connection: " + r.violation};
    if (auto r = check_connection(d, g, A2); !r) return {false, "second connection: " + r.violation};
    std::vector<PolyForm> diff, dA, dA2;
    for (std::size_t o = 0; o < A.A.size(); ++o) {
        diff.push_back(A2.A[o] - A.A[o]);
        dA.push_back(forms::exterior_d(A.A[o]));
        dA2.push_back(forms::exterior_d(A2.A[o]));
    }
    try {
        require_global(d, diff);
        require_global(d, dA);
        require_global(d, dA2);
    } catch (const NotGlobal& e) {
        return {false, e.what()};
    }
    for (std::size_t o = 0; o < diff.size(); ++o)
        if (!(dA2[o] - dA[o] == forms::exterior_d(diff[o])))
            return {false, "dA' - dA differs from d(A' - A) on " + d.object(o).id};
    return {};
}

}  // namespace diffcoh::plotdiag
