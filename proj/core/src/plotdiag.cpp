#include "diffcoh/plotdiag.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "diffcoh/errors.hpp"

namespace diffcoh::plotdiag {

using chaincx::ChainComplex;
using chaincx::ChainMap;
using forms::PolyForm;

std::size_t PlotDiagram::add_object(const std::string& id, std::size_t dim) {
    objects_.push_back({id, dim});
    std::size_t o = objects_.size() - 1;
    morphisms_.push_back({"id_" + id, o, o, PolyMap::identity(dim), true});
    identities_.push_back(morphisms_.size() - 1);
    return o;
}

std::size_t PlotDiagram::add_morphism(const std::string& id, std::size_t src, std::size_t tgt, PolyMap map) {
    if (src >= objects_.size() || tgt >= objects_.size()) throw InvalidDiagram("morphism " + id + " has an unknown end");
    morphisms_.push_back({id, src, tgt, std::move(map), false});
    return morphisms_.size() - 1;
}

void PlotDiagram::set_composite(std::size_t g, std::size_t f, std::size_t gf) {
    if (g >= morphisms_.size() || f >= morphisms_.size() || gf >= morphisms_.size())
        throw InvalidDiagram("composite refers to an unknown morphism");
    table_[{g, f}] = gf;
}

std::optional<std::size_t> PlotDiagram::find_object(const std::string& id) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i].id == id) return i;
    return std::nullopt;
}

std::optional<std::size_t> PlotDiagram::find_morphism(const std::string& id) const {
    for (std::size_t i = 0; i < morphisms_.size(); ++i)
        if (morphisms_[i].id == id) return i;
    return std::nullopt;
}

std::vector<std::size_t> PlotDiagram::non_identity() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < morphisms_.size(); ++i)
        if (!morphisms_[i].identity) out.push_back(i);
    return out;
}

std::optional<std::size_t> PlotDiagram::compose(std::size_t g, std::size_t f) const {
    if (morphisms_.at(f).tgt != morphisms_.at(g).src) return std::nullopt;
    if (morphisms_[g].identity) return f;
    if (morphisms_[f].identity) return g;
    auto it = table_.find({g, f});
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> PlotDiagram::height() const {
    // longest path by DFS; state 1 = on the stack
    std::vector<int> state(objects_.size(), 0);
    std::vector<std::size_t> longest(objects_.size(), 0);
    std::vector<std::vector<std::size_t>> out(objects_.size());
    for (const auto& m : morphisms_)
        if (!m.identity) out[m.src].push_back(m.tgt);
    bool cyclic = false;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        state[v] = 1;
        for (std::size_t w : out[v]) {
            if (state[w] == 1) cyclic = true;
            if (state[w] == 0) visit(w);
            if (cyclic) return;
            longest[v] = std::max(longest[v], longest[w] + 1);
        }
        state[v] = 2;
    };
    std::size_t h = 0;
    for (std::size_t v = 0; v < objects_.size() && !cyclic; ++v) {
        if (state[v] == 0) visit(v);
        h = std::max(h, longest[v]);
    }
    if (cyclic) return std::nullopt;
    return h;
}

std::size_t PlotDiagram::chain_bound() const {
    auto h = height();
    if (h && (!n_max_ || *h <= *n_max_)) return *h;
    if (n_max_) return *n_max_;
    throw ChainBoundExceeded("nondegenerate chains are unbounded and no n_max is given");
}

std::vector<std::string> validate_diagram(const PlotDiagram& d) {
    std::vector<std::string> v;
    const auto& ms = d.morphisms();
    for (const auto& m : ms) {
        if (m.map.source_dim() != d.object(m.src).dim || m.map.target_dim() != d.object(m.tgt).dim)
            v.push_back("morphism " + m.id + ": map has the wrong dimensions");
        if (m.identity && !m.map.is_identity()) v.push_back("identity " + m.id + " is not the identity map");
    }
    auto nonid = d.non_identity();
    for (std::size_t f : nonid)
        for (std::size_t g : nonid) {
            if (ms[f].tgt != ms[g].src) continue;
            std::string name = ms[g].id + " o " + ms[f].id;
            auto h = d.compose(g, f);
            if (!h) {
                v.push_back("composite " + name + " is missing from the table");
                continue;
            }
            if (ms[*h].src != ms[f].src || ms[*h].tgt != ms[g].tgt) {
                v.push_back("composite " + name + " has the wrong ends");
                continue;
            }
            if (!(compose(ms[g].map, ms[f].map) == ms[*h].map))
                v.push_back("functoriality: label of " + ms[*h].id + " differs from " + name);
        }
    for (const auto& [key, gf] : d.composites()) {
        auto [g, f] = key;
        if (ms[f].tgt != ms[g].src) v.push_back("table entry " + ms[g].id + " o " + ms[f].id + " is not composable");
    }
    // associativity on composable triples
    for (std::size_t f : nonid)
        for (std::size_t g : nonid)
            for (std::size_t h : nonid) {
                if (ms[f].tgt != ms[g].src || ms[g].tgt != ms[h].src) continue;
                auto gf = d.compose(g, f), hg = d.compose(h, g);
                if (!gf || !hg) continue;
                auto a = d.compose(h, *gf), b = d.compose(*hg, f);
                if (a != b) v.push_back("associativity fails for " + ms[h].id + " o " + ms[g].id + " o " + ms[f].id);
            }
    if (!d.height() && !d.n_max()) v.push_back("nerve is not finite: non-identity morphisms form a cycle and no n_max is given");
    return v;
}

Preset parse_preset(const std::string& s) {
    if (s == "circle_3arc") return Preset::circle_3arc;
    if (s == "interval_2chart") return Preset::interval_2chart;
    if (s == "torus_9patch") return Preset::torus_9patch;
    throw ParseError("unknown preset '" + s + "'");
}

std::string to_string(Preset p) {
    switch (p) {
    case Preset::circle_3arc: return "circle_3arc";
    case Preset::interval_2chart: return "interval_2chart";
    case Preset::torus_9patch: return "torus_9patch";
    }
    return "?";
}

namespace {

PolyMap shift_by(std::vector<long> t) {
    std::vector<Rational> r;
    for (long x : t) r.emplace_back(x);
    return PolyMap::translation(r);
}

// vertices of the 3x3 triangulated torus, lifted to Z^2
using Pt = std::pair<long, long>;

PlotDiagram torus_9patch() {
    struct Simplex {
        std::string id;
        std::vector<Pt> lift;
    };
    std::vector<Simplex> simplices;
    auto name = [](char c, long i, long j) { return std::string(1, c) + std::to_string(i) + std::to_string(j); };
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) simplices.push_back({name('v', i, j), {{i, j}}});
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) {
            simplices.push_back({name('h', i, j), {{i, j}, {i + 1, j}}});
            simplices.push_back({name('u', i, j), {{i, j}, {i, j + 1}}});
            simplices.push_back({name('d', i, j), {{i, j}, {i + 1, j + 1}}});
        }
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) {
            simplices.push_back({name('L', i, j), {{i, j}, {i + 1, j}, {i + 1, j + 1}}});
            simplices.push_back({name('U', i, j), {{i, j}, {i, j + 1}, {i + 1, j + 1}}});
        }
    auto mod3 = [](Pt p) { return Pt{((p.first % 3) + 3) % 3, ((p.second % 3) + 3) % 3}; };
    auto verts = [&](const Simplex& s) {
        std::set<Pt> out;
        for (auto p : s.lift) out.insert(mod3(p));
        return out;
    };

    PlotDiagram d;
    for (const auto& s : simplices) d.add_object(s.id, 2);
    // U_tau -> U_sigma for each proper face sigma of tau
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mor;
    for (std::size_t t = 0; t < simplices.size(); ++t)
        for (std::size_t s = 0; s < simplices.size(); ++s) {
            if (s == t) continue;
            auto vs = verts(simplices[s]), vt = verts(simplices[t]);
            if (vs.size() >= vt.size() || !std::includes(vt.begin(), vt.end(), vs.begin(), vs.end())) continue;
            std::vector<Pt> copy;
            for (auto p : simplices[t].lift)
                if (vs.count(mod3(p))) copy.push_back(p);
            Pt a = *std::min_element(simplices[s].lift.begin(), simplices[s].lift.end());
            Pt b = *std::min_element(copy.begin(), copy.end());
            std::size_t m = d.add_morphism(simplices[t].id + ">" + simplices[s].id, t, s,
                                           shift_by({a.first - b.first, a.second - b.second}));
            mor[{t, s}] = m;
        }
    for (const auto& [ts, m1] : mor)
        for (const auto& [su, m2] : mor)
            if (ts.second == su.first) d.set_composite(m2, m1, mor.at({ts.first, su.second}));
    return d;
}

}  // namespace

PlotDiagram good_cover_diagram(Preset p) {
    PlotDiagram d;
    switch (p) {
    case Preset::interval_2chart: {
        auto a0 = d.add_object("A0", 1), a1 = d.add_object("A1", 1), o = d.add_object("O01", 1);
        d.add_morphism("O01>A0", o, a0, PolyMap::identity(1));
        d.add_morphism("O01>A1", o, a1, PolyMap::identity(1));
        break;
    }
    case Preset::circle_3arc: {
        // angle charts on R/Z; the overlap O20 sits at the seam and enters A0 shifted by one turn
        std::size_t a[3], o[3];
        for (int i = 0; i < 3; ++i) a[i] = d.add_object("A" + std::to_string(i), 1);
        for (int i = 0; i < 3; ++i)
            o[i] = d.add_object("O" + std::to_string(i) + std::to_string((i + 1) % 3), 1);
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            std::string on = d.object(o[i]).id;
            d.add_morphism(on + ">A" + std::to_string(i), o[i], a[i], PolyMap::identity(1));
            d.add_morphism(on + ">A" + std::to_string(j), o[i], a[j], j == 0 ? shift_by({1}) : PolyMap::identity(1));
        }
        break;
    }
    case Preset::torus_9patch: return torus_9patch();
    }
    return d;
}

std::string chain_name(const PlotDiagram& d, const NerveChain& c) {
    if (c.maps.empty()) return d.object(c.source).id;
    // written (f_{n-1}, ..., f_0)
    std::string s = "(";
    for (std::size_t i = 0; i < c.maps.size(); ++i) s += (i ? "," : "") + d.morphism(c.maps[i]).id;
    return s + ")";
}

namespace {

std::vector<NerveChain> enumerate(const PlotDiagram& d, std::size_t n, bool with_identities) {
    std::vector<NerveChain> level;
    for (std::size_t o = 0; o < d.objects().size(); ++o) level.push_back({o, o, {}});
    for (std::size_t l = 1; l <= n; ++l) {
        std::vector<NerveChain> next;
        if (l == 1) {
            for (std::size_t m = 0; m < d.morphisms().size(); ++m) {
                const auto& mm = d.morphism(m);
                if (mm.identity && !with_identities) continue;
                next.push_back({mm.src, mm.tgt, {m}});
            }
        } else {
            for (const auto& c : level)
                for (std::size_t m = 0; m < d.morphisms().size(); ++m) {
                    const auto& mm = d.morphism(m);
                    if ((mm.identity && !with_identities) || mm.src != c.target) continue;
                    NerveChain e = c;
                    e.maps.push_back(m);
                    e.target = mm.tgt;
                    next.push_back(std::move(e));
                }
        }
        level = std::move(next);
        if (level.empty()) break;
    }
    return level;
}

std::vector<std::size_t> chain_key(const NerveChain& c) {
    std::vector<std::size_t> k{c.source};
    k.insert(k.end(), c.maps.begin(), c.maps.end());
    return k;
}

using ChainIndex = std::map<std::vector<std::size_t>, std::size_t>;

ChainIndex index_of(const std::vector<NerveChain>& cs) {
    ChainIndex idx;
    for (std::size_t i = 0; i < cs.size(); ++i) idx[chain_key(cs[i])] = i;
    return idx;
}

ChainComplex shifted(const ChainComplex& c, std::size_t shift) {
    if (shift == 0) return c;
    std::vector<std::size_t> dims(shift, 0);
    std::vector<Matrix> ds;
    for (std::size_t q = 0; q <= c.length(); ++q) dims.push_back(c.dim(long(q)));
    for (std::size_t q = 1; q < dims.size(); ++q)
        ds.push_back(q > shift ? c.d(long(q - shift)) : Matrix(dims[q - 1], dims[q]));
    return ChainComplex(dims, ds);
}

// stack evaluations per ambient dimension, and restriction matrices per morphism and degree
class Sections {
public:
    Sections(const PlotDiagram& d, const StackModel& s, const Budget& b, std::size_t shift)
        : d_(d), s_(s), b_(b), shift_(shift) {}

    const stacks::Evaluated& on(std::size_t dim) {
        auto it = eval_.find(dim);
        if (it == eval_.end()) it = eval_.emplace(dim, s_.evaluate_full(dim, b_)).first;
        return it->second;
    }
    ChainComplex complex(std::size_t obj) { return shifted(on(d_.object(obj).dim).complex, shift_); }
    std::size_t top() const { return s_.length() + shift_; }
    const forms::SheafValue* slot(std::size_t obj, long q) {
        long qq = q - long(shift_);
        const auto& e = on(d_.object(obj).dim);
        if (qq < 0 || std::size_t(qq) >= e.slots.size()) return nullptr;
        return &e.slots[std::size_t(qq)];
    }
    std::size_t dim(std::size_t obj, long q) {
        auto* sv = slot(obj, q);
        return sv ? sv->dim() : 0;
    }
    // sections on tgt(m) -> sections on src(m)
    const Matrix& pull(std::size_t m, long q) {
        auto key = std::make_pair(m, q);
        auto it = pull_.find(key);
        if (it != pull_.end()) return it->second;
        const auto& mm = d_.morphism(m);
        Matrix out(dim(mm.src, q), dim(mm.tgt, q));
        if (mm.identity) out = Matrix::identity(dim(mm.src, q));
        else if (out.rows() > 0 && out.cols() > 0) {
            auto* t = slot(mm.tgt, q);
            auto* s = slot(mm.src, q);
            out = restrict_map(forms::pullback_matrix(mm.map, t->ambient, s->ambient), t->sections, s->sections);
        }
        return pull_.emplace(key, std::move(out)).first->second;
    }

private:
    const PlotDiagram& d_;
    StackModel s_;
    Budget b_;
    std::size_t shift_;
    std::map<std::size_t, stacks::Evaluated> eval_;
    std::map<std::pair<std::size_t, long>, Matrix> pull_;
};

// block offsets of the chains of one level in chain degree q
std::vector<std::size_t> offsets_of(Sections& sec, const std::vector<NerveChain>& cs, long q) {
    std::vector<std::size_t> off;
    std::size_t o = 0;
    for (const auto& c : cs) {
        off.push_back(o);
        o += sec.dim(c.source, q);
    }
    off.push_back(o);
    return off;
}

// coface d^i : level p-1 -> level p (on the given chain lists); degenerate faces skipped when
// the lower level has no entry for them
Matrix coface_matrix(const PlotDiagram& d, Sections& sec, const std::vector<NerveChain>& lower,
                     const ChainIndex& lower_idx, const std::vector<NerveChain>& upper, std::size_t i, long q) {
    auto lo = offsets_of(sec, lower, q), up = offsets_of(sec, upper, q);
    Matrix m(up.back(), lo.back());
    for (std::size_t t = 0; t < upper.size(); ++t) {
        NerveChain f = face(d, upper[t], i);
        auto it = lower_idx.find(chain_key(f));
        if (it == lower_idx.end()) continue;
        if (i == 0) m.add_block(up[t], lo[it->second], sec.pull(upper[t].maps[0], q));
        else m.add_block(up[t], lo[it->second], Matrix::identity(sec.dim(upper[t].source, q)));
    }
    return m;
}

ChainComplex level_complex(Sections& sec, const std::vector<NerveChain>& cs) {
    std::size_t Q = sec.top();
    std::vector<std::size_t> dims;
    std::vector<Matrix> ds;
    for (std::size_t q = 0; q <= Q; ++q) dims.push_back(offsets_of(sec, cs, long(q)).back());
    for (std::size_t q = 1; q <= Q; ++q) {
        auto lo = offsets_of(sec, cs, long(q) - 1), hi = offsets_of(sec, cs, long(q));
        Matrix m(lo.back(), hi.back());
        for (std::size_t c = 0; c < cs.size(); ++c) {
            ChainComplex cc = sec.complex(cs[c].source);
            m.add_block(lo[c], hi[c], cc.d(long(q)));
        }
        ds.push_back(std::move(m));
    }
    return ChainComplex(dims, ds);
}

}  // namespace

std::vector<NerveChain> nerve_chains(const PlotDiagram& d, std::size_t n) {
    if (d.n_max() && n > *d.n_max()) throw ChainBoundExceeded("level " + std::to_string(n) + " is above n_max");
    auto h = d.height();
    if (!h && !d.n_max()) throw ChainBoundExceeded("nondegenerate chains are unbounded and no n_max is given");
    if (h && n > *h) return {};
    return enumerate(d, n, false);
}

std::vector<NerveChain> all_chains(const PlotDiagram& d, std::size_t n) { return enumerate(d, n, true); }

NerveChain face(const PlotDiagram& d, const NerveChain& c, std::size_t i) {
    std::size_t n = c.level();
    if (n == 0 || i > n) throw InvalidParameters("face index out of range");
    NerveChain f;
    if (i == 0) {
        f.maps.assign(c.maps.begin() + 1, c.maps.end());
        f.source = d.morphism(c.maps[0]).tgt;
        f.target = c.target;
    } else if (i == n) {
        f.maps.assign(c.maps.begin(), c.maps.end() - 1);
        f.source = c.source;
        f.target = d.morphism(c.maps[n - 1]).src;
    } else {
        auto comp = d.compose(c.maps[i], c.maps[i - 1]);
        if (!comp)
            throw InvalidDiagram("composite " + d.morphism(c.maps[i]).id + " o " + d.morphism(c.maps[i - 1]).id +
                                 " is missing");
        f.maps = c.maps;
        f.maps[i - 1] = *comp;
        f.maps.erase(f.maps.begin() + long(i));
        f.source = c.source;
        f.target = c.target;
    }
    return f;
}

bool is_degenerate(const PlotDiagram& d, const NerveChain& c) {
    return std::any_of(c.maps.begin(), c.maps.end(), [&](std::size_t m) { return d.morphism(m).identity; });
}

NerveChain degeneracy(const PlotDiagram& d, const NerveChain& c, std::size_t j) {
    if (j > c.level()) throw InvalidParameters("degeneracy index out of range");
    std::size_t v = j == 0 ? c.source : d.morphism(c.maps[j - 1]).tgt;
    NerveChain s = c;
    s.maps.insert(s.maps.begin() + long(j), d.identity(v));
    return s;
}

totalize::CosimplicialChain evaluate_cosimplicial(const PlotDiagram& d, const StackModel& s, const Budget& b,
                                                  std::size_t top, std::size_t shift) {
    Sections sec(d, s, b, shift);
    std::vector<std::vector<NerveChain>> chains;
    std::vector<ChainIndex> idx;
    std::vector<ChainComplex> levels;
    for (std::size_t p = 0; p <= top; ++p) {
        chains.push_back(all_chains(d, p));
        idx.push_back(index_of(chains.back()));
        levels.push_back(level_complex(sec, chains.back()));
    }
    std::size_t Q = sec.top();
    std::vector<std::vector<ChainMap>> cofaces(top + 1), codegens(top + 1);
    for (std::size_t p = 1; p <= top; ++p) {
        for (std::size_t i = 0; i <= p; ++i) {
            std::vector<Matrix> comps;
            for (std::size_t q = 0; q <= Q; ++q)
                comps.push_back(coface_matrix(d, sec, chains[p - 1], idx[p - 1], chains[p], i, long(q)));
            cofaces[p].emplace_back(levels[p - 1], levels[p], std::move(comps));
        }
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<Matrix> comps;
            for (std::size_t q = 0; q <= Q; ++q) {
                auto lo = offsets_of(sec, chains[p - 1], long(q)), up = offsets_of(sec, chains[p], long(q));
                Matrix m(lo.back(), up.back());
                for (std::size_t c = 0; c < chains[p - 1].size(); ++c) {
                    std::size_t t = idx[p].at(chain_key(degeneracy(d, chains[p - 1][c], j)));
                    m.add_block(lo[c], up[t], Matrix::identity(sec.dim(chains[p - 1][c].source, long(q))));
                }
                comps.push_back(std::move(m));
            }
            codegens[p].emplace_back(levels[p], levels[p - 1], std::move(comps));
        }
    }
    return totalize::CosimplicialChain(levels, cofaces, codegens, false);
}

namespace {

totalize::DoubleComplex build_normalized(const PlotDiagram& d, Sections& sec,
                                         const std::vector<std::vector<NerveChain>>& chains, bool exhaustive) {
    std::size_t P = chains.size() - 1, Q = sec.top();
    std::vector<ChainIndex> idx;
    for (const auto& cs : chains) idx.push_back(index_of(cs));
    std::vector<std::vector<std::size_t>> dims(P + 1);
    std::vector<std::vector<Matrix>> vertical(P + 1), horizontal(P);
    for (std::size_t p = 0; p <= P; ++p) {
        ChainComplex lc = level_complex(sec, chains[p]);
        for (std::size_t q = 0; q <= Q; ++q) dims[p].push_back(lc.dim(long(q)));
        for (std::size_t q = 1; q <= Q; ++q) vertical[p].push_back(lc.d(long(q)));
    }
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q <= Q; ++q) {
            Matrix m(dims[p + 1][q], dims[p][q]);
            for (std::size_t i = 0; i <= p + 1; ++i) {
                Matrix f = coface_matrix(d, sec, chains[p], idx[p], chains[p + 1], i, long(q));
                if (i % 2) m -= f;
                else m += f;
            }
            horizontal[p].push_back(std::move(m));
        }
    return totalize::DoubleComplex(dims, vertical, horizontal, exhaustive);
}

}  // namespace

NerveEvaluation::NerveEvaluation(const PlotDiagram& d, const StackModel& s, const Budget& b, std::size_t shift)
    : d_(&d), stack_(s), budget_(b), shift_(shift), dc_({{0}}, {{}}, {}) {
    std::size_t P = d.chain_bound();
    auto h = d.height();
    bool exhaustive = h && *h <= P;
    for (std::size_t p = 0; p <= P; ++p) chains_.push_back(nerve_chains(d, p));
    Sections sec(d, s, b, shift);
    offsets_.resize(P + 1);
    for (std::size_t p = 0; p <= P; ++p)
        for (std::size_t q = 0; q <= sec.top(); ++q) offsets_[p].push_back(offsets_of(sec, chains_[p], long(q)));
    for (const auto& o : d.objects()) per_dim_.emplace(o.dim, sec.on(o.dim));
    dc_ = build_normalized(d, sec, chains_, exhaustive);
}

const forms::SheafValue& NerveEvaluation::slot(std::size_t p, long q, std::size_t c) const {
    static const forms::SheafValue empty{forms::FormSpace(0, 0, -1), LinearSubspace(0)};
    long qq = q - long(shift_);
    const auto& e = per_dim_.at(d_->object(chains_.at(p).at(c).source).dim);
    if (qq < 0 || std::size_t(qq) >= e.slots.size()) return empty;
    return e.slots[std::size_t(qq)];
}

std::size_t NerveEvaluation::offset(std::size_t p, long q, std::size_t c) const {
    return offsets_.at(p).at(std::size_t(q)).at(c);
}

Vector NerveEvaluation::pack(std::size_t p, long q, const std::vector<PolyForm>& per_chain) const {
    const auto& cs = chains_.at(p);
    if (per_chain.size() != cs.size())
        throw ShapeMismatch("expected " + std::to_string(cs.size()) + " forms at level " + std::to_string(p));
    Vector v(dc_.dim(long(p), q), Rational(0));
    for (std::size_t c = 0; c < cs.size(); ++c) {
        const auto& sv = slot(p, q, c);
        if (sv.dim() == 0) {
            if (!per_chain[c].is_zero()) throw SubspaceNotContained("nonzero form in a zero slot at " + chain_name(*d_, cs[c]));
            continue;
        }
        Vector x = sv.sections.coordinates(sv.ambient.to_sparse(per_chain[c]));
        std::size_t o = offset(p, q, c);
        for (std::size_t i = 0; i < x.size(); ++i) v[o + i] = x[i];
    }
    return v;
}

std::vector<PolyForm> NerveEvaluation::unpack(std::size_t p, long q, const Vector& v) const {
    const auto& cs = chains_.at(p);
    std::vector<PolyForm> out;
    for (std::size_t c = 0; c < cs.size(); ++c) {
        const auto& sv = slot(p, q, c);
        std::size_t o = offset(p, q, c);
        SparseVector amb;
        Matrix basis = sv.sections.basis();
        for (std::size_t i = 0; i < sv.dim(); ++i)
            if (!v[o + i].is_zero()) amb.axpy(v[o + i], basis.row(i));
        if (sv.dim() == 0) {
            long qq = q - long(shift_);
            auto sl = stack_.slot(qq);
            out.emplace_back(d_->object(cs[c].source).dim, sl.form_degree, budget_.bound(sl.form_degree));
        } else {
            out.push_back(sv.ambient.from_sparse(amb));
        }
    }
    return out;
}

totalize::FlaggedDim stack_cohomology_flagged(const PlotDiagram& d, const StackModel& s, std::size_t n, const Budget& b) {
    NerveEvaluation ev(d, s, b, n);
    return totalize::tot_cohomology_flagged(ev.double_complex(), 0);
}

std::size_t stack_cohomology(const PlotDiagram& d, const StackModel& s, std::size_t n, const Budget& b) {
    return stack_cohomology_flagged(d, s, n, b).dim;
}

std::size_t stack_cohomology(const PlotDiagram& d, const StackModel& s, std::size_t n, long D) {
    return stack_cohomology(d, s, n, Budget{D, forms::Grading::Weight});
}

CocycleData zero_cocycle(const PlotDiagram& d) {
    CocycleData g;
    for (const auto& m : d.morphisms()) g.g.push_back(Polynomial(d.object(m.src).dim));
    return g;
}

CocycleData coboundary(const PlotDiagram& d, const std::vector<Polynomial>& lambda) {
    if (lambda.size() != d.objects().size()) throw ShapeMismatch("one function per object expected");
    CocycleData g;
    for (const auto& m : d.morphisms()) {
        if (m.identity) {
            g.g.push_back(Polynomial(d.object(m.src).dim));
            continue;
        }
        g.g.push_back(lambda[m.tgt].compose(m.map.components(), m.map.source_dim()) - lambda[m.src]);
    }
    return g;
}

namespace {

void check_cocycle_shape(const PlotDiagram& d, const CocycleData& g) {
    if (g.g.size() != d.morphisms().size()) throw ShapeMismatch("one function per morphism expected");
}

Polynomial pull_fn(const PlotMorphism& m, const Polynomial& f) { return f.compose(m.map.components(), m.map.source_dim()); }

}  // namespace

CheckResult check_cocycle(const PlotDiagram& d, const CocycleData& g) {
    check_cocycle_shape(d, g);
    const auto& ms = d.morphisms();
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (ms[i].identity && !g.g[i].terms().empty()) return {false, "g is nonzero on identity " + ms[i].id};
    auto nonid = d.non_identity();
    for (std::size_t f1 : nonid)
        for (std::size_t f0 : nonid) {
            if (ms[f1].tgt != ms[f0].src) continue;
            auto c = d.compose(f0, f1);
            if (!c) return {false, "composite " + ms[f0].id + " o " + ms[f1].id + " is missing"};
            // g_{f0 f1} = g_{f0} o f1 + g_{f1}
            if (!(g.g[*c] == pull_fn(ms[f1], g.g[f0]) + g.g[f1]))
                return {false, "cocycle identity fails on (" + ms[f1].id + "," + ms[f0].id + ")"};
        }
    return {};
}

CheckResult check_morphism(const PlotDiagram& d, const std::vector<Polynomial>& h, const CocycleData& g,
                           const CocycleData& g2) {
    check_cocycle_shape(d, g);
    check_cocycle_shape(d, g2);
    if (h.size() != d.objects().size()) throw ShapeMismatch("one function per object expected");
    for (std::size_t f : d.non_identity()) {
        const auto& m = d.morphism(f);
        // g'_f + h_src = h_tgt o f + g_f
        if (!(g2.g[f] + h[m.src] == pull_fn(m, h[m.tgt]) + g.g[f]))
            return {false, "morphism equation fails on " + m.id};
    }
    return {};
}

CheckResult check_connection(const PlotDiagram& d, const CocycleData& g, const ConnectionData& A) {
    check_cocycle_shape(d, g);
    if (A.A.size() != d.objects().size()) throw ShapeMismatch("one 1-form per object expected");
    for (std::size_t o = 0; o < A.A.size(); ++o)
        if (A.A[o].degree() != 1 || A.A[o].ambient_dim() != d.object(o).dim)
            throw ShapeMismatch("connection on " + d.object(o).id + " is not a 1-form on R^" +
                                std::to_string(d.object(o).dim));
    for (std::size_t f : d.non_identity()) {
        const auto& m = d.morphism(f);
        // A_src - f^* A_tgt = d g_f
        PolyForm lhs = A.A[m.src] - forms::pullback(m.map, A.A[m.tgt]);
        PolyForm rhs = forms::exterior_d(PolyForm::function(g.g[f]));
        if (!(lhs == rhs)) return {false, "connection equation fails on " + m.id};
    }
    return {};
}

namespace {

long max_map_degree(const PlotDiagram& d) {
    long M = 1;
    for (const auto& m : d.morphisms()) M = std::max(M, m.map.degree());
    return M;
}

// a tot degree vector from per-level blocks (p, q = p + deg)
Vector pack_tot(const NerveEvaluation& ev, const totalize::TotComplex& t, long deg,
                const std::vector<std::vector<PolyForm>>& comps) {
    Vector v(t.full.dim(deg), Rational(0));
    for (const auto& bl : t.layout[std::size_t(deg + 1)]) {
        std::size_t p = std::size_t(bl.p);
        if (p >= comps.size() || p >= ev.columns()) continue;
        Vector x = ev.pack(p, bl.q, comps[p]);
        for (std::size_t i = 0; i < x.size(); ++i) v[bl.offset + i] = x[i];
    }
    return v;
}

}  // namespace

long gerbe_budget(const PlotDiagram& d, const GerbeData& data) {
    long e = 0;
    for (const auto& level : data.components)
        for (const auto& f : level) e = std::max(e, f.max_coeff_degree());
    long M = max_map_degree(d);
    return e * M + long(data.k) * (M - 1);
}

CheckResult check_gerbe(const PlotDiagram& d, const GerbeData& data) {
    if (data.k == 0) throw InvalidParameters("gerbe level k must be >= 1");
    if (d.n_max() && data.k + 1 > *d.n_max()) throw ChainBoundExceeded("gerbe check needs chains up to level k+1");
    if (data.components.size() != data.k + 1) throw ShapeMismatch("gerbe data needs k+1 components");
    NerveEvaluation ev(d, StackModel(stacks::StackName::BkNablaR, data.k),
                       Budget{gerbe_budget(d, data), forms::Grading::Uniform});
    auto t = totalize::tot(ev.double_complex());
    Vector x = pack_tot(ev, t, 0, data.components);
    Vector y = t.full.diff(0).apply(x);
    for (const auto& bl : t.layout[0]) {
        std::size_t p = std::size_t(bl.p);
        if (p >= ev.columns()) continue;
        const auto& cs = ev.chains(p);
        for (std::size_t c = 0; c < cs.size(); ++c) {
            std::size_t o = bl.offset + ev.offset(p, bl.q, c);
            for (std::size_t i = 0; i < ev.slot(p, bl.q, c).dim(); ++i)
                if (!y[o + i].is_zero())
                    return {false, "D(data) != 0 at (p=" + std::to_string(bl.p) + ", q=" + std::to_string(bl.q) +
                                       ") on " + chain_name(d, cs[c])};
        }
    }
    return {};
}

GerbeData zero_gerbe(const PlotDiagram& d, std::size_t k, long bound) {
    GerbeData g;
    g.k = k;
    for (std::size_t p = 0; p <= k; ++p) {
        std::vector<PolyForm> level;
        for (const auto& c : nerve_chains(d, p)) level.emplace_back(d.object(c.source).dim, k - p, bound);
        g.components.push_back(std::move(level));
    }
    return g;
}

GerbeData gerbe_boundary(const PlotDiagram& d, std::size_t k, const std::vector<std::vector<PolyForm>>& x) {
    if (k == 0 || x.size() != k) throw ShapeMismatch("a tot degree 1 element needs k components");
    GerbeData probe{k, x};
    probe.components.emplace_back();
    long D = gerbe_budget(d, probe);
    NerveEvaluation ev(d, StackModel(stacks::StackName::BkNablaR, k), Budget{D, forms::Grading::Uniform});
    auto t = totalize::tot(ev.double_complex());
    Vector y = t.full.diff(1).apply(pack_tot(ev, t, 1, x));
    GerbeData out;
    out.k = k;
    out.components.resize(k + 1);
    for (const auto& bl : t.layout[1]) {
        std::size_t p = std::size_t(bl.p);
        if (p > k) continue;
        if (p >= ev.columns()) {
            out.components[p] = {};
            continue;
        }
        Vector part(y.begin() + long(bl.offset), y.begin() + long(bl.offset + ev.double_complex().dim(bl.p, bl.q)));
        out.components[p] = ev.unpack(p, bl.q, part);
    }
    return out;
}

}  // namespace diffcoh::plotdiag
