#include "diffcoh/torus.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "diffcoh/matrix.hpp"
#include "diffcoh/polynomial.hpp"
#include "diffcoh/subspace.hpp"
#include "located_json.hpp"

namespace diffcoh::torus {

// ---------------------------------------------------------------- group cohomology

namespace {

std::size_t popcount(unsigned long long s) { return std::size_t(__builtin_popcountll(s)); }

// cochain differential of the Koszul complex for the character chi: Hom(K_k, R) -> Hom(K_{k+1}, R),
// K_k = Lambda^k R^n (x) R[Z^n], d e_i = (t_i - 1).
Matrix koszul_coboundary(std::size_t n, const std::vector<Rational>& chi,
                         const std::vector<unsigned long long>& lo, const std::vector<unsigned long long>& hi) {
    std::map<unsigned long long, std::size_t> col;
    for (std::size_t j = 0; j < lo.size(); ++j) col[lo[j]] = j;
    Matrix m(hi.size(), lo.size());
    for (std::size_t r = 0; r < hi.size(); ++r) {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(hi[r] >> i & 1ULL)) continue;
            Rational sign = pos % 2 ? Rational(-1) : Rational(1);
            m.add_to(r, col.at(hi[r] & ~(1ULL << i)), sign * (chi[i] - Rational(1)));
            ++pos;
        }
    }
    return m;
}

std::vector<unsigned long long> subsets(std::size_t n, std::size_t k) {
    std::vector<unsigned long long> out;
    for (unsigned long long s = 0; s < (1ULL << n); ++s)
        if (popcount(s) == k) out.push_back(s);
    return out;
}

}  // namespace

std::size_t koszul_group_cohomology(std::size_t n, std::size_t k) {
    if (n > 20) throw InvalidParameters("koszul_group_cohomology: rank above 20");
    if (k > n) return 0;
    std::vector<Rational> chi(n, Rational(1));  // trivial action
    auto below = k ? subsets(n, k - 1) : std::vector<unsigned long long>{};
    auto here = subsets(n, k);
    auto above = k < n ? subsets(n, k + 1) : std::vector<unsigned long long>{};
    std::size_t r_out = above.empty() ? 0 : rank(koszul_coboundary(n, chi, here, above));
    std::size_t r_in = below.empty() ? 0 : rank(koszul_coboundary(n, chi, below, here));
    return here.size() - r_out - r_in;
}

namespace {

// bar coboundary C^k -> C^{k+1} on polynomial cochains of degree <= t; variable a*n + c is
// coordinate c of the group argument g_{a+1}
Matrix bar_coboundary(std::size_t n, std::size_t k, std::size_t t) {
    auto src = monomials_up_to(k * n, long(t));
    auto tgt = monomials_up_to((k + 1) * n, long(t));
    std::map<Monomial, std::size_t> row;
    for (std::size_t i = 0; i < tgt.size(); ++i) row[tgt[i]] = i;
    std::size_t m = (k + 1) * n;

    // substitution sending the k arguments of f to expressions in g_1..g_{k+1}
    auto subs_for = [&](auto arg_vars) {
        std::vector<Polynomial> s;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t c = 0; c < n; ++c) {
                Polynomial p(m);
                for (std::size_t b : arg_vars(a)) p = p + Polynomial::variable(m, b * n + c);
                s.push_back(p);
            }
        return s;
    };
    std::vector<std::pair<Rational, std::vector<Polynomial>>> faces;
    faces.emplace_back(1, subs_for([](std::size_t a) { return std::vector<std::size_t>{a + 1}; }));
    for (std::size_t j = 1; j <= k; ++j)
        faces.emplace_back(j % 2 ? -1 : 1, subs_for([j](std::size_t a) {
                               if (a + 1 < j) return std::vector<std::size_t>{a};
                               if (a + 1 == j) return std::vector<std::size_t>{a, a + 1};
                               return std::vector<std::size_t>{a + 1};
                           }));
    faces.emplace_back((k + 1) % 2 ? -1 : 1, subs_for([](std::size_t a) { return std::vector<std::size_t>{a}; }));

    Matrix d(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        Polynomial f = Polynomial::monomial(k * n, src[j]);
        Polynomial df(m);
        for (const auto& [sign, subs] : faces) df = df + f.compose(subs, m) * sign;
        for (const auto& [mono, c] : df.terms()) d.add_to(row.at(mono), j, c);
    }
    return d;
}

}  // namespace

std::size_t bar_cohomology(std::size_t n, std::size_t k, std::optional<std::size_t> truncation) {
    if (k > 2 || n > 3)
        throw OracleRangeExceeded("bar_cohomology is an oracle for k <= 2, n <= 3 (got n=" + std::to_string(n) +
                                  ", k=" + std::to_string(k) + ")");
    std::size_t t = truncation.value_or(k);
    if (t < k) throw InvalidParameters("bar_cohomology: truncation below the degree misses the multilinear cocycles");
    std::size_t dim = monomials_up_to(k * n, long(t)).size();
    std::size_t r_out = rank(bar_coboundary(n, k, t));
    std::size_t r_in = k ? rank(bar_coboundary(n, k - 1, t)) : 0;
    return dim - r_out - r_in;
}

std::size_t derham_input_torus(std::size_t k) { return k <= 1 ? 1 : 0; }

// ---------------------------------------------------------------- intervals

std::string Interval::str() const {
    if (forced()) return std::to_string(lo);
    return "[" + std::to_string(lo) + "," + (hi ? std::to_string(*hi) + "]" : std::string("inf)"));
}

// ---------------------------------------------------------------- specs

void ExactSeqSpec::validate() const {
    if (terms.empty()) throw InvalidParameters("exact sequence spec has no terms");
    for (const auto& t : terms)
        if (t.name.empty()) throw InvalidParameters("exact sequence term without a name");
    for (std::size_t p : exact_at)
        if (p >= terms.size())
            throw InvalidParameters("exactness position " + std::to_string(p) + " out of range (" +
                                    std::to_string(terms.size()) + " terms)");
    for (const auto& r : ranks)
        if (r.map + 1 >= terms.size())
            throw InvalidParameters("rank constraint on map " + std::to_string(r.map) + " out of range");
}

const TermResult* SolveResult::find(const std::string& name) const {
    for (const auto& t : terms)
        if (t.name == name) return &t;
    return nullptr;
}

// ---------------------------------------------------------------- solver

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

struct Dom {
    long long lo = 0, hi = kInf;
};

// sum coef * x <= 0, or == 0
struct Lin {
    std::vector<std::pair<std::size_t, long long>> terms;
    bool eq = false;
};

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

class System {
public:
    std::vector<Dom> dom;
    std::vector<Lin> cons;

    std::size_t var(Dom d = {}) {
        dom.push_back(d);
        return dom.size() - 1;
    }
    void le(std::vector<std::pair<std::size_t, long long>> t) { cons.push_back({std::move(t), false}); }
    void eq(std::vector<std::pair<std::size_t, long long>> t) { cons.push_back({std::move(t), true}); }

    // bound propagation to a fixpoint; false on an empty domain
    static bool propagate(std::vector<Dom>& d, const std::vector<Lin>& cs, const std::vector<std::size_t>& order) {
        for (int round = 0; round < 100000; ++round) {
            bool changed = false;
            for (std::size_t ci : order) {
                const Lin& c = cs[ci];
                for (int pass = 0; pass < (c.eq ? 2 : 1); ++pass) {
                    long long s = pass ? -1 : 1;
                    // minimum of each term and of the whole sum
                    long long total = 0;
                    int inf_count = 0;
                    std::size_t inf_at = 0;
                    std::vector<long long> mins(c.terms.size());
                    for (std::size_t i = 0; i < c.terms.size(); ++i) {
                        long long a = s * c.terms[i].second;
                        const Dom& x = d[c.terms[i].first];
                        if (a > 0) mins[i] = a * x.lo;
                        else if (x.hi >= kInf) { mins[i] = -kInf; ++inf_count; inf_at = i; continue; }
                        else mins[i] = a * x.hi;
                        total += mins[i];
                    }
                    for (std::size_t i = 0; i < c.terms.size(); ++i) {
                        if (inf_count > 1 || (inf_count == 1 && inf_at != i)) continue;
                        long long rest = total - (mins[i] == -kInf ? 0 : mins[i]);
                        long long a = s * c.terms[i].second;
                        Dom& x = d[c.terms[i].first];
                        if (a > 0) {
                            long long ub = floor_div(-rest, a);
                            if (ub < x.hi) { x.hi = ub; changed = true; }
                        } else {
                            long long lb = ceil_div(rest, -a);
                            if (lb > x.lo) { x.lo = lb; changed = true; }
                        }
                        if (x.lo > x.hi) return false;
                    }
                }
            }
            if (!changed) return true;
        }
        return false;  // lower bounds climbing forever: no finite solution
    }

    enum class Feasible { yes, no, unknown };

    static Feasible search(std::vector<Dom> d, const std::vector<Lin>& cs, const std::vector<std::size_t>& order) {
        if (!propagate(d, cs, order)) return Feasible::no;
        std::size_t best = d.size();
        long long width = kInf;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i].hi < kInf && d[i].lo < d[i].hi && d[i].hi - d[i].lo < width) {
                best = i;
                width = d[i].hi - d[i].lo;
            }
        if (best == d.size()) {
            // only unbounded variables are free: try them at their lower bounds
            bool any = false;
            for (auto& x : d)
                if (x.lo < x.hi) { x.hi = x.lo; any = true; }
            if (!any) return Feasible::yes;
            return propagate(d, cs, order) ? Feasible::yes : Feasible::unknown;
        }
        bool unknown = false;
        for (long long v = d[best].lo; v <= d[best].hi; ++v) {
            auto e = d;
            e[best] = {v, v};
            Feasible f = search(e, cs, order);
            if (f == Feasible::yes) return f;
            if (f == Feasible::unknown) unknown = true;
        }
        return unknown ? Feasible::unknown : Feasible::no;
    }

    // shrink endpoints that admit no solution
    static void shave(std::vector<Dom>& d, const std::vector<Lin>& cs, const std::vector<std::size_t>& order) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            while (d[i].lo < d[i].hi) {
                auto e = d;
                e[i].hi = e[i].lo;
                if (search(e, cs, order) != Feasible::no) break;
                ++d[i].lo;
                propagate(d, cs, order);
            }
            while (d[i].hi < kInf && d[i].lo < d[i].hi) {
                auto e = d;
                e[i].lo = e[i].hi;
                if (search(e, cs, order) != Feasible::no) break;
                --d[i].hi;
                propagate(d, cs, order);
            }
        }
    }
};

Interval to_interval(const Dom& d) {
    Interval r;
    r.lo = std::size_t(d.lo);
    if (d.hi < kInf) r.hi = std::size_t(d.hi);
    return r;
}

}  // namespace

SolveResult exact_solve(const ExactSeqSpec& spec, const SolveOptions& opt) {
    return exact_solve(std::vector<ExactSeqSpec>{spec}, opt);
}

SolveResult exact_solve(const std::vector<ExactSeqSpec>& specs, const SolveOptions& opt) {
    System sys;
    std::map<std::string, std::size_t> dim_var;
    std::vector<std::string> names;
    std::string conflict;
    auto fix = [&](std::size_t v, std::size_t value, const std::string& what) {
        Dom& d = sys.dom[v];
        long long x = (long long)value;
        if (x < d.lo || x > d.hi) conflict = what + " given conflicting values";
        d.lo = std::max(d.lo, x);
        d.hi = std::min(d.hi, x);
    };

    struct MapVar {
        std::size_t seq, var;
        std::string label;
    };
    std::vector<MapVar> maps;

    for (std::size_t s = 0; s < specs.size(); ++s) {
        const auto& sp = specs[s];
        sp.validate();
        std::vector<std::size_t> dv;
        for (const auto& t : sp.terms) {
            auto it = dim_var.find(t.name);
            if (it == dim_var.end()) {
                it = dim_var.emplace(t.name, sys.var()).first;
                names.push_back(t.name);
            }
            dv.push_back(it->second);
            if (t.dim) fix(it->second, *t.dim, "term '" + t.name + "'");
        }
        std::size_t m = sp.terms.size();
        // r[0] enters t_0, r[i+1] is the map t_i -> t_{i+1}, r[m] leaves t_{m-1}
        std::vector<std::size_t> r(m + 1);
        r[0] = sys.var(sp.left_zero ? Dom{0, 0} : Dom{});
        if (!sp.left_zero) maps.push_back({s, r[0], "... -> " + sp.terms[0].name});
        for (std::size_t i = 0; i + 1 < m; ++i) {
            r[i + 1] = sys.var();
            maps.push_back({s, r[i + 1], sp.terms[i].name + " -> " + sp.terms[i + 1].name});
        }
        r[m] = sys.var(sp.right_zero ? Dom{0, 0} : Dom{});
        if (!sp.right_zero) maps.push_back({s, r[m], sp.terms[m - 1].name + " -> ..."});
        for (const auto& kr : sp.ranks) fix(r[kr.map + 1], kr.rank, "rank of map " + std::to_string(kr.map));

        for (std::size_t i = 0; i < m; ++i) {
            // rank of a map is at most both adjacent dims
            sys.le({{r[i], 1}, {dv[i], -1}});
            sys.le({{r[i + 1], 1}, {dv[i], -1}});
            // complex: image inside kernel; exact: equal
            bool exact = std::find(sp.exact_at.begin(), sp.exact_at.end(), i) != sp.exact_at.end();
            if (exact) sys.eq({{r[i], 1}, {r[i + 1], 1}, {dv[i], -1}});
            else sys.le({{r[i], 1}, {r[i + 1], 1}, {dv[i], -1}});
        }
    }

    std::vector<std::size_t> order(sys.cons.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (opt.shuffle_seed) std::shuffle(order.begin(), order.end(), std::mt19937_64(opt.shuffle_seed));

    bool ok = conflict.empty() && System::propagate(sys.dom, sys.cons, order);
    if (ok && System::search(sys.dom, sys.cons, order) == System::Feasible::no) {
        ok = false;
        conflict = "no assignment of dimensions and ranks satisfies every constraint";
    }
    if (!ok && conflict.empty()) conflict = "rank-nullity constraints have no solution";
    if (ok && opt.shave) System::shave(sys.dom, sys.cons, order);
    if (!ok && opt.throw_on_inconsistent) throw InconsistentSpec(conflict);

    SolveResult res;
    res.consistent = ok;
    for (const auto& n : names) res.terms.push_back({n, to_interval(sys.dom[dim_var.at(n)])});
    for (const auto& mv : maps) res.maps.push_back({mv.seq, mv.label, to_interval(sys.dom[mv.var])});
    return res;
}

// ---------------------------------------------------------------- spec files

namespace {

using detail::json;
using detail::LocatedJson;

ExactSeqSpec parse_one(const LocatedJson& doc, const std::string& ptr, const json& v) {
    if (!v.is_object()) doc.fail(ptr, "a sequence is a JSON object");
    for (const auto& [k, _] : v.items())
        if (k != "terms" && k != "exact_at" && k != "ranks" && k != "left_zero" && k != "right_zero")
            doc.fail(ptr + "/" + k, "unknown field '" + k + "'");
    ExactSeqSpec s;
    const json& terms = doc.field(ptr, v, "terms");
    if (!terms.is_array() || terms.empty()) doc.fail(ptr + "/terms", "expected a non-empty list");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string p = ptr + "/terms/" + std::to_string(i);
        SeqTerm t;
        t.name = doc.string_at(p + "/name", doc.field(p, terms[i], "name"));
        if (terms[i].contains("dim") && !terms[i]["dim"].is_null()) {
            long long d = doc.int_at(p + "/dim", terms[i]["dim"]);
            if (d < 0) doc.fail(p + "/dim", "negative dimension");
            t.dim = std::size_t(d);
        }
        s.terms.push_back(t);
    }
    if (v.contains("exact_at")) {
        const json& e = v["exact_at"];
        if (!e.is_array()) doc.fail(ptr + "/exact_at", "expected a list of positions");
        for (std::size_t i = 0; i < e.size(); ++i) {
            std::string p = ptr + "/exact_at/" + std::to_string(i);
            long long pos = doc.int_at(p, e[i]);
            if (pos < 0 || std::size_t(pos) >= s.terms.size())
                doc.fail(p, "exactness position " + std::to_string(pos) + " out of range");
            s.exact_at.push_back(std::size_t(pos));
        }
    }
    if (v.contains("ranks")) {
        const json& rs = v["ranks"];
        if (!rs.is_array()) doc.fail(ptr + "/ranks", "expected a list");
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::string p = ptr + "/ranks/" + std::to_string(i);
            long long m = doc.int_at(p + "/map", doc.field(p, rs[i], "map"));
            long long r = doc.int_at(p + "/rank", doc.field(p, rs[i], "rank"));
            if (m < 0 || std::size_t(m) + 1 >= s.terms.size()) doc.fail(p + "/map", "map index out of range");
            if (r < 0) doc.fail(p + "/rank", "negative rank");
            s.ranks.push_back({std::size_t(m), std::size_t(r)});
        }
    }
    for (const char* flag : {"left_zero", "right_zero"}) {
        if (!v.contains(flag)) continue;
        if (!v[flag].is_boolean()) doc.fail(ptr + "/" + flag, "expected true or false");
        (std::string(flag) == "left_zero" ? s.left_zero : s.right_zero) = v[flag].get<bool>();
    }
    return s;
}

}  // namespace

std::vector<ExactSeqSpec> parse_exact_specs(const std::string& text, const std::string& source) {
    LocatedJson doc(text, source);
    const json& root = doc.root();
    if (!root.is_object()) doc.fail("", "a sequence file is a JSON object");
    std::vector<ExactSeqSpec> out;
    if (root.contains("sequences")) {
        if (root.size() != 1) doc.fail("", "'sequences' cannot be mixed with other fields");
        const json& seqs = root["sequences"];
        if (!seqs.is_array() || seqs.empty()) doc.fail("/sequences", "expected a non-empty list");
        for (std::size_t i = 0; i < seqs.size(); ++i)
            out.push_back(parse_one(doc, "/sequences/" + std::to_string(i), seqs[i]));
    } else {
        out.push_back(parse_one(doc, "", root));
    }
    return out;
}

std::string write_exact_spec(const ExactSeqSpec& spec) {
    nlohmann::ordered_json j;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : spec.terms) {
        nlohmann::ordered_json e;
        e["name"] = t.name;
        e["dim"] = t.dim ? nlohmann::ordered_json(*t.dim) : nlohmann::ordered_json(nullptr);
        j["terms"].push_back(e);
    }
    j["exact_at"] = spec.exact_at;
    j["ranks"] = nlohmann::ordered_json::array();
    for (const auto& r : spec.ranks) j["ranks"].push_back({{"map", r.map}, {"rank", r.rank}});
    j["left_zero"] = spec.left_zero;
    j["right_zero"] = spec.right_zero;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- report

const TableEntry* TorusTable::find(const std::string& quantity, std::size_t k) const {
    for (const auto& e : entries)
        if (e.quantity == quantity && e.k == k) return &e;
    return nullptr;
}

namespace {

std::string nm(const std::string& q, std::size_t k) { return q + "^" + std::to_string(k); }

SeqTerm input(const std::string& q, std::size_t k, std::size_t n) {
    if (q == "H") return {nm(q, k), koszul_group_cohomology(n, k)};
    return {nm(q, k), derham_input_torus(k)};
}

}  // namespace

std::vector<ExactSeqSpec> torus_sequences(std::size_t n, std::size_t max_k) {
    std::vector<ExactSeqSpec> seqs;
    for (std::size_t k = 1; k <= max_k; ++k) {
        // 0 -> H^k(R^delta) -> H^k_nabla -> Omega^{k+1}_cl -> H^{k+1}(R^delta)
        seqs.push_back({{input("H", k, n), {nm("H_nabla", k), {}}, input("Omega_cl", k + 1, n), input("H", k + 1, n)},
                        {0, 1, 2}, {}, true, false});
        // 0 -> H^k_triv -> H^k_nabla -> H^k_conn -> 0
        seqs.push_back({{{nm("H_triv", k), {}}, {nm("H_nabla", k), {}}, {nm("H_conn", k), {}}}, {0, 1, 2}, {}, true, true});
        // H^k(R^delta) -> H^k_conn -> H^{k+1}_dR -> H^{k+1}(R^delta), prefixed by 0 -> H^1_dR in degree 1
        if (k == 1)
            seqs.push_back({{input("H_dR", 1, n), input("H", 1, n), {nm("H_conn", 1), {}}, input("H_dR", 2, n),
                             input("H", 2, n)},
                            {0, 1, 2, 3}, {}, true, false});
        else
            seqs.push_back({{input("H", k, n), {nm("H_conn", k), {}}, input("H_dR", k + 1, n), input("H", k + 1, n)},
                            {1, 2}, {}, false, false});
    }
    return seqs;
}

TorusTable torus_report(std::size_t n, std::size_t max_k) {
    TorusTable t;
    t.group_rank = n;
    t.max_k = max_k;
    t.sequences = torus_sequences(n, max_k);
    SolveResult sol = exact_solve(t.sequences);

    auto given = [](std::size_t v) { return Interval{v, v}; };
    for (std::size_t k = 0; k <= max_k; ++k) {
        t.entries.push_back({"H", k, given(koszul_group_cohomology(n, k)), "input:group-cohomology"});
        t.entries.push_back({"H_dR", k, given(derham_input_torus(k)), "input:de-rham"});
        if (k == 0) continue;
        for (const char* q : {"H_nabla", "H_conn", "H_triv"}) {
            const TermResult* r = sol.find(nm(q, k));
            t.entries.push_back({q, k, r->dim, r->dim.forced() ? "forced" : "interval"});
        }
    }
    return t;
}

}  // namespace diffcoh::torus
