#include "diffcoh/properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>

#include "diffcoh/chaincx.hpp"
#include "diffcoh/errors.hpp"
#include "diffcoh/polyforms.hpp"
#include "diffcoh/random.hpp"
#include "diffcoh/simplicial.hpp"
#include "diffcoh/subspace.hpp"

namespace diffcoh::props {

using chaincx::ChainComplex;
using chaincx::ChainMap;
using chaincx::DegreeKMap;
using chaincx::Square;

namespace {

// body returns an empty string on success, a reason otherwise
PropertyResult run(const std::string& name, std::uint64_t seed, std::size_t cases,
                   const std::function<std::string(rnd::Rng&)>& body) {
    PropertyResult r{name, seed, cases, 0, {}};
    rnd::Rng rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        std::string why;
        try {
            why = body(rng);
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (why.empty()) continue;
        if (r.failures++ == 0) r.first_failure = "case " + std::to_string(i) + ": " + why;
    }
    return r;
}

bool dd_zero(const chaincx::UnboundedComplex& c) {
    for (std::size_t i = 2; i < c.dims.size(); ++i) {
        long k = c.min_degree + long(i);
        if (!(c.diff(k - 1) * c.diff(k)).is_zero()) return false;
    }
    return true;
}

// B + E -> B
ChainMap projection(const ChainComplex& b, const ChainComplex& e) {
    ChainComplex s = chaincx::direct_sum(b, e);
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n <= s.length(); ++n) {
        long ln = long(n);
        Matrix m(b.dim(ln), s.dim(ln));
        m.add_block(0, 0, Matrix::identity(b.dim(ln)));
        comps.push_back(m);
    }
    return ChainMap(s, b, comps);
}

Square precompose(const Square& s, const ChainMap& phi) {
    Square out{compose(s.top, phi), compose(s.left, phi), s.right, s.bottom, std::nullopt};
    if (s.homotopy) out.homotopy = compose(*s.homotopy, phi);
    return out;
}

}  // namespace

PropertyResult dold_kan_roundtrip(std::uint64_t seed, std::size_t cases) {
    return run("dold_kan_roundtrip", seed, cases, [](rnd::Rng& rng) -> std::string {
        ChainComplex c = rnd::random_complex(rng, 5, 4);
        ChainComplex back = simplicial::normalized_chains(simplicial::dold_kan(c, c.length()));
        if (back.dims() != c.dims()) return "dimensions differ";
        if (!(back == c)) return "differentials differ";
        return {};
    });
}

PropertyResult tot_squares_to_zero(std::uint64_t seed, std::size_t cases) {
    return run("tot_d_squared", seed, cases, [](rnd::Rng& rng) -> std::string {
        auto w = std::size_t(rng.uniform(1, 3)), h = std::size_t(rng.uniform(1, 3));
        totalize::DoubleComplex dc = rnd::random_double_complex(rng, w, h, 2);
        if (!dd_zero(totalize::tot(dc).full)) return "D o D != 0 (mapping convention)";
        if (!dd_zero(totalize::tot_dv(dc).full)) return "D o D != 0 (vertical convention)";
        return {};
    });
}

PropertyResult sign_iso_property(std::uint64_t seed, std::size_t cases, const totalize::SignTable& sign) {
    return run("sign_iso", seed, cases, [&sign](rnd::Rng& rng) -> std::string {
        auto w = std::size_t(rng.uniform(2, 3)), h = std::size_t(rng.uniform(1, 3));
        totalize::DoubleComplex dc = rnd::random_double_complex(rng, w, h, 2);
        ChainMap s = totalize::sign_iso(dc, sign);  // throws SignIsoFailure
        for (std::size_t k = 0; k <= s.length(); ++k) {
            Matrix c = s.component(long(k));
            if (c.rows() != c.cols() || rank(c) != c.rows()) return "not invertible in degree " + std::to_string(k);
        }
        return {};
    });
}

PropertyResult end_formula(std::uint64_t seed, std::size_t cases) {
    return run("end_formula", seed, cases, [](rnd::Rng& rng) -> std::string {
        auto level = std::size_t(rng.uniform(0, 2));
        totalize::CosimplicialChain c = rnd::random_cosimplicial_chain(rng, level, 2, 1);
        totalize::EndReport r = totalize::verify_end_formula(c);
        if (!r.dims_agree) return "dimensions of the end differ from tot";
        if (!r.isomorphism) return "top-simplex evaluation is not bijective";
        if (!r.differential_agrees) return "differentials differ";
        if (!r.stable_homology_agrees) return "stable homology differs";
        return {};
    });
}

PropertyResult path_object_property(std::uint64_t seed, std::size_t cases) {
    return run("path_object", seed, cases, [](rnd::Rng& rng) -> std::string {
        ChainComplex c = rnd::random_complex(rng, 4, 3);
        chaincx::PathObject p = chaincx::path_object(c);
        if (!chaincx::is_fibration(p.proj)) return "projection is not a fibration";
        if (!chaincx::is_quasi_iso(p.incl)) return "inclusion is not a quasi-isomorphism";
        if (chaincx::homology_dims(p.path) != chaincx::homology_dims(c)) return "path object homology differs";
        return {};
    });
}

PropertyResult pasting_law(std::uint64_t seed, std::size_t cases) {
    return run("pasting_law", seed, cases, [](rnd::Rng& rng) -> std::string {
        // W -h-> X -f-> Z <-g- Y; right square is the homotopy pullback of (f, g),
        // left the homotopy pullback of (h, leg), precomposed with B + E -> B
        ChainComplex x = rnd::random_complex(rng, 2, 2), y = rnd::random_complex(rng, 2, 2);
        ChainComplex z = rnd::random_complex(rng, 2, 2), w = rnd::random_complex(rng, 2, 2);
        ChainMap f = rnd::random_chain_map(rng, x, z), g = rnd::random_chain_map(rng, y, z);
        ChainMap h = rnd::random_chain_map(rng, w, x);
        Square right = chaincx::homotopy_pullback_square(f, g);
        Square left = chaincx::homotopy_pullback_square(h, right.left);
        ChainComplex e = rng.chance(1, 2) ? ChainComplex() : rnd::random_complex(rng, 2, 2);
        left = precompose(left, projection(left.top.source(), e));
        bool left_hp = chaincx::compare_into_homotopy_pullback(left).quasi_iso;
        bool outer_hp = chaincx::compare_into_homotopy_pullback(chaincx::paste_horizontal(left, right)).quasi_iso;
        bool expected = chaincx::homology_dims(e) == std::vector<std::size_t>(e.length() + 1, 0);
        if (left_hp != expected) return "left square misclassified";
        if (left_hp && !outer_hp) return "left homotopy pullback but the rectangle is not";
        if (!left_hp && outer_hp) return "rectangle homotopy pullback but the left square is not";
        return {};
    });
}

PropertyResult loop_shift(std::uint64_t seed, std::size_t cases) {
    return run("loop_shift", seed, cases, [](rnd::Rng& rng) -> std::string {
        ChainComplex z = rnd::random_complex(rng, 4, 3), zero;
        chaincx::HomotopyPullback hp =
            chaincx::homotopy_pullback(ChainMap::zero(zero, z), ChainMap::zero(zero, z));
        auto hz = chaincx::homology_dims(z), hl = chaincx::homology_dims(hp.apex);
        for (std::size_t n = 0; n < std::max(hz.size(), hl.size()); ++n) {
            std::size_t want = n + 1 < hz.size() ? hz[n + 1] : 0;
            std::size_t got = n < hl.size() ? hl[n] : 0;
            if (want != got) return "H_" + std::to_string(n) + " is " + std::to_string(got) + ", expected " +
                                    std::to_string(want);
        }
        return {};
    });
}

PropertyResult poincare_identity(std::uint64_t seed, std::size_t cases) {
    return run("poincare_identity", seed, cases, [](rnd::Rng& rng) -> std::string {
        auto n = std::size_t(rng.uniform(1, 3));
        auto k = std::size_t(rng.uniform(1, long(n)));
        forms::PolyForm f = rnd::random_form(rng, n, k, 3);
        forms::PolyForm lhs = forms::exterior_d(forms::poincare_h(f));
        if (k < n) lhs = lhs + forms::poincare_h(forms::exterior_d(f));
        if (!(lhs == f)) return "dh + hd != id on " + f.str();
        return {};
    });
}

PropertyResult matching_surjective(std::uint64_t seed, std::size_t cases) {
    return run("matching_surjective", seed, cases, [](rnd::Rng& rng) -> std::string {
        ChainComplex c = rnd::random_complex_exact_length(rng, 3, 2);
        auto a = simplicial::CosimplicialVect::dual(simplicial::dold_kan(c, 3));
        for (std::size_t n = 1; n <= 3; ++n) {
            simplicial::MatchingObject m = simplicial::matching_object(a, n);
            if (!m.subspace.contains(image(m.matching_map)))
                return "matching map leaves the matching object at level " + std::to_string(n);
            if (rank(m.matching_map) != m.subspace.dim())
                return "matching map is not onto at level " + std::to_string(n);
        }
        return {};
    });
}

int corrupt_sign(long p) { return p == 2 ? -totalize::default_sign(p) : totalize::default_sign(p); }

std::vector<PropertyResult> run_suite(const SuiteOptions& opt) {
    auto n = [&](std::size_t base) { return std::max<std::size_t>(1, std::size_t(std::llround(double(base) * opt.scale))); };
    // independent stream per property
    auto sub = [&](std::uint64_t i) { return opt.seed * 0x9E3779B97F4A7C15ULL + i; };
    totalize::SignTable sign = opt.corrupt_sign_table ? totalize::SignTable(corrupt_sign) : totalize::SignTable(totalize::default_sign);

    std::vector<std::function<PropertyResult()>> jobs{
        [&] { return dold_kan_roundtrip(sub(0), n(200)); },
        [&] { return tot_squares_to_zero(sub(1), n(200)); },
        [&] { return sign_iso_property(sub(2), n(200), sign); },
        [&] { return end_formula(sub(3), n(100)); },
        [&] { return path_object_property(sub(4), n(100)); },
        [&] { return pasting_law(sub(5), n(50)); },
        [&] { return loop_shift(sub(6), n(50)); },
        [&] { return poincare_identity(sub(7), n(100)); },
        [&] { return matching_surjective(sub(8), n(40)); },
    };
    std::vector<PropertyResult> out(jobs.size());
    std::size_t threads = std::max<std::size_t>(1, opt.threads);
    for (std::size_t start = 0; start < jobs.size(); start += threads) {
        std::vector<std::future<PropertyResult>> running;
        for (std::size_t j = start; j < std::min(jobs.size(), start + threads); ++j)
            running.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, jobs[j]));
        for (std::size_t j = 0; j < running.size(); ++j) out[start + j] = running[j].get();
    }
    return out;
}

}  // namespace diffcoh::props
