#include "diffcoh/diagram_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "located_json.hpp"

#ifndef DIFFCOH_DEFAULT_DATA_DIR
#define DIFFCOH_DEFAULT_DATA_DIR "data"
#endif

namespace diffcoh::io {

using detail::json;
using detail::LocatedJson;
using plotdiag::PlotDiagram;

namespace {

Polynomial parse_poly(const LocatedJson& doc, const std::string& ptr, const json& terms, std::size_t nvars) {
    if (!terms.is_array()) doc.fail(ptr, "a polynomial is a list of [exponents, coefficient] terms");
    Polynomial p(nvars);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::string tp = ptr + "/" + std::to_string(t);
        const json& term = terms[t];
        if (!term.is_array() || term.size() != 2 || !term[0].is_array())
            doc.fail(tp, "a term is [exponents, coefficient]");
        if (term[0].size() != nvars)
            doc.fail(tp, "monomial has " + std::to_string(term[0].size()) + " exponents, source has dimension " +
                             std::to_string(nvars));
        Monomial m;
        for (std::size_t i = 0; i < nvars; ++i) {
            long long e = doc.int_at(tp + "/0/" + std::to_string(i), term[0][i]);
            if (e < 0) doc.fail(tp, "negative exponent");
            m.push_back(unsigned(e));
        }
        p.add_term(m, doc.rational_at(tp + "/1", term[1]));
    }
    return p;
}

}  // namespace

PlotDiagram parse_diagram(const std::string& text, const std::string& source) {
    LocatedJson doc(text, source);
    const json& root = doc.root();
    if (!root.is_object()) doc.fail("", "a diagram file is a JSON object");
    for (const auto& [k, v] : root.items())
        if (k != "objects" && k != "morphisms" && k != "composites" && k != "n_max")
            doc.fail("/" + k, "unknown field '" + k + "'");

    PlotDiagram d;
    const json& objs = doc.field("", root, "objects");
    if (!objs.is_array()) doc.fail("/objects", "expected a list");
    for (std::size_t i = 0; i < objs.size(); ++i) {
        std::string p = "/objects/" + std::to_string(i);
        std::string id = doc.string_at(p + "/id", doc.field(p, objs[i], "id"));
        long long dim = doc.int_at(p + "/dim", doc.field(p, objs[i], "dim"));
        if (dim < 0) doc.fail(p + "/dim", "negative dimension");
        if (d.find_object(id)) doc.fail(p + "/id", "duplicate object '" + id + "'");
        d.add_object(id, std::size_t(dim));
    }

    if (root.contains("morphisms")) {
        const json& ms = root["morphisms"];
        if (!ms.is_array()) doc.fail("/morphisms", "expected a list");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            std::string p = "/morphisms/" + std::to_string(i);
            std::string id = doc.string_at(p + "/id", doc.field(p, ms[i], "id"));
            if (d.find_morphism(id)) doc.fail(p + "/id", "duplicate morphism '" + id + "'");
            auto src = d.find_object(doc.string_at(p + "/src", doc.field(p, ms[i], "src")));
            if (!src) doc.fail(p + "/src", "unknown object '" + ms[i]["src"].get<std::string>() + "'");
            auto tgt = d.find_object(doc.string_at(p + "/tgt", doc.field(p, ms[i], "tgt")));
            if (!tgt) doc.fail(p + "/tgt", "unknown object '" + ms[i]["tgt"].get<std::string>() + "'");
            const json& polys = doc.field(p, ms[i], "polys");
            std::size_t n = d.object(*src).dim, m = d.object(*tgt).dim;
            if (!polys.is_array() || polys.size() != m)
                doc.fail(p + "/polys", "expected " + std::to_string(m) + " polynomials, one per target coordinate");
            std::vector<Polynomial> comps;
            for (std::size_t c = 0; c < m; ++c) comps.push_back(parse_poly(doc, p + "/polys/" + std::to_string(c), polys[c], n));
            d.add_morphism(id, *src, *tgt, PolyMap(n, comps));
        }
    }

    if (root.contains("composites")) {
        const json& cs = root["composites"];
        if (!cs.is_array()) doc.fail("/composites", "expected a list");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::string p = "/composites/" + std::to_string(i);
            if (!cs[i].is_array() || cs[i].size() != 3) doc.fail(p, "a composite is [g, f, g_after_f]");
            std::size_t idx[3];
            for (std::size_t j = 0; j < 3; ++j) {
                std::string name = doc.string_at(p + "/" + std::to_string(j), cs[i][j]);
                auto m = d.find_morphism(name);
                if (!m) doc.fail(p + "/" + std::to_string(j), "unknown morphism '" + name + "'");
                idx[j] = *m;
            }
            if (d.morphism(idx[1]).tgt != d.morphism(idx[0]).src)
                doc.fail(p, "morphisms " + d.morphism(idx[0]).id + " and " + d.morphism(idx[1]).id + " are not composable");
            d.set_composite(idx[0], idx[1], idx[2]);
        }
    }

    if (root.contains("n_max")) {
        long long n = doc.int_at("/n_max", root["n_max"]);
        if (n < 0) doc.fail("/n_max", "negative n_max");
        d.set_n_max(std::size_t(n));
    }
    return d;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PlotDiagram load_diagram(const std::string& path) { return parse_diagram(read_file(path), path); }

namespace {

using ojson = nlohmann::ordered_json;

ojson poly_json(const Polynomial& p) {
    ojson terms = ojson::array();
    for (const auto& [m, c] : p.terms()) {
        ojson coeff = c.is_integer() && c.numerator().fits_slong_p() ? ojson(c.numerator().get_si()) : ojson(c.str());
        terms.push_back(ojson::array({ojson(m), coeff}));
    }
    return terms;
}

}  // namespace

std::string write_diagram(const PlotDiagram& d) {
    ojson root;
    root["objects"] = ojson::array();
    for (const auto& o : d.objects()) root["objects"].push_back({{"id", o.id}, {"dim", o.dim}});
    root["morphisms"] = ojson::array();
    for (const auto& m : d.morphisms()) {
        if (m.identity) continue;
        ojson polys = ojson::array();
        for (const auto& c : m.map.components()) polys.push_back(poly_json(c));
        root["morphisms"].push_back(
            {{"id", m.id}, {"src", d.object(m.src).id}, {"tgt", d.object(m.tgt).id}, {"polys", polys}});
    }
    root["composites"] = ojson::array();
    for (const auto& [gf, h] : d.composites())
        root["composites"].push_back({d.morphism(gf.first).id, d.morphism(gf.second).id, d.morphism(h).id});
    if (d.n_max()) root["n_max"] = *d.n_max();
    // one entry per line keeps the files diffable and the error lines meaningful
    std::ostringstream out;
    out << "{\n";
    const char* keys[] = {"objects", "morphisms", "composites"};
    for (std::size_t k = 0; k < 3; ++k) {
        out << "  \"" << keys[k] << "\": [";
        const ojson& arr = root[keys[k]];
        for (std::size_t i = 0; i < arr.size(); ++i) out << (i ? ",\n    " : "\n    ") << arr[i].dump();
        out << (arr.empty() ? "]" : "\n  ]") << (k < 2 || d.n_max() ? ",\n" : "\n");
    }
    if (d.n_max()) out << "  \"n_max\": " << *d.n_max() << "\n";
    out << "}\n";
    return out.str();
}

std::string data_dir() {
    if (const char* e = std::getenv("DIFFCOH_DATA_DIR"); e && *e) return e;
    return DIFFCOH_DEFAULT_DATA_DIR;
}

PlotDiagram diagram_from_arg(const std::string& arg) {
    try {
        return plotdiag::good_cover_diagram(plotdiag::parse_preset(arg));
    } catch (const ParseError&) {
        return load_diagram(arg);
    }
}

}  // namespace diffcoh::io
