// diffcoh-cli: batch verifications and cohomology tables, reports as JSON or CSV.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "diffcoh/diagram_io.hpp"
#include "diffcoh/errors.hpp"
#include "diffcoh/plotdiag.hpp"
#include "diffcoh/properties.hpp"
#include "diffcoh/report.hpp"
#include "diffcoh/stacks.hpp"
#include "diffcoh/torus.hpp"

using namespace diffcoh;
using report::RunReport;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct Globals {
    std::string format = "json";
    std::string out;
    bool timing = false;
};

std::size_t thread_count() {
    const char* env = std::getenv("DIFFCOH_THREADS");
    if (!env || !*env) return 1;
    try {
        long v = std::stol(env);
        return v > 0 ? std::size_t(v) : 1;
    } catch (const std::exception&) {
        throw InvalidParameters(std::string("DIFFCOH_THREADS must be a positive integer, got '") + env + "'");
    }
}

// "3", "1..3", "1,2,5"
std::vector<long> parse_range(const std::string& s, const std::string& what) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string part;
    try {
        while (std::getline(ss, part, ',')) {
            auto dots = part.find("..");
            if (dots == std::string::npos) {
                out.push_back(std::stol(part));
                continue;
            }
            long a = std::stol(part.substr(0, dots)), b = std::stol(part.substr(dots + 2));
            if (b < a) throw InvalidParameters(what + ": empty range '" + part + "'");
            for (long v = a; v <= b; ++v) out.push_back(v);
        }
    } catch (const std::logic_error&) {
        throw InvalidParameters(what + ": expected N, A..B or a comma list, got '" + s + "'");
    }
    if (out.empty()) throw InvalidParameters(what + ": empty");
    return out;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string text_table(const RunReport& r) {
    std::ostringstream os;
    os << r.command << "  (diffcoh " << r.version << ")\n";
    for (const auto& t : r.tables) {
        std::vector<std::size_t> w(t.columns.size());
        for (std::size_t c = 0; c < w.size(); ++c) {
            w[c] = t.columns[c].size();
            for (const auto& row : t.rows) w[c] = std::max(w[c], row[c].size());
        }
        os << "\n" << t.name << "\n";
        auto line = [&](const std::vector<std::string>& row) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "  " : "") << row[c] << std::string(c + 1 < row.size() ? w[c] - row[c].size() : 0, ' ');
            os << "\n";
        };
        line(t.columns);
        for (const auto& row : t.rows) line(row);
    }
    std::size_t failed = 0;
    for (const auto& c : r.checks)
        if (!c.passed) {
            if (!failed++) os << "\nfailed checks\n";
            os << "  " << c.name << ": " << c.detail << "\n";
        }
    os << "\n" << r.checks.size() - failed << "/" << r.checks.size() << " checks passed\n";
    return os.str();
}

int emit(RunReport& r, const Globals& g, std::chrono::steady_clock::time_point start) {
    if (g.timing) r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string body = g.format == "csv" ? report::to_csv(r) : g.format == "text" ? text_table(r) : report::to_json(r);
    if (g.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw ParseError("cannot write '" + g.out + "'");
        f << body;
    }
    return r.ok() ? 0 : kExitFailed;
}

// ---------------------------------------------------------------- commands

RunReport torus_table(std::size_t rank, std::size_t max_k) {
    RunReport r;
    r.command = "torus-table";
    r.parameters = {{"group_rank", std::to_string(rank)}, {"max_k", std::to_string(max_k)}};
    torus::TorusTable t = torus::torus_report(rank, max_k);

    const std::vector<std::string> qs{"H", "H_dR", "H_nabla", "H_conn", "H_triv"};
    report::Table wide{"irrational torus",
                       {"k", "H^k(R^delta)", "H^k_dR", "H^k_nabla", "H^k_conn", "H^k_triv", "provenance"},
                       {}};
    report::Table entries{"entries", {"quantity", "k", "value", "provenance"}, {}};
    for (std::size_t k = 0; k <= max_k; ++k) {
        std::vector<std::string> row{std::to_string(k)};
        std::string prov;
        for (const auto& q : qs) {
            const torus::TableEntry* e = t.find(q, k);
            row.push_back(e ? e->value.str() : "-");
            if (!e) continue;
            entries.rows.push_back({q, std::to_string(k), e->value.str(), e->provenance});
            prov += (prov.empty() ? "" : "; ") + q + " " + e->provenance;
        }
        row.push_back(prov);
        wide.rows.push_back(row);
    }
    r.tables = {wide, entries};

    if (rank <= 3) {
        bool agree = true;
        for (std::size_t k = 0; k <= 2; ++k)
            agree = agree && torus::bar_cohomology(rank, k) == torus::koszul_group_cohomology(rank, k);
        r.checks.push_back({"koszul_vs_bar", agree, "k = 0..2", "derived"});
    }
    bool confluent = true;
    auto base = torus::exact_solve(t.sequences);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        torus::SolveOptions o;
        o.shuffle_seed = seed;
        auto s = torus::exact_solve(t.sequences, o);
        for (std::size_t i = 0; i < s.terms.size(); ++i) confluent = confluent && s.terms[i].dim == base.terms[i].dim;
    }
    r.checks.push_back({"solver_confluent", confluent, "8 shuffled constraint orders", "derived"});
    return r;
}

RunReport verify_squares(const std::vector<std::string>& ids, const std::vector<long>& ks, const std::vector<long>& ns,
                         std::optional<long> D, std::size_t threads) {
    RunReport r;
    r.command = "verify-squares";
    std::string idlist;
    for (const auto& id : ids) idlist += (idlist.empty() ? "" : ",") + id;
    auto list = [](const std::vector<long>& v) {
        std::string s;
        for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
        return s;
    };
    r.parameters = {{"squares", idlist}, {"k", list(ks)}, {"n", list(ns)}, {"D", D ? std::to_string(*D) : "k+3"}};

    struct Job {
        std::string id;
        long k, n, D;
    };
    std::vector<Job> jobs;
    for (long k : ks)
        for (long n : ns)
            for (const auto& id : ids) jobs.push_back({id, k, n, D ? *D : k + 3});

    auto run = [](const Job& j) -> std::pair<stacks::SquareReport, std::string> {
        try {
            if (j.k <= 0 || j.n <= 0) throw InvalidParameters("k and n must be positive");
            return {stacks::verify_square(j.id, std::size_t(j.k), std::size_t(j.n), j.D), {}};
        } catch (const Error& e) {
            stacks::SquareReport s;
            s.square_id = j.id;
            s.k = std::size_t(std::max(0L, j.k));
            s.n = std::size_t(std::max(0L, j.n));
            s.D = j.D;
            return {s, e.what()};
        }
    };
    std::vector<std::pair<stacks::SquareReport, std::string>> results(jobs.size());
    for (std::size_t start = 0; start < jobs.size(); start += threads) {
        std::vector<std::future<std::pair<stacks::SquareReport, std::string>>> running;
        for (std::size_t j = start; j < std::min(jobs.size(), start + threads); ++j)
            running.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, run, jobs[j]));
        for (std::size_t j = 0; j < running.size(); ++j) results[start + j] = running[j].get();
    }

    report::Table t{"squares",
                    {"square", "k", "n", "D", "commutes", "strategy", "passed", "window_stable", "apex_homology",
                     "pullback_homology"},
                    {}};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& [s, err] = results[i];
        const Job& j = jobs[i];
        std::string key = "square " + j.id + " k=" + std::to_string(j.k) + " n=" + std::to_string(j.n) +
                          " D=" + std::to_string(j.D);
        if (!err.empty()) {
            t.rows.push_back({j.id, std::to_string(j.k), std::to_string(j.n), std::to_string(j.D), "-", "-", "false",
                              "false", "-", "-"});
            r.checks.push_back({key, false, err, "derived"});
            continue;
        }
        t.rows.push_back({s.square_id, std::to_string(s.k), std::to_string(s.n), std::to_string(s.D), s.commutes_how,
                          s.strategy, s.passed ? "true" : "false", s.window_stable ? "true" : "false",
                          join(s.apex_homology), join(s.pullback_homology)});
        std::string detail = s.detail;
        if (s.passed && !s.window_stable) detail = "window unstable between D and D+1" + (detail.empty() ? "" : ": " + detail);
        r.checks.push_back({key, s.passed && s.window_stable, detail, "derived"});
    }
    r.tables = {t};
    return r;
}

RunReport cohomology(const std::string& diagram, const std::string& stack, long k, const std::vector<long>& degrees,
                     long D, const std::string& grading) {
    RunReport r;
    r.command = "cohomology";
    std::string degs;
    for (long d : degrees) degs += (degs.empty() ? "" : ",") + std::to_string(d);
    r.parameters = {{"diagram", diagram}, {"stack", stack}, {"k", std::to_string(k)},
                    {"degrees", degs},    {"D", std::to_string(D)}, {"grading", grading}};

    plotdiag::PlotDiagram d = io::diagram_from_arg(diagram);
    auto violations = plotdiag::validate_diagram(d);
    if (!violations.empty()) {
        std::string all;
        for (const auto& v : violations) all += (all.empty() ? "" : "; ") + v;
        throw InvalidDiagram(all);
    }
    stacks::StackModel model = stack == "Rdelta" ? stacks::StackModel(stacks::StackName::BkRdelta_strict, 0)
                                                 : stacks::build_stack(stack, std::size_t(k));
    forms::Grading g = grading == "uniform" ? forms::Grading::Uniform : forms::Grading::Weight;

    report::Table t{"cohomology", {"degree", "dim", "stable"}, {}};
    for (long n : degrees) {
        if (n < 0) throw InvalidParameters("degrees must be non-negative");
        auto h = plotdiag::stack_cohomology_flagged(d, model, std::size_t(n), forms::Budget{D, g});
        t.rows.push_back({std::to_string(n), std::to_string(h.dim), h.stable ? "true" : "false"});
        r.checks.push_back({"H^" + std::to_string(n) + " stable", h.stable,
                            h.stable ? "" : "nerve truncation reaches this degree", "derived"});
    }
    r.tables = {t};
    return r;
}

RunReport selftest(std::uint64_t seed, double scale, bool corrupt, std::size_t threads) {
    RunReport r;
    r.command = "selftest";
    std::ostringstream sc;
    sc << scale;
    r.parameters = {{"seed", std::to_string(seed)}, {"scale", sc.str()}};
    if (corrupt) r.parameters.emplace_back("corrupt_sign_table", "true");
    props::SuiteOptions o;
    o.seed = seed;
    o.scale = scale;
    o.corrupt_sign_table = corrupt;
    o.threads = threads;
    report::Table t{"properties", {"property", "seed", "cases", "failures"}, {}};
    for (const auto& p : props::run_suite(o)) {
        t.rows.push_back({p.name, std::to_string(p.seed), std::to_string(p.cases), std::to_string(p.failures)});
        r.checks.push_back({p.name, p.passed(), p.first_failure, "derived"});
    }
    r.tables = {t};
    return r;
}

RunReport exact_solve(const std::string& path) {
    RunReport r;
    r.command = "exact-solve";
    r.parameters = {{"spec", path}};
    auto specs = torus::parse_exact_specs(io::read_file(path), path);
    torus::SolveOptions o;
    o.throw_on_inconsistent = false;
    torus::SolveResult s = torus::exact_solve(specs, o);
    report::Table terms{"terms", {"term", "dim", "status"}, {}};
    for (const auto& t : s.terms)
        terms.rows.push_back({t.name, t.dim.str(),
                              t.dim.forced() ? "forced" : t.dim.bounded() ? "interval" : "unbounded"});
    report::Table maps{"ranks", {"sequence", "map", "rank"}, {}};
    for (const auto& m : s.maps) maps.rows.push_back({std::to_string(m.sequence), m.label, m.rank.str()});
    r.tables = {terms, maps};
    r.checks.push_back({"consistent", s.consistent, s.consistent ? "" : "rank-nullity constraints have no solution",
                        "derived"});
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffcoh: cohomology of finite plot diagrams, stack squares and the irrational torus"};
    app.set_version_flag("--version", report::toolkit_version());
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", g.out, "Write the report here instead of stdout");
    app.add_flag("--timing", g.timing, "Record wall time in the report");

    auto* torus_cmd = app.add_subcommand("torus-table", "Cohomology table of the irrational torus");
    std::size_t group_rank = 2, max_k = 4;
    torus_cmd->add_option("--group-rank", group_rank, "Rank of the lattice K")->check(CLI::Range(0, 12));
    torus_cmd->add_option("--max-k", max_k, "Largest degree")->check(CLI::Range(1, 12));

    auto* squares_cmd = app.add_subcommand("verify-squares", "Check the squares of the delooping diagram");
    std::string square, ks = "1..3", ns = "1..3";
    std::optional<long> D;
    squares_cmd->add_option("--square", square, "One square id (1..7, 4|5, 2/4); all by default");
    squares_cmd->add_option("--k", ks, "Delooping degrees, N, A..B or a list");
    squares_cmd->add_option("--n", ns, "Dimensions of the test charts");
    squares_cmd->add_option("--D", D, "Coefficient budget (default k+3)");

    auto* coh_cmd = app.add_subcommand("cohomology", "Stack cohomology of a diagram file or preset");
    std::string diagram, stack = "Rdelta", degrees = "0..2", grading = "weight";
    long coh_k = 1, coh_D = 2;
    coh_cmd->add_option("diagram", diagram, "Preset name or diagram file")->required();
    coh_cmd->add_option("--stack", stack, "Rdelta or a stack model name");
    coh_cmd->add_option("--k", coh_k, "Delooping degree of the stack model");
    coh_cmd->add_option("--degrees", degrees, "Degrees, N, A..B or a list");
    coh_cmd->add_option("--D", coh_D, "Coefficient budget");
    coh_cmd->add_option("--grading", grading, "Budget grading")->check(CLI::IsMember({"weight", "uniform"}));

    auto* self_cmd = app.add_subcommand("selftest", "Run the seeded property suite");
    std::uint64_t seed = 1;
    double scale = 1.0;
    bool corrupt = false;
    self_cmd->add_option("--seed", seed, "Base seed");
    self_cmd->add_option("--scale", scale, "Multiply the case counts")->check(CLI::PositiveNumber);
    self_cmd->add_flag("--corrupt-sign-table", corrupt)->group("");

    auto* solve_cmd = app.add_subcommand("exact-solve", "Dimension solver for exact sequences");
    std::string spec_path;
    solve_cmd->add_option("spec", spec_path, "Sequence spec file")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    auto start = std::chrono::steady_clock::now();
    try {
        std::size_t threads = thread_count();
        RunReport r;
        if (*torus_cmd) {
            r = torus_table(group_rank, max_k);
        } else if (*squares_cmd) {
            std::vector<std::string> ids = square.empty() ? stacks::square_ids() : std::vector<std::string>{square};
            r = verify_squares(ids, parse_range(ks, "--k"), parse_range(ns, "--n"), D, threads);
        } else if (*coh_cmd) {
            r = cohomology(diagram, stack, coh_k, parse_range(degrees, "--degrees"), coh_D, grading);
        } else if (*self_cmd) {
            r = selftest(seed, scale, corrupt, threads);
        } else if (*solve_cmd) {
            r = exact_solve(spec_path);
        }
        return emit(r, g, start);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
