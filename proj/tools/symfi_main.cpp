// symfi: symbolic first integrals of planar polynomial vector fields.
//
// Exit codes: 0 equation/none, 2 unknown ("I don't know"), 1 usage or
// parse errors.

#include "symfi/corpus.hpp"
#include "symfi/errors.hpp"
#include "symfi/parse.hpp"
#include "symfi/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace symfi;

namespace {

int env_threads() {
    if (const char *env = std::getenv("SYMFI_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

StrategyFlags flags_from(const std::string &kernel, const std::string &cofactor,
                         const std::string &solver, bool strict) {
    StrategyFlags f;
    if (kernel == "dense")
        f.kernel = KernelMode::DenseExact;
    else if (kernel == "modular")
        f.kernel = KernelMode::Modular;
    else if (kernel == "structured")
        f.kernel = KernelMode::Structured;
    else
        f.kernel = KernelMode::Auto;
    f.cofactor = cofactor == "slice" ? CofactorMode::Slice : CofactorMode::Dense;
    f.solver = solver == "newton" ? FlowSolver::Newton : FlowSolver::Recurrence;
    f.strict = strict;
    return f;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"symbolic first integrals of planar polynomial vector fields"};
    app.require_subcommand(1);

    // ---- compute ----
    auto *compute = app.add_subcommand("compute", "compute one first-integral equation");
    std::string cls_name, field_text, point_text, format = "text";
    std::string kernel = "auto", cofactor = "dense", solver = "recurrence";
    int k = 1, N = 0;
    std::uint64_t seed = 0;
    bool deterministic = false, strict = false;
    compute->add_option("--class", cls_name, "rational|darboux|liouville|riccati")->required();
    compute->add_option("-k", k, "Darbouxian root index (default 1)");
    compute->add_option("-N", N, "degree bound")->required();
    compute->add_option("--field", field_text, "\"A = ...; B = ...\" or @file")->required();
    auto *popt = compute->add_option("--point", point_text, "base point X,Y");
    auto *sopt = compute->add_option("--seed", seed, "seed for the random base point");
    popt->excludes(sopt);
    compute->add_flag("--deterministic", deterministic, "deterministic point enumeration");
    compute->add_flag("--strict", strict, "sampling box larger than the bad-point bound");
    compute->add_option("--format", format, "text|json");
    compute->add_option("--kernel", kernel, "auto|dense|modular|structured");
    compute->add_option("--cofactor", cofactor, "dense|slice");
    compute->add_option("--solver", solver, "recurrence|newton");

    // ---- corpus ----
    auto *corpus_cmd = app.add_subcommand("corpus", "bundled example systems");
    auto *corpus_run = corpus_cmd->add_subcommand("run", "run the corpus expectations");
    std::string filter, corpus_path;
    corpus_run->add_option("--filter", filter, "only cases whose id contains this substring");
    corpus_run->add_option("--corpus", corpus_path, "path to corpus.json");

    // ---- bench ----
    auto *bench = app.add_subcommand("bench", "benchmark scans");
    auto *bench_scan_cmd = bench->add_subcommand("scan", "minimal-N scan over a family");
    std::string bench_class, bench_family, csv_path, bench_corpus_path;
    int n_max = 5;
    bench_scan_cmd->add_option("--class", bench_class, "rational|darboux|liouville|riccati")->required();
    bench_scan_cmd->add_option("--family", bench_family, "mu-lambda|generic|corpus")->required();
    bench_scan_cmd->add_option("--n-max", n_max, "largest N to try")->required();
    bench_scan_cmd->add_option("--csv", csv_path, "CSV output path")->required();
    bench_scan_cmd->add_option("--corpus", bench_corpus_path, "corpus path for --family corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*compute) {
            IntegralClass cls = class_from_name(cls_name, k);
            if (!field_text.empty() && field_text[0] == '@') {
                std::ifstream in(field_text.substr(1));
                if (!in) throw error("cannot open field file '" + field_text.substr(1) + "'");
                std::ostringstream buf;
                buf << in.rdbuf();
                field_text = buf.str();
            }
            auto [A, B] = parse_field_spec(field_text);
            VectorField vf(std::move(A), std::move(B));
            Query q{vf, N, cls, std::nullopt, seed, deterministic,
                    flags_from(kernel, cofactor, solver, strict)};
            if (!point_text.empty()) {
                auto comma = point_text.find(',');
                if (comma == std::string::npos) throw error("bad --point, expected X,Y");
                q.base = BasePoint{rat_from_string(point_text.substr(0, comma)),
                                   rat_from_string(point_text.substr(comma + 1))};
            }
            DriverResult res = q.deterministic ? compute_deterministic(q) : compute_first_integral(q);
            bool seed_used = !q.base && !q.deterministic;
            Report rep = Report::from_result(
                res, seed_used ? std::optional<std::uint64_t>(seed) : std::nullopt, q.deterministic);
            std::cout << (format == "json" ? rep.to_json() : rep.to_text()) << "\n";
            if (res.outcome.kind == Outcome::Kind::Unknown) return 2;
            return 0;
        }
        if (*corpus_run) {
            std::string path = corpus_path.empty() ? default_corpus_path() : corpus_path;
            auto cases = load_corpus(path);
            auto results = run_corpus(cases, filter, env_threads(), StrategyFlags{});
            bool all = true;
            for (const auto &r : results) {
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.case_id << " " << r.what << ": "
                          << r.detail << " (" << static_cast<long>(r.time_ms) << " ms)\n";
                all = all && r.pass;
            }
            std::cout << (all ? "corpus: all expectations hold\n" : "corpus: FAILURES\n");
            return all ? 0 : 1;
        }
        if (*bench_scan_cmd) {
            IntegralClass cls = class_from_name(bench_class, 1);
            std::vector<CorpusCase> cases;
            if (bench_family == "corpus") {
                std::string path = bench_corpus_path.empty() ? default_corpus_path() : bench_corpus_path;
                cases = load_corpus(path);
            }
            auto rows = bench_scan(bench_family, cls, n_max, cases, env_threads(), StrategyFlags{});
            write_bench_csv(csv_path, rows);
            for (const auto &r : rows)
                std::cout << r.case_id << "," << r.cls << "," << r.minimal_N << "," << r.status << "\n";
            return 0;
        }
    } catch (const syntax_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const invalid_field &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
