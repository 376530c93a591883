#ifndef SYMFI_CORPUS_HPP
#define SYMFI_CORPUS_HPP

#include "symfi/driver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symfi {

struct CorpusRun {
    IntegralClass cls;
    int N = 1;
    std::optional<BasePoint> point;
    std::uint64_t seed = 0;
    std::string expect; // "equation" | "none" | "unknown"
    std::optional<int> degree;
};

// ascending-N scan; minimal_N = -1 means every N up to n_max stays "none"
struct CorpusScan {
    IntegralClass cls;
    int n_max = 1;
    int minimal_N = -1;
    std::optional<BasePoint> point;
    std::uint64_t seed = 0;
};

struct CorpusCase {
    std::string id;
    BiPoly A, B;
    std::vector<CorpusRun> runs;
    std::vector<CorpusScan> scans;
};

// the degree-3 family  xdot = l x^3 - l x y^2 - 2 m y^2 - l x,
//                      ydot = l x^2 y - l y^3 - 2 m x y - l y,
// reduced by the gcd of the pair
std::pair<BiPoly, BiPoly> mu_lambda_field(long lambda, long mu);

std::vector<CorpusCase> load_corpus(const std::string &path);
// search order: explicit path, SYMFI_CORPUS env var, compiled-in default
std::string default_corpus_path();

IntegralClass class_from_name(const std::string &name, int k = 1);

struct CaseResult {
    std::string case_id;
    std::string what;
    bool pass = false;
    std::string detail;
    double time_ms = 0;
};

std::vector<CaseResult> run_corpus(const std::vector<CorpusCase> &cases, const std::string &filter,
                                   int threads, const StrategyFlags &flags);

struct BenchRow {
    std::string case_id;
    std::string cls;
    int minimal_N = -1;   // -1: still "none" at n_max
    std::string status;   // status at the stopping N
    std::string times_ms; // per-N wall times, ';'-separated
};

std::vector<BenchRow> bench_scan(const std::string &family, const IntegralClass &cls, int n_max,
                                 const std::vector<CorpusCase> &corpus, int threads,
                                 const StrategyFlags &flags);
void write_bench_csv(const std::string &path, const std::vector<BenchRow> &rows);

} // namespace symfi

#endif
