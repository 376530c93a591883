#include "symfi/corpus.hpp"

#include "symfi/errors.hpp"
#include "symfi/parse.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace symfi {

namespace {

using nlohmann::json;

BasePoint point_from_string(const std::string &s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw error("bad point '" + s + "', expected X,Y");
    return BasePoint{rat_from_string(s.substr(0, comma)), rat_from_string(s.substr(comma + 1))};
}

} // namespace

IntegralClass class_from_name(const std::string &name, int k) {
    if (name == "rational") return {FIClassKind::Rational, 1};
    if (name == "darboux" || name == "darbouxian") return {FIClassKind::Darbouxian, k};
    if (name == "liouville" || name == "liouvillian") return {FIClassKind::Liouvillian, 1};
    if (name == "riccati") return {FIClassKind::Riccati, 1};
    throw error("unknown class '" + name + "'");
}

std::pair<BiPoly, BiPoly> mu_lambda_field(long lambda, long mu) {
    BiPoly x = BiPoly::var_x(), y = BiPoly::var_y();
    Rat l(lambda), m(mu);
    BiPoly A = l * bipoly_pow(x, 3) - l * x * y * y - Rat(2) * m * y * y - l * x;
    BiPoly B = l * x * x * y - l * bipoly_pow(y, 3) - Rat(2) * m * x * y - l * y;
    reduce_field_pair(A, B);
    return {A, B};
}

std::string default_corpus_path() {
    if (const char *env = std::getenv("SYMFI_CORPUS")) return env;
#ifdef SYMFI_DATA_DIR
    return std::string(SYMFI_DATA_DIR) + "/corpus.json";
#else
    return "data/corpus.json";
#endif
}

std::vector<CorpusCase> load_corpus(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open corpus file '" + path + "'");
    json j = json::parse(in);
    std::vector<CorpusCase> out;
    for (const auto &jc : j.at("cases")) {
        CorpusCase c;
        c.id = jc.at("id").get<std::string>();
        std::optional<BasePoint> case_point;
        if (jc.contains("point")) case_point = point_from_string(jc["point"].get<std::string>());
        if (jc.contains("family")) {
            auto [A, B] = mu_lambda_field(jc["family"].at("lambda").get<long>(),
                                          jc["family"].at("mu").get<long>());
            c.A = A;
            c.B = B;
        } else {
            c.A = parse_poly(jc.at("A").get<std::string>());
            c.B = parse_poly(jc.at("B").get<std::string>());
        }
        for (const auto &jr : jc.value("runs", json::array())) {
            CorpusRun r;
            r.cls = class_from_name(jr.at("class").get<std::string>(), jr.value("k", 1));
            r.N = jr.at("N").get<int>();
            if (jr.contains("point")) r.point = point_from_string(jr["point"].get<std::string>());
            else if (case_point) r.point = case_point;
            r.seed = jr.value("seed", 0);
            r.expect = jr.at("expect").get<std::string>();
            if (jr.contains("degree")) r.degree = jr["degree"].get<int>();
            c.runs.push_back(std::move(r));
        }
        for (const auto &js : jc.value("scans", json::array())) {
            CorpusScan s;
            s.cls = class_from_name(js.at("class").get<std::string>(), js.value("k", 1));
            s.n_max = js.at("n_max").get<int>();
            s.minimal_N = js.value("minimal_N", -1);
            if (js.contains("point")) s.point = point_from_string(js["point"].get<std::string>());
            else if (case_point) s.point = case_point;
            s.seed = js.value("seed", 0);
            c.scans.push_back(std::move(s));
        }
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

struct WorkItem {
    const CorpusCase *c;
    const CorpusRun *run;    // either run or scan
    const CorpusScan *scan;
};

CaseResult execute_run(const CorpusCase &c, const CorpusRun &run, const StrategyFlags &flags) {
    CaseResult res;
    res.case_id = c.id;
    std::ostringstream what;
    what << class_name(run.cls) << " N=" << run.N;
    res.what = what.str();
    auto t0 = std::chrono::steady_clock::now();
    try {
        VectorField vf(c.A, c.B);
        Query q{vf, run.N, run.cls, run.point, run.seed, false, flags};
        DriverResult r = compute_first_integral(q);
        std::string got = r.outcome.kind == Outcome::Kind::Equation
                              ? "equation"
                              : (r.outcome.kind == Outcome::Kind::NoneFound ? "none" : "unknown");
        res.pass = got == run.expect;
        std::ostringstream d;
        d << "got " << got;
        if (r.outcome.eq) {
            d << " degree " << r.outcome.eq->degree << " class " << class_name(r.outcome.eq->cls);
            if (run.degree && r.outcome.eq->degree != *run.degree) res.pass = false;
        }
        res.detail = d.str();
    } catch (const std::exception &e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

CaseResult execute_scan(const CorpusCase &c, const CorpusScan &scan, const StrategyFlags &flags) {
    CaseResult res;
    res.case_id = c.id;
    std::ostringstream what;
    what << class_name(scan.cls) << " minimal-N scan";
    res.what = what.str();
    auto t0 = std::chrono::steady_clock::now();
    try {
        VectorField vf(c.A, c.B);
        int found = -1;
        std::string status = "none";
        for (int N = 1; N <= scan.n_max; ++N) {
            Query q{vf, N, scan.cls, scan.point, scan.seed, false, flags};
            DriverResult r = compute_first_integral(q);
            if (r.outcome.kind != Outcome::Kind::NoneFound) {
                found = N;
                status = r.outcome.kind == Outcome::Kind::Equation ? "equation" : "unknown";
                break;
            }
        }
        res.pass = found == scan.minimal_N;
        std::ostringstream d;
        d << "minimal N " << found << " (" << status << "), expected " << scan.minimal_N;
        res.detail = d.str();
    } catch (const std::exception &e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace

std::vector<CaseResult> run_corpus(const std::vector<CorpusCase> &cases, const std::string &filter,
                                   int threads, const StrategyFlags &flags) {
    std::vector<WorkItem> items;
    for (const auto &c : cases) {
        if (!filter.empty() && c.id.find(filter) == std::string::npos) continue;
        for (const auto &r : c.runs) items.push_back(WorkItem{&c, &r, nullptr});
        for (const auto &s : c.scans) items.push_back(WorkItem{&c, nullptr, &s});
    }
    std::vector<CaseResult> results(items.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i)
            results[i] = items[i].run ? execute_run(*items[i].c, *items[i].run, flags)
                                      : execute_scan(*items[i].c, *items[i].scan, flags);
        return results;
    }
    std::mutex mtx;
    std::size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= items.size()) return;
                i = next++;
            }
            results[i] = items[i].run ? execute_run(*items[i].c, *items[i].run, flags)
                                      : execute_scan(*items[i].c, *items[i].scan, flags);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
    return results;
}

std::vector<BenchRow> bench_scan(const std::string &family, const IntegralClass &cls, int n_max,
                                 const std::vector<CorpusCase> &corpus, int threads,
                                 const StrategyFlags &flags) {
    struct BenchCase {
        std::string id;
        BiPoly A, B;
        std::optional<BasePoint> point;
    };
    std::vector<BenchCase> cases;
    if (family == "mu-lambda") {
        const long pairs[][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 1}};
        for (auto [l, m] : pairs) {
            auto [A, B] = mu_lambda_field(l, m);
            std::ostringstream id;
            id << "mu-lambda(" << l << "," << m << ")";
            cases.push_back({id.str(), A, B, BasePoint{Rat(2), Rat(5)}});
        }
    } else if (family == "generic") {
        BiPoly x = BiPoly::var_x(), y = BiPoly::var_y();
        BiPoly A = Rat(2) * x * x + x * y - Rat(2) * y * y - BiPoly(Rat(1));
        BiPoly B = Rat(2) * x * x - Rat(2) * y * y + y - BiPoly(Rat(3));
        cases.push_back({"generic-quadratic", A, B, std::nullopt});
    } else if (family == "corpus") {
        for (const auto &c : corpus) cases.push_back({c.id, c.A, c.B, std::nullopt});
    } else {
        throw error("unknown bench family '" + family + "' (mu-lambda|generic|corpus)");
    }

    std::vector<BenchRow> rows(cases.size());
    std::mutex mtx;
    std::size_t next = 0;
    auto work = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= cases.size()) return;
                i = next++;
            }
            const auto &bc = cases[i];
            BenchRow row;
            row.case_id = bc.id;
            row.cls = class_name(cls);
            std::ostringstream times;
            try {
                VectorField vf(bc.A, bc.B);
                std::string status = "none";
                int found = -1;
                for (int N = 1; N <= n_max; ++N) {
                    Query q{vf, N, cls, bc.point, 5, false, flags};
                    DriverResult r = compute_first_integral(q);
                    if (N > 1) times << ";";
                    times << r.diag.time_ms;
                    if (r.outcome.kind != Outcome::Kind::NoneFound) {
                        found = N;
                        status = r.outcome.kind == Outcome::Kind::Equation ? "equation" : "unknown";
                        break;
                    }
                }
                row.minimal_N = found;
                row.status = found < 0 ? "none" : status;
            } catch (const std::exception &e) {
                row.status = std::string("error: ") + e.what();
            }
            row.times_ms = times.str();
            rows[i] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    int nt = std::max(1, threads);
    for (int t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto &t : pool) t.join();
    return rows;
}

void write_bench_csv(const std::string &path, const std::vector<BenchRow> &rows) {
    std::ofstream out(path);
    if (!out) throw error("cannot open CSV output '" + path + "'");
    out << "case,class,minimal_N,status,time_ms_per_N\n";
    for (const auto &r : rows)
        out << r.case_id << "," << r.cls << "," << r.minimal_N << "," << r.status << ","
            << "\"" << r.times_ms << "\"\n";
}

} // namespace symfi
