#include "symfi/extactic.hpp"

#include "symfi/errors.hpp"
#include "symfi/modular.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>

namespace symfi {

namespace {

struct BlockInfo {
    char which;  // 'P', 'Q' or 'R'
    long weight; // weighted degree of the block variable product
};

std::vector<BlockInfo> block_layout(int r, int k, int N) {
    const long w1 = N + 1;
    switch (r) {
        case 0: return {{'P', 0}};
        case 1: return {{'Q', 0}, {'P', static_cast<long>(k) * w1}};
        case 2: return {{'R', w1}, {'P', 2 * w1}, {'Q', 2 * w1}};
        case 3: return {{'P', 4 * w1}, {'Q', 4 * w1}, {'R', 2 * w1}};
        default: throw error("block_layout: r must be in 0..3");
    }
}

struct ColDesc {
    std::size_t flist_idx;
    int block;
    int b; // y exponent
    int a; // x exponent
    long colw;
};

std::vector<ColDesc> column_order(const HPInstance &inst) {
    auto blocks = block_layout(inst.r, inst.k, inst.N);
    std::vector<ColDesc> descs;
    for (std::size_t blk = 0; blk < blocks.size(); ++blk)
        for (int b = 0; b <= inst.N; ++b)
            for (int a = 0; a + b <= inst.N; ++a)
                descs.push_back(ColDesc{inst.block_base[blk] + static_cast<std::size_t>(b),
                                        static_cast<int>(blk), b, a,
                                        blocks[blk].weight + a + b});
    std::stable_sort(descs.begin(), descs.end(), [](const ColDesc &u, const ColDesc &v) {
        if (u.colw != v.colw) return u.colw < v.colw;
        if (u.block != v.block) return u.block < v.block;
        if (u.a != v.a) return u.a < v.a;
        return u.b < v.b;
    });
    return descs;
}

// exact column vectors in processing order; column (a,b,block) holds the
// coefficients of (x0+t)^a * f_{block,b}(t)
std::vector<std::vector<Rat>> build_columns(const HPInstance &inst,
                                            const std::vector<ColDesc> &descs) {
    const std::size_t sigma = inst.sigma;
    // per f-list entry, the ladder of multiplications by (x0 + t)
    std::vector<std::vector<std::vector<Rat>>> ladder(inst.f_list.size());
    for (std::size_t fi = 0; fi < inst.f_list.size(); ++fi) {
        int b = 0;
        // recover the y power from the block structure
        for (std::size_t blk = 0; blk < inst.block_base.size(); ++blk)
            if (fi >= inst.block_base[blk] && fi <= inst.block_base[blk] + static_cast<std::size_t>(inst.N))
                b = static_cast<int>(fi - inst.block_base[blk]);
        int amax = inst.N - b;
        auto &lad = ladder[fi];
        lad.resize(static_cast<std::size_t>(amax) + 1);
        lad[0] = inst.f_list[fi].coeffs();
        for (int a = 1; a <= amax; ++a) {
            const auto &prev = lad[static_cast<std::size_t>(a - 1)];
            std::vector<Rat> cur(sigma, Rat(0));
            for (std::size_t i = 0; i < sigma; ++i) {
                cur[i] = inst.base.x0 * prev[i];
                if (i > 0) cur[i] += prev[i - 1];
            }
            lad[static_cast<std::size_t>(a)] = std::move(cur);
        }
    }
    std::vector<std::vector<Rat>> cols;
    cols.reserve(descs.size());
    for (const auto &d : descs)
        cols.push_back(ladder[d.flist_idx][static_cast<std::size_t>(d.a)]);
    return cols;
}

KernelElement element_from_combo(const HPInstance &inst, const std::vector<ColDesc> &descs,
                                 const std::vector<Rat> &combo) {
    auto blocks = block_layout(inst.r, inst.k, inst.N);
    BiPoly parts[3]; // indexed by block
    for (std::size_t c = 0; c < combo.size(); ++c) {
        if (is_zero(combo[c])) continue;
        const ColDesc &d = descs[c];
        parts[d.block].set_coeff(d.a, d.b, parts[d.block].coeff(d.a, d.b) + combo[c]);
    }
    KernelElement e;
    e.r = inst.r;
    e.k = inst.k;
    e.N = inst.N;
    for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
        BiPoly v = parts[blk];
        switch (blocks[blk].which) {
            case 'P': e.P = inst.r == 3 ? v * Rat(1, 4) : v; break;
            case 'Q': e.Q = v; break;
            case 'R': e.R = v; break;
        }
    }
    e.wdeg = weighted_degree(e);
    return e;
}

// incremental column elimination over Q (mirrors ZpEliminator)
class RatEliminator {
  public:
    explicit RatEliminator(std::size_t rows) : rows_(rows) {}

    std::optional<std::vector<Rat>> push_column(std::vector<Rat> col) {
        std::vector<Rat> combo(pushed_ + 1, Rat(0));
        combo[pushed_] = Rat(1);
        for (const Pivot &pv : pivots_) {
            const Rat &c = col[pv.row];
            if (is_zero(c)) continue;
            Rat factor = c / pv.col[pv.row];
            for (std::size_t i = 0; i < rows_; ++i)
                if (!is_zero(pv.col[i])) col[i] -= factor * pv.col[i];
            for (std::size_t i = 0; i < pv.combo.size(); ++i)
                if (!is_zero(pv.combo[i])) combo[i] -= factor * pv.combo[i];
        }
        std::size_t row = rows_;
        for (std::size_t i = 0; i < rows_; ++i)
            if (!is_zero(col[i])) {
                row = i;
                break;
            }
        ++pushed_;
        if (row == rows_) return combo;
        pivots_.push_back(Pivot{std::move(col), row, std::move(combo)});
        return std::nullopt;
    }

  private:
    std::size_t rows_;
    struct Pivot {
        std::vector<Rat> col;
        std::size_t row;
        std::vector<Rat> combo;
    };
    std::vector<Pivot> pivots_;
    std::size_t pushed_ = 0;
};

bool verify_membership(const std::vector<std::vector<Rat>> &cols, const std::vector<Rat> &combo,
                       std::size_t sigma) {
    std::vector<Rat> acc(sigma, Rat(0));
    for (std::size_t c = 0; c < combo.size(); ++c) {
        if (is_zero(combo[c])) continue;
        for (std::size_t i = 0; i < sigma; ++i) acc[i] += combo[c] * cols[c][i];
    }
    for (const auto &v : acc)
        if (!is_zero(v)) return false;
    return true;
}

struct PrimePass {
    std::uint64_t p;
    long first_dep = -1; // -1: no dependent column
    std::vector<std::uint64_t> combo;
    long dep_count = 0;
};

std::optional<PrimePass> run_prime(const std::vector<std::vector<Rat>> &cols, std::size_t sigma,
                                   std::uint64_t p) {
    try {
        Zp f(p);
        PrimePass pass;
        pass.p = p;
        ZpEliminator elim(f, sigma);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::vector<std::uint64_t> col(sigma);
            for (std::size_t i = 0; i < sigma; ++i) col[i] = mod_p(cols[c][i], f);
            auto dep = elim.push_column(std::move(col));
            if (dep) {
                ++pass.dep_count;
                if (pass.first_dep < 0) {
                    pass.first_dep = static_cast<long>(c);
                    pass.combo = std::move(*dep);
                }
            }
        }
        return pass;
    } catch (const bad_prime &) {
        return std::nullopt;
    }
}

std::optional<std::vector<Rat>> reconstruct_combo(const std::vector<const PrimePass *> &group) {
    std::size_t len = group.front()->combo.size();
    std::vector<Rat> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        Int value(static_cast<unsigned long>(group.front()->combo[i]));
        Int modulus(static_cast<unsigned long>(group.front()->p));
        for (std::size_t g = 1; g < group.size(); ++g) {
            value = crt_pair(value, modulus, group[g]->combo[i], group[g]->p);
            modulus *= Int(static_cast<unsigned long>(group[g]->p));
        }
        auto rec = rational_reconstruct(value, modulus);
        if (!rec) return std::nullopt;
        out[i] = *rec;
    }
    return out;
}

// ---- structured mode: iterative shifted order basis over Zp ----

struct OrderBasisPick {
    std::uint64_t history = 1469598103u;
    int row = -1;
    std::vector<std::vector<std::uint64_t>> polys; // t-coefficient vectors of the row
    std::uint64_t p = 0;
};

std::optional<OrderBasisPick> order_basis_prime(const HPInstance &inst, std::uint64_t p) {
    try {
        Zp f(p);
        const std::size_t m = inst.f_list.size();
        const std::size_t sigma = inst.sigma;
        std::vector<std::vector<std::uint64_t>> fl(m, std::vector<std::uint64_t>(sigma));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < sigma; ++i) fl[j][i] = mod_p(inst.f_list[j][i], f);

        std::vector<std::vector<std::vector<std::uint64_t>>> rows(m);
        std::vector<std::vector<std::uint64_t>> resid = fl;
        std::vector<long> sdeg(m);
        for (std::size_t i = 0; i < m; ++i) {
            rows[i].assign(m, {});
            rows[i][i] = {1};
            sdeg[i] = inst.shifts[i];
        }
        std::uint64_t history = 1469598103u;
        for (std::size_t ord = 0; ord < sigma; ++ord) {
            int pivot = -1;
            for (std::size_t i = 0; i < m; ++i) {
                if (resid[i][ord] == 0) continue;
                if (pivot < 0 || sdeg[i] < sdeg[static_cast<std::size_t>(pivot)]) pivot = static_cast<int>(i);
            }
            history = history * 1099511628211ull + static_cast<std::uint64_t>(pivot + 2);
            if (pivot < 0) continue;
            auto &prow = rows[static_cast<std::size_t>(pivot)];
            auto &pres = resid[static_cast<std::size_t>(pivot)];
            std::uint64_t pc = pres[ord];
            std::uint64_t pcinv = f.inv(pc);
            for (std::size_t i = 0; i < m; ++i) {
                if (static_cast<int>(i) == pivot || resid[i][ord] == 0) continue;
                std::uint64_t factor = f.mul(resid[i][ord], pcinv);
                for (std::size_t j = 0; j < m; ++j) {
                    if (prow[j].empty()) continue;
                    auto &dst = rows[i][j];
                    if (dst.size() < prow[j].size()) dst.resize(prow[j].size(), 0);
                    for (std::size_t l = 0; l < prow[j].size(); ++l)
                        dst[l] = f.sub(dst[l], f.mul(factor, prow[j][l]));
                }
                for (std::size_t l = ord; l < sigma; ++l)
                    resid[i][l] = f.sub(resid[i][l], f.mul(factor, pres[l]));
            }
            // multiply the pivot row by t
            for (std::size_t j = 0; j < m; ++j)
                if (!prow[j].empty()) prow[j].insert(prow[j].begin(), 0);
            for (std::size_t l = sigma; l-- > ord + 1;) pres[l] = pres[l - 1];
            pres[ord] = 0;
            sdeg[static_cast<std::size_t>(pivot)] += 1;
        }

        // pick the valid row of minimal weighted degree
        auto blocks = block_layout(inst.r, inst.k, inst.N);
        auto ypow_of = [&](std::size_t j) {
            for (std::size_t blk = 0; blk < inst.block_base.size(); ++blk)
                if (j >= inst.block_base[blk] && j <= inst.block_base[blk] + static_cast<std::size_t>(inst.N))
                    return std::pair<int, std::size_t>{static_cast<int>(j - inst.block_base[blk]), blk};
            throw error("order_basis: bad f-list index");
        };
        auto tdeg = [](const std::vector<std::uint64_t> &v) {
            for (std::size_t l = v.size(); l-- > 0;)
                if (v[l] != 0) return static_cast<long>(l);
            return -1l;
        };
        int best = -1;
        long best_w = 0;
        for (std::size_t i = 0; i < m; ++i) {
            bool valid = false, ok = true;
            long w = -1;
            for (std::size_t j = 0; j < m; ++j) {
                long dj = tdeg(rows[i][j]);
                if (dj < 0) continue;
                auto [b, blk] = ypow_of(j);
                if (dj + b > inst.N) {
                    ok = false;
                    break;
                }
                valid = true;
                w = std::max(w, dj + b + blocks[blk].weight);
            }
            if (!ok || !valid) continue;
            if (best < 0 || w < best_w) {
                best = static_cast<int>(i);
                best_w = w;
            }
        }
        OrderBasisPick pick;
        pick.history = history;
        pick.row = best;
        pick.p = p;
        if (best >= 0) pick.polys = rows[static_cast<std::size_t>(best)];
        return pick;
    } catch (const bad_prime &) {
        return std::nullopt;
    }
}

} // namespace

long weighted_degree(int r, int k, int N, const BiPoly &P, const BiPoly &Q, const BiPoly &R) {
    auto blocks = block_layout(r, k, N);
    long w = -1;
    for (const auto &blk : blocks) {
        const BiPoly *part = blk.which == 'P' ? &P : (blk.which == 'Q' ? &Q : &R);
        if (part->is_zero()) continue;
        w = std::max(w, part->degree() + blk.weight);
    }
    return w;
}

long weighted_degree(const KernelElement &e) {
    return weighted_degree(e.r, e.k, e.N, e.P, e.Q, e.R);
}

HPInstance build_hp_instance(const FlowJet &jet, int N, int r, int k) {
    if (jet.r < r || jet.N < N) throw jet_too_shallow();
    std::size_t sigma = flow_sigma(N, r);
    if (jet.sigma < sigma) throw jet_too_shallow();

    HPInstance inst;
    inst.r = r;
    inst.k = k;
    inst.N = N;
    inst.sigma = sigma;
    inst.base = jet.base;

    Series y = jet.y.truncate(sigma);
    std::vector<Series> ypow(static_cast<std::size_t>(N) + 1);
    ypow[0] = Series::constant(jet.base.x0, sigma, Rat(1));
    for (int i = 1; i <= N; ++i) ypow[static_cast<std::size_t>(i)] = series_mul(ypow[static_cast<std::size_t>(i - 1)], y);

    auto append_block = [&](const Series &blk) {
        inst.block_base.push_back(inst.f_list.size());
        for (int i = 0; i <= N; ++i)
            inst.f_list.push_back(series_mul(blk, ypow[static_cast<std::size_t>(i)]));
    };
    Series one = Series::constant(jet.base.x0, sigma, Rat(1));
    if (r == 0) {
        append_block(one);
    } else if (r == 1) {
        Series y1k = series_pow(jet.y1.truncate(sigma), static_cast<unsigned>(k));
        append_block(one);
        append_block(y1k);
    } else if (r == 2) {
        Series y1 = jet.y1.truncate(sigma);
        Series y2 = jet.y2.truncate(sigma);
        append_block(y1);
        append_block(series_mul(y1, y1));
        append_block(y2);
    } else if (r == 3) {
        Series y1 = jet.y1.truncate(sigma);
        Series y2 = jet.y2.truncate(sigma);
        Series y3 = jet.y3.truncate(sigma);
        Series y1sq = series_mul(y1, y1);
        Series psi = series_mul(y2, y2) * Rat(3) - series_mul(y3, y1) * Rat(2);
        append_block(series_mul(y1sq, y1sq));
        append_block(psi);
        append_block(y1sq);
    } else {
        throw error("build_hp_instance: r must be in 0..3");
    }
    // shifts per block: 0..N, N+1..2N+1, 2N+2..3N+2
    for (std::size_t blk = 0; blk < inst.block_base.size(); ++blk)
        for (int i = 0; i <= N; ++i)
            inst.shifts.push_back(static_cast<int>(blk) * (N + 1) + i);
    return inst;
}

std::optional<KernelElement> kernel_element(const HPInstance &inst, const KernelOptions &opts,
                                            KernelStats *stats) {
    auto descs = column_order(inst);
    auto cols = build_columns(inst, descs);
    const std::size_t sigma = inst.sigma;

    KernelMode mode = opts.mode;
    if (mode == KernelMode::Auto)
        mode = sigma <= opts.exact_sigma_limit ? KernelMode::DenseExact : KernelMode::Modular;

    if (mode == KernelMode::DenseExact) {
        RatEliminator elim(sigma);
        std::optional<std::vector<Rat>> first;
        long deps = 0;
        for (auto &col : cols) {
            auto dep = elim.push_column(std::move(col));
            if (dep) {
                ++deps;
                if (!first) first = std::move(dep);
            }
        }
        if (stats) stats->kernel_dim = deps;
        if (!first) return std::nullopt;
        return element_from_combo(inst, descs, *first);
    }

    if (mode == KernelMode::Structured) {
        // shifted order basis mod p, CRT-reconstructed and verified exactly
        std::vector<OrderBasisPick> picks;
        std::size_t prime_idx = 0;
        std::size_t want = 3;
        bool no_valid_row = false;
        while (prime_idx < 200 && want <= 40) {
            while (picks.size() < want && prime_idx < 200) {
                auto pk = order_basis_prime(inst, nth_prime(prime_idx++));
                if (pk) picks.push_back(std::move(*pk));
            }
            if (picks.empty()) break;
            std::vector<const OrderBasisPick *> group;
            for (const auto &pk : picks)
                if (pk.history == picks.front().history && pk.row == picks.front().row)
                    group.push_back(&pk);
            if (group.size() + 1 < picks.size()) {
                want += 2; // inconsistent primes, gather more
                continue;
            }
            if (group.front()->row < 0) {
                no_valid_row = true;
                break;
            }
            // CRT + rational reconstruction of the selected row, per entry
            std::vector<std::vector<Rat>> rowq(inst.f_list.size());
            bool ok = true;
            for (std::size_t j = 0; j < inst.f_list.size() && ok; ++j) {
                std::size_t len = 0;
                for (const auto *g : group) len = std::max(len, g->polys[j].size());
                rowq[j].assign(len, Rat(0));
                for (std::size_t l = 0; l < len; ++l) {
                    Int value(0), modulus(1);
                    for (const auto *g : group) {
                        std::uint64_t res = l < g->polys[j].size() ? g->polys[j][l] : 0;
                        if (modulus == 1) {
                            value = Int(static_cast<unsigned long>(res));
                            modulus = Int(static_cast<unsigned long>(g->p));
                        } else {
                            value = crt_pair(value, modulus, res, g->p);
                            modulus *= Int(static_cast<unsigned long>(g->p));
                        }
                    }
                    auto rec = rational_reconstruct(value, modulus);
                    if (!rec) {
                        ok = false;
                        break;
                    }
                    rowq[j][l] = *rec;
                }
            }
            if (ok) {
                // row polynomials are in t = x - x0: shift to x and assemble
                auto blocks = block_layout(inst.r, inst.k, inst.N);
                BiPoly parts[3];
                for (std::size_t j = 0; j < rowq.size(); ++j) {
                    QPoly pt(rowq[j]);
                    if (pt.is_zero()) continue;
                    int b = 0;
                    std::size_t blk = 0;
                    for (std::size_t bi = 0; bi < inst.block_base.size(); ++bi)
                        if (j >= inst.block_base[bi] &&
                            j <= inst.block_base[bi] + static_cast<std::size_t>(inst.N)) {
                            b = static_cast<int>(j - inst.block_base[bi]);
                            blk = bi;
                        }
                    BiPoly px;
                    BiPoly xm = BiPoly::var_x() - BiPoly(inst.base.x0);
                    for (int l = pt.degree(); l >= 0; --l) px = px * xm + BiPoly(pt.coeff(l));
                    parts[blk] = parts[blk] + px * BiPoly::monomial(Rat(1), 0, b);
                }
                std::vector<Rat> cvec(descs.size(), Rat(0));
                for (std::size_t c = 0; c < descs.size(); ++c)
                    cvec[c] = parts[descs[c].block].coeff(descs[c].a, descs[c].b);
                bool nonzero = false;
                for (const auto &v : cvec) nonzero = nonzero || !is_zero(v);
                if (nonzero && verify_membership(cols, cvec, sigma)) {
                    // normalize: unit coefficient on the heaviest supported column
                    Rat unit(1);
                    for (std::size_t c = descs.size(); c-- > 0;)
                        if (!is_zero(cvec[c])) {
                            unit = Rat(1) / cvec[c];
                            break;
                        }
                    KernelElement e;
                    e.r = inst.r;
                    e.k = inst.k;
                    e.N = inst.N;
                    for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
                        BiPoly v = parts[blk] * unit;
                        switch (blocks[blk].which) {
                            case 'P': e.P = inst.r == 3 ? v * Rat(1, 4) : v; break;
                            case 'Q': e.Q = v; break;
                            case 'R': e.R = v; break;
                        }
                    }
                    e.wdeg = weighted_degree(e);
                    if (stats) stats->primes_used = static_cast<int>(prime_idx);
                    return e;
                }
            }
            want += 2;
        }
        // no valid basis row (or reconstruction failed): use the dense path
        if (stats) stats->used_fallback = !no_valid_row;
        KernelOptions fb = opts;
        fb.mode = KernelMode::Modular;
        return kernel_element(inst, fb, stats);
    }

    // Modular: Las Vegas multi-prime with exact verification
    std::vector<PrimePass> passes;
    std::size_t prime_idx = 0;
    std::size_t want = 2;
    while (prime_idx < 300) {
        while (passes.size() < want && prime_idx < 300) {
            auto pass = run_prime(cols, sigma, nth_prime(prime_idx++));
            if (pass) {
                if (pass->first_dep < 0) {
                    // trivial kernel mod a verified prime certifies a trivial
                    // exact kernel (rank can only drop modulo p)
                    if (stats) {
                        stats->kernel_dim = 0;
                        stats->primes_used = static_cast<int>(prime_idx);
                    }
                    return std::nullopt;
                }
                passes.push_back(std::move(*pass));
            }
        }
        if (passes.empty()) throw error("kernel_element: no usable prime found");
        // use the group with the largest first dependent column; bad primes
        // can only see extra kernel vectors, i.e. earlier dependents
        long best_dep = -1;
        for (const auto &ps : passes) best_dep = std::max(best_dep, ps.first_dep);
        std::vector<const PrimePass *> group;
        for (const auto &ps : passes)
            if (ps.first_dep == best_dep) group.push_back(&ps);
        auto combo = reconstruct_combo(group);
        if (combo && verify_membership(cols, *combo, sigma)) {
            if (stats) {
                stats->kernel_dim = group.front()->dep_count;
                stats->primes_used = static_cast<int>(prime_idx);
            }
            return element_from_combo(inst, descs, *combo);
        }
        want = want * 2;
        if (want > 128) break;
    }
    // certainty fallback: exact dense elimination
    if (stats) stats->used_fallback = true;
    KernelOptions fb = opts;
    fb.mode = KernelMode::DenseExact;
    return kernel_element(inst, fb, stats);
}

namespace {

// ---- fully modular flow jet and instance, for the scaling probe ----

using PSeries = std::vector<std::uint64_t>;

PSeries pseries_mul(const Zp &f, const PSeries &a, const PSeries &b) {
    std::size_t n = a.size();
    PSeries r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (b[j] != 0) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return r;
}

PSeries pseries_div(const Zp &f, const PSeries &a, const PSeries &b) {
    std::size_t n = a.size();
    PSeries q(n, 0);
    std::uint64_t inv0 = f.inv(b[0]);
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t acc = a[k];
        for (std::size_t j = 0; j < k; ++j) acc = f.sub(acc, f.mul(q[j], b[k - j]));
        q[k] = f.mul(acc, inv0);
    }
    return q;
}

PSeries pseries_int(const Zp &f, const PSeries &a) {
    PSeries r(a.size(), 0);
    for (std::size_t k = 0; k + 1 < a.size(); ++k) r[k + 1] = f.mul(a[k], f.inv((k + 1) % f.p));
    return r;
}

PSeries pseries_expint(const Zp &f, const PSeries &a) {
    PSeries g(a.size(), 0);
    if (g.empty()) return g;
    g[0] = 1;
    for (std::size_t k = 1; k < a.size(); ++k) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < k; ++j) acc = f.add(acc, f.mul(a[j], g[k - 1 - j]));
        g[k] = f.mul(acc, f.inv(k % f.p));
    }
    return g;
}

// polynomial p(x0+t, y0+u) by u-degree, reduced mod p
std::vector<PSeries> pshift_by_udeg(const Zp &f, const BiPoly &p, const Rat &x0, const Rat &y0,
                                    std::size_t sigma) {
    BiPoly s = p.shift(x0, y0);
    std::vector<PSeries> out(static_cast<std::size_t>(std::max(0, s.degree_y() + 1)));
    for (auto &row : out) row.assign(sigma, 0);
    for (const auto &[m, c] : s.terms())
        if (static_cast<std::size_t>(m.i) < sigma)
            out[static_cast<std::size_t>(m.j)][static_cast<std::size_t>(m.i)] =
                f.add(out[static_cast<std::size_t>(m.j)][static_cast<std::size_t>(m.i)], mod_p(c, f));
    return out;
}

struct ModularInstance {
    std::vector<PSeries> f_list;
    std::vector<int> shifts;
};

ModularInstance modular_instance(const Zp &f, const VectorField &vf, const BasePoint &base, int N,
                                 int r) {
    std::size_t sigma = flow_sigma(N, r);
    auto as = pshift_by_udeg(f, vf.A(), base.x0, base.y0, sigma);
    auto bs = pshift_by_udeg(f, vf.B(), base.x0, base.y0, sigma);
    std::vector<PSeries> n1s, n2s, n3s;
    std::size_t maxpow = std::max(as.size(), bs.size());
    if (r >= 1) {
        n1s = pshift_by_udeg(f, vf.dyBA_num(1), base.x0, base.y0, sigma);
        maxpow = std::max(maxpow, n1s.size());
    }
    if (r >= 2) {
        n2s = pshift_by_udeg(f, vf.dyBA_num(2), base.x0, base.y0, sigma);
        maxpow = std::max(maxpow, n2s.size());
    }
    if (r >= 3) {
        n3s = pshift_by_udeg(f, vf.dyBA_num(3), base.x0, base.y0, sigma);
        maxpow = std::max(maxpow, n3s.size());
    }

    // term-by-term recurrence for u, with powers maintained incrementally
    std::uint64_t a00 = as.empty() || as[0].empty() ? 0 : as[0][0];
    if (a00 == 0) throw bad_prime{};
    std::vector<PSeries> upow(maxpow, PSeries(sigma, 0));
    PSeries u(sigma, 0), uprime(sigma, 0);
    upow[0][0] = 1;
    for (std::size_t n = 0; n + 1 < sigma; ++n) {
        std::uint64_t S = 0;
        for (std::size_t j = 0; j < bs.size(); ++j)
            for (std::size_t i = 0; i <= n && i < bs[j].size(); ++i)
                if (bs[j][i] != 0 && j < upow.size()) S = f.add(S, f.mul(bs[j][i], upow[j][n - i]));
        for (std::size_t j = 0; j < as.size(); ++j)
            for (std::size_t i = 0; i <= n && i < as[j].size(); ++i) {
                if (as[j][i] == 0) continue;
                std::size_t m = n - i;
                std::uint64_t conv = 0;
                for (std::size_t l = 0; l <= m; ++l)
                    if (upow[j][l] != 0 && uprime[m - l] != 0)
                        conv = f.add(conv, f.mul(upow[j][l], uprime[m - l]));
                S = f.sub(S, f.mul(as[j][i], conv));
            }
        u[n + 1] = f.mul(S, f.inv(f.mul((n + 1) % f.p, a00)));
        uprime[n] = f.mul((n + 1) % f.p, u[n + 1]);
        for (std::size_t j = 1; j < upow.size(); ++j) {
            std::uint64_t cnew = 0;
            for (std::size_t l = 0; l <= n + 1; ++l)
                if (upow[j - 1][l] != 0 && u[n + 1 - l] != 0)
                    cnew = f.add(cnew, f.mul(upow[j - 1][l], u[n + 1 - l]));
            upow[j][n + 1] = cnew;
        }
    }
    auto compose = [&](const std::vector<PSeries> &cj) {
        PSeries out(sigma, 0);
        for (std::size_t j = 0; j < cj.size(); ++j)
            for (std::size_t i = 0; i < cj[j].size(); ++i) {
                if (cj[j][i] == 0) continue;
                for (std::size_t m = i; m < sigma; ++m)
                    out[m] = f.add(out[m], f.mul(cj[j][i], upow[j][m - i]));
            }
        return out;
    };
    PSeries acomp = compose(as);
    PSeries y = u;
    y[0] = f.add(y[0], mod_p(base.y0, f));
    PSeries y1, y2, y3;
    if (r >= 1) y1 = pseries_expint(f, pseries_div(f, compose(n1s), pseries_mul(f, acomp, acomp)));
    if (r >= 2) {
        PSeries a2 = pseries_mul(f, acomp, acomp);
        PSeries g2 = pseries_div(f, compose(n2s), pseries_mul(f, a2, acomp));
        y2 = pseries_mul(f, y1, pseries_int(f, pseries_mul(f, y1, g2)));
        if (r >= 3) {
            PSeries g3 = pseries_div(f, compose(n3s), pseries_mul(f, a2, a2));
            PSeries t3(pseries_mul(f, y2, g2));
            for (auto &v : t3) v = f.mul(v, 3 % f.p);
            PSeries integ = t3;
            PSeries y1sqg3 = pseries_mul(f, pseries_mul(f, y1, y1), g3);
            for (std::size_t i = 0; i < sigma; ++i) integ[i] = f.add(integ[i], y1sqg3[i]);
            y3 = pseries_mul(f, y1, pseries_int(f, integ));
        }
    }

    ModularInstance inst;
    std::vector<PSeries> ypow(static_cast<std::size_t>(N) + 1, PSeries(sigma, 0));
    ypow[0][0] = 1;
    for (int i = 1; i <= N; ++i) ypow[static_cast<std::size_t>(i)] = pseries_mul(f, ypow[static_cast<std::size_t>(i - 1)], y);
    auto add_block = [&](const PSeries &blk) {
        for (int i = 0; i <= N; ++i)
            inst.f_list.push_back(pseries_mul(f, blk, ypow[static_cast<std::size_t>(i)]));
    };
    PSeries one(sigma, 0);
    one[0] = 1;
    if (r == 0) {
        add_block(one);
    } else if (r == 1) {
        add_block(one);
        add_block(y1);
    } else if (r == 2) {
        add_block(y1);
        add_block(pseries_mul(f, y1, y1));
        add_block(y2);
    } else {
        PSeries y1sq = pseries_mul(f, y1, y1);
        PSeries psi = pseries_mul(f, y2, y2);
        for (auto &v : psi) v = f.mul(v, 3 % f.p);
        PSeries t = pseries_mul(f, y3, y1);
        for (std::size_t i = 0; i < sigma; ++i) psi[i] = f.sub(psi[i], f.mul(2 % f.p, t[i]));
        add_block(pseries_mul(f, y1sq, y1sq));
        add_block(psi);
        add_block(y1sq);
    }
    int nblocks = static_cast<int>(inst.f_list.size()) / (N + 1);
    for (int blk = 0; blk < nblocks; ++blk)
        for (int i = 0; i <= N; ++i) inst.shifts.push_back(blk * (N + 1) + i);
    return inst;
}

// shifted order basis over Zp on a modular f-list; returns the pivot count
std::size_t modular_order_basis(const Zp &f, const ModularInstance &inst, std::size_t sigma) {
    const std::size_t m = inst.f_list.size();
    std::vector<std::vector<PSeries>> rows(m);
    std::vector<long> sdeg(m);
    for (std::size_t i = 0; i < m; ++i) {
        rows[i].assign(m, {});
        rows[i][i] = {1};
        sdeg[i] = inst.shifts[i];
    }
    std::size_t pivots = 0;
    for (std::size_t ord = 0; ord < sigma; ++ord) {
        // residual coefficients by direct convolution (no stored residuals)
        std::vector<std::uint64_t> c(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < m; ++j) {
                const auto &pij = rows[i][j];
                if (pij.empty()) continue;
                const auto &fj = inst.f_list[j];
                std::size_t lmax = std::min(pij.size() - 1, ord);
                for (std::size_t l = 0; l <= lmax; ++l)
                    if (pij[l] != 0) acc = f.add(acc, f.mul(pij[l], fj[ord - l]));
            }
            c[i] = acc;
        }
        int pivot = -1;
        for (std::size_t i = 0; i < m; ++i) {
            if (c[i] == 0) continue;
            if (pivot < 0 || sdeg[i] < sdeg[static_cast<std::size_t>(pivot)]) pivot = static_cast<int>(i);
        }
        if (pivot < 0) continue;
        ++pivots;
        auto &prow = rows[static_cast<std::size_t>(pivot)];
        std::uint64_t pcinv = f.inv(c[static_cast<std::size_t>(pivot)]);
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<int>(i) == pivot || c[i] == 0) continue;
            std::uint64_t factor = f.mul(c[i], pcinv);
            for (std::size_t j = 0; j < m; ++j) {
                if (prow[j].empty()) continue;
                auto &dst = rows[i][j];
                if (dst.size() < prow[j].size()) dst.resize(prow[j].size(), 0);
                for (std::size_t l = 0; l < prow[j].size(); ++l)
                    dst[l] = f.sub(dst[l], f.mul(factor, prow[j][l]));
            }
        }
        for (std::size_t j = 0; j < m; ++j)
            if (!prow[j].empty()) prow[j].insert(prow[j].begin(), 0);
        sdeg[static_cast<std::size_t>(pivot)] += 1;
    }
    return pivots;
}

} // namespace

double structured_kernel_probe_ms(const VectorField &vf, const BasePoint &base, int N, int r,
                                  int reps) {
    Zp f(nth_prime(0));
    std::size_t sigma = flow_sigma(N, r);
    double total = 0;
    std::size_t sink = 0;
    for (int rep = 0; rep < reps; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        ModularInstance inst = modular_instance(f, vf, base, N, r);
        sink += modular_order_basis(f, inst, sigma);
        total += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
    }
    // keep the optimizer honest about the measured work
    if (sink == static_cast<std::size_t>(-1)) throw error("unreachable");
    return total / reps;
}

Series semantic_series(const KernelElement &e, const FlowJet &jet) {
    if (jet.sigma < flow_sigma(e.N, e.r)) throw jet_too_shallow();
    std::size_t sigma = jet.sigma; // compose at the jet's full order
    Series y = jet.y.truncate(sigma);
    auto comp = [&](const BiPoly &p) { return series_eval(p, y); };
    switch (e.r) {
        case 0: return comp(e.P);
        case 1: {
            Series y1k = series_pow(jet.y1.truncate(sigma), static_cast<unsigned>(e.k));
            return series_mul(y1k, comp(e.P)) + comp(e.Q);
        }
        case 2: {
            Series y1 = jet.y1.truncate(sigma), y2 = jet.y2.truncate(sigma);
            return series_mul(comp(e.P), series_mul(y1, y1)) + series_mul(comp(e.Q), y2) +
                   series_mul(comp(e.R), y1);
        }
        case 3: {
            Series y1 = jet.y1.truncate(sigma), y2 = jet.y2.truncate(sigma), y3 = jet.y3.truncate(sigma);
            Series y1sq = series_mul(y1, y1);
            Series psi = series_mul(y2, y2) * Rat(3) - series_mul(y3, y1) * Rat(2);
            return series_mul(comp(e.P) * Rat(4), series_mul(y1sq, y1sq)) +
                   series_mul(comp(e.Q), psi) + series_mul(comp(e.R), y1sq);
        }
        default: throw error("semantic_series: bad r");
    }
}

std::vector<KernelElement> brute_force_kernel(const VectorField &vf, const BasePoint &base,
                                              int N, int r, int k) {
    FlowJet jet = flow_jet(vf, base, N, r);
    HPInstance inst = build_hp_instance(jet, N, r, k);
    std::size_t sigma = inst.sigma;

    // columns built independently via series products; sorted by ascending
    // weight so the reduced echelon form exposes a minimal-weight element
    // even when the kernel has dimension > 1
    Series xs(base.x0, [&] {
        std::vector<Rat> v(sigma, Rat(0));
        v[0] = base.x0;
        if (sigma > 1) v[1] = Rat(1);
        return v;
    }());
    auto blocks_info = block_layout(r, k, N);
    struct NatCol {
        int block, b, a;
        long w;
        std::vector<Rat> v;
    };
    std::vector<NatCol> cols;
    for (std::size_t blk = 0; blk < inst.block_base.size(); ++blk)
        for (int b = 0; b <= N; ++b)
            for (int a = 0; a + b <= N; ++a) {
                Series s = series_mul(series_pow(xs, static_cast<unsigned>(a)),
                                      inst.f_list[inst.block_base[blk] + static_cast<std::size_t>(b)]);
                cols.push_back(NatCol{static_cast<int>(blk), b, a,
                                      blocks_info[blk].weight + a + b, s.coeffs()});
            }
    std::stable_sort(cols.begin(), cols.end(), [](const NatCol &u, const NatCol &v) {
        if (u.w != v.w) return u.w < v.w;
        if (u.block != v.block) return u.block < v.block;
        return u.a < v.a;
    });

    // textbook RREF of the sigma x ncols matrix
    std::size_t nc = cols.size();
    std::vector<std::vector<Rat>> M(sigma, std::vector<Rat>(nc, Rat(0)));
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t i = 0; i < sigma; ++i) M[i][c] = cols[c].v[i];
    std::vector<long> pivot_of_col(nc, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < nc && rank < sigma; ++c) {
        std::size_t sel = sigma;
        for (std::size_t i = rank; i < sigma; ++i)
            if (!is_zero(M[i][c])) {
                sel = i;
                break;
            }
        if (sel == sigma) continue;
        std::swap(M[rank], M[sel]);
        Rat inv = Rat(1) / M[rank][c];
        for (std::size_t j = 0; j < nc; ++j) M[rank][j] *= inv;
        for (std::size_t i = 0; i < sigma; ++i) {
            if (i == rank || is_zero(M[i][c])) continue;
            Rat f = M[i][c];
            for (std::size_t j = 0; j < nc; ++j) M[i][j] -= f * M[rank][j];
        }
        pivot_of_col[c] = static_cast<long>(rank);
        ++rank;
    }

    std::vector<KernelElement> out;
    auto blocks = block_layout(r, k, N);
    for (std::size_t c = 0; c < nc; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        // free column: kernel vector with entry 1 at c
        std::vector<Rat> vec(nc, Rat(0));
        vec[c] = Rat(1);
        for (std::size_t j = 0; j < nc; ++j)
            if (pivot_of_col[j] >= 0) vec[j] = -M[static_cast<std::size_t>(pivot_of_col[j])][c];
        KernelElement e;
        e.r = r;
        e.k = k;
        e.N = N;
        BiPoly parts[3];
        for (std::size_t j = 0; j < nc; ++j)
            if (!is_zero(vec[j]))
                parts[cols[j].block].set_coeff(cols[j].a, cols[j].b,
                                               parts[cols[j].block].coeff(cols[j].a, cols[j].b) + vec[j]);
        for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
            BiPoly v = parts[blk];
            switch (blocks[blk].which) {
                case 'P': e.P = (r == 3) ? v * Rat(1, 4) : v; break;
                case 'Q': e.Q = v; break;
                case 'R': e.R = v; break;
            }
        }
        e.wdeg = weighted_degree(e);
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace symfi
