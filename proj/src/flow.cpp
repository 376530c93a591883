#include "symfi/flow.hpp"

#include "symfi/errors.hpp"

namespace symfi {

namespace {

// polynomial p(x0+t, y0+u) organized by u-degree: slot j holds the Q[t]
// coefficient of u^j
std::vector<QPoly> shifted_by_udeg(const BiPoly &p, const Rat &x0, const Rat &y0) {
    BiPoly s = p.shift(x0, y0);
    std::vector<QPoly> out(static_cast<std::size_t>(std::max(0, s.degree_y() + 1)));
    std::vector<std::vector<Rat>> raw(out.size());
    for (auto &row : raw) row.assign(static_cast<std::size_t>(s.degree_x() + 1), Rat(0));
    for (const auto &[m, c] : s.terms()) raw[static_cast<std::size_t>(m.j)][static_cast<std::size_t>(m.i)] = c;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = QPoly(std::move(raw[j]));
    return out;
}

// sum_j c[j](t) * upow[j](t), truncated
std::vector<Rat> compose_with_powers(const std::vector<QPoly> &cj,
                                     const std::vector<std::vector<Rat>> &upow,
                                     std::size_t order) {
    std::vector<Rat> out(order, Rat(0));
    for (std::size_t j = 0; j < cj.size(); ++j) {
        if (cj[j].is_zero()) continue;
        const auto &uj = upow[j];
        for (int i = 0; i <= cj[j].degree(); ++i) {
            const Rat &ci = cj[j].coeffs()[static_cast<std::size_t>(i)];
            if (is_zero(ci)) continue;
            for (std::size_t m = static_cast<std::size_t>(i); m < order; ++m)
                out[m] += ci * uj[m - static_cast<std::size_t>(i)];
        }
    }
    return out;
}

// term-by-term solution of As(t,u) u' = Bs(t,u), u(0) = 0; also returns the
// powers of u needed to compose polynomials of y-degree up to maxpow
std::vector<Rat> solve_ode_recurrence(const std::vector<QPoly> &as, const std::vector<QPoly> &bs,
                                      std::size_t sigma, std::size_t maxpow,
                                      std::vector<std::vector<Rat>> &upow) {
    const Rat a00 = as.empty() || as[0].is_zero() ? Rat(0) : as[0].coeff(0);
    if (is_zero(a00)) throw base_point_on_A();

    std::vector<Rat> u(sigma, Rat(0));
    std::size_t npow = std::max({maxpow, as.size() > 0 ? as.size() - 1 : 0,
                                 bs.size() > 0 ? bs.size() - 1 : 0});
    upow.assign(npow + 1, std::vector<Rat>(sigma, Rat(0)));
    if (sigma == 0) return u;
    upow[0][0] = Rat(1);

    std::vector<Rat> uprime(sigma, Rat(0)); // uprime[k] = (k+1) u[k+1]
    for (std::size_t n = 0; n + 1 < sigma; ++n) {
        // S = [t^n] Bs(t,u) - [t^n] (As(t,u) u') with u_{n+1} treated as 0
        Rat S(0);
        for (std::size_t j = 0; j < bs.size(); ++j) {
            if (bs[j].is_zero()) continue;
            for (int i = 0; i <= bs[j].degree() && static_cast<std::size_t>(i) <= n; ++i) {
                const Rat &ci = bs[j].coeffs()[static_cast<std::size_t>(i)];
                if (!is_zero(ci)) S += ci * upow[j][n - static_cast<std::size_t>(i)];
            }
        }
        for (std::size_t j = 0; j < as.size(); ++j) {
            if (as[j].is_zero()) continue;
            for (int i = 0; i <= as[j].degree() && static_cast<std::size_t>(i) <= n; ++i) {
                const Rat &ci = as[j].coeffs()[static_cast<std::size_t>(i)];
                if (is_zero(ci)) continue;
                std::size_t m = n - static_cast<std::size_t>(i);
                Rat conv(0);
                for (std::size_t k = 0; k <= m; ++k) {
                    if (!is_zero(upow[j][k]) && !is_zero(uprime[m - k])) conv += upow[j][k] * uprime[m - k];
                }
                S -= ci * conv;
            }
        }
        u[n + 1] = S / (Rat(static_cast<long>(n + 1)) * a00);
        uprime[n] = Rat(static_cast<long>(n + 1)) * u[n + 1];
        // extend powers to coefficient n+1
        for (std::size_t j = 1; j <= npow; ++j) {
            Rat c(0);
            for (std::size_t k = 0; k <= n + 1; ++k) {
                if (!is_zero(upow[j - 1][k]) && !is_zero(u[n + 1 - k])) c += upow[j - 1][k] * u[n + 1 - k];
            }
            upow[j][n + 1] = c;
        }
    }
    return u;
}

Series make_series(const Rat &x0, std::vector<Rat> v) { return Series(x0, std::move(v)); }

std::vector<Rat> zero_extend(const std::vector<Rat> &v, std::size_t n) {
    std::vector<Rat> out = v;
    out.resize(n, Rat(0));
    return out;
}

// Newton doubling on u' = Bs/As, cross-checked against the recurrence in tests
std::vector<Rat> solve_ode_newton(const std::vector<QPoly> &as, const std::vector<QPoly> &bs,
                                  const std::vector<QPoly> &n1s, const Rat &x0,
                                  std::size_t sigma) {
    const Rat a00 = as.empty() || as[0].is_zero() ? Rat(0) : as[0].coeff(0);
    if (is_zero(a00)) throw base_point_on_A();
    std::vector<Rat> u(1, Rat(0));
    while (u.size() < sigma) {
        std::size_t m = std::min(2 * u.size(), sigma);
        std::vector<std::vector<Rat>> upow;
        std::size_t maxpow = std::max({as.size(), bs.size(), n1s.size()}) - 1;
        // powers of the current iterate at order m
        std::vector<Rat> uc = zero_extend(u, m);
        upow.assign(maxpow + 1, std::vector<Rat>(m, Rat(0)));
        upow[0][0] = Rat(1);
        for (std::size_t j = 1; j <= maxpow; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                Rat c(0);
                for (std::size_t l = 0; l <= k; ++l) c += upow[j - 1][l] * uc[k - l];
                upow[j][k] = c;
            }
        Series ac = make_series(x0, compose_with_powers(as, upow, m));
        Series bc = make_series(x0, compose_with_powers(bs, upow, m));
        Series n1c = make_series(x0, compose_with_powers(n1s, upow, m));
        Series f = series_div(bc, ac);
        Series fy = series_div(n1c, series_mul(ac, ac));
        Series J = series_exp_of_integral(fy);
        Series U = make_series(x0, uc);
        Series resid = f - series_derivative(U);
        Series corr = series_mul(J, series_integrate(series_div(resid, J)));
        Series next = U + corr;
        u.assign(next.coeffs().begin(), next.coeffs().end());
    }
    return u;
}

} // namespace

std::size_t flow_sigma(int N, int r) {
    return static_cast<std::size_t>(std::min(r + 1, 3)) *
           static_cast<std::size_t>(N + 1) * static_cast<std::size_t>(N + 2) / 2;
}

FlowJet flow_jet_with_order(const VectorField &vf, const BasePoint &base, int N, int r,
                            std::size_t sigma, FlowSolver solver) {
    if (r < 0 || r > 3) throw error("flow_jet: r must be in 0..3");
    if (is_zero(vf.A().eval(base.x0, base.y0))) throw base_point_on_A();

    auto as = shifted_by_udeg(vf.A(), base.x0, base.y0);
    auto bs = shifted_by_udeg(vf.B(), base.x0, base.y0);
    std::vector<QPoly> n1s, n2s, n3s;
    std::size_t maxpow = std::max(as.size(), bs.size()) - 1;
    if (r >= 1 || solver == FlowSolver::Newton) {
        // the Newton update needs dy(B/A) even for r = 0
        n1s = shifted_by_udeg(vf.dyBA_num(1), base.x0, base.y0);
        if (!n1s.empty()) maxpow = std::max(maxpow, n1s.size() - 1);
    }
    if (r >= 2) {
        n2s = shifted_by_udeg(vf.dyBA_num(2), base.x0, base.y0);
        if (!n2s.empty()) maxpow = std::max(maxpow, n2s.size() - 1);
    }
    if (r >= 3) {
        n3s = shifted_by_udeg(vf.dyBA_num(3), base.x0, base.y0);
        if (!n3s.empty()) maxpow = std::max(maxpow, n3s.size() - 1);
    }

    std::vector<std::vector<Rat>> upow;
    std::vector<Rat> u;
    if (solver == FlowSolver::Newton) {
        u = solve_ode_newton(as, bs, n1s, base.x0, sigma);
        // rebuild powers for composition
        upow.assign(maxpow + 1, std::vector<Rat>(sigma, Rat(0)));
        if (sigma > 0) upow[0][0] = Rat(1);
        for (std::size_t j = 1; j <= maxpow; ++j)
            for (std::size_t k = 0; k < sigma; ++k) {
                Rat c(0);
                for (std::size_t l = 0; l <= k; ++l) c += upow[j - 1][l] * u[k - l];
                upow[j][k] = c;
            }
    } else {
        u = solve_ode_recurrence(as, bs, sigma, maxpow, upow);
    }

    FlowJet jet;
    jet.base = base;
    jet.r = r;
    jet.N = N;
    jet.sigma = sigma;
    std::vector<Rat> yv = u;
    if (sigma > 0) yv[0] += base.y0;
    jet.y = make_series(base.x0, std::move(yv));
    jet.a_comp = make_series(base.x0, compose_with_powers(as, upow, sigma));

    if (r >= 1) {
        jet.n1_comp = make_series(base.x0, compose_with_powers(n1s, upow, sigma));
        Series g1 = series_div(jet.n1_comp, series_mul(jet.a_comp, jet.a_comp));
        jet.y1 = series_exp_of_integral(g1);
    }
    if (r >= 2) {
        jet.n2_comp = make_series(base.x0, compose_with_powers(n2s, upow, sigma));
        Series a2 = series_mul(jet.a_comp, jet.a_comp);
        Series g2 = series_div(jet.n2_comp, series_mul(a2, jet.a_comp));
        jet.y2 = series_mul(jet.y1, series_integrate(series_mul(jet.y1, g2)));
        if (r >= 3) {
            jet.n3_comp = make_series(base.x0, compose_with_powers(n3s, upow, sigma));
            Series g3 = series_div(jet.n3_comp, series_mul(a2, a2));
            Series integrand = series_mul(Series::constant(base.x0, sigma, Rat(3)),
                                          series_mul(jet.y2, g2)) +
                               series_mul(series_mul(jet.y1, jet.y1), g3);
            jet.y3 = series_mul(jet.y1, series_integrate(integrand));
        }
    }
    return jet;
}

FlowJet flow_jet(const VectorField &vf, const BasePoint &base, int N, int r, FlowSolver solver) {
    if (N < 1) throw error("flow_jet: N must be >= 1");
    return flow_jet_with_order(vf, base, N, r, flow_sigma(N, r), solver);
}

bool verify_jet(const VectorField &vf, const FlowJet &jet) {
    const std::size_t sigma = jet.sigma;
    if (sigma == 0) return false;
    auto vanishes_to = [&](const Series &s, std::size_t upto) {
        for (std::size_t k = 0; k + 1 < upto; ++k)
            if (!is_zero(s[k])) return false;
        return true;
    };
    if (jet.y[0] != jet.base.y0) return false;

    const Series &a = jet.a_comp;
    // recompute B along the jet for independence from the solver path
    Series b = series_eval(vf.B(), jet.y);
    Series acheck = series_eval(vf.A(), jet.y);
    if (!(acheck == a)) return false;

    Series r0 = series_mul(a, series_derivative(jet.y)) - b;
    if (!vanishes_to(r0, sigma)) return false;

    if (jet.r >= 1) {
        if (jet.y1[0] != Rat(1)) return false;
        Series n1 = series_eval(vf.dyBA_num(1), jet.y);
        Series r1 = series_mul(series_mul(a, a), series_derivative(jet.y1)) -
                    series_mul(jet.y1, n1);
        if (!vanishes_to(r1, sigma)) return false;
        if (jet.r >= 2) {
            if (!is_zero(jet.y2[0])) return false;
            Series n2 = series_eval(vf.dyBA_num(2), jet.y);
            Series a2 = series_mul(a, a);
            Series r2 = series_mul(series_mul(a2, a), series_derivative(jet.y2)) -
                        series_mul(series_mul(jet.y2, n1), a) -
                        series_mul(series_mul(jet.y1, jet.y1), n2);
            if (!vanishes_to(r2, sigma)) return false;
            if (jet.r >= 3) {
                if (!is_zero(jet.y3[0])) return false;
                Series n3 = series_eval(vf.dyBA_num(3), jet.y);
                Series r3 = series_mul(series_mul(a2, a2), series_derivative(jet.y3)) -
                            series_mul(series_mul(jet.y3, n1), a2) -
                            series_mul(series_mul(series_mul(jet.y2, jet.y1) * Rat(3), n2), a) -
                            series_mul(series_mul(series_mul(jet.y1, jet.y1), jet.y1), n3);
                if (!vanishes_to(r3, sigma)) return false;
            }
        }
    }
    return true;
}

} // namespace symfi
