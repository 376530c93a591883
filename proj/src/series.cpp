#include "symfi/series.hpp"

#include "symfi/errors.hpp"

namespace symfi {

Series Series::constant(const Rat &center, std::size_t order, const Rat &v) {
    Series s = zero(center, order);
    if (order > 0) s.c_[0] = v;
    return s;
}

bool Series::is_zero() const {
    for (const auto &x : c_)
        if (!symfi::is_zero(x)) return false;
    return true;
}

Series Series::truncate(std::size_t new_order) const {
    if (new_order >= c_.size()) return *this;
    return Series(center_, std::vector<Rat>(c_.begin(), c_.begin() + static_cast<long>(new_order)));
}

void Series::check_compat(const Series &o) const {
    if (center_ != o.center_) throw center_mismatch();
    if (c_.size() != o.c_.size()) throw order_mismatch();
}

Series Series::operator+(const Series &o) const {
    check_compat(o);
    Series r(*this);
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
    return r;
}

Series Series::operator-(const Series &o) const {
    check_compat(o);
    Series r(*this);
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
    return r;
}

Series Series::operator-() const {
    Series r(*this);
    for (auto &x : r.c_) x = -x;
    return r;
}

Series Series::operator*(const Rat &s) const {
    Series r(*this);
    for (auto &x : r.c_) x *= s;
    return r;
}

Series series_add(const Series &a, const Series &b) { return a + b; }

Series series_mul(const Series &a, const Series &b) {
    a.check_compat(b);
    std::size_t n = a.order();
    Series r = Series::zero(a.center(), n);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (is_zero(b[j])) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

Series series_div(const Series &a, const Series &b) {
    a.check_compat(b);
    std::size_t n = a.order();
    if (n == 0) return a;
    if (is_zero(b[0])) throw error("series_div: divisor has zero constant term");
    Series q = Series::zero(a.center(), n);
    for (std::size_t k = 0; k < n; ++k) {
        Rat acc = a[k];
        for (std::size_t j = 0; j < k; ++j) acc -= q[j] * b[k - j];
        q[k] = acc / b[0];
    }
    return q;
}

Series series_pow(const Series &a, unsigned e) {
    Series r = Series::constant(a.center(), a.order(), Rat(1));
    Series base = a;
    while (e) {
        if (e & 1u) r = series_mul(r, base);
        base = series_mul(base, base);
        e >>= 1u;
    }
    return r;
}

Series series_integrate(const Series &a) {
    Series r = Series::zero(a.center(), a.order());
    for (std::size_t k = 0; k + 1 < a.order(); ++k)
        r[k + 1] = a[k] / Rat(static_cast<long>(k + 1));
    return r;
}

Series series_derivative(const Series &a) {
    Series r = Series::zero(a.center(), a.order());
    for (std::size_t k = 1; k < a.order(); ++k)
        r[k - 1] = a[k] * Rat(static_cast<long>(k));
    return r;
}

Series series_exp_of_integral(const Series &a) {
    // g' = a g, g(0) = 1, solved term by term
    std::size_t n = a.order();
    Series g = Series::zero(a.center(), n);
    if (n == 0) return g;
    g[0] = Rat(1);
    for (std::size_t k = 1; k < n; ++k) {
        Rat acc(0);
        for (std::size_t j = 0; j < k; ++j) acc += a[j] * g[k - 1 - j];
        g[k] = acc / Rat(static_cast<long>(k));
    }
    return g;
}

Series series_eval(const BiPoly &p, const Series &y) {
    std::size_t n = y.order();
    const Rat &x0 = y.center();
    // Horner in y over coefficients a_j(x0 + t)
    int dy = p.degree_y();
    Series acc = Series::zero(x0, n);
    for (int j = dy; j >= 0; --j) {
        acc = series_mul(acc, y);
        // add a_j(x0+t): shift the Q[x] coefficient of y^j
        QPoly aj;
        {
            std::vector<Rat> cs(static_cast<std::size_t>(std::max(0, p.degree_x() + 1)), Rat(0));
            for (const auto &[m, c] : p.terms())
                if (m.j == j) cs[static_cast<std::size_t>(m.i)] = c;
            aj = QPoly(std::move(cs));
        }
        if (!aj.is_zero()) {
            // Taylor shift: a_j(x0+t) via Horner
            std::vector<Rat> sh(n, Rat(0));
            for (int k = aj.degree(); k >= 0; --k) {
                // sh = sh * t + ... evaluated as polynomial in t with x0 offset:
                // a(x0+t) computed by synthetic Horner: acc_poly = acc_poly*(x0+t) + a_k
                // multiply by (x0 + t): new[i] = x0*old[i] + old[i-1]
                Rat prev(0);
                for (std::size_t i = 0; i < n; ++i) {
                    Rat cur = sh[i];
                    sh[i] = x0 * cur + prev;
                    prev = cur;
                }
                sh[0] += aj.coeff(k);
            }
            Series ajshift(x0, std::move(sh));
            acc = acc + ajshift;
        }
    }
    return acc;
}

} // namespace symfi
