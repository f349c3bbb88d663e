#include "darboux_lab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dlab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

void to_hessenberg(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm += std::norm(a(i, k));
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const cplx x0 = a(k + 1, k);
        const cplx phase = std::abs(x0) == 0.0 ? cplx(1.0) : x0 / std::abs(x0);
        const cplx alpha = -phase * norm;
        std::fill(v.begin(), v.end(), cplx{});
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
        double vnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
        vnorm = std::sqrt(vnorm);
        if (vnorm == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
        // A <- (I - 2 v v^H) A
        for (std::size_t j = k; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
            s *= 2.0;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
        }
        // A <- A (I - 2 v v^H)
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= 2.0;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx half = 0.5 * (a - d);
    const cplx disc = std::sqrt(half * half + b * c);
    const cplx mid = 0.5 * (a + d);
    const cplx m1 = mid + disc;
    const cplx m2 = mid - disc;
    return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

}  // namespace

ComplexMatrix Tridiagonal::dense() const {
    const std::size_t n = size();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        if (i + 1 < n) {
            m(i + 1, i) = lower[i];
            m(i, i + 1) = upper[i];
        }
    }
    return m;
}

std::vector<cplx> eig_complex_dense(ComplexMatrix h) {
    const std::size_t n = h.rows();
    if (h.cols() != n) throw DomainError("eig_complex_dense: matrix must be square");
    std::vector<cplx> eig(n);
    if (n == 0) return eig;
    to_hessenberg(h);

    std::vector<cplx> cs(n), sn(n);
    const long budget = 30L * static_cast<long>(n);
    long total = 0;
    int since_deflation = 0;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    while (hi >= 0) {
        std::ptrdiff_t l = hi;
        while (l > 0) {
            const double scale = abs1(h(l - 1, l - 1)) + abs1(h(l, l));
            if (abs1(h(l, l - 1)) <= kEps * (scale == 0.0 ? 1.0 : scale)) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            eig[hi] = h(hi, hi);
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++total > budget) {
            std::vector<cplx> partial(eig.begin() + hi + 1, eig.end());
            throw EigenConvergenceError("eig_complex_dense: QR iteration did not converge", std::move(partial));
        }
        ++since_deflation;

        cplx mu;
        if (since_deflation % 10 == 0) {
            mu = h(hi, hi) + std::abs(h(hi, hi - 1).real()) + std::abs(h(hi, hi - 1).imag());
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        for (std::ptrdiff_t k = l; k <= hi; ++k) h(k, k) -= mu;
        for (std::ptrdiff_t k = l; k < hi; ++k) {
            const cplx x = h(k, k);
            const cplx y = h(k + 1, k);
            const double r = std::hypot(std::abs(x), std::abs(y));
            cplx c = 1.0, s = 0.0;
            if (r != 0.0) {
                c = x / r;
                s = y / r;
            }
            cs[k] = c;
            sn[k] = s;
            for (std::ptrdiff_t j = k; j <= hi; ++j) {
                const cplx t1 = h(k, j);
                const cplx t2 = h(k + 1, j);
                h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
                h(k + 1, j) = -s * t1 + c * t2;
            }
        }
        for (std::ptrdiff_t k = l; k < hi; ++k) {
            const cplx c = cs[k];
            const cplx s = sn[k];
            for (std::ptrdiff_t i = l; i <= std::min(k + 1, hi); ++i) {
                const cplx t1 = h(i, k);
                const cplx t2 = h(i, k + 1);
                h(i, k) = t1 * c + t2 * s;
                h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
            }
        }
        for (std::ptrdiff_t k = l; k <= hi; ++k) h(k, k) += mu;
    }
    return eig;
}

std::vector<cplx> eig_symmetric_tridiagonal(const Tridiagonal& t) {
    const std::size_t n = t.size();
    std::vector<cplx> d = t.diag;
    std::vector<cplx> e(n, 0.0);
    if (n == 0) return d;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (t.lower[i] != t.upper[i]) throw DomainError("eig_symmetric_tridiagonal: matrix is not symmetric");
        e[i] = t.lower[i];
    }
    constexpr int kMaxIter = 60;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m == l) break;
            if (iter++ == kMaxIter) throw NumericalError("eig_symmetric_tridiagonal: QL iteration did not converge");
            cplx g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            cplx r = std::sqrt(g * g + 1.0);
            g = d[m] - d[l] + e[l] / (std::abs(g + r) >= std::abs(g - r) ? g + r : g - r);
            cplx s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const cplx f = s * e[i];
                const cplx b = c * e[i];
                r = std::sqrt(f * f + g * g);
                e[i + 1] = r;
                const double size = std::abs(f) + std::abs(g);
                if (size == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                // A complex orthogonal rotation cannot be formed from an
                // isotropic vector (f^2 + g^2 = 0 with f, g nonzero).
                if (std::abs(r) <= 1e-8 * size) {
                    throw NumericalError("eig_symmetric_tridiagonal: rotation breakdown");
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    return d;
}

double norm_inf(const Tridiagonal& t) {
    double best = 0.0;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(t.diag[i]);
        if (i > 0) row += std::abs(t.lower[i - 1]);
        if (i + 1 < n) row += std::abs(t.upper[i]);
        best = std::max(best, row);
    }
    return best;
}

namespace {

std::vector<cplx> multiply(const Tridiagonal& t, const std::vector<cplx>& x) {
    const std::size_t n = t.size();
    std::vector<cplx> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = t.diag[i] * x[i];
        if (i > 0) s += t.lower[i - 1] * x[i - 1];
        if (i + 1 < n) s += t.upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

// Solves (T - mu) y = rhs by Gaussian elimination with partial pivoting.
// Exact singularity is nudged so inverse iteration can proceed.
std::vector<cplx> shifted_solve(const Tridiagonal& t, cplx mu, std::vector<cplx> rhs, double tiny) {
    const std::size_t n = t.size();
    std::vector<cplx> dl(t.lower), dd(n), du(t.upper), du2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) dd[i] = t.diag[i] - mu;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(dl[i])) {
            if (dd[i] == 0.0) dd[i] = tiny;
            const cplx f = dl[i] / dd[i];
            dd[i + 1] -= f * du[i];
            rhs[i + 1] -= f * rhs[i];
            dl[i] = 0.0;
        } else {
            const cplx f = dd[i] / dl[i];
            dd[i] = dl[i];
            const cplx tmp = dd[i + 1];
            dd[i + 1] = du[i] - f * tmp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du2[i];
            }
            du[i] = tmp;
            std::swap(rhs[i], rhs[i + 1]);
            rhs[i + 1] -= f * rhs[i];
        }
    }
    if (dd[n - 1] == 0.0) dd[n - 1] = tiny;
    std::vector<cplx> y(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx s = rhs[i];
        if (i + 1 < n) s -= du[i] * y[i + 1];
        if (i + 2 < n) s -= du2[i] * y[i + 2];
        y[i] = s / dd[i];
    }
    return y;
}

double norm2(const std::vector<cplx>& x) {
    double s = 0.0;
    for (const cplx& v : x) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace

cplx refine_eigenvalue(const Tridiagonal& t, cplx mu, double* residual, int max_iter) {
    const std::size_t n = t.size();
    if (n == 0) throw DomainError("refine_eigenvalue: empty matrix");
    bool symmetric = true;
    for (std::size_t i = 0; i + 1 < n; ++i) symmetric = symmetric && t.lower[i] == t.upper[i];
    const double tiny = kEps * std::max(1.0, norm_inf(t));
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = cplx(1.0, 0.37 * std::sin(1.3 * static_cast<double>(i) + 0.2));
    double res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        x = shifted_solve(t, mu, std::move(x), tiny);
        const double nx = norm2(x);
        if (!(nx > 0.0) || !std::isfinite(nx)) break;
        for (cplx& v : x) v /= nx;
        const std::vector<cplx> tx = multiply(t, x);
        cplx num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx xl = symmetric ? x[i] : std::conj(x[i]);
            num += xl * tx[i];
            den += xl * x[i];
        }
        if (std::abs(den) < 1e-14) break;
        const cplx next = num / den;
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r += std::norm(tx[i] - next * x[i]);
        r = std::sqrt(r);
        if (r > res && it > 1) break;
        mu = next;
        res = r;
        if (res <= 1e-13 * norm_inf(t)) break;
    }
    if (residual) *residual = res;
    return mu;
}

}  // namespace dlab
