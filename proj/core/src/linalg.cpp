#include "vdwmix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace vdwmix {

namespace {

double off_diagonal_norm2(const std::vector<double>& m, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += 2.0 * m[i * n + j] * m[i * n + j];
    return s;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::span<const double> m, int n) {
    if (n == 1) return {m[0]};
    if (n == 2) {
        const double half_tr = 0.5 * (m[0] + m[3]);
        const double half_diff = 0.5 * (m[0] - m[3]);
        const double disc = std::hypot(half_diff, m[1]);
        return {half_tr - disc, half_tr + disc};
    }

    std::vector<double> a(m.begin(), m.end());
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm2(a, n) < 1e-13 * 1e-13) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double app = a[p * n + p], aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a[r * n + p], arq = a[r * n + q];
                    a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
                    a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
                }
            }
        }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a[i * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

double symmetric_min_eigenvalue(std::span<const double> m, int n) {
    return symmetric_eigenvalues(m, n).front();
}

double symmetric_max_eigenvalue(std::span<const double> m, int n) {
    return symmetric_eigenvalues(m, n).back();
}

bool lu_factor(std::span<double> m, std::span<int> piv, int n) {
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(m[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(m[i * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) return false;
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
        const double inv = 1.0 / m[k * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double l = m[i * n + k] * inv;
            m[i * n + k] = l;
            for (int j = k + 1; j < n; ++j) m[i * n + j] -= l * m[k * n + j];
        }
    }
    return true;
}

void lu_solve(std::span<const double> lu, std::span<const int> piv, int n, std::span<double> rhs) {
    for (int k = 0; k < n; ++k)
        if (piv[k] != k) std::swap(rhs[k], rhs[piv[k]]);
    for (int i = 1; i < n; ++i) {
        double s = rhs[i];
        for (int j = 0; j < i; ++j) s -= lu[i * n + j] * rhs[j];
        rhs[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        for (int j = i + 1; j < n; ++j) s -= lu[i * n + j] * rhs[j];
        rhs[i] = s / lu[i * n + i];
    }
}

bool block_tridiagonal_solve(std::span<double> lower, std::span<double> diag,
                             std::span<double> upper, std::span<double> rhs, int m, int n) {
    const int nn = n * n;
    std::vector<int> piv(static_cast<std::size_t>(m) * n);
    std::vector<double> col(static_cast<std::size_t>(n));
    std::vector<double> inv(static_cast<std::size_t>(nn));
    std::vector<double> wl(static_cast<std::size_t>(nn));

    for (int k = 0; k < m; ++k) {
        auto dk = diag.subspan(static_cast<std::size_t>(k) * nn, static_cast<std::size_t>(nn));
        auto pk = std::span<int>(piv).subspan(static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n));
        if (k > 0) {
            auto lu_prev = diag.subspan(static_cast<std::size_t>(k - 1) * nn, static_cast<std::size_t>(nn));
            auto piv_prev =
                std::span<const int>(piv).subspan(static_cast<std::size_t>(k - 1) * n, static_cast<std::size_t>(n));
            // explicit diag[k-1]^{-1}, column by column; blocks are n x n small
            for (int j = 0; j < n; ++j) {
                std::fill(col.begin(), col.end(), 0.0);
                col[static_cast<std::size_t>(j)] = 1.0;
                lu_solve(lu_prev, piv_prev, n, col);
                for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + j] = col[static_cast<std::size_t>(i)];
            }
            // wl = lower[k] * diag[k-1]^{-1}
            std::fill(wl.begin(), wl.end(), 0.0);
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) {
                    const double v = lower[static_cast<std::size_t>(k) * nn + i * n + l];
                    if (v == 0.0) continue;
                    for (int j = 0; j < n; ++j)
                        wl[static_cast<std::size_t>(i) * n + j] += v * inv[static_cast<std::size_t>(l) * n + j];
                }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int l = 0; l < n; ++l)
                        s += wl[static_cast<std::size_t>(i) * n + l] *
                             upper[static_cast<std::size_t>(k - 1) * nn + l * n + j];
                    dk[static_cast<std::size_t>(i) * n + j] -= s;
                }
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += wl[static_cast<std::size_t>(i) * n + l] * rhs[static_cast<std::size_t>(k - 1) * n + l];
                rhs[static_cast<std::size_t>(k) * n + i] -= s;
            }
        }
        if (!lu_factor(dk, pk, n)) return false;
    }

    // back substitution: x_k = diag[k]^{-1} (rhs_k - upper[k] x_{k+1})
    for (int k = m - 1; k >= 0; --k) {
        auto rk = rhs.subspan(static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n));
        if (k + 1 < m) {
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += upper[static_cast<std::size_t>(k) * nn + i * n + l] *
                         rhs[static_cast<std::size_t>(k + 1) * n + l];
                rk[static_cast<std::size_t>(i)] -= s;
            }
        }
        lu_solve(diag.subspan(static_cast<std::size_t>(k) * nn, static_cast<std::size_t>(nn)),
                 std::span<const int>(piv).subspan(static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n)), n,
                 rk);
    }
    return true;
}

}  // namespace vdwmix
