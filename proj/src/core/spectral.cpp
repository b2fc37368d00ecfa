#include "splitlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "splitlab/errors.hpp"
#include "splitlab/kernels.hpp"

namespace splitlab {

const char* to_string(SpectralMethod m) {
    return m == SpectralMethod::PowerIteration ? "power-iteration" : "qr-hessenberg";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Similarity by powers of two so that row and column norms are comparable.
void balance(Matrix& a) {
    const std::size_t n = a.rows();
    constexpr double radix = 2.0, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(Matrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    Vector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (a(k + 1, k) > 0.0) alpha = -alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

double sign_of(double mag, double s) { return s >= 0.0 ? std::abs(mag) : -std::abs(mag); }

// Francis double-shift QR on an upper Hessenberg matrix. Deflated
// eigenvalues are written to `w`; the sweep budget is shared by all.
std::vector<std::complex<double>> hqr(Matrix& a) {
    using cplx = std::complex<double>;
    const int n = static_cast<int>(a.rows());
    std::vector<cplx> w(static_cast<std::size_t>(n));
    std::vector<bool> settled(static_cast<std::size_t>(n), false);
    const std::size_t budget = 100 * static_cast<std::size_t>(std::max(n, 1));
    std::size_t sweeps = 0;

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

    auto fail = [&](int active) {
        std::vector<double> partial;
        for (int i = 0; i < n; ++i)
            if (settled[static_cast<std::size_t>(i)]) partial.push_back(std::abs(w[static_cast<std::size_t>(i)]));
        throw NumericalError("QR eigensolve did not converge within " + std::to_string(budget) + " sweeps",
                             std::move(partial), static_cast<std::size_t>(active + 1));
    };
    auto put = [&](int i, cplx v) {
        w[static_cast<std::size_t>(i)] = v;
        settled[static_cast<std::size_t>(i)] = true;
    };

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0, l = 0;
        do {
            for (l = nn; l > 0; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                put(nn--, x + t);
            } else {
                double y = a(nn - 1, nn - 1);
                double ww = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + ww;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        put(nn - 1, x + z);
                        put(nn, z != 0.0 ? x - ww / z : x + z);
                    } else {
                        put(nn, cplx(x + p, -z));
                        put(nn - 1, cplx(x + p, z));
                    }
                    nn -= 2;
                } else {
                    if (++sweeps > budget) fail(nn);
                    if (its > 0 && its % 10 == 0) {
                        // Exceptional shift to break cycles.
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        ww = -0.4375 * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        a(i + 2, i) = 0.0;
                        if (i != m) a(i + 2, i - 1) = 0.0;
                    }
                    for (int k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = (k + 1 != nn) ? a(k + 2, k - 1) : 0.0;
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = a(k, j) + q * a(k + 1, j);
                            if (k + 1 != nn) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k + 1 != nn) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return w;
}

bool nonnegative(const Matrix& x) {
    return std::all_of(x.entries().begin(), x.entries().end(), [](double v) { return v >= 0.0; });
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& x) {
    require_square(x, "eigenvalues");
    if (x.rows() == 0) return {};
    Matrix a = x;
    balance(a);
    hessenberg(a);
    return hqr(a);
}

SpectralReport spectral_radius_qr(const Matrix& x) {
    require_square(x, "spectral radius");
    SpectralReport rep;
    rep.method = SpectralMethod::QrHessenberg;
    double r = 0.0;
    for (const auto& ev : eigenvalues(x)) r = std::max(r, std::abs(ev));
    rep.radius = r;
    rep.iterations = 0;
    rep.residual = kEps * frobenius(x);
    return rep;
}

std::optional<SpectralReport> spectral_radius_power(const Matrix& x, const Tolerances& tol, std::size_t max_iter) {
    require_square(x, "spectral radius");
    const std::size_t n = x.rows();
    if (n == 0 || !nonnegative(x)) return std::nullopt;
    // Iterate with x + I: the Perron root is then the unique eigenvalue of
    // largest modulus, and positivity of the iterate is preserved.
    Vector v(n, 1.0 / static_cast<double>(n));
    for (std::size_t it = 1; it <= max_iter; ++it) {
        Vector y = kernels::serial::gemv(x, v);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0, s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ratio = y[i] / v[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            y[i] += v[i];
            s += y[i];
        }
        // Collatz–Wielandt: lo ≤ ρ ≤ hi for any positive v.
        if (hi - lo <= tol.spectral_eps * std::max(1.0, hi)) {
            SpectralReport rep;
            rep.radius = 0.5 * (lo + hi);
            rep.method = SpectralMethod::PowerIteration;
            rep.iterations = it;
            double vs = 0.0;
            for (double e : v) vs += e;
            for (double& e : v) e /= vs;
            Vector xv = kernels::serial::gemv(x, v);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(xv[i] - rep.radius * v[i]));
            rep.residual = res;
            rep.dominant_eigvec = std::move(v);
            return rep;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / s;
        if (std::any_of(v.begin(), v.end(), [](double e) { return !(e > 0.0); })) return std::nullopt;
    }
    return std::nullopt;
}

SpectralReport spectral_radius(const Matrix& x, const Tolerances& tol) {
    require_square(x, "spectral radius");
    if (auto p = spectral_radius_power(x, tol, 500)) return *p;
    return spectral_radius_qr(x);
}

double rho(const Matrix& x, const Tolerances& tol) { return spectral_radius(x, tol).radius; }

}  // namespace splitlab
