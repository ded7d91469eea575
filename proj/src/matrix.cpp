#include "oscnet/netgraph/matrix.hpp"

#include <algorithm>

namespace oscnet {

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double s = a(i, j);
            if (s == 0.0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = s * b(p, q);
        }
    return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("symmetric_eigenvalues: not square");
    if (!m.is_symmetric(1e-9 * std::max(1.0, m.max_abs())))
        throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");
    const std::size_t n = m.rows();
    Matrix a = m;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    const double scale = std::max(1.0, a.max_abs());
    for (int sweep = 0; sweep < 100 && off_norm() > tol * scale; ++sweep) {
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void to_hessenberg(Matrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm <= 1e-300) continue;
        if (a(k + 1, k) < 0.0) norm = -norm;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = 0.0;
        v[k + 1] = a(k + 1, k) + norm;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 <= 1e-300) continue;
        const double beta = 2.0 / vnorm2;
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * a(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * v[j];
        }
    }
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
}

// Eigenvalues of the real 2x2 block [[a,b],[c,d]] appended to out.
void solve_2x2(double a, double b, double c, double d,
               std::vector<std::complex<double>>& out) {
    const double p = 0.5 * (a + d);
    const double det = a * d - b * c;
    const double disc = p * p - det;
    if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        const double s1 = p >= 0.0 ? p + r : p - r;
        out.emplace_back(s1, 0.0);
        out.emplace_back(std::abs(s1) > 1e-300 ? det / s1 : p - r, 0.0);
    } else {
        const double r = std::sqrt(-disc);
        out.emplace_back(p, r);
        out.emplace_back(p, -r);
    }
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: not square");
    const std::size_t n = m.rows();
    std::vector<std::complex<double>> out;
    out.reserve(n);
    if (n == 1) {
        out.emplace_back(m(0, 0), 0.0);
        return out;
    }
    if (n == 2) {
        solve_2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1), out);
        return out;
    }

    Matrix a = m;
    to_hessenberg(a);

    // Francis double-shift QR with deflation, on the Hessenberg matrix.
    const double eps = 1e-14;
    long hi = static_cast<long>(n) - 1;
    int iters = 0;
    while (hi >= 0) {
        // Split at negligible subdiagonal entries.
        long l = hi;
        while (l > 0) {
            const double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
            if (std::abs(a(l, l - 1)) <= eps * std::max(s, 1e-30)) {
                a(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            out.emplace_back(a(hi, hi), 0.0);
            --hi;
            iters = 0;
            continue;
        }
        if (l == hi - 1) {
            solve_2x2(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi), out);
            hi -= 2;
            iters = 0;
            continue;
        }
        if (++iters > 300) throw std::runtime_error("eigenvalues: QR failed to converge");

        // Double shift from the trailing 2x2: s = trace, t = det. Every 15
        // iterations use an exceptional shift to break cycling.
        double s, t;
        if (iters % 15 == 0) {
            const double w = std::abs(a(hi, hi - 1)) + std::abs(a(hi - 1, hi - 2));
            s = 1.5 * w;
            t = w * w;
        } else {
            s = a(hi - 1, hi - 1) + a(hi, hi);
            t = a(hi - 1, hi - 1) * a(hi, hi) - a(hi - 1, hi) * a(hi, hi - 1);
        }

        // First column of (A - s1)(A - s2) restricted to the Hessenberg band.
        double x = a(l, l) * a(l, l) + a(l, l + 1) * a(l + 1, l) - s * a(l, l) + t;
        double y = a(l + 1, l) * (a(l, l) + a(l + 1, l + 1) - s);
        double z = (l + 2 <= hi) ? a(l + 1, l) * a(l + 2, l + 1) : 0.0;

        for (long k = l; k <= hi - 1; ++k) {
            // Householder vector annihilating (y, z) against x.
            double alpha = std::sqrt(x * x + y * y + z * z);
            if (alpha <= 1e-300) {
                // Re-seed the bulge from the current column.
                x = a(k + 1, k);
                y = (k + 2 <= hi) ? a(k + 2, k) : 0.0;
                z = (k + 3 <= hi) ? a(k + 3, k) : 0.0;
                continue;
            }
            if (x > 0.0) alpha = -alpha;
            const double v0 = x - alpha, v1 = y, v2 = z;
            const double vnorm2 = v0 * v0 + v1 * v1 + v2 * v2;
            if (vnorm2 > 1e-300) {
                const double beta = 2.0 / vnorm2;
                const bool three = (k + 2 <= hi);
                // Apply P = I - beta v v^T from the left to rows k..k+2.
                const long jlo = std::max(l, k - 1);
                for (long j = jlo; j < static_cast<long>(n); ++j) {
                    double dot = v0 * a(k, j) + v1 * a(k + 1, j);
                    if (three) dot += v2 * a(k + 2, j);
                    dot *= beta;
                    a(k, j) -= dot * v0;
                    a(k + 1, j) -= dot * v1;
                    if (three) a(k + 2, j) -= dot * v2;
                }
                // ...and from the right to columns k..k+2.
                const long iup = std::min<long>(hi, k + 3);
                for (long i = 0; i <= iup; ++i) {
                    double dot = v0 * a(i, k) + v1 * a(i, k + 1);
                    if (three) dot += v2 * a(i, k + 2);
                    dot *= beta;
                    a(i, k) -= dot * v0;
                    a(i, k + 1) -= dot * v1;
                    if (three) a(i, k + 2) -= dot * v2;
                }
            }
            x = a(k + 1, k);
            y = (k + 2 <= hi) ? a(k + 2, k) : 0.0;
            z = (k + 3 <= hi) ? a(k + 3, k) : 0.0;
        }
        // Clean tiny subdiagonal fill-in below the first subdiagonal.
        for (long i = l + 2; i <= hi; ++i)
            for (long j = l; j + 1 < i; ++j) a(i, j) = 0.0;
    }
    return out;
}

}  // namespace oscnet
