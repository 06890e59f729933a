#include "ostro/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ostro/errors.hpp"

namespace ostro {

Mat Mat::identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

Vec operator+(const Vec& u, const Vec& v) {
    Vec w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
    return w;
}

Vec operator-(const Vec& u, const Vec& v) {
    Vec w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
    return w;
}

Vec operator*(double s, const Vec& v) {
    Vec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = s * v[i];
    return w;
}

Vec& operator+=(Vec& u, const Vec& v) {
    for (size_t i = 0; i < u.size(); ++i) u[i] += v[i];
    return u;
}

double dot(const Vec& u, const Vec& v) {
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

double norm_inf(const Vec& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

Vec matvec(const Mat& A, const Vec& x) {
    Vec y(A.rows, 0.0);
    for (int i = 0; i < A.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Vec matvec_t(const Mat& A, const Vec& x) {
    Vec y(A.cols, 0.0);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) y[j] += A(i, j) * x[i];
    return y;
}

Mat matmul(const Mat& A, const Mat& B) {
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int l = 0; l < A.cols; ++l) {
            double ail = A(i, l);
            if (ail == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += ail * B(l, j);
        }
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

namespace {

// In-place LU with partial pivoting; perm gets the row order. Returns sign of
// the permutation, throws on (numerically) singular pivot.
int lu_factor(Mat& A, std::vector<int>& perm) {
    const int n = A.rows;
    perm.resize(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(A(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(A(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) throw RegularityError("singular matrix in LU factorization");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
            std::swap(perm[col], perm[piv]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            double f = A(r, col) / A(col, col);
            A(r, col) = f;
            for (int j = col + 1; j < n; ++j) A(r, j) -= f * A(col, j);
        }
    }
    return sign;
}

} // namespace

Vec lu_solve(Mat A, Vec b) {
    if (A.rows != A.cols || A.rows != static_cast<int>(b.size()))
        throw ArgumentError("lu_solve: shape mismatch");
    const int n = A.rows;
    std::vector<int> perm;
    lu_factor(A, perm);
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= A(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= A(i, j) * x[j];
        x[i] /= A(i, i);
    }
    return x;
}

double determinant(Mat A) {
    if (A.rows != A.cols) throw ArgumentError("determinant: not square");
    std::vector<int> perm;
    int sign;
    try {
        sign = lu_factor(A, perm);
    } catch (const RegularityError&) {
        return 0.0;
    }
    double d = sign;
    for (int i = 0; i < A.rows; ++i) d *= A(i, i);
    return d;
}

Mat inverse(const Mat& A) {
    const int n = A.rows;
    Mat inv(n, n);
    for (int j = 0; j < n; ++j) {
        Vec e(n, 0.0);
        e[j] = 1.0;
        Vec col = lu_solve(A, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

Vec sym_eigenvalues(Mat A) {
    if (A.rows != A.cols) throw ArgumentError("sym_eigenvalues: not square");
    const int n = A.rows;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (A(p, q) == 0.0) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                double tsign = theta >= 0 ? 1.0 : -1.0;
                double tt = tsign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(tt * tt + 1.0);
                double s = tt * c;
                for (int i = 0; i < n; ++i) {
                    double aip = A(i, p), aiq = A(i, q);
                    A(i, p) = c * aip - s * aiq;
                    A(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = A(p, i), aqi = A(q, i);
                    A(p, i) = c * api - s * aqi;
                    A(q, i) = s * api + c * aqi;
                }
            }
    }
    Vec ev(n);
    for (int i = 0; i < n; ++i) ev[i] = A(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace ostro
