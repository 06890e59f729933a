#pragma once

#include <cstddef>
#include <vector>

namespace ostro {

using Vec = std::vector<double>;

/// Dense row-major matrix, sized for the small systems that show up here
/// (vertical hessians, prolonged Jacobians): at most a few dozen rows.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
};

Vec operator+(const Vec& u, const Vec& v);
Vec operator-(const Vec& u, const Vec& v);
Vec operator*(double s, const Vec& v);
Vec& operator+=(Vec& u, const Vec& v);

double dot(const Vec& u, const Vec& v);
double norm_inf(const Vec& v);
double norm2(const Vec& v);

Vec matvec(const Mat& A, const Vec& x);
Vec matvec_t(const Mat& A, const Vec& x); // A^T x
Mat matmul(const Mat& A, const Mat& B);
Mat transpose(const Mat& A);

/// Solve A x = b by LU with partial pivoting. Throws RegularityError when singular.
Vec lu_solve(Mat A, Vec b);
double determinant(Mat A);
Mat inverse(const Mat& A);

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
Vec sym_eigenvalues(Mat A);

} // namespace ostro
