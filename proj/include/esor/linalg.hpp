#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "esor/errors.hpp"

namespace esor {

// Everything in this project is tiny (dimension <= 8), so vectors are plain
// std::vector<double> and matrices are a row-major wrapper around one.

using Vec = std::vector<double>;

struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a; // row-major

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n);
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);
};

// Throw NonFiniteError if any entry is NaN or infinite.
void check_finite(const Vec& v, const char* what);
void check_finite(const Mat& m, const char* what);
void check_finite(double x, const char* what);

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
double norm_inf(const Vec& x);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const Vec& x, double s);
// x + s*y, the integrator workhorse
Vec axpy(const Vec& x, double s, const Vec& y);

Vec operator*(const Mat& m, const Vec& x);
Mat operator*(const Mat& m, const Mat& n);
Mat operator+(const Mat& m, const Mat& n);
Mat operator-(const Mat& m, const Mat& n);
Mat transpose(const Mat& m);
double trace(const Mat& m);

// Gaussian elimination with partial pivoting. Throws SingularMatrixError when
// the best available pivot is below 1e-12 relative to the matrix scale.
Vec linear_solve(Mat A, Vec b);

// Rank by row echelon with partial pivoting; tol is relative to the largest
// entry magnitude.
std::size_t matrix_rank(Mat m, double tol = 1e-9);

// Monic characteristic polynomial coefficients [1, c1, ..., cn] of an n x n
// matrix (lambda^n + c1 lambda^(n-1) + ... + cn), via the Faddeev-LeVerrier
// recursion; exact-rational-free but stable for the sizes used here.
Vec char_poly(const Mat& m);

} // namespace esor
