#pragma once

#include "cstar/rational.hpp"

#include <vector>

namespace cstar {

using Vec = std::vector<Int>;

/// Dense integer matrix, row-major.
struct Mat {
	int rows = 0, cols = 0;
	std::vector<Int> a;

	Mat() = default;
	Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}

	Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
	const Int& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

	static Mat identity(int n) {
		Mat m(n, n);
		for (int i = 0; i < n; ++i) m(i, i) = 1;
		return m;
	}

	Mat transposed() const {
		Mat t(cols, rows);
		for (int i = 0; i < rows; ++i)
			for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
		return t;
	}

	bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline Mat operator*(const Mat& x, const Mat& y) {
	Mat z(x.rows, y.cols);
	for (int i = 0; i < x.rows; ++i)
		for (int k = 0; k < x.cols; ++k) {
			const Int& v = x(i, k);
			if (v == 0) continue;
			for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
		}
	return z;
}

inline Vec operator*(const Mat& m, const Vec& x) {
	Vec y(m.rows, Int(0));
	for (int i = 0; i < m.rows; ++i)
		for (int j = 0; j < m.cols; ++j)
			if (m(i, j) != 0) y[i] += m(i, j) * x[j];
	return y;
}

inline Vec operator+(const Vec& x, const Vec& y) {
	Vec z(x.size());
	for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
	return z;
}

inline Vec operator-(const Vec& x, const Vec& y) {
	Vec z(x.size());
	for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
	return z;
}

inline Vec operator*(const Int& c, const Vec& x) {
	Vec z(x.size());
	for (size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
	return z;
}

inline Vec operator-(const Vec& x) {
	Vec z(x.size());
	for (size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
	return z;
}

inline bool is_zero(const Vec& x) {
	for (const auto& v : x)
		if (v != 0) return false;
	return true;
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
Int det(Mat m);

/// Smith normal form: produces unimodular U (with its inverse) such that
/// U*A*V is diagonal for some unimodular V; V itself is not returned.
struct Snf {
	Mat d;    // diagonal form, same shape as input
	Mat u;    // row transform
	Mat uinv; // inverse of u
	std::vector<Int> diag() const;
};
Snf smith_normal_form(Mat a);

/// Inverse of a unimodular integer matrix.
Mat unimodular_inverse(const Mat& m);

} // namespace cstar
