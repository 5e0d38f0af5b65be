#include "cstar/matrix.hpp"

#include "cstar/error.hpp"

namespace cstar {

Int det(Mat m) {
	internal_check(m.rows == m.cols, "det: square matrix expected");
	int n = m.rows;
	if (n == 0) return 1;
	Int prev = 1;
	int sign = 1;
	for (int k = 0; k < n - 1; ++k) {
		if (m(k, k) == 0) {
			int p = -1;
			for (int i = k + 1; i < n; ++i)
				if (m(i, k) != 0) { p = i; break; }
			if (p < 0) return 0;
			for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
			sign = -sign;
		}
		for (int i = k + 1; i < n; ++i)
			for (int j = k + 1; j < n; ++j) {
				Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
				m(i, j) = v / prev; // exact by Bareiss
			}
		prev = m(k, k);
	}
	return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

namespace {

struct RowOps {
	Mat u, uinv;

	explicit RowOps(int n) : u(Mat::identity(n)), uinv(Mat::identity(n)) {}

	void swap_rows(Mat& a, int i, int j) {
		if (i == j) return;
		for (int c = 0; c < a.cols; ++c) std::swap(a(i, c), a(j, c));
		for (int c = 0; c < u.cols; ++c) std::swap(u(i, c), u(j, c));
		for (int r = 0; r < uinv.rows; ++r) std::swap(uinv(r, i), uinv(r, j));
	}

	// row_i += t * row_j; inverse transform: col_j -= t * col_i
	void add_row(Mat& a, int i, int j, const Int& t) {
		if (t == 0) return;
		for (int c = 0; c < a.cols; ++c) a(i, c) += t * a(j, c);
		for (int c = 0; c < u.cols; ++c) u(i, c) += t * u(j, c);
		for (int r = 0; r < uinv.rows; ++r) uinv(r, j) -= t * uinv(r, i);
	}

	void negate_row(Mat& a, int i) {
		for (int c = 0; c < a.cols; ++c) a(i, c) = -a(i, c);
		for (int c = 0; c < u.cols; ++c) u(i, c) = -u(i, c);
		for (int r = 0; r < uinv.rows; ++r) uinv(r, i) = -uinv(r, i);
	}
};

void swap_cols(Mat& a, int i, int j) {
	if (i == j) return;
	for (int r = 0; r < a.rows; ++r) std::swap(a(r, i), a(r, j));
}

void add_col(Mat& a, int i, int j, const Int& t) { // col_i += t * col_j
	if (t == 0) return;
	for (int r = 0; r < a.rows; ++r) a(r, i) += t * a(r, j);
}

void negate_col(Mat& a, int i) {
	for (int r = 0; r < a.rows; ++r) a(r, i) = -a(r, i);
}

Int iabs(const Int& v) { return v < 0 ? Int(-v) : v; }

} // namespace

Snf smith_normal_form(Mat a) {
	RowOps ops(a.rows);
	int n = std::min(a.rows, a.cols);
	for (int k = 0; k < n; ++k) {
		// find smallest nonzero pivot in the remaining block
		int pi = -1, pj = -1;
		for (int i = k; i < a.rows; ++i)
			for (int j = k; j < a.cols; ++j)
				if (a(i, j) != 0 && (pi < 0 || iabs(a(i, j)) < iabs(a(pi, pj)))) { pi = i; pj = j; }
		if (pi < 0) break;
		ops.swap_rows(a, k, pi);
		swap_cols(a, k, pj);
		bool again = true;
		while (again) {
			again = false;
			for (int i = k + 1; i < a.rows; ++i) {
				if (a(i, k) == 0) continue;
				Int q = a(i, k) / a(k, k);
				ops.add_row(a, i, k, -q);
				if (a(i, k) != 0) { // remainder became the smaller pivot
					ops.swap_rows(a, k, i);
					again = true;
				}
			}
			for (int j = k + 1; j < a.cols; ++j) {
				if (a(k, j) == 0) continue;
				Int q = a(k, j) / a(k, k);
				add_col(a, j, k, -q);
				if (a(k, j) != 0) {
					swap_cols(a, k, j);
					again = true;
				}
			}
		}
		if (a(k, k) < 0) ops.negate_row(a, k);
	}
	// enforce divisibility chain d_k | d_{k+1}
	for (int k = 0; k + 1 < n; ++k) {
		for (int j = k + 1; j < n; ++j) {
			if (a(j, j) % a(k, k) == 0) continue;
			// fold a(j,j) into position (k,k) and redo the corner
			add_col(a, k, j, Int(1));
			bool again = true;
			while (again) {
				again = false;
				Int q = a(j, k) / a(k, k);
				ops.add_row(a, j, k, -q);
				if (a(j, k) != 0) { ops.swap_rows(a, k, j); swap_cols(a, k, j); again = true; continue; }
				q = a(k, j) / a(k, k);
				add_col(a, j, k, -q);
				if (a(k, j) != 0) { swap_cols(a, k, j); again = true; }
			}
			if (a(k, k) < 0) ops.negate_row(a, k);
			if (a(j, j) < 0) ops.negate_row(a, j);
		}
	}
	return Snf{std::move(a), std::move(ops.u), std::move(ops.uinv)};
}

std::vector<Int> Snf::diag() const {
	std::vector<Int> out;
	int n = std::min(d.rows, d.cols);
	for (int i = 0; i < n; ++i)
		if (d(i, i) != 0) out.push_back(d(i, i));
	return out;
}

Mat unimodular_inverse(const Mat& m) {
	internal_check(m.rows == m.cols, "unimodular_inverse: square matrix expected");
	// adjugate divided by the determinant, which must be a unit
	Int dd = det(m);
	internal_check(dd == 1 || dd == -1, "unimodular_inverse: |det| != 1");
	int n = m.rows;
	Mat inv(n, n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			Mat minor(n - 1, n - 1);
			for (int r = 0, rr = 0; r < n; ++r) {
				if (r == j) continue;
				for (int c = 0, cc = 0; c < n; ++c) {
					if (c == i) continue;
					minor(rr, cc) = m(r, c);
					++cc;
				}
				++rr;
			}
			Int cof = det(minor);
			if ((i + j) % 2 == 1) cof = -cof;
			inv(i, j) = dd == 1 ? cof : -cof;
		}
	return inv;
}

} // namespace cstar
