#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace twin {

using Q = mpq_class;
using Vec = std::vector<Q>;

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Mat identity(int n);
    static Mat from_cols(const std::vector<Vec>& cols, int rows);
    static Mat from_rows(const std::vector<Vec>& rows, int cols);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Q& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Q& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    bool is_zero() const;
    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Q& s) const;
    Vec operator*(const Vec& v) const;
    Mat transpose() const;
    Vec col(int j) const;
    Vec row(int i) const;
    // block copy of o into this at (i0, j0)
    void put(int i0, int j0, const Mat& o);
    Mat block(int i0, int j0, int rows, int cols) const;

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Q> a_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat direct_sum(const Mat& a, const Mat& b);

bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Q& s);
void axpy(Vec& y, const Q& a, const Vec& x);   // y += a*x
std::string str(const Vec& v);

// Reduced row echelon form in place, first nonzero pivot in column order. Returns pivot columns.
std::vector<int> rref(Mat& m);
int rank(Mat m);
// Basis of {v : m v = 0}, one vector per free column in increasing order.
std::vector<Vec> kernel(const Mat& m);
// Particular solution with free variables set to zero.
std::optional<Vec> solve(const Mat& a, const Vec& b);
std::optional<Mat> inverse(const Mat& a);

// A subspace of Q^n kept in reduced echelon form. Each row carries a tag vector so
// that reduction also reports which tagged generators were used.
class Span {
public:
    explicit Span(int n = 0, int tags = 0) : n_(n), t_(tags) {}

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<int>& pivots() const { return piv_; }
    const std::vector<Vec>& rows() const { return rows_; }

    // returns true when v was not already in the span
    bool add(const Vec& v, const Vec& tag = {});
    bool contains(const Vec& v) const;
    // v minus its component along the echelon rows; tag receives the accumulated row tags
    Vec reduce(const Vec& v, Vec* tag = nullptr) const;

private:
    int n_, t_;
    std::vector<Vec> rows_, tags_;
    std::vector<int> piv_;
};

// Z / B for B ⊆ Z ⊆ Q^n, with an explicit basis of representatives.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(int n, const std::vector<Vec>& z_basis, const std::vector<Vec>& b_gens,
                const std::vector<Vec>& preferred = {});

    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient() const { return n_; }
    const std::vector<Vec>& basis() const { return basis_; }
    // coordinates of v ∈ Z modulo B; nullopt if v is not in Z + B span
    std::optional<Vec> coords(const Vec& v) const;
    bool is_trivial(const Vec& v) const;   // v ∈ B

private:
    int n_ = 0;
    std::vector<Vec> basis_;
    Span all_{0, 0};
    Span bnd_{0, 0};
};

}  // namespace twin
