#include "twin/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twin {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, int rows) {
    Mat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
    Mat m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Q& x = (*this)(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < o.c_; ++j)
                if (sgn(o(k, j)) != 0) m(i, j) += x * o(k, j);
        }
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch in sum");
    Mat m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch in difference");
    Mat m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

Mat Mat::operator-() const { return scaled(-1); }

Mat Mat::scaled(const Q& s) const {
    Mat m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

Vec Mat::operator*(const Vec& v) const {
    if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("Mat: shape mismatch in apply");
    Vec out(r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

Mat Mat::transpose() const {
    Mat m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Vec Mat::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(int i) const {
    return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i) * c_, a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * c_);
}

void Mat::put(int i0, int j0, const Mat& o) {
    for (int i = 0; i < o.r_; ++i)
        for (int j = 0; j < o.c_; ++j) (*this)(i0 + i, j0 + j) = o(i, j);
}

Mat Mat::block(int i0, int j0, int rows, int cols) const {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat m(a.rows(), a.cols() + b.cols());
    m.put(0, 0, a);
    m.put(0, a.cols(), b);
    return m;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
    Mat m(a.rows() + b.rows(), a.cols());
    m.put(0, 0, a);
    m.put(a.rows(), 0, b);
    return m;
}

Mat direct_sum(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols() + b.cols());
    m.put(0, 0, a);
    m.put(a.rows(), a.cols(), b);
    return m;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

Vec add(const Vec& a, const Vec& b) {
    Vec c = a;
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec c = a;
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return c;
}

Vec scale(const Vec& a, const Q& s) {
    Vec c = a;
    for (auto& x : c) x *= s;
    return c;
}

void axpy(Vec& y, const Q& a, const Vec& x) {
    if (sgn(a) == 0) return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) y[i] += a * x[i];
}

std::string str(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
    return s + ")";
}

std::vector<int> rref(Mat& m) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (sgn(m(i, c)) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Q inv = 1 / m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Q f = m(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

std::vector<Vec> kernel(const Mat& a) {
    Mat m = a;
    auto piv = rref(m);
    std::vector<char> is_piv(a.cols(), 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<Vec> out;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec v(a.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(static_cast<int>(k), f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    Mat aug(a.rows(), a.cols() + 1);
    aug.put(0, 0, a);
    for (int i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    Vec x(a.cols());
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug(static_cast<int>(k), a.cols());
    return x;
}

std::optional<Mat> inverse(const Mat& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    int n = a.rows();
    Mat aug = hstack(a, Mat::identity(n));
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
    return aug.block(0, n, n, n);
}

bool Span::add(const Vec& v, const Vec& tag) {
    Vec t = tag.empty() ? Vec(t_) : tag;
    Vec acc(t_);
    Vec r = reduce(v, &acc);
    int p = -1;
    for (int i = 0; i < n_; ++i)
        if (sgn(r[i]) != 0) { p = i; break; }
    if (p < 0) return false;
    // r = v - sum coeff*row_k, so its tag is tag(v) - acc
    for (int i = 0; i < t_; ++i) t[i] -= acc[i];
    Q inv = 1 / r[p];
    for (auto& x : r) x *= inv;
    for (auto& x : t) x *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        Q f = rows_[k][p];
        if (sgn(f) == 0) continue;
        axpy(rows_[k], -f, r);
        axpy(tags_[k], -f, t);
    }
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    piv_.insert(piv_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(r));
    tags_.insert(tags_.begin() + pos, std::move(t));
    return true;
}

bool Span::contains(const Vec& v) const { return is_zero(reduce(v)); }

Vec Span::reduce(const Vec& v, Vec* tag) const {
    Vec r = v;
    if (tag) tag->assign(t_, Q(0));
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        Q f = r[piv_[k]];
        if (sgn(f) == 0) continue;
        axpy(r, -f, rows_[k]);
        if (tag) axpy(*tag, f, tags_[k]);
    }
    return r;
}

Subquotient::Subquotient(int n, const std::vector<Vec>& z_basis, const std::vector<Vec>& b_gens,
                         const std::vector<Vec>& preferred)
    : n_(n) {
    bnd_ = Span(n, 0);
    for (const auto& b : b_gens) bnd_.add(b);
    // first pass decides the basis; the tagged span is rebuilt once the count is known
    Span probe = bnd_;
    std::vector<Vec> chosen;
    for (const auto* src : {&preferred, &z_basis})
        for (const auto& z : *src)
            if (probe.add(z)) chosen.push_back(z);
    basis_ = chosen;
    int m = dim();
    all_ = Span(n, m);
    for (const auto& b : b_gens) all_.add(b, Vec(m));
    for (int i = 0; i < m; ++i) {
        Vec t(m);
        t[i] = 1;
        all_.add(basis_[i], t);
    }
}

std::optional<Vec> Subquotient::coords(const Vec& v) const {
    Vec tag;
    Vec r = all_.reduce(v, &tag);
    if (!is_zero(r)) return std::nullopt;
    return tag;
}

bool Subquotient::is_trivial(const Vec& v) const { return bnd_.contains(v); }

}  // namespace twin
