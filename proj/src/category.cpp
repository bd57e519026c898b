#include "twin/category.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace twin {

const char* to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::window_error: return "window_error";
        case Status::inconclusive: return "inconclusive";
        case Status::failed: return "failed";
    }
    return "?";
}

Obj make_obj(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
}

Obj obj_sum(const Obj& a, const Obj& b) {
    Obj r;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::string obj_str(const Obj& a) {
    std::string s = "{";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + "}";
}

namespace {

long long coord_key(int c0, int c1) { return (static_cast<long long>(c0) << 32) ^ static_cast<unsigned>(c1); }

// stable merge of two sorted objects, recording where each input position lands
Obj merge_positions(const Obj& a, const Obj& b, std::vector<int>& pa, std::vector<int>& pb) {
    Obj r;
    pa.assign(a.size(), 0);
    pb.assign(b.size(), 0);
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
            pa[i++] = static_cast<int>(r.size());
            r.push_back(a[i - 1]);
        } else {
            pb[j++] = static_cast<int>(r.size());
            r.push_back(b[j - 1]);
        }
    }
    return r;
}

}  // namespace

void Category::init_tables() {
    std::size_t n = ind_.size();
    hom_.assign(n * n, 0);
    ext_.assign(n * n, 0);
    comp_.clear();
    index_coords();
}

void Category::index_coords() {
    by_coords_.clear();
    for (const auto& x : ind_) by_coords_[coord_key(x.coords[0], x.coords[1])] = x.id;
}

std::optional<int> Category::find(int c0, int c1) const {
    auto it = by_coords_.find(coord_key(c0, c1));
    if (it == by_coords_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> Category::window_ids() const {
    std::vector<int> out;
    for (const auto& x : ind_)
        if (x.window) out.push_back(x.id);
    return out;
}

std::vector<int> Category::core_ids() const {
    std::vector<int> out;
    for (const auto& x : ind_)
        if (x.core) out.push_back(x.id);
    return out;
}

bool Category::in_window(const Obj& x) const {
    return std::all_of(x.begin(), x.end(), [&](int i) { return ind_[i].window; });
}

bool Category::in_core(const Obj& x) const {
    return std::all_of(x.begin(), x.end(), [&](int i) { return ind_[i].core; });
}

int Category::hom_dim(const Obj& a, const Obj& b) const {
    int s = 0;
    for (int x : a)
        for (int y : b) s += hom_dim(x, y);
    return s;
}

int Category::ext_dim(const Obj& c, const Obj& a) const {
    int s = 0;
    for (int x : c)
        for (int y : a) s += ext_dim(x, y);
    return s;
}

void Category::set_comp(int a, int b, int c, std::vector<Term> t) {
    long long n = size();
    if (!t.empty()) comp_[(a * n + b) * n + c] = std::move(t);
}

const std::vector<Term>& Category::comp(int a, int b, int c) const {
    static const std::vector<Term> none;
    long long n = size();
    auto it = comp_.find((a * n + b) * n + c);
    return it == comp_.end() ? none : it->second;
}

void Category::comp_acc(int a, int b, int c, const Q* f, const Q* g, Q* out) const {
    for (const auto& t : comp(a, b, c)) {
        if (sgn(f[t.p]) == 0 || sgn(g[t.q]) == 0) continue;
        out[t.r] += t.v * f[t.p] * g[t.q];
    }
}

std::vector<int> Category::layout(const Obj& a, const Obj& b) const {
    std::vector<int> off;
    off.reserve(a.size() * b.size() + 1);
    int n = 0;
    for (int x : a)
        for (int y : b) {
            off.push_back(n);
            n += hom_dim(x, y);
        }
    off.push_back(n);
    return off;
}

std::vector<int> Category::ext_layout(const Obj& c, const Obj& a) const {
    std::vector<int> off;
    off.reserve(c.size() * a.size() + 1);
    int n = 0;
    for (int x : c)
        for (int y : a) {
            off.push_back(n);
            n += ext_dim(x, y);
        }
    off.push_back(n);
    return off;
}

Mor Category::zero(const Obj& a, const Obj& b) const { return Mor{a, b, Vec(hom_dim(a, b))}; }

Mor Category::identity(const Obj& a) const {
    Mor m = zero(a, a);
    auto off = layout(a, a);
    for (std::size_t i = 0; i < a.size(); ++i) m.c[off[i * a.size() + i]] = 1;
    return m;
}

Mor Category::basis_mor(const Obj& a, const Obj& b, int k) const {
    Mor m = zero(a, b);
    m.c.at(k) = 1;
    return m;
}

Mor Category::compose(const Mor& g, const Mor& f) const {
    if (f.dst != g.src) throw std::invalid_argument("compose: objects do not match");
    const Obj &A = f.src, &B = f.dst, &C = g.dst;
    auto lf = layout(A, B), lg = layout(B, C);
    Mor h = zero(A, C);
    auto lh = layout(A, C);
    std::size_t nb = B.size(), nc = C.size();
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            if (hom_dim(A[i], B[j]) == 0) continue;
            for (std::size_t k = 0; k < nc; ++k) {
                if (hom_dim(B[j], C[k]) == 0) continue;
                comp_acc(A[i], B[j], C[k], &f.c[lf[i * nb + j]], &g.c[lg[j * nc + k]], h.c.data() + lh[i * nc + k]);
            }
        }
    return h;
}

Mor Category::add(const Mor& f, const Mor& g) const {
    if (f.src != g.src || f.dst != g.dst) throw std::invalid_argument("add: objects do not match");
    return Mor{f.src, f.dst, twin::add(f.c, g.c)};
}

Mor Category::scale(const Mor& f, const Q& s) const { return Mor{f.src, f.dst, twin::scale(f.c, s)}; }

Mor Category::inject(const Obj& whole, int pos) const {
    Obj one{whole[pos]};
    Mor m = zero(one, whole);
    m.c[layout(one, whole)[pos]] = 1;
    return m;
}

Mor Category::project(const Obj& whole, int pos) const {
    Obj one{whole[pos]};
    Mor m = zero(whole, one);
    m.c[layout(whole, one)[pos]] = 1;
    return m;
}

Mor Category::component(const Mor& f, int i, int j) const {
    Obj s{f.src[i]}, d{f.dst[j]};
    Mor m = zero(s, d);
    int o = layout(f.src, f.dst)[i * f.dst.size() + j];
    for (std::size_t r = 0; r < m.c.size(); ++r) m.c[r] = f.c[o + r];
    return m;
}

Mor Category::pair_to(const Mor& f, const Mor& g) const {
    if (f.src != g.src) throw std::invalid_argument("pair_to: sources differ");
    std::vector<int> pb, pc;
    Obj d = merge_positions(f.dst, g.dst, pb, pc);
    Mor m = zero(f.src, d);
    auto lm = layout(f.src, d), lf = layout(f.src, f.dst), lg = layout(g.src, g.dst);
    for (std::size_t i = 0; i < f.src.size(); ++i) {
        for (std::size_t j = 0; j < f.dst.size(); ++j)
            for (int r = 0; r < hom_dim(f.src[i], f.dst[j]); ++r)
                m.c[lm[i * d.size() + pb[j]] + r] = f.c[lf[i * f.dst.size() + j] + r];
        for (std::size_t j = 0; j < g.dst.size(); ++j)
            for (int r = 0; r < hom_dim(g.src[i], g.dst[j]); ++r)
                m.c[lm[i * d.size() + pc[j]] + r] = g.c[lg[i * g.dst.size() + j] + r];
    }
    return m;
}

Mor Category::pair_from(const Mor& f, const Mor& g) const {
    if (f.dst != g.dst) throw std::invalid_argument("pair_from: targets differ");
    std::vector<int> pa, pb;
    Obj s = merge_positions(f.src, g.src, pa, pb);
    Mor m = zero(s, f.dst);
    auto lm = layout(s, f.dst), lf = layout(f.src, f.dst), lg = layout(g.src, g.dst);
    std::size_t nd = f.dst.size();
    for (std::size_t j = 0; j < nd; ++j) {
        for (std::size_t i = 0; i < f.src.size(); ++i)
            for (int r = 0; r < hom_dim(f.src[i], f.dst[j]); ++r)
                m.c[lm[pa[i] * nd + j] + r] = f.c[lf[i * nd + j] + r];
        for (std::size_t i = 0; i < g.src.size(); ++i)
            for (int r = 0; r < hom_dim(g.src[i], g.dst[j]); ++r)
                m.c[lm[pb[i] * nd + j] + r] = g.c[lg[i * nd + j] + r];
    }
    return m;
}

Mor Category::direct_sum(const Mor& f, const Mor& g) const {
    std::vector<int> pa, pb, qa, qb;
    Obj s = merge_positions(f.src, g.src, pa, pb);
    Obj d = merge_positions(f.dst, g.dst, qa, qb);
    Mor m = zero(s, d);
    auto lm = layout(s, d), lf = layout(f.src, f.dst), lg = layout(g.src, g.dst);
    for (std::size_t i = 0; i < f.src.size(); ++i)
        for (std::size_t j = 0; j < f.dst.size(); ++j)
            for (int r = 0; r < hom_dim(f.src[i], f.dst[j]); ++r)
                m.c[lm[pa[i] * d.size() + qa[j]] + r] = f.c[lf[i * f.dst.size() + j] + r];
    for (std::size_t i = 0; i < g.src.size(); ++i)
        for (std::size_t j = 0; j < g.dst.size(); ++j)
            for (int r = 0; r < hom_dim(g.src[i], g.dst[j]); ++r)
                m.c[lm[pb[i] * d.size() + qb[j]] + r] = g.c[lg[i * g.dst.size() + j] + r];
    return m;
}

Mat Category::postcomp_matrix(const Mor& g, const Obj& x) const {
    const Obj &B = g.src, &C = g.dst;
    auto lf = layout(x, B), lg = layout(B, C), lh = layout(x, C);
    Mat m(lh.back(), lf.back());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            for (std::size_t k = 0; k < C.size(); ++k)
                for (const auto& t : comp(x[i], B[j], C[k])) {
                    const Q& gv = g.c[lg[j * C.size() + k] + t.q];
                    if (sgn(gv) == 0) continue;
                    m(lh[i * C.size() + k] + t.r, lf[i * B.size() + j] + t.p) += t.v * gv;
                }
    return m;
}

Mat Category::precomp_matrix(const Mor& f, const Obj& y) const {
    const Obj &A = f.src, &B = f.dst;
    auto lf = layout(A, B), lg = layout(B, y), lh = layout(A, y);
    Mat m(lh.back(), lg.back());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            for (std::size_t k = 0; k < y.size(); ++k)
                for (const auto& t : comp(A[i], B[j], y[k])) {
                    const Q& fv = f.c[lf[i * B.size() + j] + t.p];
                    if (sgn(fv) == 0) continue;
                    m(lh[i * y.size() + k] + t.r, lg[j * y.size() + k] + t.q) += t.v * fv;
                }
    return m;
}

std::optional<Mor> Category::lift(const Mor& g, const Mor& h) const {
    if (g.dst != h.dst) throw std::invalid_argument("lift: targets differ");
    auto x = solve(postcomp_matrix(g, h.src), h.c);
    if (!x) return std::nullopt;
    return Mor{h.src, g.src, *x};
}

std::optional<Mor> Category::extend(const Mor& f, const Mor& h) const {
    if (f.src != h.src) throw std::invalid_argument("extend: sources differ");
    auto x = solve(precomp_matrix(f, h.dst), h.c);
    if (!x) return std::nullopt;
    return Mor{f.dst, h.dst, *x};
}

std::optional<Mor> Category::inverse(const Mor& f) const {
    if (f.src != f.dst) return std::nullopt;
    auto g = extend(f, identity(f.src));
    if (!g) return std::nullopt;
    if (compose(f, *g).c != identity(f.dst).c) return std::nullopt;
    return g;
}

ExtClass Category::zero_ext(const Obj& c, const Obj& a) const { return ExtClass{c, a, Vec(ext_dim(c, a))}; }

namespace {

Vec unit(int n, int i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

Mat matrix_of(int in, int out, const std::function<Vec(const Vec&)>& f) {
    Mat m(out, in);
    for (int j = 0; j < in; ++j) {
        Vec v = f(unit(in, j));
        for (int i = 0; i < out; ++i) m(i, j) = v[i];
    }
    return m;
}

// exactness at the four inner terms of V0 -> V1 -> ... -> V5
std::optional<int> first_gap(const std::vector<int>& dims, const std::vector<Mat>& maps) {
    for (int i = 1; i <= 4; ++i) {
        const Mat& in = maps[i - 1];
        const Mat& out = maps[i];
        if (in.cols() > 0 && out.rows() > 0 && !(out * in).is_zero()) return i;
        if (rank(in) + rank(out) != dims[i]) return i;
    }
    return std::nullopt;
}

}  // namespace

LesReport check_les(const Category& cat, const ETriangle& t, int x) {
    LesReport rep;
    Obj X{x};
    {
        std::vector<int> d{cat.hom_dim(X, t.a), cat.hom_dim(X, t.b), cat.hom_dim(X, t.c),
                           cat.ext_dim(X, t.a), cat.ext_dim(X, t.b), cat.ext_dim(X, t.c)};
        std::vector<Mat> m;
        m.push_back(cat.postcomp_matrix(t.infl, X));
        m.push_back(cat.postcomp_matrix(t.defl, X));
        m.push_back(matrix_of(d[2], d[3], [&](const Vec& v) { return cat.ext_pull(t.cls, Mor{X, t.c, v}).v; }));
        m.push_back(matrix_of(d[3], d[4], [&](const Vec& v) { return cat.ext_push(t.infl, ExtClass{X, t.a, v}).v; }));
        m.push_back(matrix_of(d[4], d[5], [&](const Vec& v) { return cat.ext_push(t.defl, ExtClass{X, t.b, v}).v; }));
        if (auto g = first_gap(d, m)) {
            rep.exact = false;
            rep.where = "covariant position " + std::to_string(*g);
            return rep;
        }
    }
    {
        std::vector<int> d{cat.hom_dim(t.c, X), cat.hom_dim(t.b, X), cat.hom_dim(t.a, X),
                           cat.ext_dim(t.c, X), cat.ext_dim(t.b, X), cat.ext_dim(t.a, X)};
        std::vector<Mat> m;
        m.push_back(cat.precomp_matrix(t.defl, X));
        m.push_back(cat.precomp_matrix(t.infl, X));
        m.push_back(matrix_of(d[2], d[3], [&](const Vec& v) { return cat.ext_push(Mor{t.a, X, v}, t.cls).v; }));
        m.push_back(matrix_of(d[3], d[4], [&](const Vec& v) { return cat.ext_pull(ExtClass{t.c, X, v}, t.defl).v; }));
        m.push_back(matrix_of(d[4], d[5], [&](const Vec& v) { return cat.ext_pull(ExtClass{t.b, X, v}, t.infl).v; }));
        if (auto g = first_gap(d, m)) {
            rep.exact = false;
            rep.where = "contravariant position " + std::to_string(*g);
        }
    }
    return rep;
}

}  // namespace twin
