#include "twin/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace twin::oracle {

LineAlgebra::LineAlgebra(int lo, int hi, std::vector<std::pair<int, int>> zero_paths)
    : lo_(lo), hi_(hi), rel_(std::move(zero_paths)) {
    if (hi < lo) throw std::invalid_argument("LineAlgebra: empty vertex range");
    std::sort(rel_.begin(), rel_.end());
    pend_.resize(size());
    istart_.resize(size());
    for (int v = lo_; v <= hi_; ++v) {
        int w = v;
        while (w + 1 <= hi_ && path(v, w + 1)) ++w;
        pend_[v - lo_] = w;
        int u = v;
        while (u - 1 >= lo_ && path(u - 1, v)) --u;
        istart_[v - lo_] = u;
    }
}

LineAlgebra LineAlgebra::type_a(int n) { return LineAlgebra(1, n); }

LineAlgebra LineAlgebra::lambda(int lo, int hi) {
    std::vector<std::pair<int, int>> rel;
    for (int i = lo; i <= hi; ++i) {
        int len = ((i % 4) + 4) % 4 == 0 ? 2 : 3;
        if (i + len <= hi) rel.emplace_back(i, i + len);
    }
    return LineAlgebra(lo, hi, rel);
}

bool LineAlgebra::path(int from, int to) const {
    if (from > to || !contains(from) || !contains(to)) return false;
    for (const auto& [s, t] : rel_) {
        if (s > to) break;
        if (s >= from && t <= to) return false;
    }
    return true;
}

int Rep::total() const {
    int s = 0;
    for (int x : dim) s += x;
    return s;
}

Mat Rep::path_action(int from, int to) const {
    Mat m = Mat::identity(at(from));
    for (int v = from; v < to; ++v) {
        if (v < lo || v >= hi()) return Mat(at(to), at(from));
        m = arrow[v - lo] * m;
    }
    return m;
}

bool Rep::satisfies(const LineAlgebra& alg) const {
    for (const auto& [s, t] : alg.relations())
        if (s >= lo && t <= hi() && !path_action(s, t).is_zero()) return false;
    return true;
}

Rep zero_rep(const LineAlgebra& alg) {
    Rep r;
    r.lo = alg.lo();
    r.dim.assign(alg.size(), 0);
    for (int v = alg.lo(); v < alg.hi(); ++v) r.arrow.emplace_back(0, 0);
    return r;
}

Rep interval_rep(const LineAlgebra& alg, int a, int b) {
    Rep r = zero_rep(alg);
    for (int v = a; v <= b; ++v) r.dim[v - alg.lo()] = 1;
    for (int v = alg.lo(); v < alg.hi(); ++v) {
        Mat m(r.at(v + 1), r.at(v));
        if (v >= a && v < b) m(0, 0) = 1;
        r.arrow[v - alg.lo()] = m;
    }
    return r;
}

Rep direct_sum(const Rep& x, const Rep& y) {
    Rep r;
    r.lo = x.lo;
    for (std::size_t i = 0; i < x.dim.size(); ++i) r.dim.push_back(x.dim[i] + y.dim[i]);
    for (std::size_t i = 0; i < x.arrow.size(); ++i) r.arrow.push_back(twin::direct_sum(x.arrow[i], y.arrow[i]));
    return r;
}

RepMap zero_map(const Rep& src, const Rep& tgt) {
    RepMap f;
    for (std::size_t i = 0; i < src.dim.size(); ++i) f.at.emplace_back(tgt.dim[i], src.dim[i]);
    return f;
}

RepMap compose(const RepMap& g, const RepMap& f) {
    RepMap h;
    for (std::size_t i = 0; i < f.at.size(); ++i) h.at.push_back(g.at[i] * f.at[i]);
    return h;
}

bool is_hom(const Rep& src, const Rep& tgt, const RepMap& f) {
    for (std::size_t i = 0; i < src.arrow.size(); ++i)
        if (f.at[i + 1] * src.arrow[i] != tgt.arrow[i] * f.at[i]) return false;
    return true;
}

std::vector<RepMap> rep_hom_basis(const Rep& src, const Rep& tgt) {
    std::vector<int> off;
    int n = 0;
    for (std::size_t i = 0; i < src.dim.size(); ++i) {
        off.push_back(n);
        n += src.dim[i] * tgt.dim[i];
    }
    int rows = 0;
    for (std::size_t i = 0; i < src.arrow.size(); ++i) rows += tgt.dim[i + 1] * src.dim[i];
    Mat eq(rows, n);
    int r0 = 0;
    // f_{v+1} A_v - B_v f_v = 0
    for (std::size_t v = 0; v < src.arrow.size(); ++v) {
        const Mat& A = src.arrow[v];
        const Mat& B = tgt.arrow[v];
        int s0 = src.dim[v], s1 = src.dim[v + 1], t0 = tgt.dim[v], t1 = tgt.dim[v + 1];
        for (int i = 0; i < t1; ++i)
            for (int j = 0; j < s0; ++j) {
                int row = r0 + i * s0 + j;
                for (int k = 0; k < s1; ++k)
                    if (sgn(A(k, j)) != 0) eq(row, off[v + 1] + i * s1 + k) += A(k, j);
                for (int k = 0; k < t0; ++k)
                    if (sgn(B(i, k)) != 0) eq(row, off[v] + k * s0 + j) -= B(i, k);
            }
        r0 += t1 * s0;
    }
    std::vector<RepMap> out;
    for (const auto& v : kernel(eq)) {
        RepMap f;
        for (std::size_t i = 0; i < src.dim.size(); ++i) {
            Mat m(tgt.dim[i], src.dim[i]);
            for (int a = 0; a < m.rows(); ++a)
                for (int b = 0; b < m.cols(); ++b) m(a, b) = v[off[i] + a * m.cols() + b];
            f.at.push_back(m);
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::map<std::pair<int, int>, int> barcode(const Rep& m) {
    int lo = m.lo, hi = m.hi();
    auto r = [&](int a, int b) -> int {
        if (a < lo || b > hi || a > b) return 0;
        return rank(m.path_action(a, b));
    };
    std::map<std::pair<int, int>, int> out;
    for (int a = lo; a <= hi; ++a)
        for (int b = a; b <= hi; ++b) {
            int mult = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
            if (mult) out[{a, b}] = mult;
        }
    return out;
}

RepComplex stalk(const Rep& m, int degree) {
    RepComplex c;
    c.term[degree] = m;
    return c;
}

namespace {

const Rep* find_term(const RepComplex& c, int k) {
    auto it = c.term.find(k);
    return it == c.term.end() ? nullptr : &it->second;
}

Mat rep_diff_at(const RepComplex& c, int k, int v) {
    const Rep* s = find_term(c, k);
    const Rep* t = find_term(c, k + 1);
    int ds = s ? s->at(v) : 0, dt = t ? t->at(v) : 0;
    auto it = c.d.find(k);
    if (it == c.d.end() || !s || !t) return Mat(dt, ds);
    return it->second.at[v - s->lo];
}

}  // namespace

std::vector<int> homology_dims(const RepComplex& c, int degree) {
    const Rep* t = find_term(c, degree);
    std::vector<int> out;
    if (!t) return out;
    for (int v = t->lo; v <= t->hi(); ++v) {
        int h = t->at(v) - rank(rep_diff_at(c, degree, v)) - rank(rep_diff_at(c, degree - 1, v));
        out.push_back(h);
    }
    return out;
}

Rep homology(const RepComplex& c, int degree) {
    const Rep* t = find_term(c, degree);
    if (!t) throw std::invalid_argument("homology: degree outside complex");
    Rep h;
    h.lo = t->lo;
    std::vector<Subquotient> sq;
    for (int v = t->lo; v <= t->hi(); ++v) {
        int n = t->at(v);
        auto z = kernel(rep_diff_at(c, degree, v));
        Mat in = rep_diff_at(c, degree - 1, v);
        std::vector<Vec> b;
        for (int j = 0; j < in.cols(); ++j) b.push_back(in.col(j));
        sq.emplace_back(n, z, b);
        h.dim.push_back(sq.back().dim());
    }
    for (int v = t->lo; v < t->hi(); ++v) {
        const Subquotient& s0 = sq[v - t->lo];
        const Subquotient& s1 = sq[v + 1 - t->lo];
        Mat a(s1.dim(), s0.dim());
        for (int j = 0; j < s0.dim(); ++j) {
            Vec img = t->arrow[v - t->lo] * s0.basis()[j];
            auto cd = s1.coords(img);
            if (!cd) throw std::logic_error("homology: arrow does not preserve cycles");
            for (int i = 0; i < s1.dim(); ++i) a(i, j) = (*cd)[i];
        }
        h.arrow.push_back(a);
    }
    return h;
}

const std::vector<int>& PComplex::term(int k) const {
    static const std::vector<int> none;
    auto it = terms.find(k);
    return it == terms.end() ? none : it->second;
}

Mat PComplex::diff(int k) const {
    auto it = d.find(k);
    if (it != d.end()) return it->second;
    return Mat(static_cast<int>(term(k + 1).size()), static_cast<int>(term(k).size()));
}

int PComplex::summands() const {
    int s = 0;
    for (const auto& [k, t] : terms) s += static_cast<int>(t.size());
    return s;
}

void PComplex::normalize() {
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second.empty() ? terms.erase(it) : std::next(it);
    for (auto it = d.begin(); it != d.end();)
        it = (term(it->first).empty() || term(it->first + 1).empty()) ? d.erase(it) : std::next(it);
}

Mat compose_mat(const LineAlgebra& alg, const Mat& g, const Mat& f, const std::vector<int>& src,
                const std::vector<int>& tgt) {
    Mat m = g * f;
    for (int l = 0; l < m.rows(); ++l)
        for (int i = 0; i < m.cols(); ++i)
            if (sgn(m(l, i)) != 0 && !alg.path(tgt[l], src[i])) m(l, i) = 0;
    return m;
}

bool admissible(const LineAlgebra& alg, const PComplex& c) {
    for (const auto& [k, m] : c.d) {
        const auto& s = c.term(k);
        const auto& t = c.term(k + 1);
        if (m.rows() != static_cast<int>(t.size()) || m.cols() != static_cast<int>(s.size())) return false;
        for (int u = 0; u < m.rows(); ++u)
            for (int v = 0; v < m.cols(); ++v)
                if (sgn(m(u, v)) != 0 && !alg.path(t[u], s[v])) return false;
        if (!compose_mat(alg, c.diff(k + 1), m, s, c.term(k + 2)).is_zero()) return false;
    }
    return true;
}

namespace {

Mat pmap_at(const PMap& f, int k, const PComplex& src, const PComplex& tgt) {
    auto it = f.f.find(k);
    if (it != f.f.end()) return it->second;
    return Mat(static_cast<int>(tgt.term(k).size()), static_cast<int>(src.term(k).size()));
}

std::vector<int> degrees(const PComplex& a, const PComplex& b) {
    std::vector<int> ks;
    for (const auto& [k, t] : a.terms) ks.push_back(k);
    for (const auto& [k, t] : b.terms) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

}  // namespace

PMap zero_pmap(const PComplex& src, const PComplex& tgt) {
    PMap f;
    for (int k : degrees(src, tgt))
        if (!src.term(k).empty() && !tgt.term(k).empty())
            f.f[k] = Mat(static_cast<int>(tgt.term(k).size()), static_cast<int>(src.term(k).size()));
    return f;
}

PMap identity_pmap(const PComplex& c) {
    PMap f;
    for (const auto& [k, t] : c.terms) f.f[k] = Mat::identity(static_cast<int>(t.size()));
    return f;
}

PMap compose(const LineAlgebra& alg, const PMap& g, const PMap& f, const PComplex& src,
             const PComplex& tgt) {
    PMap h;
    for (const auto& [k, fm] : f.f) {
        auto it = g.f.find(k);
        if (it == g.f.end()) continue;
        h.f[k] = compose_mat(alg, it->second, fm, src.term(k), tgt.term(k));
    }
    return h;
}

PMap add(const PMap& a, const PMap& b) {
    PMap c = a;
    for (const auto& [k, m] : b.f) {
        auto it = c.f.find(k);
        if (it == c.f.end()) c.f[k] = m;
        else it->second = it->second + m;
    }
    return c;
}

PMap scale(const PMap& a, const Q& s) {
    PMap c = a;
    for (auto& [k, m] : c.f) m = m.scaled(s);
    return c;
}

bool is_chain_map(const LineAlgebra& alg, const PComplex& src, const PComplex& tgt, const PMap& f) {
    for (const auto& [k, m] : f.f) {
        const auto& s = src.term(k);
        const auto& t = tgt.term(k);
        for (int u = 0; u < m.rows(); ++u)
            for (int v = 0; v < m.cols(); ++v)
                if (sgn(m(u, v)) != 0 && !alg.path(t[u], s[v])) return false;
    }
    for (int k : degrees(src, tgt)) {
        Mat lhs = compose_mat(alg, pmap_at(f, k + 1, src, tgt), src.diff(k), src.term(k), tgt.term(k + 1));
        Mat rhs = compose_mat(alg, tgt.diff(k), pmap_at(f, k, src, tgt), src.term(k), tgt.term(k + 1));
        if (lhs != rhs) return false;
    }
    return true;
}

PComplex shift(const PComplex& c, int s) {
    PComplex r;
    for (const auto& [k, t] : c.terms) r.terms[k - s] = t;
    for (const auto& [k, m] : c.d) r.d[k - s] = (s % 2 == 0) ? m : -m;
    return r;
}

PMap shift(const PMap& f, int s) {
    PMap r;
    for (const auto& [k, m] : f.f) r.f[k - s] = m;
    return r;
}

PComplex direct_sum(const std::vector<const PComplex*>& parts) {
    PComplex r;
    for (const auto* p : parts)
        for (const auto& [k, t] : p->terms) {
            auto& dst = r.terms[k];
            dst.insert(dst.end(), t.begin(), t.end());
        }
    r.normalize();
    for (const auto& [k, t] : r.terms) {
        if (r.term(k + 1).empty()) continue;
        Mat m(static_cast<int>(r.term(k + 1).size()), static_cast<int>(t.size()));
        int ro = 0, co = 0;
        for (const auto* p : parts) {
            Mat pd = p->diff(k);
            m.put(ro, co, pd);
            ro += pd.rows();
            co += pd.cols();
        }
        r.d[k] = m;
    }
    return r;
}

PMap injection(const std::vector<const PComplex*>& parts, int which) {
    PComplex sum = direct_sum(parts);
    PMap f;
    for (const auto& [k, t] : sum.terms) {
        int off = 0;
        for (int i = 0; i < which; ++i) off += static_cast<int>(parts[i]->term(k).size());
        int n = static_cast<int>(parts[which]->term(k).size());
        if (n == 0) continue;
        Mat m(static_cast<int>(t.size()), n);
        for (int i = 0; i < n; ++i) m(off + i, i) = 1;
        f.f[k] = m;
    }
    return f;
}

PMap projection(const std::vector<const PComplex*>& parts, int which) {
    PMap in = injection(parts, which);
    for (auto& [k, m] : in.f) m = m.transpose();
    return in;
}

PComplex cone(const PComplex& x, const PComplex& y, const PMap& f) {
    PComplex r;
    for (int k : degrees(shift(x, 1), y)) {
        auto t = x.term(k + 1);
        const auto& ty = y.term(k);
        t.insert(t.end(), ty.begin(), ty.end());
        if (!t.empty()) r.terms[k] = t;
    }
    for (const auto& [k, t] : r.terms) {
        if (r.term(k + 1).empty()) continue;
        int xa = static_cast<int>(x.term(k + 1).size()), ya = static_cast<int>(y.term(k).size());
        int xb = static_cast<int>(x.term(k + 2).size()), yb = static_cast<int>(y.term(k + 1).size());
        Mat m(xb + yb, xa + ya);
        m.put(0, 0, -x.diff(k + 1));
        m.put(xb, 0, pmap_at(f, k + 1, x, y));
        m.put(xb, xa, y.diff(k));
        r.d[k] = m;
    }
    return r;
}

PMap cone_in(const PComplex& x, const PComplex& y) {
    PMap f;
    for (const auto& [k, t] : y.terms) {
        int xa = static_cast<int>(x.term(k + 1).size()), ya = static_cast<int>(t.size());
        Mat m(xa + ya, ya);
        for (int i = 0; i < ya; ++i) m(xa + i, i) = 1;
        f.f[k] = m;
    }
    return f;
}

PMap cone_out(const PComplex& x, const PComplex& y) {
    PMap f;
    for (const auto& [k, t] : x.terms) {
        int n = static_cast<int>(t.size()), ya = static_cast<int>(y.term(k - 1).size());
        Mat m(n, n + ya);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        f.f[k - 1] = m;
    }
    return f;
}

namespace {

// summand indices of a projective term present at vertex v
std::vector<int> present(const LineAlgebra& alg, const std::vector<int>& t, int v) {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(t.size()); ++u)
        if (alg.path(t[u], v)) out.push_back(u);
    return out;
}

Rep proj_rep(const LineAlgebra& alg, const std::vector<int>& t) {
    Rep r = zero_rep(alg);
    for (int v = alg.lo(); v <= alg.hi(); ++v) r.dim[v - alg.lo()] = static_cast<int>(present(alg, t, v).size());
    for (int v = alg.lo(); v < alg.hi(); ++v) {
        auto p0 = present(alg, t, v), p1 = present(alg, t, v + 1);
        Mat m(static_cast<int>(p1.size()), static_cast<int>(p0.size()));
        for (std::size_t j = 0; j < p0.size(); ++j) {
            auto it = std::find(p1.begin(), p1.end(), p0[j]);
            if (it != p1.end()) m(static_cast<int>(it - p1.begin()), static_cast<int>(j)) = 1;
        }
        r.arrow[v - alg.lo()] = m;
    }
    return r;
}

}  // namespace

RepComplex to_rep(const LineAlgebra& alg, const PComplex& c) {
    RepComplex r;
    for (const auto& [k, t] : c.terms) r.term[k] = proj_rep(alg, t);
    for (const auto& [k, m] : c.d) {
        const auto& s = c.term(k);
        const auto& t = c.term(k + 1);
        RepMap f;
        for (int v = alg.lo(); v <= alg.hi(); ++v) {
            auto ps = present(alg, s, v), pt = present(alg, t, v);
            Mat a(static_cast<int>(pt.size()), static_cast<int>(ps.size()));
            for (std::size_t i = 0; i < pt.size(); ++i)
                for (std::size_t j = 0; j < ps.size(); ++j) a(static_cast<int>(i), static_cast<int>(j)) = m(pt[i], ps[j]);
            f.at.push_back(a);
        }
        r.d[k] = f;
    }
    return r;
}

namespace {

struct Cover {
    std::vector<int> vertices;
    std::vector<Vec> gens;   // generator vectors in the covered rep, at their vertex
};

Cover top_cover(const LineAlgebra& alg, const Rep& m) {
    Cover c;
    for (int v = alg.lo(); v <= alg.hi(); ++v) {
        int n = m.at(v);
        if (n == 0) continue;
        Span s(n);
        if (v > alg.lo()) {
            const Mat& a = m.arrow[v - 1 - alg.lo()];
            for (int j = 0; j < a.cols(); ++j) s.add(a.col(j));
        }
        for (int i = 0; i < n; ++i) {
            Vec e(n);
            e[i] = 1;
            if (s.add(e)) {
                c.vertices.push_back(v);
                c.gens.push_back(e);
            }
        }
    }
    return c;
}

// matrix of the cover ⊕P -> m at vertex w, columns = summands present at w
Mat cover_at(const LineAlgebra& alg, const Rep& m, const Cover& c, int w) {
    auto pres = present(alg, c.vertices, w);
    Mat a(m.at(w), static_cast<int>(pres.size()));
    for (std::size_t j = 0; j < pres.size(); ++j) {
        int g = pres[j];
        Vec img = m.path_action(c.vertices[g], w) * c.gens[g];
        for (int i = 0; i < a.rows(); ++i) a(i, static_cast<int>(j)) = img[i];
    }
    return a;
}

}  // namespace

PComplex resolution(const LineAlgebra& alg, const Rep& m, int length) {
    PComplex out;
    Rep cur = m;
    std::vector<Mat> emb;          // cur_w -> previous projective term at w
    std::vector<int> prev_vertices;
    for (int step = 0; step <= length; ++step) {
        if (cur.total() == 0) break;
        Cover c = top_cover(alg, cur);
        int deg = -step;
        out.terms[deg] = c.vertices;
        if (step > 0) {
            Mat d(static_cast<int>(prev_vertices.size()), static_cast<int>(c.vertices.size()));
            for (std::size_t g = 0; g < c.vertices.size(); ++g) {
                int v = c.vertices[g];
                Vec amb = emb[v - alg.lo()] * c.gens[g];
                auto pres = present(alg, prev_vertices, v);
                for (std::size_t i = 0; i < pres.size(); ++i) d(pres[i], static_cast<int>(g)) = amb[i];
            }
            out.d[deg] = d;
        }
        if (step == length) break;
        // kernel of the cover as a subrepresentation of ⊕P
        Rep p = proj_rep(alg, c.vertices);
        Rep k = zero_rep(alg);
        std::vector<Mat> kemb;
        for (int w = alg.lo(); w <= alg.hi(); ++w) {
            auto z = kernel(cover_at(alg, cur, c, w));
            kemb.push_back(Mat::from_cols(z, p.at(w)));
            k.dim[w - alg.lo()] = static_cast<int>(z.size());
        }
        for (int w = alg.lo(); w < alg.hi(); ++w) {
            const Mat& e0 = kemb[w - alg.lo()];
            const Mat& e1 = kemb[w + 1 - alg.lo()];
            Mat img = p.arrow[w - alg.lo()] * e0;
            Mat a(e1.cols(), e0.cols());
            for (int j = 0; j < e0.cols(); ++j) {
                auto x = solve(e1, img.col(j));
                if (!x) throw std::logic_error("resolution: kernel is not a subrepresentation");
                for (int i = 0; i < a.rows(); ++i) a(i, j) = (*x)[i];
            }
            k.arrow[w - alg.lo()] = a;
        }
        cur = k;
        emb = kemb;
        prev_vertices = c.vertices;
    }
    return out;
}

ChainHom::ChainHom(const LineAlgebra&, const PComplex& p, const RepComplex& b,
                   const std::vector<Vec>& preferred) {
    auto bdim = [&](int k, int v) {
        const Rep* r = find_term(b, k);
        return r ? r->at(v) : 0;
    };
    for (const auto& [k, t] : p.terms)
        for (int i = 0; i < static_cast<int>(t.size()); ++i) {
            int sz = bdim(k, t[i]);
            if (sz == 0) continue;
            blocks_[{k, i}] = {n_, sz};
            n_ += sz;
        }
    auto block = [&](int k, int t) -> std::pair<int, int> {
        auto it = blocks_.find({k, t});
        return it == blocks_.end() ? std::pair<int, int>{-1, 0} : it->second;
    };

    // cycle equations: d_B f^k_t - sum_u d_P(u,t) B^{k+1}(j_u -> i) f^{k+1}_u = 0 in B^{k+1} at i
    std::vector<Vec> rows;
    for (const auto& [k, t] : p.terms) {
        Mat dp = p.diff(k);
        const auto& nt = p.term(k + 1);
        for (int ti = 0; ti < static_cast<int>(t.size()); ++ti) {
            int i = t[ti];
            int out = bdim(k + 1, i);
            if (out == 0) continue;
            std::vector<Vec> eq(out, Vec(n_));
            auto [o, sz] = block(k, ti);
            if (o >= 0) {
                Mat db = rep_diff_at(b, k, i);
                for (int r = 0; r < out; ++r)
                    for (int c = 0; c < sz; ++c) eq[r][o + c] += db(r, c);
            }
            for (int u = 0; u < static_cast<int>(nt.size()); ++u) {
                if (sgn(dp(u, ti)) == 0) continue;
                auto [ou, su] = block(k + 1, u);
                if (ou < 0) continue;
                Mat pa = find_term(b, k + 1)->path_action(nt[u], i);
                for (int r = 0; r < out; ++r)
                    for (int c = 0; c < su; ++c) eq[r][ou + c] -= dp(u, ti) * pa(r, c);
            }
            for (auto& e : eq) rows.push_back(std::move(e));
        }
    }
    std::vector<Vec> z;
    if (rows.empty()) {
        for (int i = 0; i < n_; ++i) {
            Vec e(n_);
            e[i] = 1;
            z.push_back(e);
        }
    } else {
        z = kernel(Mat::from_rows(rows, n_));
    }

    // null-homotopic maps d_B h + h d_P, one generator per coordinate of h
    std::vector<Vec> bnd;
    for (const auto& [k, t] : p.terms) {
        const auto& pt = p.term(k - 1);
        Mat dp = p.diff(k - 1);
        for (int ti = 0; ti < static_cast<int>(t.size()); ++ti) {
            int i = t[ti];
            int hs = bdim(k - 1, i);
            for (int e = 0; e < hs; ++e) {
                Vec f(n_);
                auto [o, sz] = block(k, ti);
                if (o >= 0) {
                    Mat db = rep_diff_at(b, k - 1, i);
                    for (int r = 0; r < sz; ++r) f[o + r] += db(r, e);
                }
                for (int tp = 0; tp < static_cast<int>(pt.size()); ++tp) {
                    if (sgn(dp(ti, tp)) == 0) continue;
                    auto [op, sp] = block(k - 1, tp);
                    if (op < 0) continue;
                    Mat pa = find_term(b, k - 1)->path_action(i, pt[tp]);
                    for (int r = 0; r < sp; ++r) f[op + r] += dp(ti, tp) * pa(r, e);
                }
                if (!is_zero(f)) bnd.push_back(std::move(f));
            }
        }
    }
    q_ = Subquotient(n_, z, bnd, preferred);
}

PHom::PHom(const LineAlgebra& alg, const PComplex& p, const PComplex& q, bool prefer_identity) : p_(p), q_(q) {
    for (const auto& [k, t] : p.terms)
        for (int i = 0; i < static_cast<int>(t.size()); ++i) {
            auto pres = present(alg, q.term(k), t[i]);
            if (!pres.empty()) cols_[{k, i}] = pres;
        }
    std::vector<Vec> pref;
    RepComplex qr = to_rep(alg, q);
    if (prefer_identity) {
        h_ = ChainHom(alg, p, qr);
        pref.push_back(flatten(identity_pmap(p)));
    }
    h_ = ChainHom(alg, p, qr, pref);
}

Vec PHom::flatten(const PMap& f) const {
    Vec v(h_.ambient());
    for (const auto& [key, pres] : cols_) {
        auto it = h_.blocks().find(key);
        auto fit = f.f.find(key.first);
        if (it == h_.blocks().end() || fit == f.f.end()) continue;
        int o = it->second.first;
        for (std::size_t r = 0; r < pres.size(); ++r) v[o + r] = fit->second(pres[r], key.second);
    }
    return v;
}

PMap PHom::unflatten(const Vec& v) const {
    PMap f = zero_pmap(p_, q_);
    for (const auto& [key, pres] : cols_) {
        auto it = h_.blocks().find(key);
        if (it == h_.blocks().end()) continue;
        int o = it->second.first;
        for (std::size_t r = 0; r < pres.size(); ++r) f.f[key.first](pres[r], key.second) = v[o + r];
    }
    return f;
}

}  // namespace twin::oracle
