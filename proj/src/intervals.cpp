#include "twin/intervals.hpp"

#include <random>
#include <stdexcept>

namespace twin {

using oracle::Rep;
using oracle::RepMap;

IntervalCategory::IntervalCategory(oracle::LineAlgebra alg, std::pair<int, int> full, std::pair<int, int> core,
                                   std::string name)
    : alg_(std::move(alg)), full_(full), core_(core), name_(std::move(name)) {
    if (full.first < alg_.lo() || full.second > alg_.hi()) throw std::invalid_argument("full range exceeds algebra");
    if (core.first < full.first || core.second > full.second) throw std::invalid_argument("core exceeds full range");
    build();
}

IntervalCategory IntervalCategory::type_a(int n) {
    return IntervalCategory(oracle::LineAlgebra::type_a(n), {1, n}, {1, n}, "a_" + std::to_string(n));
}

IntervalCategory IntervalCategory::lambda(int lo, int hi, int core_margin, int pad) {
    return IntervalCategory(oracle::LineAlgebra::lambda(lo - pad, hi + pad), {lo, hi},
                            {lo + core_margin, hi - core_margin}, "lambda_4k");
}

namespace {

// row index of every summand at every vertex (-1 when absent)
struct Index {
    int lo = 0;
    std::vector<std::vector<int>> at;   // at[v - lo][pos]
    std::vector<int> dim;
};

}  // namespace

static Index make_index(const IntervalCategory& cat, const std::vector<int>& ids) {
    const auto& alg = cat.algebra();
    Index ix;
    ix.lo = alg.lo();
    ix.at.assign(alg.size(), std::vector<int>(ids.size(), -1));
    ix.dim.assign(alg.size(), 0);
    for (int v = alg.lo(); v <= alg.hi(); ++v)
        for (std::size_t p = 0; p < ids.size(); ++p)
            if (cat.start(ids[p]) <= v && v <= cat.end(ids[p])) ix.at[v - alg.lo()][p] = ix.dim[v - alg.lo()]++;
    return ix;
}

void IntervalCategory::build() {
    for (int a = alg_.lo(); a <= alg_.hi(); ++a)
        for (int b = a; b <= alg_.hi() && alg_.path(a, b); ++b) {
            Indec x;
            x.id = size();
            x.coords = {a, b};
            x.label = "[" + std::to_string(a) + "," + std::to_string(b) + "]";
            x.window = a >= full_.first && b <= full_.second;
            x.core = a >= core_.first && b <= core_.second;
            ind_.push_back(x);
        }
    init_tables();
    int n = size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (start(y) <= start(x) && start(x) <= end(y) && end(y) <= end(x)) set_hom(x, y, 1);

    // structure constants read off explicit representation maps
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!hom_dim(x, y)) continue;
            RepMap f = rep_map(basis_mor({x}, {y}, 0));
            for (int z = 0; z < n; ++z) {
                if (!hom_dim(y, z) || !hom_dim(x, z)) continue;
                RepMap g = rep_map(basis_mor({y}, {z}, 0));
                RepMap h = oracle::compose(g, f);
                const Mat& m = h.at[start(x) - alg_.lo()];
                if (sgn(m(0, 0)) != 0) set_comp(x, y, z, {Term{0, 0, 0, m(0, 0)}});
            }
        }

    pcover_.assign(n, -2);
    omega_.assign(n, -2);
    ihull_.assign(n, -2);
    for (int x = 0; x < n; ++x) {
        int a = start(x), b = end(x);
        int e = alg_.proj_end(a);
        if (auto p = find(a, e)) pcover_[x] = *p;
        if (b == e) omega_[x] = -1;
        else if (auto w = find(b + 1, e)) omega_[x] = *w;
        if (auto i = find(alg_.inj_start(b), b)) ihull_[x] = *i;
    }

    for (int c = 0; c < n; ++c) {
        int w = omega_[c], p = pcover_[c];
        if (w < 0) continue;
        for (int a = 0; a < n; ++a) {
            int h = hom_dim(w, a);
            if (!h) continue;
            std::vector<Vec> units, img;
            for (int i = 0; i < h; ++i) {
                Vec e(h);
                e[i] = 1;
                units.push_back(e);
            }
            Vec iota(hom_dim(w, p));
            iota[0] = 1;
            for (int q = 0; q < hom_dim(p, a); ++q) {
                Vec beta(hom_dim(p, a)), out(h);
                beta[q] = 1;
                comp_acc(w, p, a, iota.data(), beta.data(), out.data());
                img.push_back(out);
            }
            Subquotient sq(h, units, img);
            set_ext(c, a, sq.dim());
            ext_q_.emplace(std::make_pair(c, a), std::move(sq));
        }
    }

    // Ω on basis maps: lift through projective covers, then restrict to syzygies
    for (int c1 = 0; c1 < n; ++c1)
        for (int c = 0; c < n; ++c) {
            if (!hom_dim(c1, c) || omega_[c1] < 0 || omega_[c] < 0) continue;
            int p1 = pcover_[c1], p = pcover_[c], w1 = omega_[c1], w = omega_[c];
            std::vector<Vec> maps;
            for (int q = 0; q < hom_dim(c1, c); ++q) {
                Mor g = basis_mor({c1}, {c}, q);
                Mor pi1 = basis_mor({p1}, {c1}, 0), pi = basis_mor({p}, {c}, 0);
                auto lp = lift(pi, compose(g, pi1));
                if (!lp) throw std::logic_error("Ω: map does not lift to projective covers");
                Mor io1 = basis_mor({w1}, {p1}, 0), io = basis_mor({w}, {p}, 0);
                auto lw = lift(io, compose(*lp, io1));
                if (!lw) throw std::logic_error("Ω: lifted map does not restrict to syzygies");
                maps.push_back(lw->c);
            }
            omega_map_[{c1, c}] = maps;
        }
}

std::optional<int> IntervalCategory::ext2_dim(int c, int a) const {
    int w = omega_[c];
    if (w == -1) return 0;
    if (w == -2 || omega_[w] == -2) return std::nullopt;
    return ext_dim(w, a);
}

Rep IntervalCategory::rep(const std::vector<int>& ids) const {
    Index ix = make_index(*this, ids);
    Rep r = oracle::zero_rep(alg_);
    r.dim = ix.dim;
    for (int v = alg_.lo(); v < alg_.hi(); ++v) {
        Mat m(ix.dim[v + 1 - alg_.lo()], ix.dim[v - alg_.lo()]);
        for (std::size_t p = 0; p < ids.size(); ++p) {
            int i0 = ix.at[v - alg_.lo()][p], i1 = ix.at[v + 1 - alg_.lo()][p];
            if (i0 >= 0 && i1 >= 0) m(i1, i0) = 1;
        }
        r.arrow[v - alg_.lo()] = m;
    }
    return r;
}

RepMap IntervalCategory::rep_map(const Mor& f) const {
    Index is = make_index(*this, f.src), id = make_index(*this, f.dst);
    RepMap m;
    for (int v = alg_.lo(); v <= alg_.hi(); ++v) m.at.emplace_back(id.dim[v - alg_.lo()], is.dim[v - alg_.lo()]);
    auto off = layout(f.src, f.dst);
    for (std::size_t i = 0; i < f.src.size(); ++i)
        for (std::size_t j = 0; j < f.dst.size(); ++j) {
            if (!hom_dim(f.src[i], f.dst[j])) continue;
            const Q& s = f.c[off[i * f.dst.size() + j]];
            if (sgn(s) == 0) continue;
            for (int v = start(f.src[i]); v <= end(f.dst[j]); ++v)
                m.at[v - alg_.lo()](id.at[v - alg_.lo()][j], is.at[v - alg_.lo()][i]) += s;
        }
    return m;
}

Mor IntervalCategory::from_rep_map(const std::vector<int>& src, const std::vector<int>& dst, const RepMap& m) const {
    Index is = make_index(*this, src), id = make_index(*this, dst);
    Mor f = zero(src, dst);
    auto off = layout(src, dst);
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j) {
            if (!hom_dim(src[i], dst[j])) continue;
            int v = start(src[i]) - alg_.lo();
            f.c[off[i * dst.size() + j]] = m.at[v](id.at[v][j], is.at[v][i]);
        }
    RepMap back = rep_map(f);
    for (std::size_t v = 0; v < back.at.size(); ++v)
        if (back.at[v] != m.at[v]) throw std::logic_error("from_rep_map: input is not a module map between the given sums");
    return f;
}

std::optional<std::map<int, int>> IntervalCategory::fingerprint(const Rep& m) const {
    std::vector<int> cand;
    for (const auto& x : ind_) {
        bool inside = true;
        for (int v = start(x.id); v <= end(x.id) && inside; ++v) inside = m.at(v) > 0;
        if (inside) cand.push_back(x.id);
    }
    int k = static_cast<int>(cand.size());
    Mat h(k, k);
    Vec f(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) h(i, j) = hom_dim(cand[i], cand[j]);
        int a = start(cand[i]), b = end(cand[i]);
        f[i] = static_cast<long>(kernel(m.path_action(a, b + 1)).size());
    }
    if (rank(h) != k) return std::nullopt;
    auto x = solve(h, f);
    if (!x) return std::nullopt;
    std::map<int, int> out;
    for (int i = 0; i < k; ++i) {
        const Q& q = (*x)[i];
        if (q.get_den() != 1 || sgn(q) < 0) return std::nullopt;
        if (sgn(q) > 0) out[cand[i]] = static_cast<int>(q.get_num().get_si());
    }
    return out;
}

Outcome<IntervalCategory::Split> IntervalCategory::decompose(const Rep& m) const {
    std::vector<int> ids;
    auto fp = fingerprint(m);
    bool ok = fp.has_value();
    if (ok) {
        std::vector<int> dims(alg_.size(), 0);
        for (const auto& [id, mult] : *fp) {
            for (int v = start(id); v <= end(id); ++v) dims[v - alg_.lo()] += mult;
            ids.insert(ids.end(), mult, id);
        }
        for (int v = alg_.lo(); v <= alg_.hi() && ok; ++v) ok = dims[v - alg_.lo()] == m.at(v);
    }
    if (!ok) {
        ids.clear();
        for (const auto& [iv, mult] : oracle::barcode(m)) {
            auto id = find(iv.first, iv.second);
            if (!id) return Outcome<Split>::bad(Status::window_error, "summand outside the padded range");
            ids.insert(ids.end(), mult, *id);
        }
    }
    Obj t = make_obj(ids);
    Index ix = make_index(*this, t);
    for (unsigned seed = 1; seed <= 16; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> pick(1, 61);
        RepMap u = zero_map(rep(t), m);
        for (std::size_t p = 0; p < t.size(); ++p) {
            int a = start(t[p]), b = end(t[p]);
            auto ker = kernel(m.path_action(a, b + 1));
            Vec g(m.at(a));
            for (const auto& kv : ker) axpy(g, pick(rng), kv);
            for (int v = a; v <= b; ++v) {
                Vec img = m.path_action(a, v) * g;
                int col = ix.at[v - alg_.lo()][p];
                for (int r = 0; r < m.at(v); ++r) u.at[v - alg_.lo()](r, col) = img[r];
            }
        }
        bool iso = true;
        for (const auto& mv : u.at) iso = iso && mv.rows() == mv.cols() && rank(mv) == mv.rows();
        if (iso) return Outcome<Split>::good(Split{t, u});
    }
    return Outcome<Split>::bad(Status::inconclusive, "no isomorphism found from the decomposition");
}

Vec IntervalCategory::ext_rep(int c, int a, const Vec& coords) const {
    int w = omega_[c];
    if (w < 0) return {};
    Vec out(hom_dim(w, a));
    auto it = ext_q_.find({c, a});
    if (it == ext_q_.end()) return out;
    for (std::size_t e = 0; e < coords.size(); ++e) axpy(out, coords[e], it->second.basis()[e]);
    return out;
}

Vec IntervalCategory::ext_coords(int c, int a, const Vec& hom_vec) const {
    auto it = ext_q_.find({c, a});
    if (it == ext_q_.end()) return {};
    auto x = it->second.coords(hom_vec);
    if (!x) throw std::logic_error("ext_coords: vector outside Hom(Ωc, a)");
    return *x;
}

ExtClass IntervalCategory::ext_push(const Mor& f, const ExtClass& d) const {
    if (f.src != d.a) throw std::invalid_argument("ext_push: map source differs from class target");
    ExtClass out = zero_ext(d.c, f.dst);
    auto ld = ext_layout(d.c, d.a), lo = ext_layout(d.c, f.dst), lf = layout(f.src, f.dst);
    for (std::size_t k = 0; k < d.c.size(); ++k) {
        int w = omega_[d.c[k]];
        if (w < 0) continue;
        for (std::size_t i2 = 0; i2 < f.dst.size(); ++i2) {
            int a2 = f.dst[i2];
            if (!ext_dim(d.c[k], a2)) continue;
            Vec acc(hom_dim(w, a2));
            for (std::size_t i = 0; i < d.a.size(); ++i) {
                int a = d.a[i], e = ext_dim(d.c[k], a);
                if (!e || !hom_dim(a, a2)) continue;
                Vec cls(d.v.begin() + ld[k * d.a.size() + i], d.v.begin() + ld[k * d.a.size() + i] + e);
                Vec phi = ext_rep(d.c[k], a, cls);
                comp_acc(w, a, a2, phi.data(), &f.c[lf[i * f.dst.size() + i2]], acc.data());
            }
            Vec x = ext_coords(d.c[k], a2, acc);
            for (std::size_t r = 0; r < x.size(); ++r) out.v[lo[k * f.dst.size() + i2] + r] = x[r];
        }
    }
    return out;
}

ExtClass IntervalCategory::ext_pull(const ExtClass& d, const Mor& g) const {
    if (g.dst != d.c) throw std::invalid_argument("ext_pull: map target differs from class source");
    ExtClass out = zero_ext(g.src, d.a);
    auto ld = ext_layout(d.c, d.a), lo = ext_layout(g.src, d.a), lg = layout(g.src, g.dst);
    for (std::size_t l = 0; l < g.src.size(); ++l) {
        int c1 = g.src[l], w1 = omega_[c1];
        if (w1 < 0) continue;
        for (std::size_t i = 0; i < d.a.size(); ++i) {
            int a = d.a[i];
            if (!ext_dim(c1, a)) continue;
            Vec acc(hom_dim(w1, a));
            for (std::size_t k = 0; k < d.c.size(); ++k) {
                int c = d.c[k], w = omega_[c], e = ext_dim(c, a);
                if (w < 0 || !e || !hom_dim(c1, c)) continue;
                auto it = omega_map_.find({c1, c});
                if (it == omega_map_.end()) continue;
                Vec om(hom_dim(w1, w));
                for (int q = 0; q < hom_dim(c1, c); ++q) axpy(om, g.c[lg[l * g.dst.size() + k] + q], it->second[q]);
                Vec cls(d.v.begin() + ld[k * d.a.size() + i], d.v.begin() + ld[k * d.a.size() + i] + e);
                Vec phi = ext_rep(c, a, cls);
                comp_acc(w1, w, a, om.data(), phi.data(), acc.data());
            }
            Vec x = ext_coords(c1, a, acc);
            for (std::size_t r = 0; r < x.size(); ++r) out.v[lo[l * d.a.size() + i] + r] = x[r];
        }
    }
    return out;
}

namespace {

Mor unit_block(const Category& cat, const std::vector<int>& src, const std::vector<int>& dst, int i, int j) {
    Mor m = cat.zero(src, dst);
    m.c[cat.layout(src, dst)[i * dst.size() + j]] = 1;
    return m;
}

// per-vertex cokernel of f : x -> y, with the quotient map y -> coker
std::pair<Rep, RepMap> cokernel(const Rep& x, const Rep& y, const RepMap& f) {
    (void)x;
    std::vector<Subquotient> sq;
    Rep c;
    c.lo = y.lo;
    RepMap q;
    for (std::size_t v = 0; v < y.dim.size(); ++v) {
        int n = y.dim[v];
        std::vector<Vec> units, img;
        for (int i = 0; i < n; ++i) {
            Vec e(n);
            e[i] = 1;
            units.push_back(e);
        }
        for (int j = 0; j < f.at[v].cols(); ++j) img.push_back(f.at[v].col(j));
        sq.emplace_back(n, units, img);
        c.dim.push_back(sq.back().dim());
        Mat qm(sq.back().dim(), n);
        for (int i = 0; i < n; ++i) {
            Vec cd = *sq.back().coords(units[i]);
            for (int r = 0; r < qm.rows(); ++r) qm(r, i) = cd[r];
        }
        q.at.push_back(qm);
    }
    for (std::size_t v = 0; v + 1 < y.dim.size(); ++v) {
        Mat a(c.dim[v + 1], c.dim[v]);
        for (int j = 0; j < c.dim[v]; ++j) {
            Vec cd = *sq[v + 1].coords(y.arrow[v] * sq[v].basis()[j]);
            for (int r = 0; r < a.rows(); ++r) a(r, j) = cd[r];
        }
        c.arrow.push_back(a);
    }
    return {c, q};
}

RepMap inverse_map(const RepMap& u) {
    RepMap r;
    for (const auto& m : u.at) r.at.push_back(*inverse(m));
    return r;
}

}  // namespace

bool IntervalCategory::is_inflation(const Mor& f) const {
    RepMap m = rep_map(f);
    Rep a = rep(f.src);
    for (std::size_t v = 0; v < m.at.size(); ++v)
        if (rank(m.at[v]) != a.dim[v]) return false;
    return true;
}

bool IntervalCategory::is_deflation(const Mor& g) const {
    RepMap m = rep_map(g);
    Rep c = rep(g.dst);
    for (std::size_t v = 0; v < m.at.size(); ++v)
        if (rank(m.at[v]) != c.dim[v]) return false;
    return true;
}

Outcome<ETriangle> IntervalCategory::cone(const Mor& f) const {
    if (!is_inflation(f)) return Outcome<ETriangle>::bad(Status::failed, "not an inflation");
    auto [c, q] = cokernel(rep(f.src), rep(f.dst), rep_map(f));
    return finish_cone(f, c, q);
}

Outcome<ETriangle> IntervalCategory::finish_cone(const Mor& f, const Rep& coker, const RepMap& q) const {
    auto sp = decompose(coker);
    if (!sp.ok()) return Outcome<ETriangle>::bad(sp.status, sp.why);
    const Obj& t = sp->obj;
    Mor defl = from_rep_map(f.dst, t, oracle::compose(inverse_map(sp->iso), q));
    ExtClass cls = zero_ext(t, f.src);
    auto lc = ext_layout(t, f.src);
    for (std::size_t j = 0; j < t.size(); ++j) {
        int w = omega_[t[j]], p = pcover_[t[j]];
        if (w == -1) continue;
        if (w == -2 || p < 0) return Outcome<ETriangle>::bad(Status::window_error, "projective cover leaves the padded range");
        auto h = lift(defl, unit_block(*this, {p}, t, 0, static_cast<int>(j)));
        if (!h) return Outcome<ETriangle>::bad(Status::failed, "cover does not lift along the deflation");
        auto phi = lift(f, compose(*h, basis_mor({w}, {p}, 0)));
        if (!phi) return Outcome<ETriangle>::bad(Status::failed, "syzygy map does not factor through the inflation");
        auto lp = layout({w}, f.src);
        for (std::size_t i = 0; i < f.src.size(); ++i) {
            Vec hv(phi->c.begin() + lp[i], phi->c.begin() + lp[i + 1]);
            Vec x = ext_coords(t[j], f.src[i], hv);
            for (std::size_t r = 0; r < x.size(); ++r) cls.v[lc[j * f.src.size() + i] + r] = x[r];
        }
    }
    return Outcome<ETriangle>::good(ETriangle{f.src, f.dst, t, f, defl, cls});
}

Outcome<ETriangle> IntervalCategory::cocone(const Mor& g) const {
    if (!is_deflation(g)) return Outcome<ETriangle>::bad(Status::failed, "not a deflation");
    Rep b = rep(g.src);
    RepMap gm = rep_map(g);
    Rep k;
    k.lo = b.lo;
    RepMap emb;
    for (std::size_t v = 0; v < b.dim.size(); ++v) {
        auto z = kernel(gm.at[v]);
        emb.at.push_back(Mat::from_cols(z, b.dim[v]));
        k.dim.push_back(static_cast<int>(z.size()));
    }
    for (std::size_t v = 0; v + 1 < b.dim.size(); ++v) {
        Mat img = b.arrow[v] * emb.at[v];
        Mat a(k.dim[v + 1], k.dim[v]);
        for (int j = 0; j < img.cols(); ++j) {
            auto x = solve(emb.at[v + 1], img.col(j));
            if (!x) throw std::logic_error("cocone: kernel is not a subrepresentation");
            for (int r = 0; r < a.rows(); ++r) a(r, j) = (*x)[r];
        }
        k.arrow.push_back(a);
    }
    auto sp = decompose(k);
    if (!sp.ok()) return Outcome<ETriangle>::bad(sp.status, sp.why);
    const Obj& t = sp->obj;
    Mor infl = from_rep_map(t, g.src, oracle::compose(emb, sp->iso));
    ExtClass cls = zero_ext(g.dst, t);
    auto lc = ext_layout(g.dst, t);
    for (std::size_t kk = 0; kk < g.dst.size(); ++kk) {
        int w = omega_[g.dst[kk]], p = pcover_[g.dst[kk]];
        if (w == -1) continue;
        if (w == -2 || p < 0) return Outcome<ETriangle>::bad(Status::window_error, "projective cover leaves the padded range");
        auto h = lift(g, unit_block(*this, {p}, g.dst, 0, static_cast<int>(kk)));
        if (!h) return Outcome<ETriangle>::bad(Status::failed, "cover does not lift along the deflation");
        auto phi = lift(infl, compose(*h, basis_mor({w}, {p}, 0)));
        if (!phi) return Outcome<ETriangle>::bad(Status::failed, "syzygy map does not factor through the kernel");
        auto lp = layout({w}, t);
        for (std::size_t j = 0; j < t.size(); ++j) {
            Vec hv(phi->c.begin() + lp[j], phi->c.begin() + lp[j + 1]);
            Vec x = ext_coords(g.dst[kk], t[j], hv);
            for (std::size_t r = 0; r < x.size(); ++r) cls.v[lc[kk * t.size() + j] + r] = x[r];
        }
    }
    return Outcome<ETriangle>::good(ETriangle{t, g.src, g.dst, infl, g, cls});
}

Outcome<ETriangle> IntervalCategory::realize(const ExtClass& d) const {
    const Obj &C = d.c, &A = d.a;
    // B = coker(ΩC -> P_C ⊕ A, (ι, -φ))
    std::vector<int> pc, oc, opos;
    for (std::size_t k = 0; k < C.size(); ++k) {
        int w = omega_[C[k]], p = pcover_[C[k]];
        if (w == -2 || p < 0) return Outcome<ETriangle>::bad(Status::window_error, "projective cover leaves the padded range");
        pc.push_back(p);
        if (w >= 0) {
            oc.push_back(w);
            opos.push_back(static_cast<int>(k));
        }
    }
    std::vector<int> r = pc;
    r.insert(r.end(), A.begin(), A.end());
    Mor phi = zero(oc, r);
    auto lphi = layout(oc, r);
    auto ld = ext_layout(C, A);
    for (std::size_t s = 0; s < oc.size(); ++s) {
        int k = opos[s];
        phi.c[lphi[s * r.size() + k]] = 1;
        for (std::size_t i = 0; i < A.size(); ++i) {
            int e = ext_dim(C[k], A[i]);
            if (!e) continue;
            Vec cls(d.v.begin() + ld[k * A.size() + i], d.v.begin() + ld[k * A.size() + i] + e);
            Vec rep_v = ext_rep(C[k], A[i], cls);
            for (std::size_t t = 0; t < rep_v.size(); ++t) phi.c[lphi[s * r.size() + pc.size() + i] + t] = -rep_v[t];
        }
    }
    auto [m, q] = cokernel(rep(oc), rep(r), rep_map(phi));
    auto sp = decompose(m);
    if (!sp.ok()) return Outcome<ETriangle>::bad(sp.status, sp.why);
    const Obj& t = sp->obj;
    RepMap uinv = inverse_map(sp->iso);

    Mor inc = zero(A, r);
    auto linc = layout(A, r);
    for (std::size_t i = 0; i < A.size(); ++i) inc.c[linc[i * r.size() + pc.size() + i]] = 1;
    Mor infl = from_rep_map(A, t, oracle::compose(uinv, oracle::compose(q, rep_map(inc))));

    Mor pr = zero(r, C);
    auto lpr = layout(r, C);
    for (std::size_t k = 0; k < C.size(); ++k) pr.c[lpr[k * C.size() + k]] = 1;
    RepMap prm = rep_map(pr);
    // the projection kills the relations, so it descends to the cokernel basis
    RepMap down;
    Rep rr = rep(r);
    for (std::size_t v = 0; v < m.dim.size(); ++v) {
        std::vector<Vec> units, img;
        for (int i = 0; i < rr.dim[v]; ++i) {
            Vec e(rr.dim[v]);
            e[i] = 1;
            units.push_back(e);
        }
        Mat qv = q.at[v];
        // a section of q: pick preimages of the cokernel basis among unit vectors
        Mat sec(rr.dim[v], m.dim[v]);
        Span seen(m.dim[v], rr.dim[v]);
        for (int i = 0; i < rr.dim[v] && seen.dim() < m.dim[v]; ++i) seen.add(qv.col(i), units[i]);
        for (int j = 0; j < m.dim[v]; ++j) {
            Vec tag;
            Vec e(m.dim[v]);
            e[j] = 1;
            seen.reduce(e, &tag);
            for (int i = 0; i < rr.dim[v]; ++i) sec(i, j) = tag[i];
        }
        down.at.push_back(prm.at[v] * sec);
    }
    Mor defl = from_rep_map(t, C, oracle::compose(down, sp->iso));
    return Outcome<ETriangle>::good(ETriangle{A, t, C, infl, defl, d});
}

std::vector<int> IntervalCategory::projectives() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
        if (pcover_[x] == x) out.push_back(x);
    return out;
}

std::vector<int> IntervalCategory::injectives() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
        if (ihull_[x] == x) out.push_back(x);
    return out;
}

}  // namespace twin
