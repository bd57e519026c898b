#include "twin/derived.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace twin {

using oracle::PComplex;
using oracle::PHom;
using oracle::PMap;

namespace {

PComplex canonical(const oracle::LineAlgebra& alg, int a, int b, int k) {
    return oracle::shift(oracle::resolution(alg, oracle::interval_rep(alg, a, b), alg.size()), k);
}

bool acyclic(const oracle::LineAlgebra& alg, const PComplex& c) {
    auto rc = oracle::to_rep(alg, c);
    for (const auto& [k, t] : rc.term)
        for (int h : oracle::homology_dims(rc, k))
            if (h) return false;
    return true;
}

// per degree, the offset of each summand's term inside the direct sum of models
std::map<int, std::vector<int>> offsets(const std::vector<const PComplex*>& parts) {
    std::map<int, std::vector<int>> off;
    for (const auto* p : parts)
        for (const auto& [k, t] : p->terms) off[k];
    for (auto& [k, v] : off) {
        int o = 0;
        for (const auto* p : parts) {
            v.push_back(o);
            o += static_cast<int>(p->term(k).size());
        }
    }
    return off;
}

}  // namespace

DerivedAn::DerivedAn(int n, int x_min, int x_max, int core_margin)
    : n_(n), xmin_(x_min), xmax_(x_max), pad_(n + 1), alg_(oracle::LineAlgebra::type_a(n)) {
    if (n < 1 || x_max < x_min) throw std::invalid_argument("DerivedAn: bad window");
    if (2 * core_margin > x_max - x_min) throw std::invalid_argument("DerivedAn: core margin swallows the window");
    knit(x_min - pad_, x_max + pad_);
    for (auto& x : ind_) {
        int cx = x.coords[0];
        x.window = cx >= x_min && cx <= x_max;
        x.core = cx >= x_min + core_margin && cx <= x_max - core_margin;
    }
    build_tables();
}

std::optional<DerivedAn::Chart> DerivedAn::identify(const PComplex& c) const {
    auto rc = oracle::to_rep(alg_, c);
    std::optional<Chart> found;
    for (const auto& [d, t] : rc.term) {
        auto hd = oracle::homology_dims(rc, d);
        if (std::all_of(hd.begin(), hd.end(), [](int h) { return h == 0; })) continue;
        if (found) return std::nullopt;
        auto bars = oracle::barcode(oracle::homology(rc, d));
        if (bars.size() != 1 || bars.begin()->second != 1) return std::nullopt;
        found = Chart{bars.begin()->first.first, bars.begin()->first.second, -d};
    }
    return found;
}

void DerivedAn::knit(int x_lo, int x_hi) {
    std::map<std::pair<int, int>, std::pair<Chart, PComplex>> mesh;
    auto put = [&](int x, int r, const Chart& c) { mesh[{x, r}] = {c, canonical(alg_, c.a, c.b, c.k)}; };
    auto basis_map = [&](const PComplex& s, const PComplex& t) {
        PHom h(alg_, s, t);
        if (h.dim() != 1) throw std::logic_error("knitting: irreducible map space is not one-dimensional");
        return h.basis_map(0);
    };
    for (int r = 1; r <= n_; ++r) put(0, r, Chart{n_ + 1 - r, n_, 0});

    // τ^{-1}(x,r) = cone of the mesh map out of (x,r)
    for (int x = 0; x < std::max(x_hi, 0); ++x)
        for (int r = 1; r <= n_; ++r) {
            const PComplex& src = mesh.at({x, r}).second;
            std::vector<const PComplex*> parts;
            if (r < n_) parts.push_back(&mesh.at({x, r + 1}).second);
            if (r > 1) parts.push_back(&mesh.at({x + 1, r - 1}).second);
            PComplex mid = oracle::direct_sum(parts);
            PMap f = oracle::zero_pmap(src, mid);
            for (std::size_t i = 0; i < parts.size(); ++i)
                f = oracle::add(f, oracle::compose(alg_, oracle::injection(parts, static_cast<int>(i)),
                                                   basis_map(src, *parts[i]), src, mid));
            auto c = identify(oracle::cone(src, mid, f));
            if (!c) throw std::logic_error("knitting: mesh cone is not indecomposable");
            put(x + 1, r, *c);
        }
    // τ(x,r) = cocone of the mesh map into (x,r)
    for (int x = 0; x > std::min(x_lo, 0); --x)
        for (int r = n_; r >= 1; --r) {
            const PComplex& tgt = mesh.at({x, r}).second;
            std::vector<const PComplex*> parts;
            if (r > 1) parts.push_back(&mesh.at({x, r - 1}).second);
            if (r < n_) parts.push_back(&mesh.at({x - 1, r + 1}).second);
            PComplex mid = oracle::direct_sum(parts);
            PMap g = oracle::zero_pmap(mid, tgt);
            for (std::size_t i = 0; i < parts.size(); ++i)
                g = oracle::add(g, oracle::compose(alg_, basis_map(*parts[i], tgt),
                                                   oracle::projection(parts, static_cast<int>(i)), mid, tgt));
            auto c = identify(oracle::shift(oracle::cone(mid, tgt, g), -1));
            if (!c) throw std::logic_error("knitting: mesh cocone is not indecomposable");
            put(x - 1, r, *c);
        }

    for (const auto& [key, v] : mesh) {
        if (key.first < x_lo || key.first > x_hi) continue;
        Indec d;
        d.id = size();
        d.coords = {key.first, key.second};
        d.label = "(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
        ind_.push_back(d);
        chart_.push_back(v.first);
        model_.push_back(v.second);
        by_chart_[{v.first.a, v.first.b, v.first.k}] = d.id;
    }
}

void DerivedAn::build_tables() {
    init_tables();
    int N = size();
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            int i = x(q) - x(p), r = row(p);
            int j = row(q) - r + i;
            if (i >= 0 && i <= r - 1 && j >= 0 && j <= n_ - r) set_hom(p, q, 1);
        }
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            if (!hom_dim(p, q)) continue;
            PHom h(alg_, model_[p], model_[q], p == q);
            if (h.dim() != hom_dim(p, q))
                throw std::logic_error("hammock dimension disagrees with chain maps at " + ind_[p].label + " -> " +
                                       ind_[q].label);
            std::vector<PMap> maps;
            for (int e = 0; e < h.dim(); ++e) maps.push_back(h.basis_map(e));
            basis_[{p, q}] = std::move(maps);
            phom_.emplace(std::make_pair(p, q), std::move(h));
        }
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            if (!hom_dim(p, q)) continue;
            for (int r = 0; r < N; ++r) {
                if (!hom_dim(q, r) || !hom_dim(p, r)) continue;
                std::vector<Term> terms;
                const auto& hpr = phom_.at({p, r});
                for (int s = 0; s < hom_dim(p, q); ++s)
                    for (int t = 0; t < hom_dim(q, r); ++t) {
                        PMap m = oracle::compose(alg_, basis_.at({q, r})[t], basis_.at({p, q})[s], model_[p], model_[r]);
                        auto c = hpr.coords(m);
                        if (!c) throw std::logic_error("composite is not a chain map");
                        for (int u = 0; u < hom_dim(p, r); ++u)
                            if (sgn((*c)[u]) != 0) terms.push_back(Term{s, t, u, (*c)[u]});
                    }
                set_comp(p, q, r, std::move(terms));
            }
        }

    shift_.assign(N, -1);
    unshift_.assign(N, -1);
    for (int p = 0; p < N; ++p) {
        auto c = identify(oracle::shift(model_[p], 1));
        if (!c) throw std::logic_error("shift of an indecomposable is decomposable");
        if (auto q = from_chart(c->a, c->b, c->k)) {
            shift_[p] = *q;
            unshift_[*q] = p;
        }
    }
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            if (!hom_dim(p, q) || shift_[p] < 0 || shift_[q] < 0) continue;
            const auto& h1 = phom_.at({shift_[p], shift_[q]});
            Mat m(hom_dim(p, q), hom_dim(p, q));
            for (int e = 0; e < hom_dim(p, q); ++e) {
                auto c = h1.coords(oracle::shift(basis_.at({p, q})[e], 1));
                if (!c) throw std::logic_error("shifted basis map is not a chain map");
                for (int r = 0; r < m.rows(); ++r) m(r, e) = (*c)[r];
            }
            shift_mat_[{p, q}] = m;
        }
    for (int c = 0; c < N; ++c)
        for (int a = 0; a < N; ++a)
            if (shift_[a] >= 0) set_ext(c, a, hom_dim(c, shift_[a]));
}

std::optional<int> DerivedAn::from_chart(int a, int b, int k) const {
    auto it = by_chart_.find({a, b, k});
    if (it == by_chart_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> DerivedAn::shift(int id, int s) const {
    int cur = id;
    for (int i = 0; i < std::abs(s) && cur >= 0; ++i) cur = s > 0 ? shift_[cur] : unshift_[cur];
    if (cur < 0) return std::nullopt;
    return cur;
}

std::optional<int> DerivedAn::tau(int id, int s) const { return find(x(id) - s, row(id)); }

std::optional<int> DerivedAn::ext2_dim(int c, int a) const {
    auto a2 = shift(a, 2);
    if (!a2) return std::nullopt;
    return hom_dim(c, *a2);
}

PComplex DerivedAn::model(const Obj& x) const {
    std::vector<const PComplex*> parts;
    for (int i : x) parts.push_back(&model_[i]);
    return oracle::direct_sum(parts);
}

PMap DerivedAn::model_map(const Mor& f) const {
    std::vector<const PComplex*> sp, dp;
    for (int i : f.src) sp.push_back(&model_[i]);
    for (int j : f.dst) dp.push_back(&model_[j]);
    PComplex s = oracle::direct_sum(sp), d = oracle::direct_sum(dp);
    auto so = offsets(sp), dof = offsets(dp);
    PMap m = oracle::zero_pmap(s, d);
    auto off = layout(f.src, f.dst);
    for (std::size_t i = 0; i < f.src.size(); ++i)
        for (std::size_t j = 0; j < f.dst.size(); ++j) {
            int h = hom_dim(f.src[i], f.dst[j]);
            if (!h) continue;
            const auto& maps = basis_.at({f.src[i], f.dst[j]});
            for (int e = 0; e < h; ++e) {
                const Q& c = f.c[off[i * f.dst.size() + j] + e];
                if (sgn(c) == 0) continue;
                for (const auto& [k, bm] : maps[e].f) {
                    auto& target = m.f[k];
                    int r0 = dof.at(k)[j], c0 = so.at(k)[i];
                    for (int r = 0; r < bm.rows(); ++r)
                        for (int cc = 0; cc < bm.cols(); ++cc)
                            if (sgn(bm(r, cc)) != 0) target(r0 + r, c0 + cc) += c * bm(r, cc);
                }
            }
        }
    return m;
}

Mor DerivedAn::coefficients(const Obj& src, const Obj& dst, const PMap& m) const {
    std::vector<const PComplex*> sp, dp;
    for (int i : src) sp.push_back(&model_[i]);
    for (int j : dst) dp.push_back(&model_[j]);
    auto so = offsets(sp), dof = offsets(dp);
    Mor f = zero(src, dst);
    auto off = layout(src, dst);
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j) {
            if (!hom_dim(src[i], dst[j])) continue;
            const PComplex &a = model_[src[i]], &b = model_[dst[j]];
            PMap blk;
            for (const auto& [k, t] : a.terms) {
                if (b.term(k).empty()) continue;
                auto it = m.f.find(k);
                if (it == m.f.end()) continue;
                blk.f[k] = it->second.block(dof.at(k)[j], so.at(k)[i], static_cast<int>(b.term(k).size()),
                                             static_cast<int>(t.size()));
            }
            auto c = phom_.at({src[i], dst[j]}).coords(blk);
            if (!c) throw std::logic_error("coefficients: block is not a chain map");
            for (std::size_t e = 0; e < c->size(); ++e) f.c[off[i * dst.size() + j] + e] = (*c)[e];
        }
    return f;
}

Obj DerivedAn::shift_obj(const Obj& a, int s) const {
    Obj out;
    for (int i : a) {
        auto t = shift(i, s);
        if (!t) throw std::out_of_range("shift leaves the window at " + ind_[i].label);
        out.push_back(*t);
    }
    return make_obj(out);
}

namespace {

// position of each shifted summand inside the sorted shifted object
std::vector<int> shifted_positions(const std::vector<int>& shifted) {
    std::vector<std::pair<int, int>> tagged;
    for (std::size_t i = 0; i < shifted.size(); ++i) tagged.emplace_back(shifted[i], static_cast<int>(i));
    std::sort(tagged.begin(), tagged.end());
    std::vector<int> pos(shifted.size());
    for (std::size_t p = 0; p < tagged.size(); ++p) pos[tagged[p].second] = static_cast<int>(p);
    return pos;
}

}  // namespace

Mor DerivedAn::ext_as_mor(const ExtClass& d) const {
    std::vector<int> sh;
    for (int i : d.a) sh.push_back(*shift(i, 1));
    auto pos = shifted_positions(sh);
    Obj a1 = make_obj(sh);
    Mor m = zero(d.c, a1);
    auto lm = layout(d.c, a1), ld = ext_layout(d.c, d.a);
    for (std::size_t k = 0; k < d.c.size(); ++k)
        for (std::size_t i = 0; i < d.a.size(); ++i)
            for (int e = 0; e < ext_dim(d.c[k], d.a[i]); ++e)
                m.c[lm[k * a1.size() + pos[i]] + e] = d.v[ld[k * d.a.size() + i] + e];
    return m;
}

ExtClass DerivedAn::mor_as_ext(const Mor& m, const Obj& a) const {
    std::vector<int> sh;
    for (int i : a) sh.push_back(*shift(i, 1));
    auto pos = shifted_positions(sh);
    if (make_obj(sh) != m.dst) throw std::invalid_argument("mor_as_ext: target is not A[1]");
    ExtClass d = zero_ext(m.src, a);
    auto lm = layout(m.src, m.dst), ld = ext_layout(m.src, a);
    for (std::size_t k = 0; k < m.src.size(); ++k)
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int e = 0; e < ext_dim(m.src[k], a[i]); ++e)
                d.v[ld[k * a.size() + i] + e] = m.c[lm[k * m.dst.size() + pos[i]] + e];
    return d;
}

ExtClass DerivedAn::ext_push(const Mor& f, const ExtClass& d) const {
    if (f.src != d.a) throw std::invalid_argument("ext_push: map source differs from class target");
    ExtClass out = zero_ext(d.c, f.dst);
    auto ld = ext_layout(d.c, d.a), lo = ext_layout(d.c, f.dst), lf = layout(f.src, f.dst);
    for (std::size_t k = 0; k < d.c.size(); ++k)
        for (std::size_t i = 0; i < d.a.size(); ++i) {
            int a = d.a[i], e = ext_dim(d.c[k], a);
            if (!e) continue;
            for (std::size_t i2 = 0; i2 < f.dst.size(); ++i2) {
                int a2 = f.dst[i2], h = hom_dim(a, a2);
                if (!h || !ext_dim(d.c[k], a2)) continue;
                Vec fv(f.c.begin() + lf[i * f.dst.size() + i2], f.c.begin() + lf[i * f.dst.size() + i2] + h);
                Vec sf = shift_mat_.at({a, a2}) * fv;
                comp_acc(d.c[k], shift_[a], shift_[a2], &d.v[ld[k * d.a.size() + i]], sf.data(),
                         &out.v[lo[k * f.dst.size() + i2]]);
            }
        }
    return out;
}

ExtClass DerivedAn::ext_pull(const ExtClass& d, const Mor& g) const {
    if (g.dst != d.c) throw std::invalid_argument("ext_pull: map target differs from class source");
    ExtClass out = zero_ext(g.src, d.a);
    auto ld = ext_layout(d.c, d.a), lo = ext_layout(g.src, d.a), lg = layout(g.src, g.dst);
    for (std::size_t l = 0; l < g.src.size(); ++l)
        for (std::size_t k = 0; k < d.c.size(); ++k) {
            if (!hom_dim(g.src[l], d.c[k])) continue;
            for (std::size_t i = 0; i < d.a.size(); ++i) {
                if (!ext_dim(d.c[k], d.a[i]) || !ext_dim(g.src[l], d.a[i])) continue;
                comp_acc(g.src[l], d.c[k], shift_[d.a[i]], &g.c[lg[l * g.dst.size() + k]], &d.v[ld[k * d.a.size() + i]],
                         &out.v[lo[l * d.a.size() + i]]);
            }
        }
    return out;
}

std::optional<std::map<int, int>> DerivedAn::fingerprint(const PComplex& raw) const {
    auto rc = oracle::to_rep(alg_, raw);
    std::vector<int> cand;
    for (const auto& [d, t] : rc.term) {
        auto hd = oracle::homology_dims(rc, d);
        for (int a = 1; a <= n_; ++a)
            for (int b = a; b <= n_ && hd[b - 1] > 0; ++b)
                if (auto id = from_chart(a, b, -d)) cand.push_back(*id);
    }
    int k = static_cast<int>(cand.size());
    Mat h(k, k);
    Vec f(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) h(i, j) = hom_dim(cand[i], cand[j]);
        f[i] = PHom(alg_, model_[cand[i]], raw).dim();
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

Outcome<DerivedAn::Split> DerivedAn::decompose(const PComplex& raw) const {
    auto rc = oracle::to_rep(alg_, raw);
    std::map<int, std::vector<int>> want;
    for (const auto& [d, t] : rc.term) want[d] = oracle::homology_dims(rc, d);

    std::vector<int> ids;
    auto fp = fingerprint(raw);
    bool ok = fp.has_value();
    if (ok) {
        std::map<int, std::vector<int>> got;
        for (const auto& [d, v] : want) got[d].assign(n_, 0);
        for (const auto& [id, mult] : *fp) {
            int d = -chart_[id].k;
            if (!got.count(d)) got[d].assign(n_, 0);
            for (int v = chart_[id].a; v <= chart_[id].b; ++v) got[d][v - 1] += mult;
            ids.insert(ids.end(), mult, id);
        }
        for (auto& [d, v] : want)
            if (got[d] != v) ok = false;
        for (const auto& [d, v] : got)
            if (!want.count(d) && std::any_of(v.begin(), v.end(), [](int h) { return h != 0; })) ok = false;
    }
    if (!ok) {
        ids.clear();
        for (const auto& [d, t] : rc.term)
            for (const auto& [iv, mult] : oracle::barcode(oracle::homology(rc, d))) {
                auto id = from_chart(iv.first, iv.second, -d);
                if (!id) return Outcome<Split>::bad(Status::window_error, "summand outside the padded window");
                ids.insert(ids.end(), mult, *id);
            }
    }
    Obj t = make_obj(ids);
    std::vector<const PComplex*> parts;
    for (int i : t) parts.push_back(&model_[i]);
    PComplex mt = oracle::direct_sum(parts);
    std::map<int, PHom> into;
    for (int i : t)
        if (!into.count(i)) into.emplace(i, PHom(alg_, model_[i], raw));
    for (unsigned seed = 1; seed <= 16; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> pick(1, 61);
        PMap u = oracle::zero_pmap(mt, raw);
        for (std::size_t p = 0; p < t.size(); ++p) {
            const PHom& h = into.at(t[p]);
            PMap comp = oracle::zero_pmap(model_[t[p]], raw);
            for (int e = 0; e < h.dim(); ++e) comp = oracle::add(comp, oracle::scale(h.basis_map(e), pick(rng)));
            u = oracle::add(u, oracle::compose(alg_, comp, oracle::projection(parts, static_cast<int>(p)), mt, raw));
        }
        if (acyclic(alg_, oracle::cone(mt, raw, u))) return Outcome<Split>::good(Split{t, u});
    }
    return Outcome<Split>::bad(Status::inconclusive, "no isomorphism found from the decomposition");
}

std::optional<Mor> DerivedAn::solve_through(const Obj& src, const Split& sp, const PComplex& target,
                                            const PMap& h) const {
    PComplex ms = model(src);
    PHom ph(alg_, ms, target);
    auto rhs = ph.coords(h);
    if (!rhs) throw std::logic_error("solve_through: right-hand side is not a chain map");
    int nb = hom_dim(src, sp.obj);
    Mat a(ph.dim(), nb);
    for (int e = 0; e < nb; ++e) {
        PMap ue = oracle::compose(alg_, sp.iso, model_map(basis_mor(src, sp.obj, e)), ms, target);
        auto c = ph.coords(ue);
        if (!c) throw std::logic_error("solve_through: composite is not a chain map");
        for (int r = 0; r < a.rows(); ++r) a(r, e) = (*c)[r];
    }
    auto x = solve(a, *rhs);
    if (!x) return std::nullopt;
    return Mor{src, sp.obj, *x};
}

Outcome<ETriangle> DerivedAn::cone(const Mor& f) const {
    std::vector<int> a1;
    for (int i : f.src) {
        auto s = shift(i, 1);
        if (!s) return Outcome<ETriangle>::bad(Status::window_error, "shift leaves the window");
        a1.push_back(*s);
    }
    PComplex X = model(f.src), Y = model(f.dst);
    PComplex C = oracle::cone(X, Y, model_map(f));
    auto sp = decompose(C);
    if (!sp.ok()) return Outcome<ETriangle>::bad(sp.status, sp.why);
    auto g = solve_through(f.dst, *sp, C, oracle::cone_in(X, Y));
    if (!g) return Outcome<ETriangle>::bad(Status::failed, "cone inclusion does not factor");
    PMap d = oracle::compose(alg_, oracle::cone_out(X, Y), sp->iso, model(sp->obj), C);
    Mor dm = coefficients(sp->obj, a1, d);
    ExtClass cls{sp->obj, f.src, dm.c};
    return Outcome<ETriangle>::good(ETriangle{f.src, f.dst, sp->obj, f, *g, cls});
}

Outcome<ETriangle> DerivedAn::cocone(const Mor& g) const {
    PComplex X = model(g.src), Y = model(g.dst);
    PComplex K = oracle::cone(X, Y, model_map(g));
    PComplex D = oracle::shift(K, -1);
    auto sp = decompose(D);
    if (!sp.ok()) return Outcome<ETriangle>::bad(sp.status, sp.why);
    const Obj& t = sp->obj;
    std::vector<int> t1;
    for (int i : t) {
        auto s = shift(i, 1);
        if (!s) return Outcome<ETriangle>::bad(Status::window_error, "shift leaves the window");
        t1.push_back(*s);
    }
    PMap p = oracle::shift(oracle::cone_out(X, Y), -1);
    Mor infl = coefficients(t, g.src, oracle::compose(alg_, p, sp->iso, model(t), X));
    Split sp1{t1, oracle::shift(sp->iso, 1)};
    auto d = solve_through(g.dst, sp1, K, oracle::cone_in(X, Y));
    if (!d) return Outcome<ETriangle>::bad(Status::failed, "connecting map does not factor");
    return Outcome<ETriangle>::good(ETriangle{t, g.src, g.dst, infl, g, ExtClass{g.dst, t, d->c}});
}

Outcome<ETriangle> DerivedAn::realize(const ExtClass& dl) const {
    std::vector<int> a1;
    for (int i : dl.a) {
        auto s = shift(i, 1);
        if (!s) return Outcome<ETriangle>::bad(Status::window_error, "shift leaves the window");
        a1.push_back(*s);
    }
    PComplex Xc = model(dl.c), Ya = model(a1);
    PComplex K = oracle::cone(Xc, Ya, model_map(Mor{dl.c, a1, dl.v}));
    PComplex B = oracle::shift(K, -1);
    auto sp = decompose(B);
    if (!sp.ok()) return Outcome<ETriangle>::bad(sp.status, sp.why);
    PMap incl = oracle::shift(oracle::cone_in(Xc, Ya), -1);
    auto infl = solve_through(dl.a, *sp, B, incl);
    if (!infl) return Outcome<ETriangle>::bad(Status::failed, "inclusion does not factor");
    PMap proj = oracle::shift(oracle::cone_out(Xc, Ya), -1);
    Mor defl = coefficients(sp->obj, dl.c, oracle::compose(alg_, proj, sp->iso, model(sp->obj), Xc));
    return Outcome<ETriangle>::good(ETriangle{dl.a, sp->obj, dl.c, *infl, defl, dl});
}

}  // namespace twin
