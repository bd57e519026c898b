#include "twin/quotient.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "twin/approx.hpp"

namespace twin {

StableHom::StableHom(const Category& cat, const Obj& a, const Obj& b, const Subcat& w)
    : n_(cat.hom_dim(a, b)), sub_(n_) {
    if (!n_) return;
    for (int x : w.ids) {
        int h1 = cat.hom_dim(a, Obj{x}), h2 = cat.hom_dim(Obj{x}, b);
        if (!h1 || !h2) continue;
        for (int p = 0; p < h1; ++p) {
            Mor in = cat.basis_mor(a, {x}, p);
            for (int q = 0; q < h2; ++q) {
                Vec v = cat.compose(cat.basis_mor({x}, b, q), in).c;
                if (sub_.add(v)) gens_.push_back(v);
            }
        }
    }
}

std::optional<Mor> stable_inverse(const Category& cat, const Mor& f, const Subcat& w) {
    const Obj &a = f.src, &b = f.dst;
    StableHom sa(cat, a, a, w), sb(cat, b, b, w);
    int m = cat.hom_dim(b, a), ra = cat.hom_dim(a, a), rb = cat.hom_dim(b, b);
    int k1 = static_cast<int>(sa.generators().size()), k2 = static_cast<int>(sb.generators().size());
    if (ra + rb == 0) return cat.zero(b, a);
    // psi ∘ f - Σ λ w = 1_A and f ∘ psi - Σ μ w' = 1_B
    Mat sys(ra + rb, m + k1 + k2);
    sys.put(0, 0, cat.precomp_matrix(f, a));
    sys.put(ra, 0, cat.postcomp_matrix(f, b));
    for (int k = 0; k < k1; ++k)
        for (int i = 0; i < ra; ++i) sys(i, m + k) = -sa.generators()[k][i];
    for (int k = 0; k < k2; ++k)
        for (int i = 0; i < rb; ++i) sys(ra + i, m + k1 + k) = -sb.generators()[k][i];
    Vec rhs(ra + rb);
    Vec ia = cat.identity(a).c, ib = cat.identity(b).c;
    std::copy(ia.begin(), ia.end(), rhs.begin());
    std::copy(ib.begin(), ib.end(), rhs.begin() + ra);
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    Mor psi = cat.zero(b, a);
    std::copy(sol->begin(), sol->begin() + m, psi.c.begin());
    return psi;
}

namespace {

// phi : src -> dst with phi ∘ f = r1 and g ∘ phi = r2
std::optional<Mor> solve_two(const Category& cat, const Obj& src, const Obj& dst, const Mor& f, const Mor& r1,
                             const Mor& g, const Mor& r2) {
    Mat m1 = cat.precomp_matrix(f, dst), m2 = cat.postcomp_matrix(g, src);
    Mat sys = vstack(m1, m2);
    Vec rhs = r1.c;
    rhs.insert(rhs.end(), r2.c.begin(), r2.c.end());
    int n = cat.hom_dim(src, dst);
    if (sys.rows() == 0) return cat.zero(src, dst);
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    Mor phi = cat.zero(src, dst);
    std::copy(sol->begin(), sol->begin() + n, phi.c.begin());
    return phi;
}

Vec random_combination(const std::vector<Vec>& basis, int n, unsigned seed) {
    Vec v(n);
    if (basis.empty()) return v;
    std::mt19937 rng(seed * 2654435761u + 17);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const auto& b : basis) axpy(v, coef(rng), b);
    return v;
}

Obj minus_ids(const Obj& a, const Subcat& s) {
    Obj r;
    for (int i : a)
        if (!s.has(i)) r.push_back(i);
    return r;
}

bool same(const Category& cat, const Mor& f, const Mor& g) { return cat.is_zero(cat.sub(f, g)); }

}  // namespace

GFunctor::GFunctor(const Category& cat, const TwinCertificate& twin, Exec ex) : cat_(cat), twin_(twin) {
    table_.resize(cat.size());
    for_each_index(cat.size(), ex, [&](int i) { table_[i] = build(i); });
}

GEntry GFunctor::build(int id) const {
    GEntry e;
    e.b = {id};
    e.v = *min_left_approx(cat_, e.b, twin_.v());
    e.z = cat_.identity({});
    auto bad = [&](Status s, std::string why) {
        e.status = s;
        e.why = std::move(why);
        return e;
    };
    if (!cat_.is_inflation(e.v)) return bad(Status::failed, "v_B is not an inflation");
    auto t1 = cat_.cone(e.v);
    if (!t1.ok()) return bad(t1.status, "cone of v_B: " + t1.why);
    e.xb = t1->c;
    if (!twin_.x().has(e.xb)) return bad(Status::failed, "X_B outside X");
    e.z = *min_right_approx(cat_, e.v.dst, twin_.u());
    if (!cat_.is_deflation(e.z)) return bad(Status::failed, "z_B is not a deflation");
    auto t2 = cat_.cocone(e.z);
    if (!t2.ok()) return bad(t2.status, "cocone of z_B: " + t2.why);
    e.yb = t2->a;
    if (!twin_.y().has(e.yb)) return bad(Status::failed, "Y^B outside Y");
    if (!twin_.z.has(e.z.src)) return bad(Status::failed, "Z_B outside Z");
    return e;
}

Outcome<GEntry> GFunctor::entry(const Obj& b) const {
    GEntry e;
    e.v = cat_.identity({});
    e.z = cat_.identity({});
    for (int i : b) {
        const GEntry& p = table_[i];
        if (p.status != Status::ok) return Outcome<GEntry>::bad(p.status, cat_.indec(i).label + ": " + p.why);
        e.b = obj_sum(e.b, p.b);
        e.v = cat_.direct_sum(e.v, p.v);
        e.z = cat_.direct_sum(e.z, p.z);
        e.xb = obj_sum(e.xb, p.xb);
        e.yb = obj_sum(e.yb, p.yb);
    }
    return Outcome<GEntry>::good(e);
}

Outcome<Obj> GFunctor::object(const Obj& b) const {
    auto e = entry(b);
    if (!e.ok()) return Outcome<Obj>::bad(e.status, e.why);
    return Outcome<Obj>::good(e->zb());
}

Outcome<GFunctor::Lifts> GFunctor::lifts(const Mor& f, unsigned alt) const {
    auto eb = entry(f.src), ec = entry(f.dst);
    if (!eb.ok()) return Outcome<Lifts>::bad(eb.status, eb.why);
    if (!ec.ok()) return Outcome<Lifts>::bad(ec.status, ec.why);
    auto vf = cat_.extend(eb->v, cat_.compose(ec->v, f));
    if (!vf) return Outcome<Lifts>::bad(Status::failed, "v_f does not exist");
    if (alt) {
        auto ker = kernel(cat_.precomp_matrix(eb->v, ec->vb()));
        axpy(vf->c, 1, random_combination(ker, static_cast<int>(vf->c.size()), alt));
    }
    auto zf = cat_.lift(ec->z, cat_.compose(*vf, eb->z));
    if (!zf) return Outcome<Lifts>::bad(Status::failed, "z_f does not exist");
    if (alt) {
        auto ker = kernel(cat_.postcomp_matrix(ec->z, eb->zb()));
        axpy(zf->c, 1, random_combination(ker, static_cast<int>(zf->c.size()), alt + 1000));
    }
    return Outcome<Lifts>::good(Lifts{*vf, *zf});
}

Outcome<Mor> GFunctor::map(const Mor& f, unsigned alt) const {
    auto l = lifts(f, alt);
    if (!l.ok()) return Outcome<Mor>::bad(l.status, l.why);
    return Outcome<Mor>::good(l->zf);
}

bool GFunctor::stably_equal(const Mor& f, const Mor& g) const {
    return StableHom(cat_, f.src, f.dst, w()).equal(f, g);
}

bool GFunctor::stably_invertible(const Mor& f) const { return stable_inverse(cat_, f, w()).has_value(); }

Outcome<bool> GFunctor::inverts(const Mor& f) const {
    auto g = map(f);
    if (!g.ok()) return Outcome<bool>::bad(g.status, g.why);
    return Outcome<bool>::good(stably_invertible(*g));
}

Outcome<Obj> GFunctor::essential(const Obj& b) const {
    auto z = object(b);
    if (!z.ok()) return z;
    return Outcome<Obj>::good(minus_ids(*z, w()));
}

const char* to_string(MorClass c) {
    switch (c) {
        case MorClass::R: return "R";
        case MorClass::W1: return "W1";
        case MorClass::W2: return "W2";
        case MorClass::W: return "W";
        case MorClass::V1: return "V1";
        case MorClass::V2: return "V2";
        case MorClass::V: return "V";
    }
    return "?";
}

namespace {

Verdict cone_in(const Category& cat, const Mor& f, const Subcat& s) {
    if (!cat.is_inflation(f)) return Verdict::no;
    auto t = cat.cone(f);
    if (!t.ok()) return Verdict::unknown;
    return s.has(t->c) ? Verdict::yes : Verdict::no;
}

Verdict cocone_in(const Category& cat, const Mor& f, const Subcat& s) {
    if (!cat.is_deflation(f)) return Verdict::no;
    auto t = cat.cocone(f);
    if (!t.ok()) return Verdict::unknown;
    return s.has(t->a) ? Verdict::yes : Verdict::no;
}

Verdict both(Verdict a, Verdict b) {
    if (a == Verdict::no || b == Verdict::no) return Verdict::no;
    if (a == Verdict::unknown || b == Verdict::unknown) return Verdict::unknown;
    return Verdict::yes;
}

}  // namespace

Verdict class_membership(const Category& cat, const Mor& f, MorClass cls, const TwinCertificate& twin,
                         const Subcat& s) {
    switch (cls) {
        case MorClass::R: return cone_in(cat, f, s);
        case MorClass::W1: return cone_in(cat, f, twin.x());
        case MorClass::W2: return cocone_in(cat, f, twin.y());
        case MorClass::V1:
            return twin.v().has(f.dst) ? cone_in(cat, f, twin.x()) : Verdict::no;
        case MorClass::V2:
            return twin.u().has(f.src) ? cocone_in(cat, f, twin.y()) : Verdict::no;
        case MorClass::W: {
            if (cone_in(cat, f, twin.x()) == Verdict::yes) return Verdict::yes;       // f ∘ 1
            if (cocone_in(cat, f, twin.y()) == Verdict::yes) return Verdict::yes;     // 1 ∘ f
            if (cone_in(cat, f, s) == Verdict::yes) {
                auto fac = factor_r_through_w(cat, f, twin, s);
                if (fac.ok() && same(cat, cat.compose(fac->second, fac->first), f) &&
                    both(cone_in(cat, fac->first, twin.x()), cocone_in(cat, fac->second, twin.y())) == Verdict::yes)
                    return Verdict::yes;
            }
            // (f, y_A) : A -> B ⊕ Y_A followed by the projection, whose cocone Y_A lies in Y
            Mor y = *min_left_approx(cat, f.src, twin.y());
            Mor h = cat.pair_to(f, y);
            Mor g = cat.pair_from(cat.identity(f.dst), cat.zero(y.dst, f.dst));
            if (both(cone_in(cat, h, twin.x()), cocone_in(cat, g, twin.y())) == Verdict::yes) return Verdict::yes;
            return Verdict::unknown;
        }
        case MorClass::V: {
            if (class_membership(cat, f, MorClass::V1, twin, s) == Verdict::yes && twin.u().has(f.dst))
                return Verdict::yes;
            if (class_membership(cat, f, MorClass::V2, twin, s) == Verdict::yes && twin.v().has(f.src))
                return Verdict::yes;
            Mor v = *min_left_approx(cat, f.src, twin.v());
            if (class_membership(cat, v, MorClass::V1, twin, s) == Verdict::yes) {
                auto g = cat.extend(v, f);
                if (g && class_membership(cat, *g, MorClass::V2, twin, s) == Verdict::yes) return Verdict::yes;
            }
            return Verdict::unknown;
        }
    }
    return Verdict::unknown;
}

Outcome<Factorization> factor_r_through_w(const Category& cat, const Mor& f, const TwinCertificate& twin,
                                          const Subcat& s) {
    using R = Outcome<Factorization>;
    if (!cat.is_inflation(f)) return R::bad(Status::failed, "not an inflation");
    auto t = cat.cone(f);
    if (!t.ok()) return R::bad(t.status, t.why);
    if (!s.has(t->c)) return R::bad(Status::failed, "cone outside S");
    Mor x = *min_right_approx(cat, t->c, twin.x());
    auto tp = cat.realize(cat.ext_pull(t->cls, x));
    if (!tp.ok()) return R::bad(tp.status, tp.why);
    // (1, d2, x) : (A -> D -> X^S) -> (A -> B -> S)
    auto d2 = solve_two(cat, tp->b, f.dst, tp->infl, f, t->defl, cat.compose(x, tp->defl));
    if (!d2) return R::bad(Status::failed, "no comparison map D -> B");
    return R::good(Factorization{tp->infl, *d2});
}

bool iso_in_localization(const GFunctor& g, const Obj& a, const Obj& b) {
    auto ea = g.essential(a), eb = g.essential(b);
    return ea.ok() && eb.ok() && *ea == *eb;
}

std::vector<Mor> sample_morphisms(const Category& cat, const std::vector<int>& core, Budget budget) {
    std::vector<Mor> out;
    for (int a : core) {
        out.push_back(cat.identity({a}));
        out.push_back(cat.zero({a}, {}));
        out.push_back(cat.zero({}, {a}));
        for (int b : core)
            for (int k = 0; k < cat.hom_dim(a, b); ++k)
                if (a != b) out.push_back(cat.basis_mor({a}, {b}, k));
    }
    if (budget.width >= 2) {
        for (int a : core) {
            std::vector<int> nb;
            for (int b : core)
                if (b != a && cat.hom_dim(a, b)) nb.push_back(b);
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j) {
                    Mor f = cat.zero({a}, make_obj({nb[i], nb[j]}));
                    for (auto& c : f.c) c = 1;
                    out.push_back(f);
                }
        }
    }
    return out;
}

namespace {

template <class F>
Check run_maps(const char* name, const std::vector<Mor>& maps, Exec ex, F&& body) {
    std::vector<Check> parts(maps.size());
    for_each_index(static_cast<int>(maps.size()), ex, [&](int i) { body(maps[i], parts[i]); });
    Check c(name);
    for (const auto& p : parts) c.merge(p);
    return c;
}

void expect_invertible(const GFunctor& g, const Mor& f, Check& c) {
    auto r = g.inverts(f);
    if (!r.ok()) {
        if (r.status == Status::window_error) c.unknown(mor_str(g.cat(), f) + ": " + r.why);
        else c.fail(mor_str(g.cat(), f) + ": " + r.why);
    } else if (*r) {
        c.pass();
    } else {
        c.fail("G not invertible on " + mor_str(g.cat(), f));
    }
}

}  // namespace

Check check_prop_im(const GFunctor& g, const Subcat& s, const std::vector<Mor>& maps, Exec ex) {
    return run_maps("prop_im", maps, ex, [&](const Mor& f, Check& c) {
        Verdict v = class_membership(g.cat(), f, MorClass::R, g.twin(), s);
        if (v == Verdict::yes) expect_invertible(g, f, c);
    });
}

Check check_prop_sigma(const GFunctor& g, const std::vector<Mor>& maps, Exec ex) {
    return run_maps("prop_sigma", maps, ex, [&](const Mor& f, Check& c) {
        if (cocone_in(g.cat(), f, g.twin().y()) == Verdict::yes) expect_invertible(g, f, c);
    });
}

Check check_bmlcor(const GFunctor& g, const std::vector<Mor>& maps, Exec ex) {
    return run_maps("bmlcor", maps, ex, [&](const Mor& f, Check& c) {
        if (g.twin().u().has(f.src) && cocone_in(g.cat(), f, g.twin().y()) == Verdict::yes)
            expect_invertible(g, f, c);
    });
}

Check check_well_defined(const GFunctor& g, const std::vector<Mor>& maps, Exec ex) {
    return run_maps("lemma_unique", maps, ex, [&](const Mor& f, Check& c) {
        auto z0 = g.map(f);
        if (!z0.ok()) return;
        for (unsigned alt = 1; alt <= 2; ++alt) {
            auto z1 = g.map(f, alt);
            if (!z1.ok()) c.fail(mor_str(g.cat(), f) + ": " + z1.why);
            else if (g.stably_equal(*z0, *z1)) c.pass();
            else c.fail("lifts disagree on " + mor_str(g.cat(), f));
        }
    });
}

Check check_functorial(const GFunctor& g, const std::vector<Mor>& maps, Exec ex) {
    const Category& cat = g.cat();
    std::map<Obj, std::vector<int>> by_src;
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].src.size() == 1 && maps[i].dst.size() == 1) by_src[maps[i].src].push_back(static_cast<int>(i));
    return run_maps("functorial", maps, ex, [&](const Mor& f, Check& c) {
        auto gf = g.map(f);
        if (!gf.ok()) return;
        if (f.src == f.dst && same(cat, f, cat.identity(f.src))) {
            if (g.stably_equal(*gf, cat.identity(gf->src))) c.pass();
            else c.fail("G(id) is not the identity at " + ids_str(cat, f.src));
        }
        // additivity against the doubled map
        auto g2 = g.map(cat.scale(f, 2));
        if (g2.ok()) {
            if (g.stably_equal(*g2, cat.scale(*gf, 2))) c.pass();
            else c.fail("G(2f) != 2G(f) on " + mor_str(cat, f));
        }
        if (f.src.size() != 1 || f.dst.size() != 1) return;
        auto it = by_src.find(f.dst);
        if (it == by_src.end()) return;
        for (int j : it->second) {
            const Mor& h = maps[j];
            auto gh = g.map(h);
            auto ghf = g.map(cat.compose(h, f));
            if (!gh.ok() || !ghf.ok()) continue;
            if (g.stably_equal(*ghf, cat.compose(*gh, *gf))) c.pass();
            else c.fail("G(h∘f) != G(h)∘G(f) for " + mor_str(cat, f) + " then " + mor_str(cat, h));
        }
    });
}

Check check_perturbation(const GFunctor& g, const std::vector<Mor>& maps, Exec ex) {
    const Category& cat = g.cat();
    return run_maps("bml_perturbation", maps, ex, [&](const Mor& f, Check& c) {
        StableHom sh(cat, f.src, f.dst, g.w());
        if (sh.generators().empty()) return;
        auto gf = g.map(f);
        if (!gf.ok()) return;
        Mor p = f;
        p.c = random_combination(sh.generators(), static_cast<int>(f.c.size()), 7);
        if (cat.is_zero(p)) p.c = sh.generators().front();
        auto gp = g.map(cat.add(f, p));
        if (!gp.ok()) c.fail(mor_str(cat, f) + ": " + gp.why);
        else if (g.stably_equal(*gp, *gf)) c.pass();
        else c.fail("G(f + f') != G(f) for " + mor_str(cat, f));
    });
}

Check check_on_z(const GFunctor& g, const std::vector<Mor>& maps, Exec ex) {
    const Category& cat = g.cat();
    const Subcat& z = g.twin().z;
    return run_maps("quasi_inverse", maps, ex, [&](const Mor& f, Check& c) {
        if (!z.has(f.src) || !z.has(f.dst)) return;
        auto eb = g.entry(f.src), ec = g.entry(f.dst);
        if (!eb.ok() || !ec.ok()) {
            c.unknown(mor_str(cat, f) + ": entry outside the window");
            return;
        }
        auto vb = cat.inverse(eb->v), zb = cat.inverse(eb->z), vc = cat.inverse(ec->v);
        if (!vb || !zb || !vc || !cat.is_iso(ec->z)) {
            c.fail("approximations of a Z-object are not isomorphisms at " + mor_str(cat, f));
            return;
        }
        auto gf = g.map(f);
        if (!gf.ok()) {
            c.fail(mor_str(cat, f) + ": " + gf.why);
            return;
        }
        // transport G(f) : Z_B -> Z_C back to B -> C
        Mor back = cat.compose(*vc, cat.compose(ec->z, cat.compose(*gf, cat.compose(*zb, eb->v))));
        if (g.stably_equal(back, f)) c.pass();
        else c.fail("G(f) differs from f on Z: " + mor_str(cat, f));
    });
}

Check check_r_in_w(const GFunctor& g, const Subcat& s, const std::vector<Mor>& maps, Exec ex) {
    const Category& cat = g.cat();
    return run_maps("prop_rw", maps, ex, [&](const Mor& f, Check& c) {
        if (cone_in(cat, f, s) != Verdict::yes) return;
        auto fac = factor_r_through_w(cat, f, g.twin(), s);
        if (!fac.ok()) {
            if (fac.status == Status::window_error) c.unknown(mor_str(cat, f) + ": " + fac.why);
            else c.fail(mor_str(cat, f) + ": " + fac.why);
            return;
        }
        Verdict v = both(cone_in(cat, fac->first, g.twin().x()), cocone_in(cat, fac->second, g.twin().y()));
        if (v == Verdict::unknown) c.unknown(mor_str(cat, f));
        else if (v == Verdict::yes && same(cat, cat.compose(fac->second, fac->first), f)) c.pass();
        else c.fail("factorization failed for " + mor_str(cat, f));
    });
}

Check check_local_rule(const GFunctor& g, const std::vector<int>& core) {
    Check c("local_rule");
    const Category& cat = g.cat();
    for (int a : core) {
        if (g.w().has(a)) continue;
        StableHom sh(cat, {a}, {a}, g.w());
        if (sh.is_zero(cat.identity({a}))) c.fail("identity of " + cat.indec(a).label + " factors through W");
        else c.pass();
    }
    return c;
}

Outcome<Suspension> suspension(const Category& cat, const Obj& a, const Subcat& w, bool minimal) {
    Mor m = minimal ? *min_left_approx(cat, a, w) : left_approx_all(cat, a, w);
    if (!cat.is_inflation(m)) return Outcome<Suspension>::bad(Status::failed, "W-approximation is not an inflation");
    auto t = cat.cone(m);
    if (!t.ok()) return Outcome<Suspension>::bad(t.status, t.why);
    return Outcome<Suspension>::good(Suspension{*t});
}

Outcome<StdTriangle> standard_triangle(const Category& cat, const ETriangle& t, const Subcat& w) {
    using R = Outcome<StdTriangle>;
    auto s = suspension(cat, t.a, w);
    if (!s.ok()) return R::bad(s.status, s.why);
    auto b = cat.extend(t.infl, s->t.infl);
    if (!b) return R::bad(Status::failed, "W_A does not extend over B");
    auto h = cat.extend(t.defl, cat.compose(s->t.defl, *b));
    if (!h) return R::bad(Status::failed, "no induced map C -> A<1>");
    return R::good(StdTriangle{t.infl, t.defl, *h, *s});
}

Check check_suspension(const Category& cat, const std::vector<int>& objs, const Subcat& w, Exec ex) {
    std::vector<Check> parts(objs.size());
    for_each_index(static_cast<int>(objs.size()), ex, [&](int i) {
        Check& c = parts[i];
        Obj a{objs[i]};
        auto s1 = suspension(cat, a, w, true), s2 = suspension(cat, a, w, false);
        if (!s1.ok() || !s2.ok()) {
            std::string why = !s1.ok() ? s1.why : s2.why;
            if ((!s1.ok() ? s1.status : s2.status) == Status::window_error) c.unknown(why);
            else c.fail(cat.indec(objs[i]).label + ": " + why);
            return;
        }
        auto b = cat.extend(s1->t.infl, s2->t.infl);
        auto phi = b ? cat.extend(s1->t.defl, cat.compose(s2->t.defl, *b)) : std::nullopt;
        if (!phi) {
            c.fail(cat.indec(objs[i]).label + ": no comparison map between the two suspensions");
            return;
        }
        bool inv = stable_inverse(cat, *phi, w).has_value();
        bool parts_equal = minus_ids(s1->t.c, w) == minus_ids(s2->t.c, w);
        if (inv && parts_equal) c.pass();
        else c.fail(cat.indec(objs[i]).label + ": suspensions " + ids_str(cat, s1->t.c) + " and " +
                    ids_str(cat, s2->t.c) + " not stably isomorphic");
    });
    Check c("suspension");
    for (const auto& p : parts) c.merge(p);
    return c;
}

Outcome<Obj> shift_bs(const Category& cat, const Obj& a, const TwinCertificate& twin) {
    Mor y = *min_left_approx(cat, a, twin.y());
    if (!cat.is_inflation(y)) return Outcome<Obj>::bad(Status::failed, "Y-approximation is not an inflation");
    auto t = cat.cone(y);
    if (!t.ok()) return Outcome<Obj>::bad(t.status, t.why);
    if (!twin.u().has(t->c)) return Outcome<Obj>::bad(Status::failed, "U_A outside U");
    return Outcome<Obj>::good(t->c);
}

namespace {

using StepOut = Outcome<InduceStep>;

// Replace A by an object of U (first-term half of the recipe).
StepOut step_u(const Category& cat, const ETriangle& t, const TwinCertificate& twin) {
    Mor a = *min_right_approx(cat, t.a, twin.u());
    if (!cat.is_deflation(a)) return StepOut::bad(Status::failed, "U-approximation of A is not a deflation");
    auto ty = cat.cocone(a);
    if (!ty.ok()) return StepOut::bad(ty.status, ty.why);
    Mor i = *min_left_approx(cat, ty->a, make_subcat(cat.injectives()));
    if (!cat.is_inflation(i)) return StepOut::bad(Status::failed, "Y has no injective inflation in the window");
    auto e = cat.extend(ty->infl, i);
    if (!e) return StepOut::bad(Status::failed, "injective map does not extend over A'");
    Mor x = cat.pair_to(cat.compose(t.infl, a), *e);
    if (!cat.is_inflation(x)) return StepOut::bad(Status::failed, "A' -> B + I is not an inflation");
    auto tn = cat.cone(x);
    if (!tn.ok()) return StepOut::bad(tn.status, tn.why);
    Mor proj = cat.pair_from(cat.identity(t.b), cat.zero(i.dst, t.b));
    auto c = cat.extend(tn->defl, cat.compose(t.defl, proj));
    if (!c) return StepOut::bad(Status::failed, "no map C' -> C");
    return StepOut::good(InduceStep{"replace A by U-object", *tn, t, a, proj, *c, false});
}

// Replace C by an object of V.
StepOut step_v(const Category& cat, const ETriangle& t, const TwinCertificate& twin) {
    Mor c2 = *min_left_approx(cat, t.c, twin.v());
    if (!cat.is_inflation(c2)) return StepOut::bad(Status::failed, "V-approximation of C is not an inflation");
    auto tx = cat.cone(c2);
    if (!tx.ok()) return StepOut::bad(tx.status, tx.why);
    Mor p = *min_right_approx(cat, tx->c, make_subcat(cat.projectives()));
    if (!cat.is_deflation(p)) return StepOut::bad(Status::failed, "X has no projective deflation in the window");
    auto e = cat.lift(tx->defl, p);
    if (!e) return StepOut::bad(Status::failed, "projective map does not lift to C''");
    Mor y = cat.pair_from(cat.compose(c2, t.defl), *e);
    if (!cat.is_deflation(y)) return StepOut::bad(Status::failed, "B + P -> C'' is not a deflation");
    auto tn = cat.cocone(y);
    if (!tn.ok()) return StepOut::bad(tn.status, tn.why);
    Mor inj = cat.pair_to(cat.identity(t.b), cat.zero(t.b, p.src));
    auto a = cat.lift(tn->infl, cat.compose(inj, t.infl));
    if (!a) return StepOut::bad(Status::failed, "no map A -> A''");
    return StepOut::good(InduceStep{"replace C by V-object", t, *tn, *a, inj, c2, true});
}

}  // namespace

Outcome<InduceResult> induce(const GFunctor& g, const ETriangle& t0) {
    using R = Outcome<InduceResult>;
    const Category& cat = g.cat();
    const TwinCertificate& twin = g.twin();
    InduceResult res;
    ETriangle t = t0;
    for (int round = 0; round < 3 && !(twin.u().has(t.a) && twin.v().has(t.c)); ++round) {
        if (!twin.u().has(t.a)) {
            auto st = step_u(cat, t, twin);
            if (!st.ok()) return R::bad(st.status, st.why);
            t = st->from;
            res.steps.push_back(*st);
        }
        if (!twin.v().has(t.c)) {
            auto st = step_v(cat, t, twin);
            if (!st.ok()) return R::bad(st.status, st.why);
            t = st->to;
            res.steps.push_back(*st);
        }
    }
    if (!twin.u().has(t.a) || !twin.v().has(t.c)) return R::bad(Status::failed, "could not move A into U and C into V");

    // push out along A -> Z^A
    Mor va = *min_left_approx(cat, t.a, twin.v());
    if (!cat.is_inflation(va)) return R::bad(Status::failed, "V-approximation of A is not an inflation");
    auto t3 = cat.realize(cat.ext_push(va, t.cls));
    if (!t3.ok()) return R::bad(t3.status, t3.why);
    auto beta = solve_two(cat, t.b, t3->b, t.infl, cat.compose(t3->infl, va), t3->defl, t.defl);
    if (!beta) return R::bad(Status::failed, "no map B -> B'");
    res.steps.push_back(InduceStep{"push out along v_A", t, *t3, va, *beta, cat.identity(t.c), true});

    // pull back along Z^C -> C
    Mor zc = *min_right_approx(cat, t3->c, twin.u());
    if (!cat.is_deflation(zc)) return R::bad(Status::failed, "U-approximation of C is not a deflation");
    auto t4 = cat.realize(cat.ext_pull(t3->cls, zc));
    if (!t4.ok()) return R::bad(t4.status, t4.why);
    auto beta2 = solve_two(cat, t4->b, t3->b, t4->infl, t3->infl, t3->defl, cat.compose(zc, t4->defl));
    if (!beta2) return R::bad(Status::failed, "no map Z^B -> B'");
    res.steps.push_back(InduceStep{"pull back along z_C", *t4, *t3, cat.identity(t4->a), *beta2, zc, false});
    res.z = *t4;
    return R::good(res);
}

Check check_prop_induce(const GFunctor& g, const std::vector<ETriangle>& triangles, Exec ex) {
    const Category& cat = g.cat();
    std::vector<Check> parts(triangles.size());
    for_each_index(static_cast<int>(triangles.size()), ex, [&](int i) {
        Check& c = parts[i];
        const ETriangle& t = triangles[i];
        auto r = induce(g, t);
        if (!r.ok()) {
            if (r.status == Status::window_error) c.unknown(tri_str(cat, t) + ": " + r.why);
            else c.fail(tri_str(cat, t) + ": " + r.why);
            return;
        }
        std::string where = tri_str(cat, t);
        const Subcat& z = g.twin().z;
        if (!z.has(r->z.a) || !z.has(r->z.b) || !z.has(r->z.c)) {
            c.fail(where + ": result " + tri_str(cat, r->z) + " leaves Z");
            return;
        }
        for (const auto& st : r->steps) {
            bool commutes = same(cat, cat.compose(st.to.infl, st.a), cat.compose(st.b, st.from.infl)) &&
                            same(cat, cat.compose(st.to.defl, st.b), cat.compose(st.c, st.from.defl));
            if (!commutes) {
                c.fail(where + ": step '" + st.name + "' does not commute");
                return;
            }
            for (const Mor* m : {&st.a, &st.b, &st.c}) {
                auto inv = g.inverts(*m);
                if (!inv.ok()) {
                    c.unknown(where + ": " + inv.why);
                    return;
                }
                if (!*inv) {
                    c.fail(where + ": step '" + st.name + "' has a component G does not invert");
                    return;
                }
            }
        }
        if (iso_in_localization(g, t.a, r->z.a) && iso_in_localization(g, t.b, r->z.b) &&
            iso_in_localization(g, t.c, r->z.c))
            c.pass();
        else
            c.fail(where + ": terms of " + tri_str(cat, r->z) + " are not stably isomorphic to G of the input");
    });
    Check c("prop_induce");
    for (const auto& p : parts) c.merge(p);
    return c;
}

}  // namespace twin
