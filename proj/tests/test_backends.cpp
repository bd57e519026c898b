#include <gtest/gtest.h>

#include "kit/agreement.hpp"
#include "kit/gen.hpp"
#include "twin/report.hpp"
#include "twin/subcat.hpp"

using namespace twin;
using testkit::Gen;

namespace {

void expect_agreement(const testkit::Agreement& a, int at_least) {
    EXPECT_GE(a.comparisons, at_least);
    EXPECT_TRUE(a.mismatches.empty()) << a.mismatches.size() << " mismatches, first: " << a.mismatches.front();
}

// a random nonzero class in E(C, A) with A a sum of one or two core objects
std::optional<ExtClass> random_class(const Category& cat, Gen& g) {
    auto core = cat.core_ids();
    for (int tries = 0; tries < 200; ++tries) {
        int c = g.pick(core);
        Obj a = make_obj({g.pick(core)});
        if (g.coin(0.3)) a = make_obj({a[0], g.pick(core)});
        if (!cat.ext_dim({c}, a)) continue;
        ExtClass d = cat.zero_ext({c}, a);
        d.v = g.vec(static_cast<int>(d.v.size()));
        if (!is_zero(d.v)) return d;
    }
    return std::nullopt;
}

// a random target with a nonzero map from `a`, or a random source with one into it
int random_after(const Category& cat, Gen& g, int a) {
    std::vector<int> out;
    for (int b : cat.core_ids())
        if (cat.hom_dim(a, b)) out.push_back(b);
    return g.pick(out);
}
int random_before(const Category& cat, Gen& g, int a) {
    std::vector<int> out;
    for (int b : cat.core_ids())
        if (cat.hom_dim(b, a)) out.push_back(b);
    return g.pick(out);
}

Mor random_basis_comb(const Category& cat, Gen& g, int a, int b) {
    Mor f = cat.zero({a}, {b});
    f.c = g.vec(static_cast<int>(f.c.size()));
    return f;
}

std::optional<Mor> random_mor(const Category& cat, Gen& g) {
    auto core = cat.core_ids();
    for (int tries = 0; tries < 200; ++tries) {
        Obj a = make_obj({g.pick(core)}), b = make_obj({g.pick(core)});
        if (g.coin(0.3)) b = make_obj({b[0], g.pick(core)});
        if (!cat.hom_dim(a, b)) continue;
        Mor f = cat.zero(a, b);
        f.c = g.vec(static_cast<int>(f.c.size()));
        if (!is_zero(f.c)) return f;
    }
    return std::nullopt;
}

void expect_triangle(const Category& cat, const ETriangle& t) {
    EXPECT_TRUE(cat.is_zero(cat.compose(t.defl, t.infl))) << tri_str(cat, t);
    EXPECT_EQ(t.infl.src, t.a);
    EXPECT_EQ(t.infl.dst, t.b);
    EXPECT_EQ(t.defl.dst, t.c);
    for (int x : cat.core_ids()) {
        auto r = check_les(cat, t, x);
        EXPECT_TRUE(r.exact) << tri_str(cat, t) << " at " << cat.indec(x).label << ": " << r.where;
    }
}

}  // namespace

TEST(OracleAgreement, DerivedSmallWindows) {
    expect_agreement(testkit::agree(DerivedAn(2, -4, 6, 2)), 100);
    expect_agreement(testkit::agree(DerivedAn(3, -5, 8, 3)), 500);
}

TEST(OracleAgreement, ModuleCategories) {
    for (int n = 2; n <= 5; ++n) expect_agreement(testkit::agree(IntervalCategory::type_a(n)), 3 * n * n);
    expect_agreement(testkit::agree(IntervalCategory::lambda(-6, 6, 3)), 300);
}

TEST(DerivedMesh, ShiftIsTwoPeriodicUpToTau) {
    for (int n = 1; n <= 4; ++n) {
        DerivedAn d(n, -8, 12, n + 1);
        for (int id : d.core_ids()) {
            auto s2 = d.shift(id, 2);
            auto t = d.tau(id, -(n + 1));
            ASSERT_TRUE(s2 && t) << d.indec(id).label;
            EXPECT_EQ(*s2, *t);
            auto back = d.shift(*d.shift(id, 1), -1);
            EXPECT_EQ(back, std::optional<int>(id));
        }
    }
}

TEST(DerivedMesh, SerreDuality) {
    // E(C, A) = Hom(C, A[1]) ≅ D Hom(A, τ C)
    DerivedAn d(4, -8, 14, 5);
    for (int c : d.core_ids())
        for (int a : d.core_ids()) {
            auto tc = d.tau(c, 1);
            ASSERT_TRUE(tc);
            EXPECT_EQ(d.ext_dim(c, a), d.hom_dim(a, *tc));
        }
}

TEST(DerivedMesh, ProjectiveColumn) {
    DerivedAn d(4, -4, 6, 2);
    for (int r = 1; r <= 4; ++r) {
        auto id = d.find(0, r);
        ASSERT_TRUE(id);
        const auto& ch = d.chart(*id);
        EXPECT_EQ(ch.k, 0);
        EXPECT_EQ(ch.a, 5 - r);
        EXPECT_EQ(ch.b, 4);
    }
}

TEST(IntervalBackend, ProjectivesAndSyzygies) {
    auto c = IntervalCategory::lambda(-10, 10, 3);
    const auto& alg = c.algebra();
    for (int id : c.core_ids()) {
        int a = c.start(id), b = c.end(id);
        bool proj = b == alg.proj_end(a);
        EXPECT_EQ(c.syzygy(id) == -1, proj) << c.indec(id).label;
        if (!proj) {
            int w = c.syzygy(id);
            ASSERT_GE(w, 0);
            EXPECT_EQ(c.start(w), b + 1);
            EXPECT_EQ(c.end(w), alg.proj_end(a));
        }
    }
}

class TriangleProps : public ::testing::TestWithParam<int> {
protected:
    std::unique_ptr<Category> make() const {
        switch (GetParam()) {
        case 0: return std::make_unique<DerivedAn>(3, -6, 10, 3);
        case 1: return std::make_unique<IntervalCategory>(IntervalCategory::lambda(-8, 8, 3));
        default: return std::make_unique<IntervalCategory>(IntervalCategory::type_a(4));
        }
    }
};

TEST_P(TriangleProps, RealizedClassesGiveExactTriangles) {
    auto cat = make();
    Gen g(100 + GetParam());
    int done = 0;
    for (int t = 0; t < 60; ++t) {
        auto d = random_class(*cat, g);
        ASSERT_TRUE(d);
        auto tri = cat->realize(*d);
        if (tri.status == Status::window_error) continue;
        ASSERT_TRUE(tri.ok()) << tri.why;
        EXPECT_EQ(tri->cls.v, d->v);
        expect_triangle(*cat, *tri);
        ++done;
    }
    EXPECT_GT(done, 30);
}

TEST_P(TriangleProps, ConesAndCocones) {
    auto cat = make();
    Gen g(200 + GetParam());
    int done = 0;
    for (int t = 0; t < 60; ++t) {
        auto f = random_mor(*cat, g);
        ASSERT_TRUE(f);
        if (cat->is_inflation(*f)) {
            auto tri = cat->cone(*f);
            if (tri.status == Status::window_error) continue;
            ASSERT_TRUE(tri.ok()) << tri.why;
            EXPECT_EQ(tri->infl.c, f->c);
            expect_triangle(*cat, *tri);
            ++done;
        }
        if (cat->is_deflation(*f)) {
            auto tri = cat->cocone(*f);
            if (tri.status == Status::window_error) continue;
            ASSERT_TRUE(tri.ok()) << tri.why;
            EXPECT_EQ(tri->defl.c, f->c);
            expect_triangle(*cat, *tri);
            ++done;
        }
    }
    EXPECT_GT(done, 10);
}

TEST_P(TriangleProps, CompositionIsAssociative) {
    auto cat = make();
    Gen g(300 + GetParam());
    auto core = cat->core_ids();
    for (int t = 0; t < 100; ++t) {
        int a = g.pick(core);
        int b = random_after(*cat, g, a), c = random_after(*cat, g, b), d = random_after(*cat, g, c);
        Mor f = random_basis_comb(*cat, g, a, b), h = random_basis_comb(*cat, g, b, c);
        Mor k = random_basis_comb(*cat, g, c, d);
        EXPECT_EQ(cat->compose(k, cat->compose(h, f)).c, cat->compose(cat->compose(k, h), f).c);
        EXPECT_EQ(cat->compose(cat->identity({b}), f).c, f.c);
        EXPECT_EQ(cat->compose(f, cat->identity({a})).c, f.c);
    }
}

TEST_P(TriangleProps, ExtIsFunctorial) {
    auto cat = make();
    Gen g(400 + GetParam());
    auto core = cat->core_ids();
    std::vector<std::pair<int, int>> classes;
    for (int c : core)
        for (int a : core)
            if (cat->ext_dim(c, a)) classes.emplace_back(c, a);
    ASSERT_FALSE(classes.empty());
    for (int t = 0; t < 60; ++t) {
        auto [c, a] = g.pick(classes);
        ExtClass d = cat->zero_ext({c}, {a});
        d.v = g.vec(static_cast<int>(d.v.size()));
        int a1 = random_after(*cat, g, a), a2 = random_after(*cat, g, a1);
        Mor f = random_basis_comb(*cat, g, a, a1), h = random_basis_comb(*cat, g, a1, a2);
        EXPECT_EQ(cat->ext_push(cat->compose(h, f), d).v, cat->ext_push(h, cat->ext_push(f, d)).v);
        EXPECT_EQ(cat->ext_push(cat->identity({a}), d).v, d.v);
        int c1 = random_before(*cat, g, c), c2 = random_before(*cat, g, c1);
        Mor p = random_basis_comb(*cat, g, c1, c), q = random_basis_comb(*cat, g, c2, c1);
        EXPECT_EQ(cat->ext_pull(d, cat->compose(p, q)).v, cat->ext_pull(cat->ext_pull(d, p), q).v);
        EXPECT_EQ(cat->ext_pull(d, cat->identity({c})).v, d.v);
        // the two actions commute
        EXPECT_EQ(cat->ext_pull(cat->ext_push(f, d), p).v, cat->ext_push(f, cat->ext_pull(d, p)).v);
    }
}

std::string backend_name(const ::testing::TestParamInfo<int>& info) {
    return info.param == 0 ? "derived_a3" : info.param == 1 ? "lambda" : "type_a4";
}
INSTANTIATE_TEST_SUITE_P(Backends, TriangleProps, ::testing::Values(0, 1, 2), backend_name);

TEST(SerialParallel, KernelsAgree) {
    DerivedAn d(4, -6, 12, 5);
    auto core = d.core_ids(), win = d.window_ids();
    Gen g(500);
    for (int t = 0; t < 5; ++t) {
        Subcat s = make_subcat(g.subset(core, 0.15));
        EXPECT_EQ(perp_right(d, s, win, Exec::serial), perp_right(d, s, win, Exec::parallel));
        EXPECT_EQ(perp_left(d, s, win, Exec::serial), perp_left(d, s, win, Exec::parallel));
        auto a = closure(d, s, ClosureMode::extensions, win, {2}, Exec::serial);
        auto b = closure(d, s, ClosureMode::extensions, win, {2}, Exec::parallel);
        EXPECT_EQ(a.sub, b.sub);
        EXPECT_EQ(a.escaped, b.escaped);
    }
    auto small = std::vector<int>(core.begin(), core.begin() + 12);
    auto ts = class_triangles(d, small, small, {2}, Exec::serial);
    auto tp = class_triangles(d, small, small, {2}, Exec::parallel);
    ASSERT_EQ(ts.triangles.size(), tp.triangles.size());
    for (std::size_t i = 0; i < ts.triangles.size(); ++i) {
        EXPECT_EQ(ts.triangles[i].b, tp.triangles[i].b);
        EXPECT_EQ(ts.triangles[i].infl.c, tp.triangles[i].infl.c);
    }
}
