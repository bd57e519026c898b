#include <gtest/gtest.h>

#include "kit/gen.hpp"
#include "twin/linalg.hpp"

using namespace twin;
using testkit::Gen;

TEST(Linalg, RankNullity) {
    Gen g(11);
    for (int t = 0; t < 200; ++t) {
        int r = g.uniform(1, 6), c = g.uniform(1, 6);
        Mat m = g.coin() ? g.mat(r, c) : g.low_rank(r, c, g.uniform(1, 3));
        auto ker = kernel(m);
        EXPECT_EQ(rank(m) + static_cast<int>(ker.size()), c);
        for (const auto& v : ker) EXPECT_TRUE(is_zero(m * v));
        EXPECT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST(Linalg, SolveFindsPreimages) {
    Gen g(12);
    for (int t = 0; t < 200; ++t) {
        int r = g.uniform(1, 5), c = g.uniform(1, 5);
        Mat a = g.low_rank(r, c, g.uniform(1, 3));
        Vec x = g.vec(c);
        Vec b = a * x;
        auto s = solve(a, b);
        ASSERT_TRUE(s.has_value());
        EXPECT_EQ(a * *s, b);
    }
}

TEST(Linalg, SolveRejectsOutsideImage) {
    Mat a(2, 1);
    a(0, 0) = 1;
    EXPECT_FALSE(solve(a, Vec{Q(0), Q(1)}).has_value());
}

TEST(Linalg, InverseRoundTrip) {
    Gen g(13);
    int found = 0;
    for (int t = 0; t < 100; ++t) {
        int n = g.uniform(1, 5);
        Mat a = g.mat(n, n);
        auto inv = inverse(a);
        EXPECT_EQ(inv.has_value(), rank(a) == n);
        if (!inv) continue;
        ++found;
        EXPECT_EQ(a * *inv, Mat::identity(n));
        EXPECT_EQ(*inv * a, Mat::identity(n));
    }
    EXPECT_GT(found, 20);
}

TEST(Linalg, SpanMembership) {
    Gen g(14);
    for (int t = 0; t < 100; ++t) {
        int n = g.uniform(2, 6);
        Span s(n);
        std::vector<Vec> gens;
        for (int k = g.uniform(1, 4); k > 0; --k) {
            gens.push_back(g.vec(n));
            s.add(gens.back());
        }
        Vec comb(n);
        for (const auto& v : gens) axpy(comb, g.scalar(), v);
        EXPECT_TRUE(s.contains(comb));
        EXPECT_TRUE(is_zero(s.reduce(comb)));
        EXPECT_EQ(s.dim(), rank(Mat::from_cols(gens, n)));
    }
}

TEST(Linalg, SubquotientDimension) {
    Gen g(15);
    for (int t = 0; t < 100; ++t) {
        int n = g.uniform(2, 6);
        std::vector<Vec> z, b;
        for (int i = g.uniform(1, n); i > 0; --i) z.push_back(g.vec(n));
        // boundaries are combinations of cycles
        for (int i = g.uniform(0, 3); i > 0; --i) {
            Vec v(n);
            for (const auto& x : z) axpy(v, g.scalar(), x);
            b.push_back(v);
        }
        Subquotient q(n, z, b);
        int rz = rank(Mat::from_cols(z, n));
        int rb = b.empty() ? 0 : rank(Mat::from_cols(b, n));
        EXPECT_EQ(q.dim(), rz - rb);
        for (const auto& v : b) EXPECT_TRUE(q.is_trivial(v));
        for (const auto& v : q.basis()) {
            auto c = q.coords(v);
            ASSERT_TRUE(c.has_value());
            EXPECT_EQ(std::count_if(c->begin(), c->end(), [](const Q& x) { return x != 0; }), 1);
        }
    }
}
