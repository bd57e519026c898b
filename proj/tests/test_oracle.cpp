#include <gtest/gtest.h>

#include "twin/oracle.hpp"

using namespace twin;
using namespace twin::oracle;

namespace {

int ext(const LineAlgebra& a, const Rep& m, const Rep& n, int s) {
    return ChainHom(a, resolution(a, m, s + 1), stalk(n, -s)).dim();
}

}  // namespace

// Values worked out by hand for kA2 and the Λ relations.
TEST(OracleFrozen, TypeA2) {
    auto a = LineAlgebra::type_a(2);
    Rep s1 = interval_rep(a, 1, 1), s2 = interval_rep(a, 2, 2), p1 = interval_rep(a, 1, 2);
    EXPECT_EQ(ext(a, s1, p1, 0), 0);
    EXPECT_EQ(ext(a, p1, s1, 0), 1);
    EXPECT_EQ(ext(a, s2, p1, 0), 1);
    EXPECT_EQ(ext(a, s1, s2, 1), 1);
    EXPECT_EQ(ext(a, s2, s1, 1), 0);
    EXPECT_EQ(ext(a, s1, s1, 2), 0);
}

TEST(OracleFrozen, Lambda) {
    auto l = LineAlgebra::lambda(-8, 8);
    EXPECT_EQ(ext(l, interval_rep(l, 1, 2), interval_rep(l, 3, 3), 1), 1);
    EXPECT_EQ(ext(l, interval_rep(l, 1, 2), interval_rep(l, 4, 5), 2), 1);
    // x_0 x_1 = 0, x_1 x_2 x_3 = 0, x_3 x_4 x_5 = 0 and x_4 x_5 = 0
    EXPECT_EQ(l.proj_end(0), 1);
    EXPECT_EQ(l.proj_end(1), 3);
    EXPECT_EQ(l.proj_end(3), 5);
    EXPECT_EQ(l.proj_end(4), 5);
    EXPECT_FALSE(l.path(0, 2));
    EXPECT_TRUE(l.path(1, 3));
}

TEST(OracleFrozen, RepHomBasis) {
    auto a = LineAlgebra::type_a(3);
    EXPECT_EQ(rep_hom_basis(interval_rep(a, 1, 3), interval_rep(a, 1, 2)).size(), 1u);
    EXPECT_EQ(rep_hom_basis(interval_rep(a, 1, 2), interval_rep(a, 1, 3)).size(), 0u);
    EXPECT_EQ(rep_hom_basis(interval_rep(a, 2, 3), interval_rep(a, 1, 3)).size(), 1u);
}

TEST(Oracle, BarcodeOfSum) {
    auto a = LineAlgebra::type_a(4);
    Rep m = direct_sum(interval_rep(a, 1, 3), direct_sum(interval_rep(a, 2, 2), interval_rep(a, 2, 2)));
    auto b = barcode(m);
    EXPECT_EQ(b[std::make_pair(1, 3)], 1);
    EXPECT_EQ(b[std::make_pair(2, 2)], 2);
    EXPECT_EQ(b[std::make_pair(1, 4)], 0);
}

TEST(Oracle, ResolutionIsExact) {
    auto l = LineAlgebra::lambda(-6, 10);
    for (int a = -2; a <= 4; ++a)
        for (int b = a; b <= l.proj_end(a); ++b) {
            Rep m = interval_rep(l, a, b);
            PComplex p = resolution(l, m, 4);
            ASSERT_TRUE(admissible(l, p));
            RepComplex r = to_rep(l, p);
            auto h0 = barcode(homology(r, 0));
            std::erase_if(h0, [](const auto& kv) { return kv.second == 0; });
            EXPECT_EQ(h0.size(), 1u);
            EXPECT_EQ(h0.begin()->first, std::make_pair(a, b));
            for (int k = -3; k < 0; ++k) {
                auto d = homology_dims(r, k);
                EXPECT_TRUE(std::all_of(d.begin(), d.end(), [](int x) { return x == 0; })) << a << "," << b << " deg " << k;
            }
        }
}

TEST(Oracle, ShiftAndIdentity) {
    auto a = LineAlgebra::type_a(3);
    PComplex p = resolution(a, interval_rep(a, 2, 2), 2);
    PHom end(a, p, p);
    EXPECT_EQ(end.dim(), 1);
    EXPECT_FALSE(end.null_homotopic(identity_pmap(p)));
    PHom shifted(a, shift(p, 1), shift(p, 1));
    EXPECT_EQ(shifted.dim(), 1);
    // Hom(S2, S2[1]) = Ext^1(S2, S2) = 0 while Hom(S2, S3[1]) = Ext^1(S2, S3) = 1
    EXPECT_EQ(PHom(a, p, shift(p, 1)).dim(), 0);
    EXPECT_EQ(PHom(a, p, shift(resolution(a, interval_rep(a, 3, 3), 2), 1)).dim(), 1);
}

TEST(Oracle, ConeOfIdentityIsContractible) {
    auto a = LineAlgebra::type_a(3);
    PComplex p = resolution(a, interval_rep(a, 1, 2), 2);
    PComplex c = cone(p, p, identity_pmap(p));
    EXPECT_TRUE(admissible(a, c));
    EXPECT_EQ(PHom(a, c, c).dim(), 0);
}
