#pragma once

#include <random>
#include <vector>

#include "twin/linalg.hpp"

namespace twin::testkit {

// Small seeded generators; every property test draws from one of these so failures replay.
class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    // entries in [-2, 2] with about a third of them zero, occasionally fractional
    Q scalar() {
        int n = uniform(-2, 2);
        Q q(n);
        if (n != 0 && coin(0.2)) {
            q = Q(n, uniform(2, 3));
            q.canonicalize();
        }
        return q;
    }
    Vec vec(int n) {
        Vec v(n);
        for (auto& x : v) x = scalar();
        return v;
    }
    Mat mat(int r, int c) {
        Mat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = scalar();
        return m;
    }
    // rank-deficient on purpose: product of two thin factors
    Mat low_rank(int r, int c, int k) { return mat(r, k) * mat(k, c); }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
    }
    std::vector<int> subset(const std::vector<int>& xs, double p) {
        std::vector<int> out;
        for (int x : xs)
            if (coin(p)) out.push_back(x);
        return out;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

}  // namespace twin::testkit
