#include "twin/approx.hpp"

#include <numeric>

namespace twin {

namespace {

// restriction of f to the given source and target positions
Mor select(const Category& cat, const Mor& f, const std::vector<int>& rows, const std::vector<int>& cols) {
    Obj s, d;
    for (int i : rows) s.push_back(f.src[i]);
    for (int j : cols) d.push_back(f.dst[j]);
    Mor m = cat.zero(s, d);
    auto lf = cat.layout(f.src, f.dst), lm = cat.layout(s, d);
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) {
            int o = lf[rows[a] * f.dst.size() + cols[b]], h = cat.hom_dim(s[a], d[b]);
            for (int e = 0; e < h; ++e) m.c[lm[a * d.size() + b] + e] = f.c[o + e];
        }
    return m;
}

std::vector<int> all_but(int n, int skip) {
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
        if (i != skip) v.push_back(i);
    return v;
}

std::vector<int> all(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

bool row_redundant(const Category& cat, const Mor& f, int s) {
    int n = static_cast<int>(f.src.size());
    Mor rest = select(cat, f, all_but(n, s), all(static_cast<int>(f.dst.size())));
    Mor one = select(cat, f, {s}, all(static_cast<int>(f.dst.size())));
    return cat.lift(rest, one).has_value();
}

bool col_redundant(const Category& cat, const Mor& f, int s) {
    int n = static_cast<int>(f.dst.size());
    Mor rest = select(cat, f, all(static_cast<int>(f.src.size())), all_but(n, s));
    Mor one = select(cat, f, all(static_cast<int>(f.src.size())), {s});
    return cat.extend(rest, one).has_value();
}

}  // namespace

Mor right_approx_all(const Category& cat, const Obj& b, const Subcat& c) {
    Obj src;
    for (int x : c.ids) src.insert(src.end(), cat.hom_dim(Obj{x}, b), x);
    Mor f = cat.zero(src, b);
    auto lf = cat.layout(src, b);
    for (std::size_t i = 0; i < src.size();) {
        int h = cat.hom_dim(Obj{src[i]}, b);
        for (int t = 0; t < h; ++t) f.c[lf[(i + t) * b.size()] + t] = 1;
        i += h;
    }
    return f;
}

Outcome<Mor> min_right_approx(const Category& cat, const Obj& b, const Subcat& c) {
    Mor f = right_approx_all(cat, b, c);
    for (int s = static_cast<int>(f.src.size()) - 1; s >= 0; --s)
        if (row_redundant(cat, f, s))
            f = select(cat, f, all_but(static_cast<int>(f.src.size()), s), all(static_cast<int>(f.dst.size())));
    return Outcome<Mor>::good(f);
}

Mor left_approx_all(const Category& cat, const Obj& b, const Subcat& c) {
    Obj dst;
    for (int y : c.ids) dst.insert(dst.end(), cat.hom_dim(b, Obj{y}), y);
    Mor g = cat.zero(b, dst);
    auto lg = cat.layout(b, dst);
    for (std::size_t j = 0; j < dst.size();) {
        int h = cat.hom_dim(b, Obj{dst[j]});
        // copy t takes the t-th basis vector of Hom(B, y), counted across the summands of B
        for (int t = 0; t < h; ++t) {
            int rem = t;
            for (std::size_t i = 0; i < b.size(); ++i) {
                int d = cat.hom_dim(b[i], dst[j]);
                if (rem < d) {
                    g.c[lg[i * dst.size() + j + t] + rem] = 1;
                    break;
                }
                rem -= d;
            }
        }
        j += h;
    }
    return g;
}

Outcome<Mor> min_left_approx(const Category& cat, const Obj& b, const Subcat& c) {
    Mor g = left_approx_all(cat, b, c);
    for (int s = static_cast<int>(g.dst.size()) - 1; s >= 0; --s)
        if (col_redundant(cat, g, s))
            g = select(cat, g, all(static_cast<int>(g.src.size())), all_but(static_cast<int>(g.dst.size()), s));
    return Outcome<Mor>::good(g);
}

bool is_right_approx(const Category& cat, const Mor& f, const Subcat& c) {
    for (int x : c.ids) {
        int h = cat.hom_dim(Obj{x}, f.dst);
        for (int e = 0; e < h; ++e)
            if (!cat.lift(f, cat.basis_mor({x}, f.dst, e))) return false;
    }
    return true;
}

bool is_left_approx(const Category& cat, const Mor& f, const Subcat& c) {
    for (int y : c.ids) {
        int h = cat.hom_dim(f.src, Obj{y});
        for (int e = 0; e < h; ++e)
            if (!cat.extend(f, cat.basis_mor(f.src, {y}, e))) return false;
    }
    return true;
}

bool is_right_minimal(const Category& cat, const Mor& f) {
    for (int s = 0; s < static_cast<int>(f.src.size()); ++s)
        if (row_redundant(cat, f, s)) return false;
    return true;
}

bool is_left_minimal(const Category& cat, const Mor& f) {
    for (int s = 0; s < static_cast<int>(f.dst.size()); ++s)
        if (col_redundant(cat, f, s)) return false;
    return true;
}

}  // namespace twin
