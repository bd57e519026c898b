#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twin/linalg.hpp"

namespace twin {

enum class Status { ok, window_error, inconclusive, failed };
const char* to_string(Status s);

template <class T>
struct Outcome {
    Status status = Status::ok;
    std::optional<T> value;
    std::string why;

    bool ok() const { return status == Status::ok; }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }
    static Outcome good(T v) { return Outcome{Status::ok, std::move(v), {}}; }
    static Outcome bad(Status s, std::string why) { return Outcome{s, std::nullopt, std::move(why)}; }
};

struct Indec {
    int id = -1;
    std::array<int, 2> coords{};   // (x, row) for mesh windows, (a, b) for interval modules
    std::string label;
    bool window = false;           // inside full_range
    bool core = false;             // inside safe_core
};

// Formal direct sum: a sorted multiset of Indec ids. Empty = zero object.
using Obj = std::vector<int>;
Obj make_obj(std::vector<int> ids);
Obj obj_sum(const Obj& a, const Obj& b);
std::string obj_str(const Obj& a);

// Coefficients are stored block by block: for i over src positions, j over dst positions,
// the coordinates of the (i,j) component in the fixed basis of Hom(src_i, dst_j).
struct Mor {
    Obj src, dst;
    Vec c;
};

// Same layout as Mor with (k over C, i over A) and the fixed basis of E(C_k, A_i).
struct ExtClass {
    Obj c, a;
    Vec v;
};

struct ETriangle {
    Obj a, b, c;
    Mor infl, defl;
    ExtClass cls;
};

// Structure constant: basis_p(a,b) followed by basis_q(b,c) contributes v * basis_r(a,c).
struct Term {
    int p, q, r;
    Q v;
};

class Category {
public:
    virtual ~Category() = default;

    virtual std::string kind() const = 0;
    virtual bool triangulated() const = 0;

    int size() const { return static_cast<int>(ind_.size()); }
    const Indec& indec(int id) const { return ind_[id]; }
    const std::vector<Indec>& indecs() const { return ind_; }
    std::optional<int> find(int c0, int c1) const;
    std::vector<int> window_ids() const;
    std::vector<int> core_ids() const;
    bool in_window(const Obj& x) const;
    bool in_core(const Obj& x) const;

    // Hom spaces
    int hom_dim(int a, int b) const { return hom_[static_cast<std::size_t>(a) * size() + b]; }
    int hom_dim(const Obj& a, const Obj& b) const;
    const std::vector<Term>& comp(int a, int b, int c) const;
    // out += (basis(b,c)·g) ∘ (basis(a,b)·f) in basis(a,c)
    void comp_acc(int a, int b, int c, const Q* f, const Q* g, Q* out) const;

    // E spaces
    int ext_dim(int c, int a) const { return ext_[static_cast<std::size_t>(c) * size() + a]; }
    int ext_dim(const Obj& c, const Obj& a) const;
    virtual std::optional<int> ext2_dim(int c, int a) const = 0;

    // morphisms
    std::vector<int> layout(const Obj& a, const Obj& b) const;   // offsets, plus total at the end
    std::vector<int> ext_layout(const Obj& c, const Obj& a) const;
    Mor zero(const Obj& a, const Obj& b) const;
    Mor identity(const Obj& a) const;
    Mor basis_mor(const Obj& a, const Obj& b, int k) const;
    Mor compose(const Mor& g, const Mor& f) const;   // g ∘ f
    Mor add(const Mor& f, const Mor& g) const;
    Mor scale(const Mor& f, const Q& s) const;
    Mor sub(const Mor& f, const Mor& g) const { return add(f, scale(g, -1)); }
    bool is_zero(const Mor& f) const { return twin::is_zero(f.c); }
    // canonical maps between a summand position and the whole object
    Mor inject(const Obj& whole, int pos) const;
    Mor project(const Obj& whole, int pos) const;
    // component (i,j) as a morphism between indecomposables
    Mor component(const Mor& f, int i, int j) const;
    // (f g) : A -> B ⊕ C with sorted target, and the dual
    Mor pair_to(const Mor& f, const Mor& g) const;
    Mor pair_from(const Mor& f, const Mor& g) const;
    Mor direct_sum(const Mor& f, const Mor& g) const;

    // linear-algebra helpers over coefficient vectors
    Mat postcomp_matrix(const Mor& g, const Obj& x) const;   // Hom(x, g.src) -> Hom(x, g.dst)
    Mat precomp_matrix(const Mor& f, const Obj& y) const;    // Hom(f.dst, y) -> Hom(f.src, y)
    std::optional<Mor> lift(const Mor& g, const Mor& h) const;     // phi with g ∘ phi = h
    std::optional<Mor> extend(const Mor& f, const Mor& h) const;   // psi with psi ∘ f = h
    std::optional<Mor> inverse(const Mor& f) const;
    bool is_iso(const Mor& f) const { return inverse(f).has_value(); }

    // E functoriality
    ExtClass zero_ext(const Obj& c, const Obj& a) const;
    virtual ExtClass ext_push(const Mor& f, const ExtClass& d) const = 0;   // f : A -> A'
    virtual ExtClass ext_pull(const ExtClass& d, const Mor& g) const = 0;   // g : C' -> C

    // realization and (co)cones
    virtual Outcome<ETriangle> realize(const ExtClass& d) const = 0;
    virtual Outcome<ETriangle> cone(const Mor& f) const = 0;
    virtual Outcome<ETriangle> cocone(const Mor& g) const = 0;
    virtual bool is_inflation(const Mor& f) const = 0;
    virtual bool is_deflation(const Mor& g) const = 0;

    virtual std::optional<int> shift(int id, int s = 1) const { (void)id; (void)s; return std::nullopt; }
    virtual std::vector<int> projectives() const { return {}; }
    virtual std::vector<int> injectives() const { return {}; }

protected:
    void init_tables();   // allocate hom_/ext_ for size()
    void set_hom(int a, int b, int d) { hom_[static_cast<std::size_t>(a) * size() + b] = d; }
    void set_ext(int c, int a, int d) { ext_[static_cast<std::size_t>(c) * size() + a] = d; }
    void set_comp(int a, int b, int c, std::vector<Term> t);
    void index_coords();

    std::vector<Indec> ind_;

private:
    std::vector<int> hom_, ext_;
    std::unordered_map<long long, std::vector<Term>> comp_;
    std::unordered_map<long long, int> by_coords_;
};

// Exactness bookkeeping for the two six-term sequences of an E-triangle at an object x.
struct LesReport {
    bool exact = true;
    std::string where;
};
LesReport check_les(const Category& cat, const ETriangle& t, int x);

}  // namespace twin
