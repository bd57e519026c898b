#pragma once

#include <map>
#include <utility>
#include <vector>

#include "twin/linalg.hpp"

// Brute-force engine: quiver representations of a line quiver v -> v+1 with
// monomial relations, bounded complexes, and Hom in the homotopy category by
// exact elimination. Everything else in the library is checked against this.
namespace twin::oracle {

class LineAlgebra {
public:
    // zero_paths: vertex intervals [s, t] whose path s -> t is declared zero
    LineAlgebra(int lo, int hi, std::vector<std::pair<int, int>> zero_paths = {});
    static LineAlgebra type_a(int n);
    // x_i x_{i+1} x_{i+2} = 0 for i != 4k and x_{4k} x_{4k+1} = 0, on vertices [lo, hi]
    static LineAlgebra lambda(int lo, int hi);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int size() const { return hi_ - lo_ + 1; }
    bool contains(int v) const { return v >= lo_ && v <= hi_; }
    // the path from -> to is nonzero (from <= to, both in range)
    bool path(int from, int to) const;
    int proj_end(int v) const { return pend_[v - lo_]; }
    int inj_start(int v) const { return istart_[v - lo_]; }
    const std::vector<std::pair<int, int>>& relations() const { return rel_; }

private:
    int lo_, hi_;
    std::vector<std::pair<int, int>> rel_;
    std::vector<int> pend_, istart_;
};

struct Rep {
    int lo = 0;
    std::vector<int> dim;      // per vertex
    std::vector<Mat> arrow;    // arrow[v - lo] : dim(v) -> dim(v+1)

    int at(int v) const {
        return v < lo || v >= lo + static_cast<int>(dim.size()) ? 0 : dim[v - lo];
    }
    int hi() const { return lo + static_cast<int>(dim.size()) - 1; }
    int total() const;
    // composite of arrow maps from -> to
    Mat path_action(int from, int to) const;
    bool satisfies(const LineAlgebra& alg) const;
};

Rep zero_rep(const LineAlgebra& alg);
Rep interval_rep(const LineAlgebra& alg, int a, int b);
Rep direct_sum(const Rep& x, const Rep& y);

struct RepMap {
    std::vector<Mat> at;   // per vertex, dim_tgt x dim_src
};

RepMap zero_map(const Rep& src, const Rep& tgt);
RepMap compose(const RepMap& g, const RepMap& f);
bool is_hom(const Rep& src, const Rep& tgt, const RepMap& f);
// basis of module homomorphisms by solving the commutativity equations directly
std::vector<RepMap> rep_hom_basis(const Rep& src, const Rep& tgt);

// multiplicity of every interval [a,b] via the rank formula
std::map<std::pair<int, int>, int> barcode(const Rep& m);

struct RepComplex {
    std::map<int, Rep> term;
    std::map<int, RepMap> d;   // d[k] : term k -> term k+1
};

RepComplex stalk(const Rep& m, int degree);
std::vector<int> homology_dims(const RepComplex& c, int degree);
Rep homology(const RepComplex& c, int degree);

// Bounded complex of projectives P_v = [v, proj_end(v)]. d[k](u, t) is the scalar in front of
// the path from the vertex of summand u (degree k+1) to the vertex of summand t (degree k).
struct PComplex {
    std::map<int, std::vector<int>> terms;
    std::map<int, Mat> d;

    const std::vector<int>& term(int k) const;
    Mat diff(int k) const;
    int lo() const { return terms.empty() ? 0 : terms.begin()->first; }
    int hi() const { return terms.empty() ? -1 : terms.rbegin()->first; }
    int summands() const;
    bool empty() const { return summands() == 0; }
    void normalize();   // drop empty degrees
};

struct PMap {
    std::map<int, Mat> f;   // f[k] : |tgt.term(k)| x |src.term(k)|
};

bool admissible(const LineAlgebra& alg, const PComplex& c);    // d respects paths and d∘d = 0
PMap zero_pmap(const PComplex& src, const PComplex& tgt);
PMap identity_pmap(const PComplex& c);
Mat compose_mat(const LineAlgebra& alg, const Mat& g, const Mat& f, const std::vector<int>& src,
                const std::vector<int>& tgt);
PMap compose(const LineAlgebra& alg, const PMap& g, const PMap& f, const PComplex& src,
             const PComplex& tgt);
PMap add(const PMap& a, const PMap& b);
PMap scale(const PMap& a, const Q& s);
bool is_chain_map(const LineAlgebra& alg, const PComplex& src, const PComplex& tgt, const PMap& f);

PComplex shift(const PComplex& c, int s);
PMap shift(const PMap& f, int s);
PComplex direct_sum(const std::vector<const PComplex*>& parts);
// canonical injection / projection for summand `which` of direct_sum(parts)
PMap injection(const std::vector<const PComplex*>& parts, int which);
PMap projection(const std::vector<const PComplex*>& parts, int which);
PComplex cone(const PComplex& x, const PComplex& y, const PMap& f);
// maps in the standard triangle x -> y -> cone(f) -> x[1]
PMap cone_in(const PComplex& x, const PComplex& y);
PMap cone_out(const PComplex& x, const PComplex& y);
RepComplex to_rep(const LineAlgebra& alg, const PComplex& c);

// Projective resolution truncated to `length` + 1 terms in degrees -length..0.
PComplex resolution(const LineAlgebra& alg, const Rep& m, int length);

// Hom_K(P, B) for P a complex of projectives.
class ChainHom {
public:
    ChainHom() = default;
    ChainHom(const LineAlgebra& alg, const PComplex& p, const RepComplex& b,
             const std::vector<Vec>& preferred = {});

    int dim() const { return q_.dim(); }
    int ambient() const { return n_; }
    const std::vector<Vec>& basis() const { return q_.basis(); }
    std::optional<Vec> coords(const Vec& cycle) const { return q_.coords(cycle); }
    bool null_homotopic(const Vec& cycle) const { return q_.is_trivial(cycle); }

    // layout: for degree k and summand t of P^k, the offset of its block (size dim B^k at the vertex)
    const std::map<std::pair<int, int>, std::pair<int, int>>& blocks() const { return blocks_; }

private:
    int n_ = 0;
    std::map<std::pair<int, int>, std::pair<int, int>> blocks_;   // (k,t) -> (offset, size)
    Subquotient q_;
};

// Convenience for a projective target: flatten / unflatten chain maps P -> Q.
class PHom {
public:
    PHom() = default;
    PHom(const LineAlgebra& alg, const PComplex& p, const PComplex& q, bool prefer_identity = false);

    int dim() const { return h_.dim(); }
    PMap basis_map(int i) const { return unflatten(h_.basis()[i]); }
    std::optional<Vec> coords(const PMap& f) const { return h_.coords(flatten(f)); }
    bool null_homotopic(const PMap& f) const { return h_.null_homotopic(flatten(f)); }
    Vec flatten(const PMap& f) const;
    PMap unflatten(const Vec& v) const;

private:
    // for each (degree, source summand) the target summands u with a path from u to it
    std::map<std::pair<int, int>, std::vector<int>> cols_;
    PComplex p_, q_;
    ChainHom h_;
};

}  // namespace twin::oracle
