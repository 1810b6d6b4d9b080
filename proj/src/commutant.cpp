#include "charspace/commutant.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "charspace/errors.hpp"

#ifdef CHARSPACE_HAVE_OPENMP
#include <omp.h>
#endif

namespace charspace {

BitMatrix endo_matrix(const ModuleSpace& v, const EndoTriple& t) {
    const std::size_t tf = v.block_size(t.from);
    const std::size_t tt = v.block_size(t.to);
    if (t.shift >= tt || t.shift + tf < tt) {
        throw InvalidArgument("phi(" + std::to_string(t.from + 1) + "," + std::to_string(t.to + 1) + "," +
                              std::to_string(t.shift) + ") is not an endomorphism");
    }
    BitMatrix m(v.dim(), v.dim());
    // column offset(from)+a carries f^a u_from to f^{a+shift} u_to
    for (std::size_t a = 0; a + t.shift < tt && a < tf; ++a) {
        m.set(v.offset(t.to) + a + t.shift, v.offset(t.from) + a);
    }
    return m;
}

std::vector<EndoTriple> endo_triples(const ModuleSpace& v) {
    std::vector<EndoTriple> out;
    for (std::size_t i = 0; i < v.blocks(); ++i) {
        for (std::size_t j = 0; j < v.blocks(); ++j) {
            const std::size_t ti = v.block_size(i);
            const std::size_t tj = v.block_size(j);
            for (std::size_t k = (tj > ti ? tj - ti : 0); k < tj; ++k) out.push_back({i, j, k});
        }
    }
    return out;
}

EndoBasis endo_basis(const ModuleSpace& v) {
    EndoBasis b;
    b.triples = endo_triples(v);
    b.elements.reserve(b.triples.size());
    for (const auto& t : b.triples) b.elements.push_back(endo_matrix(v, t));
    return b;
}

std::size_t commutant_dim(const SegreChar& t) {
    std::size_t d = 0;
    for (auto a : t.parts()) {
        for (auto b : t.parts()) d += std::min(a, b);
    }
    return d;
}

AutGenSet aut_generators(const ModuleSpace& v) {
    AutGenSet g;
    const BitMatrix id = BitMatrix::identity(v.dim());
    for (const auto& t : endo_triples(v)) {
        if (t.from == t.to && t.shift == 0) continue;
        g.triples.push_back(t);
        g.generators.push_back(id ^ endo_matrix(v, t));
    }
    g.provenance = AutProvenance::TransvectionFamily;
    return g;
}

namespace {

void check_aut_budget(std::size_t d, std::size_t budget) {
    if (d >= 63 || (std::size_t{1} << d) > budget) {
        throw BudgetExceeded("commutant has 2^" + std::to_string(d) + " elements, budget is " +
                             std::to_string(budget));
    }
}

// Visit every combination of basis[0..low) added onto `start`.
template <typename Visit>
void gray_walk(BitMatrix start, const std::vector<BitMatrix>& basis, std::size_t low, Visit&& visit) {
    visit(start);
    const std::size_t count = std::size_t{1} << low;
    for (std::size_t i = 1; i < count; ++i) {
        start ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        visit(start);
    }
}

}  // namespace

std::vector<BitMatrix> enumerate_aut_serial(const ModuleSpace& v, std::size_t budget) {
    const EndoBasis basis = endo_basis(v);
    check_aut_budget(basis.dim(), budget);
    std::vector<BitMatrix> units;
    gray_walk(BitMatrix(v.dim(), v.dim()), basis.elements, basis.dim(), [&](const BitMatrix& a) {
        if (is_invertible(a)) units.push_back(a);
    });
    return units;
}

std::vector<BitMatrix> enumerate_aut(const ModuleSpace& v, std::size_t budget) {
    const EndoBasis basis = endo_basis(v);
    const std::size_t d = basis.dim();
    check_aut_budget(d, budget);
    const std::size_t high = std::min<std::size_t>(d, 6);
    const std::size_t low = d - high;
    const std::size_t chunks = std::size_t{1} << high;
    std::vector<std::vector<BitMatrix>> found(chunks);

#ifdef CHARSPACE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        BitMatrix start(v.dim(), v.dim());
        for (std::size_t b = 0; b < high; ++b) {
            if ((static_cast<std::size_t>(c) >> b) & 1U) start ^= basis.elements[low + b];
        }
        auto& out = found[static_cast<std::size_t>(c)];
        gray_walk(std::move(start), basis.elements, low, [&](const BitMatrix& a) {
            if (is_invertible(a)) out.push_back(a);
        });
    }

    std::vector<BitMatrix> units;
    for (auto& chunk : found) {
        units.insert(units.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
    }
    return units;
}

std::vector<BitMatrix> generated_group(std::span<const BitMatrix> generators, std::size_t n,
                                       std::size_t cap) {
    std::vector<BitMatrix> elems{BitMatrix::identity(n)};
    std::unordered_set<BitMatrix> seen{elems.front()};
    for (std::size_t k = 0; k < elems.size(); ++k) {
        for (const auto& g : generators) {
            BitMatrix h = g * elems[k];
            if (seen.insert(h).second) {
                if (elems.size() >= cap) {
                    throw BudgetExceeded("group closure exceeded " + std::to_string(cap) + " elements");
                }
                elems.push_back(std::move(h));
            }
        }
    }
    return elems;
}

// ---------------------------------------------------------------------------
// Commutant

Commutant::Commutant(const ModuleSpace& v) : v_(v), endo_(endo_basis(v)), auts_(aut_generators(v)) {
    for (std::size_t i = 0; i < v_.blocks(); ++i) blocks_.push_back(v_.block_subspace(i));
}

void Commutant::check(const Subspace& x) const {
    if (x.ambient() != v_.dim()) throw DimensionMismatch("subspace does not live in this module");
}

bool Commutant::is_invariant(const Subspace& x) const { return charspace::is_invariant(v_, x); }

bool Commutant::is_hyperinvariant(const Subspace& x) const {
    if (!is_invariant(x)) return false;
    // Invariance under a spanning set of End(V,f) is invariance under all of it.
    for (const auto& e : endo_.elements) {
        for (const auto& b : x.basis_vectors()) {
            if (!x.contains(e.apply(b))) return false;
        }
    }
    return true;
}

bool Commutant::is_characteristic(const Subspace& x) const {
    if (!is_invariant(x)) return false;
    for (const auto& g : auts_.generators) {
        for (const auto& b : x.basis_vectors()) {
            if (!x.contains(g.apply(b))) return false;
        }
    }
    return true;
}

Subspace Commutant::hull(std::span<const BitVector> seeds) const {
    EchelonBuilder x(v_.dim());
    std::deque<BitVector> work;
    auto add = [&](BitVector w) {
        if (x.insert(w)) work.push_back(std::move(w));
    };
    for (const auto& s : seeds) {
        if (s.dim() != v_.dim()) throw DimensionMismatch("seed does not live in this module");
        add(s);
    }
    // Every inserted vector is pushed once; their images under f and the
    // generators are folded back in, so the span is closed on exit.
    while (!work.empty()) {
        BitVector w = std::move(work.front());
        work.pop_front();
        add(v_.apply_f(w));
        for (const auto& g : auts_.generators) add(g.apply(w));
    }
    return x.build();
}

Subspace Commutant::hull(const BitVector& seed) const { return hull(std::span<const BitVector>(&seed, 1)); }

Subspace Commutant::hull(const Subspace& seeds) const {
    check(seeds);
    return hull(std::span<const BitVector>(seeds.basis_vectors()));
}

std::unordered_set<BitVector> Commutant::orbit(const BitVector& x, std::size_t cap) const {
    if (x.dim() != v_.dim()) throw DimensionMismatch("vector does not live in this module");
    std::unordered_set<BitVector> seen{x};
    std::vector<BitVector> frontier{x};
    while (!frontier.empty()) {
        std::vector<BitVector> next;
        for (const auto& y : frontier) {
            for (const auto& g : auts_.generators) {
                BitVector z = g.apply(y);
                if (seen.insert(z).second) {
                    if (seen.size() > cap) {
                        throw OrbitTooLarge("orbit exceeds " + std::to_string(cap) + " vectors");
                    }
                    next.push_back(std::move(z));
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

Subspace Commutant::largest_hyperinvariant_inside(const Subspace& x) const {
    check(x);
    if (!is_characteristic(x)) throw PreconditionViolated("X_H requires a characteristic subspace");
    Subspace out(v_.dim());
    for (const auto& blk : blocks_) out = subspace_sum(out, subspace_intersect(x, blk));
    return out;
}

// ---------------------------------------------------------------------------

bool is_hyperinvariant(const ModuleSpace& v, const Subspace& x) { return Commutant(v).is_hyperinvariant(x); }

bool is_characteristic(const ModuleSpace& v, const Subspace& x) { return Commutant(v).is_characteristic(x); }

Subspace characteristic_hull(const ModuleSpace& v, std::span<const BitVector> seeds) {
    return Commutant(v).hull(seeds);
}

std::unordered_set<BitVector> orbit(const ModuleSpace& v, const BitVector& x, std::size_t cap) {
    return Commutant(v).orbit(x, cap);
}

Subspace largest_hyperinvariant_inside(const ModuleSpace& v, const Subspace& x) {
    return Commutant(v).largest_hyperinvariant_inside(x);
}

}  // namespace charspace
