#ifndef CHARSPACE_COMMUTANT_HPP
#define CHARSPACE_COMMUTANT_HPP

// End(V,f), Aut(V,f) and the subspace tests built on them.

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "charspace/gf2.hpp"
#include "charspace/nilmod.hpp"

namespace charspace {

// phi(from, to, shift): u_from -> f^shift u_to, zero on every other block.
// Well defined iff max(0, t_to - t_from) <= shift < t_to.
struct EndoTriple {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t shift = 0;
    friend bool operator==(const EndoTriple&, const EndoTriple&) = default;
};

struct EndoBasis {
    std::vector<EndoTriple> triples;
    std::vector<BitMatrix> elements;
    std::size_t dim() const noexcept { return elements.size(); }
};

enum class AutProvenance { TransvectionFamily, FullEnumeration };

struct AutGenSet {
    std::vector<BitMatrix> generators;
    std::vector<EndoTriple> triples;  // generator k is I + phi(triples[k])
    AutProvenance provenance = AutProvenance::TransvectionFamily;
};

inline constexpr std::size_t kDefaultAutBudget = std::size_t{1} << 22;
inline constexpr std::size_t kDefaultOrbitCap = std::size_t{1} << 20;

BitMatrix endo_matrix(const ModuleSpace& v, const EndoTriple& t);
std::vector<EndoTriple> endo_triples(const ModuleSpace& v);
EndoBasis endo_basis(const ModuleSpace& v);
// Sum over block pairs of min(t_i, t_j).
std::size_t commutant_dim(const SegreChar& t);

// I + phi(i,j,k) for every valid triple except (i,i,0).
AutGenSet aut_generators(const ModuleSpace& v);

// Every invertible element of the commutant, each once. Throws
// BudgetExceeded when 2^dim exceeds the budget. The parallel version
// splits the Gray-code walk into prefix chunks; the serial one is the
// reference it is tested against.
std::vector<BitMatrix> enumerate_aut(const ModuleSpace& v, std::size_t budget = kDefaultAutBudget);
std::vector<BitMatrix> enumerate_aut_serial(const ModuleSpace& v, std::size_t budget = kDefaultAutBudget);

// Multiplicative closure of a generating set of square matrices.
std::vector<BitMatrix> generated_group(std::span<const BitMatrix> generators, std::size_t n,
                                       std::size_t cap);

// Cached End/Aut data for repeated tests against one module.
class Commutant {
public:
    explicit Commutant(const ModuleSpace& v);

    const ModuleSpace& module() const noexcept { return v_; }
    const EndoBasis& endo() const noexcept { return endo_; }
    const AutGenSet& auts() const noexcept { return auts_; }

    bool is_invariant(const Subspace& x) const;
    bool is_hyperinvariant(const Subspace& x) const;
    bool is_characteristic(const Subspace& x) const;

    // Smallest subspace containing `seeds` and closed under f and Aut(V,f).
    Subspace hull(std::span<const BitVector> seeds) const;
    Subspace hull(const BitVector& seed) const;
    Subspace hull(const Subspace& seeds) const;

    // Aut(V,f)-orbit of x; throws OrbitTooLarge past `cap` vectors.
    std::unordered_set<BitVector> orbit(const BitVector& x, std::size_t cap = kDefaultOrbitCap) const;

    // X_H = ⊕ (X ∩ <u_i>); requires X characteristic.
    Subspace largest_hyperinvariant_inside(const Subspace& x) const;

private:
    void check(const Subspace& x) const;

    ModuleSpace v_;
    EndoBasis endo_;
    AutGenSet auts_;
    std::vector<Subspace> blocks_;
};

// One-shot wrappers; prefer a Commutant when testing many subspaces.
bool is_hyperinvariant(const ModuleSpace& v, const Subspace& x);
bool is_characteristic(const ModuleSpace& v, const Subspace& x);
Subspace characteristic_hull(const ModuleSpace& v, std::span<const BitVector> seeds);
std::unordered_set<BitVector> orbit(const ModuleSpace& v, const BitVector& x,
                                    std::size_t cap = kDefaultOrbitCap);
Subspace largest_hyperinvariant_inside(const ModuleSpace& v, const Subspace& x);

}  // namespace charspace

#endif
