#ifndef CHARSPACE_HINV_LATTICE_HPP
#define CHARSPACE_HINV_LATTICE_HPP

// The tuple lattice L(t) and the hyperinvariant subspaces W(r) it indexes.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "charspace/gf2.hpp"
#include "charspace/nilmod.hpp"

namespace charspace {

// r with 0 <= r_1 <= ... <= r_m and 0 <= t_1 - r_1 <= ... <= t_m - r_m.
using LatticeTuple = std::vector<std::size_t>;

bool in_lattice(const SegreChar& t, const LatticeTuple& r);

// Every member of L(t), in lexicographic order.
std::vector<LatticeTuple> lattice_tuples(const SegreChar& t);

// prod (1 + t_i - t_{i-1}) with t_0 = 0.
std::uint64_t count_hinv(const SegreChar& t);

// W(r) = f^{r_1}<u_1> ⊕ ... ⊕ f^{r_m}<u_m>. Also builds
// sum_i (Im f^{r_i} ∩ Ker f^{t_i - r_i}) and throws InternalCheckFailed if
// the two disagree. Throws InvalidArgument when r is not in L(t).
Subspace w_subspace(const ModuleSpace& v, const LatticeTuple& r);

struct HinvElement {
    LatticeTuple r;
    Subspace w;
};

// W(r) for every r in L(t), lexicographic in r. Throws InternalCheckFailed
// if two tuples give the same subspace.
std::vector<HinvElement> enumerate_hinv(const ModuleSpace& v);

// Componentwise r <= s; W(r) ⊇ W(s) exactly when this holds.
bool precedes(const LatticeTuple& r, const LatticeTuple& s);

// Covering pairs (i, j) of the order on `tuples`: tuples[i] < tuples[j] with
// nothing strictly between.
std::vector<std::pair<std::size_t, std::size_t>> hasse_covers(const std::vector<LatticeTuple>& tuples);

// r ⪯ s ⟺ W(r) ⊇ W(s) for all pairs, and r -> W(r) injective.
bool lattice_iso_check(const ModuleSpace& v);

}  // namespace charspace

#endif
