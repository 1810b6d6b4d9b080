#ifndef CHARSPACE_CLASSIFY_HPP
#define CHARSPACE_CLASSIFY_HPP

// Characteristic subspaces that are not hyperinvariant: Shoda's criterion,
// the E ⊕ G split, and the classifications and constructions built on them.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "charspace/gf2.hpp"
#include "charspace/nilmod.hpp"

namespace charspace {

struct ShodaWitness {
    bool satisfied = false;
    std::optional<std::size_t> R;
    std::optional<std::size_t> S;
};

// Unrepeated R < S with R + 1 < S; the lexicographically least pair.
ShodaWitness shoda(const SegreChar& t);

// Hull of f^{R-s} u_rho + f^{S-q} u_tau where t_rho = R and t_tau = S.
// Throws ConstraintViolation naming the first inequality that fails.
Subspace construct_thm12(const ModuleSpace& v, std::size_t R, std::size_t S, std::size_t s, std::size_t q);

struct ChNotHinvEntry {
    // Hull of sum_i f^{mu_i} u_i; mu_i >= t_i means the term vanishes.
    std::vector<std::size_t> mu;
    Subspace subspace;
    Subspace x_h;
    SegreChar restriction_segre;

    std::size_t dim() const noexcept { return subspace.dim(); }
};

// t = (R, S) with R + 1 < S: one entry per (s, q) with 0 < s < q and
// 0 <= R - s < S - q, sorted by (s, q), mu = (R - s, S - q).
// Throws PreconditionViolated otherwise.
std::vector<ChNotHinvEntry> classify_two_generator(const ModuleSpace& v);

// E spans the blocks of unrepeated size, G the rest.
struct EGSplit {
    Subspace E;
    Subspace G;
    std::vector<std::size_t> e_blocks;
    std::vector<std::size_t> g_blocks;
};

EGSplit split_EG(const ModuleSpace& v);

// X = (X ∩ E) ⊕ (X ∩ G).
bool decomposition_holds(const ModuleSpace& v, const Subspace& x);

// decomposition_holds, X ∩ E characteristic in E and X ∩ G hyperinvariant
// in G. Throws PreconditionViolated unless X is characteristic.
bool check_decomposition(const ModuleSpace& v, const Subspace& x);

// No unrepeated sizes: the hulls of sum_i f^{r_i} u_i over r in L(t), which
// must coincide with the W(r). Throws PreconditionViolated otherwise.
std::vector<Subspace> classify_no_unrepeated(const ModuleSpace& v);

// Exactly two unrepeated sizes: every characteristic, non-hyperinvariant
// subspace, once each, ordered by mu. Empty when Shoda's criterion fails.
// Throws MoreThanTwoUnrepeated for three or more unrepeated sizes.
std::vector<ChNotHinvEntry> classify_two_unrepeated(const ModuleSpace& v);

// Hull of sum f^{mu_b} u_b over the given blocks (block -> mu). The blocks
// must have unrepeated sizes and there must be at least two of them.
// Throws ConstraintViolation naming the failed inequality.
Subspace construct_k_unrepeated(const ModuleSpace& v, const std::map<std::size_t, std::size_t>& mu);

// Two blocks, t_1 < t_2. k_i = nullopt stands for a zero component.
struct BaerNormalForm {
    std::optional<std::size_t> k1;
    std::optional<std::size_t> k2;
    BitVector vector;  // f^{k1} u_1 + f^{k2} u_2
};

BaerNormalForm baer_normal_form(const ModuleSpace& v, const BitVector& x);

// (Y + W)^c, after checking Y characteristic in E, W ⊆ G, Y_s ⊆ Y and
// Y_s + W characteristic in V. Verifies (Y + W)^c ∩ E = Y and that the result
// is not hyperinvariant when Y is not hyperinvariant in E.
Subspace extend_from_E(const ModuleSpace& v, const Subspace& y, const Subspace& w, const Subspace& y_s);

}  // namespace charspace

#endif
