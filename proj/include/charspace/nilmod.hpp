#ifndef CHARSPACE_NILMOD_HPP
#define CHARSPACE_NILMOD_HPP

// The canonical module V = <u_1> ⊕ ... ⊕ <u_m> of a nilpotent map f over GF(2).
//
// Block i occupies coordinates offset(i) .. offset(i)+t_i-1 and carries
// u_i, f u_i, ..., f^{t_i-1} u_i in that order, so f is the lower shift
// inside every block. Block indices are 0-based in the API; u1 is block 0.

#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charspace/gf2.hpp"

namespace charspace {

// Block sizes t_1 <= ... <= t_m, all >= 1. May be empty (the zero module).
class SegreChar {
public:
    SegreChar() = default;
    // Throws InvalidArgument unless parts are positive and nondecreasing.
    explicit SegreChar(std::vector<std::size_t> parts);
    static SegreChar sorted(std::vector<std::size_t> parts);

    const std::vector<std::size_t>& parts() const noexcept { return parts_; }
    std::size_t count() const noexcept { return parts_.size(); }
    std::size_t total() const noexcept;
    bool empty() const noexcept { return parts_.empty(); }
    std::size_t operator[](std::size_t i) const noexcept { return parts_[i]; }

    std::size_t multiplicity(std::size_t r) const noexcept;
    // Sizes occurring exactly once, increasing.
    std::vector<std::size_t> unrepeated_parts() const;
    std::string to_string() const;

    friend bool operator==(const SegreChar&, const SegreChar&) = default;

private:
    std::vector<std::size_t> parts_;
};

class ModuleSpace {
public:
    // Throws InvalidArgument for the empty partition.
    explicit ModuleSpace(SegreChar segre);

    const SegreChar& segre() const noexcept { return segre_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t blocks() const noexcept { return segre_.count(); }
    std::size_t offset(std::size_t block) const noexcept { return offsets_[block]; }
    std::size_t block_size(std::size_t block) const noexcept { return segre_[block]; }
    std::size_t block_of(std::size_t coord) const;

    const BitMatrix& f_matrix() const noexcept { return f_; }
    BitVector generator(std::size_t block) const;
    // f^power u_block; the zero vector once power >= t_block.
    BitVector basis_vector(std::size_t block, std::size_t power) const;
    BitVector zero() const { return BitVector(dim_); }

    BitVector apply_f(const BitVector& x) const;
    BitVector apply_f_power(BitVector x, std::size_t k) const;
    Subspace apply_f_power(const Subspace& s, std::size_t k) const;

    // Im f^k and Ker f^k, precomputed for every k.
    const Subspace& image_power(std::size_t k) const;
    const Subspace& kernel_power(std::size_t k) const;

    const BitVector& block_mask(std::size_t block) const noexcept { return block_masks_[block]; }
    // The cyclic block <u_block>.
    Subspace block_subspace(std::size_t block) const;

private:
    SegreChar segre_;
    std::size_t dim_ = 0;
    std::vector<std::size_t> offsets_;
    BitMatrix f_;
    BitVector top_mask_;  // last coordinate of every block
    std::vector<BitVector> block_masks_;
    std::vector<Subspace> images_;
    std::vector<Subspace> kernels_;
};

ModuleSpace build_module(const SegreChar& t);

inline constexpr int kNegInfinity = INT_MIN;
inline constexpr int kInfinity = INT_MAX;

// H(x) truncated at the exponent: heights[j] = h(f^j x) for j < exponent.
struct Indicator {
    std::size_t exponent = 0;
    std::vector<int> heights;

    // (h(x), h(fx), ..., h(f^{n-1}x)) with trailing kInfinity entries.
    // The zero vector renders as n copies of kNegInfinity.
    std::vector<int> full_sequence(std::size_t n) const;
    friend bool operator==(const Indicator&, const Indicator&) = default;
};

std::size_t exponent(const ModuleSpace& v, const BitVector& x);
// kNegInfinity for the zero vector.
int height(const ModuleSpace& v, const BitVector& x);
Indicator indicator(const ModuleSpace& v, const BitVector& x);
bool has_gap(const Indicator& ind);

// d(f, r) = dim(Ker f ∩ Im f^{r-1}) - dim(Ker f ∩ Im f^r), 1 <= r <= n.
std::size_t ulm_invariant(const ModuleSpace& v, std::size_t r);

bool is_generator(const ModuleSpace& v, const BitVector& u);

// Block component of x.
BitVector project(const ModuleSpace& v, const BitVector& x, std::size_t block);

// <x> = span{x, fx, f^2 x, ...}
Subspace cyclic(const ModuleSpace& v, const BitVector& x);

// Height and exponent of a sum x_1 + ... + x_m with x_i in block i,
// computed from the components alone. Throws if a component leaves its
// block or if every component is zero.
std::pair<int, std::size_t> min_max_laws_check(const ModuleSpace& v,
                                               const std::vector<BitVector>& components);

bool is_invariant(const ModuleSpace& v, const Subspace& x);

// Jordan type of f restricted to an f-invariant subspace.
SegreChar segre_of_restriction(const ModuleSpace& v, const Subspace& x);

// The submodule spanned by a set of blocks, with coordinate transport.
class BlockRestriction {
public:
    BlockRestriction(const ModuleSpace& parent, std::vector<std::size_t> blocks);

    const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }
    // nullopt when no blocks were selected.
    const std::optional<ModuleSpace>& module() const noexcept { return sub_; }
    std::size_t dim() const noexcept { return coords_.size(); }

    // The selected blocks as a subspace of the parent.
    const Subspace& as_subspace() const noexcept { return span_; }
    // Parent vector supported on the selected blocks -> sub-module vector.
    BitVector restrict(const BitVector& x) const;
    BitVector embed(const BitVector& y) const;
    Subspace restrict(const Subspace& s) const;
    Subspace embed(const Subspace& s) const;

private:
    std::size_t parent_dim_;
    std::vector<std::size_t> blocks_;
    std::vector<std::size_t> coords_;  // parent coordinate of each sub coordinate
    std::optional<ModuleSpace> sub_;
    Subspace span_;
};

}  // namespace charspace

#endif
