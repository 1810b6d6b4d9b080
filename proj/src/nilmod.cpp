#include "charspace/nilmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "charspace/errors.hpp"

namespace charspace {

// ---------------------------------------------------------------------------
// SegreChar

SegreChar::SegreChar(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0) throw InvalidArgument("block sizes must be positive");
        if (i > 0 && parts_[i] < parts_[i - 1]) {
            throw InvalidArgument("block sizes must be nondecreasing: " + to_string());
        }
    }
}

SegreChar SegreChar::sorted(std::vector<std::size_t> parts) {
    std::sort(parts.begin(), parts.end());
    return SegreChar(std::move(parts));
}

std::size_t SegreChar::total() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0});
}

std::size_t SegreChar::multiplicity(std::size_t r) const noexcept {
    return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), r));
}

std::vector<std::size_t> SegreChar::unrepeated_parts() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (multiplicity(parts_[i]) == 1) out.push_back(parts_[i]);
    }
    return out;
}

std::string SegreChar::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// ModuleSpace

ModuleSpace::ModuleSpace(SegreChar segre) : segre_(std::move(segre)) {
    if (segre_.empty()) throw InvalidArgument("empty Segre characteristic");
    dim_ = segre_.total();
    f_ = BitMatrix(dim_, dim_);
    top_mask_ = BitVector(dim_);
    std::size_t off = 0;
    for (std::size_t b = 0; b < segre_.count(); ++b) {
        offsets_.push_back(off);
        BitVector mask(dim_);
        for (std::size_t k = 0; k < segre_[b]; ++k) {
            mask.set(off + k);
            if (k + 1 < segre_[b]) f_.set(off + k + 1, off + k);
        }
        top_mask_.set(off + segre_[b] - 1);
        block_masks_.push_back(std::move(mask));
        off += segre_[b];
    }
    const std::size_t top = segre_.parts().back();
    BitMatrix fk = BitMatrix::identity(dim_);
    for (std::size_t k = 0; k <= top; ++k) {
        images_.push_back(image_basis(fk));
        kernels_.push_back(kernel_basis(fk));
        fk = f_ * fk;
    }
    if (!fk.is_zero()) throw InternalCheckFailed("shift matrix is not nilpotent");
}

ModuleSpace build_module(const SegreChar& t) { return ModuleSpace(t); }

std::size_t ModuleSpace::block_of(std::size_t coord) const {
    if (coord >= dim_) throw InvalidArgument("coordinate outside module");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), coord);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

BitVector ModuleSpace::generator(std::size_t block) const { return basis_vector(block, 0); }

BitVector ModuleSpace::basis_vector(std::size_t block, std::size_t power) const {
    if (block >= blocks()) {
        throw InvalidArgument("block " + std::to_string(block + 1) + " does not exist");
    }
    BitVector v(dim_);
    if (power < segre_[block]) v.set(offsets_[block] + power);
    return v;
}

BitVector ModuleSpace::apply_f(const BitVector& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("vector does not live in this module");
    BitVector y = x;
    auto w = y.words();
    auto top = top_mask_.words();
    for (std::size_t k = 0; k < w.size(); ++k) w[k] &= ~top[k];
    for (std::size_t k = w.size(); k-- > 0;) {
        w[k] <<= 1U;
        if (k > 0) w[k] |= w[k - 1] >> (kWordBits - 1);
    }
    return y;
}

BitVector ModuleSpace::apply_f_power(BitVector x, std::size_t k) const {
    for (std::size_t i = 0; i < k && !x.is_zero(); ++i) x = apply_f(x);
    return x;
}

Subspace ModuleSpace::apply_f_power(const Subspace& s, std::size_t k) const {
    EchelonBuilder b(dim_);
    for (const auto& v : s.basis_vectors()) b.insert(apply_f_power(v, k));
    return b.build();
}

const Subspace& ModuleSpace::image_power(std::size_t k) const {
    return images_[std::min(k, images_.size() - 1)];
}

const Subspace& ModuleSpace::kernel_power(std::size_t k) const {
    return kernels_[std::min(k, kernels_.size() - 1)];
}

Subspace ModuleSpace::block_subspace(std::size_t block) const { return cyclic(*this, generator(block)); }

// ---------------------------------------------------------------------------
// Indicator and friends

std::vector<int> Indicator::full_sequence(std::size_t n) const {
    if (exponent == 0) return std::vector<int>(n, kNegInfinity);
    std::vector<int> seq(n, kInfinity);
    std::copy(heights.begin(), heights.end(), seq.begin());
    return seq;
}

std::size_t exponent(const ModuleSpace& v, const BitVector& x) {
    std::size_t e = 0;
    BitVector y = x;
    while (!y.is_zero()) {
        y = v.apply_f(y);
        ++e;
    }
    return e;
}

int height(const ModuleSpace& v, const BitVector& x) {
    if (x.dim() != v.dim()) throw DimensionMismatch("vector does not live in this module");
    if (x.is_zero()) return kNegInfinity;
    int q = 0;
    while (v.image_power(static_cast<std::size_t>(q) + 1).contains(x)) ++q;
    return q;
}

Indicator indicator(const ModuleSpace& v, const BitVector& x) {
    Indicator ind;
    BitVector y = x;
    while (!y.is_zero()) {
        ind.heights.push_back(height(v, y));
        y = v.apply_f(y);
    }
    ind.exponent = ind.heights.size();
    return ind;
}

bool has_gap(const Indicator& ind) {
    for (std::size_t j = 1; j < ind.exponent; ++j) {
        if (ind.heights[j] > 1 + ind.heights[j - 1]) return true;
    }
    return false;
}

std::size_t ulm_invariant(const ModuleSpace& v, std::size_t r) {
    if (r < 1 || r > v.dim()) {
        throw InvalidArgument("Ulm index " + std::to_string(r) + " outside 1.." + std::to_string(v.dim()));
    }
    const Subspace& socle = v.kernel_power(1);
    return subspace_intersect(socle, v.image_power(r - 1)).dim() -
           subspace_intersect(socle, v.image_power(r)).dim();
}

bool is_generator(const ModuleSpace& v, const BitVector& u) {
    if (u.dim() != v.dim()) throw DimensionMismatch("vector does not live in this module");
    if (u.is_zero()) return false;
    const Indicator ind = indicator(v, u);
    if (v.segre().multiplicity(ind.exponent) == 0) return false;
    for (std::size_t j = 0; j < ind.exponent; ++j) {
        if (ind.heights[j] != static_cast<int>(j)) return false;
    }
    return true;
}

BitVector project(const ModuleSpace& v, const BitVector& x, std::size_t block) {
    if (block >= v.blocks()) {
        throw InvalidArgument("block " + std::to_string(block + 1) + " does not exist");
    }
    return x & v.block_mask(block);
}

Subspace cyclic(const ModuleSpace& v, const BitVector& x) {
    if (x.dim() != v.dim()) throw DimensionMismatch("vector does not live in this module");
    EchelonBuilder b(v.dim());
    for (BitVector y = x; !y.is_zero(); y = v.apply_f(y)) b.insert(y);
    return b.build();
}

std::pair<int, std::size_t> min_max_laws_check(const ModuleSpace& v,
                                               const std::vector<BitVector>& components) {
    if (components.size() != v.blocks()) {
        throw InvalidArgument("expected one component per block");
    }
    int h = kInfinity;
    std::size_t e = 0;
    bool any = false;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const BitVector& c = components[i];
        if (c.dim() != v.dim()) throw DimensionMismatch("component does not live in this module");
        if (!(c ^ (c & v.block_mask(i))).is_zero()) {
            throw InvalidArgument("component " + std::to_string(i + 1) + " leaves its block");
        }
        if (c.is_zero()) continue;
        any = true;
        h = std::min(h, height(v, c));
        e = std::max(e, exponent(v, c));
    }
    if (!any) throw InvalidArgument("all components are zero");
    return {h, e};
}

bool is_invariant(const ModuleSpace& v, const Subspace& x) {
    if (x.ambient() != v.dim()) throw DimensionMismatch("subspace does not live in this module");
    return std::all_of(x.basis_vectors().begin(), x.basis_vectors().end(),
                       [&](const BitVector& b) { return x.contains(v.apply_f(b)); });
}

SegreChar segre_of_restriction(const ModuleSpace& v, const Subspace& x) {
    if (!is_invariant(v, x)) throw PreconditionViolated("subspace is not f-invariant");
    // ranks[k] = dim f^k X
    std::vector<std::size_t> ranks{x.dim()};
    Subspace cur = x;
    while (!cur.is_zero()) {
        cur = v.apply_f_power(cur, 1);
        ranks.push_back(cur.dim());
    }
    ranks.push_back(0);
    std::vector<std::size_t> parts;
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k) {
        const std::size_t at_least_k = ranks[k - 1] - ranks[k];
        const std::size_t at_least_k1 = ranks[k] - ranks[k + 1];
        parts.insert(parts.end(), at_least_k - at_least_k1, k);
    }
    return SegreChar(std::move(parts));
}

// ---------------------------------------------------------------------------
// BlockRestriction

BlockRestriction::BlockRestriction(const ModuleSpace& parent, std::vector<std::size_t> blocks)
    : parent_dim_(parent.dim()), blocks_(std::move(blocks)), span_(parent.dim()) {
    std::sort(blocks_.begin(), blocks_.end());
    blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
    std::vector<std::size_t> parts;
    EchelonBuilder eb(parent.dim());
    for (auto b : blocks_) {
        if (b >= parent.blocks()) throw InvalidArgument("block index out of range");
        parts.push_back(parent.block_size(b));
        for (std::size_t k = 0; k < parent.block_size(b); ++k) {
            coords_.push_back(parent.offset(b) + k);
            eb.insert(BitVector::unit(parent.dim(), parent.offset(b) + k));
        }
    }
    span_ = eb.build();
    if (!parts.empty()) sub_.emplace(SegreChar(std::move(parts)));
}

BitVector BlockRestriction::restrict(const BitVector& x) const {
    if (x.dim() != parent_dim_) throw DimensionMismatch("vector does not live in the parent module");
    if (!span_.contains(x)) throw InvalidArgument("vector is not supported on the selected blocks");
    BitVector y(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (x.get(coords_[i])) y.set(i);
    }
    return y;
}

BitVector BlockRestriction::embed(const BitVector& y) const {
    if (y.dim() != coords_.size()) throw DimensionMismatch("vector does not live in the submodule");
    BitVector x(parent_dim_);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (y.get(i)) x.set(coords_[i]);
    }
    return x;
}

Subspace BlockRestriction::restrict(const Subspace& s) const {
    EchelonBuilder b(coords_.size());
    for (const auto& v : s.basis_vectors()) b.insert(restrict(v));
    return b.build();
}

Subspace BlockRestriction::embed(const Subspace& s) const {
    EchelonBuilder b(parent_dim_);
    for (const auto& v : s.basis_vectors()) b.insert(embed(v));
    return b.build();
}

}  // namespace charspace
