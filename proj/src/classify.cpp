#include "charspace/classify.hpp"

#include <algorithm>
#include <unordered_map>

#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"
#include "charspace/hinv_lattice.hpp"

namespace charspace {

namespace {

std::size_t unique_block_of_size(const ModuleSpace& v, std::size_t size) {
    const SegreChar& t = v.segre();
    if (t.multiplicity(size) != 1) {
        throw ConstraintViolation("block size " + std::to_string(size) + " is not unrepeated in " + t.to_string());
    }
    for (std::size_t i = 0; i < t.count(); ++i) {
        if (t[i] == size) return i;
    }
    return t.count();
}

BitVector power_sum(const ModuleSpace& v, const std::vector<std::size_t>& mu) {
    BitVector z = v.zero();
    for (std::size_t i = 0; i < mu.size(); ++i) z ^= v.basis_vector(i, mu[i]);
    return z;
}

// Runs a characteristic test inside the submodule spanned by `blocks`.
// The zero submodule only holds the zero subspace, which passes both tests.
struct SubmoduleTests {
    SubmoduleTests(const ModuleSpace& v, const std::vector<std::size_t>& blocks) : restriction(v, blocks) {
        if (restriction.module()) comm.emplace(*restriction.module());
    }
    bool characteristic(const Subspace& x) const {
        return !comm || comm->is_characteristic(restriction.restrict(x));
    }
    bool hyperinvariant(const Subspace& x) const {
        return !comm || comm->is_hyperinvariant(restriction.restrict(x));
    }

    BlockRestriction restriction;
    std::optional<Commutant> comm;
};

}  // namespace

ShodaWitness shoda(const SegreChar& t) {
    const auto un = t.unrepeated_parts();
    for (std::size_t a = 0; a < un.size(); ++a) {
        for (std::size_t b = a + 1; b < un.size(); ++b) {
            if (un[a] + 1 < un[b]) return {true, un[a], un[b]};
        }
    }
    return {};
}

Subspace construct_thm12(const ModuleSpace& v, std::size_t R, std::size_t S, std::size_t s, std::size_t q) {
    const std::size_t rho = unique_block_of_size(v, R);
    const std::size_t tau = unique_block_of_size(v, S);
    if (!(R + 1 < S)) throw ConstraintViolation("R + 1 < S fails");
    if (!(s > 0)) throw ConstraintViolation("0 < s fails");
    if (!(s <= R)) throw ConstraintViolation("s <= R fails");
    if (!(s < q)) throw ConstraintViolation("s < q fails");
    if (!(q <= S && R - s < S - q)) throw ConstraintViolation("R - s < S - q fails");
    BitVector z = v.basis_vector(rho, R - s) ^ v.basis_vector(tau, S - q);
    return Commutant(v).hull(z);
}

std::vector<ChNotHinvEntry> classify_two_generator(const ModuleSpace& v) {
    const SegreChar& t = v.segre();
    if (t.count() != 2 || !(t[0] + 1 < t[1])) {
        throw PreconditionViolated("two-generator classification needs t = (R, S) with R + 1 < S, got " +
                                   t.to_string());
    }
    const std::size_t R = t[0];
    const std::size_t S = t[1];
    const Commutant comm(v);
    std::vector<ChNotHinvEntry> out;
    for (std::size_t s = 1; s <= R; ++s) {
        for (std::size_t q = s + 1; q + R < S + s; ++q) {
            ChNotHinvEntry e;
            e.mu = {R - s, S - q};
            e.subspace = comm.hull(power_sum(v, e.mu));
            const std::string tag = " for (s,q) = (" + std::to_string(s) + "," + std::to_string(q) + ")";
            if (!comm.is_characteristic(e.subspace) || comm.is_hyperinvariant(e.subspace)) {
                throw InternalCheckFailed("hull is not characteristic-not-hyperinvariant" + tag);
            }
            if (e.subspace.dim() != s + q - 1) throw InternalCheckFailed("dim X != s + q - 1" + tag);
            e.x_h = comm.largest_hyperinvariant_inside(e.subspace);
            if (e.x_h != subspace_intersect(v.image_power(R - s + 1), v.kernel_power(q - 1))) {
                throw InternalCheckFailed("X_H != Im f^{R-s+1} ∩ Ker f^{q-1}" + tag);
            }
            e.restriction_segre = segre_of_restriction(v, e.subspace);
            const SegreChar expect = s > 1 ? SegreChar({s - 1, q}) : SegreChar({q});
            if (e.restriction_segre != expect) throw InternalCheckFailed("restriction Segre mismatch" + tag);
            out.push_back(std::move(e));
        }
    }
    return out;
}

EGSplit split_EG(const ModuleSpace& v) {
    EGSplit sp;
    for (std::size_t i = 0; i < v.blocks(); ++i) {
        (v.segre().multiplicity(v.block_size(i)) == 1 ? sp.e_blocks : sp.g_blocks).push_back(i);
    }
    sp.E = BlockRestriction(v, sp.e_blocks).as_subspace();
    sp.G = BlockRestriction(v, sp.g_blocks).as_subspace();
    return sp;
}

bool decomposition_holds(const ModuleSpace& v, const Subspace& x) {
    const EGSplit sp = split_EG(v);
    return subspace_sum(subspace_intersect(x, sp.E), subspace_intersect(x, sp.G)) == x;
}

bool check_decomposition(const ModuleSpace& v, const Subspace& x) {
    if (!Commutant(v).is_characteristic(x)) {
        throw PreconditionViolated("decomposition check requires a characteristic subspace");
    }
    if (!decomposition_holds(v, x)) return false;
    const EGSplit sp = split_EG(v);
    return SubmoduleTests(v, sp.e_blocks).characteristic(subspace_intersect(x, sp.E)) &&
           SubmoduleTests(v, sp.g_blocks).hyperinvariant(subspace_intersect(x, sp.G));
}

std::vector<Subspace> classify_no_unrepeated(const ModuleSpace& v) {
    if (!v.segre().unrepeated_parts().empty()) {
        throw PreconditionViolated(v.segre().to_string() + " has unrepeated block sizes");
    }
    const Commutant comm(v);
    std::vector<Subspace> out;
    for (const auto& r : lattice_tuples(v.segre())) {
        Subspace x = comm.hull(power_sum(v, r));
        if (x != w_subspace(v, r)) throw InternalCheckFailed("hull of the lattice sum differs from W(r)");
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<ChNotHinvEntry> classify_two_unrepeated(const ModuleSpace& v) {
    const SegreChar& t = v.segre();
    const auto un = t.unrepeated_parts();
    if (un.size() > 2) {
        throw MoreThanTwoUnrepeated(t.to_string() + " has " + std::to_string(un.size()) + " unrepeated sizes");
    }
    const ShodaWitness w = shoda(t);
    if (!w.satisfied) return {};
    const std::size_t R = *w.R;
    const std::size_t S = *w.S;
    const std::size_t rho = unique_block_of_size(v, R);
    const std::size_t tau = unique_block_of_size(v, S);
    const Commutant comm(v);

    // mu + e_rho + e_tau ranges over L(t). Several mu can share a hull; the
    // representative kept is the one whose shifted tuple indexes X_H.
    std::vector<ChNotHinvEntry> out;
    std::unordered_map<Subspace, std::size_t> index;
    for (const auto& shifted : lattice_tuples(t)) {
        if (shifted[rho] == 0 || shifted[tau] == 0) continue;
        std::vector<std::size_t> mu = shifted;
        --mu[rho];
        --mu[tau];
        if (!(mu[rho] < mu[tau] && R - mu[rho] > 0 && R - mu[rho] < S - mu[tau])) continue;

        Subspace x = comm.hull(power_sum(v, mu));
        auto it = index.find(x);
        if (it == index.end()) {
            if (!comm.is_characteristic(x) || comm.is_hyperinvariant(x)) {
                throw InternalCheckFailed("hull for an admissible mu is not characteristic-not-hyperinvariant");
            }
            ChNotHinvEntry e;
            e.mu = std::move(mu);
            e.x_h = comm.largest_hyperinvariant_inside(x);
            e.restriction_segre = segre_of_restriction(v, x);
            e.subspace = x;
            index.emplace(std::move(x), out.size());
            out.push_back(std::move(e));
            continue;
        }
        ChNotHinvEntry& e = out[it->second];
        std::vector<std::size_t> kept = e.mu;
        ++kept[rho];
        ++kept[tau];
        if (w_subspace(v, kept) != e.x_h && w_subspace(v, shifted) == e.x_h) e.mu = std::move(mu);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
    return out;
}

Subspace construct_k_unrepeated(const ModuleSpace& v, const std::map<std::size_t, std::size_t>& mu) {
    if (mu.size() < 2) throw ConstraintViolation("at least two unrepeated blocks are required");
    std::optional<std::pair<std::size_t, std::size_t>> prev;  // (mu, t - mu) of the previous block
    std::vector<std::size_t> powers(v.blocks(), 0);
    for (std::size_t i = 0; i < v.blocks(); ++i) powers[i] = v.block_size(i);
    for (const auto& [block, m] : mu) {
        if (block >= v.blocks()) throw InvalidArgument("block " + std::to_string(block + 1) + " does not exist");
        const std::size_t tb = v.block_size(block);
        const std::string name = "u" + std::to_string(block + 1);
        if (v.segre().multiplicity(tb) != 1) throw ConstraintViolation(name + " has a repeated block size");
        if (!(m < tb)) throw ConstraintViolation("mu < t fails at " + name);
        if (prev) {
            if (!(prev->first < m)) throw ConstraintViolation("mu increasing fails at " + name);
            if (!(prev->second < tb - m)) throw ConstraintViolation("t - mu increasing fails at " + name);
        }
        prev.emplace(m, tb - m);
        powers[block] = m;
    }
    const Commutant comm(v);
    Subspace x = comm.hull(power_sum(v, powers));
    if (!comm.is_characteristic(x) || comm.is_hyperinvariant(x)) {
        throw InternalCheckFailed("constructed hull is not characteristic-not-hyperinvariant");
    }
    return x;
}

BaerNormalForm baer_normal_form(const ModuleSpace& v, const BitVector& x) {
    if (v.blocks() != 2 || !(v.block_size(0) < v.block_size(1))) {
        throw PreconditionViolated("Baer normal form needs two blocks with t_1 < t_2");
    }
    BaerNormalForm nf;
    nf.vector = v.zero();
    for (std::size_t i = 0; i < 2; ++i) {
        const BitVector c = project(v, x, i);
        if (c.is_zero()) continue;
        const auto k = static_cast<std::size_t>(height(v, c));
        (i == 0 ? nf.k1 : nf.k2) = k;
        nf.vector ^= v.basis_vector(i, k);
    }
    return nf;
}

Subspace extend_from_E(const ModuleSpace& v, const Subspace& y, const Subspace& w, const Subspace& y_s) {
    const EGSplit sp = split_EG(v);
    if (!y.is_subspace_of(sp.E)) throw PreconditionViolated("Y is not contained in E");
    if (!w.is_subspace_of(sp.G)) throw PreconditionViolated("W is not contained in G");
    if (!y_s.is_subspace_of(y)) throw PreconditionViolated("Y_s is not contained in Y");
    const SubmoduleTests in_e(v, sp.e_blocks);
    if (!in_e.characteristic(y)) throw PreconditionViolated("Y is not characteristic in E");
    const Commutant comm(v);
    if (!comm.is_characteristic(subspace_sum(y_s, w))) {
        throw PreconditionViolated("Y_s + W is not characteristic in V");
    }
    Subspace x = comm.hull(subspace_sum(y, w));
    if (subspace_intersect(x, sp.E) != y) throw InternalCheckFailed("(Y + W)^c ∩ E != Y");
    if (!in_e.hyperinvariant(y) && comm.is_hyperinvariant(x)) {
        throw InternalCheckFailed("(Y + W)^c is hyperinvariant although Y is not");
    }
    return x;
}

}  // namespace charspace
