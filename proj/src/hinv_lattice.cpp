#include "charspace/hinv_lattice.hpp"

#include <unordered_set>

#include "charspace/errors.hpp"

namespace charspace {

namespace {

std::string tuple_string(const LatticeTuple& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

void extend(const SegreChar& t, LatticeTuple& r, std::vector<LatticeTuple>& out) {
    const std::size_t i = r.size();
    if (i == t.count()) {
        out.push_back(r);
        return;
    }
    // r_i >= r_{i-1} and t_i - r_i >= t_{i-1} - r_{i-1}
    const std::size_t lo = i == 0 ? 0 : r[i - 1];
    const std::size_t hi = i == 0 ? t[0] : t[i] - (t[i - 1] - r[i - 1]);
    for (std::size_t k = lo; k <= hi; ++k) {
        r.push_back(k);
        extend(t, r, out);
        r.pop_back();
    }
}

}  // namespace

bool in_lattice(const SegreChar& t, const LatticeTuple& r) {
    if (r.size() != t.count()) return false;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] > t[i]) return false;
        if (i > 0 && (r[i] < r[i - 1] || t[i] - r[i] < t[i - 1] - r[i - 1])) return false;
    }
    return true;
}

std::vector<LatticeTuple> lattice_tuples(const SegreChar& t) {
    std::vector<LatticeTuple> out;
    LatticeTuple r;
    extend(t, r, out);
    return out;
}

std::uint64_t count_hinv(const SegreChar& t) {
    std::uint64_t n = 1;
    std::size_t prev = 0;
    for (auto p : t.parts()) {
        n *= 1 + p - prev;
        prev = p;
    }
    return n;
}

Subspace w_subspace(const ModuleSpace& v, const LatticeTuple& r) {
    if (!in_lattice(v.segre(), r)) {
        throw InvalidArgument("tuple " + tuple_string(r) + " is not in L" + v.segre().to_string());
    }
    EchelonBuilder direct(v.dim());
    Subspace sum(v.dim());
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t k = r[i]; k < v.block_size(i); ++k) direct.insert(v.basis_vector(i, k));
        sum = subspace_sum(sum, subspace_intersect(v.image_power(r[i]), v.kernel_power(v.block_size(i) - r[i])));
    }
    Subspace w = direct.build();
    if (w != sum) throw InternalCheckFailed("the two constructions of W" + tuple_string(r) + " disagree");
    return w;
}

std::vector<HinvElement> enumerate_hinv(const ModuleSpace& v) {
    std::vector<HinvElement> out;
    std::unordered_set<Subspace> seen;
    for (auto& r : lattice_tuples(v.segre())) {
        Subspace w = w_subspace(v, r);
        if (!seen.insert(w).second) {
            throw InternalCheckFailed("W" + tuple_string(r) + " repeats an earlier lattice element");
        }
        out.push_back({std::move(r), std::move(w)});
    }
    return out;
}

bool precedes(const LatticeTuple& r, const LatticeTuple& s) {
    if (r.size() != s.size()) throw DimensionMismatch("tuples of different length");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] > s[i]) return false;
    }
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_covers(const std::vector<LatticeTuple>& tuples) {
    const std::size_t n = tuples.size();
    std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) lt[i][j] = i != j && precedes(tuples[i], tuples[j]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!lt[i][j]) continue;
            bool between = false;
            for (std::size_t k = 0; k < n && !between; ++k) between = lt[i][k] && lt[k][j];
            if (!between) covers.emplace_back(i, j);
        }
    }
    return covers;
}

bool lattice_iso_check(const ModuleSpace& v) {
    std::vector<HinvElement> elems;
    try {
        elems = enumerate_hinv(v);
    } catch (const InternalCheckFailed&) {
        return false;
    }
    for (const auto& a : elems) {
        for (const auto& b : elems) {
            if (precedes(a.r, b.r) != b.w.is_subspace_of(a.w)) return false;
        }
    }
    return true;
}

}  // namespace charspace
