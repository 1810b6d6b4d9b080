#include "charspace/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "charspace/classify.hpp"
#include "charspace/errors.hpp"
#include "charspace/hinv_lattice.hpp"

namespace charspace {

namespace {

using Row = std::uint64_t;
// A linear map on F_2^n stored by columns.
using Columns = std::vector<Row>;

Columns to_columns(const BitMatrix& m) {
    Columns c(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.get(i, j)) c[j] |= Row{1} << i;
        }
    }
    return c;
}

BitMatrix from_columns(const Row* c, std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if ((c[j] >> i) & 1U) m.set(i, j);
        }
    }
    return m;
}

Row apply(const Row* cols, Row x) {
    Row y = 0;
    while (x) {
        y ^= cols[std::countr_zero(x)];
        x &= x - 1;
    }
    return y;
}

bool invertible(const Row* cols, std::size_t n) {
    Row a[64];
    std::copy(cols, cols + n, a);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && !((a[p] >> c) & 1U)) ++p;
        if (p == n) return false;
        std::swap(a[p], a[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if ((a[r] >> c) & 1U) a[r] ^= a[c];
        }
    }
    return true;
}

// Canonical RREF rows with pivots at their lowest bits.
bool member(const Row* rows, std::size_t k, Row x) {
    for (std::size_t r = 0; r < k && x; ++r) {
        if ((x >> std::countr_zero(rows[r])) & 1U) x ^= rows[r];
    }
    return x == 0;
}

bool stable_under(const Row* rows, std::size_t k, const Row* cols) {
    for (std::size_t r = 0; r < k; ++r) {
        if (!member(rows, k, apply(cols, rows[r]))) return false;
    }
    return true;
}

Subspace to_subspace(const Row* rows, std::size_t k, std::size_t n) {
    std::vector<BitVector> vs;
    vs.reserve(k);
    for (std::size_t r = 0; r < k; ++r) {
        BitVector v(n);
        v.words()[0] = rows[r];
        vs.push_back(std::move(v));
    }
    return span(vs, n);
}

// All subspaces whose RREF pivot set is `mask`.
template <typename Visit>
void walk_pivot_set(std::size_t n, Row mask, Visit&& visit) {
    Row rows[64];
    std::size_t k = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (Row m = mask; m; m &= m - 1) {
        const auto p = static_cast<std::size_t>(std::countr_zero(m));
        rows[k] = Row{1} << p;
        for (std::size_t c = p + 1; c < n; ++c) {
            if (!((mask >> c) & 1U)) cells.emplace_back(k, c);
        }
        ++k;
    }
    visit(static_cast<const Row*>(rows), k);
    const std::uint64_t count = std::uint64_t{1} << cells.size();
    for (std::uint64_t i = 1; i < count; ++i) {
        const auto& [r, c] = cells[static_cast<std::size_t>(std::countr_zero(i))];
        rows[r] ^= Row{1} << c;
        visit(static_cast<const Row*>(rows), k);
    }
}

template <typename Body>
void over_masks(std::size_t n, bool parallel, Body&& body) {
    const auto masks = static_cast<std::int64_t>(std::uint64_t{1} << n);
    if (parallel) {
#ifdef CHARSPACE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t m = 0; m < masks; ++m) body(static_cast<Row>(m));
    } else {
        for (std::int64_t m = 0; m < masks; ++m) body(static_cast<Row>(m));
    }
}

void check_subspace_budget(std::size_t n, std::uint64_t budget) {
    if (n > 63) throw InvalidArgument("subspace enumeration supports n <= 63");
    const std::uint64_t g = galois_number(n);
    if (g > budget) {
        const std::string count =
            g == std::numeric_limits<std::uint64_t>::max() ? "more than 2^64" : std::to_string(g);
        throw BudgetExceeded("F_2^" + std::to_string(n) + " has " + count +
                             " subspaces, budget is " + std::to_string(budget));
    }
}

void sweep(std::size_t n, std::uint64_t budget, const RowVisitor& visit, bool parallel) {
    check_subspace_budget(n, budget);
    over_masks(n, parallel, [&](Row mask) { walk_pivot_set(n, mask, visit); });
}

// The maps a subspace must be stable under for each verdict, by columns.
struct OracleMaps {
    std::size_t n = 0;
    Columns f;
    std::vector<Columns> endo;
    std::vector<Columns> aut_span;
    OracleAutMode mode = OracleAutMode::FullEnumeration;
    std::uint64_t aut_order = 0;
};

std::vector<Columns> all_units(const std::vector<Columns>& basis, std::size_t n, bool parallel) {
    const std::size_t d = basis.size();
    const std::size_t high = std::min<std::size_t>(d, 6);
    const std::size_t low = d - high;
    std::vector<std::vector<Columns>> found(std::size_t{1} << high);
    over_masks(high, parallel, [&](Row c) {
        Columns cur(n, 0);
        for (std::size_t b = 0; b < high; ++b) {
            if ((c >> b) & 1U) {
                for (std::size_t j = 0; j < n; ++j) cur[j] ^= basis[low + b][j];
            }
        }
        auto& out = found[c];
        auto look = [&] {
            if (invertible(cur.data(), n)) out.push_back(cur);
        };
        look();
        for (std::uint64_t i = 1; i < (std::uint64_t{1} << low); ++i) {
            const auto& b = basis[static_cast<std::size_t>(std::countr_zero(i))];
            for (std::size_t j = 0; j < n; ++j) cur[j] ^= b[j];
            look();
        }
    });
    std::vector<Columns> units;
    for (auto& chunk : found) {
        for (auto& u : chunk) units.push_back(std::move(u));
    }
    return units;
}

// A basis of span(units) chosen among the units themselves.
std::vector<Columns> spanning_units(const std::vector<Columns>& units, std::size_t n, std::size_t cap) {
    EchelonBuilder eb(n * n);
    std::vector<Columns> out;
    for (const auto& u : units) {
        if (eb.insert(from_columns(u.data(), n).vectorize())) out.push_back(u);
        if (out.size() == cap) break;
    }
    return out;
}

OracleMaps build_maps(const ModuleSpace& v, const OracleOptions& opts) {
    OracleMaps m;
    m.n = v.dim();
    if (m.n > 63) throw InvalidArgument("oracle supports n <= 63");
    m.f = to_columns(v.f_matrix());
    for (const auto& a : sylvester_kernel(v)) m.endo.push_back(to_columns(a));
    const std::size_t d = m.endo.size();

    if (d < 63 && (std::size_t{1} << d) <= opts.aut_budget) {
        const auto units = all_units(m.endo, m.n, opts.parallel);
        m.aut_order = units.size();
        m.aut_span = spanning_units(units, m.n, d);
        m.mode = OracleAutMode::FullEnumeration;
        return m;
    }

    // Units among b and I + b, then the algebra they generate.
    std::vector<BitMatrix> gens;
    for (const auto& b : m.endo) {
        BitMatrix bm = from_columns(b.data(), m.n);
        BitMatrix shifted = bm ^ BitMatrix::identity(m.n);
        if (is_invertible(bm)) gens.push_back(std::move(bm));
        if (is_invertible(shifted)) gens.push_back(std::move(shifted));
    }
    EchelonBuilder eb(m.n * m.n);
    std::vector<BitMatrix> alg;
    for (auto& g : gens) {
        if (eb.insert(g.vectorize())) alg.push_back(g);
    }
    for (std::size_t i = 0; i < alg.size() && alg.size() < d; ++i) {
        for (std::size_t j = 0; j <= i && alg.size() < d; ++j) {
            for (BitMatrix p : {alg[i] * alg[j], alg[j] * alg[i]}) {
                if (eb.insert(p.vectorize())) alg.push_back(std::move(p));
            }
        }
    }
    if (alg.size() != d) {
        throw BudgetExceeded("commutant of dimension " + std::to_string(d) +
                             " exceeds the aut budget and its units do not span it");
    }
    m.aut_span = m.endo;
    m.mode = OracleAutMode::UnitsSpanCommutant;
    return m;
}

struct Chunk {
    OracleCounts counts;
    std::vector<Subspace> characteristic;
    std::vector<Subspace> ch_not_hinv;
    std::vector<Subspace> hyperinvariant;
    std::vector<Mismatch> mismatches;
};

OracleReport run(const ModuleSpace& v, const OracleOptions& opts, const Commutant* structured) {
    check_subspace_budget(v.dim(), opts.subspace_budget);
    const OracleMaps maps = build_maps(v, opts);
    const std::size_t n = maps.n;

    std::vector<Chunk> chunks(std::size_t{1} << n);
    over_masks(n, opts.parallel, [&](Row mask) {
        Chunk& ch = chunks[mask];
        walk_pivot_set(n, mask, [&](const Row* rows, std::size_t k) {
            ++ch.counts.subspaces;
            if (!stable_under(rows, k, maps.f.data())) return;
            ++ch.counts.invariant;
            bool is_char = true;
            for (const auto& a : maps.aut_span) {
                if (!(is_char = stable_under(rows, k, a.data()))) break;
            }
            bool is_hinv = is_char;
            if (is_char) {
                for (const auto& e : maps.endo) {
                    if (!(is_hinv = stable_under(rows, k, e.data()))) break;
                }
            }
            if (is_char || structured) {
                Subspace x = to_subspace(rows, k, n);
                if (structured) {
                    const bool s_char = structured->is_characteristic(x);
                    const bool s_hinv = structured->is_hyperinvariant(x);
                    if (s_char != is_char) ch.mismatches.push_back({x, "is_characteristic", s_char, is_char});
                    if (s_hinv != is_hinv) ch.mismatches.push_back({x, "is_hyperinvariant", s_hinv, is_hinv});
                }
                if (is_char) {
                    ++ch.counts.characteristic;
                    ch.characteristic.push_back(x);
                    if (is_hinv) {
                        ++ch.counts.hyperinvariant;
                        ch.hyperinvariant.push_back(std::move(x));
                    } else {
                        ++ch.counts.ch_not_hinv;
                        ch.ch_not_hinv.push_back(std::move(x));
                    }
                }
            }
        });
    });

    OracleReport rep;
    rep.segre = v.segre();
    rep.aut_mode = maps.mode;
    rep.aut_order = maps.aut_order;
    for (auto& ch : chunks) {
        rep.counts.subspaces += ch.counts.subspaces;
        rep.counts.invariant += ch.counts.invariant;
        rep.counts.characteristic += ch.counts.characteristic;
        rep.counts.hyperinvariant += ch.counts.hyperinvariant;
        rep.counts.ch_not_hinv += ch.counts.ch_not_hinv;
        auto move_all = [](auto& dst, auto& src) { std::move(src.begin(), src.end(), std::back_inserter(dst)); };
        move_all(rep.characteristic, ch.characteristic);
        move_all(rep.hyperinvariant, ch.hyperinvariant);
        move_all(rep.ch_not_hinv, ch.ch_not_hinv);
        move_all(rep.mismatches, ch.mismatches);
    }
    std::sort(rep.characteristic.begin(), rep.characteristic.end());
    std::sort(rep.hyperinvariant.begin(), rep.hyperinvariant.end());
    std::sort(rep.ch_not_hinv.begin(), rep.ch_not_hinv.end());
    return rep;
}

void diff_sets(OracleReport& rep, const std::string& check, std::vector<Subspace> structured,
               const std::vector<Subspace>& oracle) {
    std::sort(structured.begin(), structured.end());
    std::vector<Subspace> only;
    std::set_difference(structured.begin(), structured.end(), oracle.begin(), oracle.end(),
                        std::back_inserter(only));
    for (auto& x : only) rep.mismatches.push_back({std::move(x), check, true, false});
    only.clear();
    std::set_difference(oracle.begin(), oracle.end(), structured.begin(), structured.end(),
                        std::back_inserter(only));
    for (auto& x : only) rep.mismatches.push_back({std::move(x), check, false, true});
}

}  // namespace

std::uint64_t galois_number(std::size_t n) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 prev = 1;
    unsigned __int128 cur = 2;
    if (n == 0) return 1;
    for (std::size_t k = 1; k < n; ++k) {
        // G_{k+1} = 2 G_k + (2^k - 1) G_{k-1}
        const unsigned __int128 next = 2 * cur + ((static_cast<unsigned __int128>(1) << k) - 1) * prev;
        if (next > kMax) return kMax;
        prev = cur;
        cur = next;
    }
    return static_cast<std::uint64_t>(cur);
}

void for_each_subspace(std::size_t n, std::uint64_t budget, const RowVisitor& visit) {
    sweep(n, budget, visit, true);
}

void for_each_subspace_serial(std::size_t n, std::uint64_t budget, const RowVisitor& visit) {
    sweep(n, budget, visit, false);
}

std::vector<Subspace> enumerate_subspaces(std::size_t n, std::uint64_t budget) {
    std::vector<Subspace> out;
    for_each_subspace_serial(n, budget, [&](const Row* rows, std::size_t k) { out.push_back(to_subspace(rows, k, n)); });
    return out;
}

std::vector<BitMatrix> sylvester_kernel(const ModuleSpace& v) {
    const std::size_t n = v.dim();
    const BitMatrix& f = v.f_matrix();
    // Unknown a_{ij} sits at column i*n + j; equation (i,j) is (Af - fA)_{ij} = 0.
    BitMatrix eqs(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            BitVector& row = eqs.row(i * n + j);
            for (std::size_t k = 0; k < n; ++k) {
                if (f.get(k, j)) row.flip(i * n + k);
                if (f.get(i, k)) row.flip(k * n + j);
            }
        }
    }
    std::vector<BitMatrix> out;
    const Subspace ker = kernel_basis(eqs);
    for (const auto& vec : ker.basis_vectors()) {
        BitMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (vec.get(i * n + j)) a.set(i, j);
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

OracleReport classify_brute(const ModuleSpace& v, const OracleOptions& opts) { return run(v, opts, nullptr); }

OracleReport cross_validate(const ModuleSpace& v, const OracleOptions& opts) {
    const Commutant comm(v);
    OracleReport rep = run(v, opts, &comm);

    std::vector<Subspace> hinv;
    for (auto& e : enumerate_hinv(v)) hinv.push_back(std::move(e.w));
    diff_sets(rep, "hinv_lattice", std::move(hinv), rep.hyperinvariant);

    const ShodaWitness sh = shoda(v.segre());
    if (sh.satisfied != !rep.ch_not_hinv.empty()) {
        rep.mismatches.push_back({Subspace(v.dim()), "shoda", sh.satisfied, !rep.ch_not_hinv.empty()});
    }

    const std::size_t unrepeated = v.segre().unrepeated_parts().size();
    if (unrepeated == 0) {
        diff_sets(rep, "classify_no_unrepeated", classify_no_unrepeated(v), rep.hyperinvariant);
    }
    if (unrepeated <= 2) {
        std::vector<Subspace> xs;
        for (auto& e : classify_two_unrepeated(v)) xs.push_back(std::move(e.subspace));
        diff_sets(rep, "classify_two_unrepeated", std::move(xs), rep.ch_not_hinv);
    }
    if (v.blocks() == 2 && v.block_size(0) + 1 < v.block_size(1)) {
        std::vector<Subspace> xs;
        for (auto& e : classify_two_generator(v)) xs.push_back(std::move(e.subspace));
        diff_sets(rep, "classify_two_generator", std::move(xs), rep.ch_not_hinv);
    }
    return rep;
}

}  // namespace charspace
