// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Criterion 9 runs first; if it fails the
// rest are reported as not run.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifdef CHARSPACE_HAVE_OPENMP
#include <omp.h>
#endif

#include "charspace/classify.hpp"
#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"
#include "charspace/hinv_lattice.hpp"
#include "charspace/oracle.hpp"

using namespace charspace;

namespace {

// Thrown by expect(); carries the first failed check.
struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

std::vector<SegreChar> partitions(std::size_t n) {
    std::vector<SegreChar> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t min) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t p = min; p <= left; ++p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, 1);
    return out;
}

std::vector<SegreChar> partitions_up_to(std::size_t n) {
    std::vector<SegreChar> out;
    for (std::size_t k = 1; k <= n; ++k) {
        for (auto& t : partitions(k)) out.push_back(std::move(t));
    }
    return out;
}

// Sum of the cyclic subspaces <g> = span{g, f g, f^2 g, ...}.
Subspace submodule(const ModuleSpace& v, const std::vector<BitVector>& gens) {
    EchelonBuilder eb(v.dim());
    for (BitVector g : gens) {
        while (!g.is_zero()) {
            eb.insert(g);
            g = v.apply_f(g);
        }
    }
    return eb.build();
}

std::vector<BitVector> all_vectors(std::size_t n) {
    std::vector<BitVector> out;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
        BitVector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            if ((w >> i) & 1U) x.set(i);
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::set<std::vector<Word>> matrix_set(const std::vector<BitMatrix>& ms) {
    std::set<std::vector<Word>> out;
    for (const auto& m : ms) {
        const BitVector v = m.vectorize();
        out.emplace(v.words().begin(), v.words().end());
    }
    return out;
}

std::string str(const SegreChar& t) { return t.to_string(); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

std::string criterion_1() {
    const ModuleSpace v(SegreChar({1, 3}));
    const Commutant c(v);
    const BitVector z = v.generator(0) ^ v.basis_vector(1, 1);
    const Subspace x = c.hull(z);
    std::set<BitVector> got;
    for (const auto& e : x.elements()) got.insert(e);
    const BitVector e1 = v.basis_vector(0, 0), e3 = v.basis_vector(1, 1), e4 = v.basis_vector(1, 2);
    const std::set<BitVector> want{BitVector(4), e1 ^ e3, e1 ^ e3 ^ e4, e4};
    expect(got == want, "hull(u1 + f u2) != {0, e1+e3, e1+e3+e4, e4}");
    expect(c.is_characteristic(x), "hull is not characteristic");
    expect(!c.is_hyperinvariant(x), "hull is hyperinvariant");
    const Indicator h = indicator(v, z);
    expect(h.full_sequence(4) == std::vector<int>{0, 2, kInfinity, kInfinity}, "H(z) != (0,2,inf,inf)");
    expect(has_gap(h) && h.heights[1] > 1 + h.heights[0], "no gap at j = 1");
    expect(count_hinv(v.segre()) == 6, "count_hinv != 6");
    const auto elems = enumerate_hinv(v);
    expect(elems.size() == 6, "enumerate_hinv size != 6");
    for (const auto& e : elems) expect(c.is_hyperinvariant(e.w), "W(r) not hyperinvariant");
    return "";
}

std::string criterion_2() {
    std::size_t checked = 0, oracle_checked = 0;
    for (const auto& t : partitions_up_to(12)) {
        const ModuleSpace v(t);
        const std::uint64_t n = count_hinv(t);
        expect(lattice_tuples(t).size() == n, str(t) + ": |L(t)| != count_hinv");
        std::set<Subspace> distinct;
        for (const auto& e : enumerate_hinv(v)) distinct.insert(e.w);
        expect(distinct.size() == n, str(t) + ": distinct W(r) != count_hinv");
        ++checked;
        if (t.total() <= 7) {
            const OracleReport r = classify_brute(v);
            expect(r.counts.hyperinvariant == n, str(t) + ": oracle hyperinvariant count differs");
            ++oracle_checked;
        }
    }
    return std::to_string(checked) + " partitions, " + std::to_string(oracle_checked) + " against the oracle";
}

std::string criterion_3() {
    std::size_t checked = 0;
    for (const auto& t : partitions_up_to(7)) {
        if (t.unrepeated_parts().size() != 2) continue;
        const ModuleSpace v(t);
        std::set<Subspace> structured;
        for (const auto& e : classify_two_unrepeated(v)) structured.insert(e.subspace);
        const OracleReport r = classify_brute(v);
        const std::set<Subspace> oracle(r.ch_not_hinv.begin(), r.ch_not_hinv.end());
        expect(structured == oracle, str(t) + ": classification differs from the oracle (" +
                                         std::to_string(structured.size()) + " vs " +
                                         std::to_string(oracle.size()) + ")");
        ++checked;
    }
    return std::to_string(checked) + " partitions";
}

std::string criterion_4() {
    std::size_t checked = 0, satisfied = 0;
    for (const auto& t : partitions_up_to(7)) {
        const bool s = shoda(t).satisfied;
        const bool nonempty = !classify_brute(ModuleSpace(t)).ch_not_hinv.empty();
        expect(s == nonempty, str(t) + ": shoda " + (s ? "satisfied" : "fails") + " but oracle set is " +
                                  (nonempty ? "nonempty" : "empty"));
        ++checked;
        satisfied += s;
    }
    return std::to_string(checked) + " partitions, " + std::to_string(satisfied) + " satisfy the criterion";
}

std::string criterion_5() {
    const ModuleSpace v(SegreChar({1, 3, 7, 7}));
    const Commutant c(v);
    const auto entries = classify_two_unrepeated(v);
    std::set<Subspace> distinct;
    for (const auto& e : entries) distinct.insert(e.subspace);
    expect(entries.size() == 4 && distinct.size() == 4, "expected 4 distinct entries");
    const BitVector z = v.generator(0) ^ v.basis_vector(1, 1);
    const Subspace hz = c.hull(z);
    for (std::size_t j : {5, 6}) {
        const BitVector y = z ^ v.basis_vector(2, j) ^ v.basis_vector(3, j);
        expect(c.hull(y) == hz, "hull for mu=(0,1," + std::to_string(j) + "," + std::to_string(j) +
                                    ") != hull(u1 + f u2)");
    }
    expect(distinct.count(hz) == 1, "hull(u1 + f u2) missing from the classification");
    expect(count_hinv(v.segre()) == 30, "count_hinv != 30");
    expect(enumerate_hinv(v).size() == 30, "enumerate_hinv size != 30");
    for (const auto& e : entries) {
        expect(c.is_characteristic(e.subspace), "entry not characteristic");
        expect(!c.is_hyperinvariant(e.subspace), "entry hyperinvariant");
    }
    return "";
}

std::string criterion_6() {
    const ModuleSpace v(SegreChar({1, 3, 5}));
    const Commutant c(v);
    const BitVector z = v.generator(0) ^ v.basis_vector(1, 1) ^ v.basis_vector(2, 2);
    const Subspace x = construct_k_unrepeated(v, {{0, 0}, {1, 1}, {2, 2}});
    expect(x == submodule(v, {z, v.basis_vector(1, 2), v.basis_vector(2, 3)}),
           "construction != <z, f^2 u2, f^3 u3>");
    expect(x == c.hull(z), "construction != hull(z)");

    const BitVector z1 = v.generator(0) ^ v.basis_vector(1, 1);
    const BitVector z2 = v.basis_vector(2, 2);
    const Subspace w = c.hull(std::vector<BitVector>{z1, z2});
    expect(w == subspace_sum(c.hull(z1), submodule(v, {z2})), "W != hull(z1) + <f^2 u3>");
    expect(c.is_characteristic(w), "W not characteristic");
    expect(!c.is_hyperinvariant(w), "W hyperinvariant");
    std::size_t scanned = 0;
    for (const auto& m : w.elements()) {
        expect(c.hull(m) != w, "W is the hull of " + m.to_string());
        ++scanned;
    }
    expect(scanned == (std::size_t{1} << w.dim()), "member count");
    return "dim W = " + std::to_string(w.dim()) + ", " + std::to_string(scanned) + " members scanned";
}

std::string criterion_7() {
    std::size_t pairs = 0, oracle_pairs = 0;
    for (std::size_t S = 3; S <= 9; ++S) {
        for (std::size_t R = 1; R + 1 < S; ++R) {
            const ModuleSpace v(SegreChar({R, S}));
            const std::string tag = "(" + std::to_string(R) + "," + std::to_string(S) + ")";
            std::set<Subspace> built;
            for (std::size_t s = 1; s <= R; ++s) {
                for (std::size_t q = s + 1; q <= S; ++q) {
                    if (!(R - s < S - q)) continue;
                    const Subspace x = construct_thm12(v, R, S, s, q);
                    const std::string at = tag + " s=" + std::to_string(s) + " q=" + std::to_string(q);
                    expect(x.dim() == s + q - 1, at + ": dim != s + q - 1");
                    const Subspace xh = subspace_intersect(v.image_power(R - s + 1), v.kernel_power(q - 1));
                    expect(largest_hyperinvariant_inside(v, x) == xh, at + ": X_H mismatch");
                    const SegreChar want = s == 1 ? SegreChar({q}) : SegreChar({s - 1, q});
                    expect(segre_of_restriction(v, x) == want, at + ": restriction Segre mismatch");
                    built.insert(x);
                }
            }
            std::set<Subspace> classified;
            for (const auto& e : classify_two_generator(v)) classified.insert(e.subspace);
            expect(classified == built, tag + ": classify_two_generator differs from the (s,q) family");
            if (R + S <= 9) {
                const OracleReport r = classify_brute(v);
                const std::set<Subspace> oracle(r.ch_not_hinv.begin(), r.ch_not_hinv.end());
                expect(oracle == built, tag + ": oracle differs from the (s,q) family");
                ++oracle_pairs;
            }
            ++pairs;
        }
    }
    return std::to_string(pairs) + " pairs, " + std::to_string(oracle_pairs) + " against the oracle";
}

std::string criterion_8() {
    std::size_t vectors = 0;
    for (const auto& t : partitions_up_to(6)) {
        const ModuleSpace v(t);
        const Commutant c(v);
        const auto xs = all_vectors(v.dim());
        std::map<std::vector<int>, std::set<BitVector>> classes;
        for (const auto& x : xs) classes[indicator(v, x).full_sequence(v.dim())].insert(x);
        for (const auto& x : xs) {
            const auto orb = c.orbit(x);
            const std::set<BitVector> got(orb.begin(), orb.end());
            expect(got == classes[indicator(v, x).full_sequence(v.dim())],
                   str(t) + ": orbit of " + x.to_string() + " is not its indicator class");
            ++vectors;
        }
    }
    return std::to_string(vectors) + " vectors";
}

std::string criterion_9() {
    std::size_t checked = 0;
    for (const auto& t : partitions_up_to(16)) {
        if (commutant_dim(t) > 16) continue;
        const ModuleSpace v(t);
        const auto gens = aut_generators(v).generators;
        const auto units = enumerate_aut(v);
        const auto group = generated_group(gens, v.dim(), units.size() + 1);
        expect(matrix_set(group) == matrix_set(units), str(t) + ": generated group != unit group");
        ++checked;
    }
    return std::to_string(checked) + " partitions";
}

std::string criterion_10() {
    std::ostringstream os;
#ifdef CHARSPACE_HAVE_OPENMP
    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    auto start = std::chrono::steady_clock::now();
    {
        const ModuleSpace v(SegreChar({1, 3, 7, 7}));
        const Commutant c(v);
        std::size_t dims = 0;
        for (const auto& x : all_vectors(12)) {
            BitVector y(v.dim());
            for (std::size_t i = 0; i < 12; ++i) {
                if (x.get(i)) y.set(i);
            }
            dims += c.hull(y).dim();
        }
        (void)dims;
    }
    const double hull_s = seconds_since(start);
#ifdef CHARSPACE_HAVE_OPENMP
    omp_set_num_threads(threads);
#endif
    start = std::chrono::steady_clock::now();
    for (const auto& t : partitions(7)) classify_brute(ModuleSpace(t));
    const double sweep_s = seconds_since(start);
    os.precision(3);
    os << "4096 hulls in (1,3,7,7) " << hull_s << " s single-threaded, n = 7 sweep " << sweep_s << " s";
    expect(hull_s < 5.0, os.str() + ": hull fixpoint too slow");
    expect(sweep_s < 600.0, os.str() + ": oracle sweep too slow");
    return os.str();
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<std::string()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {9, "closure of the transvection family is the unit group (dim End <= 16)", 0, criterion_9},
        {1, "hull of u1 + f u2 in (1,3)", 1, criterion_1},
        {2, "count_hinv = |L(t)| = #W(r) for n <= 12, = oracle for n <= 7", 300, criterion_2},
        {3, "two unrepeated sizes: classification = oracle for n <= 7", 600, criterion_3},
        {4, "shoda criterion <=> oracle finds ch-not-hinv subspaces, n <= 7", 0, criterion_4},
        {5, "(1,3,7,7): four ch-not-hinv subspaces, 30 hyperinvariant", 30, criterion_5},
        {6, "(1,3,5): hull of z and a W that is not a single hull", 10, criterion_6},
        {7, "two-generator laws for S <= 9, oracle for n <= 9", 0, criterion_7},
        {8, "orbits are indicator classes for n <= 6", 0, criterion_8},
        {10, "kernel timings", 0, criterion_10},
    };

    std::map<int, std::string> lines;
    int failed = 0;
    bool aborted = false;
    for (const auto& c : criteria) {
        char head[160];
        if (aborted) {
            std::snprintf(head, sizeof head, "FAIL %2d %s", c.id, c.name);
            lines[c.id] = std::string(head) + ": not run, criterion 9 failed";
            ++failed;
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = c.run();
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const Error& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double s = seconds_since(start);
        if (ok && c.limit_s > 0 && s > c.limit_s) {
            ok = false;
            detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
        }
        std::snprintf(head, sizeof head, "%s %2d %s [%.2f s]", ok ? "PASS" : "FAIL", c.id, c.name, s);
        lines[c.id] = std::string(head) + (detail.empty() ? "" : ": " + detail);
        std::printf("%s\n", lines[c.id].c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
        if (!ok && c.id == 9) aborted = true;
    }
    if (aborted) {
        for (const auto& [id, line] : lines) {
            if (line.find("not run") != std::string::npos) std::printf("%s\n", line.c_str());
        }
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
