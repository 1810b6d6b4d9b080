// Serial reference kernels against their OpenMP versions.
//
//   bench_kernels [repeats]
//
// Each line: kernel, instance, serial ms, parallel ms, speedup, agreement.
// Exits 1 if any serial and parallel result differ.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <unordered_set>
#include <vector>

#ifdef CHARSPACE_HAVE_OPENMP
#include <omp.h>
#endif

#include "charspace/commutant.hpp"
#include "charspace/oracle.hpp"

using namespace charspace;

namespace {

bool all_agree = true;

double best_ms(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

void row(const char* kernel, const std::string& instance, double serial, double parallel, bool agree) {
    std::printf("%-18s %-14s %10.2f %10.2f %8.2fx  %s\n", kernel, instance.c_str(), serial, parallel,
                serial / std::max(parallel, 1e-9), agree ? "agree" : "DISAGREE");
    all_agree = all_agree && agree;
}

void bench_units(const SegreChar& t, int repeats) {
    const ModuleSpace v(t);
    std::vector<BitMatrix> ser, par;
    const double s = best_ms(repeats, [&] { ser = enumerate_aut_serial(v); });
    const double p = best_ms(repeats, [&] { par = enumerate_aut(v); });
    std::unordered_set<BitMatrix> a(ser.begin(), ser.end()), b(par.begin(), par.end());
    row("enumerate_aut", t.to_string(), s, p, a == b && ser.size() == par.size());
}

void bench_sweep(std::size_t n, int repeats) {
    std::uint64_t ser = 0;
    std::atomic<std::uint64_t> par{0};
    const double s = best_ms(repeats, [&] {
        ser = 0;
        for_each_subspace_serial(n, kDefaultSubspaceBudget, [&](const std::uint64_t*, std::size_t) { ++ser; });
    });
    const double p = best_ms(repeats, [&] {
        par = 0;
        for_each_subspace(n, kDefaultSubspaceBudget,
                          [&](const std::uint64_t*, std::size_t) { par.fetch_add(1, std::memory_order_relaxed); });
    });
    row("subspace sweep", "n=" + std::to_string(n), s, p, ser == par.load() && ser == galois_number(n));
}

void bench_oracle(const SegreChar& t, int repeats) {
    const ModuleSpace v(t);
    OracleReport ser, par;
    OracleOptions serial_opts;
    serial_opts.parallel = false;
    const double s = best_ms(repeats, [&] { ser = classify_brute(v, serial_opts); });
    const double p = best_ms(repeats, [&] { par = classify_brute(v); });
    row("classify_brute", t.to_string(), s, p, ser.counts == par.counts && ser.ch_not_hinv == par.ch_not_hinv);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
#ifdef CHARSPACE_HAVE_OPENMP
    std::printf("threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif
    std::printf("%-18s %-14s %10s %10s %9s\n", "kernel", "instance", "serial ms", "omp ms", "speedup");
    for (const auto& t : {SegreChar({1, 3, 7}), SegreChar({1, 2, 5}), SegreChar({16}), SegreChar({2, 2, 3})}) {
        bench_units(t, repeats);
    }
    for (std::size_t n : {7, 8, 9}) bench_sweep(n, repeats);
    for (const auto& t : {SegreChar({1, 2, 4}), SegreChar({2, 6}), SegreChar({1, 3, 5})}) bench_oracle(t, repeats);
    return all_agree ? 0 : 1;
}
