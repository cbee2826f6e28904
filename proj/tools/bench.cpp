// Benchmark comparing the serial reference kernels against the OpenMP paths
// on representative search workloads.

#include <chrono>
#include <cstdio>
#include <string>

#include "crgeo/catlin.hpp"
#include "crgeo/curves.hpp"
#include "crgeo/parser.hpp"
#include "crgeo/weights.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace crgeo;

namespace {

double seconds(void (*fn)(Exec), Exec mode, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn(mode);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void bench_curve_search(Exec mode) {
    // Finite type: no flat pullback exists, so the whole space is scanned.
    const Polynomial r = parse_polynomial("2*Re(z1) + abs2(z2)^2 + abs2(z3)^3", 3);
    SearchBudget b;
    b.degree_bound = 2;
    b.support_bound = 2;
    b.mode = mode;
    one_type_search(r, std::vector<Scalar>(3, Scalar(0)), b);
}

void bench_curve_search_flat(Exec mode) {
    // Infinite type: both paths stop at the first flat witness.
    const Polynomial r = parse_polynomial("2*Re(z1) + abs2(z2^2 - z3^3)", 3);
    SearchBudget b;
    b.degree_bound = 3;
    b.support_bound = 2;
    b.mode = mode;
    one_type_search(r, std::vector<Scalar>(3, Scalar(0)), b);
}

void bench_weight_lattice(Exec mode) {
    const Polynomial r = parse_polynomial("2*Re(z1) + abs2(z2)^3 + abs2(z3)^4 + abs2(z2*z3)^2", 3);
    multitype_lower_bound(r, QExt(8), mode);
}

void bench_multitype(Exec mode) {
    const Polynomial r = parse_polynomial("2*Re(z1) + abs2(z2^2 - z3^3)", 3);
    MultitypeOptions opts;
    opts.q = 1;
    opts.mode = mode;
    commutator_multitype(r, std::vector<Scalar>(3, Scalar(0)), opts);
}

void row(const char* name, void (*fn)(Exec), int reps) {
    const double ts = seconds(fn, Exec::serial, reps);
    const double tp = seconds(fn, Exec::parallel, reps);
    std::printf("%-22s %10.1f ms %10.1f ms %8.2fx\n", name, ts * 1e3, tp * 1e3,
                tp > 0 ? ts / tp : 0.0);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not available (parallel path runs serially)\n");
#endif
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");
    row("curve search (full)", bench_curve_search, 3);
    row("curve search (flat)", bench_curve_search_flat, 3);
    row("weight lattice", bench_weight_lattice, 3);
    row("commutator multitype", bench_multitype, 3);
    return 0;
}
