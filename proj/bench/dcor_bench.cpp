// Microbenchmark for the distance-correlation kernels.
//
// Compares, with agreement checks:
//   pair kernel:   definitional double-centering path vs the streaming path
//   matrix kernel: serial pair loop vs the OpenMP pair loop
//
// Output: one CSV-ish line per configuration.
// Usage: dcor_bench [--quick]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dcnet/dcor.hpp"
#include "dcnet/estimator.hpp"
#include "dcnet/rng.hpp"
#include "dcnet/types.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<double> random_sample(std::size_t n, std::uint64_t seed) {
    dcnet::rng::Generator g(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = g.normal();
    return x;
}

dcnet::Dataset random_dataset(std::size_t n, std::size_t p, std::uint64_t seed) {
    dcnet::Dataset data(n, p);
    for (std::size_t j = 0; j < p; ++j) {
        dcnet::rng::Generator g(dcnet::rng::derive_seed(seed, j));
        auto col = data.column(j);
        for (auto& v : col) v = g.normal();
    }
    return data;
}

int bench_pair_kernel(std::size_t n) {
    const auto x = random_sample(n, 11);
    const auto y = random_sample(n, 23);

    auto t0 = clock_type::now();
    const auto slow = dcnet::dcor(x, y);
    const double t_def = seconds_since(t0);

    t0 = clock_type::now();
    const auto fast = dcnet::dcor_fast(x, y);
    const double t_fast = seconds_since(t0);

    const double diff = std::abs(slow.dcor - fast.dcor);
    std::printf("pair,n=%zu,definitional_ms=%.3f,fast_ms=%.3f,speedup=%.2f,abs_diff=%.3e\n",
                n, t_def * 1e3, t_fast * 1e3, t_def / t_fast, diff);
    return diff < 1e-10 ? 0 : 1;
}

int bench_matrix_kernel(std::size_t n, std::size_t p) {
    const dcnet::Dataset data = random_dataset(n, p, 7);

    auto t0 = clock_type::now();
    const auto serial = dcnet::dcor_matrix_serial(data);
    const double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    const auto parallel = dcnet::dcor_matrix(data);
    const double t_parallel = seconds_since(t0);

    const bool bitwise_equal = serial.r.values == parallel.r.values;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf(
        "matrix,p=%zu,n=%zu,threads=%d,serial_ms=%.3f,parallel_ms=%.3f,speedup=%.2f,"
        "bitwise_equal=%d\n",
        p, n, threads, t_serial * 1e3, t_parallel * 1e3, t_serial / t_parallel,
        int(bitwise_equal));
    return bitwise_equal ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

    int failures = 0;
    const std::vector<std::size_t> pair_sizes =
        quick ? std::vector<std::size_t>{128, 256} : std::vector<std::size_t>{128, 256, 512, 1024, 2048};
    for (std::size_t n : pair_sizes) failures += bench_pair_kernel(n);

    if (quick) {
        failures += bench_matrix_kernel(128, 16);
    } else {
        failures += bench_matrix_kernel(256, 16);
        failures += bench_matrix_kernel(256, 48);
        failures += bench_matrix_kernel(512, 32);
    }

    if (failures) std::fprintf(stderr, "AGREEMENT FAILURES: %d\n", failures);
    return failures == 0 ? 0 : 1;
}
