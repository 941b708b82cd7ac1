// Benchmark: OpenMP tensor kernels against the serial reference
// implementations on the (0,6)-producing operations.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "curv/tensor_ops.hpp"
#include "curv/tensor_ops_ref.hpp"
#include "curv/testgen.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace curv;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count() / reps;
}

void run(int n, int reps) {
    Rng rng(7 + static_cast<uint64_t>(n));
    const PointFrame frame = random_frame(n, 1, rng);
    const Sym2 A = random_sym2(n, rng);
    const Curv4 B = random_gencurv(n, rng);
    const Curv4 T = random_gencurv(n, rng);

    struct RowCase {
        const char* name;
        std::function<Tens6()> par;
        std::function<Tens6()> ser;
    };
    const RowCase cases[] = {
        {"dot44", [&] { return dot44(B, T, frame); }, [&] { return ref::dot44(B, T, frame); }},
        {"tachibana24", [&] { return tachibana24(A, T); },
         [&] { return ref::tachibana24(A, T); }},
        {"wedge24", [&] { return wedge24(A, T); }, [&] { return ref::wedge24(A, T); }},
    };
    for (const auto& c : cases) {
        const Tens6 rp = c.par();
        const Tens6 rs = c.ser();
        const double dev = rel_residual(rp, rs);
        const double tp = time_ms(c.par, reps);
        const double ts = time_ms(c.ser, reps);
        std::printf("n=%d %-12s parallel %9.3f ms   serial %9.3f ms   speedup %5.2fx   "
                    "agreement %.2e\n",
                    n, c.name, tp, ts, ts / tp, dev);
    }
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 5;
    if (argc > 1) reps = std::atoi(argv[1]);
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif
    for (int n : {4, 6, 8}) run(n, reps);
    return 0;
}
