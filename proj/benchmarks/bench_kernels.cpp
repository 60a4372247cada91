// Timing comparison of the OpenMP field kernels against the serial
// reference implementations.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "fracac/kernels.hpp"

namespace {

double now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch())
        .count();
}

// Repeats op until it has run for ~0.2 s; returns seconds per call.
double time_op(const std::function<void()>& op) {
    op();  // warm up
    std::size_t reps = 1;
    for (;;) {
        const double t0 = now();
        for (std::size_t i = 0; i < reps; ++i) op();
        const double dt = now() - t0;
        if (dt > 0.2) return dt / double(reps);
        reps = dt > 0.0 ? std::size_t(double(reps) * 0.25 / dt) + 1 : reps * 4;
    }
}

volatile double sink;

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10)
                                   : std::size_t(1) << 22;
    std::vector<double> x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 1e-3 * double(i % 1000) - 0.5;
        y[i] = 0.3 * x[i] + 0.1;
        z[i] = -x[i];
    }

    namespace pk = fracac::kernels;
    namespace sk = fracac::kernels::serial;

    struct Case {
        const char* name;
        std::function<void()> parallel;
        std::function<void()> serial;
    };
    const Case cases[] = {
        {"axpy", [&] { pk::axpy(y, 1e-9, x); }, [&] { sk::axpy(y, 1e-9, x); }},
        {"axpby", [&] { pk::axpby(0.5, x, 0.5, y); },
         [&] { sk::axpby(0.5, x, 0.5, y); }},
        {"double_well_deriv", [&] { pk::double_well_deriv(x, z); },
         [&] { sk::double_well_deriv(x, z); }},
        {"dot", [&] { sink = pk::dot(x, y); }, [&] { sink = sk::dot(x, y); }},
        {"max_abs", [&] { sink = pk::max_abs(x); },
         [&] { sink = sk::max_abs(x); }},
        {"soe_fold", [&] { pk::soe_fold(z, 0.99, 0.01, x); },
         [&] { sk::soe_fold(z, 0.99, 0.01, x); }},
    };

    std::printf("n = %zu doubles\n", n);
    std::printf("%-18s %12s %12s %8s\n", "kernel", "serial [us]",
                "openmp [us]", "speedup");
    for (const auto& c : cases) {
        const double ts = time_op(c.serial);
        const double tp = time_op(c.parallel);
        std::printf("%-18s %12.2f %12.2f %8.2f\n", c.name, ts * 1e6, tp * 1e6,
                    ts / tp);
    }
    return 0;
}
