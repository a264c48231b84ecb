// Benchmark of the OpenMP kernels against their serial reference
// implementations: rotation-determinant batches, direction checks and
// displacement profiles.  The serial twins stay in the library so the tests
// can assert elementwise equality.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "quadcycle/cycles.hpp"
#include "quadcycle/parallel.hpp"
#include "quadcycle/rotation.hpp"

using namespace quadcycle;

namespace {

double seconds(auto fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double ser, double par) {
    std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n", name,
                1e3 * ser, 1e3 * par, par > 0 ? ser / par : 0.0);
}

} // namespace

int main() {
    std::printf("worker threads: %d\n", par::max_threads());
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> pr(-2.0, 2.0);
    std::uniform_real_distribution<double> xr(-3.0, 3.0);

    // rotation determinant batch
    {
        const std::size_t n = 2'000'000;
        std::vector<Params24> params(n);
        std::vector<Point> pts(n);
        for (std::size_t i = 0; i < n; ++i) {
            params[i] = {pr(rng), pr(rng), pr(rng), pr(rng), pr(rng), pr(rng)};
            pts[i] = {xr(rng), xr(rng)};
        }
        std::vector<DeltaSample> a, b;
        const double ts = seconds(
            [&] { a = delta_batch_serial(RotationParamId::Alpha, params, pts); });
        const double tp =
            seconds([&] { b = delta_batch(RotationParamId::Alpha, params, pts); });
        report("delta_batch (2e6 pts)", ts, tp);
    }

    // direction-law batch
    {
        const std::size_t n = 2'000'000;
        std::vector<Point> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = {xr(rng), xr(rng)};
        const Params24 p{-0.12, -0.05, 0.0, 0.1, 0.5, -1.0};
        DirectionReport ra, rb;
        const double ts = seconds([&] {
            ra = rotation_direction_check_serial(RotationParamId::Gamma, p, 1e-5, pts);
        });
        const double tp = seconds(
            [&] { rb = rotation_direction_check(RotationParamId::Gamma, p, 1e-5, pts); });
        report("direction_check (2e6 pts)", ts, tp);
    }

    // displacement profile (one integration per sample)
    {
        const Params24 p{-0.12, 0.0, 0.0, 0.1, 0.5, -1.0};
        const GeneralQuadraticField f = compile(p);
        const Section sec = section_for_focus(f, {0.0, 0.0});
        const std::vector<double> offsets = log_grid(0.01, 2.0, 96);
        IntegratorConfig cfg;
        std::vector<DisplacementSample> a, b;
        const double ts =
            seconds([&] { a = displacement_profile_serial(f, sec, offsets, cfg); });
        const double tp = seconds([&] { b = displacement_profile(f, sec, offsets, cfg); });
        report("displacement_profile (96)", ts, tp);
    }
    return 0;
}
