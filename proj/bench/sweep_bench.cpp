// Benchmark: serial reference sweep vs the OpenMP-parallel sweep, with a
// byte-identity check between the two outputs. Also times the shared triple
// table construction the searches run against.
//
//   sweep_bench [grid] [bound] [chunk]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pythwalk/distance.hpp"
#include "pythwalk/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#else
static int omp_get_max_threads() { return 1; }
#endif

using namespace pythwalk;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    const i64 grid = argc > 1 ? std::atoll(argv[1]) : 200;
    const i64 bound = argc > 2 ? std::atoll(argv[2]) : 4096;
    const i64 chunk = argc > 3 ? std::atoll(argv[3]) : 4;
    const int threads = omp_get_max_threads();

    std::printf("grid %lldx%lld, bound %lld, chunk %lld, %d threads\n",
                static_cast<long long>(grid), static_cast<long long>(grid),
                static_cast<long long>(bound), static_cast<long long>(chunk), threads);

    {
        auto t0 = Clock::now();
        const auto table = step_table(bound);
        std::printf("triple table (legs <= %lld): %zu triples in %.3f s\n",
                    static_cast<long long>(bound), table->size(), since(t0));
    }

    SweepConfig cfg;
    cfg.g_max = cfg.h_max = grid;
    cfg.leg_bound = bound;
    cfg.escalation = default_escalation(bound);
    cfg.chunk = chunk;

    const std::string serial_path = (fs::temp_directory_path() / "pythwalk_bench_serial.jsonl").string();
    const std::string parallel_path = (fs::temp_directory_path() / "pythwalk_bench_parallel.jsonl").string();

    cfg.output_path = serial_path;
    auto t0 = Clock::now();
    const SweepSummary ser = run_sweep(cfg, ExecMode::serial);
    const double t_serial = since(t0);
    std::printf("serial reference: %lld nodes in %.3f s (%.0f nodes/s)\n",
                static_cast<long long>(ser.total), t_serial, ser.total / t_serial);

    cfg.output_path = parallel_path;
    t0 = Clock::now();
    run_sweep(cfg, ExecMode::parallel, 0);
    const double t_parallel = since(t0);
    std::printf("openmp kernel:    %lld nodes in %.3f s (%.0f nodes/s), speedup %.2fx\n",
                static_cast<long long>(ser.total), t_parallel, ser.total / t_parallel,
                t_serial / t_parallel);

    const bool identical = slurp(serial_path) == slurp(parallel_path);
    std::printf("outputs byte-identical: %s\n", identical ? "yes" : "NO");
    fs::remove(serial_path);
    fs::remove(parallel_path);
    return identical ? 0 : 1;
}
