#include <benchmark/benchmark.h>

// The packaged benchmark_main archive ships LTO bytecode from another compiler build.
BENCHMARK_MAIN();
