#include <benchmark/benchmark.h>

// The distro's benchmark_main archive is LTO bytecode tied to one compiler
// release, so the entry point is provided here instead.
BENCHMARK_MAIN();
