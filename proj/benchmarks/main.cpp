// The distro's benchmark_main archive is LTO bytecode tied to one exact
// compiler build, so the entry point lives here.
#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
