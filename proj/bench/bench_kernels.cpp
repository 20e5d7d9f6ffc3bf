// Compares the OpenMP kernels with their single-threaded reference
// implementations: obstruction-cocycle tabulation over G x G, and the
// exhaustive lift search over the candidate grid.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wittlift/catalog.hpp"
#include "wittlift/cohomology.hpp"
#include "wittlift/witnesses.hpp"

using namespace wittlift;

namespace {

double seconds_of(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void bench_obstruction(const char* label, const Representation& f,
                       int repeats) {
  double serial = 0, parallel = 0;
  uint64_t h1 = 0, h2 = 0;
  for (int i = 0; i < repeats; ++i) {
    serial += seconds_of([&] { h1 = obstruction_class_serial(f).hash(); });
    parallel += seconds_of([&] { h2 = obstruction_class(f).hash(); });
  }
  std::printf("cocycle   %-28s serial %8.3f s   parallel %8.3f s   x%.2f %s\n",
              label, serial / repeats, parallel / repeats,
              parallel > 0 ? serial / parallel : 0.0,
              h1 == h2 ? "(identical)" : "(MISMATCH!)");
}

void bench_search(const char* label, const Representation& f, uint64_t budget,
                  int repeats) {
  double serial = 0, parallel = 0;
  bool f1 = false, f2 = false;
  for (int i = 0; i < repeats; ++i) {
    serial += seconds_of(
        [&] { f1 = exhaustive_lift_search_serial(f, budget).found; });
    parallel +=
        seconds_of([&] { f2 = exhaustive_lift_search(f, budget).found; });
  }
  std::printf("search    %-28s serial %8.3f s   parallel %8.3f s   x%.2f %s\n",
              label, serial / repeats, parallel / repeats,
              parallel > 0 ? serial / parallel : 0.0,
              f1 == f2 ? "(identical)" : "(MISMATCH!)");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run serially\n");
#endif

  bench_obstruction("SL2(F5) natural, dim 2", sl2_natural_rep(5), 3);
  bench_obstruction("two_powers_rep(2,1), dim 4", two_powers_rep(2, 1), 3);
  bench_search("p times p over F4, 65536", ptimesp_rep(2), 1u << 17, 3);
  bench_search("Z/5 Jordan block, 625", jordan_block_rep(5, 1, FqField::make(5, 1)),
               1000, 3);
  return 0;
}
