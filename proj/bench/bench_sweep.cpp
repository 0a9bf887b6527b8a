// Times the OpenMP kernels against their serial references and checks that
// both produce the same numbers.
//
//   bench_sweep [--repeats N] [--quick]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string_view>
#include <vector>

#include "annulus/energy.hpp"
#include "annulus/material.hpp"
#include "annulus/sweep.hpp"

namespace {

double best_of(int repeats, const std::function<void()>& body) {
  double best = INFINITY;
  for (int r = 0; r < repeats; ++r) {
    auto start = std::chrono::steady_clock::now();
    body();
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

void report(const char* name, std::size_t work, double serial, double parallel, bool same) {
  std::printf("%-22s %8zu items  serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name,
              work, serial, parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = 3;
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    std::string_view arg = argv[i];
    if (arg == "--quick") {
      quick = true;
    } else if (arg == "--repeats" && i + 1 < argc) {
      repeats = std::max(1, std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: bench_sweep [--repeats N] [--quick]\n");
      return 2;
    }
  }
  std::printf("threads: %d\n", omp_get_max_threads());
  bool all_same = true;

  std::vector<double> kappas = quick ? std::vector<double>{0.5, 2.0}
                                     : std::vector<double>{0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<double> radii = annulus::radius_range(1.1, quick ? 2.0 : 5.0, 0.1);
  std::vector<annulus::SweepRow> serial_rows, parallel_rows;
  double ts = best_of(repeats, [&] {
    serial_rows = annulus::sweep_critical_radius_serial(2, kappas, radii);
  });
  double tp = best_of(repeats, [&] {
    parallel_rows = annulus::sweep_critical_radius(2, kappas, radii);
  });
  bool same = serial_rows.size() == parallel_rows.size() &&
              std::equal(serial_rows.begin(), serial_rows.end(), parallel_rows.begin(),
                         [](const auto& a, const auto& b) {
                           return a.status == b.status &&
                                  (a.r_circ == b.r_circ ||
                                   (std::isnan(a.r_circ) && std::isnan(b.r_circ)));
                         });
  all_same = all_same && same;
  report("critical radius sweep", serial_rows.size(), ts, tp, same);

  std::size_t interior = quick ? 60 : 400;
  std::size_t count = quick ? 50 : 2000;
  annulus::DiscreteEnergy energy(3, annulus::StoredEnergy::quadratic(0, 0, 1), 2.0, 3.0,
                                 interior);
  std::vector<double> y(energy.dimension(), std::log(3.0) / energy.dimension());
  std::vector<double> es, ep;
  ts = best_of(repeats, [&] { es = annulus::competitor_energies_serial(energy, y, count, 0.1, 7); });
  tp = best_of(repeats, [&] { ep = annulus::competitor_energies(energy, y, count, 0.1, 7); });
  same = es == ep;
  all_same = all_same && same;
  report("competitor energies", count, ts, tp, same);

  return all_same ? 0 : 1;
}
