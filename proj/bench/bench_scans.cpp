// Times the OpenMP pair-scan kernels against their serial reference paths and
// checks that both produce identical results.
//
//   bench_scans [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "grouplab/folner.hpp"
#include "grouplab/group_spec.hpp"
#include "grouplab/growth.hpp"
#include "grouplab/milnor.hpp"
#include "grouplab/parallel.hpp"
#include "grouplab/structure.hpp"
#include "grouplab/words.hpp"

using namespace grouplab;

namespace {

template <class F>
double time_best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s < best) best = s;
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-34s %9.3f ms %9.3f ms %6.2fx  results %s\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel, equal ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads available: %d, best of %d runs\n", max_threads(), repeats);
  std::printf("%-34s %12s %12s %7s\n", "kernel", "serial", "parallel", "speedup");

  {
    // identity scan over class-rep x element pairs; the word is satisfied, so
    // the scan is exhaustive
    const auto g = build_group(GroupSpec::parse("psl2(11)"));
    const FreeWord w = FreeWord::parse("[x,y]").pow(static_cast<std::int64_t>(exponent(g)));
    IdentityScan rs, rp;
    const double ts = time_best_of(repeats, [&] { rs = satisfies_identity(g, w, Exec::serial); });
    const double tp =
        time_best_of(repeats, [&] { rp = satisfies_identity(g, w, Exec::parallel); });
    report("identity scan psl2(11)", ts, tp,
           rs.holds == rp.holds && rs.witness == rp.witness);
  }

  {
    const auto g = build_group(GroupSpec::parse("wreath(cyclic(2), cyclic(4))"));
    LocallyMilnorResult rs, rp;
    const double ts = time_best_of(
        repeats, [&] { rs = locally_milnor(g, 3, 3, PairScan::all_pairs, Exec::serial); });
    const double tp = time_best_of(
        repeats, [&] { rp = locally_milnor(g, 3, 3, PairScan::all_pairs, Exec::parallel); });
    report("locally_milnor C2 wr C4 (3,3)", ts, tp,
           rs.holds == rp.holds && rs.failing_pairs == rp.failing_pairs);
  }

  {
    const auto g = build_group(GroupSpec::parse("symmetric(10)"));
    ApproxReport rs, rp;
    const double ts =
        time_best_of(repeats, [&] { rs = approx_degree(g, 3, true, 1500, 1, Exec::serial); });
    const double tp =
        time_best_of(repeats, [&] { rp = approx_degree(g, 3, true, 1500, 1, Exec::parallel); });
    report("approx degree S_10 native", ts, tp,
           rs.best_degree == rp.best_degree && rs.witness_a == rp.witness_a);
  }

  {
    const auto g = build_group(GroupSpec::parse("cyclic(16)"));
    const std::vector<Rational> eps{Rational(1), Rational(1, 2), Rational(1, 3),
                                    Rational(1, 4)};
    std::vector<AmenabilityCell> rs, rp;
    const double ts = time_best_of(
        repeats, [&] { rs = amenability_profile(g, 2, eps, 4096, 1, Exec::serial); });
    const double tp = time_best_of(
        repeats, [&] { rp = amenability_profile(g, 2, eps, 4096, 1, Exec::parallel); });
    bool equal = rs.size() == rp.size();
    for (std::size_t i = 0; equal && i < rs.size(); ++i)
      equal = rs[i].alpha_hat == rp[i].alpha_hat;
    report("folner profile C_16 exact", ts, tp, equal);
  }

  return 0;
}
