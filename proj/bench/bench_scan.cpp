#include <chrono>
#include <cstdio>
#include <string>

#include "qtree/scan.hpp"

using namespace qtree;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int npts = argc > 1 ? std::stoi(argv[1]) : 200000;
    int reps = argc > 2 ? std::stoi(argv[2]) : 3;
    GraphParams params{12, 2, -5.0, RootCondition::Robin};
    Potential well = Potential::well(-16.0, 1.0 / 3.0);
    auto mus = mu_grid(-8.0, 40.0, npts);

    for (const auto& [name, q] : {std::pair<const char*, const Potential&>{"q=0", Potential()},
                                  {"well", well}}) {
        double ts = time_ms([&] { scan_sturm_serial(params, q, mus); }, reps);
        double tp = time_ms([&] { scan_sturm(params, q, mus); }, reps);
        bool same = scan_sturm_serial(params, q, mus) == scan_sturm(params, q, mus);
        std::printf("sturm   %-4s  %8d pts  serial %8.2f ms  parallel %8.2f ms  "
                    "speedup %5.2fx  identical %s\n",
                    name, npts, ts, tp, ts / tp, same ? "yes" : "NO");

        double ss = time_ms([&] { scan_secular_serial(params, q, mus); }, reps);
        double sp = time_ms([&] { scan_secular(params, q, mus); }, reps);
        auto a = scan_secular_serial(params, q, mus);
        auto b = scan_secular(params, q, mus);
        bool eq = a.size() == b.size();
        for (size_t i = 0; eq && i < a.size(); ++i)
            eq = a[i].value_hat == b[i].value_hat && a[i].log_scale == b[i].log_scale &&
                 a[i].sign == b[i].sign;
        std::printf("secular %-4s  %8d pts  serial %8.2f ms  parallel %8.2f ms  "
                    "speedup %5.2fx  identical %s\n",
                    name, npts, ss, sp, ss / sp, eq ? "yes" : "NO");
    }
    return 0;
}
