// Serial vs OpenMP timing for the data-parallel kernels: Monte Carlo spectrum
// batches, the finite-n variance quadrature, and a kernel table sweep.
#include <chrono>
#include <cstdio>

#include "ginstat/experiments.hpp"
#include "ginstat/kernels.hpp"

using namespace ginstat;

namespace {

template <typename Fn>
double time_it(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-34s %9.3fs %9.3fs %7.2fx   results %s\n", name, serial, parallel,
                serial / parallel, identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
    std::printf("ginstat parallel benchmark (%d threads)\n", max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

    {
        EnsembleSpec spec{AtomKind::real_gaussian, 64, 1};
        TestFunction f = TestFunction::interval_bump(0.0, 0.45);
        std::vector<double> a, b;
        double ts = time_it([&] { a = mc_linear_statistics(spec, f, 300, Normalization::none, Exec::serial); });
        double tp = time_it([&] { b = mc_linear_statistics(spec, f, 300, Normalization::none, Exec::openmp); });
        row("mc spectra batch (dim 64 x 300)", ts, tp, a == b);
    }
    {
        TestFunction f = TestFunction::upper_half_bump(cplx(0.0, 0.5), 0.35);
        KernelContext ser(32, KernelRegime::complex_complex);
        ser.exec = Exec::serial;
        KernelContext par(32, KernelRegime::complex_complex);
        double va = 0, vb = 0;
        double ts = time_it([&] { va = finite_n_variance(ser, f); });
        double tp = time_it([&] { vb = finite_n_variance(par, f); });
        row("finite-n variance (complex, n=32)", ts, tp, va == vb);
    }
    {
        EnsembleSpec spec{AtomKind::complex_gaussian, 96, 2};
        TestFunction f = TestFunction::disc_bump(cplx(0.0, 0.0), 0.5);
        std::vector<double> a, b;
        double ts = time_it([&] { a = mc_linear_statistics(spec, f, 100, Normalization::none, Exec::serial); });
        double tp = time_it([&] { b = mc_linear_statistics(spec, f, 100, Normalization::none, Exec::openmp); });
        row("mc spectra batch (dim 96 x 100)", ts, tp, a == b);
    }
    return 0;
}
