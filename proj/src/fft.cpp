#include "gcos/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace gcos::fft {
namespace {

// fftw_plan_* is not thread-safe, fftw_execute_* on an existing plan is.
// Plans are created once per size and never destroyed.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

const PlanPair& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(plan_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) {
        return it->second;
    }
    const int size = static_cast<int>(n);
    std::vector<double> real(n);
    std::vector<fftw_complex> spectrum(n / 2 + 1);
    // FFTW_ESTIMATE: same algorithm on every run.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair pair;
    pair.forward = fftw_plan_dft_r2c_1d(size, real.data(), spectrum.data(), flags);
    pair.inverse = fftw_plan_dft_c2r_1d(size, spectrum.data(), real.data(), flags | FFTW_DESTROY_INPUT);
    if (pair.forward == nullptr || pair.inverse == nullptr) {
        throw std::runtime_error("FFTW plan creation failed for size " + std::to_string(n));
    }
    return cache.emplace(n, pair).first->second;
}

} // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) {
        throw std::invalid_argument("forward_real: empty input");
    }
    const PlanPair& plans = plans_for(n);
    std::vector<double> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(plans.forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse_real(std::span<const std::complex<double>> half, std::size_t n) {
    if (n == 0 || half.size() != n / 2 + 1) {
        throw std::invalid_argument("inverse_real: expected n/2+1 bins");
    }
    const PlanPair& plans = plans_for(n);
    std::vector<std::complex<double>> in(half.begin(), half.end());
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) {
        v *= scale;
    }
    return out;
}

} // namespace gcos::fft
