#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gcos::fft {

/// Forward real-to-complex DFT. Returns the n/2+1 non-negative frequency bins,
/// unnormalized: X[k] = sum_j x[j] exp(-2 pi i j k / n).
std::vector<std::complex<double>> forward_real(std::span<const double> x);

/// Inverse of forward_real for a length-n real signal, scaled by 1/n.
/// `half` must hold n/2+1 bins.
std::vector<double> inverse_real(std::span<const std::complex<double>> half, std::size_t n);

} // namespace gcos::fft
