#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace boprop::detail {

// Unnormalized complex DFTs of length n backed by cached FFTW plans.
// Plans are created under a global lock; execution is reentrant, so
// concurrent transforms on distinct buffers are safe.
void dft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void dft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace boprop::detail
