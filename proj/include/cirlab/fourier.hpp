#pragma once

#include <complex>
#include <vector>

namespace cirlab::fourier {

/// In-place forward DFT, X_k = sum_j x_j e^{-2 pi i jk/n}. Backed by FFTW;
/// plan creation is serialized internally so concurrent callers are safe.
void dft_inplace(std::vector<std::complex<double>>& data);

}  // namespace cirlab::fourier
