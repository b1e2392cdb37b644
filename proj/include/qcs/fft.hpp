#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qcs::fft {

// In-place complex DFTs on contiguous buffers. Plans are cached per length
// and creation is serialized; execution is safe from concurrent threads on
// distinct buffers. The inverse transform is unnormalized (scale by 1/n to
// invert a forward transform).
void forward(std::complex<double>* data, std::size_t n);
void inverse(std::complex<double>* data, std::size_t n);

void forward(std::vector<std::complex<double>>& data);
void inverse(std::vector<std::complex<double>>& data);

}  // namespace qcs::fft
