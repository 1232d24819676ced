#ifndef XPMLAB_FFT_HPP
#define XPMLAB_FFT_HPP

#include <complex>
#include <cstddef>

namespace xpmlab::fft {

// Thin wrapper over FFTW3 complex transforms. Plans are cached per size and
// creation is serialized; execution is safe to call from multiple threads on
// distinct buffers. Forward uses the e^{-i 2 pi nu t} kernel (FFTW sign -1),
// inverse includes the 1/n factor, so inverse(forward(x)) == x.

void forward_inplace(std::complex<double>* data, std::size_t n);
void inverse_inplace(std::complex<double>* data, std::size_t n);

} // namespace xpmlab::fft

#endif // XPMLAB_FFT_HPP
