#pragma once

#include <complex>

namespace rfwave::fft {

//==== cached FFTW c2c transforms ===========================================
//
// Plans are created once per (N, direction) with FFTW_ESTIMATE |
// FFTW_UNALIGNED (deterministic plan choice, buffer-agnostic execution) and
// cached immutably; plan creation is serialized by a mutex, execution on
// distinct buffers is thread-safe.  Transforms are unnormalized, matching
// the usual DFT definition:
//   forward:  out[j] = sum_i in[i] e^{-2 pi i ij/N}
//   backward: out[i] = sum_j in[j] e^{+2 pi i ij/N}

/// Unnormalized forward DFT; in and out must be distinct buffers of length n.
void forward(const std::complex<double>* in, std::complex<double>* out, int n);

/// Unnormalized backward DFT; in and out must be distinct buffers of length n.
void backward(const std::complex<double>* in, std::complex<double>* out, int n);

}  // namespace rfwave::fft
