#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace glottal::fft {

using cplx = std::complex<double>;

// Thin wrapper over FFTW. Plans are created once per size under a lock and
// executed through the new-array interface, so concurrent callers are safe.
void forward(std::span<const cplx> in, std::span<cplx> out);

// Inverse transform scaled by 1/n.
void inverse(std::span<const cplx> in, std::span<cplx> out);

// Zero-padded DFT of a real sequence. Requires x.size() <= n.
std::vector<cplx> forward_real(std::span<const double> x, std::size_t n);

// Real part of the scaled inverse transform.
std::vector<double> inverse_real(std::span<const cplx> spectrum);

}  // namespace glottal::fft
