#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "glottal/decomposition.hpp"

namespace glottal {

// X(z) = gain * z^{-leading_delay} * prod_i (1 - roots[i] z^{-1})
struct RootSet {
  std::vector<std::complex<double>> roots;
  double gain = 0.0;
  long leading_delay = 0;
};

inline constexpr std::size_t kMaxOracleLength = 512;

// Roots of the frame polynomial after trimming leading and trailing zeros.
// Throws oracle_unavailable when the factored form does not reproduce X(z).
RootSet compute_roots(std::span<const double> samples);

// Evaluates the factored form at z.
std::complex<double> evaluate(const RootSet& rs, std::complex<double> z);

// Explicit root split: |r| > R to the anticausal side, |r| < R to the causal
// side, gain on the causal side. Same output convention as the cepstral
// decomposition; fft_size in the result is left at zero.
MixedPhaseDecomposition zzt_decompose(std::span<const double> samples, double radius,
                                      double sample_rate = 0.0);
MixedPhaseDecomposition zzt_decompose(const RootSet& rs, std::size_t frame_length, double radius,
                                      double sample_rate = 0.0);

// Roots with modulus in (r_inner, r_outer].
std::size_t count_roots_in_annulus(const RootSet& rs, double r_inner, double r_outer);

}  // namespace glottal
