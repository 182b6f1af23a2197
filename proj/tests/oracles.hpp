#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's transform code: sums are evaluated directly.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "glottal/signal.hpp"

namespace oracle {

using cplx = std::complex<double>;

// X(z) = sum x(n) z^{-n} evaluated by Horner in z^{-1}.
inline cplx ztransform(const std::vector<double>& x, cplx z) {
  cplx acc = 0.0;
  const cplx zi = 1.0 / z;
  for (std::size_t n = x.size(); n-- > 0;) acc = acc * zi + x[n];
  return acc;
}

// Direct DFT sum with explicit cos/sin per term.
inline std::vector<cplx> dft(const std::vector<double>& x, std::size_t N) {
  std::vector<cplx> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    cplx acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>(k * n % N) / static_cast<double>(N);
      acc += x[n] * cplx(std::cos(a), std::sin(a));
    }
    out[k] = acc;
  }
  return out;
}

// CZT on the circle of radius R: sum x(n) R^{-n} e^{-j w n}.
inline std::vector<cplx> czt_circle(const std::vector<double>& x, double R, std::size_t N) {
  std::vector<cplx> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    cplx acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>(k * n % N) / static_cast<double>(N);
      acc += x[n] * std::pow(R, -static_cast<double>(n)) * cplx(std::cos(a), std::sin(a));
    }
    out[k] = acc;
  }
  return out;
}

// Coefficients (in z^{-1}) of prod (1 - r_i z^{-1}), real part.
inline std::vector<double> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> p{1.0};
  for (const cplx& r : roots) {
    p.push_back(0.0);
    for (std::size_t k = p.size() - 1; k > 0; --k) p[k] -= r * p[k - 1];
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
  return out;
}

inline std::vector<double> conv(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  return y;
}

// Conjugate-pair and real roots with moduli drawn from the given ranges,
// producing a real polynomial.
inline std::vector<cplx> random_roots(std::mt19937_64& rng, std::size_t degree,
                                      double lo, double hi) {
  std::uniform_real_distribution<double> mod(lo, hi), ang(0.05, std::numbers::pi - 0.05);
  std::vector<cplx> r;
  while (r.size() + 2 <= degree) {
    const cplx z = std::polar(mod(rng), ang(rng));
    r.push_back(z);
    r.push_back(std::conj(z));
  }
  if (r.size() < degree) r.push_back(mod(rng) * (rng() % 2 ? 1.0 : -1.0));
  return r;
}

inline double max_abs(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const double va = i < a.size() ? a[i] : 0.0, vb = i < b.size() ? b[i] : 0.0;
    num += (va - vb) * (va - vb);
    den += vb * vb;
  }
  return std::sqrt(num / den);
}

inline glottal::IndexedSignal indexed(std::vector<double> v, long start) {
  glottal::IndexedSignal s;
  s.samples = std::move(v);
  s.start = start;
  return s;
}

}  // namespace oracle
