#include "glottal/zzt.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glottal/error.hpp"

namespace glottal {

using cplx = std::complex<double>;

namespace {

cplx horner(const std::vector<double>& inc, cplx w) {
  cplx acc = 0.0;
  for (std::size_t i = inc.size(); i-- > 0;) acc = acc * w + inc[i];
  return acc;
}

cplx horner_derivative(const std::vector<double>& inc, cplx w) {
  cplx acc = 0.0;
  for (std::size_t i = inc.size(); i-- > 1;) acc = acc * w + static_cast<double>(i) * inc[i];
  return acc;
}

// A few Newton steps on the original polynomial; the companion eigenvalues
// are only accurate to roughly sqrt(eps) for clustered roots.
cplx polish(const std::vector<double>& inc, cplx w) {
  for (int it = 0; it < 4; ++it) {
    const cplx d = horner_derivative(inc, w);
    if (std::abs(d) == 0.0) break;
    const cplx step = horner(inc, w) / d;
    const cplx next = w - step;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    if (std::abs(horner(inc, next)) > std::abs(horner(inc, w))) break;
    w = next;
    if (std::abs(step) <= 1e-16 * std::abs(w)) break;
  }
  return w;
}

// Leja order: each next point maximizes the product of distances to those
// already taken. Expanding a long product in this order avoids the huge
// intermediate coefficients that wipe out accuracy for near-circle roots.
std::vector<cplx> leja_order(std::vector<cplx> pts) {
  if (pts.size() < 3) return pts;
  auto first = std::max_element(pts.begin(), pts.end(),
                                [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  std::iter_swap(pts.begin(), first);
  std::vector<double> score(pts.size(), 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    std::size_t best = k;
    for (std::size_t i = k; i < pts.size(); ++i) {
      score[i] += std::log(std::abs(pts[i] - pts[k - 1]) + 1e-300);
      if (score[i] > score[best]) best = i;
    }
    std::swap(pts[k], pts[best]);
    std::swap(score[k], score[best]);
  }
  return pts;
}

// coefficients of prod_i (1 - p_i w)
std::vector<cplx> expand(const std::vector<cplx>& pts) {
  std::vector<cplx> c{1.0};
  for (const cplx& p : leja_order(pts)) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= p * c[k - 1];
  }
  return c;
}

std::vector<double> real_coefficients(const std::vector<cplx>& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
  return out;
}

}  // namespace

cplx evaluate(const RootSet& rs, cplx z) {
  cplx v = rs.gain * std::pow(z, -static_cast<double>(rs.leading_delay));
  for (const cplx& r : rs.roots) v *= 1.0 - r / z;
  return v;
}

RootSet compute_roots(std::span<const double> samples) {
  if (samples.size() > kMaxOracleLength)
    fail(ErrorKind::invalid_argument, "root oracle limited to 512 samples");
  auto first = std::find_if(samples.begin(), samples.end(), [](double v) { return v != 0.0; });
  if (first == samples.end()) fail(ErrorKind::invalid_data, "all-zero frame has no roots");
  auto last = std::find_if(samples.rbegin(), samples.rend(), [](double v) { return v != 0.0; });
  const std::size_t d = static_cast<std::size_t>(first - samples.begin());
  const std::size_t e = samples.size() - 1 - static_cast<std::size_t>(last - samples.rbegin());
  const std::size_t K = e - d;

  RootSet rs;
  rs.gain = samples[d];
  rs.leading_delay = static_cast<long>(d);
  if (K == 0) return rs;

  // sum_j x(d+j) z^{-j} = z^{-K} Q(z) with Q(w) = sum_j x(d+j) w^{K-j}
  std::vector<double> inc(K + 1);
  for (std::size_t i = 0; i <= K; ++i) inc[i] = samples[d + K - i];
  Eigen::VectorXd coeffs(K + 1);
  for (std::size_t i = 0; i <= K; ++i) coeffs[static_cast<Eigen::Index>(i)] = inc[i];

  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  const auto& found = solver.roots();
  rs.roots.reserve(K);
  for (Eigen::Index i = 0; i < found.size(); ++i) rs.roots.push_back(polish(inc, found[i]));
  if (rs.roots.size() != K) fail(ErrorKind::oracle_unavailable, "root finder lost roots");

  // spot-check the factored form around the unit circle
  double worst = 0.0, scale = 0.0;
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(1.0 + 0.03 * (k % 3), 2.0 * std::numbers::pi * (k + 0.37) / 16.0);
    cplx direct = 0.0;
    for (std::size_t n = 0; n < samples.size(); ++n)
      direct += samples[n] * std::pow(z, -static_cast<double>(n));
    worst = std::max(worst, std::abs(direct - evaluate(rs, z)));
    scale = std::max(scale, std::abs(direct));
  }
  if (!(worst <= 1e-6 * scale))
    fail(ErrorKind::oracle_unavailable, "factored polynomial does not reproduce the frame");
  return rs;
}

MixedPhaseDecomposition zzt_decompose(const RootSet& rs, std::size_t frame_length, double radius,
                                      double sample_rate) {
  if (!(radius > 0)) fail(ErrorKind::invalid_argument, "radius must be positive");
  std::vector<cplx> inv_outer, inner;
  double gain = std::abs(rs.gain);
  cplx sign = rs.gain;
  long outside = 0;
  for (const cplx& r : rs.roots) {
    const double m = std::abs(r);
    if (std::abs(m - radius) <= 1e-9)
      fail(ErrorKind::boundary_degenerate, "root on the separation circle");
    if (m > radius) {
      // (1 - r z^{-1}) = -r z^{-1} (1 - z/r)
      ++outside;
      gain *= m;
      sign *= -r;
      inv_outer.push_back(1.0 / r);
    } else {
      inner.push_back(r);
    }
  }
  const auto anti = expand(inv_outer);
  const auto causal = expand(inner);

  MixedPhaseDecomposition d;
  d.radius_used = radius;
  d.removed_delay = rs.leading_delay + outside;
  d.gain_sign = sign.real() < 0 ? -1 : 1;
  d.frame_length = frame_length;
  d.sample_rate = sample_rate;

  // anticausal coefficient k sits at n = -k
  const std::vector<double> a = real_coefficients(anti);
  d.anticausal.start = -static_cast<long>(a.size() - 1);
  d.anticausal.samples.assign(a.rbegin(), a.rend());
  d.anticausal.sample_rate = sample_rate;
  d.causal.samples = real_coefficients(causal);
  for (auto& v : d.causal.samples) v *= gain;
  d.causal.sample_rate = sample_rate;
  return d;
}

MixedPhaseDecomposition zzt_decompose(std::span<const double> samples, double radius,
                                      double sample_rate) {
  return zzt_decompose(compute_roots(samples), samples.size(), radius, sample_rate);
}

std::size_t count_roots_in_annulus(const RootSet& rs, double r_inner, double r_outer) {
  if (!(r_inner < r_outer)) fail(ErrorKind::invalid_argument, "annulus needs inner < outer");
  return static_cast<std::size_t>(std::count_if(rs.roots.begin(), rs.roots.end(), [&](cplx r) {
    const double m = std::abs(r);
    return m > r_inner && m <= r_outer;
  }));
}

}  // namespace glottal
