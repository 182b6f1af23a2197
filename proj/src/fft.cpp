#include "glottal/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "glottal/error.hpp"

namespace glottal::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) fail(ErrorKind::invalid_argument, "fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  if (in.size() != out.size() || in.empty())
    fail(ErrorKind::invalid_argument, "fft: size mismatch");
  fftw_plan plan = cache().get(in.size(), sign);
  if (in.data() == out.data()) {
    // plans are out-of-place
    std::vector<cplx> tmp(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return;
  }
  // FFTW does not write to its input for out-of-place complex transforms.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_FORWARD);
}

void inverse(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
}

std::vector<cplx> forward_real(std::span<const double> x, std::size_t n) {
  if (x.size() > n) fail(ErrorKind::invalid_argument, "fft: input longer than transform");
  std::vector<cplx> in(n), out(n);
  for (std::size_t i = 0; i < x.size(); ++i) in[i] = x[i];
  forward(in, out);
  return out;
}

std::vector<double> inverse_real(std::span<const cplx> spectrum) {
  std::vector<cplx> out(spectrum.size());
  inverse(spectrum, out);
  std::vector<double> re(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) re[i] = out[i].real();
  return re;
}

}  // namespace glottal::fft
