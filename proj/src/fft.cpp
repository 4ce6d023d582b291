#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "rfwave/fft.hpp"

namespace rfwave::fft {

namespace {

std::mutex planner_mutex;

fftw_plan get_plan(int n, int sign) {
  // Immutable once created; the cache itself is only touched under the lock.
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> a(n), b(n);
  fftw_plan plan = fftw_plan_dft_1d(
      n, reinterpret_cast<fftw_complex*>(a.data()),
      reinterpret_cast<fftw_complex*>(b.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fft: plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

void execute(const std::complex<double>* in, std::complex<double>* out, int n,
             int sign) {
  if (in == out) throw std::invalid_argument("fft: in-place execution not supported");
  fftw_plan plan = get_plan(n, sign);
  // fftw_execute_dft does not modify the input array for out-of-place c2c.
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const std::complex<double>* in, std::complex<double>* out, int n) {
  execute(in, out, n, FFTW_FORWARD);
}

void backward(const std::complex<double>* in, std::complex<double>* out, int n) {
  execute(in, out, n, FFTW_BACKWARD);
}

}  // namespace rfwave::fft
