#include "levrot/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <vector>

#include "levrot/error.hpp"

namespace levrot::spectrum {
namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

double dominant_frequency(std::span<const double> signal, double sample_interval_s,
                          double f_max_hz, double min_peak_to_median) {
  const std::size_t n = signal.size();
  if (n < 16) throw ExtractionError("dominant_frequency: need at least 16 samples");
  if (!(sample_interval_s > 0.0)) throw InvalidArgument("dominant_frequency: bad sample interval");

  const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(n);
  const std::size_t padded = 4 * next_pow2(n);
  const std::size_t bins = padded / 2 + 1;

  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(padded));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(bins));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(padded), in.get(), out.get(), FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < padded; ++i) {
    if (i < n) {
      const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                            static_cast<double>(n - 1));
      in.get()[i] = (signal[i] - mean) * w;
    } else {
      in.get()[i] = 0.0;
    }
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double df = 1.0 / (static_cast<double>(padded) * sample_interval_s);
  const std::size_t last =
      std::min(bins - 2, static_cast<std::size_t>(std::floor(f_max_hz / df)));
  // skip the leakage of the removed mean: the Hann main lobe spans 2 original bins
  const std::size_t first = std::max<std::size_t>(2 * padded / n, 1);
  if (last <= first + 2) throw ExtractionError("dominant_frequency: search band is empty");

  std::vector<double> mag(last + 2);
  for (std::size_t k = 0; k < mag.size(); ++k)
    mag[k] = std::hypot(out.get()[k][0], out.get()[k][1]);

  std::size_t peak = first;
  for (std::size_t k = first; k <= last; ++k)
    if (mag[k] > mag[peak]) peak = k;

  std::vector<double> band(mag.begin() + static_cast<std::ptrdiff_t>(first),
                           mag.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::nth_element(band.begin(), band.begin() + band.size() / 2, band.end());
  const double median = band[band.size() / 2];
  if (!(mag[peak] > 0.0) || mag[peak] < min_peak_to_median * median)
    throw ExtractionError("dominant_frequency: no spectral line above the noise floor");

  double offset = 0.0;
  if (peak > first && peak < last) {
    const double l = std::log(mag[peak - 1]);
    const double c = std::log(mag[peak]);
    const double r = std::log(mag[peak + 1]);
    const double denom = l - 2.0 * c + r;
    if (denom < 0.0) offset = 0.5 * (l - r) / denom;
  }
  return (static_cast<double>(peak) + offset) * df;
}

}  // namespace levrot::spectrum
