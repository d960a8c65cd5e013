#pragma once

#include <span>

namespace levrot::spectrum {

/// Frequency (Hz) of the strongest spectral line of `signal` in (0, f_max_hz].
///
/// The mean is removed, a Hann window applied, and the record zero-padded to
/// four times the next power of two before the FFT. The peak is refined by a
/// parabola through the log-magnitudes of the three bins around it. Throws
/// ExtractionError when no line stands above `min_peak_to_median` times the
/// median magnitude of the searched band.
double dominant_frequency(std::span<const double> signal, double sample_interval_s,
                          double f_max_hz, double min_peak_to_median = 20.0);

}  // namespace levrot::spectrum
