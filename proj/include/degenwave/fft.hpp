#pragma once

#include <complex>
#include <span>
#include <vector>

namespace degenwave {

/// In-place complex FFT (radix-2 when the size is a power of two, direct DFT
/// otherwise). inverse = true applies the unscaled conjugate transform; the
/// caller divides by the size.
void fft(std::vector<std::complex<double>>& data, bool inverse);

/// Spectral derivative of real samples of a 2pi-periodic function on the
/// uniform grid theta_i = 2pi i / P. The Nyquist mode derivative is zeroed so
/// the result is real. Exact for band-limited data; for any data the mean of
/// the output vanishes to rounding.
std::vector<double> spectral_theta_derivative(std::span<const double> samples);

/// Workspace that reuses FFT buffers across many rows of the same length.
class SpectralDifferentiator {
 public:
  explicit SpectralDifferentiator(int size);
  /// out may alias in; both must have length size().
  void derivative(std::span<const double> in, std::span<double> out);
  int size() const { return size_; }

 private:
  int size_;
  std::vector<std::complex<double>> buf_;
};

}  // namespace degenwave
