#include "degenwave/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace degenwave {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_naive(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sgn * 2.0 * std::numbers::pi * static_cast<double>(k * j % n) /
                         static_cast<double>(n);
      acc += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  a = std::move(out);
}

}  // namespace

void fft(std::vector<std::complex<double>>& data, bool inverse) {
  if (data.empty()) return;
  if (is_pow2(data.size()))
    fft_radix2(data, inverse);
  else
    dft_naive(data, inverse);
}

SpectralDifferentiator::SpectralDifferentiator(int size) : size_(size), buf_(size) {
  if (size < 2) throw std::invalid_argument("spectral derivative needs >= 2 samples");
}

void SpectralDifferentiator::derivative(std::span<const double> in, std::span<double> out) {
  const int n = size_;
  if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n)
    throw std::invalid_argument("spectral derivative: dimension mismatch");
  for (int i = 0; i < n; ++i) buf_[i] = std::complex<double>(in[i], 0.0);
  fft(buf_, false);
  // multiply mode k by i*k; map k > n/2 to k-n; zero the Nyquist mode
  for (int k = 0; k < n; ++k) {
    int freq = (k <= n / 2) ? k : k - n;
    if (n % 2 == 0 && k == n / 2) freq = 0;
    buf_[k] *= std::complex<double>(0.0, static_cast<double>(freq));
  }
  fft(buf_, true);
  const double inv_n = 1.0 / n;
  for (int i = 0; i < n; ++i) out[i] = buf_[i].real() * inv_n;
}

std::vector<double> spectral_theta_derivative(std::span<const double> samples) {
  SpectralDifferentiator d(static_cast<int>(samples.size()));
  std::vector<double> out(samples.size());
  d.derivative(samples, out);
  return out;
}

}  // namespace degenwave
