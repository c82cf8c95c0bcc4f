#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bbm {

// Index r of the homogeneous Sobolev scale on 2*pi-periodic distributions.
// Any real value is admissible: trigonometric polynomials have finite norm
// at every r.
struct SobolevIndex {
  double r = 0.0;
};

// Real trigonometric polynomial
//
//   f(x) = mean + sum_{k=1..N} ( s_k sin(kx) + c_k cos(kx) )
//
// stored as dense coefficient arrays up to the cutoff N. Plain value type:
// fields are immutable in spirit (operations return new fields) and safe to
// share across threads. Fields that differ only by trailing zero modes
// compare equal.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(std::size_t cutoff)
      : sines_(cutoff, 0.0), cosines_(cutoff, 0.0) {}

  static SpectralField constant(double mean) {
    SpectralField f;
    f.mean_ = mean;
    return f;
  }

  std::size_t cutoff() const { return sines_.size(); }

  double mean() const { return mean_; }
  double& mean() { return mean_; }

  // 1-based mode access; reads beyond the cutoff return 0.
  double sin_coeff(std::size_t k) const {
    return (k >= 1 && k <= cutoff()) ? sines_[k - 1] : 0.0;
  }
  double cos_coeff(std::size_t k) const {
    return (k >= 1 && k <= cutoff()) ? cosines_[k - 1] : 0.0;
  }

  // Mutable 1-based access; k must lie in [1, cutoff].
  double& sin_at(std::size_t k) { return sines_[k - 1]; }
  double& cos_at(std::size_t k) { return cosines_[k - 1]; }

  std::span<const double> sines() const { return sines_; }
  std::span<const double> cosines() const { return cosines_; }

  SpectralField padded(std::size_t cutoff) const;
  SpectralField truncated(std::size_t cutoff) const;

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator-=(const SpectralField& rhs);
  SpectralField& operator*=(double a);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    a += b;
    return a;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    a -= b;
    return a;
  }
  friend SpectralField operator*(double a, SpectralField f) {
    f *= a;
    return f;
  }

  // Exact coefficientwise equality after zero-padding to the larger cutoff.
  friend bool operator==(const SpectralField& a, const SpectralField& b);

 private:
  double mean_ = 0.0;
  std::vector<double> sines_;
  std::vector<double> cosines_;
};

// || f ||_r = ( sum_k k^{2r} (s_k^2 + c_k^2) )^{1/2}. The mean coefficient
// never contributes, at any r.
double sobolev_norm(const SpectralField& f, SobolevIndex index);

// r = 0 norm of a - b (means excluded, like every sobolev_norm).
double l2_distance(const SpectralField& a, const SpectralField& b);

// Largest coefficient difference after padding, mean included.
double max_coeff_distance(const SpectralField& a, const SpectralField& b);

// Exact product via product-to-sum identities; result cutoff N_a + N_b.
// The result mean may be nonzero even for mean-zero inputs. multiply()
// dispatches between the coefficient-space convolution (small cutoffs) and
// the oversampled-grid path (large cutoffs); both are exact and their
// agreement is itself under test.
SpectralField multiply(const SpectralField& a, const SpectralField& b);
SpectralField multiply_conv(const SpectralField& a, const SpectralField& b);
SpectralField multiply_grid(const SpectralField& a, const SpectralField& b);

// u^2 truncated to `keep` modes, alias-free: the dealiased square used by
// the evolution right-hand side.
SpectralField square_truncated(const SpectralField& u, std::size_t keep);

// Values on the uniform grid x_j = 2*pi*j/n, j = 0..n-1.
std::vector<double> sample(const SpectralField& f, std::size_t n);

// Coefficients from uniform samples. Exact for samples of a field whose
// cutoff is <= the requested cutoff, provided n >= 2*cutoff + 1.
SpectralField analyze(std::span<const double> samples, std::size_t cutoff);

// Fraction of the squared coefficient mass (r = 0) carried by the top
// `top_fraction` share of modes. Returns 0 for the zero field.
double l2_tail_fraction(const SpectralField& f, double top_fraction);

}  // namespace bbm
