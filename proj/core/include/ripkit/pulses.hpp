#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

namespace ripkit {

enum class PulseKind { nested_cosine, gaussian, custom };

struct PulseSpec {
  PulseKind kind = PulseKind::nested_cosine;
  double amplitude = 0.0;  // Omega_c, MHz
  double omega_d = 0.0;    // carrier, MHz
  double tau = 0.0;        // ns
  double sigma = 0.0;      // ns, gaussian only
  double t0 = 0.0;         // start of the pulse window, ns
  std::optional<double> drag;  // Delta_D, MHz
  std::vector<double> samples;  // custom shape on a uniform grid over [t0, t0 + tau]
};

struct Envelope {
  double y = 0.0;  // main quadrature Omega_cy
  double x = 0.0;  // DRAG quadrature Omega_cx
};

// Evaluator for a validated PulseSpec. Immutable and thread-safe.
class Pulse {
 public:
  explicit Pulse(PulseSpec spec);

  const PulseSpec& spec() const { return spec_; }
  double start() const { return spec_.t0; }
  double end() const { return spec_.t0 + spec_.tau; }

  // Normalized shape P(t) and dP/dt (1/ns), zero outside the window.
  double shape(double t) const;
  double shape_derivative(double t) const;

  Envelope envelope(double t) const;
  // Omega_c(t) = Omega_cy - i Omega_cx
  std::complex<double> complex_envelope(double t) const { auto e = envelope(t); return {e.y, -e.x}; }
  // Lab-frame coefficient multiplying Y_c: -[Omega_cx cos(w_d t) + Omega_cy sin(w_d t)]
  double lab_drive(double t) const;

  // Integral of Omega_cy over the window, MHz*ns.
  double area() const;

 private:
  PulseSpec spec_;
  struct Spline;
  std::shared_ptr<const Spline> spline_;
};

double nested_cosine(double x);             // x = t/tau in [0, 1]
double nested_cosine_derivative(double x);  // d/dx
// Truncated Gaussian centred on tau/2.
double truncated_gaussian(double t, double sigma, double tau);

// Exact area of the unit nested cosine over [0, tau].
double nested_cosine_area(double tau);
double truncated_gaussian_area(double sigma, double tau);

// sigma such that the truncated Gaussian has the nested cosine's area.
double equal_area_sigma(double tau);

// Fourier transform of the complex envelope, int Omega_c(t) exp(-2 pi i f t 1e-3) dt,
// with f in MHz.
std::complex<double> spectrum(const Pulse& pulse, double f);

}  // namespace ripkit
