#include <benchmark/benchmark.h>

#include "ripkit/collisions.hpp"
#include "ripkit/device_model.hpp"
#include "ripkit/dynamics.hpp"
#include "ripkit/effective_rates.hpp"
#include "ripkit/normal_modes.hpp"
#include "ripkit/resonator_response.hpp"
#include "ripkit/toy_leakage.hpp"

using namespace ripkit;

namespace {

DeviceSpec pair_device() {
  DeviceSpec d;
  d.transmons = {{255, 14250, 0}, {275, 17000, 0}};
  d.omega_c = 7000;
  d.g = {150, 85};
  return d;
}

DeviceSpec readout_device() {
  InversionTargets t;
  t.qubits = {{5140, -205, -5.57}};
  t.omega_c = 6971;
  t.n_g = {0.37};
  return invert_parameters(t).device;
}

PulseSpec pulse(double delta, double photons, double tau) {
  PulseSpec p;
  p.amplitude = 2 * std::abs(delta) * std::sqrt(photons);
  p.omega_d = 6971 - delta;
  p.tau = tau;
  p.drag = delta;
  return p;
}

void BM_TransmonSpectrum(benchmark::State& s) {
  const TransmonSpec t{255, 14250, 0.37};
  for (auto _ : s) benchmark::DoNotOptimize(transmon_spectrum(t, {30, 10, 2}));
}
BENCHMARK(BM_TransmonSpectrum);

void BM_QuarticCoefficients(benchmark::State& s) {
  const DeviceSpec d = pair_device();
  for (auto _ : s) benchmark::DoNotOptimize(quartic_coefficients(bogoliubov(d), d));
}
BENCHMARK(BM_QuarticCoefficients);

void BM_AssembleReadout(benchmark::State& s) {
  const DeviceSpec d = readout_device();
  const int photons = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(assemble_system(d, {30, 10, photons}));
  s.SetLabel("dim " + std::to_string(10 * photons));
}
BENCHMARK(BM_AssembleReadout)->Arg(12)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_ParameterInversion(benchmark::State& s) {
  InversionTargets t;
  t.qubits = {{5140, -205, -5.57}};
  t.omega_c = 6971;
  for (auto _ : s) benchmark::DoNotOptimize(invert_parameters(t));
}
BENCHMARK(BM_ParameterInversion)->Unit(benchmark::kMillisecond);

void BM_DuffingResponse(benchmark::State& s) {
  const Pulse p(pulse(-50, 16, 200));
  for (auto _ : s) benchmark::DoNotOptimize(duffing_response(-50, -0.05, p));
}
BENCHMARK(BM_DuffingResponse)->Unit(benchmark::kMicrosecond);

void BM_RateModels(benchmark::State& s) {
  const DeviceSpec d = pair_device();
  const QuarticCoefficients q = quartic_coefficients(bogoliubov(d), d);
  const ResonatorTrajectory tr = duffing_response(-30, q.alpha(2), Pulse(pulse(-30, 10, 200)));
  const auto model = static_cast<RateModel>(s.range(0));
  const double ca = 0.5 * q.two_chi(0, 2), cb = 0.5 * q.two_chi(1, 2);
  for (auto _ : s) {
    switch (model) {
      case RateModel::jc: benchmark::DoNotOptimize(jc_rates(ca, cb, -30, tr)); break;
      case RateModel::kerr: benchmark::DoNotOptimize(kerr_rates(ca, cb, -30, tr)); break;
      case RateModel::abinitio: benchmark::DoNotOptimize(abinitio_rates(q, -30, tr)); break;
    }
  }
  s.SetLabel(to_string(model));
}
BENCHMARK(BM_RateModels)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_KerrEnumeration(benchmark::State& s) {
  const KerrSpectrum k{5140, 0, 6971, -5.57, 0, 0};
  EnumerationBounds b;
  b.alpha_range = std::pair{-350.0, -100.0};
  for (auto _ : s) benchmark::DoNotOptimize(enumerate_candidates(k, b));
}
BENCHMARK(BM_KerrEnumeration);

void BM_MagnusSecondOrder(benchmark::State& s) {
  ThreeLevelSpec spec;
  spec.delta_eg = 60;
  spec.delta_fg = 110;
  auto env = [](double t) { return std::complex<double>(std::pow(std::sin(M_PI * t / 40), 2), 0); };
  spec.lambda_ge = spec.lambda_gf = spec.lambda_ef = env;
  for (auto _ : s) benchmark::DoNotOptimize(magnus_amplitude(spec, Level::g, Level::f, 2, 40));
}
BENCHMARK(BM_MagnusSecondOrder)->Unit(benchmark::kMillisecond);

// Short window of the single-qubit leakage run; cost scales with the number of
// stepper stages, which is set by the largest retained frequency.
void BM_EvolveReadout(benchmark::State& s) {
  const SystemOperators sys = assemble_system(readout_device(), {30, 6, static_cast<int>(s.range(0))});
  PulseSpec p = pulse(-50, 4, 200);
  EvolveOptions o;
  o.t_end = 10.0;
  const Eigen::VectorXcd psi = labeled_state(sys, {0, 0});
  for (auto _ : s) benchmark::DoNotOptimize(evolve(sys, p, psi, o));
  s.SetLabel("dim " + std::to_string(sys.energies.size()));
}
BENCHMARK(BM_EvolveReadout)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
