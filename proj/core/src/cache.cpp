#include "ripkit/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "ripkit/errors.hpp"

namespace ripkit {

namespace {

constexpr std::uint64_t kMagic = 0x31706972'6b697431ull;  // "ripkit1"-ish tag
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(const std::filesystem::path& p) : out_(p, std::ios::binary) {
    if (!out_) throw ConfigError("cache: cannot open " + p.string() + " for writing");
  }
  template <typename T>
  void pod(const T& v) { out_.write(reinterpret_cast<const char*>(&v), sizeof(T)); }
  void doubles(const double* p, std::size_t n) {
    out_.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
  }
  void ints(const std::vector<int>& v) {
    pod<std::uint64_t>(v.size());
    out_.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(int)));
  }
  void matrix(const Eigen::MatrixXd& m) {
    pod<std::int64_t>(m.rows());
    pod<std::int64_t>(m.cols());
    doubles(m.data(), static_cast<std::size_t>(m.size()));
  }
  void finish() {
    out_.flush();
    if (!out_) throw NumericalError("cache: write failed");
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& p) : in_(p, std::ios::binary) {
    if (!in_) throw ConfigError("cache: cannot open " + p.string());
  }
  template <typename T>
  T pod() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    check();
    return v;
  }
  void doubles(double* p, std::size_t n) {
    in_.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
    check();
  }
  std::vector<int> ints() {
    std::vector<int> v(pod<std::uint64_t>());
    in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(int)));
    check();
    return v;
  }
  Eigen::MatrixXd matrix() {
    const auto r = pod<std::int64_t>();
    const auto c = pod<std::int64_t>();
    if (r < 0 || c < 0 || r * c > (std::int64_t{1} << 32)) throw NumericalError("cache: corrupt matrix header");
    Eigen::MatrixXd m(r, c);
    doubles(m.data(), static_cast<std::size_t>(m.size()));
    return m;
  }

 private:
  void check() {
    if (!in_) throw NumericalError("cache: truncated file");
  }
  std::ifstream in_;
};

}  // namespace

void save_system(const SystemOperators& sys, const std::filesystem::path& path) {
  const auto tmp = path.string() + ".tmp";
  {
    Writer w(tmp);
    w.pod(kMagic);
    w.pod(kVersion);
    w.pod(content_hash(sys.device, sys.trunc));
    w.pod<std::uint64_t>(sys.device.transmons.size());
    for (const auto& t : sys.device.transmons) {
      w.pod(t.E_C);
      w.pod(t.E_J);
      w.pod(t.n_g);
    }
    for (double g : sys.device.g) w.pod(g);
    w.pod(sys.device.omega_c);
    w.pod<std::uint8_t>(sys.device.kappa_c.has_value());
    w.pod(sys.device.kappa_c.value_or(0.0));
    w.pod(sys.trunc.n_charge);
    w.pod(sys.trunc.n_qubit_keep);
    w.pod(sys.trunc.n_photon);
    w.ints(sys.dims);
    w.matrix(sys.H);
    w.matrix(Eigen::MatrixXd(sys.energies));
    w.matrix(sys.vectors);
    w.pod<std::uint64_t>(sys.labels.size());
    for (std::size_t j = 0; j < sys.labels.size(); ++j) {
      w.ints(sys.labels[j]);
      w.pod(sys.overlaps[j]);
    }
    w.finish();
  }
  std::filesystem::rename(tmp, path);
}

SystemOperators load_system(const std::filesystem::path& path) {
  Reader r(path);
  if (r.pod<std::uint64_t>() != kMagic) throw NumericalError("cache: bad magic");
  if (r.pod<std::uint32_t>() != kVersion) throw NumericalError("cache: version mismatch");
  const auto hash = r.pod<std::uint64_t>();
  SystemOperators sys;
  const auto nq = r.pod<std::uint64_t>();
  if (nq < 1 || nq > 2) throw NumericalError("cache: corrupt transmon count");
  for (std::uint64_t j = 0; j < nq; ++j) {
    TransmonSpec t;
    t.E_C = r.pod<double>();
    t.E_J = r.pod<double>();
    t.n_g = r.pod<double>();
    sys.device.transmons.push_back(t);
  }
  for (std::uint64_t j = 0; j < nq; ++j) sys.device.g.push_back(r.pod<double>());
  sys.device.omega_c = r.pod<double>();
  const bool has_kappa = r.pod<std::uint8_t>() != 0;
  const double kappa = r.pod<double>();
  if (has_kappa) sys.device.kappa_c = kappa;
  sys.trunc.n_charge = r.pod<int>();
  sys.trunc.n_qubit_keep = r.pod<int>();
  sys.trunc.n_photon = r.pod<int>();
  if (content_hash(sys.device, sys.trunc) != hash) throw NumericalError("cache: content hash mismatch");
  sys.dims = r.ints();
  sys.H = r.matrix();
  sys.energies = r.matrix().col(0);
  sys.vectors = r.matrix();
  const auto n = r.pod<std::uint64_t>();
  sys.labels.resize(n);
  sys.overlaps.resize(n);
  sys.by_label.assign(n, -1);
  for (std::uint64_t j = 0; j < n; ++j) {
    sys.labels[j] = r.ints();
    sys.overlaps[j] = r.pod<double>();
  }
  for (std::uint64_t j = 0; j < n; ++j) sys.by_label[sys.product_index(sys.labels[j])] = static_cast<Eigen::Index>(j);

  const int np = sys.trunc.n_photon;
  const Eigen::Index rest = static_cast<Eigen::Index>(n) / np;
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index b = 0; b < rest; ++b)
    for (int k = 1; k < np; ++k) {
      const double v = std::sqrt(static_cast<double>(k));
      trip.emplace_back(b * np + k - 1, b * np + k, v);
      trip.emplace_back(b * np + k, b * np + k - 1, v);
    }
  sys.Y_c.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  sys.Y_c.setFromTriplets(trip.begin(), trip.end());
  sys.warnings = sys.device.warnings();
  return sys;
}

std::string cache_file_name(const DeviceSpec& device, const TruncationSpec& trunc) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "sys-%016llx.bin",
                static_cast<unsigned long long>(content_hash(device, trunc)));
  return buf;
}

SystemOperators cached_assemble(const DeviceSpec& device, const TruncationSpec& trunc,
                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / cache_file_name(device, trunc);
  if (std::filesystem::exists(path)) {
    try {
      return load_system(path);
    } catch (const NumericalError&) {
      // fall through and rebuild a corrupt entry
    }
  }
  auto sys = assemble_system(device, trunc);
  save_system(sys, path);
  return sys;
}

}  // namespace ripkit
