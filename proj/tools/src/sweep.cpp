#include "sweep.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "ripkit/errors.hpp"

#ifndef RIPKIT_VERSION
#define RIPKIT_VERSION "unknown"
#endif

namespace ripkit::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Axis {
  std::string path;
  std::string name;
  std::vector<double> values;
};

struct Point {
  std::size_t index = 0;
  std::vector<double> values;
};

struct Outcome {
  std::size_t index = 0;
  bool ok = false;
  std::string error;
  double wall = 0.0;
  std::vector<Table> tables;
  std::vector<std::string> warnings;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<Axis> read_axes(const YAML::Node& s) {
  if (!s["axes"] || !s["axes"].IsSequence() || s["axes"].size() == 0)
    throw ConfigError("sweep: 'axes' must be a non-empty list");
  std::vector<Axis> axes;
  for (const auto& a : s["axes"]) {
    Axis ax;
    ax.path = get_string(a, "path", "");
    if (ax.path.empty()) throw ConfigError("sweep: every axis needs a 'path'");
    ax.name = get_string(a, "name", ax.path.substr(ax.path.rfind('.') + 1));
    ax.values = get_grid(a, "values", "sweep.axes");
    axes.push_back(std::move(ax));
  }
  return axes;
}

std::vector<Point> grid(const std::vector<Axis>& axes) {
  std::vector<Point> pts{{0, {}}};
  for (const Axis& ax : axes) {
    std::vector<Point> next;
    for (const Point& p : pts)
      for (double v : ax.values) {
        Point q = p;
        q.values.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].index = i;
  return pts;
}

std::string point_file(std::size_t index, const std::string& table) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", index);
  return std::string(buf) + "." + table + ".csv";
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw ConfigError("sweep: cannot write " + tmp.string());
    os << content;
  }
  fs::rename(tmp, path);
}

// Manifest entry for a completed point, or nothing.
std::map<std::size_t, json> completed_points(const fs::path& manifest, std::uint64_t hash) {
  std::map<std::size_t, json> done;
  if (!fs::exists(manifest)) return done;
  std::ifstream is(manifest);
  json m;
  try {
    m = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep: unreadable manifest: ") + e.what());
  }
  if (m.value("config_hash", std::string()) != std::to_string(hash))
    throw ConfigError("sweep: " + manifest.string() + " belongs to a different config; use a fresh --out");
  for (const auto& p : m["points"])
    if (p.value("status", std::string()) == "done") done[p["index"].get<std::size_t>()] = p;
  return done;
}

}  // namespace

SweepSummary run_sweep(const YAML::Node& root, const SweepOptions& opts) {
  const YAML::Node s = root["sweep"];
  if (!s) throw ConfigError("config: missing 'sweep' block");
  const std::string task = get_string(s, "task", "");
  if (!is_sweepable(task)) throw ConfigError("sweep: task must be rates, response, evolve, collisions or calibrate");
  const std::vector<Axis> axes = read_axes(s);
  const std::vector<Point> points = grid(axes);
  const std::uint64_t hash = config_hash(root);
  const int jobs = std::max(1, opts.jobs);

  // validate the first point before launching anything
  for (const Axis& ax : axes) (void)with_override(root, ax.path, ax.values.front());
  if (root["targets"]) (void)resolve_device(with_override(root, axes.front().path, axes.front().values.front()));

  const fs::path dir = opts.out;
  const fs::path pdir = dir / "points";
  fs::create_directories(pdir);
  const fs::path manifest_path = dir / "manifest.json";
  std::map<std::size_t, json> entries = completed_points(manifest_path, hash);

  SweepSummary summary;
  summary.points = points.size();
  std::vector<Point> pending;
  for (const Point& p : points) {
    if (entries.count(p.index)) ++summary.skipped;
    else pending.push_back(p);
  }

  json manifest;
  manifest["schema"] = 1;
  manifest["ripkit_version"] = RIPKIT_VERSION;
  manifest["config_hash"] = std::to_string(hash);
  manifest["task"] = task;
  manifest["seed"] = opts.seed;
  manifest["jobs"] = jobs;
  json jax = json::array();
  for (const Axis& ax : axes) jax.push_back({{"path", ax.path}, {"name", ax.name}, {"values", ax.values}});
  manifest["axes"] = jax;
  manifest["started"] = timestamp();

  auto flush_manifest = [&]() {
    json pts = json::array();
    for (const auto& [i, e] : entries) pts.push_back(e);
    manifest["points"] = pts;
    manifest["updated"] = timestamp();
    write_atomic(manifest_path, manifest.dump(2) + "\n");
  };
  flush_manifest();

  std::mutex mu;
  std::condition_variable cv;
  std::deque<Outcome> queue;

  // per-point configs are built here so workers never touch a shared node tree
  std::vector<YAML::Node> configs;
  configs.reserve(pending.size());
  for (const Point& p : pending) {
    YAML::Node cfg = YAML::Clone(root);
    for (std::size_t a = 0; a < axes.size(); ++a) cfg.reset(with_override(cfg, axes[a].path, p.values[a]));
    configs.push_back(cfg);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pending.size()) return;
      Outcome o;
      o.index = pending[k].index;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        RunContext ctx;
        ctx.seed = opts.seed + o.index;
        ctx.cache_dir = opts.cache_dir;
        ctx.warnings = &o.warnings;
        o.tables = run_command(task, configs[k], ctx);
        o.ok = true;
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      o.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::lock_guard lock(mu);
      queue.push_back(std::move(o));
      cv.notify_one();
    }
  };

  // single collector: the only writer of point files and the manifest
  auto collector = [&]() {
    for (std::size_t done = 0; done < pending.size(); ++done) {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return !queue.empty(); });
      Outcome o = std::move(queue.front());
      queue.pop_front();
      lock.unlock();

      json e;
      e["index"] = o.index;
      e["values"] = points[o.index].values;
      e["wall_seconds"] = o.wall;
      e["finished"] = timestamp();
      if (o.ok) {
        std::vector<std::string> names;
        for (const Table& t : o.tables) {
          std::ostringstream os;
          write_csv(t, os);
          write_atomic(pdir / point_file(o.index, t.name), os.str());
          names.push_back(t.name);
        }
        e["status"] = "done";
        e["tables"] = names;
        if (!o.warnings.empty()) e["warnings"] = o.warnings;
        ++summary.computed;
      } else {
        e["status"] = "failed";
        e["error"] = o.error;
        ++summary.failed;
      }
      entries[o.index] = e;
      flush_manifest();
    }
  };

  std::thread coll(collector);
  std::vector<std::thread> pool;
  const std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(jobs), pending.size());
  for (std::size_t j = 0; j < width; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  coll.join();

  // merge in point order with the axis values prepended
  std::map<std::string, Table> merged;
  std::vector<std::string> order;
  for (const Point& p : points) {
    auto it = entries.find(p.index);
    if (it == entries.end() || it->second.value("status", std::string()) != "done") continue;
    for (const auto& name : it->second["tables"]) {
      const std::string tn = name.get<std::string>();
      const Table part = read_csv(pdir / point_file(p.index, tn));
      auto [m, inserted] = merged.try_emplace(tn);
      if (inserted) {
        order.push_back(tn);
        m->second.name = tn;
        for (const Axis& ax : axes) m->second.columns.push_back(ax.name);
        m->second.columns.insert(m->second.columns.end(), part.columns.begin(), part.columns.end());
      }
      for (const auto& row : part.rows) {
        std::vector<Cell> r;
        for (double v : p.values) r.emplace_back(v);
        r.insert(r.end(), row.begin(), row.end());
        if (r.size() != m->second.columns.size()) throw NumericalError("sweep: inconsistent table " + tn);
        m->second.rows.push_back(std::move(r));
      }
    }
  }
  for (const auto& n : order) write_table(merged[n], dir, opts.format);
  return summary;
}

}  // namespace ripkit::cli
