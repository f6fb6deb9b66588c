#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctns/model.hpp"

namespace ctns {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field snapshot byte layout (all little-endian):
//   bytes  0- 7  magic "CTNSFLD1"
//   bytes  8-11  int32  dim
//   bytes 12-15  int32  points per axis
//   bytes 16-19  int32  components
//   bytes 20-27  float64 time
//   bytes 28-..  components * N^dim float64 values, component-major,
//                row-major within a component (axis 0 slowest).
inline constexpr char snapshot_magic[8] = {'C', 'T', 'N', 'S', 'F', 'L', 'D', '1'};

namespace detail {

inline void put_i32(std::ostream& os, std::int32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((static_cast<std::uint32_t>(v) >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::int32_t get_i32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw io_error("snapshot: truncated header");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return static_cast<std::int32_t>(v);
}

inline void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char*>(b), 8);
}

inline double get_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw io_error("snapshot: truncated data");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace detail

inline void write_snapshot(const std::string& path, const RealField& f, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("snapshot: cannot open " + path + " for writing");
  os.write(snapshot_magic, 8);
  detail::put_i32(os, f.grid().dim());
  detail::put_i32(os, f.grid().n());
  detail::put_i32(os, f.components());
  detail::put_f64(os, time);
  for (double v : f.data()) detail::put_f64(os, v);
  if (!os) throw io_error("snapshot: write failed on " + path);
}

struct SnapshotHeader {
  int dim = 0;
  int n = 0;
  int components = 0;
  double time = 0.0;
};

inline SnapshotHeader read_snapshot_header(std::istream& is, const std::string& path) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, snapshot_magic, 8) != 0)
    throw io_error("snapshot: bad or missing magic in " + path);
  SnapshotHeader h;
  h.dim = detail::get_i32(is);
  h.n = detail::get_i32(is);
  h.components = detail::get_i32(is);
  h.time = detail::get_f64(is);
  if (h.dim < 2 || h.dim > 3 || h.n < 8 || h.components < 1)
    throw io_error("snapshot: corrupt header in " + path);
  return h;
}

inline std::pair<RealField, double> read_snapshot(const std::string& path, GridPtr grid = {}) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("snapshot: cannot open " + path);
  const SnapshotHeader h = read_snapshot_header(is, path);
  if (grid) {
    if (h.dim != grid->dim() || h.n != grid->n())
      throw io_error("snapshot: grid mismatch in " + path);
  } else {
    grid = make_grid(h.dim, h.n);
  }
  RealField f(grid, h.components);
  for (auto& v : f.data()) v = detail::get_f64(is);
  return {std::move(f), h.time};
}

/// Flat key-value manifest describing a checkpoint.
struct Manifest {
  std::map<std::string, std::string> kv;

  void set(const std::string& key, const std::string& value) { kv[key] = value; }
  void set_f64(const std::string& key, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    kv[key] = buf;
  }

  const std::string& get(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw io_error("manifest: missing key " + key);
    return it->second;
  }
  double get_f64(const std::string& key) const { return std::stod(get(key)); }
  long get_i64(const std::string& key) const { return std::stol(get(key)); }
};

inline void write_manifest(const std::string& path, const Manifest& m) {
  std::ofstream os(path);
  if (!os) throw io_error("manifest: cannot open " + path + " for writing");
  for (const auto& [k, v] : m.kv) os << k << " = " << v << "\n";
  if (!os) throw io_error("manifest: write failed on " + path);
}

inline Manifest read_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("manifest: cannot open " + path);
  Manifest m;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw io_error("manifest: malformed line: " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t\r");
      return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    m.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return m;
}

/// Checkpoint = manifest + one snapshot per field:
///   <prefix>.manifest, <prefix>.n.fld, <prefix>.c.fld, <prefix>.u.fld
inline void checkpoint_save(const State& s, const std::string& prefix, double dt,
                            const ModelParams& params, std::uint64_t seed) {
  Manifest m;
  m.set("dim", std::to_string(s.grid().dim()));
  m.set("n_per_axis", std::to_string(s.grid().n()));
  m.set_f64("time", s.time());
  m.set_f64("dt", dt);
  m.set_f64("chi", params.chi);
  std::ostringstream grav;
  for (int d = 0; d < s.grid().dim(); ++d) {
    if (d) grav << ",";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", params.grav[d]);
    grav << buf;
  }
  m.set("grav", grav.str());
  m.set("seed", std::to_string(seed));
  write_manifest(prefix + ".manifest", m);
  write_snapshot(prefix + ".n.fld", s.n(), s.time());
  write_snapshot(prefix + ".c.fld", s.c(), s.time());
  write_snapshot(prefix + ".u.fld", s.u(), s.time());
}

struct Checkpoint {
  State state;
  double dt = 0.0;
  ModelParams params;
  std::uint64_t seed = 0;
};

inline Checkpoint checkpoint_load(const std::string& prefix) {
  const Manifest m = read_manifest(prefix + ".manifest");
  const int dim = static_cast<int>(m.get_i64("dim"));
  const int n = static_cast<int>(m.get_i64("n_per_axis"));
  GridPtr grid = make_grid(dim, n);
  auto [fn, tn] = read_snapshot(prefix + ".n.fld", grid);
  auto [fc, tc] = read_snapshot(prefix + ".c.fld", grid);
  auto [fu, tu] = read_snapshot(prefix + ".u.fld", grid);
  if (fu.components() != dim || fn.components() != 1 || fc.components() != 1)
    throw io_error("checkpoint: field component mismatch under " + prefix);
  const double time = m.get_f64("time");
  ModelParams p;
  p.chi = m.get_f64("chi");
  p.grav = {0.0, 0.0, 0.0};
  {
    std::istringstream gs(m.get("grav"));
    std::string tok;
    int d = 0;
    while (std::getline(gs, tok, ',') && d < 3) p.grav[d++] = std::stod(tok);
  }
  Checkpoint out{State(time, std::move(fn), std::move(fc), std::move(fu)), m.get_f64("dt"), p,
                 static_cast<std::uint64_t>(m.get_i64("seed"))};
  return out;
}

}  // namespace ctns
