#include "cavityfm/farfield_data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

namespace cavityfm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kVersion = 1;
constexpr const char* kMagic = "# cavityfm far-field dataset";

}  // namespace

DirectionSet::DirectionSet(int count_, double a_, double b_) : count(count_), a(a_), b(b_) {
  if (count < 1) throw std::invalid_argument("direction count must be positive");
  if (!(a >= 0.0 && b > a && b <= 2.0 * kPi + 1e-12)) throw std::invalid_argument("aperture must satisfy 0 <= a < b <= 2 pi");
}

double DirectionSet::angle(int j) const { return a + (b - a) * (j + 1) / count; }

Vec2 DirectionSet::direction(int j) const { return direction_vector(angle(j)); }

std::vector<Vec2> DirectionSet::directions() const {
  std::vector<Vec2> out(count);
  for (int j = 0; j < count; ++j) out[j] = direction(j);
  return out;
}

bool DirectionSet::full() const { return a == 0.0 && std::abs(b - 2.0 * kPi) < 1e-12; }

std::string case_name(DataCase c) {
  switch (c) {
    case DataCase::FF: return "FF";
    case DataCase::PP: return "PP";
    case DataCase::SS: return "SS";
    case DataCase::LA: return "LA";
  }
  return "FF";
}

DataCase parse_case(const std::string& name) {
  for (DataCase c : {DataCase::FF, DataCase::PP, DataCase::SS, DataCase::LA})
    if (case_name(c) == name) return c;
  throw std::invalid_argument("unknown data case '" + name + "' (expected FF, PP, SS or LA)");
}

std::string scaling_name(Scaling s) { return s == Scaling::weighted ? "weighted" : "raw"; }

Scaling parse_scaling(const std::string& name) {
  if (name == "weighted") return Scaling::weighted;
  if (name == "raw") return Scaling::raw;
  throw std::invalid_argument("unknown scaling '" + name + "' (expected weighted or raw)");
}

FarFieldMatrix synthesize(const ScatteringSolver& solver, const DirectionSet& directions, DataCase data_case,
                          Scaling scaling, const std::string& geometry) {
  if (data_case == DataCase::FF && !directions.full()) {
    throw std::invalid_argument("FF data needs the full aperture; use LA for an arc");
  }
  const ElasticMedium& m = solver.medium();
  const int count = directions.count;
  const std::vector<Vec2> dirs = directions.directions();
  const Eigen::MatrixXcd rows = double_layer_farfield_rows(m, solver.mesh(), dirs);

  const bool want_p = data_case != DataCase::SS;
  const bool want_s = data_case != DataCase::PP;
  const cplx front = scaling == Scaling::weighted ? std::polar(2.0 * kPi / count, -kPi / 4.0) : cplx(1.0);
  const double wp = scaling == Scaling::weighted ? std::sqrt(m.kp() / m.omega()) : 1.0;
  const double ws = scaling == Scaling::weighted ? std::sqrt(m.ks() / m.omega()) : 1.0;

  // column c < count: P incidence along d_c; c >= count: S incidence
  Eigen::MatrixXcd patterns = Eigen::MatrixXcd::Zero(2 * count, 2 * count);
  std::string failure;
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < 2 * count; ++c) {
    const bool is_p = c < count;
    if ((is_p && !want_p) || (!is_p && !want_s)) continue;
    const Vec2& d = dirs[c % count];
    try {
      const IncidentField inc = is_p ? IncidentField::plane_p(d) : IncidentField::plane_s(d);
      const Eigen::VectorXcd trace = solver.solve_rhs(solver.incident_values(inc)).col(0);
      Eigen::VectorXcd col(2 * count);
      for (int r = 0; r < 2 * count; ++r) col(r) = rows.row(r).transpose().cwiseProduct(trace).sum();
      patterns.col(c) = front * (is_p ? wp : ws) * col;
    } catch (const std::exception& e) {
#pragma omp critical
      failure = e.what();
    }
  }
  if (!failure.empty()) throw NumericalError(failure);

  FarFieldMatrix out;
  out.info.data_case = data_case;
  out.info.count = count;
  out.info.aperture_a = directions.a;
  out.info.aperture_b = directions.b;
  out.info.lambda = m.lambda();
  out.info.mu = m.mu();
  out.info.omega = m.omega();
  out.info.nodes = solver.mesh().nodes().n;
  out.info.geometry = geometry;
  out.info.scaling = scaling;
  switch (data_case) {
    case DataCase::FF:
    case DataCase::LA: out.entries = patterns; break;
    case DataCase::PP: out.entries = patterns.topLeftCorner(count, count); break;
    case DataCase::SS: out.entries = patterns.bottomRightCorner(count, count); break;
  }
  return out;
}

FarFieldMatrix synthesize(const ElasticMedium& medium, const std::vector<BoundaryCurve>& curves,
                          const NodeSet& nodes, const DirectionSet& directions, DataCase data_case, Scaling scaling,
                          const std::string& geometry) {
  const ScatteringSolver solver(medium, curves, nodes);
  return synthesize(solver, directions, data_case, scaling, geometry);
}

double NormalStream::uniform(std::uint64_t counter) const {
  std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal(std::uint64_t index) const {
  const std::uint64_t pair = index / 2;
  const double radius = std::sqrt(-2.0 * std::log(uniform(2 * pair)));
  const double phase = 2.0 * kPi * uniform(2 * pair + 1);
  return index % 2 == 0 ? radius * std::cos(phase) : radius * std::sin(phase);
}

FarFieldMatrix add_noise(const FarFieldMatrix& matrix, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("noise level must be nonnegative");
  FarFieldMatrix out = matrix;
  out.info.delta = delta;
  out.info.seed = seed;
  if (delta == 0.0) return out;
  const NormalStream stream(seed);
  const Eigen::Index rows = matrix.entries.rows();
  const Eigen::Index cols = matrix.entries.cols();
  const std::uint64_t rc = static_cast<std::uint64_t>(rows * cols);
  Eigen::MatrixXcd noise(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const std::uint64_t idx = static_cast<std::uint64_t>(r * cols + c);
      noise(r, c) = cplx(stream.normal(idx), stream.normal(rc + idx));
    }
  }
  out.entries = matrix.entries + (delta * matrix.entries.norm() / noise.norm()) * noise;
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last) throw std::invalid_argument("not a number: '" + text + "'");
  return x;
}

std::string format_dataset(const FarFieldMatrix& m) {
  const DatasetInfo& i = m.info;
  std::ostringstream os;
  os << kMagic << '\n';
  os << "version=" << kVersion << '\n';
  os << "case=" << case_name(i.data_case) << '\n';
  os << "rows=" << m.entries.rows() << '\n';
  os << "cols=" << m.entries.cols() << '\n';
  os << "N=" << i.count << '\n';
  os << "aperture_a=" << format_double(i.aperture_a) << '\n';
  os << "aperture_b=" << format_double(i.aperture_b) << '\n';
  os << "lambda=" << format_double(i.lambda) << '\n';
  os << "mu=" << format_double(i.mu) << '\n';
  os << "omega=" << format_double(i.omega) << '\n';
  os << "nodes=" << i.nodes << '\n';
  os << "geometry=" << i.geometry << '\n';
  os << "scaling=" << scaling_name(i.scaling) << '\n';
  os << "delta=" << format_double(i.delta) << '\n';
  os << "seed=" << i.seed << '\n';
  os << "norm=frobenius\n";
  os << "data\n";
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
      if (c > 0) os << ' ';
      os << format_double(m.entries(r, c).real()) << ' ' << format_double(m.entries(r, c).imag());
    }
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw DatasetError(source + ":" + std::to_string(line) + ": " + what);
}

long parse_integer(const std::string& text, const std::string& source, int line) {
  long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) fail(source, line, "expected an integer, got '" + text + "'");
  return v;
}

}  // namespace

FarFieldMatrix parse_dataset(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next = [&](const char* expecting) {
    if (!std::getline(in, line)) fail(source, lineno + 1, std::string("unexpected end of file, expected ") + expecting);
    ++lineno;
  };
  next("header");
  if (line != kMagic) fail(source, lineno, "not a cavityfm far-field dataset");

  std::map<std::string, std::string> header;
  for (;;) {
    next("header or 'data'");
    if (line == "data") break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(source, lineno, "expected key=value, got '" + line + "'");
    header[line.substr(0, eq)] = line.substr(eq + 1);
    if (line.substr(0, eq) == "version") {
      const long v = parse_integer(line.substr(eq + 1), source, lineno);
      if (v != kVersion)
        fail(source, lineno, "incompatible dataset version " + std::to_string(v) + " (this build reads version " +
                                 std::to_string(kVersion) + ")");
    }
  }
  for (const char* key : {"version", "case", "rows", "cols", "N", "aperture_a", "aperture_b", "lambda", "mu", "omega",
                          "nodes", "geometry", "scaling", "delta", "seed"}) {
    if (!header.count(key)) fail(source, lineno, std::string("missing header field '") + key + "'");
  }

  FarFieldMatrix m;
  DatasetInfo& i = m.info;
  auto real_field = [&](const char* key) {
    try {
      return parse_double(header[key]);
    } catch (const std::exception&) {
      fail(source, lineno, std::string("bad value for '") + key + "'");
    }
  };
  try {
    i.data_case = parse_case(header["case"]);
    i.scaling = parse_scaling(header["scaling"]);
  } catch (const std::exception& e) {
    fail(source, lineno, e.what());
  }
  const long rows = parse_integer(header["rows"], source, lineno);
  const long cols = parse_integer(header["cols"], source, lineno);
  if (rows < 1 || cols < 1) fail(source, lineno, "matrix dimensions must be positive");
  i.count = static_cast<int>(parse_integer(header["N"], source, lineno));
  i.nodes = static_cast<int>(parse_integer(header["nodes"], source, lineno));
  i.aperture_a = real_field("aperture_a");
  i.aperture_b = real_field("aperture_b");
  i.lambda = real_field("lambda");
  i.mu = real_field("mu");
  i.omega = real_field("omega");
  i.delta = real_field("delta");
  i.geometry = header["geometry"];
  {
    const std::string& s = header["seed"];
    std::uint64_t seed = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(source, lineno, "bad value for 'seed'");
    i.seed = seed;
  }

  m.entries.resize(rows, cols);
  for (long r = 0; r < rows; ++r) {
    next("a matrix row");
    std::istringstream row(line);
    std::string re, im;
    for (long c = 0; c < cols; ++c) {
      if (!(row >> re >> im)) fail(source, lineno, "row has fewer than " + std::to_string(cols) + " entries");
      try {
        m.entries(r, c) = cplx(parse_double(re), parse_double(im));
      } catch (const std::exception& e) {
        fail(source, lineno, e.what());
      }
    }
    std::string extra;
    if (row >> extra) fail(source, lineno, "row has more than " + std::to_string(cols) + " entries");
  }
  next("'end'");
  if (line != "end") fail(source, lineno, "expected 'end', got '" + line + "'");
  return m;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move dataset into place at '" + path + "'");
  }
}

void save_dataset(const std::string& path, const FarFieldMatrix& matrix) {
  write_file_atomic(path, format_dataset(matrix));
}

FarFieldMatrix load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open dataset '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), path);
}

}  // namespace cavityfm
