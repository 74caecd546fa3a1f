#include "cavityfm/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cavityfm/farfield_data.hpp"

namespace cavityfm {

GridValues parse_indicator_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  std::vector<double> xs, ys, ws;
  auto fail = [&](const std::string& what) {
    throw HeatmapError(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "x,y,W") fail("expected header 'x,y,W'");
      header = true;
      continue;
    }
    std::string field[3];
    std::istringstream row(line);
    for (auto& f : field)
      if (!std::getline(row, f, ',')) fail("expected three comma-separated values");
    std::string rest;
    if (std::getline(row, rest)) fail("too many columns");
    try {
      xs.push_back(parse_double(field[0]));
      ys.push_back(parse_double(field[1]));
      ws.push_back(parse_double(field[2]));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (!std::isfinite(ws.back())) fail("indicator value is not finite");
  }
  if (!header) fail("missing header 'x,y,W'");
  if (ws.empty()) fail("no data rows");

  GridValues g;
  // x varies fastest: the first row of constant y gives nx
  std::size_t nx = 1;
  while (nx < ys.size() && ys[nx] == ys[0]) ++nx;
  if (ws.size() % nx != 0) fail("row count is not a multiple of the grid width");
  g.nx = static_cast<int>(nx);
  g.ny = static_cast<int>(ws.size() / nx);
  for (int i = 0; i < g.nx; ++i) g.x.push_back(xs[i]);
  for (int j = 0; j < g.ny; ++j) {
    g.y.push_back(ys[static_cast<std::size_t>(j) * nx]);
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * nx + i;
      if (xs[k] != g.x[i] || ys[k] != g.y[j]) {
        lineno = 0;
        fail("points do not form a regular grid in x-fastest order");
      }
    }
  }
  g.w = std::move(ws);
  return g;
}

std::string render_pgm(const GridValues& g) {
  if (g.nx < 1 || g.ny < 1 || g.w.size() != static_cast<std::size_t>(g.nx) * g.ny)
    throw HeatmapError("grid dimensions do not match the number of values");
  const auto [lo, hi] = std::minmax_element(g.w.begin(), g.w.end());
  const double min = *lo, max = *hi;
  std::string out = "P5\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n255\n";
  out.reserve(out.size() + g.w.size());
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      const double w = g.w[static_cast<std::size_t>(j) * g.nx + i];
      const double level = max > min ? std::round(255.0 * (w - min) / (max - min)) : 255.0;
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(level, 0.0, 255.0))));
    }
  }
  return out;
}

void render_heatmap(const std::string& csv_path, const std::string& pgm_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw HeatmapError("cannot open '" + csv_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  write_file_atomic(pgm_path, render_pgm(parse_indicator_csv(buf.str(), csv_path)));
}

}  // namespace cavityfm
