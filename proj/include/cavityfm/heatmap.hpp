#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cavityfm {

class HeatmapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Indicator samples read back from CSV, x varying fastest.
struct GridValues {
  int nx = 0;
  int ny = 0;
  std::vector<double> x;  // nx distinct abscissae
  std::vector<double> y;  // ny distinct ordinates
  std::vector<double> w;  // w[j * nx + i]
};

GridValues parse_indicator_csv(const std::string& text, const std::string& source = "<csv>");

// Binary PGM (P5, maxval 255). The first raster row is the largest y.
// Pixels are round(255 (W - min) / (max - min)); a constant grid maps to 255.
std::string render_pgm(const GridValues& grid);

void render_heatmap(const std::string& csv_path, const std::string& pgm_path);

}  // namespace cavityfm
