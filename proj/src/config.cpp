#include "cavityfm/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cavityfm {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : s_(text) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw std::invalid_argument("bad expression '" + s_ + "': " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double v = product();
    for (;;) {
      if (accept('+')) v += product();
      else if (accept('-')) v -= product();
      else return v;
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        const double d = unary();
        if (d == 0.0) error("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return atom();
  }

  double atom() {
    skip();
    if (accept('(')) {
      const double v = sum();
      if (!accept(')')) error("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return kPi;
    }
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const auto res = std::from_chars(first, s_.data() + s_.size(), v);
    if (res.ec != std::errc() || res.ptr == first) error("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

struct Entry {
  std::string value;
  int line;
};

class SectionReader {
 public:
  SectionReader(std::string section, std::map<std::string, Entry> entries, std::string source)
      : section_(std::move(section)), entries_(std::move(entries)), source_(std::move(source)) {}

  std::string where(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(section_ + "." + key, where(key) + ": " + section_ + "." + key + ": " + what);
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string text(const std::string& key) {
    used_.insert(key);
    return entries_.at(key).value;
  }

  double number(const std::string& key) {
    try {
      const double v = evaluate_expression(text(key));
      if (!std::isfinite(v)) fail(key, "value is not finite");
      return v;
    } catch (const std::invalid_argument& e) {
      fail(key, e.what());
    }
  }

  std::vector<double> numbers(const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split_list(text(key))) {
      try {
        out.push_back(evaluate_expression(item));
      } catch (const std::invalid_argument& e) {
        fail(key, e.what());
      }
    }
    return out;
  }

  long integer(const std::string& key) {
    const std::string t = text(key);
    long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) fail(key, "expected an integer, got '" + t + "'");
    return v;
  }

  bool boolean(const std::string& key) {
    const std::string t = text(key);
    if (t == "true" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "no" || t == "0") return false;
    fail(key, "expected true or false, got '" + t + "'");
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key)) fail(key, "unknown key");
  }

 private:
  std::string section_;
  std::map<std::string, Entry> entries_;
  std::string source_;
  std::set<std::string> used_;
};

const std::set<std::string> kSections = {"scenario", "medium", "scatterer", "data",
                                         "inversion", "grid", "output", "run"};

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(message), field_(std::move(field)) {}

double evaluate_expression(const std::string& text) { return ExpressionParser(text).parse(); }

BoundaryCurve ScattererSpec::curve() const { return make_preset(shape, params, center, scale); }

std::vector<BoundaryCurve> ScenarioConfig::curves() const {
  std::vector<BoundaryCurve> out;
  for (const auto& s : scatterers) out.push_back(s.curve());
  return out;
}

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  struct Section {
    std::string name;
    std::map<std::string, Entry> entries;
    int line;
  };
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string at = source + ":" + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", at + "malformed section header '" + line + "'");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(name)) throw ConfigError(name, at + "unknown section [" + name + "]");
      if (name != "scatterer") {
        for (const auto& s : sections)
          if (s.name == name) throw ConfigError(name, at + "section [" + name + "] appears twice");
      }
      sections.push_back({name, {}, lineno});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", at + "expected key = value, got '" + line + "'");
    if (sections.empty()) throw ConfigError("", at + "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    auto& entries = sections.back().entries;
    if (entries.count(key)) throw ConfigError(sections.back().name + "." + key, at + "duplicate key '" + key + "'");
    entries[key] = {trim(line.substr(eq + 1)), lineno};
  }

  ScenarioConfig c;
  bool saw_polarizations = false;
  for (auto& sec : sections) {
    SectionReader r(sec.name, sec.entries, source);
    if (sec.name == "scenario") {
      if (r.has("name")) c.name = r.text("name");
      if (r.has("case")) {
        try {
          c.data_case = parse_case(r.text("case"));
        } catch (const std::invalid_argument& e) {
          r.fail("case", e.what());
        }
      }
      if (r.has("strict")) c.strict = r.boolean("strict");
    } else if (sec.name == "medium") {
      if (r.has("lambda")) c.lambda = r.number("lambda");
      if (r.has("mu")) c.mu = r.number("mu");
      if (r.has("omega")) c.omega = r.number("omega");
    } else if (sec.name == "scatterer") {
      ScattererSpec s;
      if (r.has("shape")) s.shape = r.text("shape");
      if (r.has("params")) s.params = r.numbers("params");
      if (r.has("center")) {
        const auto v = r.numbers("center");
        if (v.size() != 2) r.fail("center", "expected two coordinates");
        s.center = Vec2(v[0], v[1]);
      }
      if (r.has("scale")) s.scale = r.number("scale");
      c.scatterers.push_back(s);
    } else if (sec.name == "data") {
      if (r.has("directions")) c.directions = static_cast<int>(r.integer("directions"));
      if (r.has("nodes")) c.nodes = static_cast<int>(r.integer("nodes"));
      if (r.has("aperture")) {
        const auto v = r.numbers("aperture");
        if (v.size() != 2) r.fail("aperture", "expected two angles a, b");
        c.aperture_a = v[0];
        c.aperture_b = v[1];
      }
      if (r.has("delta")) c.delta = r.number("delta");
      if (r.has("seed")) {
        const std::string t = r.text("seed");
        std::uint64_t seed = 0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), seed);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) r.fail("seed", "expected a nonnegative integer");
        c.seed = seed;
      }
      if (r.has("scaling")) {
        try {
          c.scaling = parse_scaling(r.text("scaling"));
        } catch (const std::invalid_argument& e) {
          r.fail("scaling", e.what());
        }
      }
    } else if (sec.name == "inversion") {
      if (r.has("mode")) {
        const std::string m = r.text("mode");
        try {
          if (m != "default") c.mode = parse_mode(m);
        } catch (const std::invalid_argument& e) {
          r.fail("mode", e.what());
        }
      }
      if (r.has("combine")) {
        try {
          c.combine = parse_combine(r.text("combine"));
        } catch (const std::invalid_argument& e) {
          r.fail("combine", e.what());
        }
      }
      if (r.has("polarizations")) {
        c.polarizations = r.numbers("polarizations");
        saw_polarizations = true;
      }
    } else if (sec.name == "grid") {
      if (r.has("x")) {
        const auto v = r.numbers("x");
        if (v.size() != 2) r.fail("x", "expected x0, x1");
        c.grid.x0 = v[0];
        c.grid.x1 = v[1];
      }
      if (r.has("y")) {
        const auto v = r.numbers("y");
        if (v.size() != 2) r.fail("y", "expected y0, y1");
        c.grid.y0 = v[0];
        c.grid.y1 = v[1];
      }
      if (r.has("nx")) c.grid.nx = static_cast<int>(r.integer("nx"));
      if (r.has("ny")) c.grid.ny = static_cast<int>(r.integer("ny"));
    } else if (sec.name == "output") {
      if (r.has("directory")) c.output_directory = r.text("directory");
      if (r.has("dataset")) c.write_dataset = r.boolean("dataset");
      if (r.has("heatmap")) c.write_heatmap = r.boolean("heatmap");
    } else {
      continue;  // [run] carries results in manifests
    }
    r.reject_unknown();
  }
  if (!saw_polarizations) c.polarizations = {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

void validate(const ScenarioConfig& c) {
  auto bad = [](const std::string& field, const std::string& what) { throw ConfigError(field, field + ": " + what); };
  if (c.name.empty()) bad("scenario.name", "must not be empty");
  if (!(c.mu > 0.0)) bad("medium.mu", "must be positive");
  if (!(c.lambda + 2.0 * c.mu > 0.0)) bad("medium.lambda", "lambda + 2 mu must be positive");
  if (c.strict && !(c.lambda + c.mu > 0.0)) bad("medium.lambda", "lambda + mu must be positive in strict mode");
  if (!(c.omega > 0.0)) bad("medium.omega", "must be positive");
  if (c.scatterers.empty()) bad("scatterer", "at least one [scatterer] section is required");
  for (std::size_t i = 0; i < c.scatterers.size(); ++i) {
    const auto& s = c.scatterers[i];
    const std::string field = "scatterer[" + std::to_string(i + 1) + "]";
    if (!(s.scale > 0.0)) bad(field + ".scale", "must be positive");
    try {
      s.curve();
    } catch (const std::exception& e) {
      bad(field + ".shape", e.what());
    }
  }
  if (c.directions < 2) bad("data.directions", "need at least two directions");
  if (c.nodes < 8 || c.nodes % 2 != 0) bad("data.nodes", "must be an even number of at least 8");
  if (!(c.aperture_a >= 0.0 && c.aperture_b > c.aperture_a && c.aperture_b <= 2.0 * kPi + 1e-12))
    bad("data.aperture", "must satisfy 0 <= a < b <= 2 pi");
  const bool full = c.aperture_a == 0.0 && std::abs(c.aperture_b - 2.0 * kPi) < 1e-12;
  if (c.data_case == DataCase::FF && !full) bad("data.aperture", "case FF needs the full aperture; use case LA");
  if (!(c.delta >= 0.0)) bad("data.delta", "must be nonnegative");
  if (c.polarizations.empty()) bad("inversion.polarizations", "at least one angle is required");
  if (c.combine == Combine::single && c.polarizations.size() != 1)
    bad("inversion.combine", "'single' takes exactly one polarization");
  if (c.grid.nx < 1 || c.grid.ny < 1) bad("grid.nx", "grid counts must be positive");
  if (!(c.grid.x1 >= c.grid.x0) || !(c.grid.y1 >= c.grid.y0)) bad("grid.x", "ranges must be increasing");
  if (c.output_directory.empty()) bad("output.directory", "must not be empty");
}

std::string format_config(const ScenarioConfig& c) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s;
  };
  std::ostringstream os;
  os << "[scenario]\n"
     << "name = " << c.name << '\n'
     << "case = " << case_name(c.data_case) << '\n'
     << "strict = " << (c.strict ? "true" : "false") << "\n\n";
  os << "[medium]\n"
     << "lambda = " << format_double(c.lambda) << '\n'
     << "mu = " << format_double(c.mu) << '\n'
     << "omega = " << format_double(c.omega) << "\n\n";
  for (const auto& s : c.scatterers) {
    os << "[scatterer]\n"
       << "shape = " << s.shape << '\n';
    if (!s.params.empty()) os << "params = " << list(s.params) << '\n';
    os << "center = " << format_double(s.center.x()) << ", " << format_double(s.center.y()) << '\n'
       << "scale = " << format_double(s.scale) << "\n\n";
  }
  os << "[data]\n"
     << "directions = " << c.directions << '\n'
     << "nodes = " << c.nodes << '\n'
     << "aperture = " << format_double(c.aperture_a) << ", " << format_double(c.aperture_b) << '\n'
     << "delta = " << format_double(c.delta) << '\n'
     << "seed = " << c.seed << '\n'
     << "scaling = " << scaling_name(c.scaling) << "\n\n";
  os << "[inversion]\n"
     << "mode = " << (c.mode ? mode_name(*c.mode) : "default") << '\n'
     << "combine = " << combine_name(c.combine) << '\n'
     << "polarizations = " << list(c.polarizations) << "\n\n";
  os << "[grid]\n"
     << "x = " << format_double(c.grid.x0) << ", " << format_double(c.grid.x1) << '\n'
     << "y = " << format_double(c.grid.y0) << ", " << format_double(c.grid.y1) << '\n'
     << "nx = " << c.grid.nx << '\n'
     << "ny = " << c.grid.ny << "\n\n";
  os << "[output]\n"
     << "directory = " << c.output_directory << '\n'
     << "dataset = " << (c.write_dataset ? "true" : "false") << '\n'
     << "heatmap = " << (c.write_heatmap ? "true" : "false") << '\n';
  return os.str();
}

namespace {

std::string scatterer_block(const std::string& shape, const std::string& params, const std::string& center,
                            const std::string& scale = "1") {
  std::string s = "[scatterer]\nshape = " + shape + "\n";
  if (!params.empty()) s += "params = " + params + "\n";
  return s + "center = " + center + "\nscale = " + scale + "\n\n";
}

std::string scenario(const std::string& name, const std::string& data_case, const std::string& lambda,
                     const std::string& mu, const std::string& omega, const std::string& scatterers,
                     const std::string& grid, const std::string& aperture = "0, 2*pi") {
  return "[scenario]\nname = " + name + "\ncase = " + data_case + "\n\n[medium]\nlambda = " + lambda +
         "\nmu = " + mu + "\nomega = " + omega + "\n\n" + scatterers +
         "[data]\ndirections = 64\nnodes = 128\naperture = " + aperture +
         "\ndelta = 0.1\nseed = 1\n\n[inversion]\npolarizations = 0, pi/4, pi/2, 3*pi/4\ncombine = "
         "sum_normalized\n\n[grid]\nx = " +
         grid + "\ny = " + grid + "\nnx = 101\nny = 101\n\n[output]\ndirectory = out/" + name + "\n";
}

std::vector<Preset> build_presets() {
  const std::string rr = scatterer_block("rounded_rectangle", "1.5, 10", "0, 0");
  const std::string pear = scatterer_block("pear", "0.15", "0, 0");
  const std::string kite = scatterer_block("kite", "0.65, 1.5", "0, 0");
  const std::string two_far =
      scatterer_block("ellipse", "1.5, 1", "-3, 2") + scatterer_block("rounded_rectangle", "1.5, 10", "2, 1");
  const std::string two_near =
      scatterer_block("ellipse", "1.5, 1", "-1.5, 1") + scatterer_block("rounded_rectangle", "1.5, 10", "1.5, -1");
  const std::string small_pear = scatterer_block("pear", "0.2", "6, 0", "0.5");
  const std::string ms1 = scatterer_block("rounded_rectangle", "1.5, 10", "-2, 0", "3") + small_pear;
  const std::string ms2 = scatterer_block("circle", "0.1", "-2, 0") + small_pear;

  std::vector<Preset> p;
  auto add = [&p](const std::string& name, const std::string& summary, const std::string& data_case,
                  const std::string& lambda, const std::string& mu, const std::string& omega,
                  const std::string& scatterers, const std::string& grid, const std::string& aperture = "0, 2*pi") {
    p.push_back({name, summary, omega, aperture == "0, 2*pi" ? "full" : "(" + aperture + ")",
                 scenario(name, data_case, lambda, mu, omega, scatterers, grid, aperture)});
  };
  add("fig1-ff", "rounded rectangle, FF data, four polarizations", "FF", "1", "1", "8*pi", rr, "-3, 3");
  add("fig1-pp", "rounded rectangle, PP data, four polarizations", "PP", "1", "1", "8*pi", rr, "-3, 3");
  add("fig1-ss", "rounded rectangle, SS data, four polarizations", "SS", "1", "1", "8*pi", rr, "-3, 3");
  add("pear-lambda1", "pear, lambda = 1 (kp < ks)", "FF", "1", "1", "5*pi", pear, "-3, 3");
  add("pear-lambda-1", "pear, lambda = -1 (kp = ks)", "FF", "-1", "1", "5*pi", pear, "-3, 3");
  add("pear-lambda-1.5", "pear, lambda = -1.5 (kp > ks)", "FF", "-1.5", "1", "5*pi", pear, "-3, 3");
  for (const char* w : {"2", "4", "5", "7", "8", "9"}) {
    add(std::string("rr-freq-") + w + "pi", "rounded rectangle, SS data, frequency sweep", "SS", "1", "1",
        std::string(w) + "*pi", rr, "-3, 3");
  }
  add("two-scatterer-far", "ellipse and rounded rectangle, well separated", "FF", "5", "5", "9*pi", two_far, "-6, 6");
  add("two-scatterer-near", "ellipse and rounded rectangle, close together", "FF", "5", "5", "9*pi", two_near,
      "-6, 6");
  add("multiscale-ex1", "large rounded rectangle and small pear", "FF", "5", "5", "6*pi", ms1, "-8, 8");
  add("multiscale-ex2", "circle of radius 0.1 and small pear", "FF", "5", "5", "12*pi", ms2, "-8, 8");
  const char* arcs[4] = {"0, pi/2", "pi/2, pi", "pi, 3*pi/2", "3*pi/2, 2*pi"};
  for (int q = 0; q < 4; ++q) {
    add("limited-q" + std::to_string(q + 1), "kite, limited-aperture data", "LA", "2", "1", "3*pi", kite, "-3, 3",
        arcs[q]);
  }
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace cavityfm
