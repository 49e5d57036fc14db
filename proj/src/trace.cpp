#include "wg/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "wg/errors.hpp"

namespace wg {

double SurfaceTrace::step() const {
  if (x.size() < 2) throw ValidationError("trace: need >= 2 samples for a step");
  if (!uniform()) throw ValidationError("trace: sampling is not uniform");
  return (x.back() - x.front()) / static_cast<double>(x.size() - 1);
}

bool SurfaceTrace::uniform(double rel_tol) const {
  if (x.size() < 2) return true;
  const double tau = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i] - x[i - 1] - tau) > rel_tol * std::abs(tau)) return false;
  return true;
}

double l2_norm(const std::vector<cplx>& d) {
  if (d.empty()) return 0.0;
  double s = 0.0;
  for (const cplx& v : d) s += std::norm(v);
  return std::sqrt(s / static_cast<double>(d.size()));
}

double l2_norm(const SurfaceTrace& t) { return l2_norm(t.d); }

double trace_l2_integral(const SurfaceTrace& t) {
  if (t.size() < 2) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i + 1 < t.size(); ++i)
    s += 0.5 * (std::norm(t.d[i]) + std::norm(t.d[i + 1])) * (t.x[i + 1] - t.x[i]);
  return std::sqrt(s);
}

namespace {

// Fixed uniform-double and Box-Muller mapping so equal seeds give bit-equal
// noise regardless of the standard library.
struct GaussianStream {
  std::mt19937_64 rng;
  explicit GaussianStream(std::uint64_t seed) : rng(seed) {}
  double uniform() {  // (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  }
  cplx standard_complex() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));  // |z| so that E|z|^2 = 1
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }
};

}  // namespace

SurfaceTrace add_noise(const SurfaceTrace& trace, double amplitude, std::uint64_t seed) {
  if (amplitude < 0.0) throw ValidationError("add_noise: amplitude must be >= 0");
  SurfaceTrace out = trace;
  if (amplitude == 0.0) return out;
  const double scale = amplitude * l2_norm(trace);
  GaussianStream gs(seed);
  for (cplx& v : out.d) v += scale * gs.standard_complex();
  out.meta["noise"] = {{"amplitude", amplitude}, {"seed", seed}};
  return out;
}

namespace {

void append_number(std::string& s, double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, res.ptr);
}

double parse_number(std::string_view sv) {
  double v = 0.0;
  auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc())
    throw IoError("trace csv: bad number '" + std::string(sv) + "'");
  return v;
}

}  // namespace

std::string trace_to_csv(const SurfaceTrace& t) {
  std::string s = "x,re,im\n";
  for (size_t i = 0; i < t.size(); ++i) {
    append_number(s, t.x[i]);
    s.push_back(',');
    append_number(s, t.d[i].real());
    s.push_back(',');
    append_number(s, t.d[i].imag());
    s.push_back('\n');
  }
  return s;
}

SurfaceTrace trace_from_csv(const std::string& text) {
  SurfaceTrace t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,re,im", 0) != 0)
    throw IoError("trace csv: missing 'x,re,im' header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw IoError("trace csv: malformed row '" + line + "'");
    t.x.push_back(parse_number(std::string_view(line).substr(0, c1)));
    const double re = parse_number(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const double im = parse_number(std::string_view(line).substr(c2 + 1));
    t.d.emplace_back(re, im);
  }
  for (size_t i = 1; i < t.x.size(); ++i)
    if (!(t.x[i] > t.x[i - 1]))
      throw ValidationError("trace csv: abscissae must be strictly increasing");
  return t;
}

void write_trace_csv(const SurfaceTrace& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << trace_to_csv(t);
  if (!out) throw IoError("write failed: " + path);
}

SurfaceTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return trace_from_csv(ss.str());
}

void write_trace_meta(const SurfaceTrace& t, const std::string& path) {
  nlohmann::json j = t.meta;
  j["k"] = t.k;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

void read_trace_meta(SurfaceTrace& t, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("trace meta: ") + e.what());
  }
  t.k = j.value("k", 0.0);
  t.meta = j;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw ValidationError("linspace: count must be >= 2");
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return v;
}

}  // namespace wg
