#include "prefsamp/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace prefsamp {

std::string format_sig6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  auto a = s.begin();
  auto b = s.end();
  while (a != b && std::isspace(static_cast<unsigned char>(*a))) ++a;
  while (b != a && std::isspace(static_cast<unsigned char>(*(b - 1)))) --b;
  return {a, b};
}

double parse_real(const std::string& field, int line_no, const char* name) {
  const std::string t = trim(field);
  if (t.empty()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": empty " + name + " field");
  }
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse " + name +
                             " value '" + t + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) fields.push_back(cur);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

ExternalDataset ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ingest_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("ingest_csv: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    const auto header = split_csv_line(line);
    if (header.size() != 3 || trim(header[0]) != "x" || trim(header[1]) != "y" ||
        trim(header[2]) != "z") {
      throw std::runtime_error("ingest_csv: expected header 'x,y,z', got '" + line + "'");
    }
  }

  std::vector<Point2> raw;
  std::vector<double> z;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                               std::to_string(fields.size()));
    }
    raw.push_back({parse_real(fields[0], line_no, "x"), parse_real(fields[1], line_no, "y")});
    z.push_back(parse_real(fields[2], line_no, "z"));
  }
  if (raw.size() < 10) {
    throw std::runtime_error("ingest_csv: need >= 10 rows, got " + std::to_string(raw.size()));
  }

  double min1 = std::numeric_limits<double>::infinity(), max1 = -min1;
  double min2 = min1, max2 = -min1;
  for (const auto& p : raw) {
    min1 = std::min(min1, p.s1);
    max1 = std::max(max1, p.s1);
    min2 = std::min(min2, p.s2);
    max2 = std::max(max2, p.s2);
  }
  if (!(max1 > min1) || !(max2 > min2)) {
    throw std::runtime_error("ingest_csv: degenerate coordinate spread");
  }

  ExternalDataset out;
  out.transform = {min1, max1 - min1, min2, max2 - min2};
  out.samples.scenario = ScenarioTag::kExternal;
  out.samples.locations.reserve(raw.size());
  for (const auto& p : raw) out.samples.locations.push_back(out.transform.to_unit(p));
  out.samples.z = Eigen::Map<const Eigen::VectorXd>(z.data(), static_cast<Eigen::Index>(z.size()));
  return out;
}

void emit_surface(const PredictionSurface& surface, const std::string& dir,
                  const std::string& tag, const AffineRescale& back) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/surface_" + tag + ".csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_surface: cannot write " + path);
  out << "x,y,mean,lower,upper\n";
  for (int g = 0; g < surface.grid.size(); ++g) {
    const Point2 p = back.from_unit(surface.grid.centers[static_cast<std::size_t>(g)]);
    out << format_sig6(p.s1) << ',' << format_sig6(p.s2) << ',' << format_sig6(surface.mean[g])
        << ',' << format_sig6(surface.lower[g]) << ',' << format_sig6(surface.upper[g]) << '\n';
  }
}

void write_samples_csv(const SampleSet& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_samples_csv: cannot write " + path);
  const bool with_p = samples.p_true.has_value();
  out << (with_p ? "x,y,z,p_true\n" : "x,y,z\n");
  for (int i = 0; i < samples.size(); ++i) {
    out << format_sig6(samples.locations[static_cast<std::size_t>(i)].s1) << ','
        << format_sig6(samples.locations[static_cast<std::size_t>(i)].s2) << ','
        << format_sig6(samples.z[i]);
    if (with_p) out << ',' << format_sig6((*samples.p_true)[i]);
    out << '\n';
  }
}

void write_truth_csv(const TruthSurface& truth, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_truth_csv: cannot write " + path);
  out << "x,y,value\n";
  for (int g = 0; g < truth.grid.size(); ++g) {
    out << format_sig6(truth.grid.centers[static_cast<std::size_t>(g)].s1) << ','
        << format_sig6(truth.grid.centers[static_cast<std::size_t>(g)].s2) << ','
        << format_sig6(truth.values[g]) << '\n';
  }
}

}  // namespace prefsamp
