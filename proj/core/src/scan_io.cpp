#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wgcasimir/sweep.hpp"

namespace wgcasimir::sweep {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

double parse_number(const std::string& token, const std::string& column) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw std::invalid_argument("bad number '" + token + "' in column " + column);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

json axis_meta(const AxisInfo& a) {
  return {{"parameter", a.parameter}, {"label", a.label}, {"size", a.values.size()}};
}

double axis_offset(const std::string& parameter, const SystemConfig& base) {
  if (parameter == "Omega") return 2.0 * base.omega0;
  if (parameter == "omega_scan") return base.omega0;
  return 0.0;
}

json provenance_json(const Provenance& p) {
  json j{{"code_version", p.code_version},
         {"created_utc", p.created_utc},
         {"elapsed_seconds", p.elapsed_seconds},
         {"threads", p.threads},
         {"per_mode_cutoff", p.truncation.per_mode},
         {"notes", p.notes}};
  j["total_cutoff"] = p.truncation.total ? json(*p.truncation.total) : json(nullptr);
  return j;
}

Provenance provenance_from(const json& j) {
  Provenance p;
  p.code_version = j.at("code_version").get<std::string>();
  p.created_utc = j.at("created_utc").get<std::string>();
  p.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  p.threads = j.at("threads").get<unsigned>();
  p.truncation.per_mode = j.at("per_mode_cutoff").get<int>();
  if (!j.at("total_cutoff").is_null()) p.truncation.total = j.at("total_cutoff").get<int>();
  p.notes = j.at("notes").get<std::vector<std::string>>();
  return p;
}

json matrix_json(const RMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(std::isnan(m(i, j)) ? json(nullptr) : json(m(i, j)));
  return data;
}

RMatrix matrix_from(const json& data, Eigen::Index n1, Eigen::Index n2) {
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != n1 * n2)
    throw std::invalid_argument("array size does not match the axes");
  RMatrix m(n1, n2);
  for (Eigen::Index k = 0; k < n1 * n2; ++k) {
    const auto& v = data[static_cast<std::size_t>(k)];
    m(k / n2, k % n2) = v.is_null() ? kNaN : v.get<double>();
  }
  return m;
}

AxisInfo axis_from(const json& meta, const std::vector<double>& reported, const SystemConfig& base) {
  AxisInfo a;
  a.parameter = meta.at("parameter").get<std::string>();
  a.label = meta.at("label").get<std::string>();
  a.reported = reported;
  a.values = reported;
  const double offset = axis_offset(a.parameter, base);
  for (double& v : a.values) v += offset;
  return a;
}

}  // namespace

std::string to_csv(const ScanResult& r) {
  std::ostringstream out;
  const json axes{{"axis1", axis_meta(r.axis1)}, {"axis2", axis_meta(r.axis2)}};
  out << "# wgcasimir scan\n";
  out << "# units: " << kUnitsLine << "\n";
  out << "# config: " << json(r.base).dump() << "\n";
  out << "# axes: " << axes.dump() << "\n";
  out << "# provenance: " << provenance_json(r.provenance).dump() << "\n";

  out << r.axis1.label << "," << r.axis2.label;
  for (const auto& l : r.layers) out << "," << column_name(l.observable, l.engine);
  for (const auto& m : r.masks) out << ",mask_" << to_string(m.engine);
  for (const auto& o : r.overlays) out << ",overlay_" << o.name;
  out << "\n";

  const auto n1 = static_cast<Eigen::Index>(r.axis1.reported.size());
  const auto n2 = static_cast<Eigen::Index>(r.axis2.reported.size());
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n2; ++j) {
      out << format_number(r.axis1.reported[static_cast<std::size_t>(i)]) << ","
          << format_number(r.axis2.reported[static_cast<std::size_t>(j)]);
      for (const auto& l : r.layers) out << "," << format_number(l.values(i, j));
      for (const auto& m : r.masks) out << "," << m.flags(i, j);
      for (const auto& o : r.overlays) out << "," << format_number(o.values(i, j));
      out << "\n";
    }
  }
  return out.str();
}

ScanResult parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  json config_doc;
  json axes_doc;
  json provenance_doc;
  bool units_seen = false;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      header = split(line);
      break;
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
      const std::string prefix = "# " + key + ": ";
      if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
      return std::nullopt;
    };
    if (auto v = take("units")) units_seen = *v == kUnitsLine;
    if (auto v = take("config")) config_doc = json::parse(*v);
    if (auto v = take("axes")) axes_doc = json::parse(*v);
    if (auto v = take("provenance")) provenance_doc = json::parse(*v);
  }
  if (!units_seen) throw std::invalid_argument("CSV lacks the units header line");
  if (config_doc.is_null() || axes_doc.is_null() || provenance_doc.is_null())
    throw std::invalid_argument("CSV lacks a config, axes or provenance header line");
  if (header.size() < 2) throw std::invalid_argument("CSV lacks a column header row");

  ScanResult r;
  r.base = config_doc.get<SystemConfig>();
  r.provenance = provenance_from(provenance_doc);
  const auto& m1 = axes_doc.at("axis1");
  const auto& m2 = axes_doc.at("axis2");
  const auto n1 = static_cast<Eigen::Index>(m1.at("size").get<std::size_t>());
  const auto n2 = static_cast<Eigen::Index>(m2.at("size").get<std::size_t>());
  if (header[0] != m1.at("label").get<std::string>())
    throw std::invalid_argument("column '" + header[0] + "' does not match axis1 label");
  if (header[1] != m2.at("label").get<std::string>())
    throw std::invalid_argument("column '" + header[1] + "' does not match axis2 label");

  enum class Kind { layer, mask, overlay };
  std::vector<std::pair<Kind, std::size_t>> columns;
  for (std::size_t c = 2; c < header.size(); ++c) {
    const std::string& name = header[c];
    if (name.rfind("mask_", 0) == 0) {
      r.masks.push_back({parse_engine(name.substr(5)), Eigen::MatrixXi::Zero(n1, n2)});
      columns.emplace_back(Kind::mask, r.masks.size() - 1);
    } else if (name.rfind("overlay_", 0) == 0) {
      r.overlays.push_back({name.substr(8), RMatrix::Constant(n1, n2, kNaN)});
      columns.emplace_back(Kind::overlay, r.overlays.size() - 1);
    } else {
      const auto cut = name.rfind('_');
      if (cut == std::string::npos) throw std::invalid_argument("unknown column: " + name);
      Observable o;
      Engine e;
      try {
        o = parse_observable(name.substr(0, cut));
        e = parse_engine(name.substr(cut + 1));
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("unknown column: " + name);
      }
      r.layers.push_back({o, e, RMatrix::Constant(n1, n2, kNaN)});
      columns.emplace_back(Kind::layer, r.layers.size() - 1);
    }
  }

  std::vector<double> reported1(static_cast<std::size_t>(n1));
  std::vector<double> reported2(static_cast<std::size_t>(n2));
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("row " + std::to_string(row) + " has " + std::to_string(cells.size()) + " cells");
    if (row >= n1 * n2) throw std::invalid_argument("more data rows than the axes allow");
    const Eigen::Index i = row / n2;
    const Eigen::Index j = row % n2;
    reported1[static_cast<std::size_t>(i)] = parse_number(cells[0], header[0]);
    reported2[static_cast<std::size_t>(j)] = parse_number(cells[1], header[1]);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& [kind, idx] = columns[c];
      const double v = parse_number(cells[c + 2], header[c + 2]);
      switch (kind) {
        case Kind::layer: r.layers[idx].values(i, j) = v; break;
        case Kind::mask: r.masks[idx].flags(i, j) = static_cast<int>(v); break;
        case Kind::overlay: r.overlays[idx].values(i, j) = v; break;
      }
    }
    ++row;
  }
  if (row != n1 * n2) throw std::invalid_argument("CSV has fewer data rows than the axes require");
  r.axis1 = axis_from(m1, reported1, r.base);
  r.axis2 = axis_from(m2, reported2, r.base);
  return r;
}

json to_json(const ScanResult& r) {
  json doc;
  doc["units"] = kUnitsLine;
  doc["config"] = r.base;
  auto axis = [](const AxisInfo& a) {
    return json{{"parameter", a.parameter}, {"label", a.label}, {"values", a.reported}, {"absolute", a.values}};
  };
  doc["axes"] = {axis(r.axis1), axis(r.axis2)};
  doc["shape"] = {r.axis1.values.size(), r.axis2.values.size()};
  json layers = json::array();
  for (const auto& l : r.layers)
    layers.push_back({{"observable", to_string(l.observable)},
                      {"engine", to_string(l.engine)},
                      {"column", column_name(l.observable, l.engine)},
                      {"data", matrix_json(l.values)}});
  doc["arrays"] = layers;
  json masks = json::array();
  for (const auto& m : r.masks) masks.push_back({{"engine", to_string(m.engine)}, {"data", matrix_json(m.flags.cast<double>())}});
  doc["mask"] = masks;
  json overlays = json::array();
  for (const auto& o : r.overlays) overlays.push_back({{"name", o.name}, {"data", matrix_json(o.values)}});
  doc["overlays"] = overlays;
  doc["provenance"] = provenance_json(r.provenance);
  return doc;
}

ScanResult from_json(const json& doc) {
  ScanResult r;
  r.base = doc.at("config").get<SystemConfig>();
  const auto& axes = doc.at("axes");
  if (!axes.is_array() || axes.size() != 2) throw std::invalid_argument("JSON result needs two axes");
  r.axis1 = axis_from(axes[0], axes[0].at("values").get<std::vector<double>>(), r.base);
  r.axis2 = axis_from(axes[1], axes[1].at("values").get<std::vector<double>>(), r.base);
  const auto n1 = static_cast<Eigen::Index>(r.axis1.values.size());
  const auto n2 = static_cast<Eigen::Index>(r.axis2.values.size());
  for (const auto& l : doc.at("arrays"))
    r.layers.push_back({parse_observable(l.at("observable").get<std::string>()),
                        parse_engine(l.at("engine").get<std::string>()), matrix_from(l.at("data"), n1, n2)});
  for (const auto& m : doc.at("mask"))
    r.masks.push_back({parse_engine(m.at("engine").get<std::string>()), matrix_from(m.at("data"), n1, n2).cast<int>()});
  for (const auto& o : doc.at("overlays"))
    r.overlays.push_back({o.at("name").get<std::string>(), matrix_from(o.at("data"), n1, n2)});
  r.provenance = provenance_from(doc.at("provenance"));
  return r;
}

void write_result(const ScanResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const bool as_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (as_json) {
    out << to_json(result).dump(2) << "\n";
  } else {
    out << to_csv(result);
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace wgcasimir::sweep
