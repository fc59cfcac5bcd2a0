#include "io.hpp"

#include <cstdio>
#include <fstream>

#include "vortexprop/errors.hpp"

namespace vortexprop::cli {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  return out;
}

void write_header(std::ofstream& out, const HeaderMap& header) {
  out << "# schema_version=1\n";
  for (const auto& [key, value] : header) out << "# " << key << "=" << value << "\n";
}

nlohmann::ordered_json header_to_json(const HeaderMap& header) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  meta["schema_version"] = 1;
  for (const auto& [key, value] : header) meta[key] = value;
  return meta;
}

}  // namespace

void write_grid_csv(const std::filesystem::path& path, const HeaderMap& header,
                    const std::string& u_name, const std::string& v_name,
                    const std::string& value_name, const Eigen::VectorXd& u_values,
                    const Eigen::VectorXd& v_values, const Eigen::MatrixXd& values) {
  auto out = open_out(path);
  write_header(out, header);
  out << u_name << "," << v_name << "," << value_name << "\n";
  for (int i = 0; i < u_values.size(); ++i)
    for (int j = 0; j < v_values.size(); ++j)
      out << format_double(u_values(i)) << "," << format_double(v_values(j)) << ","
          << format_double(values(i, j)) << "\n";
}

void write_grid_json(const std::filesystem::path& path, const HeaderMap& header,
                     const std::string& u_name, const std::string& v_name,
                     const std::string& value_name, const Eigen::VectorXd& u_values,
                     const Eigen::VectorXd& v_values, const Eigen::MatrixXd& values) {
  nlohmann::ordered_json doc;
  doc["metadata"] = header_to_json(header);
  doc["columns"] = {u_name, v_name, value_name};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < u_values.size(); ++i)
    for (int j = 0; j < v_values.size(); ++j)
      rows.push_back({u_values(i), v_values(j), values(i, j)});
  doc["data"] = std::move(rows);
  write_json_file(path, doc);
}

void write_series_csv(const std::filesystem::path& path, const HeaderMap& header,
                      const std::string& x_name, const std::string& y_name,
                      const std::vector<double>& x, const std::vector<double>& y) {
  auto out = open_out(path);
  write_header(out, header);
  out << x_name << "," << y_name << "\n";
  for (size_t i = 0; i < x.size(); ++i)
    out << format_double(x[i]) << "," << format_double(y[i]) << "\n";
}

void write_series_json(const std::filesystem::path& path, const HeaderMap& header,
                       const std::string& x_name, const std::string& y_name,
                       const std::vector<double>& x, const std::vector<double>& y) {
  nlohmann::ordered_json doc;
  doc["metadata"] = header_to_json(header);
  doc["columns"] = {x_name, y_name};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t i = 0; i < x.size(); ++i) rows.push_back({x[i], y[i]});
  doc["data"] = std::move(rows);
  write_json_file(path, doc);
}

void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

}  // namespace vortexprop::cli
