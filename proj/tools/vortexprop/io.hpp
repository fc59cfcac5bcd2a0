#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace vortexprop::cli {

// 9 significant digits, fixed "%.9g" rendering for byte-stable output.
std::string format_double(double value);

using HeaderMap = std::vector<std::pair<std::string, std::string>>;

// '#'-prefixed key=value comment lines, a column header row, then data rows.
void write_grid_csv(const std::filesystem::path& path, const HeaderMap& header,
                    const std::string& u_name, const std::string& v_name,
                    const std::string& value_name, const Eigen::VectorXd& u_values,
                    const Eigen::VectorXd& v_values, const Eigen::MatrixXd& values);

void write_grid_json(const std::filesystem::path& path, const HeaderMap& header,
                     const std::string& u_name, const std::string& v_name,
                     const std::string& value_name, const Eigen::VectorXd& u_values,
                     const Eigen::VectorXd& v_values, const Eigen::MatrixXd& values);

void write_series_csv(const std::filesystem::path& path, const HeaderMap& header,
                      const std::string& x_name, const std::string& y_name,
                      const std::vector<double>& x, const std::vector<double>& y);

void write_series_json(const std::filesystem::path& path, const HeaderMap& header,
                       const std::string& x_name, const std::string& y_name,
                       const std::vector<double>& x, const std::vector<double>& y);

void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

}  // namespace vortexprop::cli
