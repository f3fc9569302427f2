#include "vopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vopt {

PolyhedralCone<double> cone_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
    throw DataError("cone JSON: expected an object with \"dim\" and \"rows\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) {
    throw DataError("cone JSON: \"dim\" must be a positive integer");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  const auto& rows = j["rows"];
  if (!rows.is_array() || rows.empty()) throw DataError("cone JSON: \"rows\" must be a nonempty array");

  Eigen::MatrixXd W(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const auto& row = rows[n];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw DataError("cone JSON: row " + std::to_string(n) + " does not have dim entries");
    }
    for (Eigen::Index d = 0; d < dim; ++d) {
      const auto& v = row[static_cast<std::size_t>(d)];
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw DataError("cone JSON: non-finite entry in row " + std::to_string(n));
      }
      W(static_cast<Eigen::Index>(n), d) = v.get<double>();
    }
  }
  try {
    return PolyhedralCone<double>(std::move(W));
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("cone JSON: ") + e.what());
  }
}

nlohmann::json cone_to_json(const PolyhedralCone<double>& cone) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index n = 0; n < cone.n_constraints(); ++n) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index d = 0; d < cone.dim(); ++d) row.push_back(cone.W()(n, d));
    rows.push_back(std::move(row));
  }
  return {{"dim", cone.dim()}, {"rows", std::move(rows)}};
}

PolyhedralCone<double> load_cone_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open cone file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cone file " + path.string() + ": " + e.what());
  }
  return cone_from_json(j);
}

void save_cone_file(const PolyhedralCone<double>& cone, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write cone file " + path.string());
  out << cone_to_json(cone).dump(2) << '\n';
}

NamedCone parse_cone_spec(const std::string& spec) {
  auto parse_number = [&](const std::string& text) {
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw InvalidArgument("bad cone spec: " + spec);
    return value;
  };
  if (spec.rfind("orthant:", 0) == 0) {
    const double dim = parse_number(spec.substr(8));
    if (dim != std::floor(dim)) throw InvalidArgument("bad cone spec: " + spec);
    return {spec, make_orthant(static_cast<Eigen::Index>(dim))};
  }
  if (spec.rfind("theta:", 0) == 0) {
    return {spec, make_theta_cone(parse_number(spec.substr(6)))};
  }
  return {spec, load_cone_file(spec)};
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cell += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

}  // namespace

DesignSetd parse_dataset(std::istream& in, const DatasetSpec& spec) {
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) throw DataError("dataset: empty file");
  const auto header = split_csv_line(line);

  auto column_index = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("dataset: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  std::optional<std::size_t> id_col;
  if (spec.id_column) id_col = column_index(*spec.id_column);

  std::vector<std::string> objectives = spec.objective_columns;
  if (objectives.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (!id_col || c != *id_col) objectives.push_back(header[c]);
    }
  }
  if (objectives.empty()) throw DataError("dataset: no objective columns");
  std::vector<std::size_t> obj_cols;
  std::vector<double> signs;
  for (const auto& name : objectives) {
    obj_cols.push_back(column_index(name));
    const bool negate = std::find(spec.negate_columns.begin(), spec.negate_columns.end(), name) !=
                        spec.negate_columns.end();
    signs.push_back(negate ? -1.0 : 1.0);
  }
  for (const auto& name : spec.negate_columns) {
    if (std::find(objectives.begin(), objectives.end(), name) == objectives.end()) {
      throw DataError("dataset: negated column '" + name + "' is not an objective column");
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  long row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw DataError("dataset: row " + std::to_string(row_number) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    }
    std::vector<double> values;
    for (std::size_t k = 0; k < obj_cols.size(); ++k) {
      const auto& text = cells[obj_cols[k]];
      std::size_t used = 0;
      double value = 0;
      try {
        value = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (text.empty() || used != text.size() || !std::isfinite(value)) {
        throw DataError("dataset: row " + std::to_string(row_number) + ", column '" +
                        header[obj_cols[k]] + "': not a finite number: '" + text + "'");
      }
      values.push_back(signs[k] * value);
    }
    rows.push_back(std::move(values));
    labels.push_back(id_col ? cells[*id_col] : std::to_string(rows.size() - 1));
  }
  if (rows.empty()) throw DataError("dataset: no data rows");

  Eigen::MatrixXd means(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(obj_cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t d = 0; d < obj_cols.size(); ++d)
      means(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = rows[i][d];
  return DesignSetd(std::move(means), std::move(labels));
}

DesignSetd load_dataset(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw DataError("cannot open dataset " + spec.path.string());
  return parse_dataset(in, spec);
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

void write_pairwise_csv(std::ostream& out, const GapTable<double>& table) {
  out << "i,j,m,M,theta,class\n";
  for (Eigen::Index i = 0; i < table.K; ++i) {
    for (Eigen::Index j = 0; j < table.K; ++j) {
      if (i == j) continue;
      const auto& g = table.at(i, j);
      out << i << ',' << j << ',' << format_number(g.m) << ',' << format_number(g.M) << ','
          << format_number(g.theta) << ',' << to_string(g.classification) << '\n';
    }
  }
}

void write_design_csv(std::ostream& out, const GapTable<double>& table) {
  out << "i,delta_star,is_pareto\n";
  for (Eigen::Index i = 0; i < table.K; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out << i << ',' << format_number(table.delta_star[idx]) << ','
        << (table.pareto_mask[idx] ? 1 : 0) << '\n';
  }
}

void write_gap_statistics_csv(std::ostream& out, const GapStatistics& stats) {
  auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  out << "count,mean,std,min,max\n"
      << stats.count << ',' << cell(stats.mean) << ',' << cell(stats.std) << ','
      << cell(stats.min) << ',' << cell(stats.max) << '\n';
}

}  // namespace vopt
