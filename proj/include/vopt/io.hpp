#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vopt/cone.hpp"
#include "vopt/evaluation.hpp"
#include "vopt/gaps.hpp"
#include "vopt/pareto.hpp"

namespace vopt {

/// A cone together with the identifier it was requested by.
struct NamedCone {
  std::string id;
  PolyhedralCone<double> cone;
};

/// {"dim": D, "rows": [[...], ...]}. Rows are normalized on load; non-finite
/// entries and ragged rows raise DataError.
PolyhedralCone<double> cone_from_json(const nlohmann::json& j);
nlohmann::json cone_to_json(const PolyhedralCone<double>& cone);
PolyhedralCone<double> load_cone_file(const std::filesystem::path& path);
void save_cone_file(const PolyhedralCone<double>& cone, const std::filesystem::path& path);

/// `orthant:D`, `theta:<radians>`, or a path to a cone JSON file.
NamedCone parse_cone_spec(const std::string& spec);

struct DatasetSpec {
  std::filesystem::path path;
  /// Empty means every column except the id column.
  std::vector<std::string> objective_columns;
  /// Columns multiplied by -1 (minimize-type objectives).
  std::vector<std::string> negate_columns;
  std::optional<std::string> id_column;
};

/// One design per CSV row. Errors name the offending row (1-based, header is
/// row 1) and column.
DesignSetd load_dataset(const DatasetSpec& spec);
DesignSetd parse_dataset(std::istream& in, const DatasetSpec& spec);

/// `%.10g` formatting shared by every CSV writer; -0 prints as 0.
std::string format_number(double value);

/// Columns: i,j,m,M,theta,class.
void write_pairwise_csv(std::ostream& out, const GapTable<double>& table);
/// Columns: i,delta_star,is_pareto.
void write_design_csv(std::ostream& out, const GapTable<double>& table);
/// Columns: count,mean,std,min,max (empty cells for undefined statistics).
void write_gap_statistics_csv(std::ostream& out, const GapStatistics& stats);

}  // namespace vopt
