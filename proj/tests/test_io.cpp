#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vopt/battery.hpp"
#include "vopt/io.hpp"

using Eigen::MatrixXd;
using std::numbers::pi;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vopt_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

vopt::DesignSetd parse(const std::string& text, vopt::DatasetSpec spec = {}) {
  std::istringstream in(text);
  return vopt::parse_dataset(in, spec);
}

std::string error_of(const std::string& text, vopt::DatasetSpec spec = {}) {
  try {
    parse(text, spec);
  } catch (const vopt::DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("cone JSON round trip") {
  const auto dir = scratch_dir("cone");
  MatrixXd W(3, 3);
  W << 1, 0.2, 0, 0, 1, 0.3, 0.1, 0, 2;
  for (const auto& cone : {vopt::make_theta_cone(pi / 5), vopt::make_orthant(4), vopt::PolyhedralCone<>(W)}) {
    vopt::save_cone_file(cone, dir / "c.json");
    const auto back = vopt::load_cone_file(dir / "c.json");
    REQUIRE(back.W().rows() == cone.W().rows());
    CHECK((back.W() - cone.W()).cwiseAbs().maxCoeff() <= 1e-15);
  }
  const auto named = vopt::parse_cone_spec((dir / "c.json").string());
  CHECK(named.cone.dim() == 3);
  CHECK_FALSE(named.cone.family().has_value());
}

TEST_CASE("cone JSON validation") {
  using nlohmann::json;
  CHECK_THROWS_AS(vopt::cone_from_json(json::array()), vopt::DataError);
  CHECK_THROWS_AS(vopt::cone_from_json(json{{"dim", 2}, {"rows", {{1, 0}, {0}}}}), vopt::DataError);
  CHECK_THROWS_AS(vopt::cone_from_json(json{{"dim", 0}, {"rows", {{1}}}}), vopt::DataError);
  CHECK_THROWS_AS(vopt::cone_from_json(json{{"dim", 2}, {"rows", {{1, 0}, {0, "x"}}}}), vopt::DataError);
  CHECK_THROWS_AS(vopt::cone_from_json(json{{"dim", 2}, {"rows", {{1, 0}, {0, 0}}}}), vopt::DataError);
  // nlohmann stores NaN as a float and dumps it as null
  CHECK_THROWS_AS(vopt::cone_from_json(json{{"dim", 2}, {"rows", {{1, 0}, {0, std::nan("")}}}}), vopt::DataError);
  const auto dir = scratch_dir("badcone");
  std::ofstream(dir / "bad.json") << "{\"dim\": 2, \"rows\": [[1, 0], [0, NaN]]}";
  CHECK_THROWS_AS(vopt::load_cone_file(dir / "bad.json"), vopt::DataError);
  CHECK_THROWS_AS(vopt::load_cone_file(dir / "missing.json"), vopt::DataError);
  const auto scaled = vopt::cone_from_json(json{{"dim", 2}, {"rows", {{2, 0}, {0, 5}}}});
  CHECK(scaled.W().isApprox(MatrixXd::Identity(2, 2)));
}

TEST_CASE("cone specs") {
  CHECK(vopt::parse_cone_spec("orthant:3").cone.dim() == 3);
  const auto t = vopt::parse_cone_spec("theta:0.785398163");
  CHECK(t.id == "theta:0.785398163");
  CHECK(std::holds_alternative<vopt::Theta2D>(*t.cone.family()));
  CHECK_THROWS_AS(vopt::parse_cone_spec("orthant:2.5"), vopt::InvalidArgument);
  CHECK_THROWS_AS(vopt::parse_cone_spec("theta:abc"), vopt::InvalidArgument);
  CHECK_THROWS_AS(vopt::parse_cone_spec("theta:4"), vopt::InvalidArgument);
  CHECK_THROWS_AS(vopt::parse_cone_spec("no/such/file.json"), vopt::DataError);
}

TEST_CASE("dataset loading") {
  vopt::DatasetSpec spec;
  spec.negate_columns = {"area"};
  const auto d = parse("area,throughput\n1,10\n2,20\n3.5,5\n", spec);
  CHECK(d.size() == 3);
  CHECK(d.dim() == 2);
  CHECK(d.means(2, 0) == -3.5);
  CHECK(d.means(2, 1) == 5.0);
  CHECK(d.labels == std::vector<std::string>{"0", "1", "2"});

  vopt::DatasetSpec with_id;
  with_id.id_column = "name";
  with_id.objective_columns = {"b"};
  const auto e = parse("name,a,b\n\"x, y\",1,2\nz , 3 , 4\r\n\n", with_id);
  CHECK(e.dim() == 1);
  CHECK(e.labels == std::vector<std::string>{"x, y", "z"});
  CHECK(e.means(1, 0) == 4.0);
}

TEST_CASE("dataset errors name the location") {
  CHECK(error_of("").find("empty") != std::string::npos);
  CHECK(error_of("a,b\n").find("no data rows") != std::string::npos);
  CHECK(error_of("a,b\n1,2\n3\n").find("row 3") != std::string::npos);
  const auto msg = error_of("a,b\n1,2\n3,oops\n");
  CHECK(msg.find("row 3") != std::string::npos);
  CHECK(msg.find("'b'") != std::string::npos);
  CHECK(error_of("a,b\n1,nan\n").find("row 2") != std::string::npos);
  vopt::DatasetSpec missing;
  missing.objective_columns = {"c"};
  CHECK(error_of("a,b\n1,2\n", missing).find("'c'") != std::string::npos);
  vopt::DatasetSpec stray;
  stray.objective_columns = {"a"};
  stray.negate_columns = {"b"};
  CHECK(error_of("a,b\n1,2\n", stray).find("not an objective") != std::string::npos);
  CHECK_THROWS_AS(vopt::load_dataset({"/no/such/file.csv", {}, {}, std::nullopt}), vopt::DataError);
}

TEST_CASE("number formatting") {
  CHECK(vopt::format_number(-0.0) == "0");
  CHECK(vopt::format_number(0.1) == "0.1");
  CHECK(vopt::format_number(1.0 / 3) == "0.3333333333");
  CHECK(vopt::format_number(38800) == "38800");
}

TEST_CASE("gap table writers") {
  MatrixXd m(2, 2);
  m << 0, 0, 1, 1;
  const auto t = vopt::build_gap_table(vopt::DesignSetd(m), vopt::make_orthant(2));
  std::ostringstream pairwise, designs, stats;
  vopt::write_pairwise_csv(pairwise, t);
  CHECK(pairwise.str() == "i,j,m,M,theta,class\n0,1,1,0,1,strong\n1,0,0,1.414213562,1,none\n");
  vopt::write_design_csv(designs, t);
  CHECK(designs.str() == "i,delta_star,is_pareto\n0,1,0\n1,0,1\n");
  vopt::write_gap_statistics_csv(stats, vopt::gap_statistics(t));
  CHECK(stats.str() == "count,mean,std,min,max\n1,1,,1,1\n");
}

TEST_CASE("battery config parsing") {
  using nlohmann::json;
  auto cfg = vopt::battery_config_from_json(json::parse(
      R"({"epsilon": [0.01, 0.1], "delta": 0.05, "L": [100, "auto"], "c": 2, "sigma": 0.5,
          "runs": 7, "seed": 42, "noise_kind": "uniform", "half_width": 1.5, "threads": 2})"));
  CHECK(cfg.epsilons == std::vector<double>{0.01, 0.1});
  CHECK(cfg.delta == 0.05);
  REQUIRE(cfg.budgets.size() == 2);
  CHECK(*cfg.budgets[0] == 100);
  CHECK_FALSE(cfg.budgets[1].has_value());
  CHECK(cfg.c == 2.0);
  CHECK(cfg.sigma == 0.5);
  CHECK(cfg.runs == 7);
  CHECK(cfg.seed == 42);
  CHECK(cfg.noise.kind == vopt::NoiseKind::BoundedUniform);
  CHECK(cfg.noise.scale == 1.5);
  CHECK(cfg.threads == 2);

  cfg = vopt::battery_config_from_json(json::parse(R"({"epsilon": 0.2, "L": 10, "sigma": 0})"));
  CHECK(cfg.epsilons == std::vector<double>{0.2});
  CHECK(*cfg.budgets[0] == 10);
  CHECK(cfg.noise.kind == vopt::NoiseKind::GaussianIID);
  CHECK(cfg.noise.scale == 0.0);

  for (const char* bad : {R"([])", R"({"epsilon": -1})", R"({"epsilon": []})", R"({"delta": 1.5})",
                          R"({"L": 0})", R"({"L": "lots"})", R"({"L": 1.5})", R"({"runs": 0})",
                          R"({"sigma": -1})", R"({"noise_kind": "cauchy"})", R"({"half_width": 1})",
                          R"({"seed": "x"})", R"({"colour": 1})"}) {
    INFO(bad);
    CHECK_THROWS_AS(vopt::battery_config_from_json(json::parse(bad)), vopt::InvalidArgument);
  }
}
