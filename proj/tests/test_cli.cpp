// End-to-end checks of the memeflow binary; the path arrives via MEMEFLOW_BIN.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "memeflow/dynamics.hpp"
#include "memeflow/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary() {
  const char* bin = std::getenv("MEMEFLOW_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "MEMEFLOW_BIN must point at the CLI binary");
  return std::string("\"") + bin + "\"";
}

fs::path tmp_dir() {
  const fs::path dir = fs::current_path() / "cli_test_tmp";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const int status = std::system((binary() + " " + args).c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

}  // namespace

TEST_CASE("simulate writes the documented trajectory") {
  const auto out = tmp_dir() / "traj.csv";
  CHECK(run("simulate --A 1 --deltaE 1 --y0 0.01 --t-end 20 --step 0.01 --output " +
            out.string()) == 0);

  const memeflow::TimeSeries series = memeflow::io::read_timeseries_csv(out.string());
  CHECK(series.size() == 2001);
  CHECK(std::abs(series.samples.back().y - 1.0) < 1e-6);
}

TEST_CASE("simulate with zero affinity stays at y0") {
  const auto out = tmp_dir() / "flat.csv";
  CHECK(run("simulate --A 0 --deltaE 1 --y0 0.25 --t-end 2 --step 0.1 --output " +
            out.string()) == 0);
  for (const auto& s : memeflow::io::read_timeseries_csv(out.string()).samples)
    CHECK(s.y == 0.25);
}

TEST_CASE("seeded noisy runs are byte-identical") {
  const auto a = tmp_dir() / "noise_a.csv";
  const auto b = tmp_dir() / "noise_b.csv";
  const std::string args =
      "simulate --A 1 --deltaE 1 --y0 0.01 --t-end 10 --step 0.05 --noise 0.05 --seed 7 "
      "--output ";
  CHECK(run(args + a.string()) == 0);
  CHECK(run(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != "");
}

TEST_CASE("simulate -> fit round trip recovers the parameters") {
  const auto traj = tmp_dir() / "fit_input.csv";
  const auto report_path = tmp_dir() / "fit_report.json";
  REQUIRE(run("simulate --A 1 --deltaE 1 --y0 0.01 --t-end 20 --step 0.01 --output " +
              traj.string()) == 0);
  CHECK(run("fit --input " + traj.string() + " --output " + report_path.string()) == 0);

  const json report = json::parse(slurp(report_path));
  CHECK(report.at("model") == "logistic");
  CHECK(report.at("converged") == true);
  CHECK(std::abs(report.at("params").at("affinity").get<double>() - 1.0) < 1e-4);
  CHECK(std::abs(report.at("params").at("delta_e").get<double>() - 1.0) < 1e-4);
}

TEST_CASE("fit error paths map to the documented exit codes") {
  const auto empty = tmp_dir() / "empty.csv";
  spit(empty, "");
  CHECK(run("fit --input " + empty.string() + " 2>/dev/null") == 5);

  const auto constant = tmp_dir() / "constant.csv";
  spit(constant, "t,y\n0,2\n1,2\n2,2\n3,2\n4,2\n5,2\n");
  CHECK(run("fit --input " + constant.string() + " 2>/dev/null") == 4);

  CHECK(run("fit --input " + (tmp_dir() / "missing.csv").string() + " 2>/dev/null") == 1);
}

TEST_CASE("detect exit codes distinguish the verdicts") {
  const auto logi = tmp_dir() / "detect_logistic.csv";
  REQUIRE(run("simulate --A 1 --deltaE 1 --y0 0.01 --t-end 20 --step 0.1 --output " +
              logi.string()) == 0);
  CHECK(run("detect --input " + logi.string() + " > /dev/null") == 0);

  const auto expo = tmp_dir() / "detect_exponential.csv";
  {
    memeflow::TimeSeries series;
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.1 * i;
      series.samples.push_back({t, memeflow::exponential_solution(t, 0.5, 0.1)});
    }
    std::ofstream out(expo);
    memeflow::io::write_timeseries_csv(out, series);
  }
  CHECK(run("detect --input " + expo.string() + " > /dev/null") == 2);

  const auto shorty = tmp_dir() / "detect_short.csv";
  spit(shorty, "t,y\n0,1\n1,2\n2,4\n3,8\n");
  CHECK(run("detect --input " + shorty.string() + " > /dev/null") == 3);
}

TEST_CASE("compete produces decoupled identical columns under identity coupling") {
  const auto system = tmp_dir() / "identity.json";
  spit(system, R"({"affinities":[1,1],"delta_es":[1,1],"alpha":[[1,0],[0,1]]})");
  const auto wide = tmp_dir() / "wide.csv";
  CHECK(run("compete --system " + system.string() + " --y0 0.1,0.1 --t-end 5 --step 0.1 "
            "--output " + wide.string()) == 0);

  std::ifstream in(wide);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,y1,y2");
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find(','), second = line.rfind(',');
    REQUIRE(first != second);
    CHECK(line.substr(first + 1, second - first - 1) == line.substr(second + 1));
  }
}

TEST_CASE("compete --equilibrium reports none for a singular matrix, exit 0") {
  const auto system = tmp_dir() / "singular.json";
  spit(system, R"({"affinities":[1,1],"delta_es":[1,1],"alpha":[[1,1],[1,1]]})");
  const auto traj = tmp_dir() / "singular.csv";
  const auto captured = tmp_dir() / "equilibrium.txt";
  CHECK(run("compete --system " + system.string() + " --y0 0.1,0.1 --t-end 1 --step 0.1 "
            "--equilibrium --output " + traj.string() + " > " + captured.string() +
            " 2>/dev/null") == 0);
  CHECK(slurp(captured) == "none\n");
}

TEST_CASE("compete --equilibrium prints the interior point when it exists") {
  const auto system = tmp_dir() / "weak.json";
  spit(system, R"({"affinities":[1,1],"delta_es":[1,1],"alpha":[[1,0.5],[0.5,1]]})");
  const auto traj = tmp_dir() / "weak.csv";
  const auto captured = tmp_dir() / "weak_eq.txt";
  CHECK(run("compete --system " + system.string() + " --y0 0.1,0.1 --t-end 1 --step 0.1 "
            "--equilibrium --output " + traj.string() + " > " + captured.string()) == 0);
  const json eq = json::parse(slurp(captured));
  CHECK(std::abs(eq.at("equilibrium")[0].get<double>() - 2.0 / 3.0) < 1e-10);
  CHECK(eq.at("linearly_stable") == true);
}

TEST_CASE("energy subcommand evaluates a constituent file") {
  const auto input = tmp_dir() / "constituents.csv";
  spit(input,
       "id,dof_index,energy\na,0,1\na,1,1\na,2,1\na,3,1\nb,0,1\nb,1,1\nb,2,1\nb,3,1\n");
  const auto out = tmp_dir() / "energy.json";
  CHECK(run("energy --input " + input.string() + " --output " + out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("activation_energy") == 8.0);

  const auto bad = tmp_dir() / "bad_constituents.csv";
  spit(bad, "id,dof_index,energy\na,0,-1\n");
  CHECK(run("energy --input " + bad.string() + " 2>/dev/null") == 1);
}

TEST_CASE("features subcommand labels columns") {
  const auto input = tmp_dir() / "dataset.csv";
  std::ostringstream body;
  body << "flat,ramp\n";
  for (int i = 0; i < 512; ++i) body << "3.5," << (i % 97) * 1.0 + 0.01 * i << "\n";
  spit(input, body.str());

  const auto out = tmp_dir() / "features.json";
  CHECK(run("features --input " + input.string() + " --bins 16 --low 0.05 --high 0.99 "
            "--output " + out.string()) == 0);
  const json scores = json::parse(slurp(out));
  REQUIRE(scores.size() == 2);
  CHECK(scores[0].at("name") == "flat");
  CHECK(scores[0].at("label") == "Redundant");
  CHECK(scores[1].at("entropy_bits").get<double>() > 0.0);

  const auto csv_out = tmp_dir() / "features.csv";
  CHECK(run("features --input " + input.string() + " --format csv --output " +
            csv_out.string()) == 0);
  CHECK(slurp(csv_out).rfind("name,entropy_bits,normalized,label\n", 0) == 0);
}

TEST_CASE("config file feeds simulate, flags still win") {
  const auto cfg = tmp_dir() / "sim.cfg";
  spit(cfg, "A=1\ndeltaE=1\ny0=0.01\nt_end=5\nstep=0.1\n");
  const auto from_cfg = tmp_dir() / "from_cfg.csv";
  CHECK(run("simulate --config " + cfg.string() + " --output " + from_cfg.string()) == 0);
  const auto series = memeflow::io::read_timeseries_csv(from_cfg.string());
  CHECK(series.samples.back().t == doctest::Approx(5.0));

  const auto overridden = tmp_dir() / "overridden.csv";
  CHECK(run("simulate --config " + cfg.string() + " --t-end 2 --output " +
            overridden.string()) == 0);
  CHECK(memeflow::io::read_timeseries_csv(overridden.string()).samples.back().t ==
        doctest::Approx(2.0));
}

TEST_CASE("noise seed can come from the config file") {
  const auto cfg = tmp_dir() / "seeded.cfg";
  spit(cfg, "A=1\ndeltaE=1\ny0=0.01\nt_end=5\nstep=0.1\nnoise=0.05\nseed=7\n");
  const auto from_cfg = tmp_dir() / "seeded_cfg.csv";
  const auto from_flag = tmp_dir() / "seeded_flag.csv";
  CHECK(run("simulate --config " + cfg.string() + " --output " + from_cfg.string()) == 0);
  CHECK(run("simulate --A 1 --deltaE 1 --y0 0.01 --t-end 5 --step 0.1 --noise 0.05 "
            "--seed 7 --output " + from_flag.string()) == 0);
  CHECK(slurp(from_cfg) == slurp(from_flag));
}

TEST_CASE("stage specs drive a chained run") {
  const auto out = tmp_dir() / "stages.csv";
  CHECK(run("simulate --stage 1,1,0.99 --stage 1,1,0.99 --step 0.01 --output " +
            out.string()) == 0);
  const auto series = memeflow::io::read_timeseries_csv(out.string());
  CHECK(std::abs(series.samples.back().y - 1.99) < 1e-6);
}

TEST_CASE("out-of-range applied energy warns on stderr") {
  const auto err = tmp_dir() / "warning.txt";
  CHECK(run("simulate --A 1 --deltaE 1 --t-end 1 --step 0.1 --applied-energy 50 "
            "--valid-lo 0 --valid-hi 10 --output /dev/null 2> " + err.string()) == 0);
  CHECK(slurp(err).find("warning") != std::string::npos);
}
