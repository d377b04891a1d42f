#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ppm_util.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("oblique_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out_path = scratch_dir() / "stdout.bin";
  const fs::path err_path = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(OBLIQUE_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return {status, ppm_util::slurp(out_path.string()),
          ppm_util::slurp(err_path.string())};
}

std::vector<std::vector<std::string>> parse_tsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, '\t')) {
      fields.push_back(field);
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("render writes a valid PPM and a one-line summary") {
  const fs::path out = scratch_dir() / "plot.ppm";
  const auto r = run_cli(
      "render --expr 'sin(x+y)' --domain -3.14:3.14:-3.14:3.14 "
      "--grid 300x300 --size 640x480 --theta 0.785398 --out " +
      out.string());
  CHECK(r.status == 0);
  const auto img = ppm_util::read_bytes(ppm_util::slurp(out.string()));
  CHECK(img.width == 640);
  CHECK(img.height == 480);
  CHECK(r.err.find("plotted") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("render can stream the image to stdout") {
  const auto r = run_cli("render --expr 'sin(x+y)' --grid 40x40 --out -");
  CHECK(r.status == 0);
  const auto img = ppm_util::read_bytes(r.out);
  CHECK(img.width == 640);
  CHECK(img.height == 480);
}

TEST_CASE("render runs are byte-identical") {
  const fs::path a = scratch_dir() / "a.ppm";
  const fs::path b = scratch_dir() / "b.ppm";
  const std::string flags =
      "render --expr 'sin((x-y)/a)*cos((x+y)/b)' --param a=2 --param b=3 "
      "--rotate z:0.4 --grid 120x120 --out ";
  CHECK(run_cli(flags + a.string()).status == 0);
  CHECK(run_cli(flags + b.string()).status == 0);
  CHECK(ppm_util::slurp(a.string()) == ppm_util::slurp(b.string()));
}

TEST_CASE("expression parse failures exit with status 3") {
  const auto r = run_cli("render --expr 'sin((' --out " +
                         (scratch_dir() / "x.ppm").string());
  CHECK(r.status == 3);
  CHECK(r.err.find("offset") != std::string::npos);
}

TEST_CASE("flag validation wins over expression validation") {
  const auto r = run_cli("render --expr 'sin((' --rotate w:1 --out f");
  CHECK(r.status == 2);
}

TEST_CASE("bad flags exit with status 2") {
  CHECK(run_cli("render --out foo.ppm").status == 2);          // no --expr
  CHECK(run_cli("render --expr x --no-such-flag --out f").status == 2);
  CHECK(run_cli("frobnicate").status == 2);
  CHECK(run_cli("render --expr x --domain 1:0:0:1 --out f").status == 2);
  CHECK(run_cli("render --expr x --grid 1x9 --out f").status == 2);
  CHECK(run_cli("render --expr x --size 0x9 --out f").status == 2);
  CHECK(run_cli("render --expr x --rho-z 0 --out f").status == 2);
  CHECK(run_cli("render --expr x --rho-z 1.5 --out f").status == 2);
  CHECK(run_cli("render --expr x --scale 0 --out f").status == 2);
  CHECK(run_cli("render --expr x --origin nowhere --out f").status == 2);
  CHECK(run_cli("render --expr x --origin inf,0 --out f").status == 2);
  CHECK(run_cli("render --expr x --scale inf --out f").status == 2);
  CHECK(run_cli("render --expr x --rotate w:0.5 --out f").status == 2);
  CHECK(run_cli("render --expr x --rotate z0.5 --out f").status == 2);
}

TEST_CASE("an explicit origin pair is accepted") {
  const fs::path out = scratch_dir() / "origin.ppm";
  const auto r = run_cli(
      "render --expr 'sin(x+y)' --grid 24x24 --origin 100,200 --out " +
      out.string());
  CHECK(r.status == 0);
}

TEST_CASE("theta is validated against the open interval") {
  CHECK(run_cli("roundtrip --samples 100 --theta 1.5707").status == 0);
  CHECK(run_cli("roundtrip --samples 100 --theta 1.5708").status == 2);
  CHECK(run_cli("roundtrip --samples 100 --theta 0").status == 2);
  // 90deg converts to pi/2 and is rejected, proving the suffix works
  CHECK(run_cli("roundtrip --samples 100 --theta 90deg").status == 2);
  CHECK(run_cli("roundtrip --samples 100 --theta 45deg").status == 0);
}

TEST_CASE("missing parameter bindings are reported as bad arguments") {
  const std::string out = (scratch_dir() / "x.ppm").string();
  const auto r =
      run_cli("render --expr 'sin((x-y)/a)*cos((x+y)/b)' --out " + out);
  CHECK(r.status == 2);
  CHECK(r.err.find("a, b") != std::string::npos);
  CHECK(run_cli("render --expr 'sin((x-y)/a)*cos((x+y)/b)' --param a=2 "
                "--param b=3 --grid 24x24 --out " +
                out)
            .status == 0);
}

TEST_CASE("unwritable output paths exit with status 5") {
  const auto r = run_cli(
      "render --expr 'sin(x+y)' --grid 24x24 "
      "--out /nonexistent-dir/plot.ppm");
  CHECK(r.status == 5);
}

TEST_CASE("custom colormaps are parsed and validated") {
  const std::string out = (scratch_dir() / "cm.ppm").string();
  CHECK(run_cli("render --expr 'sin(x+y)' --grid 24x24 "
                "--colormap 0:000000,1:ffffff --out " +
                out)
            .status == 0);
  CHECK(run_cli("render --expr x --colormap 0:00,1:ffffff --out " + out)
            .status == 2);
  CHECK(run_cli("render --expr x --colormap 0.2:000000,1:ffffff --out " + out)
            .status == 2);
}

TEST_CASE("roundtrip reports a tiny max error and honors the seed") {
  const auto r = run_cli("roundtrip --samples 10000 --seed 42");
  CHECK(r.status == 0);
  CHECK(r.out.find("max_abs_error=") != std::string::npos);
  const auto again = run_cli("roundtrip --samples 10000 --seed 42");
  CHECK(again.out == r.out);
}

TEST_CASE("roundtrip rejects a zero sample count") {
  CHECK(run_cli("roundtrip --samples 0").status == 2);
}

TEST_CASE("bench emits a TSV with the multiplication ledger") {
  const auto r = run_cli("bench --samples 20000 --power 5 --seed 7");
  CHECK(r.status == 0);
  const auto rows = parse_tsv(r.out);
  REQUIRE(rows.size() == 1 + 3 * 5);
  CHECK(rows[0][0] == "strategy");
  REQUIRE(rows[0].size() == 8);

  // strategy, power, points, mm, pm, diff, wall, throughput
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 8);
    CHECK(std::stod(rows[i][5]) < 1e-9);
  }
  const auto find_row = [&](const std::string& strategy, const std::string& power) {
    for (const auto& row : rows) {
      if (row[0] == strategy && row[1] == power) {
        return row;
      }
    }
    FAIL("row not found: " + strategy + " power " + power);
    return rows[0];
  };
  CHECK(find_row("precomposed", "1")[3] == "2");
  CHECK(find_row("precomposed", "5")[3] == "7");
  CHECK(find_row("incremental-power", "5")[3] == "4");
  CHECK(find_row("incremental-power", "1")[3] == "0");
  CHECK(find_row("naive-3-step", "1")[3] == "40000");
  CHECK(find_row("naive-3-step", "1")[4] == "60000");
}

TEST_CASE("bench validates sample and power counts") {
  CHECK(run_cli("bench --samples 0").status == 2);
  CHECK(run_cli("bench --power 0").status == 2);
}

TEST_CASE("help is help") {
  const auto r = run_cli("--help");
  CHECK(r.status == 0);
  CHECK(r.out.find("render") != std::string::npos);
  CHECK(r.out.find("Exit codes") != std::string::npos);
}
