// End-to-end checks of the command-line tool: exit-code contract, artifact
// handling, and the guard rails.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cubecurve-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args) {
  std::string cmd = "cd " + work_dir().string() + " && " + CUBECURVE_CLI_PATH + " " + args +
                    " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("usage errors exit 64") {
  CHECK(run_cli("pattern --depth 13") == 64);
  CHECK(run_cli("coverage --grid 244 --depth 4") == 64);
  CHECK(run_cli("generate --format stl --depth 1") == 64);
  CHECK(run_cli("nonsense") == 64);
  CHECK(run_cli("") == 64);
  CHECK(run_cli("sf --curve pentagon") == 64);
}

TEST_CASE("pattern then generate round trip") {
  CHECK(run_cli("pattern --depth 2 --out pattern.json") == 0);
  CHECK(fs::exists(work_dir() / "pattern.json"));

  CHECK(run_cli("generate --depth 1 --format obj --out curve.obj") == 0);
  std::string obj = slurp(work_dir() / "curve.obj");
  CHECK(std::count(obj.begin(), obj.end(), '\n') == 17);  // 16 v records + 1 l record

  CHECK(run_cli("generate --depth 0 --format csv --out curve0.csv") == 0);
  std::string csv = slurp(work_dir() / "curve0.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows
}

TEST_CASE("generate without an artifact exits 3") {
  CHECK(run_cli("generate --pattern nope.json --depth 1") == 3);
}

TEST_CASE("depth-5 CSV row count matches the chord bookkeeping") {
  CHECK(run_cli("pattern --depth 2 --out pattern.json") == 0);
  CHECK(run_cli("generate --depth 5 --format csv --out curve5.csv --stats stats5.json") == 0);
  std::string csv = slurp(work_dir() / "curve5.csv");
  // 2 vertices per chord, 8*8^4 chords, plus the header row.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 * 32768 + 1);

  nlohmann::json stats = nlohmann::json::parse(slurp(work_dir() / "stats5.json"));
  CHECK(stats["length_stats"]["vertex_count"].get<std::size_t>() == 65536);
  CHECK(stats["modulus_check"]["within_bound"].get<bool>());
}

TEST_CASE("rectifiable writes an RLE voxel export on request") {
  CHECK(run_cli("rectifiable --curve lshape --samples 64 --eps 0.5 --h 0.25,0.125 "
                "--out rl.json --voxel-out rl.rle") == 0);
  std::string rle = slurp(work_dir() / "rl.rle");
  CHECK_FALSE(rle.empty());
  // Header line holds the grid dims; the body alternates clear/set run lengths.
  CHECK(std::count(rle.begin(), rle.end(), '\n') == 2);
}

TEST_CASE("pattern --check accepts the clean file and rejects a corrupted one") {
  CHECK(run_cli("pattern --depth 2 --out good.json") == 0);
  CHECK(run_cli("pattern --check good.json --depth 2") == 0);

  nlohmann::json j = nlohmann::json::parse(slurp(work_dir() / "good.json"));
  j["root"]["exit"][3] = j["root"]["entry"][3];  // slot 3 entry == exit
  std::ofstream(work_dir() / "bad.json") << j.dump(2);
  CHECK(run_cli("pattern --check bad.json --depth 2") == 1);

  std::ofstream(work_dir() / "garbled.json") << "{not json";
  CHECK(run_cli("pattern --check garbled.json") == 1);
  CHECK(run_cli("pattern --check absent.json") == 3);
}

TEST_CASE("reports are byte-identical across reruns") {
  CHECK(run_cli("coverage --depth 4 --grid 3 --out cov_a.json") == 0);
  CHECK(run_cli("coverage --depth 4 --grid 3 --out cov_b.json") == 0);
  CHECK(slurp(work_dir() / "cov_a.json") == slurp(work_dir() / "cov_b.json"));

  CHECK(run_cli("sf --curve square --k 2 --seed 9 --samples 100 --out sf_a.json") == 0);
  CHECK(run_cli("sf --curve square --k 2 --seed 9 --samples 100 --out sf_b.json") == 0);
  CHECK(slurp(work_dir() / "sf_a.json") == slurp(work_dir() / "sf_b.json"));
}

TEST_CASE("rectifiable rejects a file spec without a file") {
  CHECK(run_cli("rectifiable --curve file") == 64);
  CHECK(run_cli("sf --curve file") == 64);
}
