// Command-line front end: pattern search/validation, curve generation, and
// the Minkowski-side experiments. All geometry is exact internally; binary64
// appears only in serialized reports.

#include "cubecurve/analysis.hpp"
#include "cubecurve/curve.hpp"
#include "cubecurve/pattern.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using nlohmann::json;
using namespace cubecurve;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSearch = 2;
constexpr int kExitMissing = 3;
constexpr int kExitUsage = 64;

// Outputs are staged and renamed so error paths never leave partial files.
void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
  }
  std::filesystem::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------
// pattern
// ---------------------------------------------------------------------------

int run_pattern_check(const std::string& path, int depth) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "pattern file not found: " << path << "\n";
    return kExitMissing;
  }
  PatternTable table;
  try {
    table = pattern_table_from_json(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "pattern file rejected: " << e.what() << "\n";
    return kExitValidation;
  }
  std::size_t bad = 0;
  Box3 unit{{Rat(0), Rat(0), Rat(0)}, Rat(1), 0};
  for (const std::string& v :
       check_pattern(table.root_entry, table.root_exit, unit, {closing_segment(table)}, table.root)) {
    std::cerr << "root pattern: " << v << "\n";
    ++bad;
  }
  for (const auto& [cls, pat] : table.classes) {
    auto [e, x] = canonical_pair(cls);
    Vec3r ve{Rat(e[0]), Rat(e[1]), Rat(e[2])};
    Vec3r vx{Rat(x[0]), Rat(x[1]), Rat(x[2])};
    for (const std::string& v : check_pattern(ve, vx, unit, {}, pat)) {
      std::cerr << pair_class_name(cls) << " pattern: " << v << "\n";
      ++bad;
    }
  }
  ValidationReport report;
  try {
    report = validate_tree(table, depth);
  } catch (const std::exception& e) {
    std::cerr << "validation aborted: " << e.what() << "\n";
    return kExitValidation;
  }
  for (const Violation& v : report.violations) {
    std::cerr << v.clause << " at " << address_str(v.node) << ": " << v.detail << "\n";
  }
  bad += report.violations.size();
  std::cout << "checked " << path << " to depth " << depth << ": " << bad << " violation(s)\n";
  return bad == 0 ? kExitOk : kExitValidation;
}

int run_pattern(int depth, const std::string& out, const std::string& check) {
  if (!check.empty()) return run_pattern_check(check, depth);
  PatternTable table;
  try {
    table = pattern_closure();
  } catch (const PatternSearchError& e) {
    std::cerr << "search failed: " << e.what() << "\n";
    return kExitSearch;
  }
  ValidationReport report = validate_tree(table, depth);
  write_file(out, pattern_table_to_json(table, &report));
  std::cout << "pattern table -> " << out << "\n"
            << "classes: " << table.classes.size()
            << ", chain fallback: " << (table.chain_fallback_used ? "yes" : "no") << "\n"
            << "validated depth " << report.depth << ": " << report.nodes << " nodes, "
            << report.cube_pair_checks + report.seg_cube_checks + report.seg_seg_checks
            << " exact checks, " << report.violations.size() << " violation(s)\n";
  return report.ok() ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

int run_generate(const std::string& pattern_path, int depth, const std::string& format,
                 std::string out, const std::string& stats_path) {
  if (!std::filesystem::exists(pattern_path)) {
    std::cerr << "pattern file not found: " << pattern_path << " (run `pattern` first)\n";
    return kExitMissing;
  }
  PatternTable table;
  try {
    table = pattern_table_from_json(read_file(pattern_path));
  } catch (const std::exception& e) {
    std::cerr << "pattern file rejected: " << e.what() << "\n";
    return kExitValidation;
  }
  CurveModel model(std::move(table));
  PolyCurve poly = model.build_polyline(depth);
  if (out.empty()) out = format == "obj" ? "curve.obj" : "curve.csv";
  write_file(out, format == "obj" ? polyline_obj(poly) : polyline_csv(poly));
  std::cout << "depth " << depth << ": " << poly.vertices.size() << " vertices ("
            << ipow(8, unsigned(depth)) << " chords) -> " << out << "\n";
  if (!stats_path.empty()) {
    LengthStats ls = model.length_stats(depth);
    json s;
    s["length_stats"] = json{{"depth", ls.depth},
                             {"vertex_count", ls.vertex_count},
                             {"polyline_length", ls.polyline_length},
                             {"lower_bound", rat_str(ls.lower_bound)},
                             {"lower_bound_approx", ls.lower_bound.convert_to<double>()}};
    if (depth >= 1) {
      ModulusReport mr = model.modulus_check(depth, 8);
      s["modulus_check"] = json{{"depth", mr.depth},
                                {"samples_per_gap", mr.samples_per_gap},
                                {"sample_count", mr.sample_count},
                                {"max_adjacent", mr.max_adjacent},
                                {"bound", mr.bound},
                                {"within_bound", mr.within_bound}};
    }
    write_file(stats_path, s.dump(2) + "\n");
    std::cout << "stats -> " << stats_path << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// coverage
// ---------------------------------------------------------------------------

int run_coverage(int depth, int grid, const std::string& out) {
  PatternTable table;
  try {
    table = pattern_closure();
  } catch (const PatternSearchError& e) {
    std::cerr << "search failed: " << e.what() << "\n";
    return kExitSearch;
  }
  CurveModel model(std::move(table));
  CoverageCertificate cert = coverage_certificate(model, depth, grid);
  json j;
  j["command"] = "coverage";
  j["depth"] = cert.depth;
  j["grid"] = cert.grid;
  j["max_dev"] = cert.max_dev;
  j["max_dev_sq"] = rat_str(cert.max_dev_sq);
  j["bound_sq"] = rat_str(cert.bound_sq);
  j["bound"] = std::sqrt(cert.bound_sq.convert_to<double>());
  j["certified"] = cert.certified;
  j["worst_center"] = json::array({rat_str(cert.worst_center[0]), rat_str(cert.worst_center[1]),
                                   rat_str(cert.worst_center[2])});
  write_file(out, j.dump(2) + "\n");
  std::cout << "max deviation " << cert.max_dev << (cert.certified ? " <= " : " > ")
            << std::sqrt(cert.bound_sq.convert_to<double>()) << " -> " << out << "\n";
  return cert.certified ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------
// sampled reference curves
// ---------------------------------------------------------------------------

PointSet3 sample_curve(const std::string& name, int samples, const std::string& file) {
  PointSet3 set;
  set.provenance = name;
  set.points.reserve(samples + 1);
  double pi2 = 2.0 * std::numbers::pi;
  if (name == "circle") {
    for (int i = 0; i <= samples; ++i) {
      double t = pi2 * i / samples;
      set.points.push_back({std::cos(t), std::sin(t), 0.0});
    }
  } else if (name == "square") {
    // Unit square boundary in the z = 0 plane, perimeter parameter in [0,4].
    for (int i = 0; i <= samples; ++i) {
      double u = 4.0 * i / samples;
      int edge = std::min(3, static_cast<int>(u));
      double f = u - edge;
      switch (edge) {
        case 0: set.points.push_back({f, 0.0, 0.0}); break;
        case 1: set.points.push_back({1.0, f, 0.0}); break;
        case 2: set.points.push_back({1.0 - f, 1.0, 0.0}); break;
        default: set.points.push_back({0.0, 1.0 - f, 0.0}); break;
      }
    }
  } else if (name == "helix") {
    for (int i = 0; i <= samples; ++i) {
      double t = pi2 * i / samples;
      set.points.push_back({std::cos(t), std::sin(t), t / pi2});
    }
  } else if (name == "lshape") {
    for (int i = 0; i <= samples; ++i) {
      double u = 2.0 * i / samples;
      if (u <= 1.0) {
        set.points.push_back({u, 0.0, 0.0});
      } else {
        set.points.push_back({1.0, u - 1.0, 0.0});
      }
    }
  } else if (name == "file") {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open curve file: " + file);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
      Point3d p{};
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p[0], &p[1], &p[2]) == 3) {
        set.points.push_back(p);
      }
    }
    if (set.points.size() < 2) throw std::runtime_error("curve file has fewer than 2 points");
  } else {
    throw CLI::ValidationError("--curve", "unknown curve spec: " + name);
  }
  return set;
}

// ---------------------------------------------------------------------------
// rectifiable
// ---------------------------------------------------------------------------

int run_rectifiable(const std::string& curve, const std::vector<double>& eps_list,
                    std::vector<double> h_list, int samples, const std::string& file,
                    const std::string& out, const std::string& voxel_out) {
  PointSet3 pts = sample_curve(curve, samples, file);
  if (h_list.empty()) h_list = {1.0 / 25, 1.0 / 50, 1.0 / 75, 1.0 / 100};

  json j;
  j["command"] = "rectifiable";
  j["curve"] = curve;
  j["samples"] = samples;
  {
    double len = 0;
    for (std::size_t i = 1; i < pts.points.size(); ++i) {
      double dx = pts.points[i][0] - pts.points[i - 1][0];
      double dy = pts.points[i][1] - pts.points[i - 1][1];
      double dz = pts.points[i][2] - pts.points[i - 1][2];
      len += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    j["length"] = len;
  }

  json eps_reports = json::array();
  for (double eps : eps_list) {
    PieceDecomposition dec = greedy_partition(pts.points, eps);
    MeasureBound mb = measure_bound(dec);
    json r;
    r["epsilon"] = eps;
    r["n"] = dec.n();
    r["n_pieces"] = static_cast<int>(dec.pieces.size());
    r["paper_bound"] = mb.paper_bound;
    r["refined"] = mb.refined;
    r["final_form"] = mb.final_form;
    r["refined_within_paper"] = mb.refined_within_paper;
    r["paper_within_final"] = mb.paper_within_final;
    r["piece_count_bound_ok"] = dec.pieces.size() <= dec.path_length / eps + 1.0 + 1e-9;
    eps_reports.push_back(r);
  }
  j["eps_reports"] = eps_reports;

  json sweep = json::array();
  std::vector<double> hs, vols;
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    double h = h_list[i];
    VoxelGrid grid = midpoint_voxel_cover(pts, pts, h);
    json r;
    r["h"] = h;
    r["voxel_count"] = grid.occupied_count();
    r["volume"] = grid.volume();
    r["dilated_volume"] = grid.dilated().volume();
    sweep.push_back(r);
    hs.push_back(h);
    vols.push_back(grid.volume());
    if (!voxel_out.empty() && i + 1 == h_list.size()) {
      write_file(voxel_out, grid.rle());  // finest grid, for external plotting
    }
  }
  j["h_sweep"] = sweep;
  LineFit fit = fit_line(hs, vols);
  j["volume_fit"] = json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
  j["volume_shrinks_linearly"] = fit.slope > 0 && fit.r2 >= 0.9;

  write_file(out, j.dump(2) + "\n");
  std::cout << "rectifiable report -> " << out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sf
// ---------------------------------------------------------------------------

int run_sf(const std::string& curve, int k, int samples, std::uint64_t seed,
           const std::string& file, const std::string& out) {
  PointSet3 pts = sample_curve(curve, samples, file);
  std::vector<SfEntry> entries = sf_sequence(pts, k, seed);
  double tolerance = 2.0 / std::sqrt(double(pts.points.size()));
  json j;
  j["command"] = "sf";
  j["curve"] = curve;
  j["samples"] = static_cast<int>(pts.points.size());
  j["k"] = k;
  j["seed"] = seed;
  j["sampling_tolerance"] = tolerance;
  json list = json::array();
  for (const SfEntry& e : entries) {
    list.push_back(json{{"k", e.k}, {"hausdorff", e.dh}, {"set_size", e.set_size}});
  }
  j["entries"] = list;
  j["last_below_tolerance"] = !entries.empty() && entries.back().dh <= tolerance;
  write_file(out, j.dump(2) + "\n");
  std::cout << "sf report -> " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractal closed space curve whose midpoint set fills the unit cube"};
  app.set_help_flag("--help", "print usage");  // frees -h for the --h voxel list
  app.require_subcommand(1);

  int depth = 4;
  int grid = 9;
  std::string out;
  std::string check;
  std::string pattern_path = "pattern.json";
  std::string format = "csv";
  std::string curve = "circle";
  std::string sf_curve = "square";
  std::string curve_file;
  std::string stats_path;
  std::string voxel_out;
  std::vector<double> eps_list{0.5, 0.2, 0.1};
  std::vector<double> h_list;
  int samples = 2000;
  int sf_samples = 500;
  int k = 2;
  std::uint64_t seed = 1;

  auto* cmd_pattern = app.add_subcommand("pattern", "find, validate, and export the pattern table");
  cmd_pattern->add_option("--depth", depth, "exact validation depth")->check(CLI::Range(0, 12));
  cmd_pattern->add_option("--out", out, "output pattern JSON path");
  cmd_pattern->add_option("--check", check, "re-validate an existing pattern file");

  auto* cmd_generate = app.add_subcommand("generate", "emit the depth-n polyline as CSV or OBJ");
  cmd_generate->add_option("--pattern", pattern_path, "pattern table JSON");
  cmd_generate->add_option("--depth", depth, "polyline depth")->check(CLI::Range(0, 12));
  cmd_generate->add_option("--format", format, "csv or obj")
      ->check(CLI::IsMember({"csv", "obj"}));
  cmd_generate->add_option("--out", out, "output path");
  cmd_generate->add_option("--stats", stats_path, "also write length/modulus JSON report");

  auto* cmd_coverage = app.add_subcommand("coverage", "certify the witness-midpoint net of [0,1]^3");
  cmd_coverage->add_option("--depth", depth, "witness depth")->check(CLI::Range(1, 12));
  cmd_coverage->add_option("--grid", grid, "voxel grid resolution")->check(CLI::Range(1, 243));
  cmd_coverage->add_option("--out", out, "report JSON path");

  auto* cmd_rect = app.add_subcommand("rectifiable", "greedy partition bounds and voxel h-sweep");
  cmd_rect->add_option("--curve", curve, "circle|square|helix|lshape|file");
  cmd_rect->add_option("--file", curve_file, "CSV path when --curve file");
  cmd_rect->add_option("--eps", eps_list, "epsilon list")->delimiter(',');
  cmd_rect->add_option("--h", h_list, "voxel size list")->delimiter(',');
  cmd_rect->add_option("--samples", samples, "curve sample count")->check(CLI::Range(8, 100000));
  cmd_rect->add_option("--out", out, "report JSON path");
  cmd_rect->add_option("--voxel-out", voxel_out, "write the finest midpoint grid as RLE text");

  auto* cmd_sf = app.add_subcommand("sf", "Minkowski averages vs the sampled convex hull");
  cmd_sf->add_option("--curve", sf_curve, "circle|square|helix|lshape|file");
  cmd_sf->add_option("--file", curve_file, "CSV path when --curve file");
  cmd_sf->add_option("--k", k, "number of averaged copies")->check(CLI::Range(1, 4));
  cmd_sf->add_option("--samples", sf_samples, "curve sample count")->check(CLI::Range(8, 500));
  cmd_sf->add_option("--seed", seed, "hull sampling seed");
  cmd_sf->add_option("--out", out, "report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_pattern->parsed()) {
      return run_pattern(depth, out.empty() ? "pattern.json" : out, check);
    }
    if (cmd_generate->parsed()) {
      return run_generate(pattern_path, depth, format, out, stats_path);
    }
    if (cmd_coverage->parsed()) {
      return run_coverage(depth, grid, out.empty() ? "coverage.json" : out);
    }
    if (cmd_rect->parsed()) {
      if (curve == "file" && curve_file.empty()) {
        std::cerr << "--curve file requires --file\n";
        return kExitUsage;
      }
      return run_rectifiable(curve, eps_list, h_list, samples, curve_file,
                             out.empty() ? "rectifiable.json" : out, voxel_out);
    }
    if (cmd_sf->parsed()) {
      if (sf_curve == "file" && curve_file.empty()) {
        std::cerr << "--curve file requires --file\n";
        return kExitUsage;
      }
      return run_sf(sf_curve, k, sf_samples, seed, curve_file, out.empty() ? "sf.json" : out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
