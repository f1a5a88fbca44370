// Command-line front end: analyze, distance, peaks, iterate, exhaust.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hypconvex/io.hpp"

namespace {

using namespace hypconvex;

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolicity, decomposition and Kobayashi distance brackets for polyhedral convex domains"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string domain_path;
  std::uint64_t seed = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "Hyperbolicity verdict, decomposition and certificates (JSON)");
  std::size_t samples = 8;
  analyze_cmd->add_option("domain", domain_path, "Domain JSON file ('-' for stdin)")->required();
  analyze_cmd->add_option("--seed", seed, "Seed for realization samples");
  analyze_cmd->add_option("--samples", samples, "Number of realization samples");

  auto* distance_cmd = app.add_subcommand("distance", "Certified bracket on the Kobayashi distance");
  std::string z_text, w_text;
  std::size_t grid = 0, axis = 0;
  double span = 1.0;
  distance_cmd->add_option("domain", domain_path, "Domain JSON file")->required();
  distance_cmd->add_option("--z", z_text, "First point, e.g. [[1,0]]")->required();
  distance_cmd->add_option("--w", w_text, "Second point (ignored with --grid)");
  distance_cmd->add_option("--grid", grid, "Emit a CSV over a steps x steps grid around z");
  distance_cmd->add_option("--axis", axis, "Coordinate varied by --grid");
  distance_cmd->add_option("--span", span, "Half-width of the --grid square");
  distance_cmd->add_option("--seed", seed, "Unused; accepted for uniformity");

  auto* peaks_cmd = app.add_subcommand("peaks", "Scan peak and antipeak functions along a ray (CSV)");
  std::string base_text, direction_text, radii_text = "10,100,1000,10000,100000,1000000";
  peaks_cmd->add_option("domain", domain_path, "Domain JSON file")->required();
  peaks_cmd->add_option("--direction", direction_text, "Ray direction")->required();
  peaks_cmd->add_option("--base", base_text, "Ray base point (default: witness)");
  peaks_cmd->add_option("--radii", radii_text, "Increasing radii, comma separated");

  auto* iterate_cmd = app.add_subcommand("iterate", "Iterate a self-map and classify the orbit (JSON)");
  std::string map_path, start_text, trace_path;
  std::size_t steps = 64;
  bool exp_translation = false;
  iterate_cmd->add_option("domain", domain_path, "Domain JSON file")->required();
  auto* map_opt = iterate_cmd->add_option("--map", map_path, "Map JSON file");
  iterate_cmd->add_flag("--exp-translation", exp_translation,
                        "Use (z, w) -> (z, e^w + w) on the flat coordinates")
      ->excludes(map_opt);
  iterate_cmd->add_option("--start", start_text, "Start point (default: witness)");
  iterate_cmd->add_option("-n,--steps", steps, "Number of iterations");
  iterate_cmd->add_option("--trace", trace_path, "Write every iterate to this CSV file");

  auto* exhaust_cmd = app.add_subcommand("exhaust", "Lower bounds on box truncations (CSV)");
  std::string exhaust_radii = "10,100,1000,10000";
  exhaust_cmd->add_option("domain", domain_path, "Domain JSON file")->required();
  exhaust_cmd->add_option("--z", z_text, "First point")->required();
  exhaust_cmd->add_option("--w", w_text, "Second point")->required();
  exhaust_cmd->add_option("--radii", exhaust_radii, "Increasing box half-widths");

  CLI11_PARSE(app, argc, argv);

  try {
    const DomainSpec domain = parse_domain(read_file(domain_path));

    if (*analyze_cmd) {
      const auto result = analyze(domain, seed, samples);
      std::cout << result.report.dump(2) << '\n';
      return result.exit_code;
    }
    if (*distance_cmd) {
      const CVector z = parse_point(z_text, "--z");
      if (grid > 0) {
        std::cout << distance_grid_csv(domain, z, axis, span, grid);
        return 0;
      }
      if (w_text.empty()) throw DomainError("--w is required without --grid");
      std::cout << distance_row(domain, z, parse_point(w_text, "--w")).dump(2) << '\n';
      return 0;
    }
    if (*peaks_cmd) {
      const CVector base = base_text.empty() ? domain.witness() : parse_point(base_text, "--base");
      const auto radii = parse_number_list(radii_text);
      std::cout << peaks_csv(scan_all_potentials(domain, base, parse_point(direction_text, "--direction"), radii));
      return 0;
    }
    if (*iterate_cmd) {
      const auto dec = decompose(domain);
      const SelfMap map = exp_translation ? exp_translation_map(dec.k, dec.m)
                                          : parse_map(read_file(map_path));
      if (!exp_translation && map_path.empty()) throw DomainError("--map or --exp-translation required");
      require_split_coordinates(domain, map);
      CVector start = domain.witness();
      if (!start_text.empty()) {
        start = parse_point(start_text, "--start");
      } else if (exp_translation) {
        start[start.size() - 1] = exp_translation_period_two_point();
      }
      OrbitRecord rec = iterate(map, start, steps, domain);
      rec.classification = classify_orbit(rec, domain);
      if (!trace_path.empty()) write_file(trace_path, orbit_trace_csv(rec));
      std::cout << orbit_summary(rec).dump(2) << '\n';
      return 0;
    }
    if (*exhaust_cmd) {
      const auto radii = parse_number_list(exhaust_radii);
      std::cout << exhaustion_csv(exhaustion_curve(domain, parse_point(z_text, "--z"),
                                                   parse_point(w_text, "--w"), radii));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
