#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "upgmc/bench.hpp"
#include "upgmc/core.hpp"
#include "upgmc/engine.hpp"
#include "upgmc/hashed_distance_set.hpp"
#include "upgmc/io.hpp"
#include "upgmc/selftest.hpp"

namespace {

using namespace upgmc;

constexpr int kExitUsage = 2;

std::uint32_t parse_positive(const std::string& text, const char* what) {
  std::uint32_t value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size() || value == 0) {
    throw std::invalid_argument(std::string(what) + ": expected a positive integer, got '" + text + "'");
  }
  return value;
}

SlotMode parse_mode(const std::string& text) {
  if (text == "first") return SlotMode::FirstSorted;
  if (text == "full") return SlotMode::FullySorted;
  throw std::invalid_argument("mode: expected 'first' or 'full', got '" + text + "'");
}

// Writes to the path, or to stdout when the path is "-".
void with_output(const std::string& path, const auto& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + path + "'");
  }
  write(out);
}

struct ClusterArgs {
  std::string input;
  std::string engine = "hashed";
  std::string slots = "auto";
  std::string mode = "first";
  std::string output = "-";
};

int run_cluster(const ClusterArgs& args) {
  const std::vector<Point> points = read_points_file(args.input);
  const std::uint32_t n = static_cast<std::uint32_t>(points.size());

  EngineKind kind;
  if (args.engine == "naive") {
    kind = NaiveKind{};
  } else {
    const std::uint32_t slots = args.slots == "auto" ? n : parse_positive(args.slots, "slots");
    kind = HashedKind{slots, parse_mode(args.mode)};
  }

  const ClusterResult result = cluster(points, kind);
  with_output(args.output, [&](std::ostream& out) { write_linkage_csv(out, result.dendrogram); });

  std::cerr << "points: " << n << "\n"
            << "distance computations: " << result.stats.distance_computations << "\n"
            << "slot probes: " << result.stats.slot_probes << "\n"
            << "scan comparisons: " << result.stats.scan_comparisons << "\n"
            << "wall time: " << static_cast<double>(result.stats.wall_time.count()) / 1e6
            << " ms\n";
  return 0;
}

struct BenchArgs {
  std::vector<std::uint32_t> n_values;
  std::vector<std::string> l_values;
  std::uint32_t dim = 16;
  std::vector<std::string> modes{"first"};
  std::vector<std::uint64_t> seeds{1};
  std::uint32_t repetitions = 1;
  std::vector<std::string> engines{"naive", "hashed"};
  std::string output = "-";
};

int run_bench_command(const BenchArgs& args) {
  BenchConfig config;
  config.n_values = args.n_values;
  config.dim = args.dim;
  config.seeds = args.seeds;
  config.repetitions = args.repetitions;

  if (!args.l_values.empty()) {
    config.l_values.clear();
    for (const std::string& text : args.l_values) {
      config.l_values.push_back(text == "auto" ? SlotSpec::auto_n()
                                               : SlotSpec::fixed(parse_positive(text, "l")));
    }
  }

  config.modes.clear();
  for (const std::string& text : args.modes) config.modes.push_back(parse_mode(text));

  config.run_naive = false;
  config.run_hashed = false;
  for (const std::string& engine : args.engines) {
    if (engine == "naive") {
      config.run_naive = true;
    } else if (engine == "hashed") {
      config.run_hashed = true;
    } else {
      throw std::invalid_argument("engines: expected 'naive' or 'hashed', got '" + engine + "'");
    }
  }

  const std::vector<BenchRow> rows = run_bench(config);
  with_output(args.output, [&](std::ostream& out) { write_bench_csv(out, rows); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UPGMC centroid-linkage clustering over a residue-hashed distance set"};
  app.require_subcommand(1);

  ClusterArgs cluster_args;
  CLI::App* cluster_cmd = app.add_subcommand("cluster", "Cluster a points CSV and write the linkage");
  cluster_cmd->add_option("input", cluster_args.input, "Points CSV (one point per row)")->required();
  cluster_cmd->add_option("-e,--engine", cluster_args.engine, "Engine: naive or hashed")
      ->check(CLI::IsMember({"naive", "hashed"}))
      ->capture_default_str();
  cluster_cmd->add_option("-l,--slots", cluster_args.slots, "Slot count, or 'auto' for n")
      ->capture_default_str();
  cluster_cmd->add_option("-m,--mode", cluster_args.mode, "Slot ordering: first or full")
      ->check(CLI::IsMember({"first", "full"}))
      ->capture_default_str();
  cluster_cmd->add_option("-o,--output", cluster_args.output, "Linkage CSV path, or '-' for stdout")
      ->capture_default_str();

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Measure both engines over a parameter grid");
  bench_cmd->add_option("--n", bench_args.n_values, "Point counts (comma separated)")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--l", bench_args.l_values,
                        "Slot counts, each a positive integer or 'auto' "
                        "(default sweep: ceil(n/4), n, 4n, next prime after n)")
      ->delimiter(',');
  bench_cmd->add_option("--d", bench_args.dim, "Point dimension")->capture_default_str();
  bench_cmd->add_option("--modes", bench_args.modes, "Slot orderings: first,full")->delimiter(',');
  bench_cmd->add_option("--seeds", bench_args.seeds, "Dataset seeds")->delimiter(',');
  bench_cmd->add_option("--reps", bench_args.repetitions, "Timed repetitions per combination")
      ->capture_default_str();
  bench_cmd->add_option("--engines", bench_args.engines, "Engines to run: naive,hashed")
      ->delimiter(',');
  bench_cmd->add_option("-o,--output", bench_args.output, "Results CSV path, or '-' for stdout")
      ->capture_default_str();

  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "Run the built-in counter and equivalence checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cluster_cmd->parsed()) return run_cluster(cluster_args);
    if (bench_cmd->parsed()) return run_bench_command(bench_args);
    if (selftest_cmd->parsed()) return upgmc::selftest::run(std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
