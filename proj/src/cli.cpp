// Copyright 2026 The belltransfer developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "belltransfer/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "belltransfer/channels.hpp"
#include "belltransfer/errors.hpp"
#include "belltransfer/filterops.hpp"
#include "belltransfer/ledger.hpp"
#include "belltransfer/protocol.hpp"
#include "belltransfer/rng.hpp"
#include "belltransfer/statevec.hpp"
#include "belltransfer/sweep.hpp"
#include "belltransfer/tolerances.hpp"
#include "belltransfer/version.hpp"

namespace belltransfer {

namespace {

using ordered_json = nlohmann::ordered_json;

// Flag-shape problems, mapped to exit code 1; domain failures (Error and its
// descendants) map to 2.
struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const UsageFailure& failure) {
    err << "usage error: " << failure.what() << "\n";
    return 1;
  } catch (const std::exception& failure) {
    err << "error: " << failure.what() << "\n";
    return 2;
  }
}

std::string format_double(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, spec, value);
  return buffer;
}

// CSV cells: 12 significant digits, trailing zeros kept.
std::string csv_number(double value) { return format_double("%#.12g", value); }

// Metadata cells: enough digits to reproduce the double exactly.
std::string exact_number(double value) { return format_double("%.17g", value); }

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(separator, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) {
      break;
    }
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& token, const char* what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw UsageFailure(std::string(what) + " '" + token + "' is not a number");
  }
  return value;
}

int parse_count(const std::string& token, const char* what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const long value = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || value < 0 || value > 1000000) {
    throw UsageFailure(std::string(what) + " '" + token + "' is not a non-negative integer");
  }
  return static_cast<int>(value);
}

std::vector<Amp> parse_amplitude_list(const std::string& text) {
  std::vector<Amp> coefficients;
  for (const std::string& token : split(text, ',')) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos) {
      coefficients.push_back(Amp{parse_double(token, "input coefficient"), 0.0});
    } else {
      coefficients.push_back(Amp{parse_double(token.substr(0, colon), "input coefficient"),
                                 parse_double(token.substr(colon + 1), "input coefficient")});
    }
  }
  return coefficients;
}

std::vector<AxisSpec> parse_grid(const std::string& text, int k) {
  std::vector<AxisSpec> axes;
  for (const std::string& group : split(text, ',')) {
    const std::vector<std::string> parts = split(group, ':');
    if (parts.size() != 3) {
      throw UsageFailure("grid axis '" + group + "' wants min:max:steps");
    }
    AxisSpec axis;
    axis.min = parse_double(parts[0], "grid bound");
    axis.max = parse_double(parts[1], "grid bound");
    axis.steps = parse_count(parts[2], "grid step count");
    axes.push_back(axis);
  }
  if (axes.size() == 1 && k > 1) {
    axes.resize(static_cast<std::size_t>(k), axes[0]);
  }
  if (axes.size() != static_cast<std::size_t>(k)) {
    throw UsageFailure("--grid wants one shared axis or exactly " + std::to_string(k));
  }
  return axes;
}

// The stock survey: about a degree of resolution for two pairs, coarser for
// three (the point count cubes), clear of the degenerate boundary.
std::vector<AxisSpec> default_axes(int k) {
  AxisSpec axis;
  axis.min = 0.01 - kQuarterPi;
  axis.max = kQuarterPi - 0.01;
  axis.steps = (k == 2) ? 91 : 9;
  return std::vector<AxisSpec>(static_cast<std::size_t>(k), axis);
}

void write_text_file(const std::filesystem::path& path, const std::string& payload) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error("cannot open output file " + path.string());
  }
  file << payload;
  file.flush();
  if (!file) {
    throw Error("failed while writing " + path.string());
  }
}

void write_payload(const std::optional<std::string>& path, std::ostream& fallback,
                   const std::string& payload) {
  if (path) {
    write_text_file(std::filesystem::path(*path), payload);
  } else {
    fallback << payload;
    fallback.flush();
  }
}

ordered_json ledger_json(const std::vector<LedgerEntry>& entries) {
  ordered_json list = ordered_json::array();
  for (const LedgerEntry& entry : entries) {
    list.push_back({{"id", entry.id},
                    {"location", entry.location},
                    {"printed", entry.printed},
                    {"derived", entry.derived},
                    {"severity", to_string(entry.severity)}});
  }
  return list;
}

ordered_json pair_list(const std::vector<Amp>& amplitudes) {
  ordered_json list = ordered_json::array();
  for (const Amp& a : amplitudes) {
    list.push_back({a.real(), a.imag()});
  }
  return list;
}

std::string transfer_json(const TransferReport& report) {
  ordered_json j;
  j["k"] = report.k;
  j["deltas"] = report.deltas;
  j["p_analytic"] = report.p_analytic;
  j["p_simulated"] = report.p_simulated;
  j["min_fidelity"] = report.min_fidelity;
  ordered_json branches = ordered_json::array();
  for (const BranchOutcome& branch : report.branches) {
    branches.push_back({{"outcome", branch.outcome},
                        {"measurement_probability", branch.measurement_probability},
                        {"branch_probability", branch.branch_probability},
                        {"fidelity", branch.fidelity},
                        {"receiver", pair_list(branch.receiver)}});
  }
  j["branches"] = std::move(branches);
  j["ledger"] = ledger_json(report.discrepancies);
  return j.dump(2) + "\n";
}

// Report indices are 1-based throughout, matching the convention the staged
// operators are published in; amplitudes carry the stage's listed form
// (true value times printed_scale), while norm tracks the true vector.
std::string trace_json(const TraceReport& report) {
  ordered_json j;
  j["k"] = report.k;
  j["deltas"] = report.deltas;
  j["least_product"] = report.least_index + 1;
  j["single_branch_probability"] = report.single_branch_probability;
  j["total_probability"] = report.total_probability;
  ordered_json stages = ordered_json::array();
  for (const TraceStage& stage : report.stages) {
    ordered_json amplitudes = ordered_json::array();
    const int n = stage.state.num_qubits();
    for (std::uint64_t i = 0; i < stage.state.dim(); ++i) {
      const Amp a = stage.state.amplitude(i);
      if (a.real() == 0.0 && a.imag() == 0.0) {
        continue;
      }
      amplitudes.push_back({{"index", i + 1},
                            {"label", basis_label(i, n)},
                            {"re", a.real() * stage.printed_scale},
                            {"im", a.imag() * stage.printed_scale}});
    }
    stages.push_back({{"name", stage.name},
                      {"printed_scale", stage.printed_scale},
                      {"norm", stage.state.norm_tracked()},
                      {"amplitudes", std::move(amplitudes)}});
  }
  j["stages"] = std::move(stages);
  j["ledger"] = ledger_json(report.discrepancies);
  return j.dump(2) + "\n";
}

std::string grid_description(const std::vector<AxisSpec>& axes) {
  std::string text;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (i > 0) {
      text += ',';
    }
    text += exact_number(axes[i].min) + ":" + exact_number(axes[i].max) + ":" +
            std::to_string(axes[i].steps);
  }
  return text;
}

std::string sweep_csv(const GridSpec& grid, const std::vector<SweepRow>& rows,
                      std::uint64_t seed, const std::string& mode_name) {
  const bool simulated = grid.input_mode != InputMode::analytic_only;
  std::string csv;
  csv.reserve(rows.size() * 72 + 160);
  csv += "# belltransfer ";
  csv += kVersion;
  csv += " sweep k=" + std::to_string(grid.k);
  csv += " grid=" + grid_description(grid.axes);
  csv += " mode=" + mode_name;
  csv += " seed=" + std::to_string(seed);
  csv += '\n';
  csv += "delta_a";
  for (int axis = 1; axis < grid.k; ++axis) {
    csv += ",delta_";
    csv += static_cast<char>('a' + axis);
  }
  csv += ",p_analytic";
  if (simulated) {
    csv += ",p_simulated,fidelity_min";
  }
  csv += '\n';
  for (const SweepRow& row : rows) {
    for (double delta : row.deltas) {
      csv += csv_number(delta);
      csv += ',';
    }
    csv += csv_number(row.p_analytic);
    if (simulated) {
      csv += ',';
      csv += csv_number(row.p_simulated);
      csv += ',';
      csv += csv_number(row.fidelity_min);
    }
    csv += '\n';
  }
  return csv;
}

std::string operator_text(const OperatorMatrix& op) {
  std::ostringstream text;
  dump_operator(op, text);
  return text.str();
}

std::filesystem::path output_directory(const std::optional<std::string>& out) {
  if (!out) {
    return std::filesystem::path(".");
  }
  const std::filesystem::path parent = std::filesystem::path(*out).parent_path();
  return parent.empty() ? std::filesystem::path(".") : parent;
}

// permutation -> permutation_<family>.txt; filter_literal ->
// filter_<family>_literal.txt. An empty family keeps the plain names.
std::string family_file_name(const std::string& op_name, const std::string& family) {
  if (family.empty()) {
    return op_name + ".txt";
  }
  const std::size_t underscore = op_name.find('_');
  if (underscore == std::string::npos) {
    return op_name + "_" + family + ".txt";
  }
  return op_name.substr(0, underscore) + "_" + family + "_" + op_name.substr(underscore + 1) +
         ".txt";
}

std::vector<std::string> dump_operator_files(const std::vector<NamedOperator>& ops,
                                             const std::filesystem::path& directory,
                                             const std::string& family) {
  std::vector<std::string> written;
  for (const NamedOperator& named : ops) {
    const std::filesystem::path path = directory / family_file_name(named.name, family);
    write_text_file(path, operator_text(named.op));
    written.push_back(path.string());
  }
  return written;
}

InputMode mode_from_name(const std::string& name) {
  if (name == "random") {
    return InputMode::random;
  }
  if (name == "analytic") {
    return InputMode::analytic_only;
  }
  if (name == "fixed") {
    return InputMode::fixed;
  }
  throw UsageFailure("unknown input mode '" + name + "' (random, analytic, or fixed)");
}

}  // namespace

int cmd_transfer(const TransferConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (static_cast<int>(cfg.deltas.size()) != cfg.k) {
      throw UsageFailure("--delta needs exactly " + std::to_string(cfg.k) +
                         " comma-separated values");
    }
    InputState input;
    if (cfg.input) {
      input.coefficients = parse_amplitude_list(*cfg.input);
    } else {
      SeededRng rng(cfg.seed);
      input = random_input(cfg.k, rng);
    }
    const TransferReport report = run_full_protocol(input, standard_channels(cfg.deltas));
    write_payload(cfg.out, out, transfer_json(report));
    return 0;
  });
}

int cmd_trace(const TraceConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (cfg.deltas.empty()) {
      throw UsageFailure("--delta is required");
    }
    const int k = static_cast<int>(cfg.deltas.size());
    const std::vector<ChannelSpec> channels = standard_channels(cfg.deltas);
    InputState input;
    if (cfg.input) {
      input.coefficients = parse_amplitude_list(*cfg.input);
    } else {
      SeededRng rng(cfg.seed);
      input = random_input(k, rng);
    }
    const TraceReport report = trace_single_branch(input, channels);
    write_payload(cfg.out, out, trace_json(report));
    if (cfg.dump_operators) {
      const std::filesystem::path directory = output_directory(cfg.out);
      const std::vector<std::string> files =
          dump_operator_files(staged_operators(channels), directory, "");
      err << "wrote " << files.size() << " operator files to " << directory.string() << "\n";
    }
    return 0;
  });
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    std::string mode_name = cfg.input_mode;
    std::vector<Amp> fixed_input;
    if (cfg.input) {
      if (*cfg.input == "analytic" || *cfg.input == "random") {
        mode_name = *cfg.input;
      } else {
        mode_name = "fixed";
        fixed_input = parse_amplitude_list(*cfg.input);
      }
    }
    GridSpec grid;
    grid.k = cfg.k;
    grid.input_mode = mode_from_name(mode_name);
    if (grid.input_mode == InputMode::fixed && fixed_input.empty()) {
      throw UsageFailure("fixed input mode needs --input coefficients");
    }
    grid.axes = cfg.grid ? parse_grid(*cfg.grid, cfg.k) : default_axes(cfg.k);

    int threads = cfg.threads;
    if (threads < 0) {
      const char* cap = std::getenv("BELLTRANSFER_THREADS");
      threads = (cap == nullptr || *cap == '\0') ? 0 : parse_count(cap, "BELLTRANSFER_THREADS");
    }

    const std::vector<SweepRow> rows = run_sweep(grid, fixed_input, cfg.seed, threads);
    write_payload(cfg.out, out, sweep_csv(grid, rows, cfg.seed, mode_name));
    return 0;
  });
}

int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (!(cfg.tolerance > 0.0)) {
      throw UsageFailure("--tolerance must be positive");
    }
    const double spot = -(kQuarterPi / 3.0);
    const std::vector<ChannelSpec> spot2 = standard_channels({spot, spot});
    const std::vector<ChannelSpec> spot3 = standard_channels({spot, spot, spot});
    SeededRng rng(cfg.seed);

    struct CheckLine {
      std::string text;
      bool pass = false;
    };
    std::vector<CheckLine> checks;
    const auto add_check = [&checks](int number, const std::string& description, bool pass,
                                     const std::string& detail) {
      std::string line = "[" + std::to_string(number) + "] " + description;
      if (!detail.empty()) {
        line += " (" + detail + ")";
      }
      line += pass ? ": PASS" : ": FAIL";
      checks.push_back({std::move(line), pass});
    };

    const std::vector<NamedOperator> ops2 = staged_operators(spot2);
    const std::vector<NamedOperator> ops3 = staged_operators(spot3);
    const auto find_op = [](const std::vector<NamedOperator>& ops,
                            const std::string& name) -> const OperatorMatrix& {
      for (const NamedOperator& named : ops) {
        if (named.name == name) {
          return named.op;
        }
      }
      throw Error("staged operator set lacks " + name);
    };
    const auto swap_pairs = [](const OperatorMatrix& op) {
      IndexMapping pairs;
      if (const std::vector<std::uint64_t>* map = op.permutation_map()) {
        for (std::uint64_t i = 0; i < map->size(); ++i) {
          if ((*map)[i] > i) {
            pairs.emplace_back(i, (*map)[i]);
          }
        }
      }
      return pairs;
    };
    const auto one_based = [](const IndexMapping& pairs) {
      std::string text;
      for (const auto& pair : pairs) {
        if (!text.empty()) {
          text += ' ';
        }
        text += "(" + std::to_string(pair.first + 1) + "," + std::to_string(pair.second + 1) + ")";
      }
      return text;
    };

    const IndexMapping expected2 = {{0, 1}, {2, 18}, {4, 13}, {6, 30}};
    const IndexMapping got2 = swap_pairs(find_op(ops2, "permutation"));
    add_check(1,
              "two-pair branch permutation swaps exactly the 1-based pairs " + one_based(expected2),
              got2 == expected2, got2 == expected2 ? "" : "got " + one_based(got2));

    double worst_literal2 = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const double da = rng.uniform(0.01 - kQuarterPi, 0.0);
      const double db = rng.uniform(0.01 - kQuarterPi, 0.0);
      const CoefficientProducts m = coefficient_products(standard_channels({da, db}));
      worst_literal2 = std::max(worst_literal2, verify_unitary(literal_filter_bipartite(m)));
    }
    add_check(2, "published two-pair filter is unitary across its assumed domain",
              worst_literal2 <= kUnitarityTolerance,
              "max deviation " + format_double("%.2e", worst_literal2) + " over 50 samples");

    // Receiver labels with message and sender registers pinned: the retained
    // slots every constructive filter in the protocol acts on.
    const std::vector<std::uint64_t> retained2 = {0, 2, 4, 6};
    const std::vector<std::uint64_t> retained3 = {4, 6, 12, 14, 36, 38, 44, 46};
    double worst_constructive = 0.0;
    const double bound = kQuarterPi - 0.01;
    for (int trial = 0; trial < 20; ++trial) {
      const CoefficientProducts m2 = coefficient_products(
          standard_channels({rng.uniform(-bound, bound), rng.uniform(-bound, bound)}));
      worst_constructive = std::max(
          worst_constructive, verify_unitary(build_filter(filter_plan_for(m2, retained2, 64), 64)));
      const CoefficientProducts m3 = coefficient_products(standard_channels(
          {rng.uniform(-bound, bound), rng.uniform(-bound, bound), rng.uniform(-bound, bound)}));
      worst_constructive =
          std::max(worst_constructive,
                   verify_unitary(build_filter(filter_plan_for(m3, retained3, 512), 512)));
    }
    add_check(3, "constructive filters are unitary for two and three pairs",
              worst_constructive <= kUnitarityTolerance,
              "max deviation " + format_double("%.2e", worst_constructive) + " over 40 samples");

    const IndexMapping expected3 = {{6, 71},   {12, 136}, {14, 203}, {36, 308},
                                    {38, 375}, {44, 440}, {46, 507}};
    const IndexMapping got3 = swap_pairs(find_op(ops3, "permutation"));
    add_check(4,
              "three-pair branch permutation swaps exactly the 1-based pairs " +
                  one_based(expected3),
              got3 == expected3, got3 == expected3 ? "" : "got " + one_based(got3));

    const CoefficientProducts m3spot = coefficient_products(spot3);
    const OperatorMatrix literal3 = literal_filter_tripartite(m3spot);
    const double defect = verify_unitary(literal3);
    const bool reproduced = defect > 0.1 &&
                            literal3.entry(16, 16) ==
                                Amp{m3spot.least_value / m3spot.values[3], 0.0} &&
                            literal3.entry(14, 14) == Amp{1.0, 0.0};
    add_check(5,
              "published three-pair filter transcription loses unitarity away from zero departure",
              reproduced,
              "deviation " + format_double("%.2e", defect) + " at -pi/12, misplaced diagonal kept");

    const double p2_analytic = analytic_success_probability(spot2);
    const double p3_analytic = analytic_success_probability(spot3);
    InputState probe2 = random_input(2, rng);
    InputState probe3 = random_input(3, rng);
    const TransferReport spot2_report = run_full_protocol(probe2, spot2);
    const TransferReport spot3_report = run_full_protocol(probe3, spot3);
    const bool spot_ok = std::abs(p2_analytic - 0.25) <= cfg.tolerance &&
                         std::abs(spot2_report.p_simulated - 0.25) <= cfg.tolerance &&
                         std::abs(p3_analytic - 0.125) <= cfg.tolerance &&
                         std::abs(spot3_report.p_simulated - 0.125) <= cfg.tolerance;
    add_check(6, "success probabilities at -pi/12 match the closed form "
                 "(two-pair 0.25, three-pair 0.125)",
              spot_ok, "");

    const TransferReport perfect2 =
        run_full_protocol(random_input(2, rng), standard_channels({0.0, 0.0}));
    const TransferReport perfect3 =
        run_full_protocol(random_input(3, rng), standard_channels({0.0, 0.0, 0.0}));
    const bool perfect_ok = std::abs(perfect2.p_simulated - 1.0) <= cfg.tolerance &&
                            std::abs(perfect3.p_simulated - 1.0) <= cfg.tolerance &&
                            perfect2.min_fidelity >= 1.0 - cfg.tolerance &&
                            perfect3.min_fidelity >= 1.0 - cfg.tolerance;
    add_check(7, "zero-departure transfer is certain with unit fidelity", perfect_ok, "");

    double lowest_p = 2.0;
    double highest_p = -1.0;
    for (int trial = 0; trial < 5; ++trial) {
      const TransferReport report = run_full_protocol(random_input(2, rng), spot2);
      lowest_p = std::min(lowest_p, report.p_simulated);
      highest_p = std::max(highest_p, report.p_simulated);
    }
    const double spread = highest_p - lowest_p;
    add_check(8, "success probability is independent of the message state",
              spread <= cfg.tolerance,
              "spread " + format_double("%.2e", spread) + " over 5 random inputs");

    bool roundtrip = true;
    for (const std::vector<NamedOperator>* ops : {&ops2, &ops3}) {
      for (const NamedOperator& named : *ops) {
        std::stringstream text;
        dump_operator(named.op, text);
        const OperatorMatrix parsed = parse_operator(text);
        if (parsed.dim() != named.op.dim() || parsed.entries() != named.op.entries()) {
          roundtrip = false;
        }
      }
    }
    add_check(9, "operator dump and parse round-trip exactly", roundtrip, "");

    std::string report;
    report += "belltransfer ";
    report += kVersion;
    report += " self-check (seed " + std::to_string(cfg.seed) + ", tolerance " +
              format_double("%.1e", cfg.tolerance) + ")\n\n";
    bool all_pass = true;
    for (const CheckLine& check : checks) {
      report += check.text + "\n";
      all_pass = all_pass && check.pass;
    }

    const std::vector<LedgerEntry>& ledger = full_ledger();
    report += "\ndiscrepancy ledger (" + std::to_string(ledger.size()) + " entries):\n";
    for (const LedgerEntry& entry : ledger) {
      report += "\n[" + entry.id + "] " + to_string(entry.severity) + "\n";
      report += "  where: " + entry.location + "\n";
      report += "  printed: " + entry.printed + "\n";
      report += "  derived: " + entry.derived + "\n";
    }

    if (cfg.dump_operators) {
      const std::filesystem::path directory = output_directory(cfg.out);
      std::vector<std::string> files = dump_operator_files(ops2, directory, "bipartite");
      const std::vector<std::string> more = dump_operator_files(ops3, directory, "tripartite");
      files.insert(files.end(), more.begin(), more.end());
      report += "\nwrote " + std::to_string(files.size()) + " operator files to " +
                directory.string() + "\n";
    }

    report += "\noverall: ";
    report += all_pass ? "PASS" : "FAIL";
    report += "\n";
    write_payload(cfg.out, out, report);
    return all_pass ? 0 : 2;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"probabilistic multi-qubit state transfer through imperfect correlated channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  // The config option lives on the root because only the root app processes
  // config files; fallthrough lets it be spelled after the subcommand name.
  // Keys sit in a [subcommand] section (or dotted: transfer.seed=7).
  app.fallthrough();
  app.set_config("--config", "", "key=value defaults file, sectioned by subcommand; flags win");

  TransferConfig transfer_cfg;
  TraceConfig trace_cfg;
  SweepConfig sweep_cfg;
  VerifyConfig verify_cfg;

  CLI::App* transfer = app.add_subcommand(
      "transfer", "run every measurement branch and report probabilities and fidelity");
  transfer->add_option("--k", transfer_cfg.k, "message qubit count")
      ->check(CLI::Range(2, 3))
      ->capture_default_str();
  transfer
      ->add_option("--delta", transfer_cfg.deltas,
                   "channel departures in radians, one per pair")
      ->delimiter(',')
      ->required();
  transfer->add_option("--input", transfer_cfg.input,
                       "message coefficients, comma-separated re or re:im");
  transfer->add_option("--seed", transfer_cfg.seed, "seed for the random message state")
      ->capture_default_str();
  transfer->add_option("--out", transfer_cfg.out, "write the JSON report here instead of stdout");

  CLI::App* trace =
      app.add_subcommand("trace", "walk the first measurement branch stage by stage");
  trace
      ->add_option("--delta", trace_cfg.deltas,
                   "channel departures in radians, two or three values")
      ->delimiter(',')
      ->required();
  trace->add_option("--input", trace_cfg.input,
                    "message coefficients, comma-separated re or re:im");
  trace->add_option("--seed", trace_cfg.seed, "seed for the random message state")
      ->capture_default_str();
  trace->add_option("--out", trace_cfg.out, "write the JSON report here instead of stdout");
  trace->add_flag("--dump-operators", trace_cfg.dump_operators,
                  "write the staged operator matrices next to the report");

  CLI::App* sweep =
      app.add_subcommand("sweep", "tabulate success probability over a departure grid");
  sweep->add_option("--k", sweep_cfg.k, "channel pair count")
      ->check(CLI::Range(2, 3))
      ->capture_default_str();
  sweep->add_option("--grid", sweep_cfg.grid,
                    "min:max:steps per axis, comma-separated; one axis is shared by all");
  sweep->add_option("--input", sweep_cfg.input,
                    "fixed message coefficients, or 'analytic' / 'random'");
  sweep->add_option("--seed", sweep_cfg.seed, "seed for per-point random messages")
      ->capture_default_str();
  sweep->add_option("--out", sweep_cfg.out, "write the CSV here instead of stdout");

  CLI::App* verify = app.add_subcommand(
      "verify", "cross-check the published operator tables and print the discrepancy ledger");
  verify->add_option("--seed", verify_cfg.seed, "seed for the sampled departures and messages")
      ->capture_default_str();
  verify->add_option("--tolerance", verify_cfg.tolerance, "numeric acceptance tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--out", verify_cfg.out, "write the report here instead of stdout");
  verify->add_flag("--dump-operators", verify_cfg.dump_operators,
                   "write all staged operator matrices at the spot departures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& parse_error) {
    const int code = app.exit(parse_error, out, err);
    return code == 0 ? 0 : 1;
  }

  if (transfer->parsed()) {
    return cmd_transfer(transfer_cfg, out, err);
  }
  if (trace->parsed()) {
    return cmd_trace(trace_cfg, out, err);
  }
  if (sweep->parsed()) {
    return cmd_sweep(sweep_cfg, out, err);
  }
  return cmd_verify(verify_cfg, out, err);
}

}  // namespace belltransfer
