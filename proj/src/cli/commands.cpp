#include "entombed/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "entombed/cpu_oracle.hpp"
#include "entombed/fault.hpp"
#include "entombed/maze_analysis.hpp"
#include "entombed/mazegen.hpp"
#include "entombed/prng.hpp"
#include "entombed/romscan.hpp"

namespace entombed::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hex_word(prng::Word w) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s = "0x";
  for (int shift = 12; shift >= 0; shift -= 4) s.push_back(kHex[(w >> shift) & 0xF]);
  return s;
}

std::string hex_byte(std::uint8_t b) {
  static constexpr char kHex[] = "0123456789abcdef";
  return {'0', 'x', kHex[b >> 4], kHex[b & 0xF]};
}

// Accepts decimal or 0x-prefixed hex in [0, 65535].
prng::Word parse_word(const std::string& text, const char* flag) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used, 0);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": not a number: " + text);
  }
  if (used != text.size() || v > 0xFFFF || text.front() == '-') {
    throw UsageError(std::string(flag) + ": expected a 16-bit value, got " + text);
  }
  return static_cast<prng::Word>(v);
}

void emit(std::ostream& out, const std::string& command, json parameters, json results) {
  json report;
  report["command"] = command;
  report["parameters"] = std::move(parameters);
  report["results"] = std::move(results);
  report["version"] = version();
  out << report.dump(2) << '\n';
}

// maze ----------------------------------------------------------------------

struct MazeOptions {
  std::string seed = "1";
  long long rows = 60;
  std::string source = "model";
  std::string format = "ascii";
};

int cmd_maze(const MazeOptions& o, std::ostream& out) {
  const prng::Word seed = parse_word(o.seed, "--seed");
  if (o.rows < 1) throw UsageError("--rows must be at least 1");

  std::unique_ptr<maze::RandomBitSource> source;
  if (o.source == "model") {
    source = std::make_unique<maze::ModelBitSource>(seed);
  } else {
    source = std::make_unique<maze::ConstantBitSource>(0);
  }
  const maze::Maze m = maze::generate_maze(*source, static_cast<std::size_t>(o.rows));

  if (o.format == "ascii") {
    for (maze::Row r : m.rows) out << maze::render_row(r) << '\n';
    return kSuccess;
  }

  json traces = json::array();
  for (const auto& t : m.traces) {
    traces.push_back({
        {"left_bit", t.left_bit},
        {"right_bit", t.right_bit},
        {"mid_bits", t.mid_bits},
        {"row_before_postprocess", t.row_before_postprocess},
        {"row_after_postprocess", t.row_after_postprocess},
        {"postprocess", maze::to_string(t.postprocess_fired)},
    });
  }
  emit(out, "maze",
       {{"seed", seed}, {"rows", o.rows}, {"source", o.source}, {"format", o.format}},
       {{"rows", m.rows}, {"traces", std::move(traces)}});
  return kSuccess;
}

// prng ----------------------------------------------------------------------

json survey_results() {
  const auto buggy = prng::max_distinct_over_canonical_seeds(65536, prng::Generator::Buggy);
  const auto correct = prng::max_distinct_over_canonical_seeds(65536, prng::Generator::Correct);
  json per_seed = json::array();
  std::size_t returning = 0;
  for (const auto& s : buggy.per_seed) {
    per_seed.push_back(s.distinct_generated);
    if (s.returns_to_seed) ++returning;
  }
  return {
      {"steps_per_seed", 65536},
      {"max_distinct", buggy.max_distinct},
      {"argmax_seed", hex_word(buggy.argmax_seed)},
      {"max_distinct_inclusive", buggy.max_distinct_inclusive},
      {"argmax_seed_inclusive", hex_word(buggy.argmax_seed_inclusive)},
      {"seeds_returning_to_seed", returning},
      {"distinct_per_seed", std::move(per_seed)},
      {"correct_max_distinct", correct.max_distinct},
  };
}

json compare_results() {
  const auto report = prng::compare_all_steps();
  std::size_t low_equal = 0;
  std::map<std::string, std::size_t> deltas;
  for (const auto& m : report.mismatches) {
    if (m.low_bytes_equal) ++low_equal;
    ++deltas[hex_byte(m.high_delta_mod256)];
  }
  const bool off_by_one = deltas.size() <= 2 && (deltas.count("0x01") + deltas.count("0xff")) ==
                                                    deltas.size();
  return {
      {"states", report.states},
      {"equal_count", report.equal_count},
      {"fraction_equal", report.fraction_equal},
      {"mismatch_count", report.mismatches.size()},
      {"mismatches_with_equal_low_byte", low_equal},
      {"high_delta_histogram", deltas},
      {"all_mismatches_off_by_one", off_by_one && low_equal == report.mismatches.size()},
  };
}

json oracle_check_results(bool& all_pass) {
  auto check = [](cpu::IncCarry inc, auto reference) {
    std::size_t mismatches = 0;
    json first = nullptr;
    for (unsigned s = 0; s < 65536; ++s) {
      const auto w = static_cast<prng::Word>(s);
      if (cpu::oracle_prng_step(w, inc) != reference(w)) {
        if (mismatches++ == 0) first = hex_word(w);
      }
    }
    return json{{"states", 65536}, {"mismatches", mismatches}, {"first_mismatch", first},
                {"pass", mismatches == 0}};
  };
  json buggy = check(cpu::IncCarry::Untouched, prng::buggy_step);
  json fixed = check(cpu::IncCarry::SetOnWrap, prng::correct_step);
  all_pass = buggy["pass"].get<bool>() && fixed["pass"].get<bool>();
  return {{"inc_untouched_vs_buggy_step", std::move(buggy)},
          {"inc_sets_carry_vs_correct_step", std::move(fixed)}};
}

int cmd_prng(const std::string& mode, std::ostream& out) {
  if (mode == "survey") {
    emit(out, "prng", {{"mode", mode}}, survey_results());
    return kSuccess;
  }
  if (mode == "compare") {
    emit(out, "prng", {{"mode", mode}}, compare_results());
    return kSuccess;
  }
  bool pass = false;
  json results = oracle_check_results(pass);
  emit(out, "prng", {{"mode", mode}}, std::move(results));
  return pass ? kSuccess : kRuntimeFailure;
}

// scan ----------------------------------------------------------------------

struct ScanOptions {
  std::string dir;
  std::string file;
  std::string signature = "builtin";
  bool no_rts = false;
  std::string format = "json";
};

json hit_json(const romscan::ScanHit& h) {
  json bindings = json::object();
  for (const auto& [name, v] : h.bindings) bindings[name] = hex_byte(v);
  return {{"source", h.source},
          {"offset", h.offset},
          {"offset_hex", hex_word(static_cast<prng::Word>(h.offset & 0xFFFF))},
          {"bindings", std::move(bindings)},
          {"distinct_bindings", h.distinct_bindings},
          {"consecutive_bindings", h.consecutive_bindings}};
}

int cmd_scan(const ScanOptions& o, std::ostream& out, std::ostream& err) {
  if (o.dir.empty() == o.file.empty()) throw UsageError("give exactly one of --dir or --file");

  romscan::SignatureTemplate sig = romscan::prng_signature(!o.no_rts);
  if (o.signature != "builtin") {
    std::ifstream in(o.signature);
    if (!in) {
      err << "error: cannot read signature file " << o.signature << '\n';
      return kRuntimeFailure;
    }
    std::stringstream text;
    text << in.rdbuf();
    try {
      sig = romscan::parse_signature(text.str());
    } catch (const Fault& f) {
      err << "error: " << o.signature << ": " << f.what() << '\n';
      return kRuntimeFailure;
    }
  }

  std::vector<fs::path> paths;
  std::error_code ec;
  if (!o.dir.empty()) {
    if (!fs::is_directory(o.dir, ec)) {
      err << "error: not a readable directory: " << o.dir << '\n';
      return kRuntimeFailure;
    }
    try {
      paths = romscan::list_corpus(o.dir);
    } catch (const fs::filesystem_error& e) {
      err << "error: " << e.what() << '\n';
      return kRuntimeFailure;
    }
  } else {
    if (!fs::is_regular_file(o.file, ec)) {
      err << "error: not a readable file: " << o.file << '\n';
      return kRuntimeFailure;
    }
    paths.emplace_back(o.file);
  }

  const romscan::CorpusReport report = romscan::scan_corpus(paths, sig);
  json hits = json::array();
  for (const auto& h : report.hits) hits.push_back(hit_json(h));
  json params = {{"signature", o.signature}, {"include_rts", !o.no_rts}, {"format", o.format}};
  params[o.dir.empty() ? "file" : "dir"] = o.dir.empty() ? o.file : o.dir;
  emit(out, "scan", std::move(params),
       {{"files_scanned", report.files_scanned.size()},
        {"files", report.files_scanned},
        {"hits", std::move(hits)},
        {"hit_count", report.hits.size()},
        {"checksums", report.checksums},
        {"errors", report.errors},
        {"signature", romscan::format_signature(sig)}});
  return kSuccess;
}

// stats ---------------------------------------------------------------------

struct StatsOptions {
  long long mazes = 5000;
  long long rows = 60;
  std::string seed = "1";
};

int cmd_stats(const StatsOptions& o, std::ostream& out) {
  if (o.mazes < 1) throw UsageError("--mazes must be at least 1");
  if (o.rows < 1) throw UsageError("--rows must be at least 1");
  const prng::Word seed = parse_word(o.seed, "--seed");
  const maze::PatternStats s = maze::maze_survey(static_cast<std::size_t>(o.mazes),
                                                 static_cast<std::size_t>(o.rows), seed);
  emit(out, "stats", {{"mazes", o.mazes}, {"rows", o.rows}, {"seed", seed}},
       {{"mazes_generated", s.mazes_generated},
        {"rows_generated", s.rows_generated},
        {"condition1_fires", s.condition1_fires},
        {"condition2_fires", s.condition2_fires},
        {"unsolvable_count", s.unsolvable_count},
        {"unsolvable_fraction", s.unsolvable_fraction()},
        {"table_entries_used", s.table_entries_used}});
  return kSuccess;
}

}  // namespace

const char* version() noexcept { return ENTOMBED_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entombed maze, PRNG and ROM-signature toolkit", "entombed"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  MazeOptions maze_opts;
  auto* maze_cmd = app.add_subcommand("maze", "Generate and render a maze");
  maze_cmd->add_option("--seed", maze_opts.seed, "Initial PRNG word (decimal or 0x hex)");
  maze_cmd->add_option("--rows", maze_opts.rows, "Number of rows")->capture_default_str();
  maze_cmd->add_option("--source", maze_opts.source, "Random bit source")
      ->check(CLI::IsMember({"model", "zeros"}))
      ->capture_default_str();
  maze_cmd->add_option("--format", maze_opts.format, "Output format")
      ->check(CLI::IsMember({"ascii", "json"}))
      ->capture_default_str();

  std::string prng_mode;
  auto* prng_cmd = app.add_subcommand("prng", "Analyse the game's PRNG");
  prng_cmd->add_option("--mode", prng_mode, "Analysis to run")
      ->required()
      ->check(CLI::IsMember({"survey", "compare", "oracle-check"}));

  ScanOptions scan_opts;
  auto* scan_cmd = app.add_subcommand("scan", "Search ROM images for the PRNG routine");
  auto* dir_opt = scan_cmd->add_option("--dir", scan_opts.dir, "Directory to scan recursively");
  auto* file_opt = scan_cmd->add_option("--file", scan_opts.file, "Single file to scan");
  dir_opt->excludes(file_opt);
  scan_cmd->add_option("--signature", scan_opts.signature, "'builtin' or a signature file")
      ->capture_default_str();
  scan_cmd->add_flag("--no-rts", scan_opts.no_rts, "Drop the trailing RTS from the builtin pattern");
  scan_cmd->add_option("--format", scan_opts.format, "Output format")
      ->check(CLI::IsMember({"json"}))
      ->capture_default_str();

  StatsOptions stats_opts;
  auto* stats_cmd = app.add_subcommand("stats", "Postprocessing and solvability survey");
  stats_cmd->add_option("--mazes", stats_opts.mazes, "Number of mazes")->capture_default_str();
  stats_cmd->add_option("--rows", stats_opts.rows, "Rows per maze")->capture_default_str();
  stats_cmd->add_option("--seed", stats_opts.seed, "Survey seed (decimal or 0x hex)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (*maze_cmd) return cmd_maze(maze_opts, out);
    if (*prng_cmd) return cmd_prng(prng_mode, out);
    if (*scan_cmd) return cmd_scan(scan_opts, out, err);
    if (*stats_cmd) return cmd_stats(stats_opts, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}

}  // namespace entombed::cli
