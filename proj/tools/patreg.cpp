// Command-line front end: validate table dumps, run indicators over a cohort,
// generate synthetic fixtures, and cross-check the indexed pipeline against
// the naive evaluator. All computation lives in the library; this file only
// wires flags to library calls and renders reports.
//
// Exit codes: 0 success, 1 internal error, 2 validation failure,
// 3 equivalence mismatch, 64 usage or I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "patreg/indicators.hpp"
#include "patreg/ingest.hpp"
#include "patreg/oracle.hpp"
#include "patreg/render.hpp"
#include "patreg/scenarios.hpp"
#include "patreg/store.hpp"
#include "patreg/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitUsage = 64;

struct CohortFlags {
  std::string auth = "EP";
  std::vector<std::string> kinds = {"A", "W"};
  int year_from = 2000;
  int year_to = 2010;
  std::string ipc_prefix = "F03D";

  void attach(CLI::App* cmd) {
    cmd->add_option("--auth", auth, "Filing authority code");
    cmd->add_option("--kinds", kinds, "Application kind codes")->delimiter(',');
    cmd->add_option("--year-from", year_from, "First filing year (inclusive)");
    cmd->add_option("--year-to", year_to, "Last filing year (inclusive)");
    cmd->add_option("--ipc-prefix", ipc_prefix, "IPC symbol prefix");
  }

  patreg::CohortSpec spec() const { return {auth, kinds, year_from, year_to, ipc_prefix}; }
};

void attach_table_file_flag(CLI::App* cmd, std::vector<std::string>& overrides) {
  cmd->add_option("--table-file", overrides,
                  "Per-table file override, e.g. reg101_appln=apps.txt (repeatable)");
}

/// Parses `table=file` pairs; throws invalid_argument on unknown tables.
std::map<patreg::TableId, std::string> parse_table_overrides(
    const std::vector<std::string>& overrides) {
  std::map<patreg::TableId, std::string> out;
  for (const auto& entry : overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size())
      throw std::invalid_argument("--table-file expects table=file, got '" + entry + "'");
    const std::string table = entry.substr(0, eq);
    bool known = false;
    for (patreg::TableId t : patreg::k_all_tables) {
      if (patreg::table_name(t) == table) {
        out[t] = entry.substr(eq + 1);
        known = true;
        break;
      }
    }
    if (!known) throw std::invalid_argument("--table-file names unknown table '" + table + "'");
  }
  return out;
}

void print_issues(const std::vector<patreg::ValidationIssue>& issues, std::size_t limit,
                  const char* label) {
  std::size_t shown = 0;
  for (const auto& issue : issues) {
    if (shown++ == limit) {
      std::cout << "  ... " << issues.size() - limit << " more " << label << "\n";
      break;
    }
    std::cout << "  " << patreg::table_name(issue.table) << " row " << issue.row << " ["
              << patreg::to_string(issue.kind) << "] " << issue.message << "\n";
  }
}

int run_validate(const std::string& dir, bool sentinel,
                 const std::vector<std::string>& table_files) {
  patreg::DatasetManifest manifest;
  manifest.directory = dir;
  manifest.mode = patreg::ValidationMode::Lenient;  // enumerate everything
  manifest.null_date_sentinel = sentinel;
  manifest.file_overrides = parse_table_overrides(table_files);

  auto [dataset, report] = patreg::load_dataset(manifest);
  auto links = patreg::validate_links(dataset);
  const std::size_t total = report.violations.size() + links.violations.size();

  std::cout << total << " violations, " << report.warnings.size() << " warnings\n";
  for (const auto& [kind, count] : report.counts_by_kind())
    std::cout << "  " << patreg::to_string(kind) << ": " << count << "\n";
  for (const auto& [kind, count] : links.counts_by_kind())
    std::cout << "  " << patreg::to_string(kind) << ": " << count << "\n";
  print_issues(report.violations, 50, "violations");
  print_issues(links.violations, 50, "violations");
  print_issues(report.warnings, 20, "warnings");
  return total == 0 ? kExitOk : kExitValidation;
}

std::string file_extension(patreg::OutputFormat format) {
  return format == patreg::OutputFormat::Csv ? ".csv" : ".jsonl";
}

int run_indicators(const std::string& dir, const CohortFlags& cohort_flags,
                   const std::vector<std::string>& indicator_names, bool all, bool lenient,
                   bool sentinel, const std::string& mode_name,
                   const std::string& ordering_name, const std::string& steps_mode_name,
                   const std::string& appr_suffix, const std::vector<std::string>& appr_codes,
                   const std::vector<std::string>& challenge_codes,
                   const std::string& format_name, const std::string& out_dir,
                   const std::vector<std::string>& table_files) {
  std::vector<patreg::IndicatorKind> kinds;
  if (all) {
    kinds = {patreg::IndicatorKind::Cohort,
             patreg::IndicatorKind::BackwardCitations,
             patreg::IndicatorKind::LicenseCountries,
             patreg::IndicatorKind::ApplicantSets,
             patreg::IndicatorKind::DaysToExamination,
             patreg::IndicatorKind::FirstRepresentative,
             patreg::IndicatorKind::ValidityChallenges,
             patreg::IndicatorKind::ValidatedStates,
             patreg::IndicatorKind::AvgProcedureSteps};
  }
  for (const auto& name : indicator_names) {
    auto kind = patreg::parse_indicator_name(name);
    if (!kind) {
      std::cerr << "unknown indicator: " << name << "\n";
      return kExitUsage;
    }
    kinds.push_back(*kind);
  }
  if (kinds.empty()) {
    std::cerr << "nothing selected: pass --all or --indicator <name>\n";
    return kExitUsage;
  }

  auto format = patreg::parse_output_format(format_name);
  if (!format) {
    std::cerr << "unknown format: " << format_name << "\n";
    return kExitUsage;
  }

  patreg::IndicatorParams params;
  params.cohort_spec = cohort_flags.spec();
  params.mode = mode_name == "paper-compat" ? patreg::OutputMode::PaperCompat
                                            : patreg::OutputMode::Default;
  params.ordering = ordering_name == "paper-compat" ? patreg::BulletinOrdering::PaperCompat
                                                    : patreg::BulletinOrdering::Numeric;
  params.step_mode = steps_mode_name == "normalized" ? patreg::StepAverageMode::Normalized
                                                     : patreg::StepAverageMode::PaperFaithful;
  params.appr_rule.suffix = appr_suffix;
  params.appr_rule.explicit_codes = appr_codes;
  if (!challenge_codes.empty()) params.challenge_codes = challenge_codes;

  patreg::DatasetManifest manifest;
  manifest.directory = dir;
  manifest.mode = lenient ? patreg::ValidationMode::Lenient : patreg::ValidationMode::Strict;
  manifest.null_date_sentinel = sentinel;
  manifest.file_overrides = parse_table_overrides(table_files);
  auto loaded = patreg::load_dataset(manifest);
  patreg::IndexedStore store = patreg::build_store(std::move(loaded.dataset));
  const patreg::Cohort cohort = patreg::select_cohort(store, params.cohort_spec);

  const bool to_files = !out_dir.empty();
  if (to_files) std::filesystem::create_directories(out_dir);

  for (patreg::IndicatorKind kind : kinds) {
    auto output = patreg::evaluate_indexed(store, kind, cohort, params);
    if (kind == patreg::IndicatorKind::DaysToExamination)
      for (const auto& warning : std::get<patreg::ExamLagResult>(output).warnings)
        std::cerr << "warning: " << warning << "\n";
    const std::string bytes = patreg::render_output(kind, output, *format, params.mode);
    if (to_files) {
      patreg::write_file_atomic(
          std::filesystem::path(out_dir) /
              (std::string(patreg::indicator_name(kind)) + file_extension(*format)),
          bytes);
    } else {
      std::cout << "# " << patreg::indicator_name(kind) << "\n" << bytes;
    }
  }

  const std::string skipped = patreg::render_skipped_members_csv(patreg::skipped_members(cohort));
  if (to_files)
    patreg::write_file_atomic(std::filesystem::path(out_dir) / "skipped_members.csv", skipped);
  else
    std::cout << "# skipped_members\n" << skipped;
  return kExitOk;
}

int run_generate(const std::string& out_dir, const patreg::GeneratorConfig& cfg,
                 bool with_scenarios) {
  patreg::Dataset dataset = patreg::generate_fixture(cfg);
  if (with_scenarios) dataset = patreg::embed_scenarios(std::move(dataset), patreg::reference_scenarios());
  patreg::write_dataset(dataset, out_dir);
  std::cout << "wrote " << dataset.register_applications.size()
            << " register applications to " << out_dir << "\n";
  return kExitOk;
}

struct CheckCase {
  patreg::IndicatorKind kind;
  patreg::IndicatorParams params;
  std::string variant;
};

std::vector<CheckCase> check_cases(const patreg::CohortSpec& spec) {
  patreg::IndicatorParams base;
  base.cohort_spec = spec;
  std::vector<CheckCase> cases;
  for (patreg::IndicatorKind kind : patreg::k_all_indicator_kinds)
    cases.push_back({kind, base, "default"});
  for (patreg::IndicatorKind kind :
       {patreg::IndicatorKind::BackwardCitations, patreg::IndicatorKind::LicenseCountries,
        patreg::IndicatorKind::ApplicantSets, patreg::IndicatorKind::ValidityChallenges,
        patreg::IndicatorKind::AmendmentKinds, patreg::IndicatorKind::ValidatedStates}) {
    auto params = base;
    params.mode = patreg::OutputMode::PaperCompat;
    cases.push_back({kind, params, "paper-compat"});
  }
  {
    auto params = base;
    params.ordering = patreg::BulletinOrdering::PaperCompat;
    cases.push_back({patreg::IndicatorKind::FirstRepresentative, params, "concat-ordering"});
  }
  {
    auto params = base;
    params.step_mode = patreg::StepAverageMode::Normalized;
    cases.push_back({patreg::IndicatorKind::AvgProcedureSteps, params, "normalized"});
  }
  return cases;
}

/// Prints the first differing rendered line of two tables.
void print_first_diff(const std::string& indexed, const std::string& naive) {
  std::size_t line_start = 0;
  std::size_t line_no = 1;
  const std::size_t n = std::min(indexed.size(), naive.size());
  std::size_t i = 0;
  while (i < n && indexed[i] == naive[i]) {
    if (indexed[i] == '\n') {
      line_start = i + 1;
      ++line_no;
    }
    ++i;
  }
  auto line_of = [&](const std::string& s) {
    const std::size_t end = s.find('\n', line_start);
    return s.substr(line_start, end == std::string::npos ? std::string::npos
                                                         : end - line_start);
  };
  std::cerr << "  first diff at line " << line_no << "\n";
  std::cerr << "    indexed: " << line_of(indexed) << "\n";
  std::cerr << "    naive:   " << line_of(naive) << "\n";
}

int check_one(const patreg::Dataset& dataset, const patreg::CohortSpec& spec,
              const std::string& label) {
  patreg::IndexedStore store = patreg::build_store(dataset);
  const patreg::Cohort indexed_cohort = patreg::select_cohort(store, spec);
  const patreg::Cohort naive_cohort = patreg::oracle::select_cohort(dataset, spec);
  for (const auto& check : check_cases(spec)) {
    auto indexed = patreg::evaluate_indexed(store, check.kind, indexed_cohort, check.params);
    auto naive = patreg::oracle::evaluate_naive(dataset, check.kind, naive_cohort, check.params);
    if (indexed == naive) continue;
    std::cerr << "mismatch: " << patreg::indicator_name(check.kind) << " (" << check.variant
              << ") on " << label << "\n";
    print_first_diff(patreg::render_output_csv(check.kind, indexed, check.params.mode),
                     patreg::render_output_csv(check.kind, naive, check.params.mode));
    return kExitMismatch;
  }
  return kExitOk;
}

int run_check(const std::string& dir, int seeds, bool sentinel,
              const CohortFlags& cohort_flags, const std::vector<std::string>& table_files) {
  const patreg::CohortSpec spec = cohort_flags.spec();
  patreg::DatasetManifest manifest;
  manifest.directory = dir;
  manifest.mode = patreg::ValidationMode::Strict;
  manifest.null_date_sentinel = sentinel;
  manifest.file_overrides = parse_table_overrides(table_files);
  auto loaded = patreg::load_dataset(manifest);
  if (int rc = check_one(loaded.dataset, spec, dir); rc != kExitOk) return rc;

  for (int s = 1; s <= seeds; ++s) {
    patreg::GeneratorConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(s);
    cfg.n_applications = 40 + (s * 83) % 461;
    if (int rc = check_one(patreg::generate_fixture(cfg), spec,
                           "seed " + std::to_string(s));
        rc != kExitOk)
      return rc;
  }
  std::cout << "ok: indexed and naive evaluators agree on " << dir << " and " << seeds
            << " generated fixtures\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patreg: register-dump analytics, fixtures and cross-checks"};
  app.require_subcommand(1);

  // validate
  auto* validate = app.add_subcommand("validate", "Check a dump for invariant violations");
  std::string validate_dir;
  bool validate_sentinel = false;
  validate->add_option("dir", validate_dir, "Dataset directory")
      ->envname("PATREG_DATA_DIR")
      ->required();
  validate->add_flag("--null-date-sentinel", validate_sentinel,
                     "Treat 9999-12-31 dates as absent");
  std::vector<std::string> validate_table_files;
  attach_table_file_flag(validate, validate_table_files);

  // indicators
  auto* indicators = app.add_subcommand("indicators", "Compute indicator tables");
  std::string ind_dir;
  CohortFlags ind_cohort;
  std::vector<std::string> ind_names;
  bool ind_all = false;
  bool ind_lenient = false;
  bool ind_sentinel = false;
  std::string ind_mode = "default";
  std::string ind_ordering = "numeric";
  std::string ind_steps_mode = "faithful";
  std::string ind_appr_suffix = "APPR";
  std::vector<std::string> ind_appr_codes;
  std::vector<std::string> ind_challenge_codes;
  std::string ind_format = "csv";
  std::string ind_out;
  indicators->add_option("dir", ind_dir, "Dataset directory")
      ->envname("PATREG_DATA_DIR")
      ->required();
  ind_cohort.attach(indicators);
  indicators->add_option("--indicator", ind_names, "Indicator name (repeatable)");
  indicators->add_flag("--all", ind_all, "The cohort plus the eight reference tables");
  indicators->add_flag("--lenient", ind_lenient, "Drop and report bad rows instead of failing");
  indicators->add_flag("--null-date-sentinel", ind_sentinel, "Treat 9999-12-31 dates as absent");
  indicators->add_option("--mode", ind_mode, "default | paper-compat")
      ->check(CLI::IsMember({"default", "paper-compat"}));
  indicators->add_option("--ordering", ind_ordering, "numeric | paper-compat bulletin ordering")
      ->check(CLI::IsMember({"numeric", "paper-compat"}));
  indicators->add_option("--steps-mode", ind_steps_mode, "faithful | normalized step average")
      ->check(CLI::IsMember({"faithful", "normalized"}));
  indicators->add_option("--appr-suffix", ind_appr_suffix, "Applicant-change event suffix");
  indicators->add_option("--appr-codes", ind_appr_codes,
                         "Explicit applicant-change codes (overrides the suffix)")
      ->delimiter(',');
  indicators->add_option("--challenge-codes", ind_challenge_codes,
                         "Validity-challenge event codes")
      ->delimiter(',');
  indicators->add_option("--format", ind_format, "csv | jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  indicators->add_option("--out", ind_out, "Output directory (stdout when omitted)");
  std::vector<std::string> ind_table_files;
  attach_table_file_flag(indicators, ind_table_files);

  // generate
  auto* generate = app.add_subcommand("generate", "Write a deterministic synthetic fixture");
  patreg::GeneratorConfig gen_cfg;
  std::string gen_out;
  bool gen_scenarios = false;
  generate->add_option("--out", gen_out, "Destination directory")->required();
  generate->add_option("--seed", gen_cfg.seed, "Generator seed");
  generate->add_option("--n", gen_cfg.n_applications, "Number of register applications");
  generate->add_option("--year-from", gen_cfg.year_from, "First filing year");
  generate->add_option("--year-to", gen_cfg.year_to, "Last filing year");
  generate->add_option("--p-core-missing", gen_cfg.p_core_missing,
                       "Share with no core counterpart (appln_id = 0)");
  generate->add_option("--p-wind", gen_cfg.p_wind_ipc, "Share tagged with the cohort subclass");
  generate->add_option("--p-citations", gen_cfg.p_citations, "Share with citation rows");
  generate->add_option("--p-license", gen_cfg.p_license, "Share with license rows");
  generate->add_option("--p-grant", gen_cfg.p_grant, "Share granted");
  generate->add_option("--p-challenge", gen_cfg.p_challenge, "Share challenged after grant");
  generate->add_option("--p-transfer", gen_cfg.p_transfer, "Share with applicant changes");
  generate->add_option("--p-pgfp", gen_cfg.p_pgfp, "Share with post-grant fee rows");
  generate->add_option("--p-examination", gen_cfg.p_examination,
                       "Share with a first-examination event");
  generate->add_option("--p-representative", gen_cfg.p_representative,
                       "Share with representative rows");
  generate->add_option("--states", gen_cfg.member_states, "Member-state codes")->delimiter(',');
  generate->add_flag("--with-scenarios", gen_scenarios, "Embed the reference scenarios");

  // check
  auto* check = app.add_subcommand("check", "Compare indexed results against the naive evaluator");
  std::string check_dir;
  int check_seeds = 5;
  bool check_sentinel = false;
  CohortFlags check_cohort;
  check->add_option("dir", check_dir, "Dataset directory")
      ->envname("PATREG_DATA_DIR")
      ->required();
  check->add_option("--seeds", check_seeds, "Generated fixtures to sweep")
      ->check(CLI::NonNegativeNumber);
  check->add_flag("--null-date-sentinel", check_sentinel, "Treat 9999-12-31 dates as absent");
  check_cohort.attach(check);
  std::vector<std::string> check_table_files;
  attach_table_file_flag(check, check_table_files);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed())
      return run_validate(validate_dir, validate_sentinel, validate_table_files);
    if (indicators->parsed())
      return run_indicators(ind_dir, ind_cohort, ind_names, ind_all, ind_lenient, ind_sentinel,
                            ind_mode, ind_ordering, ind_steps_mode, ind_appr_suffix,
                            ind_appr_codes, ind_challenge_codes, ind_format, ind_out,
                            ind_table_files);
    if (generate->parsed()) return run_generate(gen_out, gen_cfg, gen_scenarios);
    if (check->parsed())
      return run_check(check_dir, check_seeds, check_sentinel, check_cohort,
                       check_table_files);
  } catch (const patreg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const patreg::LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
