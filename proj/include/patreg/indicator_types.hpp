#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patreg/date.hpp"
#include "patreg/model.hpp"

namespace patreg {

/// Cohort filter: authority + kind codes + inclusive filing-year window +
/// IPC symbol prefix. Defaults select EP direct/PCT wind-motor filings.
struct CohortSpec {
  std::string authority = "EP";
  std::vector<std::string> kinds = {"A", "W"};
  int year_from = 2000;
  int year_to = 2010;
  std::string ipc_prefix = "F03D";
};

struct CohortMember {
  ApplnId appln_id{};
  RegisterId register_id{};  // 0 = no register counterpart (member is skipped)
  friend bool operator==(const CohortMember&, const CohortMember&) = default;
};

/// Distinct matching applications, ascending appln_id.
struct Cohort {
  std::vector<CohortMember> members;
  friend bool operator==(const Cohort&, const Cohort&) = default;
};

/// Zero-row policy. Default keeps every resolved cohort member (zeros and
/// empties included); PaperCompat reproduces the reference inner joins, which
/// silently drop applications without qualifying rows.
enum class OutputMode { Default, PaperCompat };

/// How the earliest bulletin is chosen. Numeric compares (year, nr) as
/// integers; PaperCompat reproduces min(concat(year, nr)), which is
/// lexicographic and mis-orders weeks 1-9 against 10+.
enum class BulletinOrdering { Numeric, PaperCompat };

/// PaperFaithful reproduces the reference step average, whose join counts
/// (step x latest-applicant-row) pairs; Normalized counts each application's
/// steps once per distinct applicant name.
enum class StepAverageMode { PaperFaithful, Normalized };

/// Events counting as applicant-change signals: an explicit code list when
/// given, otherwise a code-suffix match.
struct ApprRule {
  std::string suffix = "APPR";
  std::vector<std::string> explicit_codes;  // empty = use the suffix
};

inline const std::vector<std::string>& default_validity_challenge_codes() {
  static const std::vector<std::string> codes = {
      "0008299OPPO", "0009260",     "EPIDOSCLIM1", "EPIDOSCRVR1",
      "EPIDOSCRVR6", "EPIDOSNLIM1", "EPIDOSNRVR1", "EPIDOSNRVR6",
  };
  return codes;
}

// ---------------------------------------------------------------------------
// Result rows

struct CountRow {
  RegisterId id{};
  ApplnId appln_id{};
  std::int64_t value{};
  friend bool operator==(const CountRow&, const CountRow&) = default;
};

struct LicenseCoverageRow {
  RegisterId id{};
  ApplnId appln_id{};
  std::int64_t nb_countries{};
  bool has_all_designation{};  // countries of an "all" license are NOT expanded
  friend bool operator==(const LicenseCoverageRow&, const LicenseCoverageRow&) = default;
};

struct TransferSignalsRow {
  RegisterId id{};
  ApplnId appln_id{};
  std::int64_t n_applicant_sets{};
  std::int64_t n_distinct_customer_ids{};
  std::int64_t n_appr_events{};
  friend bool operator==(const TransferSignalsRow&, const TransferSignalsRow&) = default;
};

struct ExamLagRow {
  RegisterId id{};
  ApplnId appln_id{};
  Date filing_date{};
  Date exam_date{};
  std::int64_t days{};
  friend bool operator==(const ExamLagRow&, const ExamLagRow&) = default;
};

struct ExamLagResult {
  std::vector<ExamLagRow> rows;
  std::vector<std::string> warnings;  // negative lags, in cohort order
  friend bool operator==(const ExamLagResult&, const ExamLagResult&) = default;
};

struct FirstRepresentativeRow {
  RegisterId id{};
  ApplnId appln_id{};
  int bulletin_year{};
  int bulletin_nr{};
  std::string name;
  friend bool operator==(const FirstRepresentativeRow&, const FirstRepresentativeRow&) = default;
};

struct AmendmentKindsRow {
  RegisterId id{};
  ApplnId appln_id{};
  bool has_b2{};
  bool has_b3{};
  friend bool operator==(const AmendmentKindsRow&, const AmendmentKindsRow&) = default;
};

struct StepAverageRow {
  std::string name;
  std::int64_t avg_steps_x100{};  // fixed-point hundredths, exact formatting
  friend bool operator==(const StepAverageRow&, const StepAverageRow&) = default;
};

/// "57.00"-style rendering of the fixed-point average.
inline std::string format_hundredths(std::int64_t x100) {
  std::string whole = std::to_string(x100 / 100);
  const std::int64_t frac = x100 % 100;
  std::string out = std::move(whole);
  out.push_back('.');
  out.push_back(static_cast<char>('0' + frac / 10));
  out.push_back(static_cast<char>('0' + frac % 10));
  return out;
}

/// Cohort members without a register counterpart, excluded from register-side
/// indicators and surfaced as a sidecar report.
inline std::vector<CohortMember> skipped_members(const Cohort& cohort) {
  std::vector<CohortMember> out;
  for (const auto& m : cohort.members)
    if (m.register_id == 0) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// Operation dispatch

enum class IndicatorKind {
  Cohort,
  BackwardCitations,
  LicenseCountries,
  ApplicantSets,
  TransferSignals,
  DaysToExamination,
  FirstRepresentative,
  ValidityChallenges,
  AmendmentKinds,
  ValidatedStates,
  AvgProcedureSteps,
};

inline constexpr IndicatorKind k_all_indicator_kinds[] = {
    IndicatorKind::Cohort,          IndicatorKind::BackwardCitations,
    IndicatorKind::LicenseCountries, IndicatorKind::ApplicantSets,
    IndicatorKind::TransferSignals, IndicatorKind::DaysToExamination,
    IndicatorKind::FirstRepresentative, IndicatorKind::ValidityChallenges,
    IndicatorKind::AmendmentKinds,  IndicatorKind::ValidatedStates,
    IndicatorKind::AvgProcedureSteps,
};

inline std::string_view indicator_name(IndicatorKind k) {
  switch (k) {
    case IndicatorKind::Cohort: return "cohort";
    case IndicatorKind::BackwardCitations: return "backward_citations";
    case IndicatorKind::LicenseCountries: return "license_countries";
    case IndicatorKind::ApplicantSets: return "applicant_sets";
    case IndicatorKind::TransferSignals: return "transfer_signals";
    case IndicatorKind::DaysToExamination: return "days_to_exam";
    case IndicatorKind::FirstRepresentative: return "first_representative";
    case IndicatorKind::ValidityChallenges: return "validity_challenges";
    case IndicatorKind::AmendmentKinds: return "amendment_kinds";
    case IndicatorKind::ValidatedStates: return "validated_states";
    case IndicatorKind::AvgProcedureSteps: return "avg_proc_steps";
  }
  return {};
}

inline std::optional<IndicatorKind> parse_indicator_name(std::string_view name) {
  for (IndicatorKind k : k_all_indicator_kinds)
    if (indicator_name(k) == name) return k;
  return std::nullopt;
}

/// One bag of parameters covering every operation; each op reads only the
/// fields it documents.
struct IndicatorParams {
  CohortSpec cohort_spec;
  OutputMode mode = OutputMode::Default;
  BulletinOrdering ordering = BulletinOrdering::Numeric;
  StepAverageMode step_mode = StepAverageMode::PaperFaithful;
  ApprRule appr_rule;
  std::vector<std::string> challenge_codes = default_validity_challenge_codes();
};

}  // namespace patreg
