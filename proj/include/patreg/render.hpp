#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "patreg/csv.hpp"
#include "patreg/indicator_types.hpp"
#include "patreg/indicators.hpp"

namespace patreg {

// Result-table rendering. CSV mirrors the reference tables column for column;
// paper-compat additionally drops the columns the reference output does not
// have (the has_all flag, the cohort's register id). JSON-lines keeps key
// order via ordered_json so output bytes stay stable.

enum class OutputFormat { Csv, JsonLines };

inline std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "jsonl") return OutputFormat::JsonLines;
  return std::nullopt;
}

namespace render_detail {

using OrderedJson = nlohmann::ordered_json;

inline std::string_view count_column(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::BackwardCitations: return "n_cit";
    case IndicatorKind::ApplicantSets: return "nb_changes";
    case IndicatorKind::ValidityChallenges: return "nb_events";
    case IndicatorKind::ValidatedStates: return "nb_validated_states";
    default: return "value";
  }
}

inline std::string amendment_kinds_cell(const AmendmentKindsRow& r) {
  std::string out;
  if (r.has_b2) out += "B2";
  if (r.has_b3) {
    if (!out.empty()) out += ";";
    out += "B3";
  }
  return out;
}

}  // namespace render_detail

inline std::string render_output_csv(IndicatorKind kind, const IndicatorOutput& output,
                                     OutputMode mode = OutputMode::Default) {
  using namespace render_detail;
  std::string out;
  const bool compat = mode == OutputMode::PaperCompat;
  switch (kind) {
    case IndicatorKind::Cohort: {
      const auto& cohort = std::get<Cohort>(output);
      if (compat) {
        csv::append_record(out, std::vector<std::string_view>{"appln_id"});
        for (const auto& m : cohort.members)
          csv::append_record(out, std::vector<std::string>{std::to_string(m.appln_id)});
      } else {
        csv::append_record(out, std::vector<std::string_view>{"appln_id", "id"});
        for (const auto& m : cohort.members)
          csv::append_record(
              out, std::vector<std::string>{
                       std::to_string(m.appln_id),
                       m.register_id ? std::to_string(m.register_id) : std::string{}});
      }
      return out;
    }
    case IndicatorKind::BackwardCitations:
    case IndicatorKind::ApplicantSets:
    case IndicatorKind::ValidityChallenges:
    case IndicatorKind::ValidatedStates: {
      const auto& rows = std::get<std::vector<CountRow>>(output);
      csv::append_record(
          out, std::vector<std::string_view>{"id", "appln_id", count_column(kind)});
      for (const auto& r : rows)
        csv::append_record(out, std::vector<std::string>{std::to_string(r.id),
                                                         std::to_string(r.appln_id),
                                                         std::to_string(r.value)});
      return out;
    }
    case IndicatorKind::LicenseCountries: {
      const auto& rows = std::get<std::vector<LicenseCoverageRow>>(output);
      if (compat) {
        csv::append_record(out,
                           std::vector<std::string_view>{"id", "appln_id", "nb_lic_ctry"});
        for (const auto& r : rows)
          csv::append_record(out, std::vector<std::string>{std::to_string(r.id),
                                                           std::to_string(r.appln_id),
                                                           std::to_string(r.nb_countries)});
      } else {
        csv::append_record(out, std::vector<std::string_view>{"id", "appln_id", "nb_lic_ctry",
                                                              "has_all_designation"});
        for (const auto& r : rows)
          csv::append_record(
              out, std::vector<std::string>{std::to_string(r.id), std::to_string(r.appln_id),
                                            std::to_string(r.nb_countries),
                                            r.has_all_designation ? "Y" : "N"});
      }
      return out;
    }
    case IndicatorKind::TransferSignals: {
      const auto& rows = std::get<std::vector<TransferSignalsRow>>(output);
      csv::append_record(out, std::vector<std::string_view>{"id", "appln_id",
                                                            "n_applicant_sets",
                                                            "n_distinct_customer_ids",
                                                            "n_appr_events"});
      for (const auto& r : rows)
        csv::append_record(
            out, std::vector<std::string>{std::to_string(r.id), std::to_string(r.appln_id),
                                          std::to_string(r.n_applicant_sets),
                                          std::to_string(r.n_distinct_customer_ids),
                                          std::to_string(r.n_appr_events)});
      return out;
    }
    case IndicatorKind::DaysToExamination: {
      const auto& result = std::get<ExamLagResult>(output);
      csv::append_record(out, std::vector<std::string_view>{"id", "appln_id",
                                                            "appln_filing_date", "exam_date",
                                                            "days_to_exam"});
      for (const auto& r : result.rows)
        csv::append_record(
            out, std::vector<std::string>{std::to_string(r.id), std::to_string(r.appln_id),
                                          r.filing_date.to_string(), r.exam_date.to_string(),
                                          std::to_string(r.days)});
      return out;
    }
    case IndicatorKind::FirstRepresentative: {
      const auto& rows = std::get<std::vector<FirstRepresentativeRow>>(output);
      csv::append_record(out, std::vector<std::string_view>{"id", "appln_id", "bulletin_year",
                                                            "bulletin_nr", "name"});
      for (const auto& r : rows)
        csv::append_record(
            out, std::vector<std::string>{std::to_string(r.id), std::to_string(r.appln_id),
                                          std::to_string(r.bulletin_year),
                                          std::to_string(r.bulletin_nr), r.name});
      return out;
    }
    case IndicatorKind::AmendmentKinds: {
      const auto& rows = std::get<std::vector<AmendmentKindsRow>>(output);
      csv::append_record(out,
                         std::vector<std::string_view>{"id", "appln_id", "amendment_kinds"});
      for (const auto& r : rows)
        csv::append_record(out, std::vector<std::string>{std::to_string(r.id),
                                                         std::to_string(r.appln_id),
                                                         amendment_kinds_cell(r)});
      return out;
    }
    case IndicatorKind::AvgProcedureSteps: {
      const auto& rows = std::get<std::vector<StepAverageRow>>(output);
      csv::append_record(out, std::vector<std::string_view>{"name", "avg_proc_steps"});
      for (const auto& r : rows)
        csv::append_record(
            out, std::vector<std::string>{r.name, format_hundredths(r.avg_steps_x100)});
      return out;
    }
  }
  return out;
}

inline std::string render_output_jsonl(IndicatorKind kind, const IndicatorOutput& output,
                                       OutputMode mode = OutputMode::Default) {
  using render_detail::OrderedJson;
  std::string out;
  const bool compat = mode == OutputMode::PaperCompat;
  auto emit = [&out](const OrderedJson& obj) {
    out += obj.dump();
    out += '\n';
  };
  switch (kind) {
    case IndicatorKind::Cohort:
      for (const auto& m : std::get<Cohort>(output).members) {
        OrderedJson obj;
        obj["appln_id"] = m.appln_id;
        if (!compat) {
          if (m.register_id)
            obj["id"] = m.register_id;
          else
            obj["id"] = nullptr;
        }
        emit(obj);
      }
      break;
    case IndicatorKind::BackwardCitations:
    case IndicatorKind::ApplicantSets:
    case IndicatorKind::ValidityChallenges:
    case IndicatorKind::ValidatedStates:
      for (const auto& r : std::get<std::vector<CountRow>>(output)) {
        OrderedJson obj;
        obj["id"] = r.id;
        obj["appln_id"] = r.appln_id;
        obj[std::string(render_detail::count_column(kind))] = r.value;
        emit(obj);
      }
      break;
    case IndicatorKind::LicenseCountries:
      for (const auto& r : std::get<std::vector<LicenseCoverageRow>>(output)) {
        OrderedJson obj;
        obj["id"] = r.id;
        obj["appln_id"] = r.appln_id;
        obj["nb_lic_ctry"] = r.nb_countries;
        if (!compat) obj["has_all_designation"] = r.has_all_designation;
        emit(obj);
      }
      break;
    case IndicatorKind::TransferSignals:
      for (const auto& r : std::get<std::vector<TransferSignalsRow>>(output)) {
        OrderedJson obj;
        obj["id"] = r.id;
        obj["appln_id"] = r.appln_id;
        obj["n_applicant_sets"] = r.n_applicant_sets;
        obj["n_distinct_customer_ids"] = r.n_distinct_customer_ids;
        obj["n_appr_events"] = r.n_appr_events;
        emit(obj);
      }
      break;
    case IndicatorKind::DaysToExamination:
      for (const auto& r : std::get<ExamLagResult>(output).rows) {
        OrderedJson obj;
        obj["id"] = r.id;
        obj["appln_id"] = r.appln_id;
        obj["appln_filing_date"] = r.filing_date.to_string();
        obj["exam_date"] = r.exam_date.to_string();
        obj["days_to_exam"] = r.days;
        emit(obj);
      }
      break;
    case IndicatorKind::FirstRepresentative:
      for (const auto& r : std::get<std::vector<FirstRepresentativeRow>>(output)) {
        OrderedJson obj;
        obj["id"] = r.id;
        obj["appln_id"] = r.appln_id;
        obj["bulletin_year"] = r.bulletin_year;
        obj["bulletin_nr"] = r.bulletin_nr;
        obj["name"] = r.name;
        emit(obj);
      }
      break;
    case IndicatorKind::AmendmentKinds:
      for (const auto& r : std::get<std::vector<AmendmentKindsRow>>(output)) {
        OrderedJson obj;
        obj["id"] = r.id;
        obj["appln_id"] = r.appln_id;
        auto kinds = OrderedJson::array();
        if (r.has_b2) kinds.push_back("B2");
        if (r.has_b3) kinds.push_back("B3");
        obj["amendment_kinds"] = std::move(kinds);
        emit(obj);
      }
      break;
    case IndicatorKind::AvgProcedureSteps:
      for (const auto& r : std::get<std::vector<StepAverageRow>>(output)) {
        OrderedJson obj;
        obj["name"] = r.name;
        obj["avg_proc_steps"] = format_hundredths(r.avg_steps_x100);
        emit(obj);
      }
      break;
  }
  return out;
}

inline std::string render_output(IndicatorKind kind, const IndicatorOutput& output,
                                 OutputFormat format, OutputMode mode = OutputMode::Default) {
  return format == OutputFormat::Csv ? render_output_csv(kind, output, mode)
                                     : render_output_jsonl(kind, output, mode);
}

inline std::string render_skipped_members_csv(const std::vector<CohortMember>& skipped) {
  std::string out;
  csv::append_record(out, std::vector<std::string_view>{"appln_id"});
  for (const auto& m : skipped)
    csv::append_record(out, std::vector<std::string>{std::to_string(m.appln_id)});
  return out;
}

}  // namespace patreg
