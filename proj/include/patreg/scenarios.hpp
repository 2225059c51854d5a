#pragma once

#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "patreg/indicator_types.hpp"
#include "patreg/model.hpp"
#include "patreg/synth.hpp"

namespace patreg {

/// A pinned reference value: run `kind` with the given modes, locate the row
/// whose key column equals `row_key` (register id, or name for the step
/// average), and expect `expected` in `column` of the rendered table.
struct ScenarioExpectation {
  IndicatorKind kind{};
  std::string column;
  std::string row_key;
  std::string expected;
  OutputMode mode = OutputMode::Default;
  BulletinOrdering ordering = BulletinOrdering::Numeric;
  StepAverageMode step_mode = StepAverageMode::PaperFaithful;
};

/// Declarative bundle of one application's rows plus its pinned expectations.
/// Values not pinned here are cross-checked through the naive evaluator, never
/// typed in by hand.
struct ScenarioSpec {
  std::string label;
  RegisterApplication application;
  bool has_core = true;
  CoreApplication core;
  std::vector<IpcAssignment> ipc;
  std::vector<CorePublication> publications;
  std::vector<Citation> citations;
  std::vector<RegisterPublication> register_publications;
  std::vector<Party> parties;
  std::vector<RegisterEvent> events;
  std::vector<ProcedureStep> steps;
  std::vector<Licensee> licensees;
  std::vector<LicenseeState> licensee_states;
  std::vector<DesignatedState> designated_states;
  std::vector<LegalStatusEvent> legal_events;
  std::vector<ScenarioExpectation> expectations;
};

/// Appends scenario rows to a dataset. Register, core and publication ids
/// must be disjoint from the dataset (and from each other); the union must
/// still pass strict validation.
inline Dataset embed_scenarios(Dataset dataset, const std::vector<ScenarioSpec>& specs) {
  std::unordered_set<RegisterId> reg_ids;
  for (const auto& r : dataset.register_applications) reg_ids.insert(r.id);
  std::unordered_set<ApplnId> core_ids;
  for (const auto& c : dataset.core_applications) core_ids.insert(c.appln_id);
  std::unordered_set<PublnId> publn_ids;
  for (const auto& p : dataset.core_publications) publn_ids.insert(p.pat_publn_id);

  for (const auto& spec : specs) {
    if (!reg_ids.insert(spec.application.id).second)
      throw std::invalid_argument("embed_scenarios: register id collision for scenario " +
                                  spec.label);
    if (spec.has_core && !core_ids.insert(spec.core.appln_id).second)
      throw std::invalid_argument("embed_scenarios: appln_id collision for scenario " +
                                  spec.label);
    for (const auto& pub : spec.publications)
      if (!publn_ids.insert(pub.pat_publn_id).second)
        throw std::invalid_argument("embed_scenarios: pat_publn_id collision for scenario " +
                                    spec.label);

    dataset.register_applications.push_back(spec.application);
    if (spec.has_core) dataset.core_applications.push_back(spec.core);
    auto append = [](auto& dst, const auto& src) { dst.insert(dst.end(), src.begin(), src.end()); };
    append(dataset.ipc_assignments, spec.ipc);
    append(dataset.core_publications, spec.publications);
    append(dataset.citations, spec.citations);
    append(dataset.register_publications, spec.register_publications);
    append(dataset.parties, spec.parties);
    append(dataset.register_events, spec.events);
    append(dataset.procedure_steps, spec.steps);
    append(dataset.licensees, spec.licensees);
    append(dataset.licensee_states, spec.licensee_states);
    append(dataset.designated_states, spec.designated_states);
    append(dataset.legal_status_events, spec.legal_events);
  }
  return dataset;
}

// ---------------------------------------------------------------------------
// Reference scenarios
//
// Each scenario mirrors one published reference record (citation burst of 86,
// 37 license countries, 62 raw vs 36 distinct, six applicant sets, 233-day
// examination lag, first agent at bulletin 2000/30, three validity
// challenges, 33 validated states, 57.00 average steps) plus two edge-case
// constructions: the week-ordering divergence and the leap-February lag.
// All ids sit outside the generator's ranges so embedding never collides.

namespace scenario_detail {

inline ScenarioSpec citation_burst() {
  ScenarioSpec s;
  s.label = "citation_burst";
  s.application = {8156970, 56608002, {2005, 6, 10}, "Examination in progress"};
  s.core = {56608002, "EP", "A", {2005, 6, 10}};
  s.ipc = {{56608002, "F03D 7/02"}};
  s.publications = {{810000101, 56608002}, {810000102, 56608002}};
  for (int c = 1; c <= 50; ++c) s.citations.push_back({810000101, 910000000 + c, c});
  for (int c = 1; c <= 46; ++c) s.citations.push_back({810000102, 910000040 + c, c});
  s.citations.push_back({810000101, 910000999, 0});  // reference outside patent literature
  s.register_publications = {{8156970, "A1", 2006, 51}};
  s.parties = {
      {8156970, PartyType::Applicant, 1, 1, true, "Skagerrak Turbines ApS", "CUST-801", 2006, 51},
      {8156970, PartyType::Representative, 1, 1, true, "Hove & Brandal ANS", "", 2006, 51},
  };
  s.expectations = {{IndicatorKind::BackwardCitations, "n_cit", "8156970", "86"}};
  return s;
}

inline ScenarioSpec license_wide_coverage() {
  ScenarioSpec s;
  s.label = "license_wide_coverage";
  s.application = {10788117, 329924500, {2004, 3, 17}, "Patent granted"};
  s.core = {329924500, "EP", "A", {2004, 3, 17}};
  s.ipc = {{329924500, "F03D 9/00"}};
  s.publications = {{810000201, 329924500}};
  s.register_publications = {{10788117, "A1", 2005, 33}, {10788117, "B1", 2008, 14}};
  s.parties = {
      {10788117, PartyType::Applicant, 1, 1, true, "Skagerrak Turbines ApS", "CUST-801", 2005, 33},
  };
  s.licensees = {{10788117, 1, LicenseType::NonExclusive, LicenseDesignation::AsIndicated}};
  const auto& states = epc_member_states();
  for (int k = 0; k < 37; ++k)
    s.licensee_states.push_back({10788117, 1, states[static_cast<std::size_t>(k)], 2009, 22});
  s.expectations = {{IndicatorKind::LicenseCountries, "nb_lic_ctry", "10788117", "37"}};
  return s;
}

inline ScenarioSpec license_duplicate_states() {
  ScenarioSpec s;
  s.label = "license_duplicate_states";
  s.application = {10742603, 320770528, {2003, 9, 2}, "Patent granted"};
  s.core = {320770528, "EP", "A", {2003, 9, 2}};
  s.ipc = {{320770528, "F03D 1/06"}};
  s.publications = {{810000301, 320770528}};
  s.register_publications = {{10742603, "A2", 2005, 8}, {10742603, "B1", 2007, 40}};
  s.parties = {
      {10742603, PartyType::Applicant, 1, 1, true, "Mistral Enerji A.S.", "CUST-802", 2005, 8},
  };
  // Two licensees whose state lists overlap: 62 raw rows, 36 distinct countries.
  s.licensees = {
      {10742603, 1, LicenseType::Exclusive, LicenseDesignation::AsIndicated},
      {10742603, 2, LicenseType::NonExclusive, LicenseDesignation::AsIndicated},
  };
  const auto& states = epc_member_states();
  for (int k = 0; k < 36; ++k)
    s.licensee_states.push_back({10742603, 1, states[static_cast<std::size_t>(k)], 2008, 30});
  for (int k = 0; k < 26; ++k)
    s.licensee_states.push_back({10742603, 2, states[static_cast<std::size_t>(k)], 2009, 5});
  s.expectations = {{IndicatorKind::LicenseCountries, "nb_lic_ctry", "10742603", "36"}};
  return s;
}

inline ScenarioSpec applicant_six_sets() {
  ScenarioSpec s;
  s.label = "applicant_six_sets";
  s.application = {3732247, 16049513, {2000, 6, 15}, "Patent granted"};
  s.core = {16049513, "EP", "A", {2000, 6, 15}};
  s.ipc = {{16049513, "F03D 7/04"}};
  s.publications = {{810000401, 16049513}};
  s.register_publications = {{3732247, "A1", 2001, 49}, {3732247, "B1", 2004, 22}};
  const char* names[6] = {"NEG Micon A/S",           "NEG Micon A/S",
                          "Vestas Wind Systems A/S", "Vestas Wind Systems A/S",
                          "Vestas Wind Systems A/S", "Vestas Wind Systems A/S"};
  for (int set = 1; set <= 6; ++set)
    s.parties.push_back({3732247, PartyType::Applicant, 1, set, set == 6, names[set - 1],
                         set <= 2 ? "CUST-810" : "CUST-811", 2001 + set, 10 + set});
  s.events = {
      {3732247, "0002APPR", {2004, 9, 1}},
      {3732247, "0007APPR", {2015, 5, 1}},
  };
  s.expectations = {{IndicatorKind::ApplicantSets, "nb_changes", "3732247", "6"}};
  return s;
}

inline ScenarioSpec examination_lag_233() {
  ScenarioSpec s;
  s.label = "examination_lag_233";
  s.application = {8005567, 189424, {2008, 3, 26}, "Examination in progress"};
  s.core = {189424, "EP", "A", {2008, 3, 26}};
  s.ipc = {{189424, "F03D 11/04"}};
  s.publications = {{810000501, 189424}};
  s.register_publications = {{8005567, "A1", 2009, 40}};
  s.parties = {
      {8005567, PartyType::Applicant, 1, 1, true, "Mistral Enerji A.S.", "CUST-802", 2009, 40},
  };
  s.events = {
      {8005567, std::string(k_first_examination_event_code), {2008, 11, 14}},
      {8005567, "0001492", {2009, 2, 2}},
  };
  s.expectations = {
      {IndicatorKind::DaysToExamination, "days_to_exam", "8005567", "233"},
      {IndicatorKind::DaysToExamination, "exam_date", "8005567", "2008-11-14"},
  };
  return s;
}

inline ScenarioSpec first_agent_bulletin() {
  ScenarioSpec s;
  s.label = "first_agent_bulletin";
  s.application = {100008, 15706408, {2000, 1, 5}, "Patent granted"};
  s.core = {15706408, "EP", "A", {2000, 1, 5}};
  s.ipc = {{15706408, "F03D 1/06"}};
  s.publications = {{810000601, 15706408}};
  s.register_publications = {{100008, "A1", 2000, 30}, {100008, "B1", 2002, 5}};
  s.parties = {
      {100008, PartyType::Applicant, 1, 1, true, "Skagerrak Turbines ApS", "CUST-801", 2000, 30},
      {100008, PartyType::Representative, 1, 1, true, "Strehl Schübel-Hopf & Partner", "",
       2000, 30},
  };
  s.expectations = {
      {IndicatorKind::FirstRepresentative, "bulletin_year", "100008", "2000"},
      {IndicatorKind::FirstRepresentative, "bulletin_nr", "100008", "30"},
      {IndicatorKind::FirstRepresentative, "name", "100008", "Strehl Schübel-Hopf & Partner"},
  };
  return s;
}

inline ScenarioSpec triple_challenge() {
  ScenarioSpec s;
  s.label = "triple_challenge";
  s.application = {3711857, 16039187, {2003, 4, 11}, "Opposition pending"};
  s.core = {16039187, "EP", "A", {2003, 4, 11}};
  s.ipc = {{16039187, "F03D 7/02"}};
  s.publications = {{810000701, 16039187}};
  s.register_publications = {{3711857, "A1", 2004, 40}, {3711857, "B1", 2012, 50}};
  s.parties = {
      {3711857, PartyType::Applicant, 1, 1, true, "Mistral Enerji A.S.", "CUST-802", 2004, 40},
  };
  s.events = {
      {3711857, "0008299OPPO", {2013, 8, 21}},
      {3711857, "0008299OPPO", {2013, 9, 3}},
      {3711857, "0008299OPPO", {2013, 9, 10}},
      {3711857, "0001492", {2005, 1, 10}},
  };
  s.expectations = {{IndicatorKind::ValidityChallenges, "nb_events", "3711857", "3"}};
  return s;
}

inline ScenarioSpec validated_33_states() {
  ScenarioSpec s;
  s.label = "validated_33_states";
  s.application = {8001625, 16417372, {2008, 2, 8}, "Patent granted"};
  s.core = {16417372, "EP", "A", {2008, 2, 8}};
  s.ipc = {{16417372, "F03D 80/70"}};
  s.publications = {{810000801, 16417372}};
  s.register_publications = {{8001625, "A1", 2009, 33}, {8001625, "B1", 2011, 30}};
  s.parties = {
      {8001625, PartyType::Applicant, 1, 1, true, "Skagerrak Turbines ApS", "CUST-801", 2009, 33},
  };
  const auto& states = epc_member_states();
  for (int k = 0; k < 33; ++k)
    s.legal_events.push_back(
        {16417372, std::string(k_pgfp_code), states[static_cast<std::size_t>(k)], 2012});
  // Erroneously repeated payment rows; the distinct count collapses them.
  s.legal_events.push_back({16417372, std::string(k_pgfp_code), states[0], 2013});
  s.legal_events.push_back({16417372, std::string(k_pgfp_code), states[5], 2013});
  s.legal_events.push_back({16417372, "EPPV", "", std::nullopt});
  s.expectations = {{IndicatorKind::ValidatedStates, "nb_validated_states", "8001625", "33"}};
  return s;
}

inline ScenarioSpec heavy_procedure_applicant() {
  ScenarioSpec s;
  s.label = "heavy_procedure_applicant";
  s.application = {25000001, 725000001, {2006, 10, 12}, "Patent granted"};
  s.core = {725000001, "EP", "A", {2006, 10, 12}};
  s.ipc = {{725000001, "F03D 9/00"}};
  s.publications = {{810000901, 725000001}};
  s.register_publications = {{25000001, "A1", 2008, 16}, {25000001, "B1", 2011, 2}};
  s.parties = {
      {25000001, PartyType::Applicant, 1, 1, true, "Neuhäuser GmbH", "CUST-820", 2008, 16},
      {25000001, PartyType::Representative, 1, 1, true, "Hove & Brandal ANS", "", 2008, 16},
  };
  for (int k = 0; k < 25; ++k) s.steps.push_back({25000001, "PFEE"});
  for (int k = 0; k < 20; ++k) s.steps.push_back({25000001, "LOPR"});
  for (int k = 0; k < 12; ++k) s.steps.push_back({25000001, "EXAM"});
  s.expectations = {
      {IndicatorKind::AvgProcedureSteps, "avg_proc_steps", "Neuhäuser GmbH", "57.00"},
  };
  return s;
}

inline ScenarioSpec bulletin_week_ordering() {
  ScenarioSpec s;
  s.label = "bulletin_week_ordering";
  s.application = {25000002, 725000002, {2000, 7, 19}, "Examination in progress"};
  s.core = {725000002, "EP", "A", {2000, 7, 19}};
  s.ipc = {{725000002, "F03D 7/04"}};
  s.publications = {{810001001, 725000002}};
  // Week 5 vs week 30: numeric ordering picks week 5; the concat ordering
  // compares "20015" against "200130" and picks week 30.
  s.register_publications = {{25000002, "A1", 2001, 5}, {25000002, "A2", 2001, 30}};
  s.parties = {
      {25000002, PartyType::Applicant, 1, 1, true, "Mistral Enerji A.S.", "CUST-802", 2001, 5},
      {25000002, PartyType::Representative, 1, 1, false, "Albrecht Patentanwälte", "", 2001, 5},
      {25000002, PartyType::Representative, 1, 2, true, "Zeidler & Brandt", "", 2001, 30},
  };
  s.expectations = {
      {IndicatorKind::FirstRepresentative, "name", "25000002", "Albrecht Patentanwälte",
       OutputMode::Default, BulletinOrdering::Numeric},
      {IndicatorKind::FirstRepresentative, "bulletin_nr", "25000002", "5",
       OutputMode::Default, BulletinOrdering::Numeric},
      {IndicatorKind::FirstRepresentative, "name", "25000002", "Zeidler & Brandt",
       OutputMode::Default, BulletinOrdering::PaperCompat},
      {IndicatorKind::FirstRepresentative, "bulletin_nr", "25000002", "30",
       OutputMode::Default, BulletinOrdering::PaperCompat},
  };
  return s;
}

inline ScenarioSpec leap_window_lag() {
  ScenarioSpec s;
  s.label = "leap_window_lag";
  s.application = {25000003, 725000003, {2000, 1, 1}, "Examination in progress"};
  s.core = {725000003, "EP", "A", {2000, 1, 1}};
  s.ipc = {{725000003, "F03D 1/06"}};
  s.publications = {{810001101, 725000003}};
  s.register_publications = {{25000003, "A1", 2001, 28}};
  s.parties = {
      {25000003, PartyType::Applicant, 1, 1, true, "Skagerrak Turbines ApS", "CUST-801", 2001, 28},
  };
  // 31 days of January plus 29 days of leap February.
  s.events = {{25000003, std::string(k_first_examination_event_code), {2000, 3, 1}}};
  s.expectations = {{IndicatorKind::DaysToExamination, "days_to_exam", "25000003", "60"}};
  return s;
}

inline ScenarioSpec register_only_application() {
  ScenarioSpec s;
  s.label = "register_only_application";
  // International filing that never entered the EP phase: appln_id stays 0 and
  // no core-side rows exist, so it can never join a cohort.
  s.application = {25000004, 0, {2003, 5, 23}, "Application withdrawn"};
  s.has_core = false;
  s.register_publications = {{25000004, "A1", 2004, 47}};
  s.parties = {
      {25000004, PartyType::Applicant, 1, 1, true, "Mistral Enerji A.S.", "CUST-802", 2004, 47},
  };
  return s;
}

}  // namespace scenario_detail

/// All reference scenarios, in a fixed order.
inline std::vector<ScenarioSpec> reference_scenarios() {
  using namespace scenario_detail;
  return {
      citation_burst(),        license_wide_coverage(), license_duplicate_states(),
      applicant_six_sets(),    examination_lag_233(),   first_agent_bulletin(),
      triple_challenge(),      validated_33_states(),   heavy_procedure_applicant(),
      bulletin_week_ordering(), leap_window_lag(),      register_only_application(),
  };
}

}  // namespace patreg
