#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "patreg/indicator_types.hpp"
#include "patreg/model.hpp"
#include "patreg/store.hpp"

namespace patreg {

namespace detail {

inline bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// count desc, id asc — the tie-break every count-shaped table uses.
inline void sort_count_rows(std::vector<CountRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const CountRow& a, const CountRow& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.id < b.id;
  });
}

/// Fixed-point average: round(100 * num / den) half away from zero.
inline std::int64_t ratio_hundredths(std::int64_t num, std::int64_t den) {
  return (200 * num + den) / (2 * den);
}

/// The reference system encodes a bulletin as concat(year, nr) and compares
/// strings, so (2001, 30) sorts before (2001, 5).
inline std::string bulletin_concat(int year, int nr) {
  return std::to_string(year) + std::to_string(nr);
}

inline bool bulletin_less(int year_a, int nr_a, int year_b, int nr_b,
                          BulletinOrdering ordering) {
  if (ordering == BulletinOrdering::Numeric)
    return year_a != year_b ? year_a < year_b : nr_a < nr_b;
  return bulletin_concat(year_a, nr_a) < bulletin_concat(year_b, nr_b);
}

inline bool matches_appr(const ApprRule& rule, std::string_view code) {
  if (!rule.explicit_codes.empty()) {
    for (const auto& c : rule.explicit_codes)
      if (code == c) return true;
    return false;
  }
  return ends_with(code, rule.suffix);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cohort selection

/// Distinct core applications matching authority, kind, filing-year window
/// and IPC prefix; ascending appln_id, register ids resolved where they exist.
inline Cohort select_cohort(const IndexedStore& store, const CohortSpec& spec) {
  if (spec.year_from > spec.year_to)
    throw std::invalid_argument("select_cohort: year_from > year_to");
  if (spec.ipc_prefix.empty())
    throw std::invalid_argument("select_cohort: ipc_prefix must be non-empty");

  const Dataset& d = store.dataset();
  std::vector<ApplnId> candidates;
  if (spec.ipc_prefix.size() >= 4) {
    // Subclass bucket, re-filtered for longer prefixes.
    for (std::uint32_t row : store.ipc_rows_for_subclass(spec.ipc_prefix.substr(0, 4))) {
      const auto& ipc = d.ipc_assignments[row];
      if (detail::starts_with(ipc.ipc_class_symbol, spec.ipc_prefix))
        candidates.push_back(ipc.appln_id);
    }
  } else {
    for (const auto& ipc : d.ipc_assignments)
      if (detail::starts_with(ipc.ipc_class_symbol, spec.ipc_prefix))
        candidates.push_back(ipc.appln_id);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  Cohort cohort;
  for (ApplnId appln_id : candidates) {
    const CoreApplication* core = store.core_by_appln(appln_id);
    if (!core) continue;
    if (core->appln_auth != spec.authority) continue;
    if (std::find(spec.kinds.begin(), spec.kinds.end(), core->appln_kind) == spec.kinds.end())
      continue;
    const int year = core->appln_filing_date.year;
    if (year < spec.year_from || year > spec.year_to) continue;
    const RegisterApplication* reg = store.register_by_appln(appln_id);
    cohort.members.push_back({appln_id, reg ? reg->id : 0});
  }
  return cohort;
}

// ---------------------------------------------------------------------------
// Indicators

/// Distinct prior publications cited by any of the application's
/// publications, counting citation rows with pat_citn_seq_nr > 0 only.
inline std::vector<CountRow> backward_citation_count(const IndexedStore& store,
                                                     const Cohort& cohort,
                                                     OutputMode mode = OutputMode::Default) {
  const Dataset& d = store.dataset();
  std::vector<CountRow> rows;
  std::unordered_set<PublnId> cited;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    cited.clear();
    for (std::uint32_t pub_row : store.core_publication_rows(member.appln_id)) {
      const PublnId publn = d.core_publications[pub_row].pat_publn_id;
      for (std::uint32_t cit_row : store.citation_rows(publn)) {
        const Citation& c = d.citations[cit_row];
        if (c.pat_citn_seq_nr > 0) cited.insert(c.cited_pat_publn_id);
      }
    }
    const auto n = static_cast<std::int64_t>(cited.size());
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n});
  }
  detail::sort_count_rows(rows);
  return rows;
}

/// Distinct countries over the application's licensee-state rows. A license
/// designating all member states sets the flag without widening the count.
inline std::vector<LicenseCoverageRow> license_country_coverage(
    const IndexedStore& store, const Cohort& cohort, OutputMode mode = OutputMode::Default) {
  const Dataset& d = store.dataset();
  std::vector<LicenseCoverageRow> rows;
  std::unordered_set<std::string_view> countries;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    countries.clear();
    for (std::uint32_t row : store.licensee_state_rows(member.register_id))
      countries.insert(d.licensee_states[row].licensee_country);
    bool has_all = false;
    for (std::uint32_t row : store.licensee_rows(member.register_id))
      if (d.licensees[row].designation == LicenseDesignation::All) has_all = true;
    const auto n = static_cast<std::int64_t>(countries.size());
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n, has_all});
  }
  std::sort(rows.begin(), rows.end(), [](const LicenseCoverageRow& a, const LicenseCoverageRow& b) {
    if (a.nb_countries != b.nb_countries) return a.nb_countries > b.nb_countries;
    return a.id < b.id;
  });
  return rows;
}

/// Maximum applicant set_seq_nr; each new set records a change of applicants.
inline std::vector<CountRow> applicant_set_count(const IndexedStore& store,
                                                 const Cohort& cohort,
                                                 OutputMode mode = OutputMode::Default) {
  const Dataset& d = store.dataset();
  std::vector<CountRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::int64_t max_set = 0;
    for (std::uint32_t row : store.party_rows(member.register_id)) {
      const Party& p = d.parties[row];
      if (p.type == PartyType::Applicant && p.set_seq_nr > max_set) max_set = p.set_seq_nr;
    }
    if (mode == OutputMode::PaperCompat && max_set == 0) continue;
    rows.push_back({member.register_id, member.appln_id, max_set});
  }
  detail::sort_count_rows(rows);
  return rows;
}

/// Transfer heuristics: applicant-set count, distinct customer ids over
/// applicant rows, and applicant-change events. Rows for every resolved
/// member, ascending register id.
inline std::vector<TransferSignalsRow> transfer_signals(const IndexedStore& store,
                                                        const Cohort& cohort,
                                                        const ApprRule& rule = {}) {
  const Dataset& d = store.dataset();
  std::vector<TransferSignalsRow> rows;
  std::unordered_set<std::string_view> customers;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::int64_t max_set = 0;
    customers.clear();
    for (std::uint32_t row : store.party_rows(member.register_id)) {
      const Party& p = d.parties[row];
      if (p.type != PartyType::Applicant) continue;
      if (p.set_seq_nr > max_set) max_set = p.set_seq_nr;
      if (!p.customer_id.empty()) customers.insert(p.customer_id);
    }
    std::int64_t appr = 0;
    for (std::uint32_t row : store.event_rows(member.register_id))
      if (detail::matches_appr(rule, d.register_events[row].event_code)) ++appr;
    rows.push_back({member.register_id, member.appln_id, max_set,
                    static_cast<std::int64_t>(customers.size()), appr});
  }
  std::sort(rows.begin(), rows.end(),
            [](const TransferSignalsRow& a, const TransferSignalsRow& b) { return a.id < b.id; });
  return rows;
}

/// Calendar days from filing to the earliest first-examination-report event
/// (code 0009185). Applications without the event are absent in every mode;
/// negative lags are kept and reported as data-quality warnings.
inline ExamLagResult days_to_first_examination(const IndexedStore& store,
                                               const Cohort& cohort) {
  const Dataset& d = store.dataset();
  ExamLagResult result;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    const Date* earliest = nullptr;
    for (std::uint32_t row : store.event_rows(member.register_id)) {
      const RegisterEvent& e = d.register_events[row];
      if (e.event_code != k_first_examination_event_code) continue;
      if (!earliest || e.event_date < *earliest) earliest = &e.event_date;
    }
    if (!earliest) continue;
    const RegisterApplication& app = *store.register_by_id(member.register_id);
    const std::int64_t days = days_between(app.appln_filing_date, *earliest);
    if (days < 0)
      result.warnings.push_back("id " + std::to_string(member.register_id) +
                                ": negative examination lag of " + std::to_string(days) +
                                " days");
    result.rows.push_back({member.register_id, member.appln_id, app.appln_filing_date,
                           *earliest, days});
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const ExamLagRow& a, const ExamLagRow& b) {
    if (a.days != b.days) return a.days < b.days;
    return a.id < b.id;
  });
  return result;
}

/// Representatives listed in the application's oldest bulletin. Applications
/// with no publication, or no representative row at that bulletin, are
/// absent. Rows ordered by (id, set_seq_nr, seq_nr).
inline std::vector<FirstRepresentativeRow> first_representative(
    const IndexedStore& store, const Cohort& cohort,
    BulletinOrdering ordering = BulletinOrdering::Numeric) {
  const Dataset& d = store.dataset();
  std::vector<FirstRepresentativeRow> rows;
  std::vector<const Party*> matches;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    const RegisterPublication* first = nullptr;
    for (std::uint32_t row : store.reg_publication_rows(member.register_id)) {
      const RegisterPublication& pub = d.register_publications[row];
      if (!first || detail::bulletin_less(pub.bulletin_year, pub.bulletin_nr,
                                          first->bulletin_year, first->bulletin_nr, ordering))
        first = &pub;
    }
    if (!first) continue;
    matches.clear();
    for (std::uint32_t row : store.party_rows(member.register_id)) {
      const Party& p = d.parties[row];
      if (p.type == PartyType::Representative && p.bulletin_year == first->bulletin_year &&
          p.bulletin_nr == first->bulletin_nr)
        matches.push_back(&p);
    }
    std::sort(matches.begin(), matches.end(), [](const Party* a, const Party* b) {
      if (a->set_seq_nr != b->set_seq_nr) return a->set_seq_nr < b->set_seq_nr;
      return a->seq_nr < b->seq_nr;
    });
    for (const Party* p : matches)
      rows.push_back({member.register_id, member.appln_id, p->bulletin_year, p->bulletin_nr,
                      p->name});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const FirstRepresentativeRow& a, const FirstRepresentativeRow& b) {
                     return a.id < b.id;
                   });
  return rows;
}

/// Row count of validity-challenge events (opposition, limitation and
/// revocation requests); the default code set is the eight standard codes.
inline std::vector<CountRow> validity_challenge_count(
    const IndexedStore& store, const Cohort& cohort, OutputMode mode = OutputMode::Default,
    const std::vector<std::string>& codes = default_validity_challenge_codes()) {
  const Dataset& d = store.dataset();
  const std::unordered_set<std::string_view> code_set(codes.begin(), codes.end());
  std::vector<CountRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::int64_t n = 0;
    for (std::uint32_t row : store.event_rows(member.register_id))
      if (code_set.count(d.register_events[row].event_code)) ++n;
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n});
  }
  detail::sort_count_rows(rows);
  return rows;
}

/// Which of the post-grant amendment kinds {B2, B3} the application has
/// published. Rows ascending by register id; paper-compat drops empty sets.
inline std::vector<AmendmentKindsRow> post_grant_amendment_kinds(
    const IndexedStore& store, const Cohort& cohort, OutputMode mode = OutputMode::Default) {
  const Dataset& d = store.dataset();
  std::vector<AmendmentKindsRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    bool has_b2 = false;
    bool has_b3 = false;
    for (std::uint32_t row : store.reg_publication_rows(member.register_id)) {
      const auto& kind = d.register_publications[row].publn_kind;
      if (kind == "B2") has_b2 = true;
      if (kind == "B3") has_b3 = true;
    }
    if (mode == OutputMode::PaperCompat && !has_b2 && !has_b3) continue;
    rows.push_back({member.register_id, member.appln_id, has_b2, has_b3});
  }
  std::sort(rows.begin(), rows.end(),
            [](const AmendmentKindsRow& a, const AmendmentKindsRow& b) { return a.id < b.id; });
  return rows;
}

/// Distinct countries with a post-grant fee payment (PGFP); duplicates from
/// data errors collapse.
inline std::vector<CountRow> validated_state_count(const IndexedStore& store,
                                                   const Cohort& cohort,
                                                   OutputMode mode = OutputMode::Default) {
  const Dataset& d = store.dataset();
  std::vector<CountRow> rows;
  std::unordered_set<std::string_view> countries;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    countries.clear();
    for (std::uint32_t row : store.legal_event_rows(member.appln_id)) {
      const LegalStatusEvent& e = d.legal_status_events[row];
      if (e.prs_code == k_pgfp_code) countries.insert(e.country);
    }
    const auto n = static_cast<std::int64_t>(countries.size());
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n});
  }
  detail::sort_count_rows(rows);
  return rows;
}

/// Procedural steps per application, grouped by latest-applicant name.
/// PaperFaithful counts the raw (step row x latest-applicant row) join pairs;
/// Normalized counts each application's steps once per distinct name. Both
/// divide by distinct applications and round half away from zero.
inline std::vector<StepAverageRow> avg_procedure_steps_by_applicant(
    const IndexedStore& store, const Cohort& cohort,
    StepAverageMode step_mode = StepAverageMode::PaperFaithful) {
  const Dataset& d = store.dataset();
  struct Agg {
    std::int64_t pair_steps = 0;
    std::int64_t norm_steps = 0;
    std::int64_t n_applications = 0;
  };
  std::unordered_map<std::string_view, Agg> groups;
  std::unordered_map<std::string_view, std::int64_t> latest_name_rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    const auto steps = static_cast<std::int64_t>(store.step_rows(member.register_id).size());
    if (steps == 0) continue;
    latest_name_rows.clear();
    for (std::uint32_t row : store.party_rows(member.register_id)) {
      const Party& p = d.parties[row];
      if (p.type == PartyType::Applicant && p.is_latest) ++latest_name_rows[p.name];
    }
    for (const auto& [name, multiplicity] : latest_name_rows) {
      Agg& agg = groups[name];
      agg.pair_steps += steps * multiplicity;
      agg.norm_steps += steps;
      agg.n_applications += 1;
    }
  }
  std::vector<StepAverageRow> rows;
  rows.reserve(groups.size());
  for (const auto& [name, agg] : groups) {
    const std::int64_t num =
        step_mode == StepAverageMode::PaperFaithful ? agg.pair_steps : agg.norm_steps;
    rows.push_back({std::string(name), detail::ratio_hundredths(num, agg.n_applications)});
  }
  std::sort(rows.begin(), rows.end(), [](const StepAverageRow& a, const StepAverageRow& b) {
    if (a.avg_steps_x100 != b.avg_steps_x100) return a.avg_steps_x100 > b.avg_steps_x100;
    return a.name < b.name;
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Dispatch

using IndicatorOutput =
    std::variant<Cohort, std::vector<CountRow>, std::vector<LicenseCoverageRow>,
                 std::vector<TransferSignalsRow>, ExamLagResult,
                 std::vector<FirstRepresentativeRow>, std::vector<AmendmentKindsRow>,
                 std::vector<StepAverageRow>>;

inline IndicatorOutput evaluate_indexed(const IndexedStore& store, IndicatorKind kind,
                                        const Cohort& cohort, const IndicatorParams& params) {
  switch (kind) {
    case IndicatorKind::Cohort: return select_cohort(store, params.cohort_spec);
    case IndicatorKind::BackwardCitations:
      return backward_citation_count(store, cohort, params.mode);
    case IndicatorKind::LicenseCountries:
      return license_country_coverage(store, cohort, params.mode);
    case IndicatorKind::ApplicantSets: return applicant_set_count(store, cohort, params.mode);
    case IndicatorKind::TransferSignals:
      return transfer_signals(store, cohort, params.appr_rule);
    case IndicatorKind::DaysToExamination: return days_to_first_examination(store, cohort);
    case IndicatorKind::FirstRepresentative:
      return first_representative(store, cohort, params.ordering);
    case IndicatorKind::ValidityChallenges:
      return validity_challenge_count(store, cohort, params.mode, params.challenge_codes);
    case IndicatorKind::AmendmentKinds:
      return post_grant_amendment_kinds(store, cohort, params.mode);
    case IndicatorKind::ValidatedStates:
      return validated_state_count(store, cohort, params.mode);
    case IndicatorKind::AvgProcedureSteps:
      return avg_procedure_steps_by_applicant(store, cohort, params.step_mode);
  }
  throw std::logic_error("unknown indicator kind");
}

}  // namespace patreg
