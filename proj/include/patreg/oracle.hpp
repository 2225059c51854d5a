#pragma once

// Naive reference evaluator: every operation is re-derived from the reference
// query semantics with unindexed nested-loop scans over the raw relations.
// It deliberately shares no filtering, joining or ordering code with
// indicators.hpp (only the model and result types), so agreement between the
// two paths is meaningful evidence. Quadratic cost is fine here; this is a
// test oracle and benchmark baseline, not a production path.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "patreg/indicator_types.hpp"
#include "patreg/model.hpp"

namespace patreg::oracle {

namespace naive_detail {

inline bool prefix_match(const std::string& s, const std::string& prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (s[i] != prefix[i]) return false;
  return true;
}

inline bool suffix_match(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  const std::size_t off = s.size() - suffix.size();
  for (std::size_t i = 0; i < suffix.size(); ++i)
    if (s[off + i] != suffix[i]) return false;
  return true;
}

inline std::size_t distinct_count(std::vector<std::string> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values.size();
}

inline std::size_t distinct_count_ids(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values.size();
}

inline std::int64_t round2_half_away(std::int64_t numerator, std::int64_t denominator) {
  // value * 100

  return (numerator * 200 + denominator) / (denominator * 2);
}

inline void order_by_value_desc_id_asc(std::vector<CountRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const CountRow& a, const CountRow& b) {
    return a.value != b.value ? a.value > b.value : a.id < b.id;
  });
}

inline const RegisterApplication* find_register(const Dataset& d, RegisterId id) {
  for (const auto& r : d.register_applications)
    if (r.id == id) return &r;
  return nullptr;
}

}  // namespace naive_detail

inline Cohort select_cohort(const Dataset& d, const CohortSpec& spec) {
  if (spec.year_from > spec.year_to)
    throw std::invalid_argument("select_cohort: year_from > year_to");
  if (spec.ipc_prefix.empty())
    throw std::invalid_argument("select_cohort: ipc_prefix must be non-empty");

  Cohort cohort;
  for (const auto& core : d.core_applications) {
    if (core.appln_auth != spec.authority) continue;
    bool kind_ok = false;
    for (const auto& k : spec.kinds)
      if (core.appln_kind == k) kind_ok = true;
    if (!kind_ok) continue;
    if (core.appln_filing_date.year < spec.year_from ||
        core.appln_filing_date.year > spec.year_to)
      continue;
    bool ipc_ok = false;
    for (const auto& ipc : d.ipc_assignments)
      if (ipc.appln_id == core.appln_id &&
          naive_detail::prefix_match(ipc.ipc_class_symbol, spec.ipc_prefix))
        ipc_ok = true;
    if (!ipc_ok) continue;

    RegisterId reg_id = 0;
    for (const auto& reg : d.register_applications)
      if (reg.appln_id == core.appln_id) reg_id = reg.id;
    cohort.members.push_back({core.appln_id, reg_id});
  }
  std::sort(cohort.members.begin(), cohort.members.end(),
            [](const CohortMember& a, const CohortMember& b) { return a.appln_id < b.appln_id; });
  return cohort;
}

inline std::vector<CountRow> backward_citation_count(const Dataset& d, const Cohort& cohort,
                                                     OutputMode mode = OutputMode::Default) {
  std::vector<CountRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::vector<PublnId> publications;
    for (const auto& pub : d.core_publications)
      if (pub.appln_id == member.appln_id) publications.push_back(pub.pat_publn_id);
    std::vector<std::int64_t> cited;
    for (const auto& c : d.citations) {
      if (c.pat_citn_seq_nr <= 0) continue;
      for (PublnId p : publications)
        if (c.pat_publn_id == p) {
          cited.push_back(c.cited_pat_publn_id);
          break;
        }
    }
    const auto n = static_cast<std::int64_t>(naive_detail::distinct_count_ids(std::move(cited)));
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n});
  }
  naive_detail::order_by_value_desc_id_asc(rows);
  return rows;
}

inline std::vector<LicenseCoverageRow> license_country_coverage(
    const Dataset& d, const Cohort& cohort, OutputMode mode = OutputMode::Default) {
  std::vector<LicenseCoverageRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::vector<std::string> countries;
    for (const auto& s : d.licensee_states)
      if (s.id == member.register_id) countries.push_back(s.licensee_country);
    bool has_all = false;
    for (const auto& l : d.licensees)
      if (l.id == member.register_id && l.designation == LicenseDesignation::All)
        has_all = true;
    const auto n =
        static_cast<std::int64_t>(naive_detail::distinct_count(std::move(countries)));
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n, has_all});
  }
  std::sort(rows.begin(), rows.end(),
            [](const LicenseCoverageRow& a, const LicenseCoverageRow& b) {
              return a.nb_countries != b.nb_countries ? a.nb_countries > b.nb_countries
                                                       : a.id < b.id;
            });
  return rows;
}

inline std::vector<CountRow> applicant_set_count(const Dataset& d, const Cohort& cohort,
                                                 OutputMode mode = OutputMode::Default) {
  std::vector<CountRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::int64_t max_set = 0;
    for (const auto& p : d.parties)
      if (p.id == member.register_id && p.type == PartyType::Applicant &&
          p.set_seq_nr > max_set)
        max_set = p.set_seq_nr;
    if (mode == OutputMode::PaperCompat && max_set == 0) continue;
    rows.push_back({member.register_id, member.appln_id, max_set});
  }
  naive_detail::order_by_value_desc_id_asc(rows);
  return rows;
}

inline std::vector<TransferSignalsRow> transfer_signals(const Dataset& d, const Cohort& cohort,
                                                        const ApprRule& rule = {}) {
  std::vector<TransferSignalsRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::int64_t max_set = 0;
    std::vector<std::string> customers;
    for (const auto& p : d.parties) {
      if (p.id != member.register_id || p.type != PartyType::Applicant) continue;
      if (p.set_seq_nr > max_set) max_set = p.set_seq_nr;
      if (!p.customer_id.empty()) customers.push_back(p.customer_id);
    }
    std::int64_t appr = 0;
    for (const auto& e : d.register_events) {
      if (e.id != member.register_id) continue;
      bool hit;
      if (!rule.explicit_codes.empty()) {
        hit = false;
        for (const auto& code : rule.explicit_codes)
          if (e.event_code == code) hit = true;
      } else {
        hit = naive_detail::suffix_match(e.event_code, rule.suffix);
      }
      if (hit) ++appr;
    }
    rows.push_back({member.register_id, member.appln_id, max_set,
                    static_cast<std::int64_t>(naive_detail::distinct_count(std::move(customers))),
                    appr});
  }
  std::sort(rows.begin(), rows.end(),
            [](const TransferSignalsRow& a, const TransferSignalsRow& b) { return a.id < b.id; });
  return rows;
}

inline ExamLagResult days_to_first_examination(const Dataset& d, const Cohort& cohort) {
  ExamLagResult result;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    bool found = false;
    Date earliest{};
    for (const auto& e : d.register_events) {
      if (e.id != member.register_id) continue;
      if (e.event_code != k_first_examination_event_code) continue;
      if (!found || e.event_date < earliest) {
        earliest = e.event_date;
        found = true;
      }
    }
    if (!found) continue;
    const RegisterApplication* app = naive_detail::find_register(d, member.register_id);
    const std::int64_t days =
        earliest.to_day_number() - app->appln_filing_date.to_day_number();
    if (days < 0)
      result.warnings.push_back("id " + std::to_string(member.register_id) +
                                ": negative examination lag of " + std::to_string(days) +
                                " days");
    result.rows.push_back(
        {member.register_id, member.appln_id, app->appln_filing_date, earliest, days});
  }
  std::sort(result.rows.begin(), result.rows.end(),
            [](const ExamLagRow& a, const ExamLagRow& b) {
              return a.days != b.days ? a.days < b.days : a.id < b.id;
            });
  return result;
}

inline std::vector<FirstRepresentativeRow> first_representative(
    const Dataset& d, const Cohort& cohort,
    BulletinOrdering ordering = BulletinOrdering::Numeric) {
  std::vector<FirstRepresentativeRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    bool found = false;
    int best_year = 0;
    int best_nr = 0;
    for (const auto& pub : d.register_publications) {
      if (pub.id != member.register_id) continue;
      bool better;
      if (!found) {
        better = true;
      } else if (ordering == BulletinOrdering::Numeric) {
        better = pub.bulletin_year != best_year ? pub.bulletin_year < best_year
                                                : pub.bulletin_nr < best_nr;
      } else {
        better = std::to_string(pub.bulletin_year) + std::to_string(pub.bulletin_nr) <
                 std::to_string(best_year) + std::to_string(best_nr);
      }
      if (better) {
        best_year = pub.bulletin_year;
        best_nr = pub.bulletin_nr;
        found = true;
      }
    }
    if (!found) continue;
    std::vector<const Party*> reps;
    for (const auto& p : d.parties)
      if (p.id == member.register_id && p.type == PartyType::Representative &&
          p.bulletin_year == best_year && p.bulletin_nr == best_nr)
        reps.push_back(&p);
    std::sort(reps.begin(), reps.end(), [](const Party* a, const Party* b) {
      return a->set_seq_nr != b->set_seq_nr ? a->set_seq_nr < b->set_seq_nr
                                            : a->seq_nr < b->seq_nr;
    });
    for (const Party* p : reps)
      rows.push_back(
          {member.register_id, member.appln_id, p->bulletin_year, p->bulletin_nr, p->name});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const FirstRepresentativeRow& a, const FirstRepresentativeRow& b) {
                     return a.id < b.id;
                   });
  return rows;
}

inline std::vector<CountRow> validity_challenge_count(
    const Dataset& d, const Cohort& cohort, OutputMode mode = OutputMode::Default,
    const std::vector<std::string>& codes = default_validity_challenge_codes()) {
  std::vector<CountRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::int64_t n = 0;
    for (const auto& e : d.register_events) {
      if (e.id != member.register_id) continue;
      for (const auto& code : codes)
        if (e.event_code == code) {
          ++n;
          break;
        }
    }
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n});
  }
  naive_detail::order_by_value_desc_id_asc(rows);
  return rows;
}

inline std::vector<AmendmentKindsRow> post_grant_amendment_kinds(
    const Dataset& d, const Cohort& cohort, OutputMode mode = OutputMode::Default) {
  std::vector<AmendmentKindsRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    bool has_b2 = false;
    bool has_b3 = false;
    for (const auto& pub : d.register_publications) {
      if (pub.id != member.register_id) continue;
      if (pub.publn_kind == "B2") has_b2 = true;
      if (pub.publn_kind == "B3") has_b3 = true;
    }
    if (mode == OutputMode::PaperCompat && !has_b2 && !has_b3) continue;
    rows.push_back({member.register_id, member.appln_id, has_b2, has_b3});
  }
  std::sort(rows.begin(), rows.end(),
            [](const AmendmentKindsRow& a, const AmendmentKindsRow& b) { return a.id < b.id; });
  return rows;
}

inline std::vector<CountRow> validated_state_count(const Dataset& d, const Cohort& cohort,
                                                   OutputMode mode = OutputMode::Default) {
  std::vector<CountRow> rows;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::vector<std::string> countries;
    for (const auto& e : d.legal_status_events)
      if (e.appln_id == member.appln_id && e.prs_code == k_pgfp_code)
        countries.push_back(e.country);
    const auto n =
        static_cast<std::int64_t>(naive_detail::distinct_count(std::move(countries)));
    if (mode == OutputMode::PaperCompat && n == 0) continue;
    rows.push_back({member.register_id, member.appln_id, n});
  }
  naive_detail::order_by_value_desc_id_asc(rows);
  return rows;
}

inline std::vector<StepAverageRow> avg_procedure_steps_by_applicant(
    const Dataset& d, const Cohort& cohort,
    StepAverageMode step_mode = StepAverageMode::PaperFaithful) {
  struct Agg {
    std::int64_t pair_steps = 0;
    std::int64_t norm_steps = 0;
    std::int64_t n_applications = 0;
  };
  std::map<std::string, Agg> groups;
  for (const auto& member : cohort.members) {
    if (member.register_id == 0) continue;
    std::int64_t steps = 0;
    for (const auto& s : d.procedure_steps)
      if (s.id == member.register_id) ++steps;
    if (steps == 0) continue;
    std::map<std::string, std::int64_t> name_rows;
    for (const auto& p : d.parties)
      if (p.id == member.register_id && p.type == PartyType::Applicant && p.is_latest)
        ++name_rows[p.name];
    for (const auto& [name, multiplicity] : name_rows) {
      Agg& agg = groups[name];
      agg.pair_steps += steps * multiplicity;
      agg.norm_steps += steps;
      agg.n_applications += 1;
    }
  }
  std::vector<StepAverageRow> rows;
  for (const auto& [name, agg] : groups)
    rows.push_back({name, naive_detail::round2_half_away(step_mode == StepAverageMode::PaperFaithful
                                                             ? agg.pair_steps
                                                             : agg.norm_steps,
                                                         agg.n_applications)});
  std::sort(rows.begin(), rows.end(), [](const StepAverageRow& a, const StepAverageRow& b) {
    return a.avg_steps_x100 != b.avg_steps_x100 ? a.avg_steps_x100 > b.avg_steps_x100
                                                : a.name < b.name;
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Dispatch

using Output =
    std::variant<Cohort, std::vector<CountRow>, std::vector<LicenseCoverageRow>,
                 std::vector<TransferSignalsRow>, ExamLagResult,
                 std::vector<FirstRepresentativeRow>, std::vector<AmendmentKindsRow>,
                 std::vector<StepAverageRow>>;

inline Output evaluate_naive(const Dataset& d, IndicatorKind kind, const Cohort& cohort,
                             const IndicatorParams& params) {
  switch (kind) {
    case IndicatorKind::Cohort: return select_cohort(d, params.cohort_spec);
    case IndicatorKind::BackwardCitations:
      return backward_citation_count(d, cohort, params.mode);
    case IndicatorKind::LicenseCountries:
      return license_country_coverage(d, cohort, params.mode);
    case IndicatorKind::ApplicantSets: return applicant_set_count(d, cohort, params.mode);
    case IndicatorKind::TransferSignals: return transfer_signals(d, cohort, params.appr_rule);
    case IndicatorKind::DaysToExamination: return days_to_first_examination(d, cohort);
    case IndicatorKind::FirstRepresentative:
      return first_representative(d, cohort, params.ordering);
    case IndicatorKind::ValidityChallenges:
      return validity_challenge_count(d, cohort, params.mode, params.challenge_codes);
    case IndicatorKind::AmendmentKinds:
      return post_grant_amendment_kinds(d, cohort, params.mode);
    case IndicatorKind::ValidatedStates: return validated_state_count(d, cohort, params.mode);
    case IndicatorKind::AvgProcedureSteps:
      return avg_procedure_steps_by_applicant(d, cohort, params.step_mode);
  }
  throw std::logic_error("unknown indicator kind");
}

}  // namespace patreg::oracle
