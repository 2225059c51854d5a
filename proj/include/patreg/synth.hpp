#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "patreg/model.hpp"
#include "patreg/rng.hpp"

namespace patreg {

/// EPC member states as of Autumn 2016 (38 codes).
inline const std::vector<std::string>& epc_member_states() {
  static const std::vector<std::string> states = {
      "AL", "AT", "BE", "BG", "CH", "CY", "CZ", "DE", "DK", "EE", "ES", "FI", "FR",
      "GB", "GR", "HR", "HU", "IE", "IS", "IT", "LI", "LT", "LU", "LV", "MC", "MK",
      "MT", "NL", "NO", "PL", "PT", "RO", "RS", "SE", "SI", "SK", "SM", "TR",
  };
  return states;
}

/// Knobs for the seeded fixture generator. Generation is a pure function of
/// this config: same config, same bytes, on every platform.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  int n_applications = 100;
  int year_from = 1998;
  int year_to = 2012;
  double p_core_missing = 0.30;   // international filings never entering the EP phase
  double p_wind_ipc = 0.65;       // share tagged with the default cohort subclass
  double p_citations = 0.60;
  double p_license = 0.18;
  double p_grant = 0.55;
  double p_challenge = 0.12;      // opposition/limitation/revocation, granted only
  double p_transfer = 0.25;       // multi-set applicant histories
  double p_pgfp = 0.70;           // post-grant fee rows, granted + core-linked only
  double p_examination = 0.75;
  double p_representative = 0.92;
  std::vector<std::string> member_states = epc_member_states();
};

namespace synth_detail {

struct Bulletin {
  int year;
  int nr;
};

inline Bulletin bulletin_of(Date date) {
  const std::int64_t doy = date.to_day_number() - Date{date.year, 1, 1}.to_day_number() + 1;
  int week = static_cast<int>((doy - 1) / 7 + 1);
  if (week > 53) week = 53;
  return {date.year, week};
}

inline Date random_date(Rng& rng, int year_from, int year_to) {
  const int year = static_cast<int>(rng.range(year_from, year_to));
  const int month = static_cast<int>(rng.range(1, 12));
  const int day = static_cast<int>(rng.range(1, Date::days_in_month(year, month)));
  return {year, month, day};
}

// Vocabularies are intentionally small so that grouping collisions (shared
// applicant names, shared customer ids) actually occur in fixtures. Names
// with commas and non-ASCII exercise quoting and UTF-8 handling.
inline const std::vector<std::string>& applicant_names() {
  static const std::vector<std::string> v = {
      "Nordex Energy GmbH",
      "Senvion Deutschland GmbH",
      "Gamesa Innovation & Technology S.L.",
      "Windkraft Motoren AG",
      "Aerodyn Energiesysteme GmbH",
      "Turbinen Vermogen B.V.",
      "Atlantic Rotor Company",
      "Blade Dynamics Ltd",
      "Ventus Research Oy",
      "Molinos del Norte S.A.",
      "Baltic Wind Consortium",
      "Kinetic Flow Systems Inc.",
      "Åkersjö Vind AB",
      "Müller Turbinenbau GmbH",
  };
  return v;
}

inline const std::vector<std::string>& agent_names() {
  static const std::vector<std::string> v = {
      "Becker, Konrad, Dipl.-Ing. Patentanwalt",
      "Grünwald & Fischer Patentanwälte",
      "Jones Hargreaves LLP",
      "Cabinet Lefort",
      "Veldkamp, Pieter, ir.",
      "Studio Brevetti Roma S.r.l.",
      "Hansen & Kolde",
      "Patenta Nordica AB",
      "Marchetti, Lucia, Avv.",
      "Whitfield IP Limited",
  };
  return v;
}

inline const std::vector<std::string>& inventor_names() {
  static const std::vector<std::string> v = {
      "Sørensen, Henrik", "Baumgartner, Felix", "Okafor, Chinedu",
      "Lindqvist, Maria",  "Dubois, Antoine",   "Kowalski, Piotr",
  };
  return v;
}

inline const std::vector<std::string>& wind_ipc_symbols() {
  static const std::vector<std::string> v = {
      "F03D 1/06", "F03D 7/02", "F03D 7/04", "F03D 9/00", "F03D 11/04", "F03D 80/70",
  };
  return v;
}

inline const std::vector<std::string>& decoy_ipc_symbols() {
  static const std::vector<std::string> v = {
      "F03B 3/12", "H02K 7/18", "B63B 35/44", "F16H 1/28", "G01W 1/02",
  };
  return v;
}

inline const std::vector<std::string>& noise_event_codes() {
  static const std::vector<std::string> v = {
      "0001492", "0004014", "0007773", "EPIDOSNIGR2", "EPIDOSNRFE2",
  };
  return v;
}

// The four applicant-change codes, all suffixed APPR.
inline const std::vector<std::string>& appr_event_codes() {
  static const std::vector<std::string> v = {
      "0002APPR", "0007APPR", "0008APPR", "EPIDOSNAPPR",
  };
  return v;
}

inline const std::vector<std::string>& challenge_event_codes() {
  static const std::vector<std::string> v = {
      "0008299OPPO", "0009260",     "EPIDOSCLIM1", "EPIDOSCRVR1",
      "EPIDOSCRVR6", "EPIDOSNLIM1", "EPIDOSNRVR1", "EPIDOSNRVR6",
  };
  return v;
}

inline const std::vector<std::string>& step_codes() {
  static const std::vector<std::string> v = {
      "PFEE", "LOPR", "EXAM", "RFEE", "ADWI", "OBSE", "PROL", "DEST",
  };
  return v;
}

inline const std::vector<std::string>& granted_status() {
  static const std::vector<std::string> v = {
      "Patent granted", "Opposition pending", "Patent maintained as amended",
  };
  return v;
}

inline const std::vector<std::string>& pending_status() {
  static const std::vector<std::string> v = {
      "Examination in progress", "Application withdrawn",
      "Request for examination pending",
  };
  return v;
}

inline std::string customer_id_for(const std::string& name) {
  const auto& pool = applicant_names();
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool[i] == name) return "CUST-" + std::to_string(100 + i);
  return "CUST-999";
}

}  // namespace synth_detail

/// Deterministic, schema-consistent fixture. Lifecycle ordering holds by
/// construction: publication bulletins at/after filing, examination events
/// after filing, B publications only for granted lifecycles, challenge events
/// only after grant.
inline Dataset generate_fixture(const GeneratorConfig& cfg) {
  for (double p : {cfg.p_core_missing, cfg.p_wind_ipc, cfg.p_citations, cfg.p_license,
                   cfg.p_grant, cfg.p_challenge, cfg.p_transfer, cfg.p_pgfp,
                   cfg.p_examination, cfg.p_representative})
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("generate_fixture: probabilities must be in [0, 1]");
  if (cfg.n_applications < 0)
    throw std::invalid_argument("generate_fixture: n_applications must be >= 0");
  if (cfg.member_states.empty() || cfg.member_states.size() > 38)
    throw std::invalid_argument("generate_fixture: member-state list must have 1..38 codes");
  if (cfg.year_from > cfg.year_to || cfg.year_from < 1978 || cfg.year_to > 2085)
    throw std::invalid_argument("generate_fixture: year range must lie within [1978, 2085]");

  using namespace synth_detail;
  Rng rng(cfg.seed);
  Dataset d;
  std::int64_t publn_counter = 0;

  for (int i = 0; i < cfg.n_applications; ++i) {
    const RegisterId id = 20'000'000 + i;
    const bool has_core = !rng.chance(cfg.p_core_missing);
    const ApplnId appln_id = has_core ? 500'000'000 + i : 0;
    const Date filing = random_date(rng, cfg.year_from, cfg.year_to);
    const bool granted = rng.chance(cfg.p_grant);
    const bool transfer = rng.chance(cfg.p_transfer);

    d.register_applications.push_back(
        {id, appln_id, filing,
         granted ? rng.pick(granted_status()) : rng.pick(pending_status())});

    if (has_core) {
      const std::string kind = rng.chance(0.25) ? "W" : "A";
      d.core_applications.push_back({appln_id, "EP", kind, filing});

      if (rng.chance(cfg.p_wind_ipc)) {
        const int n_ipc = static_cast<int>(rng.range(1, 2));
        for (int k = 0; k < n_ipc; ++k)
          d.ipc_assignments.push_back({appln_id, rng.pick(wind_ipc_symbols())});
        if (rng.chance(0.15))  // duplicate IPC rows occur in real dumps
          d.ipc_assignments.push_back({appln_id, d.ipc_assignments.back().ipc_class_symbol});
        if (rng.chance(0.30))
          d.ipc_assignments.push_back({appln_id, rng.pick(decoy_ipc_symbols())});
      } else {
        const int n_ipc = static_cast<int>(rng.range(1, 2));
        for (int k = 0; k < n_ipc; ++k)
          d.ipc_assignments.push_back({appln_id, rng.pick(decoy_ipc_symbols())});
      }

      const int n_pubs = static_cast<int>(rng.range(1, 2));
      std::vector<PublnId> pub_ids;
      for (int k = 0; k < n_pubs; ++k) {
        const PublnId publn = 800'000'000 + publn_counter++;
        pub_ids.push_back(publn);
        d.core_publications.push_back({publn, appln_id});
      }
      if (rng.chance(cfg.p_citations)) {
        for (PublnId publn : pub_ids) {
          const int n_cit = static_cast<int>(rng.range(1, 6));
          for (int c = 1; c <= n_cit; ++c)
            d.citations.push_back({publn, 900'000'000 + static_cast<std::int64_t>(rng.below(4000)),
                                   c});
          if (rng.chance(0.25))  // non-patent reference analog, excluded from counts
            d.citations.push_back(
                {publn, 990'000'000 + static_cast<std::int64_t>(rng.below(50)), 0});
        }
      }
    }

    const Date first_pub_date = filing.plus_days(450 + static_cast<std::int64_t>(rng.below(240)));
    const Bulletin first_bulletin = bulletin_of(first_pub_date);
    d.register_publications.push_back(
        {id, rng.chance(0.5) ? "A1" : "A2", first_bulletin.year, first_bulletin.nr});

    Date grant_date = first_pub_date;
    if (granted) {
      grant_date = first_pub_date.plus_days(350 + static_cast<std::int64_t>(rng.below(900)));
      const Bulletin b = bulletin_of(grant_date);
      d.register_publications.push_back({id, "B1", b.year, b.nr});
      if (rng.chance(0.10)) {
        const Bulletin amended =
            bulletin_of(grant_date.plus_days(200 + static_cast<std::int64_t>(rng.below(300))));
        d.register_publications.push_back({id, "B2", amended.year, amended.nr});
      }
      if (rng.chance(0.06)) {
        const Bulletin limited =
            bulletin_of(grant_date.plus_days(300 + static_cast<std::int64_t>(rng.below(400))));
        d.register_publications.push_back({id, "B3", limited.year, limited.nr});
      }
    }

    // Applicants: one set, or several when the lifecycle records transfers.
    const int n_sets = transfer ? static_cast<int>(rng.range(2, 6)) : 1;
    std::string current_name = rng.pick(applicant_names());
    for (int s = 1; s <= n_sets; ++s) {
      if (s > 1 && rng.chance(0.6)) current_name = rng.pick(applicant_names());
      const Bulletin b =
          s == 1 ? first_bulletin
                 : bulletin_of(first_pub_date.plus_days(
                       s * 170 + static_cast<std::int64_t>(rng.below(120))));
      const int n_app = rng.chance(0.15) ? 2 : 1;
      for (int q = 1; q <= n_app; ++q) {
        const std::string name = q == 1 ? current_name : rng.pick(applicant_names());
        const std::string customer =
            rng.chance(0.1) ? std::string{} : customer_id_for(name);
        d.parties.push_back({id, PartyType::Applicant, q, s, s == n_sets, name, customer,
                             b.year, b.nr});
      }
    }

    const int n_inv = static_cast<int>(rng.range(1, 2));
    for (int q = 1; q <= n_inv; ++q)
      d.parties.push_back({id, PartyType::Inventor, q, 1, true, rng.pick(inventor_names()),
                           std::string{}, first_bulletin.year, first_bulletin.nr});

    if (rng.chance(cfg.p_representative)) {
      const bool listed_in_first = rng.chance(0.88);
      const Bulletin rep_bulletin =
          listed_in_first
              ? first_bulletin
              : bulletin_of(first_pub_date.plus_days(
                    90 + static_cast<std::int64_t>(rng.below(200))));
      const bool rep_change = rng.chance(0.15);
      d.parties.push_back({id, PartyType::Representative, 1, 1, !rep_change,
                           rng.pick(agent_names()), std::string{}, rep_bulletin.year,
                           rep_bulletin.nr});
      if (rep_change) {
        const Bulletin b = bulletin_of(first_pub_date.plus_days(
            400 + static_cast<std::int64_t>(rng.below(600))));
        d.parties.push_back({id, PartyType::Representative, 1, 2, true,
                             rng.pick(agent_names()), std::string{}, b.year, b.nr});
      }
    }

    if (rng.chance(cfg.p_examination)) {
      const Date exam = filing.plus_days(180 + static_cast<std::int64_t>(rng.below(500)));
      d.register_events.push_back({id, std::string(k_first_examination_event_code), exam});
      if (rng.chance(0.06))  // repeated report; the earliest one counts
        d.register_events.push_back(
            {id, std::string(k_first_examination_event_code),
             exam.plus_days(30 + static_cast<std::int64_t>(rng.below(300)))});
    }
    const int n_noise = static_cast<int>(rng.below(4));
    for (int k = 0; k < n_noise; ++k)
      d.register_events.push_back({id, rng.pick(noise_event_codes()),
                                   filing.plus_days(static_cast<std::int64_t>(rng.below(1500)))});
    if (transfer) {
      const int n_appr = static_cast<int>(rng.range(1, 2));
      for (int k = 0; k < n_appr; ++k)
        d.register_events.push_back(
            {id, rng.pick(appr_event_codes()),
             filing.plus_days(400 + static_cast<std::int64_t>(rng.below(1200)))});
      if (rng.chance(0.10))  // starts with APPR but does not end with it
        d.register_events.push_back(
            {id, "APPR0012",
             filing.plus_days(400 + static_cast<std::int64_t>(rng.below(1200)))});
    }
    if (granted && rng.chance(cfg.p_challenge)) {
      const int n_events = static_cast<int>(rng.range(1, 3));
      for (int k = 0; k < n_events; ++k)
        d.register_events.push_back(
            {id, rng.pick(challenge_event_codes()),
             grant_date.plus_days(30 + static_cast<std::int64_t>(rng.below(240)))});
    }

    int n_steps = static_cast<int>(rng.below(12));
    if (rng.chance(0.06)) n_steps += 20 + static_cast<int>(rng.below(40));
    for (int k = 0; k < n_steps; ++k)
      d.procedure_steps.push_back({id, rng.pick(step_codes())});

    if (rng.chance(cfg.p_license)) {
      const int n_lic = static_cast<int>(rng.range(1, 2));
      for (int j = 1; j <= n_lic; ++j) {
        const bool covers_all = rng.chance(0.2);
        d.licensees.push_back(
            {id, j,
             rng.chance(0.5) ? LicenseType::NonExclusive
                             : (rng.chance(0.5) ? LicenseType::Exclusive
                                                : LicenseType::RightInRem),
             covers_all ? LicenseDesignation::All : LicenseDesignation::AsIndicated});
        if (covers_all) continue;  // "all" licenses carry no state rows
        const Bulletin b = bulletin_of(first_pub_date.plus_days(
            static_cast<std::int64_t>(rng.below(1000))));
        const std::size_t n_states =
            1 + rng.below(std::min<std::size_t>(12, cfg.member_states.size()));
        for (const auto& country : rng.sample(cfg.member_states, n_states))
          d.licensee_states.push_back({id, j, country, b.year, b.nr});
      }
    }

    const std::size_t n_designated = 1 + rng.below(cfg.member_states.size());
    for (const auto& country : rng.sample(cfg.member_states, n_designated))
      d.designated_states.push_back({id, country});

    if (has_core && granted && rng.chance(cfg.p_pgfp)) {
      const std::size_t n_validated =
          1 + rng.below(std::min<std::size_t>(12, cfg.member_states.size()));
      const auto countries = rng.sample(cfg.member_states, n_validated);
      const int grant_year = bulletin_of(grant_date).year;
      for (const auto& country : countries)
        d.legal_status_events.push_back(
            {appln_id, std::string(k_pgfp_code), country,
             std::min(grant_year + 1 + static_cast<int>(rng.below(4)), 9999)});
      if (rng.chance(0.10))  // duplicated payment row; the distinct count absorbs it
        d.legal_status_events.push_back(d.legal_status_events.back());
    }
    if (has_core && rng.chance(0.25))
      d.legal_status_events.push_back(
          {appln_id, rng.chance(0.5) ? "EPPV" : "NPRS",
           rng.chance(0.5) ? rng.pick(cfg.member_states) : std::string{}, std::nullopt});
  }

  // Core-only decoys: wrong authority, wrong kind, and EP applications with no
  // register counterpart (the latter surface as skipped cohort members).
  const int n_extra = cfg.n_applications / 10;
  for (int j = 0; j < n_extra; ++j) {
    const ApplnId appln_id = 700'000'000 + j;
    const Date filing = random_date(rng, cfg.year_from, cfg.year_to);
    switch (j % 3) {
      case 0:
        d.core_applications.push_back(
            {appln_id, rng.chance(0.5) ? "US" : "JP", "A", filing});
        break;
      case 1: d.core_applications.push_back({appln_id, "EP", "T", filing}); break;
      case 2: d.core_applications.push_back({appln_id, "EP", "A", filing}); break;
    }
    d.ipc_assignments.push_back({appln_id, rng.pick(wind_ipc_symbols())});
    d.core_publications.push_back({800'000'000 + publn_counter++, appln_id});
  }

  return d;
}

}  // namespace patreg
