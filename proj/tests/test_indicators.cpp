#include <catch2/catch_amalgamated.hpp>

#include "patreg/indicators.hpp"
#include "patreg/store.hpp"

using namespace patreg;

namespace {

const Date kFiling{2005, 6, 1};

void add_app(Dataset& d, RegisterId id, ApplnId appln, Date filing = kFiling,
             const std::string& ipc = "F03D 7/02") {
  d.register_applications.push_back({id, appln, filing, "pending"});
  if (appln > 0) {
    d.core_applications.push_back({appln, "EP", "A", filing});
    if (!ipc.empty()) d.ipc_assignments.push_back({appln, ipc});
  }
}

Cohort default_cohort(const IndexedStore& store) { return select_cohort(store, CohortSpec{}); }

}  // namespace

// ---------------------------------------------------------------------------
// Cohort

TEST_CASE("cohort selection filters authority, kind, year and IPC prefix") {
  Dataset d;
  add_app(d, 1, 101, {2000, 1, 15});
  add_app(d, 2, 102, {2005, 7, 1});
  add_app(d, 3, 103, {2010, 12, 31});
  add_app(d, 4, 104, kFiling, "F03B 3/12");   // wrong subclass
  add_app(d, 5, 105, {1999, 12, 31});         // filed too early
  IndexedStore store = build_store(std::move(d));

  const Cohort cohort = default_cohort(store);
  REQUIRE(cohort.members.size() == 3);
  CHECK(cohort.members[0].appln_id == 101);
  CHECK(cohort.members[1].appln_id == 102);
  CHECK(cohort.members[2].appln_id == 103);
  CHECK(cohort.members[0].register_id == 1);
}

TEST_CASE("an empty IPC relation empties the cohort") {
  Dataset d;
  add_app(d, 1, 101, kFiling, "");
  IndexedStore store = build_store(std::move(d));
  CHECK(default_cohort(store).members.empty());
}

TEST_CASE("kind and authority filters apply") {
  Dataset d;
  d.register_applications.push_back({1, 101, kFiling, ""});
  d.core_applications.push_back({101, "EP", "T", kFiling});  // excluded kind
  d.ipc_assignments.push_back({101, "F03D 1/06"});
  d.register_applications.push_back({2, 102, kFiling, ""});
  d.core_applications.push_back({102, "US", "A", kFiling});  // excluded authority
  d.ipc_assignments.push_back({102, "F03D 1/06"});
  d.register_applications.push_back({3, 103, kFiling, ""});
  d.core_applications.push_back({103, "EP", "W", kFiling});  // PCT route counts
  d.ipc_assignments.push_back({103, "F03D 1/06"});
  IndexedStore store = build_store(std::move(d));

  const Cohort cohort = default_cohort(store);
  REQUIRE(cohort.members.size() == 1);
  CHECK(cohort.members[0].appln_id == 103);
}

TEST_CASE("prefixes shorter and longer than the subclass work") {
  Dataset d;
  add_app(d, 1, 101, kFiling, "F03D 7/02");
  add_app(d, 2, 102, kFiling, "F03D 1/06");
  add_app(d, 3, 103, kFiling, "F03B 3/12");
  IndexedStore store = build_store(std::move(d));

  CohortSpec shorter;
  shorter.ipc_prefix = "F03";
  CHECK(select_cohort(store, shorter).members.size() == 3);

  CohortSpec longer;
  longer.ipc_prefix = "F03D 7";
  const Cohort cohort = select_cohort(store, longer);
  REQUIRE(cohort.members.size() == 1);
  CHECK(cohort.members[0].appln_id == 101);
}

TEST_CASE("duplicate IPC rows do not duplicate cohort members") {
  Dataset d;
  add_app(d, 1, 101);
  d.ipc_assignments.push_back({101, "F03D 7/02"});
  d.ipc_assignments.push_back({101, "F03D 9/00"});
  IndexedStore store = build_store(std::move(d));
  CHECK(default_cohort(store).members.size() == 1);
}

TEST_CASE("invalid cohort specs are rejected") {
  IndexedStore store = build_store(Dataset{});
  CohortSpec bad_years;
  bad_years.year_from = 2010;
  bad_years.year_to = 2000;
  CHECK_THROWS_AS(select_cohort(store, bad_years), std::invalid_argument);
  CohortSpec empty_prefix;
  empty_prefix.ipc_prefix = "";
  CHECK_THROWS_AS(select_cohort(store, empty_prefix), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Backward citations

TEST_CASE("citation counting unions distinct cited ids over publications") {
  Dataset d;
  add_app(d, 1, 101);
  d.core_publications = {{11, 101}, {12, 101}};
  d.citations = {
      {11, 500, 1}, {11, 501, 2},  // {X, Y}
      {12, 501, 1}, {12, 502, 2},  // {Y, Z}
      {11, 503, 0},                // seq 0: kept in the data, excluded here
  };
  IndexedStore store = build_store(std::move(d));
  auto rows = backward_citation_count(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == 3);
}

TEST_CASE("zero-citation members appear as 0 by default and vanish in paper-compat") {
  Dataset d;
  add_app(d, 1, 101);
  d.core_publications = {{11, 101}};
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  auto rows = backward_citation_count(store, cohort);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == 0);
  CHECK(backward_citation_count(store, cohort, OutputMode::PaperCompat).empty());
}

TEST_CASE("duplicated citation rows never change the count") {
  Dataset d;
  add_app(d, 1, 101);
  d.core_publications = {{11, 101}};
  d.citations = {{11, 500, 1}, {11, 501, 2}};
  Dataset duplicated = d;
  duplicated.citations.push_back(duplicated.citations[0]);

  IndexedStore store = build_store(std::move(d));
  IndexedStore store_dup = build_store(std::move(duplicated));
  CHECK(backward_citation_count(store, default_cohort(store)) ==
        backward_citation_count(store_dup, default_cohort(store_dup)));
}

TEST_CASE("a citation to a previously uncited id increments the count by one") {
  Dataset d;
  add_app(d, 1, 101);
  d.core_publications = {{11, 101}};
  d.citations = {{11, 500, 1}};
  Dataset extended = d;
  extended.citations.push_back({11, 999, 2});

  IndexedStore store = build_store(std::move(d));
  IndexedStore store_ext = build_store(std::move(extended));
  CHECK(backward_citation_count(store_ext, default_cohort(store_ext))[0].value ==
        backward_citation_count(store, default_cohort(store))[0].value + 1);
}

TEST_CASE("citation rows order by count descending then id ascending") {
  Dataset d;
  add_app(d, 7, 101);
  add_app(d, 3, 102);
  add_app(d, 5, 103);
  d.core_publications = {{11, 101}, {12, 102}, {13, 103}};
  d.citations = {{11, 500, 1}, {12, 500, 1}, {13, 500, 1}, {13, 501, 2}};
  IndexedStore store = build_store(std::move(d));
  auto rows = backward_citation_count(store, default_cohort(store));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].id == 5);  // count 2
  CHECK(rows[1].id == 3);  // count 1, lower id first
  CHECK(rows[2].id == 7);
}

TEST_CASE("cohort members without a register row are skipped and reported") {
  Dataset d;
  add_app(d, 1, 101);
  d.core_applications.push_back({102, "EP", "A", kFiling});  // no register side
  d.ipc_assignments.push_back({102, "F03D 1/06"});
  d.core_publications = {{11, 102}};
  d.citations = {{11, 500, 1}};
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  REQUIRE(cohort.members.size() == 2);
  auto rows = backward_citation_count(store, cohort);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].appln_id == 101);
  auto skipped = skipped_members(cohort);
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].appln_id == 102);
}

// ---------------------------------------------------------------------------
// License coverage

TEST_CASE("license country coverage counts distinct countries across licensees") {
  Dataset d;
  add_app(d, 1, 101);
  d.licensees = {{1, 1, LicenseType::Exclusive, LicenseDesignation::AsIndicated},
                 {1, 2, LicenseType::NonExclusive, LicenseDesignation::AsIndicated}};
  d.licensee_states = {
      {1, 1, "DE", 2006, 10}, {1, 1, "FR", 2006, 10},  // {DE, FR}
      {1, 2, "FR", 2007, 20}, {1, 2, "NL", 2007, 20},  // {FR, NL}
  };
  IndexedStore store = build_store(std::move(d));
  auto rows = license_country_coverage(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].nb_countries == 3);
  CHECK_FALSE(rows[0].has_all_designation);
}

TEST_CASE("an all-countries license sets the flag without widening the count") {
  Dataset d;
  add_app(d, 1, 101);
  d.licensees = {{1, 1, LicenseType::NonExclusive, LicenseDesignation::All},
                 {1, 2, LicenseType::Exclusive, LicenseDesignation::AsIndicated}};
  d.licensee_states = {{1, 2, "DE", 2006, 10}};
  IndexedStore store = build_store(std::move(d));
  auto rows = license_country_coverage(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].nb_countries == 1);
  CHECK(rows[0].has_all_designation);
}

TEST_CASE("paper-compat drops members with no licensee-state rows") {
  Dataset d;
  add_app(d, 1, 101);
  add_app(d, 2, 102);
  d.licensees = {{1, 1, LicenseType::NonExclusive, LicenseDesignation::All}};
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  auto rows = license_country_coverage(store, cohort);
  REQUIRE(rows.size() == 2);  // the all-designation member still shows, count 0
  CHECK(license_country_coverage(store, cohort, OutputMode::PaperCompat).empty());
}

// ---------------------------------------------------------------------------
// Applicant sets and transfer signals

TEST_CASE("applicant set count is the maximum set number") {
  Dataset d;
  add_app(d, 1, 101);  // single set
  d.parties.push_back({1, PartyType::Applicant, 1, 1, true, "A", "", 2006, 10});
  add_app(d, 2, 102);  // sets {1,2,3}, set 3 with three seat rows
  d.parties.push_back({2, PartyType::Applicant, 1, 1, false, "A", "", 2006, 10});
  d.parties.push_back({2, PartyType::Applicant, 1, 2, false, "B", "", 2007, 10});
  for (int seq = 1; seq <= 3; ++seq)
    d.parties.push_back({2, PartyType::Applicant, seq, 3, true, "C", "", 2008, 10});
  d.parties.push_back({2, PartyType::Inventor, 1, 1, true, "I", "", 2006, 10});
  IndexedStore store = build_store(std::move(d));

  auto rows = applicant_set_count(store, default_cohort(store));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].id == 2);
  CHECK(rows[0].value == 3);  // seq multiplicity is irrelevant
  CHECK(rows[1].id == 1);
  CHECK(rows[1].value == 1);
}

TEST_CASE("members without applicant rows get 0 by default, vanish in paper-compat") {
  Dataset d;
  add_app(d, 1, 101);
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);
  auto rows = applicant_set_count(store, cohort);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == 0);
  CHECK(applicant_set_count(store, cohort, OutputMode::PaperCompat).empty());
}

TEST_CASE("transfer signals: constant customer id and no change events") {
  Dataset d;
  add_app(d, 1, 101);
  d.parties.push_back({1, PartyType::Applicant, 1, 1, false, "A", "C1", 2006, 10});
  d.parties.push_back({1, PartyType::Applicant, 1, 2, true, "A", "C1", 2007, 10});
  IndexedStore store = build_store(std::move(d));
  auto rows = transfer_signals(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_applicant_sets == 2);
  CHECK(rows[0].n_distinct_customer_ids == 1);
  CHECK(rows[0].n_appr_events == 0);
}

TEST_CASE("transfer signals: suffix rule counts only codes ending in APPR") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_events = {
      {1, "XXAPPR", {2006, 1, 1}},
      {1, "YYAPPR", {2007, 1, 1}},
      {1, "OTHER", {2008, 1, 1}},
      {1, "APPR0012", {2008, 2, 1}},  // prefix, not suffix
  };
  IndexedStore store = build_store(std::move(d));
  auto rows = transfer_signals(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_appr_events == 2);
}

TEST_CASE("transfer signals: explicit code list overrides the suffix") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_events = {{1, "XXAPPR", {2006, 1, 1}}, {1, "SPECIAL", {2007, 1, 1}}};
  IndexedStore store = build_store(std::move(d));
  ApprRule rule;
  rule.explicit_codes = {"SPECIAL"};
  auto rows = transfer_signals(store, default_cohort(store), rule);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_appr_events == 1);
}

TEST_CASE("transfer signals: customer id changes across sets are counted") {
  Dataset d;
  add_app(d, 1, 101);
  d.parties.push_back({1, PartyType::Applicant, 1, 1, false, "A", "C1", 2006, 10});
  d.parties.push_back({1, PartyType::Applicant, 1, 2, true, "B", "C2", 2007, 10});
  d.parties.push_back({1, PartyType::Representative, 1, 1, true, "R", "C9", 2006, 10});
  IndexedStore store = build_store(std::move(d));
  auto rows = transfer_signals(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_distinct_customer_ids == 2);  // the agent's id is not applicant-side
}

// ---------------------------------------------------------------------------
// Examination lag

TEST_CASE("examination lag uses the earliest first-examination event") {
  Dataset d;
  add_app(d, 1, 101, {2008, 3, 26});
  d.register_events = {
      {1, "0009185", {2008, 11, 14}},
      {1, "0009185", {2009, 2, 1}},  // later duplicate loses
      {1, "0001492", {2008, 5, 5}},
  };
  add_app(d, 2, 102, {2000, 1, 1});
  d.register_events.push_back({2, "0009185", {2000, 3, 1}});
  add_app(d, 3, 103, {2005, 4, 4});
  d.register_events.push_back({3, "0009185", {2005, 4, 4}});  // same day
  add_app(d, 4, 104);  // no event: absent
  IndexedStore store = build_store(std::move(d));

  auto result = days_to_first_examination(store, default_cohort(store));
  REQUIRE(result.rows.size() == 3);
  CHECK(result.rows[0].id == 3);
  CHECK(result.rows[0].days == 0);
  CHECK(result.rows[1].id == 2);
  CHECK(result.rows[1].days == 60);
  CHECK(result.rows[2].id == 1);
  CHECK(result.rows[2].days == 233);
  CHECK(result.rows[2].exam_date == Date{2008, 11, 14});
  CHECK(result.warnings.empty());
}

TEST_CASE("negative examination lags are kept and flagged") {
  Dataset d;
  add_app(d, 1, 101, {2008, 3, 26});
  d.register_events = {{1, "0009185", {2008, 3, 20}}};
  IndexedStore store = build_store(std::move(d));
  auto result = days_to_first_examination(store, default_cohort(store));
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].days == -6);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("negative examination lag") != std::string::npos);
}

// ---------------------------------------------------------------------------
// First representative

TEST_CASE("the agent listed in the oldest bulletin is reported") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_publications = {{1, "A1", 2006, 30}, {1, "B1", 2009, 2}};
  d.parties = {
      {1, PartyType::Representative, 1, 1, true, "First Agent", "", 2006, 30},
      {1, PartyType::Applicant, 1, 1, true, "Owner", "", 2006, 30},
  };
  IndexedStore store = build_store(std::move(d));
  auto rows = first_representative(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].name == "First Agent");
  CHECK(rows[0].bulletin_year == 2006);
  CHECK(rows[0].bulletin_nr == 30);
}

TEST_CASE("numeric and concat bulletin orderings diverge on weeks 1-9") {
  Dataset d;
  add_app(d, 1, 101, {2000, 7, 19});
  d.register_publications = {{1, "A1", 2001, 5}, {1, "A2", 2001, 30}};
  d.parties = {
      {1, PartyType::Representative, 1, 1, false, "Week Five Agent", "", 2001, 5},
      {1, PartyType::Representative, 1, 2, true, "Week Thirty Agent", "", 2001, 30},
  };
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  auto numeric = first_representative(store, cohort, BulletinOrdering::Numeric);
  REQUIRE(numeric.size() == 1);
  CHECK(numeric[0].name == "Week Five Agent");
  CHECK(numeric[0].bulletin_nr == 5);

  // "200130" sorts before "20015" lexicographically.
  auto compat = first_representative(store, cohort, BulletinOrdering::PaperCompat);
  REQUIRE(compat.size() == 1);
  CHECK(compat[0].name == "Week Thirty Agent");
  CHECK(compat[0].bulletin_nr == 30);
}

TEST_CASE("orderings agree when all bulletin weeks are double-digit") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_publications = {{1, "A1", 2006, 12}, {1, "A2", 2006, 45}};
  d.parties = {{1, PartyType::Representative, 1, 1, true, "Agent", "", 2006, 12}};
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);
  CHECK(first_representative(store, cohort, BulletinOrdering::Numeric) ==
        first_representative(store, cohort, BulletinOrdering::PaperCompat));
}

TEST_CASE("members lacking a matching agent row are absent") {
  Dataset d;
  add_app(d, 1, 101);  // publication but agent listed in a later bulletin
  d.register_publications = {{1, "A1", 2006, 30}};
  d.parties = {{1, PartyType::Representative, 1, 1, true, "Late Agent", "", 2007, 2}};
  add_app(d, 2, 102);  // no publications at all
  d.parties.push_back({2, PartyType::Representative, 1, 1, true, "Agent", "", 2006, 30});
  IndexedStore store = build_store(std::move(d));
  CHECK(first_representative(store, default_cohort(store)).empty());
}

TEST_CASE("several agents in the first bulletin all appear, in seat order") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_publications = {{1, "A1", 2006, 30}};
  d.parties = {
      {1, PartyType::Representative, 2, 1, true, "Second Seat", "", 2006, 30},
      {1, PartyType::Representative, 1, 1, true, "First Seat", "", 2006, 30},
  };
  IndexedStore store = build_store(std::move(d));
  auto rows = first_representative(store, default_cohort(store));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].name == "First Seat");
  CHECK(rows[1].name == "Second Seat");
}

// ---------------------------------------------------------------------------
// Validity challenges and amendment kinds

TEST_CASE("challenge counting filters on the configured code set") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_events = {
      {1, "0009260", {2010, 1, 1}},
      {1, "EPIDOSNLIM1", {2010, 2, 1}},
      {1, "UNRELATED", {2010, 3, 1}},
  };
  IndexedStore store = build_store(std::move(d));
  auto rows = validity_challenge_count(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == 2);
}

TEST_CASE("challenge counting counts rows, not distinct codes") {
  Dataset d;
  add_app(d, 1, 101);
  for (int k = 0; k < 3; ++k)
    d.register_events.push_back({1, "0008299OPPO", {2013, 8, 21 + k}});
  IndexedStore store = build_store(std::move(d));
  auto rows = validity_challenge_count(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == 3);
}

TEST_CASE("a custom challenge code set replaces the default") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_events = {{1, "0009260", {2010, 1, 1}}, {1, "CUSTOM1", {2010, 2, 1}}};
  IndexedStore store = build_store(std::move(d));
  auto rows =
      validity_challenge_count(store, default_cohort(store), OutputMode::Default, {"CUSTOM1"});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == 1);
}

TEST_CASE("amendment kinds intersect publication kinds with B2/B3") {
  Dataset d;
  add_app(d, 1, 101);
  d.register_publications = {{1, "A1", 2005, 1}, {1, "B1", 2007, 1}, {1, "B2", 2009, 1}};
  add_app(d, 2, 102);  // no publications
  add_app(d, 3, 103);
  d.register_publications.push_back({3, "A2", 2005, 1});
  d.register_publications.push_back({3, "B2", 2008, 1});
  d.register_publications.push_back({3, "B3", 2010, 1});
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  auto rows = post_grant_amendment_kinds(store, cohort);
  REQUIRE(rows.size() == 3);
  CHECK((rows[0].has_b2 && !rows[0].has_b3));
  CHECK((!rows[1].has_b2 && !rows[1].has_b3));
  CHECK((rows[2].has_b2 && rows[2].has_b3));

  auto compat = post_grant_amendment_kinds(store, cohort, OutputMode::PaperCompat);
  REQUIRE(compat.size() == 2);  // the empty set vanishes
}

// ---------------------------------------------------------------------------
// Validated states

TEST_CASE("validated states count distinct fee-payment countries") {
  Dataset d;
  add_app(d, 1, 101);
  d.legal_status_events = {
      {101, "PGFP", "DE", 2012},
      {101, "PGFP", "DE", 2013},  // erroneous duplicate
      {101, "PGFP", "FR", 2012},
      {101, "EPPV", "", std::nullopt},
  };
  add_app(d, 2, 102);  // no rows
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  auto rows = validated_state_count(store, cohort);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].id == 1);
  CHECK(rows[0].value == 2);
  CHECK(rows[1].value == 0);
  auto compat = validated_state_count(store, cohort, OutputMode::PaperCompat);
  REQUIRE(compat.size() == 1);
  CHECK(compat[0].value == 2);
}

// ---------------------------------------------------------------------------
// Procedure-step averages

TEST_CASE("one applicant, one application, one step averages to 1.00") {
  Dataset d;
  add_app(d, 1, 101);
  d.parties = {{1, PartyType::Applicant, 1, 1, true, "Solo GmbH", "", 2006, 10}};
  d.procedure_steps = {{1, "PFEE"}};
  IndexedStore store = build_store(std::move(d));
  auto rows = avg_procedure_steps_by_applicant(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].name == "Solo GmbH");
  CHECK(rows[0].avg_steps_x100 == 100);
  CHECK(format_hundredths(rows[0].avg_steps_x100) == "1.00");
}

TEST_CASE("two applications with 3 and 4 steps average to 3.50 in both modes") {
  Dataset d;
  add_app(d, 1, 101);
  add_app(d, 2, 102);
  d.parties = {
      {1, PartyType::Applicant, 1, 1, true, "Shared Name", "", 2006, 10},
      {2, PartyType::Applicant, 1, 1, true, "Shared Name", "", 2006, 10},
  };
  for (int k = 0; k < 3; ++k) d.procedure_steps.push_back({1, "PFEE"});
  for (int k = 0; k < 4; ++k) d.procedure_steps.push_back({2, "LOPR"});
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  for (auto mode : {StepAverageMode::PaperFaithful, StepAverageMode::Normalized}) {
    auto rows = avg_procedure_steps_by_applicant(store, cohort, mode);
    REQUIRE(rows.size() == 1);
    CHECK(format_hundredths(rows[0].avg_steps_x100) == "3.50");
  }
}

TEST_CASE("a doubled latest-applicant row inflates only the faithful mode") {
  Dataset d;
  add_app(d, 1, 101);
  add_app(d, 2, 102);
  d.parties = {
      // Application 1 carries TWO latest rows with the same name.
      {1, PartyType::Applicant, 1, 1, true, "Shared Name", "", 2006, 10},
      {1, PartyType::Applicant, 2, 1, true, "Shared Name", "", 2006, 10},
      {2, PartyType::Applicant, 1, 1, true, "Shared Name", "", 2006, 10},
  };
  for (int k = 0; k < 3; ++k) d.procedure_steps.push_back({1, "PFEE"});
  for (int k = 0; k < 4; ++k) d.procedure_steps.push_back({2, "LOPR"});
  IndexedStore store = build_store(std::move(d));
  const Cohort cohort = default_cohort(store);

  auto faithful = avg_procedure_steps_by_applicant(store, cohort, StepAverageMode::PaperFaithful);
  REQUIRE(faithful.size() == 1);
  CHECK(format_hundredths(faithful[0].avg_steps_x100) == "5.00");  // (3*2 + 4) / 2

  auto normalized = avg_procedure_steps_by_applicant(store, cohort, StepAverageMode::Normalized);
  REQUIRE(normalized.size() == 1);
  CHECK(format_hundredths(normalized[0].avg_steps_x100) == "3.50");
}

TEST_CASE("non-latest rows and step-less applications stay out of the grouping") {
  Dataset d;
  add_app(d, 1, 101);
  add_app(d, 2, 102);
  d.parties = {
      {1, PartyType::Applicant, 1, 1, false, "Old Name", "", 2006, 10},
      {1, PartyType::Applicant, 1, 2, true, "New Name", "", 2007, 10},
      {2, PartyType::Applicant, 1, 1, true, "Stepless Co", "", 2006, 10},
  };
  d.procedure_steps = {{1, "PFEE"}, {1, "LOPR"}};
  IndexedStore store = build_store(std::move(d));
  auto rows = avg_procedure_steps_by_applicant(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].name == "New Name");
  CHECK(rows[0].avg_steps_x100 == 200);
}

TEST_CASE("rounding is half away from zero at two decimals") {
  Dataset d;
  for (int i = 1; i <= 3; ++i) add_app(d, i, 100 + i);
  d.parties = {
      {1, PartyType::Applicant, 1, 1, true, "Trio AG", "", 2006, 10},
      {2, PartyType::Applicant, 1, 1, true, "Trio AG", "", 2006, 10},
      {3, PartyType::Applicant, 1, 1, true, "Trio AG", "", 2006, 10},
  };
  // 10 steps over 3 applications: 3.333... -> 3.33
  for (int k = 0; k < 3; ++k) d.procedure_steps.push_back({1, "PFEE"});
  for (int k = 0; k < 3; ++k) d.procedure_steps.push_back({2, "PFEE"});
  for (int k = 0; k < 4; ++k) d.procedure_steps.push_back({3, "PFEE"});
  IndexedStore store = build_store(std::move(d));
  auto rows = avg_procedure_steps_by_applicant(store, default_cohort(store));
  REQUIRE(rows.size() == 1);
  CHECK(format_hundredths(rows[0].avg_steps_x100) == "3.33");

  // 0.125 rounds up, away from zero.
  CHECK(patreg::detail::ratio_hundredths(1, 8) == 13);
  // Exact halves at the second decimal round away from zero.
  CHECK(patreg::detail::ratio_hundredths(7, 2) == 350);
  CHECK(patreg::detail::ratio_hundredths(1, 200) == 1);  // 0.005 -> 0.01
}

TEST_CASE("step averages order by value descending then name ascending") {
  Dataset d;
  add_app(d, 1, 101);
  add_app(d, 2, 102);
  add_app(d, 3, 103);
  d.parties = {
      {1, PartyType::Applicant, 1, 1, true, "Zeta", "", 2006, 10},
      {2, PartyType::Applicant, 1, 1, true, "Alpha", "", 2006, 10},
      {3, PartyType::Applicant, 1, 1, true, "Mid", "", 2006, 10},
  };
  d.procedure_steps = {{1, "A"}, {2, "A"}, {3, "A"}, {3, "B"}};
  IndexedStore store = build_store(std::move(d));
  auto rows = avg_procedure_steps_by_applicant(store, default_cohort(store));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].name == "Mid");    // 2.00
  CHECK(rows[1].name == "Alpha");  // 1.00, tie broken by name
  CHECK(rows[2].name == "Zeta");
}
