#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "patreg/ingest.hpp"
#include "patreg/rng.hpp"
#include "patreg/synth.hpp"
#include "support.hpp"

using namespace patreg;

namespace {

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

DatasetManifest manifest_for(const std::filesystem::path& dir,
                             ValidationMode mode = ValidationMode::Strict) {
  DatasetManifest m;
  m.directory = dir;
  m.mode = mode;
  return m;
}

}  // namespace

TEST_CASE("a lone header-only table loads as an empty dataset") {
  support::TempDir dir;
  write_file(dir.path / "reg101_appln.csv", "id,appln_id,appln_filing_date,status\n");
  auto [dataset, report] = load_dataset(manifest_for(dir.path));
  CHECK(dataset.register_applications.empty());
  CHECK(dataset.core_applications.empty());
  CHECK(report.clean());
  CHECK(report.warnings.empty());
  CHECK(report.tables.at(TableId::Reg101Appln).rows_in == 0);
}

TEST_CASE("missing directory raises an IO error") {
  CHECK_THROWS_AS(load_dataset(manifest_for("/nonexistent/patreg")), IoError);
}

TEST_CASE("an analytically malformed date is fatal in strict, dropped in lenient") {
  support::TempDir dir;
  write_file(dir.path / "reg101_appln.csv",
             "id,appln_id,appln_filing_date,status\n"
             "1,100,2007-05-04,ok\n"
             "2,200,2008-13-01,bad month\n");

  SECTION("strict names the table and line") {
    CHECK_THROWS_WITH(load_dataset(manifest_for(dir.path)),
                      Catch::Matchers::ContainsSubstring("reg101_appln") &&
                          Catch::Matchers::ContainsSubstring("line 3"));
  }
  SECTION("lenient drops the row and records one violation") {
    auto [dataset, report] = load_dataset(manifest_for(dir.path, ValidationMode::Lenient));
    REQUIRE(dataset.register_applications.size() == 1);
    CHECK(dataset.register_applications[0].id == 1);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].table == TableId::Reg101Appln);
    CHECK(report.violations[0].row == 3);
    CHECK(report.violations[0].kind == ViolationKind::UnparsableField);
    const auto& stats = report.tables.at(TableId::Reg101Appln);
    CHECK(stats.rows_in == 2);
    CHECK(stats.rows_loaded == 1);
    CHECK(stats.rows_dropped == 1);
  }
}

TEST_CASE("generator output survives a write/load round-trip relation by relation") {
  GeneratorConfig cfg;
  cfg.seed = 42;
  cfg.n_applications = 100;
  const Dataset generated = generate_fixture(cfg);

  support::TempDir dir;
  write_dataset(generated, dir.path);
  auto [loaded, report] = load_dataset(manifest_for(dir.path));
  CHECK(report.clean());
  CHECK(report.warnings.empty());

  CHECK(loaded.register_applications == generated.register_applications);
  CHECK(loaded.register_publications == generated.register_publications);
  CHECK(loaded.parties == generated.parties);
  CHECK(loaded.designated_states == generated.designated_states);
  CHECK(loaded.licensees == generated.licensees);
  CHECK(loaded.licensee_states == generated.licensee_states);
  CHECK(loaded.procedure_steps == generated.procedure_steps);
  CHECK(loaded.register_events == generated.register_events);
  CHECK(loaded.core_applications == generated.core_applications);
  CHECK(loaded.ipc_assignments == generated.ipc_assignments);
  CHECK(loaded.core_publications == generated.core_publications);
  CHECK(loaded.citations == generated.citations);
  CHECK(loaded.legal_status_events == generated.legal_status_events);
  CHECK(loaded == generated);

  // write(load(x)) is byte-identical to the canonical write of x.
  support::TempDir dir2;
  write_dataset(loaded, dir2.path);
  for (TableId t : k_all_tables)
    CHECK(support::read_file(dir.path / table_file_name(t)) ==
          support::read_file(dir2.path / table_file_name(t)));
}

TEST_CASE("header matching is case-insensitive with free column order") {
  support::TempDir dir;
  write_file(dir.path / "reg101_appln.csv",
             "STATUS,Appln_Id,ID,appln_filing_date,extra_column\n"
             "granted,300,7,2004-11-30,ignored\n");
  auto [dataset, report] = load_dataset(manifest_for(dir.path));
  REQUIRE(dataset.register_applications.size() == 1);
  const auto& row = dataset.register_applications[0];
  CHECK(row.id == 7);
  CHECK(row.appln_id == 300);
  CHECK(row.status == "granted");
  CHECK(row.appln_filing_date == Date{2004, 11, 30});
  CHECK(report.clean());
}

TEST_CASE("a header lacking a required column is fatal in both modes") {
  support::TempDir dir;
  write_file(dir.path / "reg101_appln.csv", "id,appln_filing_date,status\n");
  CHECK_THROWS_AS(load_dataset(manifest_for(dir.path)), LoadError);
  CHECK_THROWS_AS(load_dataset(manifest_for(dir.path, ValidationMode::Lenient)), LoadError);
}

TEST_CASE("lenient mode accounts for every dropped row") {
  support::TempDir dir;
  write_file(dir.path / "tls212_citation.csv",
             "pat_publn_id,cited_pat_publn_id,pat_citn_seq_nr\n"
             "1,2,1\n"
             "5,6\n"          // wrong field count
             "1,abc,2\n"      // unparsable integer
             "1,3,-4\n"       // negative sequence number
             "1,4,0\n");      // fine: kept but never counted
  auto [dataset, report] = load_dataset(manifest_for(dir.path, ValidationMode::Lenient));
  const auto& stats = report.tables.at(TableId::Tls212Citation);
  CHECK(stats.rows_in == 5);
  CHECK(stats.rows_loaded == 2);
  CHECK(stats.rows_dropped == 3);
  CHECK(stats.rows_in == stats.rows_loaded + stats.rows_dropped);
  CHECK(dataset.citations.size() == 2);
  auto counts = report.counts_by_kind();
  CHECK(counts[ViolationKind::MalformedRow] == 1);
  CHECK(counts[ViolationKind::UnparsableField] == 1);
  CHECK(counts[ViolationKind::InvalidValue] == 1);
}

TEST_CASE("duplicate keys drop the later row in lenient mode") {
  support::TempDir dir;
  write_file(dir.path / "reg101_appln.csv",
             "id,appln_id,appln_filing_date,status\n"
             "1,100,2004-01-01,first\n"
             "1,200,2005-01-01,dup id\n"
             "2,100,2006-01-01,dup appln\n");
  SECTION("strict aborts") {
    CHECK_THROWS_AS(load_dataset(manifest_for(dir.path)), LoadError);
  }
  SECTION("lenient keeps the first row") {
    auto [dataset, report] = load_dataset(manifest_for(dir.path, ValidationMode::Lenient));
    REQUIRE(dataset.register_applications.size() == 1);
    CHECK(dataset.register_applications[0].status == "first");
    CHECK(report.violations.size() == 2);
    CHECK(report.violations[0].row == 3);  // source line numbers
    CHECK(report.violations[1].row == 4);
  }
}

TEST_CASE("inconsistent latest flags load with warnings in strict mode") {
  support::TempDir dir;
  write_file(dir.path / "reg107_parties.csv",
             "id,type,seq_nr,set_seq_nr,is_latest,name,customer_id,bulletin_year,bulletin_nr\n"
             "1,A,1,1,Y,Stale Owner,C1,2000,10\n"
             "1,A,1,2,N,New Owner,C2,2001,10\n");
  auto [dataset, report] = load_dataset(manifest_for(dir.path));
  CHECK(dataset.parties.size() == 2);
  CHECK(report.clean());
  REQUIRE(report.warnings.size() == 2);
  CHECK(report.warnings[0].kind == ViolationKind::InconsistentLatestFlag);
  CHECK(report.warnings[0].row == 2);
  CHECK(report.warnings[1].row == 3);
}

TEST_CASE("null-date sentinel handling is opt-in") {
  support::TempDir dir;
  write_file(dir.path / "reg301_event_data.csv",
             "id,event_code,event_date\n"
             "1,0009185,9999-12-31\n");
  SECTION("off by default: 9999-12-31 is just a date") {
    auto [dataset, report] = load_dataset(manifest_for(dir.path));
    REQUIRE(dataset.register_events.size() == 1);
    CHECK(dataset.register_events[0].event_date == Date{9999, 12, 31});
  }
  SECTION("enabled: sentinel in a required column is a violation") {
    auto m = manifest_for(dir.path, ValidationMode::Lenient);
    m.null_date_sentinel = true;
    auto [dataset, report] = load_dataset(m);
    CHECK(dataset.register_events.empty());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::UnparsableField);
  }
}

TEST_CASE("lenient loading survives arbitrary bytes under a well-formed header") {
  Rng rng(987654);
  const std::string alphabet = "09azAZ-,\"\n\r\x01\xef ;";
  for (int round = 0; round < 25; ++round) {
    std::string payload = "id,appln_id,appln_filing_date,status\n";
    const std::size_t n_bytes = 20 + rng.below(400);
    for (std::size_t i = 0; i < n_bytes; ++i)
      payload.push_back(alphabet[rng.below(alphabet.size())]);
    support::TempDir dir;
    write_file(dir.path / "reg101_appln.csv", payload);
    auto [dataset, report] = load_dataset(manifest_for(dir.path, ValidationMode::Lenient));
    const auto& stats = report.tables.at(TableId::Reg101Appln);
    CHECK(stats.rows_in == stats.rows_loaded + stats.rows_dropped);
    CHECK(dataset.register_applications.size() == stats.rows_loaded);
  }
}

TEST_CASE("per-table file overrides are honoured") {
  support::TempDir dir;
  write_file(dir.path / "apps.txt",
             "id,appln_id,appln_filing_date,status\n"
             "9,0,2001-07-14,renamed\n");
  DatasetManifest m = manifest_for(dir.path);
  m.file_overrides[TableId::Reg101Appln] = "apps.txt";
  auto [dataset, report] = load_dataset(m);
  REQUIRE(dataset.register_applications.size() == 1);
  CHECK(dataset.register_applications[0].id == 9);
}
