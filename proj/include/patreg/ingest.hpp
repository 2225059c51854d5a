#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "patreg/csv.hpp"
#include "patreg/model.hpp"

namespace patreg {

enum class ValidationMode { Strict, Lenient };

/// Points at a dump directory. Missing table files load as empty relations;
/// per-table file names can be overridden.
struct DatasetManifest {
  std::filesystem::path directory;
  std::map<TableId, std::string> file_overrides;
  ValidationMode mode = ValidationMode::Strict;
  bool null_date_sentinel = false;  // treat 9999-12-31 as an absent date
};

struct TableStats {
  std::size_t rows_in = 0;
  std::size_t rows_loaded = 0;
  std::size_t rows_dropped = 0;
};

struct ValidationReport {
  std::vector<ValidationIssue> violations;
  std::vector<ValidationIssue> warnings;
  std::map<TableId, TableStats> tables;

  bool clean() const { return violations.empty(); }

  std::map<ViolationKind, std::size_t> counts_by_kind() const {
    std::map<ViolationKind, std::size_t> counts;
    for (const auto& v : violations) ++counts[v.kind];
    return counts;
  }

  std::size_t count_for_table(TableId t) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [&](const ValidationIssue& v) { return v.table == t; }));
  }
};

/// Environment/IO problems: missing directory, unreadable file.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Data problems fatal under the requested mode: malformed header, and in
/// strict mode any row-level violation.
class LoadError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadResult {
  Dataset dataset;
  ValidationReport report;
};

// ---------------------------------------------------------------------------
// Field parsing

namespace detail {

inline std::optional<std::int64_t> parse_i64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  return out;
}

inline std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && s.substr(0, 3) == "\xef\xbb\xbf") return s.substr(3);
  return s;
}

struct FieldError {
  std::string message;
};

class RowFields {
 public:
  RowFields(const std::vector<std::string>& fields, const std::vector<int>& mapping,
            bool sentinel)
      : fields_(fields), mapping_(mapping), sentinel_(sentinel) {}

  const std::string& raw(std::size_t col) const {
    return fields_[static_cast<std::size_t>(mapping_[col])];
  }

  std::int64_t i64(std::size_t col, std::string_view name) const {
    auto v = parse_i64(raw(col));
    if (!v) throw FieldError{std::string(name) + ": unparsable integer '" + raw(col) + "'"};
    return *v;
  }

  int i32(std::size_t col, std::string_view name) const {
    return static_cast<int>(i64(col, name));
  }

  Date date(std::size_t col, std::string_view name) const {
    const std::string& s = raw(col);
    if (sentinel_ && s == "9999-12-31")
      throw FieldError{std::string(name) + ": null-date sentinel in required column"};
    auto d = Date::parse(s);
    if (!d) throw FieldError{std::string(name) + ": unparsable date '" + s + "'"};
    return *d;
  }

  bool yn(std::size_t col, std::string_view name) const {
    const std::string& s = raw(col);
    if (s == "Y") return true;
    if (s == "N") return false;
    throw FieldError{std::string(name) + ": expected Y or N, got '" + s + "'"};
  }

  std::optional<int> opt_year(std::size_t col, std::string_view name) const {
    if (raw(col).empty()) return std::nullopt;
    return i32(col, name);
  }

 private:
  const std::vector<std::string>& fields_;
  const std::vector<int>& mapping_;
  bool sentinel_;
};

struct LoadContext {
  const DatasetManifest& manifest;
  ValidationReport& report;

  void violation(TableId table, std::size_t line, ViolationKind kind, std::string msg) {
    if (manifest.mode == ValidationMode::Strict)
      throw LoadError(std::string(table_name(table)) + " line " + std::to_string(line) +
                      ": " + msg);
    report.violations.push_back({table, line, kind, std::move(msg)});
    ++report.tables[table].rows_dropped;
  }
};

template <typename Row, typename ParseFn>
void load_table(LoadContext& ctx, TableId table, const std::vector<std::string_view>& columns,
                std::vector<Row>& out, std::vector<std::size_t>& lines, ParseFn parse) {
  auto& stats = ctx.report.tables[table];

  std::filesystem::path path = ctx.manifest.directory;
  auto it = ctx.manifest.file_overrides.find(table);
  path /= it != ctx.manifest.file_overrides.end() ? it->second : table_file_name(table);
  if (!std::filesystem::exists(path)) return;  // missing table = empty relation

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());

  csv::Reader reader(strip_bom(text));
  std::vector<std::string> fields;
  std::size_t line = 0;

  if (!reader.next_record(fields, line))
    throw LoadError(std::string(table_name(table)) + ": missing header row");

  // Case-insensitive header match, free column order, unknown columns ignored.
  std::vector<int> mapping(columns.size(), -1);
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const std::string name = lower(fields[f]);
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (name == columns[c] && mapping[c] < 0) mapping[c] = static_cast<int>(f);
  }
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (mapping[c] < 0)
      throw LoadError(std::string(table_name(table)) + ": header lacks column '" +
                      std::string(columns[c]) + "'");
  const std::size_t header_width = fields.size();

  while (reader.next_record(fields, line)) {
    ++stats.rows_in;
    if (fields.size() != header_width) {
      ctx.violation(table, line, ViolationKind::MalformedRow,
                    "expected " + std::to_string(header_width) + " fields, got " +
                        std::to_string(fields.size()));
      continue;
    }
    RowFields row_fields(fields, mapping, ctx.manifest.null_date_sentinel);
    Row row;
    try {
      row = parse(row_fields);
    } catch (const FieldError& e) {
      ctx.violation(table, line, ViolationKind::UnparsableField, e.message);
      continue;
    }
    if (auto err = invariant_error(row)) {
      ctx.violation(table, line, ViolationKind::InvalidValue, *err);
      continue;
    }
    out.push_back(std::move(row));
    lines.push_back(line);
  }
  stats.rows_loaded = out.size();
}

// Drops the rows validate_keys flagged (later duplicates), reporting them with
// their source line numbers.
template <typename Row>
void drop_flagged(LoadContext& ctx, TableId table, std::vector<ValidationIssue>& issues,
                  std::vector<Row>& rows, std::vector<std::size_t>& lines) {
  std::vector<bool> drop(rows.size(), false);
  bool any = false;
  for (const auto& issue : issues) {
    if (issue.table != table) continue;
    const std::size_t idx = issue.row - 1;
    ctx.violation(table, lines[idx], issue.kind, issue.message);
    drop[idx] = true;
    any = true;
  }
  if (!any) return;
  std::size_t keep = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (drop[i]) continue;
    if (keep != i) {
      rows[keep] = std::move(rows[i]);
      lines[keep] = lines[i];
    }
    ++keep;
  }
  rows.resize(keep);
  lines.resize(keep);
  ctx.report.tables[table].rows_loaded = keep;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Loading

/// Reads all thirteen relations from `manifest.directory`. Strict mode throws
/// LoadError at the first violation; lenient mode drops offending rows and
/// accounts for every one of them in the report.
inline LoadResult load_dataset(const DatasetManifest& manifest) {
  if (!std::filesystem::is_directory(manifest.directory))
    throw IoError("dataset directory does not exist: " + manifest.directory.string());

  LoadResult result;
  Dataset& d = result.dataset;
  detail::LoadContext ctx{manifest, result.report};
  for (TableId t : k_all_tables) ctx.report.tables[t];  // stable stats layout

  struct Lines {
    std::vector<std::size_t> reg101, reg102, reg107, reg109, reg111, reg112, reg201, reg301,
        tls201, tls209, tls211, tls212, tls221;
  } lines;

  detail::load_table(ctx, TableId::Reg101Appln,
                     {"id", "appln_id", "appln_filing_date", "status"},
                     d.register_applications, lines.reg101, [](const detail::RowFields& f) {
                       RegisterApplication r;
                       r.id = f.i64(0, "id");
                       r.appln_id = f.i64(1, "appln_id");
                       r.appln_filing_date = f.date(2, "appln_filing_date");
                       r.status = f.raw(3);
                       return r;
                     });

  detail::load_table(ctx, TableId::Reg102PatPubln,
                     {"id", "publn_kind", "bulletin_year", "bulletin_nr"},
                     d.register_publications, lines.reg102, [](const detail::RowFields& f) {
                       RegisterPublication r;
                       r.id = f.i64(0, "id");
                       r.publn_kind = f.raw(1);
                       r.bulletin_year = f.i32(2, "bulletin_year");
                       r.bulletin_nr = f.i32(3, "bulletin_nr");
                       return r;
                     });

  detail::load_table(
      ctx, TableId::Reg107Parties,
      {"id", "type", "seq_nr", "set_seq_nr", "is_latest", "name", "customer_id",
       "bulletin_year", "bulletin_nr"},
      d.parties, lines.reg107, [](const detail::RowFields& f) {
        Party r;
        r.id = f.i64(0, "id");
        auto type = parse_party_type(f.raw(1));
        if (!type) throw detail::FieldError{"type: expected A, R or I, got '" + f.raw(1) + "'"};
        r.type = *type;
        r.seq_nr = f.i32(2, "seq_nr");
        r.set_seq_nr = f.i32(3, "set_seq_nr");
        r.is_latest = f.yn(4, "is_latest");
        r.name = f.raw(5);
        r.customer_id = f.raw(6);
        r.bulletin_year = f.i32(7, "bulletin_year");
        r.bulletin_nr = f.i32(8, "bulletin_nr");
        return r;
      });

  detail::load_table(ctx, TableId::Reg109DesignStates, {"id", "country"},
                     d.designated_states, lines.reg109, [](const detail::RowFields& f) {
                       DesignatedState r;
                       r.id = f.i64(0, "id");
                       r.country = f.raw(1);
                       return r;
                     });

  detail::load_table(ctx, TableId::Reg111Licensee,
                     {"id", "licensee_seq_nr", "type_license", "designation"},
                     d.licensees, lines.reg111, [](const detail::RowFields& f) {
                       Licensee r;
                       r.id = f.i64(0, "id");
                       r.licensee_seq_nr = f.i32(1, "licensee_seq_nr");
                       auto type = parse_license_type(f.raw(2));
                       if (!type)
                         throw detail::FieldError{"type_license: expected EXC, NEX or RIR, got '" +
                                                  f.raw(2) + "'"};
                       r.type_license = *type;
                       auto desig = parse_license_designation(f.raw(3));
                       if (!desig)
                         throw detail::FieldError{
                             "designation: expected all or as-indicated, got '" + f.raw(3) + "'"};
                       r.designation = *desig;
                       return r;
                     });

  detail::load_table(
      ctx, TableId::Reg112LicenseeStates,
      {"id", "licensee_seq_nr", "licensee_country", "bulletin_year", "bulletin_nr"},
      d.licensee_states, lines.reg112, [](const detail::RowFields& f) {
        LicenseeState r;
        r.id = f.i64(0, "id");
        r.licensee_seq_nr = f.i32(1, "licensee_seq_nr");
        r.licensee_country = f.raw(2);
        r.bulletin_year = f.i32(3, "bulletin_year");
        r.bulletin_nr = f.i32(4, "bulletin_nr");
        return r;
      });

  detail::load_table(ctx, TableId::Reg201ProcStep, {"id", "step_code"}, d.procedure_steps,
                     lines.reg201, [](const detail::RowFields& f) {
                       ProcedureStep r;
                       r.id = f.i64(0, "id");
                       r.step_code = f.raw(1);
                       return r;
                     });

  detail::load_table(ctx, TableId::Reg301EventData, {"id", "event_code", "event_date"},
                     d.register_events, lines.reg301, [](const detail::RowFields& f) {
                       RegisterEvent r;
                       r.id = f.i64(0, "id");
                       r.event_code = f.raw(1);
                       r.event_date = f.date(2, "event_date");
                       return r;
                     });

  detail::load_table(ctx, TableId::Tls201Appln,
                     {"appln_id", "appln_auth", "appln_kind", "appln_filing_date"},
                     d.core_applications, lines.tls201, [](const detail::RowFields& f) {
                       CoreApplication r;
                       r.appln_id = f.i64(0, "appln_id");
                       r.appln_auth = f.raw(1);
                       r.appln_kind = f.raw(2);
                       r.appln_filing_date = f.date(3, "appln_filing_date");
                       return r;
                     });

  detail::load_table(ctx, TableId::Tls209ApplnIpc, {"appln_id", "ipc_class_symbol"},
                     d.ipc_assignments, lines.tls209, [](const detail::RowFields& f) {
                       IpcAssignment r;
                       r.appln_id = f.i64(0, "appln_id");
                       r.ipc_class_symbol = f.raw(1);
                       return r;
                     });

  detail::load_table(ctx, TableId::Tls211PatPubln, {"pat_publn_id", "appln_id"},
                     d.core_publications, lines.tls211, [](const detail::RowFields& f) {
                       CorePublication r;
                       r.pat_publn_id = f.i64(0, "pat_publn_id");
                       r.appln_id = f.i64(1, "appln_id");
                       return r;
                     });

  detail::load_table(ctx, TableId::Tls212Citation,
                     {"pat_publn_id", "cited_pat_publn_id", "pat_citn_seq_nr"},
                     d.citations, lines.tls212, [](const detail::RowFields& f) {
                       Citation r;
                       r.pat_publn_id = f.i64(0, "pat_publn_id");
                       r.cited_pat_publn_id = f.i64(1, "cited_pat_publn_id");
                       r.pat_citn_seq_nr = static_cast<std::int32_t>(f.i64(2, "pat_citn_seq_nr"));
                       return r;
                     });

  detail::load_table(ctx, TableId::Tls221InpadocPrs,
                     {"appln_id", "prs_code", "l501ep", "l520ep"},
                     d.legal_status_events, lines.tls221, [](const detail::RowFields& f) {
                       LegalStatusEvent r;
                       r.appln_id = f.i64(0, "appln_id");
                       r.prs_code = f.raw(1);
                       r.country = f.raw(2);
                       r.fee_payment_year = f.opt_year(3, "l520ep");
                       return r;
                     });

  // Key uniqueness across fully-parsed relations; later duplicates flagged.
  auto key_issues = validate_keys(d);
  detail::drop_flagged(ctx, TableId::Reg101Appln, key_issues, d.register_applications, lines.reg101);
  detail::drop_flagged(ctx, TableId::Tls201Appln, key_issues, d.core_applications, lines.tls201);
  detail::drop_flagged(ctx, TableId::Tls211PatPubln, key_issues, d.core_publications, lines.tls211);
  detail::drop_flagged(ctx, TableId::Reg107Parties, key_issues, d.parties, lines.reg107);
  detail::drop_flagged(ctx, TableId::Reg111Licensee, key_issues, d.licensees, lines.reg111);
  detail::drop_flagged(ctx, TableId::Reg112LicenseeStates, key_issues, d.licensee_states,
                       lines.reg112);

  for (auto& issue : latest_flag_warnings(d)) {
    issue.row = lines.reg107[issue.row - 1];
    result.report.warnings.push_back(std::move(issue));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Referential integrity

/// Pure report: register applications with appln_id > 0 lacking a core row,
/// register-keyed child rows lacking their application, and citations whose
/// citing publication is unknown. Row numbers are 1-based relation ordinals.
inline ValidationReport validate_links(const Dataset& d) {
  ValidationReport report;
  std::unordered_set<RegisterId> reg_ids;
  reg_ids.reserve(d.register_applications.size() * 2);
  for (const auto& r : d.register_applications) reg_ids.insert(r.id);
  std::unordered_set<ApplnId> core_ids;
  core_ids.reserve(d.core_applications.size() * 2);
  for (const auto& c : d.core_applications) core_ids.insert(c.appln_id);
  std::unordered_set<PublnId> publn_ids;
  publn_ids.reserve(d.core_publications.size() * 2);
  for (const auto& p : d.core_publications) publn_ids.insert(p.pat_publn_id);

  for (std::size_t i = 0; i < d.register_applications.size(); ++i) {
    const auto& r = d.register_applications[i];
    if (r.appln_id > 0 && !core_ids.count(r.appln_id))
      report.violations.push_back({TableId::Reg101Appln, i + 1, ViolationKind::OrphanRow,
                                   "appln_id " + std::to_string(r.appln_id) +
                                       " has no core application"});
  }

  auto check_children = [&](TableId table, const auto& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!reg_ids.count(rows[i].id))
        report.violations.push_back({table, i + 1, ViolationKind::OrphanRow,
                                     "id " + std::to_string(rows[i].id) +
                                         " has no register application"});
    }
  };
  check_children(TableId::Reg102PatPubln, d.register_publications);
  check_children(TableId::Reg107Parties, d.parties);
  check_children(TableId::Reg109DesignStates, d.designated_states);
  check_children(TableId::Reg111Licensee, d.licensees);
  check_children(TableId::Reg112LicenseeStates, d.licensee_states);
  check_children(TableId::Reg201ProcStep, d.procedure_steps);
  check_children(TableId::Reg301EventData, d.register_events);

  for (std::size_t i = 0; i < d.citations.size(); ++i) {
    if (!publn_ids.count(d.citations[i].pat_publn_id))
      report.violations.push_back({TableId::Tls212Citation, i + 1, ViolationKind::OrphanRow,
                                   "pat_publn_id " +
                                       std::to_string(d.citations[i].pat_publn_id) +
                                       " has no core publication"});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Canonical writing

namespace detail {

inline std::string yn(bool b) { return b ? "Y" : "N"; }

template <typename Row, typename FieldsFn>
std::string render_rows(const std::vector<std::string_view>& columns,
                        const std::vector<Row>& rows, FieldsFn fields_of) {
  std::string out;
  csv::append_record(out, columns);
  for (const auto& row : rows) csv::append_record(out, fields_of(row));
  return out;
}

}  // namespace detail

/// Canonical bytes for one table: canonical column order, minimal quoting,
/// LF line endings. Loading then re-rendering reproduces the bytes exactly.
inline std::string render_table(const Dataset& d, TableId table) {
  using detail::render_rows;
  using F = std::vector<std::string>;
  switch (table) {
    case TableId::Reg101Appln:
      return render_rows({"id", "appln_id", "appln_filing_date", "status"},
                         d.register_applications, [](const RegisterApplication& r) {
                           return F{std::to_string(r.id), std::to_string(r.appln_id),
                                    r.appln_filing_date.to_string(), r.status};
                         });
    case TableId::Reg102PatPubln:
      return render_rows({"id", "publn_kind", "bulletin_year", "bulletin_nr"},
                         d.register_publications, [](const RegisterPublication& r) {
                           return F{std::to_string(r.id), r.publn_kind,
                                    std::to_string(r.bulletin_year),
                                    std::to_string(r.bulletin_nr)};
                         });
    case TableId::Reg107Parties:
      return render_rows({"id", "type", "seq_nr", "set_seq_nr", "is_latest", "name",
                          "customer_id", "bulletin_year", "bulletin_nr"},
                         d.parties, [](const Party& r) {
                           return F{std::to_string(r.id), to_string(r.type),
                                    std::to_string(r.seq_nr), std::to_string(r.set_seq_nr),
                                    detail::yn(r.is_latest), r.name, r.customer_id,
                                    std::to_string(r.bulletin_year),
                                    std::to_string(r.bulletin_nr)};
                         });
    case TableId::Reg109DesignStates:
      return render_rows({"id", "country"}, d.designated_states, [](const DesignatedState& r) {
        return F{std::to_string(r.id), r.country};
      });
    case TableId::Reg111Licensee:
      return render_rows({"id", "licensee_seq_nr", "type_license", "designation"},
                         d.licensees, [](const Licensee& r) {
                           return F{std::to_string(r.id), std::to_string(r.licensee_seq_nr),
                                    to_string(r.type_license), to_string(r.designation)};
                         });
    case TableId::Reg112LicenseeStates:
      return render_rows(
          {"id", "licensee_seq_nr", "licensee_country", "bulletin_year", "bulletin_nr"},
          d.licensee_states, [](const LicenseeState& r) {
            return F{std::to_string(r.id), std::to_string(r.licensee_seq_nr),
                     r.licensee_country, std::to_string(r.bulletin_year),
                     std::to_string(r.bulletin_nr)};
          });
    case TableId::Reg201ProcStep:
      return render_rows({"id", "step_code"}, d.procedure_steps, [](const ProcedureStep& r) {
        return F{std::to_string(r.id), r.step_code};
      });
    case TableId::Reg301EventData:
      return render_rows({"id", "event_code", "event_date"}, d.register_events,
                         [](const RegisterEvent& r) {
                           return F{std::to_string(r.id), r.event_code,
                                    r.event_date.to_string()};
                         });
    case TableId::Tls201Appln:
      return render_rows({"appln_id", "appln_auth", "appln_kind", "appln_filing_date"},
                         d.core_applications, [](const CoreApplication& r) {
                           return F{std::to_string(r.appln_id), r.appln_auth, r.appln_kind,
                                    r.appln_filing_date.to_string()};
                         });
    case TableId::Tls209ApplnIpc:
      return render_rows({"appln_id", "ipc_class_symbol"}, d.ipc_assignments,
                         [](const IpcAssignment& r) {
                           return F{std::to_string(r.appln_id), r.ipc_class_symbol};
                         });
    case TableId::Tls211PatPubln:
      return render_rows({"pat_publn_id", "appln_id"}, d.core_publications,
                         [](const CorePublication& r) {
                           return F{std::to_string(r.pat_publn_id),
                                    std::to_string(r.appln_id)};
                         });
    case TableId::Tls212Citation:
      return render_rows({"pat_publn_id", "cited_pat_publn_id", "pat_citn_seq_nr"},
                         d.citations, [](const Citation& r) {
                           return F{std::to_string(r.pat_publn_id),
                                    std::to_string(r.cited_pat_publn_id),
                                    std::to_string(r.pat_citn_seq_nr)};
                         });
    case TableId::Tls221InpadocPrs:
      return render_rows({"appln_id", "prs_code", "l501ep", "l520ep"}, d.legal_status_events,
                         [](const LegalStatusEvent& r) {
                           return F{std::to_string(r.appln_id), r.prs_code, r.country,
                                    r.fee_payment_year ? std::to_string(*r.fee_payment_year)
                                                       : std::string{}};
                         });
  }
  return {};
}

/// Temp-then-rename so readers never observe a half-written file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// Writes all thirteen tables in canonical form.
inline void write_dataset(const Dataset& d, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  for (TableId t : k_all_tables)
    write_file_atomic(directory / table_file_name(t), render_table(d, t));
}

}  // namespace patreg
