#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "patreg/date.hpp"

namespace patreg {

using RegisterId = std::int64_t;  // REG-side application identifier
using ApplnId = std::int64_t;     // core-side application identifier (0 = none)
using PublnId = std::int64_t;

enum class PartyType : char { Applicant = 'A', Representative = 'R', Inventor = 'I' };
enum class LicenseType { Exclusive, NonExclusive, RightInRem };
enum class LicenseDesignation { All, AsIndicated };

inline std::optional<PartyType> parse_party_type(std::string_view s) {
  if (s == "A") return PartyType::Applicant;
  if (s == "R") return PartyType::Representative;
  if (s == "I") return PartyType::Inventor;
  return std::nullopt;
}

inline std::string to_string(PartyType t) { return std::string(1, static_cast<char>(t)); }

inline std::optional<LicenseType> parse_license_type(std::string_view s) {
  if (s == "EXC") return LicenseType::Exclusive;
  if (s == "NEX") return LicenseType::NonExclusive;
  if (s == "RIR") return LicenseType::RightInRem;
  return std::nullopt;
}

inline std::string to_string(LicenseType t) {
  switch (t) {
    case LicenseType::Exclusive: return "EXC";
    case LicenseType::NonExclusive: return "NEX";
    case LicenseType::RightInRem: return "RIR";
  }
  return {};
}

inline std::optional<LicenseDesignation> parse_license_designation(std::string_view s) {
  if (s == "all") return LicenseDesignation::All;
  if (s == "as-indicated") return LicenseDesignation::AsIndicated;
  return std::nullopt;
}

inline std::string to_string(LicenseDesignation d) {
  return d == LicenseDesignation::All ? "all" : "as-indicated";
}

// ---------------------------------------------------------------------------
// Relations

struct RegisterApplication {
  RegisterId id{};
  ApplnId appln_id{};  // 0 = international application that never entered the EP phase
  Date appln_filing_date{};
  std::string status;
  friend bool operator==(const RegisterApplication&, const RegisterApplication&) = default;
};

struct CoreApplication {
  ApplnId appln_id{};
  std::string appln_auth;
  std::string appln_kind;
  Date appln_filing_date{};
  friend bool operator==(const CoreApplication&, const CoreApplication&) = default;
};

struct IpcAssignment {
  ApplnId appln_id{};
  std::string ipc_class_symbol;
  friend bool operator==(const IpcAssignment&, const IpcAssignment&) = default;
};

struct CorePublication {
  PublnId pat_publn_id{};
  ApplnId appln_id{};
  friend bool operator==(const CorePublication&, const CorePublication&) = default;
};

struct Citation {
  PublnId pat_publn_id{};
  PublnId cited_pat_publn_id{};
  std::int32_t pat_citn_seq_nr{};  // 0 rows are kept but never counted
  friend bool operator==(const Citation&, const Citation&) = default;
};

struct RegisterPublication {
  RegisterId id{};
  std::string publn_kind;  // A1, A2, B1, B2, B3, ...
  int bulletin_year{};
  int bulletin_nr{};
  friend bool operator==(const RegisterPublication&, const RegisterPublication&) = default;
};

struct Party {
  RegisterId id{};
  PartyType type{PartyType::Applicant};
  int seq_nr{};      // position within one set
  int set_seq_nr{};  // set cohort; a new set records a change of parties
  bool is_latest{};
  std::string name;
  std::string customer_id;  // empty = absent
  int bulletin_year{};
  int bulletin_nr{};
  friend bool operator==(const Party&, const Party&) = default;
};

struct RegisterEvent {
  RegisterId id{};
  std::string event_code;
  Date event_date{};
  friend bool operator==(const RegisterEvent&, const RegisterEvent&) = default;
};

struct ProcedureStep {
  RegisterId id{};
  std::string step_code;
  friend bool operator==(const ProcedureStep&, const ProcedureStep&) = default;
};

struct Licensee {
  RegisterId id{};
  int licensee_seq_nr{};
  LicenseType type_license{LicenseType::NonExclusive};
  LicenseDesignation designation{LicenseDesignation::AsIndicated};
  friend bool operator==(const Licensee&, const Licensee&) = default;
};

struct LicenseeState {
  RegisterId id{};
  int licensee_seq_nr{};
  std::string licensee_country;
  int bulletin_year{};
  int bulletin_nr{};
  friend bool operator==(const LicenseeState&, const LicenseeState&) = default;
};

struct DesignatedState {
  RegisterId id{};
  std::string country;
  friend bool operator==(const DesignatedState&, const DesignatedState&) = default;
};

struct LegalStatusEvent {
  ApplnId appln_id{};
  std::string prs_code;
  std::string country;                        // L501EP; empty = absent
  std::optional<int> fee_payment_year{};      // L520EP
  friend bool operator==(const LegalStatusEvent&, const LegalStatusEvent&) = default;
};

constexpr std::string_view k_pgfp_code = "PGFP";
constexpr std::string_view k_first_examination_event_code = "0009185";

struct Dataset {
  std::vector<RegisterApplication> register_applications;
  std::vector<RegisterPublication> register_publications;
  std::vector<Party> parties;
  std::vector<DesignatedState> designated_states;
  std::vector<Licensee> licensees;
  std::vector<LicenseeState> licensee_states;
  std::vector<ProcedureStep> procedure_steps;
  std::vector<RegisterEvent> register_events;
  std::vector<CoreApplication> core_applications;
  std::vector<IpcAssignment> ipc_assignments;
  std::vector<CorePublication> core_publications;
  std::vector<Citation> citations;
  std::vector<LegalStatusEvent> legal_status_events;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// ---------------------------------------------------------------------------
// Tables

enum class TableId {
  Reg101Appln,
  Reg102PatPubln,
  Reg107Parties,
  Reg109DesignStates,
  Reg111Licensee,
  Reg112LicenseeStates,
  Reg201ProcStep,
  Reg301EventData,
  Tls201Appln,
  Tls209ApplnIpc,
  Tls211PatPubln,
  Tls212Citation,
  Tls221InpadocPrs,
};

inline constexpr TableId k_all_tables[] = {
    TableId::Reg101Appln,    TableId::Reg102PatPubln,     TableId::Reg107Parties,
    TableId::Reg109DesignStates, TableId::Reg111Licensee, TableId::Reg112LicenseeStates,
    TableId::Reg201ProcStep, TableId::Reg301EventData,    TableId::Tls201Appln,
    TableId::Tls209ApplnIpc, TableId::Tls211PatPubln,     TableId::Tls212Citation,
    TableId::Tls221InpadocPrs,
};

inline std::string_view table_name(TableId t) {
  switch (t) {
    case TableId::Reg101Appln: return "reg101_appln";
    case TableId::Reg102PatPubln: return "reg102_pat_publn";
    case TableId::Reg107Parties: return "reg107_parties";
    case TableId::Reg109DesignStates: return "reg109_design_states";
    case TableId::Reg111Licensee: return "reg111_licensee";
    case TableId::Reg112LicenseeStates: return "reg112_licensee_states";
    case TableId::Reg201ProcStep: return "reg201_proc_step";
    case TableId::Reg301EventData: return "reg301_event_data";
    case TableId::Tls201Appln: return "tls201_appln";
    case TableId::Tls209ApplnIpc: return "tls209_appln_ipc";
    case TableId::Tls211PatPubln: return "tls211_pat_publn";
    case TableId::Tls212Citation: return "tls212_citation";
    case TableId::Tls221InpadocPrs: return "tls221_inpadoc_prs";
  }
  return {};
}

inline std::string table_file_name(TableId t) { return std::string(table_name(t)) + ".csv"; }

// ---------------------------------------------------------------------------
// Invariant validation

enum class ViolationKind {
  MalformedRow,      // wrong field count
  UnparsableField,   // integer/date/enum syntax
  InvalidValue,      // domain invariant (range, emptiness, country shape)
  DuplicateKey,
  OrphanRow,               // referential integrity (validate_links)
  InconsistentLatestFlag,  // warning severity: is_latest vs max set_seq_nr
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::MalformedRow: return "malformed_row";
    case ViolationKind::UnparsableField: return "unparsable_field";
    case ViolationKind::InvalidValue: return "invalid_value";
    case ViolationKind::DuplicateKey: return "duplicate_key";
    case ViolationKind::OrphanRow: return "orphan_row";
    case ViolationKind::InconsistentLatestFlag: return "inconsistent_latest_flag";
  }
  return {};
}

struct ValidationIssue {
  TableId table{};
  std::size_t row{};  // 1-based data-row ordinal (loader reports source positions)
  ViolationKind kind{};
  std::string message;
};

inline bool is_country_code(std::string_view s) {
  return s.size() == 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' && s[1] <= 'Z';
}

inline bool bulletin_year_ok(int year) { return year >= 1978 && year <= 2100; }
inline bool bulletin_nr_ok(int nr) { return nr >= 1 && nr <= 53; }

inline std::optional<std::string> invariant_error(const RegisterApplication& r) {
  if (r.id <= 0) return "id must be positive";
  if (r.appln_id < 0) return "appln_id must be non-negative";
  if (!r.appln_filing_date.ok()) return "appln_filing_date is not a valid date";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const CoreApplication& r) {
  if (r.appln_id <= 0) return "appln_id must be positive";
  if (r.appln_auth.empty()) return "appln_auth must be non-empty";
  if (r.appln_kind.empty()) return "appln_kind must be non-empty";
  if (!r.appln_filing_date.ok()) return "appln_filing_date is not a valid date";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const IpcAssignment& r) {
  if (r.appln_id <= 0) return "appln_id must be positive";
  if (r.ipc_class_symbol.empty()) return "ipc_class_symbol must be non-empty";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const CorePublication& r) {
  if (r.pat_publn_id <= 0) return "pat_publn_id must be positive";
  if (r.appln_id <= 0) return "appln_id must be positive";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const Citation& r) {
  if (r.pat_publn_id <= 0) return "pat_publn_id must be positive";
  if (r.cited_pat_publn_id <= 0) return "cited_pat_publn_id must be positive";
  if (r.pat_citn_seq_nr < 0) return "pat_citn_seq_nr must be non-negative";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const RegisterPublication& r) {
  if (r.id <= 0) return "id must be positive";
  if (r.publn_kind.empty()) return "publn_kind must be non-empty";
  if (!bulletin_year_ok(r.bulletin_year)) return "bulletin_year out of range [1978, 2100]";
  if (!bulletin_nr_ok(r.bulletin_nr)) return "bulletin_nr out of range [1, 53]";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const Party& r) {
  if (r.id <= 0) return "id must be positive";
  if (r.seq_nr < 1) return "seq_nr must be >= 1";
  if (r.set_seq_nr < 1) return "set_seq_nr must be >= 1";
  if (!bulletin_year_ok(r.bulletin_year)) return "bulletin_year out of range [1978, 2100]";
  if (!bulletin_nr_ok(r.bulletin_nr)) return "bulletin_nr out of range [1, 53]";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const RegisterEvent& r) {
  if (r.id <= 0) return "id must be positive";
  if (r.event_code.empty()) return "event_code must be non-empty";
  if (!r.event_date.ok()) return "event_date is not a valid date";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const ProcedureStep& r) {
  if (r.id <= 0) return "id must be positive";
  if (r.step_code.empty()) return "step_code must be non-empty";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const Licensee& r) {
  if (r.id <= 0) return "id must be positive";
  if (r.licensee_seq_nr < 1) return "licensee_seq_nr must be >= 1";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const LicenseeState& r) {
  if (r.id <= 0) return "id must be positive";
  if (r.licensee_seq_nr < 1) return "licensee_seq_nr must be >= 1";
  if (!is_country_code(r.licensee_country)) return "licensee_country must be 2 uppercase letters";
  if (!bulletin_year_ok(r.bulletin_year)) return "bulletin_year out of range [1978, 2100]";
  if (!bulletin_nr_ok(r.bulletin_nr)) return "bulletin_nr out of range [1, 53]";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const DesignatedState& r) {
  if (r.id <= 0) return "id must be positive";
  if (!is_country_code(r.country)) return "country must be 2 uppercase letters";
  return std::nullopt;
}

inline std::optional<std::string> invariant_error(const LegalStatusEvent& r) {
  if (r.appln_id <= 0) return "appln_id must be positive";
  if (r.prs_code.empty()) return "prs_code must be non-empty";
  if (r.prs_code == k_pgfp_code && r.country.empty()) return "PGFP row lacks a country";
  if (!r.country.empty() && !is_country_code(r.country)) return "country must be 2 uppercase letters";
  if (r.fee_payment_year && (*r.fee_payment_year < 1000 || *r.fee_payment_year > 9999))
    return "fee_payment_year must be a 4-digit year";
  return std::nullopt;
}

namespace detail {

template <typename Row>
void check_values(const std::vector<Row>& rows, TableId table,
                  std::vector<ValidationIssue>& out) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (auto err = invariant_error(rows[i]))
      out.push_back({table, i + 1, ViolationKind::InvalidValue, *err});
  }
}

struct PartyKey {
  RegisterId id;
  char type;
  int set_seq_nr;
  int seq_nr;
  friend bool operator==(const PartyKey&, const PartyKey&) = default;
};

struct PartyKeyHash {
  std::size_t operator()(const PartyKey& k) const {
    std::size_t h = std::hash<std::int64_t>{}(k.id);
    h = h * 1315423911u ^ std::hash<int>{}(k.set_seq_nr);
    h = h * 1315423911u ^ std::hash<int>{}(k.seq_nr);
    return h * 1315423911u ^ static_cast<std::size_t>(k.type);
  }
};

}  // namespace detail

/// Value-level (per-row) invariant checks for every relation.
inline std::vector<ValidationIssue> validate_values(const Dataset& d) {
  std::vector<ValidationIssue> out;
  detail::check_values(d.register_applications, TableId::Reg101Appln, out);
  detail::check_values(d.register_publications, TableId::Reg102PatPubln, out);
  detail::check_values(d.parties, TableId::Reg107Parties, out);
  detail::check_values(d.designated_states, TableId::Reg109DesignStates, out);
  detail::check_values(d.licensees, TableId::Reg111Licensee, out);
  detail::check_values(d.licensee_states, TableId::Reg112LicenseeStates, out);
  detail::check_values(d.procedure_steps, TableId::Reg201ProcStep, out);
  detail::check_values(d.register_events, TableId::Reg301EventData, out);
  detail::check_values(d.core_applications, TableId::Tls201Appln, out);
  detail::check_values(d.ipc_assignments, TableId::Tls209ApplnIpc, out);
  detail::check_values(d.core_publications, TableId::Tls211PatPubln, out);
  detail::check_values(d.citations, TableId::Tls212Citation, out);
  detail::check_values(d.legal_status_events, TableId::Tls221InpadocPrs, out);
  return out;
}

/// Key-uniqueness checks; the *later* duplicate row is flagged.
inline std::vector<ValidationIssue> validate_keys(const Dataset& d) {
  std::vector<ValidationIssue> out;

  std::unordered_set<RegisterId> reg_ids;
  std::unordered_set<ApplnId> reg_appln_ids;
  for (std::size_t i = 0; i < d.register_applications.size(); ++i) {
    const auto& r = d.register_applications[i];
    if (!reg_ids.insert(r.id).second)
      out.push_back({TableId::Reg101Appln, i + 1, ViolationKind::DuplicateKey,
                     "duplicate id " + std::to_string(r.id)});
    if (r.appln_id > 0 && !reg_appln_ids.insert(r.appln_id).second)
      out.push_back({TableId::Reg101Appln, i + 1, ViolationKind::DuplicateKey,
                     "duplicate appln_id " + std::to_string(r.appln_id)});
  }

  std::unordered_set<ApplnId> core_ids;
  for (std::size_t i = 0; i < d.core_applications.size(); ++i) {
    if (!core_ids.insert(d.core_applications[i].appln_id).second)
      out.push_back({TableId::Tls201Appln, i + 1, ViolationKind::DuplicateKey,
                     "duplicate appln_id " + std::to_string(d.core_applications[i].appln_id)});
  }

  std::unordered_set<PublnId> publn_ids;
  for (std::size_t i = 0; i < d.core_publications.size(); ++i) {
    if (!publn_ids.insert(d.core_publications[i].pat_publn_id).second)
      out.push_back({TableId::Tls211PatPubln, i + 1, ViolationKind::DuplicateKey,
                     "duplicate pat_publn_id " +
                         std::to_string(d.core_publications[i].pat_publn_id)});
  }

  std::unordered_set<detail::PartyKey, detail::PartyKeyHash> party_keys;
  for (std::size_t i = 0; i < d.parties.size(); ++i) {
    const auto& p = d.parties[i];
    detail::PartyKey key{p.id, static_cast<char>(p.type), p.set_seq_nr, p.seq_nr};
    if (!party_keys.insert(key).second)
      out.push_back({TableId::Reg107Parties, i + 1, ViolationKind::DuplicateKey,
                     "duplicate (set_seq_nr, seq_nr) within (id, type) for id " +
                         std::to_string(p.id)});
  }

  std::unordered_map<RegisterId, std::unordered_set<std::int64_t>> licensee_keys;
  for (std::size_t i = 0; i < d.licensees.size(); ++i) {
    const auto& l = d.licensees[i];
    if (!licensee_keys[l.id].insert(l.licensee_seq_nr).second)
      out.push_back({TableId::Reg111Licensee, i + 1, ViolationKind::DuplicateKey,
                     "duplicate (id, licensee_seq_nr) for id " + std::to_string(l.id)});
  }

  std::unordered_map<RegisterId, std::unordered_set<std::string>> state_keys;
  for (std::size_t i = 0; i < d.licensee_states.size(); ++i) {
    const auto& s = d.licensee_states[i];
    std::string key = std::to_string(s.licensee_seq_nr) + ":" + s.licensee_country;
    if (!state_keys[s.id].insert(key).second)
      out.push_back({TableId::Reg112LicenseeStates, i + 1, ViolationKind::DuplicateKey,
                     "duplicate (id, licensee_seq_nr, licensee_country) for id " +
                         std::to_string(s.id)});
  }

  return out;
}

/// Warning-severity check: within (id, type), is_latest must be set exactly on
/// the rows carrying the maximal set_seq_nr. Real extracts may break this, so
/// it never rejects a dataset.
inline std::vector<ValidationIssue> latest_flag_warnings(const Dataset& d) {
  std::vector<ValidationIssue> out;
  std::unordered_map<RegisterId, std::unordered_map<char, int>> max_set;
  for (const auto& p : d.parties) {
    auto& m = max_set[p.id][static_cast<char>(p.type)];
    if (p.set_seq_nr > m) m = p.set_seq_nr;
  }
  for (std::size_t i = 0; i < d.parties.size(); ++i) {
    const auto& p = d.parties[i];
    const bool should_be_latest =
        p.set_seq_nr == max_set[p.id][static_cast<char>(p.type)];
    if (p.is_latest != should_be_latest)
      out.push_back({TableId::Reg107Parties, i + 1, ViolationKind::InconsistentLatestFlag,
                     "is_latest flag inconsistent with max set_seq_nr for id " +
                         std::to_string(p.id)});
  }
  return out;
}

struct DatasetCheck {
  std::vector<ValidationIssue> violations;
  std::vector<ValidationIssue> warnings;
  bool clean() const { return violations.empty(); }
};

/// Full construction-time validation of an in-memory dataset.
inline DatasetCheck validate_dataset(const Dataset& d) {
  DatasetCheck check;
  check.violations = validate_values(d);
  auto keys = validate_keys(d);
  check.violations.insert(check.violations.end(), keys.begin(), keys.end());
  check.warnings = latest_flag_warnings(d);
  return check;
}

}  // namespace patreg
