#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "patreg/model.hpp"

namespace patreg {

class StoreError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable dataset plus hash indexes keyed by register id, core appln_id,
/// publication id and 4-char IPC subclass prefix. Values are row indices into
/// the dataset's relation vectors. Raw relations stay accessible so the naive
/// evaluator can share one loaded copy.
class IndexedStore {
 public:
  explicit IndexedStore(Dataset dataset) : data_(std::move(dataset)) {
    reg_by_id_.reserve(data_.register_applications.size() * 2);
    reg_by_appln_.reserve(data_.register_applications.size() * 2);
    for (std::uint32_t i = 0; i < data_.register_applications.size(); ++i) {
      const auto& app = data_.register_applications[i];
      if (!reg_by_id_.emplace(app.id, i).second)
        throw StoreError("duplicate register id " + std::to_string(app.id));
      if (app.appln_id > 0 && !reg_by_appln_.emplace(app.appln_id, i).second)
        throw StoreError("duplicate register appln_id " + std::to_string(app.appln_id));
    }
    core_by_appln_.reserve(data_.core_applications.size() * 2);
    for (std::uint32_t i = 0; i < data_.core_applications.size(); ++i) {
      const auto& app = data_.core_applications[i];
      if (!core_by_appln_.emplace(app.appln_id, i).second)
        throw StoreError("duplicate core appln_id " + std::to_string(app.appln_id));
    }

    index_rows(data_.register_publications, reg_publications_,
               [](const RegisterPublication& r) { return r.id; });
    index_rows(data_.parties, parties_, [](const Party& r) { return r.id; });
    index_rows(data_.register_events, events_, [](const RegisterEvent& r) { return r.id; });
    index_rows(data_.procedure_steps, steps_, [](const ProcedureStep& r) { return r.id; });
    index_rows(data_.licensees, licensees_, [](const Licensee& r) { return r.id; });
    index_rows(data_.licensee_states, licensee_states_,
               [](const LicenseeState& r) { return r.id; });
    index_rows(data_.designated_states, designated_states_,
               [](const DesignatedState& r) { return r.id; });
    index_rows(data_.core_publications, core_publications_,
               [](const CorePublication& r) { return r.appln_id; });
    index_rows(data_.citations, citations_, [](const Citation& r) { return r.pat_publn_id; });
    index_rows(data_.legal_status_events, legal_events_,
               [](const LegalStatusEvent& r) { return r.appln_id; });

    for (std::uint32_t i = 0; i < data_.ipc_assignments.size(); ++i) {
      const std::string& symbol = data_.ipc_assignments[i].ipc_class_symbol;
      ipc_by_subclass_[symbol.substr(0, 4)].push_back(i);
    }
  }

  const Dataset& dataset() const { return data_; }

  const RegisterApplication* register_by_id(RegisterId id) const {
    auto it = reg_by_id_.find(id);
    return it == reg_by_id_.end() ? nullptr : &data_.register_applications[it->second];
  }

  const RegisterApplication* register_by_appln(ApplnId appln_id) const {
    auto it = reg_by_appln_.find(appln_id);
    return it == reg_by_appln_.end() ? nullptr : &data_.register_applications[it->second];
  }

  const CoreApplication* core_by_appln(ApplnId appln_id) const {
    auto it = core_by_appln_.find(appln_id);
    return it == core_by_appln_.end() ? nullptr : &data_.core_applications[it->second];
  }

  const std::vector<std::uint32_t>& reg_publication_rows(RegisterId id) const {
    return find(reg_publications_, id);
  }
  const std::vector<std::uint32_t>& party_rows(RegisterId id) const {
    return find(parties_, id);
  }
  const std::vector<std::uint32_t>& event_rows(RegisterId id) const {
    return find(events_, id);
  }
  const std::vector<std::uint32_t>& step_rows(RegisterId id) const {
    return find(steps_, id);
  }
  const std::vector<std::uint32_t>& licensee_rows(RegisterId id) const {
    return find(licensees_, id);
  }
  const std::vector<std::uint32_t>& licensee_state_rows(RegisterId id) const {
    return find(licensee_states_, id);
  }
  const std::vector<std::uint32_t>& designated_state_rows(RegisterId id) const {
    return find(designated_states_, id);
  }
  const std::vector<std::uint32_t>& core_publication_rows(ApplnId appln_id) const {
    return find(core_publications_, appln_id);
  }
  const std::vector<std::uint32_t>& citation_rows(PublnId pat_publn_id) const {
    return find(citations_, pat_publn_id);
  }
  const std::vector<std::uint32_t>& legal_event_rows(ApplnId appln_id) const {
    return find(legal_events_, appln_id);
  }

  /// IPC rows whose symbol starts with the given 4-char subclass; callers
  /// re-filter when their prefix is longer than the subclass.
  const std::vector<std::uint32_t>& ipc_rows_for_subclass(std::string_view subclass) const {
    auto it = ipc_by_subclass_.find(std::string(subclass));
    return it == ipc_by_subclass_.end() ? empty_ : it->second;
  }

 private:
  using RowIndex = std::unordered_map<std::int64_t, std::vector<std::uint32_t>>;

  template <typename Row, typename KeyFn>
  static void index_rows(const std::vector<Row>& rows, RowIndex& index, KeyFn key_of) {
    for (std::uint32_t i = 0; i < rows.size(); ++i) index[key_of(rows[i])].push_back(i);
  }

  const std::vector<std::uint32_t>& find(const RowIndex& index, std::int64_t key) const {
    auto it = index.find(key);
    return it == index.end() ? empty_ : it->second;
  }

  Dataset data_;
  std::unordered_map<RegisterId, std::uint32_t> reg_by_id_;
  std::unordered_map<ApplnId, std::uint32_t> reg_by_appln_;
  std::unordered_map<ApplnId, std::uint32_t> core_by_appln_;
  RowIndex reg_publications_, parties_, events_, steps_, licensees_, licensee_states_,
      designated_states_, core_publications_, citations_, legal_events_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> ipc_by_subclass_;
  std::vector<std::uint32_t> empty_;
};

/// Fails on duplicate register ids or core appln_ids; those should have been
/// caught at ingest.
inline IndexedStore build_store(Dataset dataset) { return IndexedStore(std::move(dataset)); }

/// The unique register application carrying this core identifier, or nullptr.
/// appln_id = 0 has no core linkage by definition and is rejected.
inline const RegisterApplication* register_for_core(const IndexedStore& store,
                                                    ApplnId appln_id) {
  if (appln_id <= 0)
    throw std::invalid_argument("register_for_core: appln_id must be positive");
  return store.register_by_appln(appln_id);
}

}  // namespace patreg
