// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/logic/deontic.hpp"

#include <algorithm>

namespace certguide::logic {

const ActionConstructor* DeonticBase::constructor(const std::string& name) const {
  auto it = std::find_if(constructors.begin(), constructors.end(),
                         [&](const ActionConstructor& c) { return c.name == name; });
  return it == constructors.end() ? nullptr : &*it;
}

bool DeonticBase::subsort(const std::string& sort, const std::string& expected) const {
  return sort == expected || (sort == "person" && expected == "entity");
}

void DeonticBase::declare(SymbolTable& symbols) const {
  for (const auto& c : constructors) symbols.declare(SymbolKind::ActionCtor, c.name, c.arg_sorts.size());
  for (const auto& p : predicates) symbols.declare(SymbolKind::Deontic, p);
}

bool DeonticBase::well_typed(const Term& action, const std::map<std::string, std::string>& sorts) const {
  if (action.kind != Term::Kind::Compound) return false;
  const ActionConstructor* c = constructor(action.name);
  if (!c || c->arg_sorts.size() != action.args.size()) return false;
  for (std::size_t i = 0; i < action.args.size(); ++i) {
    const Term& a = action.args[i];
    if (a.kind != Term::Kind::Constant) return false;
    auto it = sorts.find(a.name);
    if (it == sorts.end() || !subsort(it->second, c->arg_sorts[i])) return false;
  }
  return true;
}

bool DeonticBase::well_typed(const Literal& l, const std::map<std::string, std::string>& sorts) const {
  if (std::find(predicates.begin(), predicates.end(), l.predicate) == predicates.end()) return false;
  return l.args.size() == 1 && well_typed(l.args[0], sorts);
}

const DeonticBase& deontic_base() {
  static const DeonticBase base = [] {
    DeonticBase b;
    b.object_sorts = {"person", "entity", "reminder", "event", "invite"};
    b.property_sort = "property";
    b.constructors = {
        {"accept", {"invite"}},
        {"decline", {"invite"}},
        {"send_notification", {"invite"}},
        {"cancel_event", {"event"}},
        {"set_reminder", {"reminder"}},
        {"add_participant", {"event", "entity"}},
        {"remove_participant", {"event", "entity"}},
        {"delegate_event", {"event", "person"}},
        {"request_event_update", {"event", "person"}},
        {"suggest_alternative_time", {"event", "person"}},
        {"check_availability", {"event", "person"}},
        {"update_event", {"event", "property"}},
        {"reschedule_event", {"event", "property"}},
        {"change_visibility", {"event", "property"}},
    };
    b.predicates = {"permissible", "obligatory"};
    return b;
  }();
  return base;
}

}  // namespace certguide::logic
