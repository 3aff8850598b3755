// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "certguide/logic/syntax.hpp"

namespace certguide::logic {

struct ActionConstructor {
  std::string name;
  std::vector<std::string> arg_sorts;
};

/// Sorts, action constructors and deontic predicates of the calendar domain.
struct DeonticBase {
  std::vector<std::string> object_sorts;  // person, entity, reminder, event, invite
  std::string property_sort;              // values for update/reschedule/visibility
  std::vector<ActionConstructor> constructors;
  std::vector<std::string> predicates;  // permissible, obligatory

  const ActionConstructor* constructor(const std::string& name) const;
  /// `sort` is usable where `expected` is required (person <= entity).
  bool subsort(const std::string& sort, const std::string& expected) const;
  /// Declares constructors and deontic predicates into `symbols`.
  void declare(SymbolTable& symbols) const;

  /// A deontic literal over one ground action term whose arguments have the
  /// constructor's sorts under `sorts` (constant -> sort).
  bool well_typed(const Literal& l, const std::map<std::string, std::string>& sorts) const;
  bool well_typed(const Term& action, const std::map<std::string, std::string>& sorts) const;
};

const DeonticBase& deontic_base();

}  // namespace certguide::logic
