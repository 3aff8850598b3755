// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "certguide/lexical/regular_set.hpp"
#include "certguide/logic/syntax.hpp"

namespace certguide::logicguide {

using lexical::RegularSet;

/// [a-z_][a-z0-9_]*
RegularSet identifier_grammar();

/**
 * Canonically printed literals and rules: single spaces, " -> " between
 * literals, constructor terms nested one level with one or two arguments.
 * With `symbols`, predicates, constructors and constants are limited to the
 * declared ones and predicates take their declared arity; otherwise any
 * identifier other than `not` is accepted in those positions.
 */
RegularSet literal_grammar(const logic::SymbolTable* symbols = nullptr, bool allow_variables = true);
RegularSet rule_grammar(const logic::SymbolTable* symbols = nullptr);

}  // namespace certguide::logicguide
