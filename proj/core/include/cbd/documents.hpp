#pragma once

// JSON documents other than cbd-system/1:
//
//   cbd-coupling/1      {"format", "cells": [{"property", "context"}], "table": {"<tuple>": "a/b"}}
//                       connection couplings also carry "property" and the ordered "contexts"
//   cbd-certificate/1   {"format", "system", "mode", "value": "y.b",
//                        "constraints": [{"index", "kind", "description", "rhs", "multiplier"}]}
//   cbd-constraints/1   {"format", "properties": [...], "constraints":
//                        [{"scope": [...], "predicate": "exactly_k" | "at_most_k" | "all_equal", "k" | "value"}]}

#include <string>
#include <string_view>

#include "cbd/coupling.hpp"
#include "cbd/decision.hpp"
#include "cbd/deterministic.hpp"

namespace cbd {

inline constexpr std::string_view kCouplingFormat = "cbd-coupling/1";
inline constexpr std::string_view kCertificateFormat = "cbd-certificate/1";
inline constexpr std::string_view kConstraintsFormat = "cbd-constraints/1";

std::string serialize_coupling(const ConnectionCoupling& coupling);
std::string serialize_coupling(const SystemCoupling& coupling);
SystemCoupling parse_system_coupling(std::string_view text);

std::string serialize_certificate(const System& system, const CouplingLP& lp, const FarkasCertificate& certificate);
FarkasCertificate parse_certificate(std::string_view text);

ConstraintSystem parse_constraints(std::string_view text);
std::string serialize_constraints(const ConstraintSystem& cs);

}  // namespace cbd
