// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "krzyz/power_series.hpp"
#include "krzyz/trig_poly.hpp"

namespace krzyz::cli {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value starting with '{' is parsed as inline JSON, anything else is a path.
Json load_json_arg(const std::string& value, const std::string& what);

/// Rejects any key not in `allowed`.
void require_keys(const Json& obj, std::span<const char* const> allowed, const std::string& what);

double get_number(const Json& j, const std::string& what);
cplx get_complex(const Json& j, const std::string& what);

CoeffVec parse_coeffs(const Json& doc);
TrigPoly parse_trig(const Json& doc);
AtomSet parse_atoms(const Json& doc);

Json complex_json(cplx z);
Json complex_array(std::span<const cplx> zs);
Json atoms_json(const AtomSet& atoms);

/// Pretty JSON with every float as "%.16e" (17 significant digits) and
/// non-finite floats as null.
void write_json(std::ostream& os, const Json& j);

/// "%.16e", also used by the CSV writers.
std::string format_double(double v);

}  // namespace krzyz::cli
