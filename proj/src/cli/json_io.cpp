// SPDX-License-Identifier: Apache-2.0
#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "krzyz/error.hpp"

namespace krzyz::cli {

Json load_json_arg(const std::string& value, const std::string& what) {
  const auto first = value.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && value[first] == '{') {
    text = value;
  } else {
    std::ifstream in(value);
    if (!in) throw InputError(what + ": cannot open '" + value + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw InputError(what + ": expected a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": malformed JSON: " + e.what());
  }
}

void require_keys(const Json& obj, std::span<const char* const> allowed, const std::string& what) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw InputError(what + ": unknown field '" + item.key() + "'");
  }
}

double get_number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(what + ": not finite");
  return v;
}

cplx get_complex(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + ": expected [re, im]");
  return {get_number(j[0], what), get_number(j[1], what)};
}

namespace {

const Json& require_array(const Json& doc, const char* key, const std::string& what) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw InputError(what + ": missing field '" + key + "'");
  if (!it->is_array()) throw InputError(what + ": '" + key + "' must be an array");
  return *it;
}

}  // namespace

CoeffVec parse_coeffs(const Json& doc) {
  static constexpr const char* kKeys[] = {"h"};
  require_keys(doc, kKeys, "coeffs");
  const Json& arr = require_array(doc, "h", "coeffs");
  if (arr.empty()) throw InputError("coeffs: 'h' is empty");
  std::vector<cplx> h;
  for (std::size_t k = 0; k < arr.size(); ++k) h.push_back(get_complex(arr[k], "coeffs h[" + std::to_string(k) + "]"));
  return CoeffVec(std::move(h));
}

TrigPoly parse_trig(const Json& doc) {
  static constexpr const char* kKeys[] = {"a0", "terms"};
  require_keys(doc, kKeys, "trig");
  const auto a0 = doc.find("a0");
  if (a0 == doc.end()) throw InputError("trig: missing field 'a0'");
  std::vector<TrigTerm> terms;
  if (doc.contains("terms")) {
    const Json& arr = require_array(doc, "terms", "trig");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const cplx ab = get_complex(arr[k], "trig terms[" + std::to_string(k) + "]");
      terms.push_back({ab.real(), ab.imag()});
    }
  }
  return TrigPoly(get_number(*a0, "trig a0"), std::move(terms));
}

AtomSet parse_atoms(const Json& doc) {
  static constexpr const char* kKeys[] = {"atoms"};
  require_keys(doc, kKeys, "atoms");
  const Json& arr = require_array(doc, "atoms", "atoms");
  if (arr.empty()) throw InputError("atoms: 'atoms' is empty");
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const cplx ap = get_complex(arr[k], "atoms[" + std::to_string(k) + "]");
    atoms.push_back({ap.real(), ap.imag()});
  }
  try {
    return AtomSet(std::move(atoms));
  } catch (const Error& e) {
    throw InputError(std::string("atoms: ") + e.what());
  }
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json complex_array(std::span<const cplx> zs) {
  Json out = Json::array();
  for (const cplx& z : zs) out.push_back(complex_json(z));
  return out;
}

Json atoms_json(const AtomSet& atoms) {
  Json out = Json::array();
  for (const Atom& a : atoms.atoms()) out.push_back(Json::array({a.alpha, a.phi}));
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

bool is_flat(const Json& j) {
  return std::none_of(j.begin(), j.end(), [](const Json& e) {
    return e.is_object() || (e.is_array() && std::any_of(e.begin(), e.end(), [](const Json& x) {
                               return x.is_structured();
                             }));
  });
}

void write_value(std::ostream& os, const Json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  if (j.is_number_float()) {
    const double v = j.get<double>();
    os << (std::isfinite(v) ? format_double(v) : "null");
  } else if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& item : j.items()) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(item.key()).dump() << ": ";
      write_value(os, item.value(), depth + 1);
    }
    os << '\n' << close << '}';
  } else if (j.is_array()) {
    if (is_flat(j)) {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        write_value(os, j[i], depth + 1);
      }
      os << ']';
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << pad;
      write_value(os, j[i], depth + 1);
    }
    os << '\n' << close << ']';
  } else {
    os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const Json& j) {
  write_value(os, j, 0);
  os << '\n';
}

}  // namespace krzyz::cli
