#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/exact_linalg.hpp"
#include "subsum/instance_gen.hpp"
#include "subsum/lll.hpp"
#include "subsum/modular_tester.hpp"

namespace subsum {

using Json = nlohmann::json;

inline constexpr const char* kTesterFormat = "subsum-tester/1";

// ---------------------------------------------------------------------------
// Field readers. Errors name the JSON path of the offending field.

namespace detail {

inline const Json& field(const Json& obj, const char* key,
                         const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path + "." + key + ": missing field");
  }
  return *it;
}

inline Integer read_integer(const Json& v, const std::string& path) {
  if (!v.is_string()) {
    throw ParseError(path + ": expected a decimal string");
  }
  try {
    return parse_integer(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Rational read_rational(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path + ": expected a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::uint64_t read_count(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() &&
      !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(path + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

inline bool read_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw ParseError(path + ": expected true or false");
  return v.get<bool>();
}

inline const Json& read_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected an array");
  return v;
}

inline IntVector read_int_vector(const Json& v, const std::string& path) {
  read_array(v, path);
  IntVector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(read_integer(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json write_int_vector(const IntVector& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(to_string(x));
  return arr;
}

inline std::string path_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instances

inline Json instance_to_json(const SubsetSumInstance& inst) {
  Json j;
  j["n"] = inst.n;
  j["a"] = detail::write_int_vector(inst.a);
  j["R"] = to_string(inst.R);
  j["seed"] = inst.seed;
  if (inst.planted) {
    Json p;
    p["e"] = inst.planted->e;
    p["T"] = to_string(inst.planted->T);
    j["planted"] = std::move(p);
  } else {
    j["planted"] = nullptr;
  }
  return j;
}

// Structural parse only; range and planted invariants are left to verify.
inline SubsetSumInstance instance_from_json(const Json& j) {
  using namespace detail;
  const std::string root = "$";
  SubsetSumInstance inst;
  inst.n = static_cast<std::size_t>(read_count(field(j, "n", root), "$.n"));
  inst.a = read_int_vector(field(j, "a", root), "$.a");
  inst.R = read_integer(field(j, "R", root), "$.R");
  inst.seed = read_count(field(j, "seed", root), "$.seed");
  const Json& pl = field(j, "planted", root);
  if (!pl.is_null()) {
    Planted p;
    const Json& e = read_array(field(pl, "e", "$.planted"), "$.planted.e");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i].is_number_integer()) {
        throw ParseError(path_index("$.planted.e", i) + ": expected 0 or 1");
      }
      p.e.push_back(e[i].get<int>());
    }
    p.T = read_integer(field(pl, "T", "$.planted"), "$.planted.T");
    inst.light = 2 * weight(p.e) <= inst.n;
    inst.planted = std::move(p);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Testers
//
// TesterRecord mirrors the file exactly and may hold inconsistent data;
// verify_tester checks it and tester_from_record turns it into a tester.

struct TesterRecord {
  std::size_t n = 0;
  IntVector a;
  Integer p;
  Integer a1_inv;
  IntVector alpha;
  Rational delta;
  Rational mu_bound;
  IntVector multipliers;
  IntBasis matrix;
  std::optional<RatMatrix> inverse;
  std::vector<bool> l1_ok;
  bool full_rank = false;
};

inline TesterRecord tester_record(const ModularTester& t) {
  TesterRecord r;
  r.n = t.spec().n();
  r.a = t.spec().a();
  r.p = t.spec().p();
  r.a1_inv = t.spec().a1_inv();
  r.alpha = t.spec().alpha();
  r.delta = t.params().delta();
  r.mu_bound = t.params().mu_bound();
  r.multipliers = t.multipliers();
  r.matrix = t.matrix();
  if (t.inverse().rows() != 0) r.inverse = t.inverse();
  r.l1_ok = t.cert().l1_ok;
  r.full_rank = t.cert().full_rank;
  return r;
}

inline Json tester_to_json(const TesterRecord& r) {
  using detail::write_int_vector;
  Json j;
  j["format"] = kTesterFormat;
  j["n"] = r.n;
  j["a"] = write_int_vector(r.a);
  j["p"] = to_string(r.p);
  j["a1_inv"] = to_string(r.a1_inv);
  j["alpha"] = write_int_vector(r.alpha);
  j["delta"] = to_string(r.delta);
  j["mu_bound"] = to_string(r.mu_bound);
  j["multipliers"] = write_int_vector(r.multipliers);
  Json mp = Json::array();
  for (const auto& row : r.matrix.row_data()) mp.push_back(write_int_vector(row));
  j["M_p"] = std::move(mp);
  if (r.inverse) {
    Json inv = Json::array();
    for (const auto& row : r.inverse->row_data()) {
      Json jr = Json::array();
      for (const auto& x : row) jr.push_back(to_string(x));
      inv.push_back(std::move(jr));
    }
    j["M_inv"] = std::move(inv);
  } else {
    j["M_inv"] = nullptr;
  }
  Json cert;
  cert["l1_ok"] = r.l1_ok;
  cert["full_rank"] = r.full_rank;
  j["cert"] = std::move(cert);
  return j;
}

inline Json tester_to_json(const ModularTester& t) {
  return tester_to_json(tester_record(t));
}

inline TesterRecord tester_record_from_json(const Json& j) {
  using namespace detail;
  const std::string root = "$";
  const Json& fmt = field(j, "format", root);
  if (!fmt.is_string() || fmt.get<std::string>() != kTesterFormat) {
    throw ParseError(std::string("$.format: expected \"") + kTesterFormat +
                     "\"");
  }
  TesterRecord r;
  r.n = static_cast<std::size_t>(read_count(field(j, "n", root), "$.n"));
  r.a = read_int_vector(field(j, "a", root), "$.a");
  r.p = read_integer(field(j, "p", root), "$.p");
  r.a1_inv = read_integer(field(j, "a1_inv", root), "$.a1_inv");
  r.alpha = read_int_vector(field(j, "alpha", root), "$.alpha");
  r.delta = read_rational(field(j, "delta", root), "$.delta");
  r.mu_bound = read_rational(field(j, "mu_bound", root), "$.mu_bound");
  r.multipliers = read_int_vector(field(j, "multipliers", root), "$.multipliers");

  const Json& mp = read_array(field(j, "M_p", root), "$.M_p");
  if (mp.size() != r.n) {
    throw ParseError("$.M_p: expected " + std::to_string(r.n) + " rows");
  }
  r.matrix = IntBasis(r.n, r.n);
  for (std::size_t i = 0; i < r.n; ++i) {
    IntVector row = read_int_vector(mp[i], path_index("$.M_p", i));
    if (row.size() != r.n) {
      throw ParseError(path_index("$.M_p", i) + ": expected " +
                       std::to_string(r.n) + " entries");
    }
    r.matrix[i] = std::move(row);
  }

  const Json& inv = field(j, "M_inv", root);
  if (!inv.is_null()) {
    read_array(inv, "$.M_inv");
    if (inv.size() != r.n) {
      throw ParseError("$.M_inv: expected " + std::to_string(r.n) + " rows");
    }
    RatMatrix m(r.n, r.n);
    for (std::size_t i = 0; i < r.n; ++i) {
      const std::string rp = path_index("$.M_inv", i);
      const Json& row = read_array(inv[i], rp);
      if (row.size() != r.n) {
        throw ParseError(rp + ": expected " + std::to_string(r.n) + " entries");
      }
      for (std::size_t c = 0; c < r.n; ++c)
        m(i, c) = read_rational(row[c], path_index(rp, c));
    }
    r.inverse = std::move(m);
  }

  const Json& cert = field(j, "cert", root);
  const Json& l1 = read_array(field(cert, "l1_ok", "$.cert"), "$.cert.l1_ok");
  for (std::size_t i = 0; i < l1.size(); ++i)
    r.l1_ok.push_back(read_bool(l1[i], path_index("$.cert.l1_ok", i)));
  r.full_rank = read_bool(field(cert, "full_rank", "$.cert"), "$.cert.full_rank");
  return r;
}

// Rebuilds a tester from a record. The certificate is recomputed from M_p
// rather than trusted; structural inconsistencies throw.
inline ModularTester tester_from_record(const TesterRecord& r) {
  if (r.a.size() != r.n || r.multipliers.size() != r.n) {
    throw DimensionMismatch("tester record lengths do not match n = " +
                            std::to_string(r.n));
  }
  ModularLatticeSpec spec(r.a, r.p);
  ReductionParams params(r.delta, r.mu_bound);
  TesterCertificate cert;
  cert.l1_ok.resize(r.n);
  cert.decode_ok.resize(r.n);
  cert.l1_norms.resize(r.n);
  for (std::size_t i = 0; i < r.n; ++i) {
    const IntVector& row = r.matrix[i];
    cert.decode_ok[i] = encode_multiplier(r.multipliers[i], spec) == row;
    cert.l1_norms[i] = l1_norm(row);
    cert.l1_ok[i] = 2 * cert.l1_norms[i] < spec.p();
  }
  cert.full_rank = r.inverse.has_value();
  return ModularTester(std::move(spec), std::move(params), r.multipliers,
                       r.matrix, r.inverse.value_or(RatMatrix()),
                       std::move(cert));
}

// ---------------------------------------------------------------------------
// Files

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses JSON text; syntax errors report line and column.
inline Json parse_json(const std::string& text, const std::string& name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(name + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": invalid JSON");
  }
}

inline Json read_json_file(const std::string& path) {
  return parse_json(read_text_file(path), path);
}

inline void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, dump_json(j));
}

}  // namespace subsum
