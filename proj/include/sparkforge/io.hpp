#pragma once

// JSON encodings for matrices, graphs and certificates. Every document
// carries "schema_version".
//
// Matrix files:
//   {"schema_version": 1, "kind": "integer", "rows": r, "cols": c,
//    "entries": [int, ...]}                           (row-major)
//   {"kind": "cyclotomic", "order": N, "entries": [[c0, c1, ...], ...]}
//       power-basis coefficients in w_N = exp(-2 pi i / N), at most phi(N)
//       of them; a non-integral entry is {"num": [...], "den": d}
//   {"kind": "complex_float", "entries": [[re, im], ...]}
//       optionally with "provenance", "exact_shadow" (a cyclotomic matrix
//       file), "shadow_row_scale" and "shadow_col_scale".
// Integers may be JSON numbers or decimal strings (for values past 64 bits).

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sparkforge/constructions.hpp"
#include "sparkforge/dft_analysis.hpp"
#include "sparkforge/error.hpp"
#include "sparkforge/exact_matrix.hpp"
#include "sparkforge/frame.hpp"
#include "sparkforge/matroid.hpp"
#include "sparkforge/spark.hpp"

namespace sparkforge::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json integer_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

inline mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
    return mpz_class(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
      throw Error(Errc::InvalidInput, "bad integer string '" + j.get<std::string>() + "'");
    return v;
  }
  throw Error(Errc::InvalidInput, "expected an integer, got " + j.dump());
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw Error(Errc::InvalidInput, std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline const json& entries_field(const json& j, std::size_t expected) {
  const json& e = field(j, "entries");
  if (!e.is_array() || e.size() != expected)
    throw Error(Errc::InvalidInput, "expected " + std::to_string(expected) + " entries");
  return e;
}

inline json coeffs_to_json(const CycInt& c) {
  json a = json::array();
  for (const auto& x : c.coeffs()) a.push_back(integer_to_json(x));
  return a;
}

inline CycInt coeffs_from_json(const json& j, std::int64_t order, std::size_t degree) {
  if (!j.is_array()) throw Error(Errc::InvalidInput, "coefficient vector must be an array");
  if (j.size() > degree)
    throw Error(Errc::InvalidInput, "coefficient vector longer than phi(" + std::to_string(order) + ")");
  IntPoly p;
  for (const auto& x : j) p.push_back(integer_from_json(x));
  if (p.empty()) p.push_back(0);
  return CycInt::from_poly(order, std::move(p));
}

inline double double_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw Error(Errc::InvalidInput, "expected a number, got " + j.dump());
}

}  // namespace detail

inline json to_json(const IntMatrix& m) {
  json e = json::array();
  for (const auto& x : m.data()) e.push_back(integer_to_json(x));
  return {{"schema_version", kSchemaVersion},
          {"kind", "integer"},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"entries", std::move(e)}};
}

inline json to_json(const CycMatrix& m) {
  json e = json::array();
  for (const auto& x : m.data()) {
    if (x.den() == 1)
      e.push_back(detail::coeffs_to_json(x.num()));
    else
      e.push_back({{"num", detail::coeffs_to_json(x.num())}, {"den", integer_to_json(x.den())}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "cyclotomic"},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"order", m.order()},
          {"entries", std::move(e)}};
}

inline json to_json(const Provenance& p) {
  json j = {{"kind", p.kind}, {"params", p.params}, {"unit_norm", p.unit_norm}, {"parseval", p.parseval}};
  j["tight_bound"] = p.tight_bound ? json(*p.tight_bound) : json(nullptr);
  return j;
}

inline json to_json(const ComplexMatrix& m) {
  json e = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) e.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"schema_version", kSchemaVersion},
          {"kind", "complex_float"},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"entries", std::move(e)}};
}

inline json to_json(const Frame& f) {
  json j = to_json(f.entries);
  j["provenance"] = to_json(f.provenance);
  if (f.exact_shadow) {
    j["exact_shadow"] = to_json(*f.exact_shadow);
    if (!f.shadow_row_scale.empty()) j["shadow_row_scale"] = f.shadow_row_scale;
    if (!f.shadow_col_scale.empty()) j["shadow_col_scale"] = f.shadow_col_scale;
  }
  return j;
}

enum class MatrixKind { Integer, Cyclotomic, ComplexFloat };

/// Parsed matrix file; only the member matching `kind` is populated.
struct MatrixFile {
  MatrixKind kind = MatrixKind::Integer;
  IntMatrix integer;
  CycMatrix cyclotomic;
  Frame frame;
};

inline CycMatrix parse_cyclotomic(const json& j) {
  const std::size_t rows = detail::size_field(j, "rows");
  const std::size_t cols = detail::size_field(j, "cols");
  const json& ord = detail::field(j, "order");
  if (!ord.is_number_integer() || ord.get<std::int64_t>() < 1)
    throw Error(Errc::InvalidInput, "order must be a positive integer");
  const auto order = ord.get<std::int64_t>();
  const std::size_t degree = static_cast<std::size_t>(euler_phi(order));
  const json& e = detail::entries_field(j, rows * cols);
  std::vector<ExactScalar> data;
  data.reserve(rows * cols);
  for (const auto& x : e) {
    if (x.is_object())
      data.emplace_back(detail::coeffs_from_json(detail::field(x, "num"), order, degree),
                        integer_from_json(detail::field(x, "den")));
    else
      data.emplace_back(detail::coeffs_from_json(x, order, degree));
  }
  return CycMatrix(rows, cols, std::move(data), order);
}

inline Provenance parse_provenance(const json& j) {
  Provenance p;
  if (j.contains("kind")) p.kind = j.at("kind").get<std::string>();
  if (j.contains("params")) p.params = j.at("params").get<std::map<std::string, std::string>>();
  if (j.contains("unit_norm")) p.unit_norm = j.at("unit_norm").get<bool>();
  if (j.contains("parseval")) p.parseval = j.at("parseval").get<bool>();
  if (j.contains("tight_bound") && !j.at("tight_bound").is_null())
    p.tight_bound = j.at("tight_bound").get<double>();
  return p;
}

inline MatrixFile parse_matrix(const json& j) {
  const json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw Error(Errc::InvalidInput, "kind must be a string");
  const std::string k = kind.get<std::string>();
  MatrixFile out;
  if (k == "integer") {
    out.kind = MatrixKind::Integer;
    const std::size_t rows = detail::size_field(j, "rows");
    const std::size_t cols = detail::size_field(j, "cols");
    const json& e = detail::entries_field(j, rows * cols);
    std::vector<mpz_class> data;
    data.reserve(rows * cols);
    for (const auto& x : e) data.push_back(integer_from_json(x));
    out.integer = IntMatrix(rows, cols, std::move(data));
  } else if (k == "cyclotomic") {
    out.kind = MatrixKind::Cyclotomic;
    out.cyclotomic = parse_cyclotomic(j);
  } else if (k == "complex_float") {
    out.kind = MatrixKind::ComplexFloat;
    const std::size_t rows = detail::size_field(j, "rows");
    const std::size_t cols = detail::size_field(j, "cols");
    const json& e = detail::entries_field(j, rows * cols);
    out.frame.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows * cols; ++i) {
      const json& x = e[i];
      std::complex<double> v;
      if (x.is_array() && x.size() == 2)
        v = {detail::double_from_json(x[0]), detail::double_from_json(x[1])};
      else if (x.is_number())
        v = x.get<double>();
      else
        throw Error(Errc::InvalidInput, "complex entry must be [re, im]");
      out.frame.entries(static_cast<Eigen::Index>(i / cols), static_cast<Eigen::Index>(i % cols)) = v;
    }
    if (j.contains("provenance")) out.frame.provenance = parse_provenance(j.at("provenance"));
    if (j.contains("exact_shadow")) {
      out.frame.exact_shadow = parse_cyclotomic(j.at("exact_shadow"));
      if (out.frame.exact_shadow->rows() != rows || out.frame.exact_shadow->cols() != cols)
        throw Error(Errc::ShapeError, "exact_shadow shape differs from the matrix");
    }
    if (j.contains("shadow_row_scale"))
      out.frame.shadow_row_scale = j.at("shadow_row_scale").get<std::vector<double>>();
    if (j.contains("shadow_col_scale"))
      out.frame.shadow_col_scale = j.at("shadow_col_scale").get<std::vector<double>>();
  } else {
    throw Error(Errc::InvalidInput, "unknown matrix kind '" + k + "'");
  }
  return out;
}

inline json to_json(const BipartiteGraph& g) {
  return {{"schema_version", kSchemaVersion},
          {"ground", g.ground_size()},
          {"right", g.right_size()},
          {"adj", g.adjacency()}};
}

inline BipartiteGraph parse_bipartite(const json& j) {
  const std::size_t ground = detail::size_field(j, "ground");
  const std::size_t right = detail::size_field(j, "right");
  const json& adj = detail::field(j, "adj");
  if (!adj.is_array()) throw Error(Errc::InvalidInput, "adj must be an array");
  std::vector<std::vector<std::size_t>> a;
  for (const auto& row : adj) {
    if (!row.is_array()) throw Error(Errc::InvalidInput, "adj rows must be arrays");
    std::vector<std::size_t> nb;
    for (const auto& v : row) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw Error(Errc::InvalidInput, "neighbor must be a nonnegative integer");
      nb.push_back(v.get<std::size_t>());
    }
    a.push_back(std::move(nb));
  }
  return BipartiteGraph(ground, right, std::move(a));
}

inline json to_json(const SimpleGraph& g) {
  json e = json::array();
  for (const auto& [a, b] : g.edges()) e.push_back({a, b});
  return {{"schema_version", kSchemaVersion}, {"vertices", g.vertices()}, {"edges", std::move(e)}};
}

inline SimpleGraph parse_simple_graph(const json& j) {
  const std::size_t v = detail::size_field(j, "vertices");
  const json& edges = detail::field(j, "edges");
  if (!edges.is_array()) throw Error(Errc::InvalidInput, "edges must be an array");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (const auto& x : edges) {
    if (!x.is_array() || x.size() != 2 || !x[0].is_number_integer() || !x[1].is_number_integer() ||
        x[0].get<std::int64_t>() < 0 || x[1].get<std::int64_t>() < 0)
      throw Error(Errc::InvalidInput, "edge must be a pair of nonnegative integers");
    e.emplace_back(x[0].get<std::size_t>(), x[1].get<std::size_t>());
  }
  return SimpleGraph(v, std::move(e));
}

inline json to_json(const SparkCertificate& c) {
  json j = {{"schema_version", kSchemaVersion},
            {"mode", mode_name(c.mode)},
            {"rows", c.rows},
            {"cols", c.cols},
            {"spark", c.spark},
            {"spark_is_upper_bound", c.spark_is_upper_bound},
            {"full_spark", c.full_spark()},
            {"checked_subsets", c.checked_subsets}};
  j["witness"] = c.witness ? json(*c.witness) : json(nullptr);
  return j;
}

inline json to_json(const DistributionReport& r) {
  return {{"divisor", r.divisor}, {"coset_counts", r.coset_counts}, {"lo", r.lo},
          {"hi", r.hi},           {"uniform", r.uniform}};
}

inline json to_json(const UniformityResult& u) {
  json v = json::array();
  for (const auto& r : u.violations) v.push_back(to_json(r));
  return {{"uniform", u.uniform}, {"violations", std::move(v)}};
}

inline json to_json(const RipCheck& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"divisor", x.divisor},
                 {"residue", x.residue},
                 {"count", x.count},
                 {"deviation", x.deviation},
                 {"allowed", x.allowed}});
  return {{"pass", r.pass}, {"violations", std::move(v)}};
}

inline json to_json(const GirthResult& g) {
  json j = {{"girth", g.girth},
            {"free", g.is_free()},
            {"method", method_name(g.method)},
            {"trials_used", g.trials_used},
            {"checked_subsets", g.checked_subsets}};
  j["witness"] = g.witness ? json(*g.witness) : json(nullptr);
  j["seed"] = g.seed ? json(*g.seed) : json(nullptr);
  return j;
}

inline json to_json(const ProbeResult& p) {
  json j = {{"spark_exceeds_k", p.spark_exceeds_k},
            {"k", p.k},
            {"requested_columns", p.requested_columns.get_str()},
            {"used_columns", p.used_columns},
            {"capped", p.capped},
            {"trials", p.trials},
            {"trials_run", p.trials_run},
            {"seed", p.seed}};
  j["proof_trial"] = p.proof_trial ? json(*p.proof_trial) : json(nullptr);
  j["failed_trial"] = p.failed_trial ? json(*p.failed_trial) : json(nullptr);
  j["failed_projection"] = p.failed_projection ? json(*p.failed_projection) : json(nullptr);
  j["failed_columns"] = p.failed_columns ? json(*p.failed_columns) : json(nullptr);
  return j;
}

inline json to_json(const IndexSet& s) {
  return {{"order", s.order()}, {"members", s.members()}};
}

}  // namespace sparkforge::io
