#ifndef QFOCK_JSON_HPP
#define QFOCK_JSON_HPP

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "qfock/hirota.hpp"
#include "qfock/partitions.hpp"
#include "qfock/polyring.hpp"
#include "qfock/qcalc.hpp"
#include "qfock/rational.hpp"
#include "qfock/virasoro.hpp"

namespace qfock::io {

/// Insertion-ordered JSON so output order is exactly the canonical order of the data.
using Json = nlohmann::ordered_json;

/// [3,1]
inline Json to_json(const StrictPartition& p) { return Json(p.parts()); }

inline StrictPartition partition_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("partition must be a JSON array");
  return StrictPartition(j.get<std::vector<int>>());
}

/// [{"coeff": "p/q", "monomial": {"1": e1, "3": e3}}, ...] in canonical monomial order.
inline Json to_json(const OddPolynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json mono = Json::object();
    for (auto [j, e] : m.factors()) mono[std::to_string(j)] = e;
    out.push_back(Json{{"coeff", to_string(c)}, {"monomial", std::move(mono)}});
  }
  return out;
}

inline OddPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array");
  OddPolynomial p;
  for (const auto& term : j) {
    Monomial m;
    for (const auto& [key, e] : term.at("monomial").items()) m.multiply_variable(std::stoi(key), e.get<int>());
    p.add_term(m, parse_rational(term.at("coeff").get<std::string>()));
  }
  return p;
}

/// [{"partition": [..], "coeff": "p/q"}, ...] in decreasing-lex order.
inline Json to_json(const QExpansion& e) {
  Json out = Json::array();
  for (const auto& [p, c] : e.terms()) out.push_back(Json{{"partition", to_json(p)}, {"coeff", to_string(c)}});
  return out;
}

inline QExpansion expansion_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expansion must be a JSON array");
  QExpansion e;
  for (const auto& term : j) {
    e.add(partition_from_json(term.at("partition")), parse_rational(term.at("coeff").get<std::string>()));
  }
  return e;
}

/// {"k": k, "n": n, "rows": [...], "cols": [...], "entries": [["p/q", ...], ...]}
inline Json to_json(const OperatorMatrix& m) {
  Json rows = Json::array();
  for (const auto& p : m.rows) rows.push_back(to_json(p));
  Json cols = Json::array();
  for (const auto& p : m.cols) cols.push_back(to_json(p));
  Json entries = Json::array();
  for (const auto& row : m.entries) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    entries.push_back(std::move(r));
  }
  return Json{{"k", m.k}, {"n", m.n}, {"rows", rows}, {"cols", cols}, {"entries", entries}};
}

inline OperatorMatrix matrix_from_json(const Json& j) {
  OperatorMatrix m;
  m.k = j.at("k").get<int>();
  m.n = j.at("n").get<int>();
  for (const auto& p : j.at("rows")) m.rows.push_back(partition_from_json(p));
  for (const auto& p : j.at("cols")) m.cols.push_back(partition_from_json(p));
  for (const auto& row : j.at("entries")) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
    if (r.size() != m.cols.size()) throw std::invalid_argument("matrix row length does not match cols");
    m.entries.push_back(std::move(r));
  }
  if (m.entries.size() != m.rows.size()) throw std::invalid_argument("matrix row count does not match rows");
  return m;
}

/// Per-label records {"partition", "in_esp", "residual_terms", "is_zero"}; a
/// top-level note is added when a label with an odd part fails.
inline Json to_json(const ProbeReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back(Json{{"partition", to_json(rec.partition)},
                           {"in_esp", rec.in_esp},
                           {"residual_terms", rec.residual_terms},
                           {"is_zero", rec.is_zero}});
  }
  Json out{{"max_weight", r.max_weight}, {"records", std::move(records)}, {"non_esp_nonzero", r.non_esp_nonzero()}};
  if (r.non_esp_nonzero() > 0) out["note"] = kNormalizationNote;
  return out;
}

}  // namespace qfock::io

#endif  // QFOCK_JSON_HPP
