#pragma once

#include <json.hpp>

#include "spodual/division.hpp"
#include "spodual/forms.hpp"
#include "spodual/weyl.hpp"

// JSON forms of the library's value types. Scalars travel as strings to
// preserve exactness across tools.

namespace spodual {

using nlohmann::json;

inline json to_json(const Rational& r) { return r.str(); }
inline json to_json(const Gaussian& g) {
  return json{{"re", g.re.str()}, {"im", g.im.str()}};
}

template <class S>
json to_json(const Mat<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
json to_json(const DivisionSuperalgebra<S>& a) {
  json basis = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    basis.push_back(json{{"symbol", a.symbol(i)}, {"parity", a.parity(i)}});
  json table = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) {
      json coeffs = json::array();
      for (const auto& c : a.entry(i, j)) coeffs.push_back(to_json(c));
      row.push_back(std::move(coeffs));
    }
    table.push_back(std::move(row));
  }
  return json{{"name", a.display()}, {"basis", std::move(basis)}, {"table", std::move(table)}};
}

template <class S>
json to_json(const LieSpan<S>& g) {
  json basis = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    basis.push_back(json{{"parity", g.parities[i]}, {"matrix", to_json(g.basis[i])}});
  return json{{"ambient_parities", g.ambient.parities()}, {"basis", std::move(basis)}};
}

template <class S>
json to_json(const SuperhermitianForm<S>& f) {
  json gram = json::array();
  for (const auto& row : f.gram) {
    json r = json::array();
    for (const auto& e : row) {
      json coords = json::array();
      for (const auto& c : e.coords) coords.push_back(to_json(c));
      r.push_back(std::move(coords));
    }
    gram.push_back(std::move(r));
  }
  return json{{"algebra", f.algebra()->display()},
              {"involution_tag", f.involution.tag},
              {"sign", f.sign},
              {"parity", f.parity},
              {"gram", std::move(gram)}};
}

template <class S>
json to_json(const WCElement<S>& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms()) {
    json t;
    t["even"] = m.exp;
    t["odd"] = m.odd;
    t["coeff"] = to_json(c);
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace spodual
