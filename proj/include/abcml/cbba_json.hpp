#pragma once

// JSON reading and writing of cbba models.
//
//   {"basis": [{"id": "dz", "p": 1, "q": 0}, ...],
//    "unit": "1",
//    "product": [["dz", "dzbar", {"dzdzbar": "1"}], ...],
//    "del": [[...], ...]            dense, del[i][j] = coefficient of e_i in ∂e_j
//         | {"x": {"y": "1"}, ...}  sparse, source id -> image,
//    "delbar": same as del,
//    "conjugation": {"dz": "dzbar", "dzdzbar": {"dzdzbar": "-1"}, ...}}
//
// Coefficients are strings ("a/b", "a/b+c/d i") or integers. Missing product
// entries are zero, except that products with the unit default to the
// identity.

#include "abcml/cbba.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

namespace abcml {

using json = nlohmann::json;

/// Parses JSON text; syntax errors carry a line:column position.
inline json parse_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_gaussian(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  throw ParseError("coefficient must be a string or an integer, got " + j.dump());
}

inline json scalar_to_json(const Scalar& s) { return to_string(s); }

namespace detail {

inline Vector sparse_image(const CbbaModel& m, const json& j) {
  if (!j.is_object()) throw ParseError("expected an object of id -> coefficient, got " + j.dump());
  Vector v = m.zero();
  for (const auto& [id, c] : j.items()) {
    auto i = m.find(id);
    if (!i) throw ParseError("unknown basis id '" + id + "'");
    v[*i] += scalar_from_json(c);
  }
  return v;
}

inline void read_differential(CbbaModel& m, const json& j, bool is_del) {
  auto set = [&](std::size_t col, const Vector& v) { is_del ? m.set_del(col, v) : m.set_delbar(col, v); };
  if (j.is_null()) return;
  if (j.is_array()) {
    if (j.size() != m.dim()) throw ParseError("differential matrix must have " + std::to_string(m.dim()) + " rows");
    for (std::size_t c = 0; c < m.dim(); ++c) {
      Vector v = m.zero();
      for (std::size_t r = 0; r < m.dim(); ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != m.dim())
          throw ParseError("differential matrix must be " + std::to_string(m.dim()) + "x" + std::to_string(m.dim()));
        v[r] = scalar_from_json(row[c]);
      }
      set(c, v);
    }
    return;
  }
  if (!j.is_object()) throw ParseError("differential must be a matrix or an object");
  for (const auto& [id, img] : j.items()) {
    auto i = m.find(id);
    if (!i) throw ParseError("unknown basis id '" + id + "'");
    set(*i, sparse_image(m, img));
  }
}

}  // namespace detail

inline CbbaModel model_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("basis")) throw ParseError("model JSON needs a \"basis\" array");
    std::vector<BasisElement> basis;
    for (const auto& b : j.at("basis")) {
      int p = b.at("p").get<int>(), q = b.at("q").get<int>();
      if (p < 0 || q < 0) throw ParseError("negative bidegree for '" + b.at("id").get<std::string>() + "'");
      basis.push_back({b.at("id").get<std::string>(), {p, q}});
    }
    std::string unit = j.value("unit", std::string("1"));
    if (std::none_of(basis.begin(), basis.end(), [&](const BasisElement& e) { return e.id == unit; }))
      throw ParseError("unit id '" + unit + "' is not a basis element");
    CbbaModel m(std::move(basis), unit);

    std::vector<bool> seen(m.dim() * m.dim(), false);
    if (j.contains("product")) {
      for (const auto& entry : j.at("product")) {
        if (!entry.is_array() || entry.size() != 3) throw ParseError("product entries are [a, b, {c: coeff}]");
        std::size_t a = m.index_of(entry[0].get<std::string>());
        std::size_t b = m.index_of(entry[1].get<std::string>());
        Vector v = detail::sparse_image(m, entry[2]);
        if (seen[a * m.dim() + b])
          v = v + [&] {
            Vector w = m.zero();
            for (const auto& [k, c] : m.product(a, b)) w[k] += c;
            return w;
          }();
        m.set_product(a, b, v);
        seen[a * m.dim() + b] = true;
      }
    }
    const std::size_t u = m.unit();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (!seen[u * m.dim() + i]) m.set_product(u, i, m.unit_vector(i));
      if (!seen[i * m.dim() + u]) m.set_product(i, u, m.unit_vector(i));
    }
    detail::read_differential(m, j.value("del", json()), true);
    detail::read_differential(m, j.value("delbar", json()), false);

    if (j.contains("conjugation")) {
      std::vector<std::pair<std::size_t, Scalar>> conj(m.dim(), {m.dim(), Scalar(0)});
      for (const auto& [id, img] : j.at("conjugation").items()) {
        std::size_t i = m.index_of(id);
        if (img.is_string()) {
          conj[i] = {m.index_of(img.get<std::string>()), Scalar(1)};
        } else if (img.is_object() && img.size() == 1) {
          conj[i] = {m.index_of(img.begin().key()), scalar_from_json(img.begin().value())};
        } else {
          throw ParseError("conjugation of '" + id + "' must be an id or {id: coeff}");
        }
      }
      for (std::size_t i = 0; i < m.dim(); ++i)
        if (conj[i].first == m.dim()) throw ParseError("conjugation missing for '" + m.basis(i).id + "'");
      m.set_conjugation(std::move(conj));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline CbbaModel load_model(const std::string& path) { return model_from_json(parse_json_text(read_file(path), path)); }

inline json model_to_json(const CbbaModel& m) {
  json j;
  j["basis"] = json::array();
  for (const auto& b : m.basis()) j["basis"].push_back({{"id", b.id}, {"p", b.degree.p}, {"q", b.degree.q}});
  j["unit"] = m.basis(m.unit()).id;
  j["product"] = json::array();
  for (std::size_t a = 0; a < m.dim(); ++a)
    for (std::size_t b = 0; b < m.dim(); ++b) {
      if (a == m.unit() || b == m.unit() || m.product(a, b).empty()) continue;
      json img = json::object();
      for (const auto& [k, c] : m.product(a, b)) img[m.basis(k).id] = scalar_to_json(c);
      j["product"].push_back({m.basis(a).id, m.basis(b).id, img});
    }
  for (int which = 0; which < 2; ++which) {
    const ScalarMatrix& D = which == 0 ? m.del() : m.delbar();
    json dj = json::object();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      json img = json::object();
      for (std::size_t r = 0; r < m.dim(); ++r)
        if (!D(r, c).is_zero()) img[m.basis(r).id] = scalar_to_json(D(r, c));
      if (!img.empty()) dj[m.basis(c).id] = img;
    }
    j[which == 0 ? "del" : "delbar"] = dj;
  }
  if (m.has_conjugation()) {
    json cj = json::object();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      const auto& [t, c] = m.conjugation()[i];
      if (c == Scalar(1)) cj[m.basis(i).id] = m.basis(t).id;
      else cj[m.basis(i).id] = json{{m.basis(t).id, scalar_to_json(c)}};
    }
    j["conjugation"] = cj;
  }
  return j;
}

}  // namespace abcml
