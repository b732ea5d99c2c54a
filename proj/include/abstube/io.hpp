#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abstube/applications.hpp"
#include "abstube/errors.hpp"
#include "abstube/polyhedron.hpp"
#include "abstube/tube_builder.hpp"
#include "abstube/tube_prob.hpp"

// File formats:
//   polyhedron  {"n":int, "m":int, "A":[[m rows of n]], "b":[m]}   row i is a_i^T
//   tube        {"m":..., "n":..., "r":..., "order":[...], "members":[[1],[2],[1,2,4]]}
// Index lists are 1-based and sorted.

namespace abstube::io {

using nlohmann::json;

inline Polyhedron polyhedron_from_json(const json& j) {
  try {
    Polyhedron p;
    p.n = j.at("n").get<int>();
    p.m = j.at("m").get<int>();
    const auto rows = j.at("A").get<std::vector<std::vector<double>>>();
    const auto rhs = j.at("b").get<std::vector<double>>();
    if (static_cast<int>(rows.size()) != p.m || static_cast<int>(rhs.size()) != p.m)
      throw ShapeMismatch("polyhedron file: A and b must have m = " + std::to_string(p.m) + " rows");
    for (const auto& row : rows)
      if (static_cast<int>(row.size()) != p.n)
        throw ShapeMismatch("polyhedron file: every row of A must have n = " + std::to_string(p.n) + " entries");
    const Polyhedron built = Polyhedron::from_rows(rows, rhs);
    p.A = built.A;
    p.b = built.b;
    if (p.m == 0) p.A.resize(p.n, 0);
    validate(p);
    return p;
  } catch (const json::exception& e) {
    throw ShapeMismatch(std::string("polyhedron file: ") + e.what());
  }
}

inline json to_json(const Polyhedron& p) {
  json rows = json::array();
  for (int i = 0; i < p.m; ++i) {
    json row = json::array();
    for (int k = 0; k < p.n; ++k) row.push_back(p.A(k, i));
    rows.push_back(std::move(row));
  }
  json rhs = json::array();
  for (int i = 0; i < p.m; ++i) rhs.push_back(p.b(i));
  return {{"n", p.n}, {"m", p.m}, {"A", std::move(rows)}, {"b", std::move(rhs)}};
}

inline json to_json(const AbstractTube& t) {
  json members = json::array();
  for (const auto& J : t.members) members.push_back(J.indices());
  return {{"m", t.m}, {"n", t.n}, {"r", t.r}, {"order", t.order}, {"members", std::move(members)}};
}

inline AbstractTube tube_from_json(const json& j) {
  try {
    AbstractTube t;
    t.m = j.at("m").get<int>();
    t.n = j.at("n").get<int>();
    t.r = j.at("r").get<int>();
    t.order = j.at("order").get<std::vector<int>>();
    check_order(t.order, t.m);
    for (const auto& entry : j.at("members")) {
      IndexSet J(entry.get<std::vector<int>>());
      if (J.empty() || J.back() > t.m) throw IndexOutOfRange("tube member " + J.to_string() + " outside 1..m");
      t.members.push_back(std::move(J));
    }
    std::sort(t.members.begin(), t.members.end());
    return t;
  } catch (const json::exception& e) {
    throw ShapeMismatch(std::string("tube file: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

/// Members as "1 2 4" (space separated, 1-based).
inline std::string member_label(const IndexSet& J) {
  std::string s;
  for (std::size_t k = 0; k < J.size(); ++k) s += (k ? " " : "") + std::to_string(J[k]);
  return s;
}

/// CSV with columns member, sign, term_probability.
inline void write_terms_csv(std::ostream& os, const ProbabilityResult& r) {
  os << "member,sign,term_probability\n";
  os.precision(17);
  for (const auto& t : r.terms) os << member_label(t.J) << ',' << t.sign << ',' << t.probability << '\n';
}

/// CSV with columns s, F.
inline void write_curve_csv(std::ostream& os, const TukeyKramerCurve& curve) {
  os << "s,F\n";
  os.precision(17);
  for (const auto& p : curve.points) os << p.s << ',' << p.F << '\n';
}

}  // namespace abstube::io
