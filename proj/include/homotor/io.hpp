#pragma once

// JSON readers and writers. Every document carries a "schema" field; readers
// check it and the shape of each field before anything is built, and throw
// ValidationError on the first problem.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "homotor/complexes.hpp"
#include "homotor/galois/liftings.hpp"
#include "homotor/galois/numerology.hpp"
#include "homotor/galois/selmer.hpp"
#include "homotor/koszul/cg.hpp"
#include "homotor/koszul/oracle.hpp"
#include "homotor/simplicial/module.hpp"

namespace homotor::io {

using Json = nlohmann::ordered_json;

namespace schema {
inline constexpr const char* complex = "homotor.complex/1";
inline constexpr const char* chain_map = "homotor.chain_map/1";
inline constexpr const char* simplicial_module = "homotor.simplicial_module/1";
inline constexpr const char* bar = "homotor.bar/1";
inline constexpr const char* graded_module = "homotor.graded_module/1";
inline constexpr const char* free_graded_complex = "homotor.free_graded_complex/1";
inline constexpr const char* group = "homotor.group/1";
inline constexpr const char* representation = "homotor.representation/1";
inline constexpr const char* selmer = "homotor.selmer/1";
inline constexpr const char* numerology = "homotor.numerology/1";
inline constexpr const char* report = "homotor.report/1";
}  // namespace schema

// ---- field access -------------------------------------------------------

inline const Json& need(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline void expect_schema(const Json& j, const char* name) {
  const auto& s = need(j, "schema", "document");
  if (!s.is_string() || s.get<std::string>() != name)
    throw ValidationError("expected schema \"" + std::string(name) + "\", got " + s.dump());
}

inline long get_int(const Json& j, const std::string& key, const std::string& where) {
  const auto& v = need(j, key, where);
  if (!v.is_number_integer()) throw ValidationError(where + "." + key + ": expected an integer");
  return v.get<long>();
}

inline long get_int_or(const Json& j, const std::string& key, long fallback, const std::string& where) {
  return j.contains(key) ? get_int(j, key, where) : fallback;
}

inline std::size_t get_size(const Json& j, const std::string& key, const std::string& where) {
  long v = get_int(j, key, where);
  if (v < 0) throw ValidationError(where + "." + key + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

inline std::string get_string(const Json& j, const std::string& key, const std::string& where) {
  const auto& v = need(j, key, where);
  if (!v.is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline bool get_bool_or(const Json& j, const std::string& key, bool fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw ValidationError(where + "." + key + ": expected true or false");
  return j[key].get<bool>();
}

inline std::vector<long> int_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array of integers");
  std::vector<long> out;
  for (auto& x : v) {
    if (!x.is_number_integer()) throw ValidationError(where + ": expected an array of integers");
    out.push_back(x.get<long>());
  }
  return out;
}

inline std::vector<std::size_t> size_list(const Json& v, const std::string& where) {
  std::vector<std::size_t> out;
  for (long x : int_list(v, where)) {
    if (x < 0) throw ValidationError(where + ": entries must be non-negative");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

inline std::vector<std::string> string_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (auto& x : v) {
    if (!x.is_string()) throw ValidationError(where + ": expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

// ---- rings and matrices -------------------------------------------------

// {"p": 5} or {"p": 3, "e": 2}
inline CoefficientRing ring_from_json(const Json& j, const std::string& where = "ring") {
  long p = get_int(j, "p", where);
  long e = get_int_or(j, "e", 1, where);
  if (e < 1 || e > 30) throw ValidationError(where + ".e: out of range");
  return e == 1 ? CoefficientRing::prime_field(p) : CoefficientRing::cyclic(p, static_cast<int>(e));
}

inline Json ring_to_json(const CoefficientRing& r) {
  Json j;
  j["p"] = r.p();
  j["e"] = r.e();
  return j;
}

inline Matrix matrix_from_flat(const CoefficientRing& r, std::size_t rows, std::size_t cols, const Json& v, const std::string& where) {
  auto flat = int_list(v, where);
  if (flat.size() != rows * cols)
    throw ValidationError(where + ": expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(flat.size()));
  std::vector<std::int64_t> e(flat.begin(), flat.end());
  return Matrix::from_flat(r, rows, cols, e);
}

inline Json matrix_to_flat(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a.push_back(m(i, j));
  return a;
}

// [[row], [row], ...]
inline Matrix matrix_from_rows(const CoefficientRing& r, const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ValidationError(where + ": expected a non-empty array of rows");
  std::vector<std::vector<std::int64_t>> rows;
  for (auto& row : v) {
    auto x = int_list(row, where);
    rows.emplace_back(x.begin(), x.end());
    if (rows.back().size() != rows.front().size()) throw ValidationError(where + ": ragged rows");
  }
  return Matrix::from_rows(r, rows);
}

inline Json matrix_to_rows(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

// ---- complexes ----------------------------------------------------------

// differentials[k] is d_{lo+k+1} as row-major entries (rows = dims[k]).
inline ChainComplex complex_from_json(const Json& j) {
  expect_schema(j, schema::complex);
  auto r = ring_from_json(need(j, "ring", "complex"), "complex.ring");
  int lo = static_cast<int>(get_int(j, "lo", "complex"));
  auto dims = size_list(need(j, "dims", "complex"), "complex.dims");
  if (dims.empty()) throw ValidationError("complex.dims: need at least one module");
  if (j.contains("hi") && get_int(j, "hi", "complex") != lo + static_cast<long>(dims.size()) - 1)
    throw ValidationError("complex: hi - lo + 1 must equal the number of dims");
  const auto& d = need(j, "differentials", "complex");
  if (!d.is_array() || d.size() + 1 != dims.size())
    throw ValidationError("complex.differentials: expected " + std::to_string(dims.size() - 1) + " matrices");
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k < d.size(); ++k)
    diffs.push_back(matrix_from_flat(r, dims[k], dims[k + 1], d[k], "complex.differentials[" + std::to_string(k) + "]"));
  return ChainComplex(r, lo, dims, diffs);
}

inline Json complex_to_json(const ChainComplex& c) {
  Json j;
  j["schema"] = schema::complex;
  j["ring"] = ring_to_json(c.ring());
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  j["dims"] = c.dims();
  Json d = Json::array();
  for (int n = c.lo() + 1; n <= c.hi(); ++n) d.push_back(matrix_to_flat(c.d(n)));
  j["differentials"] = d;
  return j;
}

// {"schema", "source": complex, "target": complex, "components": [{"degree", "entries"}]}
inline ChainMap chain_map_from_json(const Json& j) {
  expect_schema(j, schema::chain_map);
  auto s = complex_from_json(need(j, "source", "chain_map"));
  auto t = complex_from_json(need(j, "target", "chain_map"));
  if (s.ring() != t.ring()) throw ValidationError("chain_map: source and target rings differ");
  std::map<int, Matrix> comps;
  const auto& cs = need(j, "components", "chain_map");
  if (!cs.is_array()) throw ValidationError("chain_map.components: expected an array");
  for (auto& c : cs) {
    int n = static_cast<int>(get_int(c, "degree", "chain_map.components"));
    if (comps.count(n)) throw ValidationError("chain_map.components: degree " + std::to_string(n) + " given twice");
    comps.emplace(n, matrix_from_flat(s.ring(), t.dim(n), s.dim(n), need(c, "entries", "chain_map.components"),
                                      "chain_map.components[" + std::to_string(n) + "]"));
  }
  return ChainMap(s, t, comps);
}

inline Json homology_to_json(const ChainComplex& c) {
  Json out = Json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    auto h = homology(c, n);
    Json e;
    e["degree"] = n;
    e["dim"] = h.dim();
    e["exponents"] = h.exponents;
    out.push_back(e);
  }
  return out;
}

// ---- simplicial modules -------------------------------------------------

inline simplicial::TruncatedSimplicialModule simplicial_module_from_json(const Json& j) {
  expect_schema(j, schema::simplicial_module);
  const std::string w = "simplicial_module";
  auto r = ring_from_json(need(j, "ring", w), w + ".ring");
  long D = get_int(j, "D", w);
  if (D < 0 || D > 12) throw ValidationError(w + ".D: must be in [0, 12]");
  auto dims = size_list(need(j, "dims", w), w + ".dims");
  if (dims.size() != static_cast<std::size_t>(D) + 1) throw ValidationError(w + ".dims: need D + 1 entries");
  const auto& fj = need(j, "faces", w);
  const auto& sj = need(j, "degeneracies", w);
  if (!fj.is_array() || fj.size() != dims.size()) throw ValidationError(w + ".faces: need one list per level 0..D");
  if (!sj.is_array() || sj.size() != dims.size()) throw ValidationError(w + ".degeneracies: need one list per level 0..D");
  std::vector<std::vector<Matrix>> faces(dims.size()), degens(dims.size());
  for (std::size_t n = 0; n < dims.size(); ++n) {
    const std::size_t want_f = n == 0 ? 0 : n + 1, want_s = n + 1 < dims.size() ? n + 1 : 0;
    if (!fj[n].is_array() || fj[n].size() != want_f)
      throw ValidationError(w + ".faces[" + std::to_string(n) + "]: need " + std::to_string(want_f) + " matrices");
    if (!sj[n].is_array() || sj[n].size() != want_s)
      throw ValidationError(w + ".degeneracies[" + std::to_string(n) + "]: need " + std::to_string(want_s) + " matrices");
    for (std::size_t i = 0; i < want_f; ++i)
      faces[n].push_back(matrix_from_flat(r, dims[n - 1], dims[n], fj[n][i], w + ".faces"));
    for (std::size_t i = 0; i < want_s; ++i)
      degens[n].push_back(matrix_from_flat(r, dims[n + 1], dims[n], sj[n][i], w + ".degeneracies"));
  }
  return simplicial::TruncatedSimplicialModule(r, static_cast<int>(D), dims, faces, degens);
}

inline Json simplicial_module_to_json(const simplicial::TruncatedSimplicialModule& m) {
  Json j;
  j["schema"] = schema::simplicial_module;
  j["ring"] = ring_to_json(m.ring());
  j["D"] = m.level_bound();
  j["dims"] = m.dims();
  Json faces = Json::array(), degens = Json::array();
  for (int n = 0; n <= m.level_bound(); ++n) {
    Json f = Json::array(), s = Json::array();
    if (n > 0)
      for (int i = 0; i <= n; ++i) f.push_back(matrix_to_flat(m.face(n, i)));
    if (n < m.level_bound())
      for (int i = 0; i <= n; ++i) s.push_back(matrix_to_flat(m.degeneracy(n, i)));
    faces.push_back(f);
    degens.push_back(s);
  }
  j["faces"] = faces;
  j["degeneracies"] = degens;
  return j;
}

// ---- graded rings and modules -------------------------------------------

inline koszul::PolyRingPtr poly_ring(const CoefficientRing& k, const std::string& text, int degree_bound) {
  return std::make_shared<const koszul::GradedPolyQuotient>(koszul::GradedPolyQuotient::parse(k, text, degree_bound));
}

inline std::vector<std::vector<koszul::Poly>> poly_rows(const koszul::GradedPolyQuotient& S, const Json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array of rows");
  std::vector<std::vector<koszul::Poly>> out;
  for (auto& row : v) {
    std::vector<koszul::Poly> r;
    for (auto& t : string_list(row, where)) r.push_back(koszul::parse_poly(t, S.names(), S.field()));
    out.push_back(std::move(r));
  }
  return out;
}

// {"schema", "field": {"p"}, "ring": "k[x,y]", "degree_bound", "generators": [degrees],
//  "relations": [[poly per generator], ...]}
inline koszul::GradedModule graded_module_from_json(const Json& j, int degree_bound_override = 0) {
  expect_schema(j, schema::graded_module);
  const std::string w = "graded_module";
  auto k = ring_from_json(need(j, "field", w), w + ".field");
  int W = degree_bound_override > 0 ? degree_bound_override : static_cast<int>(get_int_or(j, "degree_bound", 8, w));
  auto S = poly_ring(k, get_string(j, "ring", w), W);
  auto gens = int_list(need(j, "generators", w), w + ".generators");
  std::vector<int> degs(gens.begin(), gens.end());
  auto rels = j.contains("relations") ? poly_rows(*S, j["relations"], w + ".relations") : std::vector<std::vector<koszul::Poly>>{};
  for (auto& r : rels)
    if (r.size() != degs.size()) throw ValidationError(w + ".relations: each relation needs one entry per generator");
  return koszul::presented(S, degs, rels);
}

// {"schema", "field", "ring", "degree_bound", "q_lo", "twists": [[...]], "differentials": [[[poly]]]}
inline koszul::FreeGradedComplex free_graded_complex_from_json(const Json& j, int degree_bound_override = 0) {
  expect_schema(j, schema::free_graded_complex);
  const std::string w = "free_graded_complex";
  auto k = ring_from_json(need(j, "field", w), w + ".field");
  int W = degree_bound_override > 0 ? degree_bound_override : static_cast<int>(get_int_or(j, "degree_bound", 8, w));
  auto S = poly_ring(k, get_string(j, "ring", w), W);
  const auto& tw = need(j, "twists", w);
  if (!tw.is_array() || tw.empty()) throw ValidationError(w + ".twists: need at least one term");
  std::vector<std::vector<int>> twists;
  for (auto& t : tw) {
    auto x = int_list(t, w + ".twists");
    twists.emplace_back(x.begin(), x.end());
  }
  std::vector<std::vector<std::vector<koszul::Poly>>> diffs;
  const auto& d = need(j, "differentials", w);
  if (!d.is_array() || d.size() + 1 != twists.size()) throw ValidationError(w + ".differentials: need one matrix between consecutive terms");
  for (auto& m : d) diffs.push_back(poly_rows(*S, m, w + ".differentials"));
  return koszul::FreeGradedComplex(S, static_cast<int>(get_int_or(j, "q_lo", 0, w)), twists, diffs);
}

// ---- groups, representations, Selmer data --------------------------------

// {"cyclic": n} | {"dihedral": n} | {"symmetric": n} | {"named": "A4" | "V4"} |
// {"table": [[...]]} | {"permutations": [[...]], "degree": d} | {"product": [g, h]}
inline FiniteGroup group_from_json(const Json& j, const std::string& w = "group") {
  if (!j.is_object()) throw ValidationError(w + ": expected an object");
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "G";
  auto small = [&](const char* key) {
    long n = get_int(j, key, w);
    if (n < 1 || n > 5040) throw ValidationError(w + "." + key + ": out of range");
    return static_cast<std::size_t>(n);
  };
  if (j.contains("cyclic")) return FiniteGroup::cyclic(small("cyclic"));
  if (j.contains("dihedral")) return FiniteGroup::dihedral(small("dihedral"));
  if (j.contains("symmetric")) return FiniteGroup::symmetric(small("symmetric"));
  if (j.contains("named")) {
    auto n = get_string(j, "named", w);
    if (n == "A4") return FiniteGroup::alternating4();
    if (n == "V4") return FiniteGroup::klein_four();
    throw ValidationError(w + ".named: unknown group \"" + n + "\"");
  }
  if (j.contains("product")) {
    const auto& p = j["product"];
    if (!p.is_array() || p.size() != 2) throw ValidationError(w + ".product: need two groups");
    return FiniteGroup::product(group_from_json(p[0], w + ".product[0]"), group_from_json(p[1], w + ".product[1]"));
  }
  if (j.contains("table")) {
    const auto& t = j["table"];
    if (!t.is_array()) throw ValidationError(w + ".table: expected rows");
    std::vector<std::vector<FiniteGroup::Element>> table;
    for (auto& row : t) {
      std::vector<FiniteGroup::Element> r;
      for (auto x : size_list(row, w + ".table")) r.push_back(static_cast<FiniteGroup::Element>(x));
      table.push_back(std::move(r));
    }
    return FiniteGroup(std::move(table), name);
  }
  if (j.contains("permutations")) {
    std::vector<std::vector<std::size_t>> gens;
    if (!j["permutations"].is_array()) throw ValidationError(w + ".permutations: expected a list");
    for (auto& g : j["permutations"]) gens.push_back(size_list(g, w + ".permutations"));
    return FiniteGroup::from_permutations(gens, get_size(j, "degree", w), name);
  }
  throw ValidationError(w + ": need one of cyclic, dihedral, symmetric, named, product, table, permutations");
}

// {"schema", "group", "field": {"p"}, "generators": [elements], "images": [matrix rows]}
// or "matrices": one matrix per element; optional "chi": one scalar per element.
inline galois::Representation representation_from_json(const Json& j) {
  expect_schema(j, schema::representation);
  const std::string w = "representation";
  auto G = galois::share(group_from_json(need(j, "group", w), w + ".group"));
  auto k = ring_from_json(need(j, "field", w), w + ".field");
  if (!k.is_field()) throw ValidationError(w + ".field: representations need a prime field");
  std::optional<std::vector<Scalar>> chi;
  if (j.contains("chi")) {
    auto c = int_list(j["chi"], w + ".chi");
    chi = std::vector<Scalar>();
    for (long x : c) chi->push_back(k.reduce(x));
  }
  if (j.contains("matrices")) {
    std::vector<Matrix> ms;
    if (!j["matrices"].is_array()) throw ValidationError(w + ".matrices: expected a list");
    for (auto& m : j["matrices"]) ms.push_back(matrix_from_rows(k, m, w + ".matrices"));
    return galois::Representation(G, k, ms, chi);
  }
  auto gens = size_list(need(j, "generators", w), w + ".generators");
  const auto& im = need(j, "images", w);
  if (!im.is_array() || im.size() != gens.size()) throw ValidationError(w + ".images: need one matrix per generator");
  std::vector<galois::Element> ge;
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] >= G->order()) throw ValidationError(w + ".generators: element out of range");
    ge.push_back(static_cast<galois::Element>(gens[i]));
    ms.push_back(matrix_from_rows(k, im[i], w + ".images"));
  }
  auto rho = galois::Representation::from_generators(G, k, ge, ms);
  if (chi) return galois::Representation(G, k, rho.matrices(), chi);
  return rho;
}

// {"schema", "representation": {...}, "places": [{"name", "group", "map": [image of each
//  element] | "subgroup": [generators], "condition": "coboundaries" | "cocycles" | [[cocycle]],
//  "contains_coboundaries", "formally_smooth"}]}
inline galois::SelmerDatum selmer_from_json(const Json& j) {
  expect_schema(j, schema::selmer);
  auto rho = representation_from_json(need(j, "representation", "selmer"));
  auto G = rho.group();
  std::vector<galois::LocalPlace> places;
  if (j.contains("places")) {
    if (!j["places"].is_array()) throw ValidationError("selmer.places: expected a list");
    std::size_t idx = 0;
    for (auto& p : j["places"]) {
      const std::string w = "selmer.places[" + std::to_string(idx++) + "]";
      std::string name = p.contains("name") ? get_string(p, "name", w) : "v" + std::to_string(idx);
      std::optional<galois::GroupHom> phi;
      if (p.contains("subgroup")) {
        std::vector<galois::Element> gens;
        for (auto x : size_list(p["subgroup"], w + ".subgroup")) {
          if (x >= G->order()) throw ValidationError(w + ".subgroup: element out of range");
          gens.push_back(static_cast<galois::Element>(x));
        }
        phi = galois::GroupHom::subgroup_inclusion(G, gens);
      } else {
        auto Gv = galois::share(group_from_json(need(p, "group", w), w + ".group"));
        std::vector<galois::Element> images;
        for (auto x : size_list(need(p, "map", w), w + ".map")) images.push_back(static_cast<galois::Element>(x));
        phi = galois::GroupHom(Gv, G, images);
      }
      auto gv = galois::GroupModule::adjoint(rho).restrict(*phi);
      galois::LocalPlace place{name, *phi, {}, true, get_bool_or(p, "formally_smooth", true, w)};
      const auto& c = need(p, "condition", w);
      if (c.is_string()) {
        auto kind = c.get<std::string>();
        if (kind == "coboundaries")
          place.ltilde = galois::unramified_like_condition(gv);
        else if (kind == "cocycles")
          place.ltilde = galois::full_condition(gv);
        else
          throw ValidationError(w + ".condition: expected \"coboundaries\", \"cocycles\" or a list of cocycles");
      } else {
        if (!c.is_array()) throw ValidationError(w + ".condition: expected a string or a list of cocycles");
        for (auto& v : c) {
          auto x = int_list(v, w + ".condition");
          Vector z;
          for (long e : x) z.push_back(rho.field().reduce(e));
          place.ltilde.push_back(std::move(z));
        }
      }
      place.contains_coboundaries = get_bool_or(p, "contains_coboundaries", true, w);
      places.push_back(std::move(place));
    }
  }
  return galois::SelmerDatum(std::move(rho), std::move(places));
}

inline galois::NumerologyInput numerology_from_json(const Json& j) {
  expect_schema(j, schema::numerology);
  const std::string w = "numerology";
  galois::NumerologyInput in;
  in.n = get_int_or(j, "n", 0, w);
  in.r = get_int_or(j, "r", 0, w);
  in.h0_global = get_int_or(j, "h0_global", 0, w);
  in.h0_global_dual = get_int_or(j, "h0_global_dual", 0, w);
  if (j.contains("h0_infinite")) in.h0_infinite = int_list(j["h0_infinite"], w + ".h0_infinite");
  if (j.contains("places")) {
    if (!j["places"].is_array()) throw ValidationError(w + ".places: expected a list");
    for (auto& p : j["places"]) in.places.push_back({get_int(p, "l_dim", w + ".places"), get_int(p, "h0", w + ".places")});
  }
  in.h1_S = get_int_or(j, "h1_S", 0, w);
  in.h1_S_perp = get_int_or(j, "h1_S_perp", 0, w);
  in.l0 = get_int_or(j, "l0", 0, w);
  in.fv_degree = get_int_or(j, "fv_degree", 0, w);
  in.dim_G = get_int_or(j, "dim_G", 0, w);
  in.dim_B = get_int_or(j, "dim_B", 0, w);
  in.r1 = get_int_or(j, "r1", 0, w);
  in.r2 = get_int_or(j, "r2", 0, w);
  in.validate();
  return in;
}

// ---- reports --------------------------------------------------------------

inline Json report(const std::string& command) {
  Json j;
  j["schema"] = schema::report;
  j["command"] = command;
  return j;
}

inline Json to_json(const GradedAlgebra::LawReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["graded_commutative"] = r.graded_commutative;
  j["odd_squares_vanish"] = r.odd_squares_vanish;
  j["unital"] = r.unital;
  j["associative"] = r.associative;
  j["pairs_checked"] = r.pairs_checked;
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  return j;
}

inline Json to_json(const koszul::DepthPd& d) {
  Json j;
  j["nvars"] = d.nvars;
  j["depth"] = d.depth;
  j["pd"] = d.pd;
  j["auslander_buchsbaum"] = d.auslander_buchsbaum;
  j["koszul_dims"] = d.koszul_dims;
  j["betti"] = d.betti;
  j["status"] = d.status;
  return j;
}

inline Json to_json(const koszul::CgLemmaReport& r) {
  Json j;
  j["status"] = r.status;
  j["nvars"] = r.nvars;
  j["ell"] = r.ell;
  j["q_m"] = r.q_m;
  j["q_s"] = r.q_s;
  j["cohomology_dims"] = r.cohomology_dims;
  j["krull_dims"] = r.krull_dims;
  j["dim_h"] = r.dim_h;
  j["bound"] = r.bound;
  j["inequality"] = r.inequality;
  j["equality"] = r.equality;
  j["concentrated"] = r.concentrated;
  j["top_depth"] = r.top_depth;
  j["top_pd"] = r.top_pd;
  j["top_checks"] = r.top_checks;
  j["detail"] = r.detail;
  return j;
}

inline Json to_json(const koszul::CgCorollaryReport& r) {
  Json j;
  j["ok"] = r.ok;
  if (!r.failed_clause.empty()) j["failed_clause"] = r.failed_clause;
  j["lemma"] = to_json(r.lemma);
  j["reduced_dims"] = r.reduced_dims;
  j["tor_dims"] = r.tor_dims;
  j["kunneth_collapse"] = r.kunneth_collapse;
  j["action_ok"] = r.action_ok;
  j["freely_generated"] = r.freely_generated;
  if (!r.free_detail.empty()) j["free_detail"] = r.free_detail;
  j["stabilized"] = r.stabilized;
  return j;
}

inline Json to_json(const koszul::TorOracleReport& r) {
  Json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["agree"] = r.agree;
  j["bar"] = r.bar;
  j["resolution"] = r.resolution;
  j["graded"] = r.graded;
  j["koszul_applicable"] = r.koszul_applicable;
  if (r.koszul_applicable) {
    j["koszul_below_weight"] = r.koszul_below;
    j["koszul_totals"] = r.koszul_totals;
  }
  j["graded_stabilized"] = r.graded_stabilized;
  j["bar_laws"] = to_json(r.bar_laws);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

inline Json to_json(const galois::LesReport& r) {
  Json j;
  j["exact"] = r.exact;
  j["alternating_sum"] = r.alternating_sum;
  Json nodes = Json::array();
  for (auto& n : r.nodes) {
    Json x;
    x["name"] = n.name;
    x["dim"] = n.dim;
    x["exact"] = n.exact;
    nodes.push_back(x);
  }
  j["nodes"] = nodes;
  j["selmer_dims"] = r.selmer_dims;
  j["local_side_matches"] = r.local_side_matches;
  return j;
}

inline Json to_json(const galois::TangentTable& t) {
  Json j;
  j["t"] = t.t;
  j["from_sequence"] = t.from_sequence;
  j["framed_t0"] = t.framed_t0;
  j["sequence_alternating_sum"] = t.sequence_alternating_sum;
  j["matches"] = t.matches;
  Json loc = Json::array();
  for (auto& l : t.local) {
    Json x;
    x["name"] = l.name;
    x["t_minus1"] = l.t_minus1;
    x["t0"] = l.t0;
    x["map_check"] = l.map_check;
    loc.push_back(x);
  }
  j["local"] = loc;
  return j;
}

inline Json to_json(const galois::LiftingCount& c) {
  Json j;
  j["candidates"] = c.candidates;
  j["liftings"] = c.liftings;
  j["dim_Z1"] = c.dims.z1;
  j["dim_B1"] = c.dims.b1;
  j["dim_H1"] = c.dims.h1;
  j["dim_H0"] = c.dims.h0;
  j["p_pow_Z1"] = c.p_pow_z1;
  j["count_matches"] = c.count_matches;
  j["orbits"] = c.orbits;
  Json sizes = Json::object();
  for (auto [size, n] : c.orbit_sizes) sizes[std::to_string(size)] = n;
  j["orbit_sizes"] = sizes;
  j["stabilizer_order"] = c.stabilizer_order;
  j["p_pow_H1"] = c.p_pow_h1;
  j["h1_asserted"] = c.h1_asserted;
  j["orbit_matches"] = c.orbit_matches;
  return j;
}

// Flat "path: value" listing for --format text.
inline void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline std::string render(const Json& j, const std::string& format) {
  if (format == "text") {
    std::ostringstream os;
    render_text(j, "", os);
    return os.str();
  }
  return j.dump(2) + "\n";
}

}  // namespace homotor::io
