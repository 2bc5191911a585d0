#pragma once

// Input document parsing (frozen schema v1) and JSON/CSV serialization.
// Every class of input defect maps to a distinct error code so the CLI can
// exit with it.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsegb/field.hpp"
#include "sparsegb/macaulay.hpp"
#include "sparsegb/multihom.hpp"
#include "sparsegb/orders.hpp"
#include "sparsegb/poly.hpp"
#include "sparsegb/semigroup.hpp"

namespace sgb::io {

using nlohmann::json;

enum class Errc : int {
  Ok = 0,
  Generic = 1,
  MalformedJson = 2,
  BadFieldSpec = 3,
  PointOutsideSupport = 4,
  NotMultihomogeneous = 5,
  BadSchema = 6,
  NotPointed = 7,
  Runtime = 8,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  Errc code_;
};

struct FieldSpec {
  enum class Kind { Prime, Rational } kind = Kind::Prime;
  std::uint64_t p = 65521;
};

struct SparseTermDoc {
  Point point;
  std::string coeff;
};
struct SparsePolyDoc {
  std::vector<SparseTermDoc> terms;
};
struct SparseProblem {
  int ambient_dim = 0;
  std::vector<std::vector<Point>> polytopes;
  std::vector<SparsePolyDoc> polynomials;
};

struct MhTermDoc {
  std::vector<Point> exponents;  // one vector of length n_i+1 per block
  std::string coeff;
};
struct MhPolyDoc {
  std::vector<Int> multidegree;
  std::vector<MhTermDoc> terms;
};
struct MultihomProblem {
  std::vector<Int> blocks;
  std::vector<MhPolyDoc> polynomials;
};

struct Document {
  enum class Model { Sparse, Multihom } model = Model::Sparse;
  FieldSpec field;
  SparseProblem sparse;
  MultihomProblem multihom;
};

namespace detail {

inline Point json_to_point(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(Errc::BadSchema, "expected integer array at " + where);
  Point p;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(Errc::BadSchema, "expected integer at " + where);
    p.push_back(v.get<Int>());
  }
  return p;
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(Errc::MalformedJson, std::string("malformed JSON: ") + e.what());
  }
  Document doc;

  if (!j.contains("field") || !j["field"].is_object())
    throw ParseError(Errc::BadFieldSpec, "missing field specification");
  const json& jf = j["field"];
  std::string ftype = jf.value("type", "");
  if (ftype == "prime") {
    doc.field.kind = FieldSpec::Kind::Prime;
    if (!jf.contains("p") || !jf["p"].is_number_unsigned())
      throw ParseError(Errc::BadFieldSpec, "prime field needs an unsigned p");
    doc.field.p = jf["p"].get<std::uint64_t>();
    if (!PrimeField::is_prime(doc.field.p))
      throw ParseError(Errc::BadFieldSpec, "p = " + std::to_string(doc.field.p) + " is not prime");
  } else if (ftype == "rational") {
    doc.field.kind = FieldSpec::Kind::Rational;
  } else {
    throw ParseError(Errc::BadFieldSpec, "field.type must be 'prime' or 'rational'");
  }

  std::string model = j.value("model", "");
  if (model == "sparse") {
    doc.model = Document::Model::Sparse;
    if (!j.contains("sparse") || !j["sparse"].is_object())
      throw ParseError(Errc::BadSchema, "model 'sparse' needs a 'sparse' section");
    const json& js = j["sparse"];
    if (!js.contains("ambient_dim") || !js["ambient_dim"].is_number_integer())
      throw ParseError(Errc::BadSchema, "sparse.ambient_dim missing");
    doc.sparse.ambient_dim = js["ambient_dim"].get<int>();
    if (!js.contains("polytopes") || !js["polytopes"].is_array())
      throw ParseError(Errc::BadSchema, "sparse.polytopes missing");
    int pi = 0;
    for (const auto& jp : js["polytopes"]) {
      std::vector<Point> poly;
      int qi = 0;
      for (const auto& jq : jp) {
        Point p = detail::json_to_point(jq, "sparse.polytopes[" + std::to_string(pi) + "][" +
                                                std::to_string(qi) + "]");
        if (static_cast<int>(p.size()) != doc.sparse.ambient_dim)
          throw ParseError(Errc::BadSchema, "polytope point " + point_str(p) +
                                                " has wrong dimension");
        poly.push_back(std::move(p));
        ++qi;
      }
      doc.sparse.polytopes.push_back(std::move(poly));
      ++pi;
    }
    if (!js.contains("polynomials") || !js["polynomials"].is_array())
      throw ParseError(Errc::BadSchema, "sparse.polynomials missing");
    int fi = 0;
    for (const auto& jpoly : js["polynomials"]) {
      SparsePolyDoc pd;
      if (!jpoly.contains("terms") || !jpoly["terms"].is_array())
        throw ParseError(Errc::BadSchema, "polynomial " + std::to_string(fi) + " needs terms");
      int ti = 0;
      for (const auto& jt : jpoly["terms"]) {
        SparseTermDoc td;
        td.point = detail::json_to_point(jt.value("point", json::array()),
                                         "polynomials[" + std::to_string(fi) + "].terms[" +
                                             std::to_string(ti) + "].point");
        if (static_cast<int>(td.point.size()) != doc.sparse.ambient_dim)
          throw ParseError(Errc::BadSchema, "term point " + point_str(td.point) +
                                                " has wrong dimension");
        if (!jt.contains("coeff") || !jt["coeff"].is_string())
          throw ParseError(Errc::BadSchema, "term coeff must be a decimal string");
        td.coeff = jt["coeff"].get<std::string>();
        pd.terms.push_back(std::move(td));
        ++ti;
      }
      doc.sparse.polynomials.push_back(std::move(pd));
      ++fi;
    }
  } else if (model == "multihomogeneous") {
    doc.model = Document::Model::Multihom;
    if (!j.contains("multihom") || !j["multihom"].is_object())
      throw ParseError(Errc::BadSchema, "model 'multihomogeneous' needs a 'multihom' section");
    const json& jm = j["multihom"];
    if (!jm.contains("blocks") || !jm["blocks"].is_array())
      throw ParseError(Errc::BadSchema, "multihom.blocks missing");
    for (const auto& v : jm["blocks"]) doc.multihom.blocks.push_back(v.get<Int>());
    if (!jm.contains("polynomials") || !jm["polynomials"].is_array())
      throw ParseError(Errc::BadSchema, "multihom.polynomials missing");
    int fi = 0;
    for (const auto& jpoly : jm["polynomials"]) {
      MhPolyDoc pd;
      pd.multidegree = detail::json_to_point(jpoly.value("multidegree", json::array()),
                                             "multihom.polynomials[" + std::to_string(fi) +
                                                 "].multidegree");
      int ti = 0;
      for (const auto& jt : jpoly.value("terms", json::array())) {
        MhTermDoc td;
        if (!jt.contains("exponents") || !jt["exponents"].is_array())
          throw ParseError(Errc::BadSchema, "multihom term needs per-block exponents");
        int bi = 0;
        for (const auto& jb : jt["exponents"]) {
          Point e = detail::json_to_point(jb, "multihom.polynomials[" + std::to_string(fi) +
                                                  "].terms[" + std::to_string(ti) + "].exponents[" +
                                                  std::to_string(bi) + "]");
          if (bi >= static_cast<int>(doc.multihom.blocks.size()) ||
              static_cast<int>(e.size()) != doc.multihom.blocks[bi] + 1)
            throw ParseError(Errc::BadSchema,
                             "multihom exponent block " + std::to_string(bi) + " in polynomial " +
                                 std::to_string(fi) + " has wrong length");
          td.exponents.push_back(std::move(e));
          ++bi;
        }
        if (bi != static_cast<int>(doc.multihom.blocks.size()))
          throw ParseError(Errc::BadSchema, "multihom term in polynomial " + std::to_string(fi) +
                                                " misses exponent blocks");
        if (!jt.contains("coeff") || !jt["coeff"].is_string())
          throw ParseError(Errc::BadSchema, "term coeff must be a decimal string");
        td.coeff = jt["coeff"].get<std::string>();
        pd.terms.push_back(std::move(td));
        ++ti;
      }
      doc.multihom.polynomials.push_back(std::move(pd));
      ++fi;
    }
  } else {
    throw ParseError(Errc::BadSchema, "model must be 'sparse' or 'multihomogeneous'");
  }
  return doc;
}

inline Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(Errc::Generic, "cannot open input file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline json point_to_json(const Point& p) {
  json a = json::array();
  for (Int v : p) a.push_back(v);
  return a;
}

inline json document_to_json(const Document& d) {
  json j;
  if (d.field.kind == FieldSpec::Kind::Prime)
    j["field"] = {{"type", "prime"}, {"p", d.field.p}};
  else
    j["field"] = {{"type", "rational"}};
  if (d.model == Document::Model::Sparse) {
    j["model"] = "sparse";
    json js;
    js["ambient_dim"] = d.sparse.ambient_dim;
    js["polytopes"] = json::array();
    for (const auto& poly : d.sparse.polytopes) {
      json jp = json::array();
      for (const auto& p : poly) jp.push_back(point_to_json(p));
      js["polytopes"].push_back(jp);
    }
    js["polynomials"] = json::array();
    for (const auto& poly : d.sparse.polynomials) {
      json jt = json::array();
      for (const auto& t : poly.terms)
        jt.push_back({{"point", point_to_json(t.point)}, {"coeff", t.coeff}});
      js["polynomials"].push_back({{"terms", jt}});
    }
    j["sparse"] = js;
  } else {
    j["model"] = "multihomogeneous";
    json jm;
    jm["blocks"] = point_to_json(d.multihom.blocks);
    jm["polynomials"] = json::array();
    for (const auto& poly : d.multihom.polynomials) {
      json jt = json::array();
      for (const auto& t : poly.terms) {
        json je = json::array();
        for (const auto& e : t.exponents) je.push_back(point_to_json(e));
        jt.push_back({{"exponents", je}, {"coeff", t.coeff}});
      }
      jm["polynomials"].push_back({{"multidegree", point_to_json(poly.multidegree)}, {"terms", jt}});
    }
    j["multihom"] = jm;
  }
  return j;
}

/// Build the semigroup context for a sparse problem; pointedness failures
/// carry their own error code.
inline SemigroupContext build_context(const SparseProblem& sp, int degree_cap = 64) {
  try {
    return SemigroupContext(sp.polytopes, sp.ambient_dim, degree_cap);
  } catch (const SemigroupError& e) {
    std::string what = e.what();
    if (what.find("not pointed") != std::string::npos) throw ParseError(Errc::NotPointed, what);
    throw ParseError(Errc::BadSchema, what);
  }
}

/// Typed polynomials from a sparse problem, with membership of every term
/// point checked against the semigroup.
template <FieldType F>
std::vector<SparsePoly<F>> to_sparse_polys(const F& field, const SemigroupContext& ctx,
                                           const GradedSparseOrder& ord, const SparseProblem& sp) {
  std::vector<SparsePoly<F>> out;
  for (std::size_t i = 0; i < sp.polynomials.size(); ++i) {
    std::vector<std::pair<SgMono, typename F::Elem>> raw;
    for (const auto& t : sp.polynomials[i].terms) {
      if (!ctx.contains(t.point))
        throw ParseError(Errc::PointOutsideSupport,
                         "polynomial " + std::to_string(i) + ": point " + point_str(t.point) +
                             " is not in the semigroup generated by the polytopes");
      typename F::Elem c;
      try {
        c = field.from_string(t.coeff);
      } catch (const std::exception& e) {
        throw ParseError(Errc::BadSchema, e.what());
      }
      raw.push_back({SgMono{t.point, 0}, c});
    }
    out.push_back(polyops::make(field, ctx, ord, SgAmbient::Affine, std::move(raw)));
  }
  return out;
}

/// Typed polynomials from a multihom problem; every term must match the
/// declared multidegree.
template <FieldType F>
std::vector<XPoly<F>> to_multihom_polys(const F& field, const MultihomRing& ring,
                                        const XOrder& ord, const MultihomProblem& mp) {
  std::vector<XPoly<F>> out;
  for (std::size_t i = 0; i < mp.polynomials.size(); ++i) {
    const auto& pd = mp.polynomials[i];
    if (static_cast<int>(pd.multidegree.size()) != ring.r())
      throw ParseError(Errc::BadSchema, "polynomial " + std::to_string(i) +
                                            ": multidegree has wrong length");
    std::vector<std::pair<Point, typename F::Elem>> raw;
    for (std::size_t ti = 0; ti < pd.terms.size(); ++ti) {
      const auto& t = pd.terms[ti];
      Point m(ring.nvars(), 0);
      for (int b = 0; b < ring.r(); ++b) {
        Int sum = 0;
        for (int j = 0; j <= ring.blocks[b]; ++j) {
          Int e = t.exponents[b][j];
          if (e < 0)
            throw ParseError(Errc::BadSchema, "negative exponent in polynomial " +
                                                  std::to_string(i));
          m[ring.var_slot(b, j)] = e;
          sum += e;
        }
        if (sum != pd.multidegree[b])
          throw ParseError(Errc::NotMultihomogeneous,
                           "polynomial " + std::to_string(i) + " term " + std::to_string(ti) +
                               ": block " + std::to_string(b) + " degree " + std::to_string(sum) +
                               " != declared " + std::to_string(pd.multidegree[b]));
      }
      typename F::Elem c;
      try {
        c = field.from_string(t.coeff);
      } catch (const std::exception& e) {
        throw ParseError(Errc::BadSchema, e.what());
      }
      raw.push_back({std::move(m), c});
    }
    out.push_back(xops::make(field, ring, ord, std::move(raw)));
  }
  return out;
}

inline json sgmono_to_json(const SgMono& m) {
  return json{{"point", point_to_json(m.s)}, {"degree", m.d}};
}

template <FieldType F>
json sparse_poly_to_json(const F& field, const SparsePoly<F>& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms) {
    json t = {{"point", point_to_json(m.s)}, {"coeff", field.to_string(c)}};
    if (p.ambient == SgAmbient::Homogeneous) t["degree"] = m.d;
    terms.push_back(t);
  }
  return json{{"terms", terms}};
}

/// Sparse-triplet export shared by both matrix families.
template <FieldType F, class Mono, class MonoToJson>
json matrix_to_json(const F& field, const MacaulayMatrix<F, Mono>& M, MonoToJson mono_to_json) {
  json j;
  j["rows"] = M.rows.size();
  j["cols"] = M.columns.size();
  json entries = json::array();
  for (std::size_t i = 0; i < M.rows.size(); ++i)
    for (const auto& [c, v] : M.rows[i])
      entries.push_back(json::array({i, c, field.to_string(v)}));
  j["entries"] = entries;
  json labels = json::array();
  for (const auto& lab : M.labels) {
    if (lab.reduced) labels.push_back(json{{"kind", "reduced"}});
    else labels.push_back(json{{"generator", lab.gen}, {"multiplier", mono_to_json(lab.multiplier)}});
  }
  j["labels"] = labels;
  json cols = json::array();
  for (const auto& m : M.columns) cols.push_back(mono_to_json(m));
  j["columns"] = cols;
  if (M.rank >= 0) j["rank"] = M.rank;
  if (M.zero_rows >= 0) j["zero_rows"] = M.zero_rows;
  return j;
}

inline json xmono_to_json(const MultihomRing& ring, const Point& m) {
  json blocks = json::array();
  for (int b = 0; b < ring.r(); ++b) {
    json e = json::array();
    for (int j = 0; j <= ring.blocks[b]; ++j) e.push_back(m[ring.var_slot(b, j)]);
    blocks.push_back(e);
  }
  return json{{"exponents", blocks}};
}

}  // namespace sgb::io
