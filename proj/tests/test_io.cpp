#include <catch2/catch_amalgamated.hpp>

#include "sparsegb/io.hpp"

using namespace sgb;

namespace {

const char* kSparseDoc = R"({
  "field": {"type": "prime", "p": 65521},
  "model": "sparse",
  "sparse": {
    "ambient_dim": 2,
    "polytopes": [[[0,0],[1,0],[0,1],[1,1]]],
    "polynomials": [
      {"terms": [{"point": [1,0], "coeff": "3"}, {"point": [0,1], "coeff": "-1"}]}
    ]
  }
})";

const char* kMhDoc = R"({
  "field": {"type": "rational"},
  "model": "multihomogeneous",
  "multihom": {
    "blocks": [1, 1],
    "polynomials": [
      {"multidegree": [1,1], "terms": [
        {"exponents": [[1,0],[0,1]], "coeff": "1/2"},
        {"exponents": [[0,1],[1,0]], "coeff": "-3"}
      ]}
    ]
  }
})";

}  // namespace

TEST_CASE("documents round-trip through parse and serialize") {
  for (const char* text : {kSparseDoc, kMhDoc}) {
    auto doc = io::parse_document(text);
    auto j1 = io::document_to_json(doc);
    auto doc2 = io::parse_document(j1.dump());
    auto j2 = io::document_to_json(doc2);
    CHECK(j1 == j2);
  }
}

TEST_CASE("sparse document builds typed polynomials") {
  auto doc = io::parse_document(kSparseDoc);
  REQUIRE(doc.model == io::Document::Model::Sparse);
  PrimeField field(doc.field.p);
  auto ctx = io::build_context(doc.sparse);
  GradedSparseOrder ord(ctx, BaseOrder::grevlex());
  auto polys = io::to_sparse_polys(field, ctx, ord, doc.sparse);
  REQUIRE(polys.size() == 1);
  CHECK(polys[0].terms.size() == 2);
  CHECK(polys[0].lm().s == Point{1, 0});
}

TEST_CASE("multihom document builds typed polynomials over the rationals") {
  auto doc = io::parse_document(kMhDoc);
  RationalField field;
  MultihomRing ring(doc.multihom.blocks);
  XOrder ord(ring, BaseOrderKind::Grevlex);
  auto sys = io::to_multihom_polys(field, ring, ord, doc.multihom);
  REQUIRE(sys.size() == 1);
  CHECK(sys[0].terms.size() == 2);
  CHECK(xops::is_multihomogeneous(sys[0]));
  CHECK(field.to_string(sys[0].terms.back().second) == "1/2");
}

TEST_CASE("each input defect maps to its own error code") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const io::ParseError& e) {
      return e.code();
    }
    return io::Errc::Ok;
  };

  CHECK(code_of([] { io::parse_document("{ nope"); }) == io::Errc::MalformedJson);
  CHECK(code_of([] {
          io::parse_document(R"({"field":{"type":"prime","p":15},"model":"sparse",
                                 "sparse":{"ambient_dim":1,"polytopes":[],"polynomials":[]}})");
        }) == io::Errc::BadFieldSpec);
  CHECK(code_of([] {
          io::parse_document(R"({"field":{"type":"prime","p":7},"model":"orbit"})");
        }) == io::Errc::BadSchema);

  // term point outside the semigroup, named in the message
  auto doc = io::parse_document(R"({
    "field": {"type": "prime", "p": 7},
    "model": "sparse",
    "sparse": {"ambient_dim": 1, "polytopes": [[[0],[2]]],
               "polynomials": [{"terms": [{"point": [1], "coeff": "1"}]}]}
  })");
  PrimeField field(7);
  auto ctx = io::build_context(doc.sparse);
  GradedSparseOrder ord(ctx, BaseOrder::grevlex());
  try {
    io::to_sparse_polys(field, ctx, ord, doc.sparse);
    FAIL("expected PointOutsideSupport");
  } catch (const io::ParseError& e) {
    CHECK(e.code() == io::Errc::PointOutsideSupport);
    CHECK(std::string(e.what()).find("(1)") != std::string::npos);
  }

  // multidegree mismatch, offending term named
  auto mh = io::parse_document(R"({
    "field": {"type": "prime", "p": 7},
    "model": "multihomogeneous",
    "multihom": {"blocks": [1],
      "polynomials": [{"multidegree": [2],
        "terms": [{"exponents": [[1,0]], "coeff": "1"}]}]}
  })");
  MultihomRing ring(mh.multihom.blocks);
  XOrder xord(ring, BaseOrderKind::Grevlex);
  try {
    io::to_multihom_polys(field, ring, xord, mh.multihom);
    FAIL("expected NotMultihomogeneous");
  } catch (const io::ParseError& e) {
    CHECK(e.code() == io::Errc::NotMultihomogeneous);
    CHECK(std::string(e.what()).find("term 0") != std::string::npos);
  }

  // non-pointed polytopes
  auto bad = io::parse_document(R"({
    "field": {"type": "prime", "p": 7},
    "model": "sparse",
    "sparse": {"ambient_dim": 1, "polytopes": [[[0],[1],[-1]]], "polynomials": []}
  })");
  CHECK(code_of([&] { io::build_context(bad.sparse); }) == io::Errc::NotPointed);
}

TEST_CASE("matrix export uses sparse triplets") {
  PrimeField field(65521);
  SemigroupContext ctx({{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}, 2, 16);
  GradedSparseOrder ord(ctx, BaseOrder::grevlex());
  std::vector<std::pair<SgMono, PrimeField::Elem>> raw{{SgMono{{1, 0}, 1}, 2},
                                                       {SgMono{{0, 1}, 1}, 3}};
  auto f = polyops::make(field, ctx, ord, SgAmbient::Homogeneous, std::move(raw));
  auto M = build_matrix(field, ord, {{RowLabel<SgMono>{0, SgMono{{0, 0}, 0}, false}, f}});
  auto j = io::matrix_to_json(field, M, [](const SgMono& m) { return io::sgmono_to_json(m); });
  CHECK(j["rows"] == 1);
  CHECK(j["cols"] == M.col_count());
  CHECK(j["entries"].size() == 2);
  CHECK(j["entries"][0].size() == 3);
  CHECK(j["labels"][0]["generator"] == 0);
  CHECK(j["columns"].size() == M.col_count());
}
