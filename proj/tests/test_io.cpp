#include <gtest/gtest.h>

#include <random>

#include "homotor/io.hpp"
#include "homotor/selftest.hpp"

using namespace homotor;
using io::Json;

namespace {

const auto F5 = CoefficientRing::prime_field(5);

Json rep_json(const std::string& images) {
  return Json::parse(R"({"schema": "homotor.representation/1", "group": {"cyclic": 2}, "field": {"p": 3},
                         "generators": [1], "images": )" + images + "}");
}

}  // namespace

TEST(IoComplex, RoundTripIsBitExact) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    auto c = selftest::detail::random_nonneg_complex(rng, F5, 4, 3);
    Json j = io::complex_to_json(c);
    Json again = io::complex_to_json(io::complex_from_json(j));
    EXPECT_EQ(j.dump(), again.dump());
  }
  auto z9 = ChainComplex(CoefficientRing::cyclic(3, 2), -1, {2, 1}, {Matrix::from_rows(CoefficientRing::cyclic(3, 2), {{3}, {0}})});
  EXPECT_EQ(io::complex_to_json(io::complex_from_json(io::complex_to_json(z9))).dump(), io::complex_to_json(z9).dump());
}

TEST(IoComplex, RejectsMalformed) {
  Json ok = Json::parse(R"({"schema": "homotor.complex/1", "ring": {"p": 3}, "lo": 0, "dims": [1, 1], "differentials": [[1]]})");
  EXPECT_NO_THROW(io::complex_from_json(ok));
  Json bad = ok;
  bad["schema"] = "homotor.complex/2";
  EXPECT_THROW(io::complex_from_json(bad), ValidationError);
  bad = ok;
  bad.erase("lo");
  EXPECT_THROW(io::complex_from_json(bad), ValidationError);
  bad = ok;
  bad["differentials"] = Json::parse("[[1, 2]]");
  EXPECT_THROW(io::complex_from_json(bad), ValidationError);
  bad = ok;
  bad["ring"] = Json::parse(R"({"p": 4})");
  EXPECT_THROW(io::complex_from_json(bad), ValidationError);
  bad = ok;
  bad["dims"] = Json::parse("[1, -1]");
  EXPECT_THROW(io::complex_from_json(bad), ValidationError);
  // d o d != 0
  Json dd = Json::parse(R"({"schema": "homotor.complex/1", "ring": {"p": 3}, "lo": 0, "dims": [1, 1, 1],
                           "differentials": [[1], [1]]})");
  EXPECT_THROW(io::complex_from_json(dd), ValidationError);
}

TEST(IoSimplicial, DoldKanDocumentRoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    auto m = simplicial::dold_kan(selftest::detail::random_nonneg_complex(rng, F5, 3, 2), 3);
    Json j = io::simplicial_module_to_json(m);
    EXPECT_EQ(io::simplicial_module_to_json(io::simplicial_module_from_json(j)).dump(), j.dump());
  }
}

TEST(IoSimplicial, RejectsBrokenIdentities) {
  auto m = simplicial::dold_kan(ChainComplex(F5, 0, {1, 1}, {Matrix::from_rows(F5, {{1}})}), 2);
  Json j = io::simplicial_module_to_json(m);
  j["faces"][1][0] = Json::parse("[2, 0]");
  EXPECT_THROW(io::simplicial_module_from_json(j), ValidationError);
}

TEST(IoGalois, Representations) {
  auto rho = io::representation_from_json(rep_json("[[[1, 0], [0, 2]]]"));
  EXPECT_EQ(rho.n(), 2u);
  // not of order 2
  EXPECT_THROW(io::representation_from_json(rep_json("[[[1, 1], [0, 1]]]")), ValidationError);
  EXPECT_THROW(io::representation_from_json(rep_json("[[[1, 0], [0]]]")), ValidationError);
  Json table = Json::parse(R"({"table": [[0, 1], [1, 1]]})");
  EXPECT_THROW(io::group_from_json(table), ValidationError);
  Json perms = Json::parse(R"({"permutations": [[1, 2, 0], [1, 0, 2]], "degree": 3})");
  EXPECT_EQ(io::group_from_json(perms).order(), 6u);
}

TEST(IoGalois, SelmerRejectsConditionWithoutCoboundaries) {
  Json j = Json::parse(R"({"schema": "homotor.selmer/1",
    "representation": {"schema": "homotor.representation/1", "group": {"cyclic": 3}, "field": {"p": 7},
                       "generators": [1], "images": [[[2, 0], [0, 4]]]},
    "places": [{"name": "v", "subgroup": [1], "condition": []}]})");
  EXPECT_THROW(io::selmer_from_json(j), ValidationError);
  j["places"][0]["contains_coboundaries"] = false;
  EXPECT_THROW(galois::selmer_complex(io::selmer_from_json(j)), ValidationError);
  j["places"][0]["condition"] = "coboundaries";
  EXPECT_NO_THROW(galois::selmer_complex(io::selmer_from_json(j)));
}

TEST(IoNumerology, Validation) {
  Json j = Json::parse(R"({"schema": "homotor.numerology/1", "n": 2, "r": -1})");
  EXPECT_THROW(io::numerology_from_json(j), ValidationError);
  j["r"] = 1;
  EXPECT_NO_THROW(io::numerology_from_json(j));
}

TEST(IoRender, TextIsFlatAndStable) {
  Json j = io::report("x");
  j["dims"] = {1, 2, 1};
  j["nested"]["a"] = true;
  EXPECT_EQ(io::render(j, "text"), "schema: homotor.report/1\ncommand: x\ndims: [1,2,1]\nnested.a: true\n");
  EXPECT_EQ(io::render(j, "json"), io::render(j, "json"));
}
