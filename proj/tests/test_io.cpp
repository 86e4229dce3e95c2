#include "doctest.h"

#include "ellgen/errors.hpp"
#include "ellgen/io.hpp"
#include "oracles.hpp"

using namespace ellgen;

TEST_CASE("Chern data round trip") {
  const ChernData cp2 = cp_chern(2);
  const Json j = chern_to_json(cp2);
  CHECK(j.dump() == R"({"chern":{"1,1":9,"2":3},"dim":2})");
  CHECK(chern_from_json(j) == cp2);
  // string-encoded values and big integers
  const ChernData big = chern_from_json(parse_json_text(R"({"dim":1,"chern":{"1":"123456789012345678901234567890"}})"));
  CHECK(big.at({1}) == Integer("123456789012345678901234567890"));
  CHECK(chern_to_json(big)["chern"]["1"] == "123456789012345678901234567890");
  const ChernData point = chern_from_json(parse_json_text(R"({"dim":0,"chern":{"":1}})"));
  CHECK(point.at({}) == 1);
}

TEST_CASE("malformed Chern data") {
  for (const char* bad : {R"({"dim":2,"chern":{"2,x":3}})", R"({"dim":2,"chern":{"1,2":3}})",
                          R"({"dim":2,"chern":{"3":3}})", R"({"chern":{"2":3}})", R"({"dim":2})",
                          R"({"dim":2,"chern":{"2":1.5}})", R"({"dim":-1,"chern":{}})", R"([1,2])", R"({"dim":)"})
    CHECK_THROWS_AS(chern_from_json(parse_json_text(bad)), ParseError);
}

TEST_CASE("split Chern data round trip and errors") {
  const SplitChernData x = split_product(cp_chern(1), cp_chern(2));
  const Json j = split_chern_to_json(x);
  CHECK(j["dim0"] == 1);
  CHECK(j["dim1"] == 2);
  CHECK(j["chern"]["1|2"] == 6);
  CHECK(j["chern"]["1|1,1"] == 18);
  const SplitChernData back = split_chern_from_json(j);
  CHECK(back.numbers == x.numbers);
  const SplitChernData empty_side =
      split_chern_from_json(parse_json_text(R"({"dim0":1,"dim1":0,"chern":{"1|":2}})"));
  CHECK(empty_side.numbers.at({Partition{1}, Partition{}}) == 2);
  for (const char* bad : {R"({"dim0":1,"dim1":1,"chern":{"1":4}})", R"({"dim0":1,"dim1":1,"chern":{"1|1|1":4}})",
                          R"({"dim0":1,"dim1":1,"chern":{"2|":4}})", R"({"dim0":1,"chern":{"1|":4}})"})
    CHECK_THROWS_AS(split_chern_from_json(parse_json_text(bad)), ParseError);
}

TEST_CASE("series round trips") {
  std::mt19937_64 rng(99);
  const auto& f = CycloField::get(5);
  QSeries s(f, 6);
  for (std::size_t j = 0; j < 6; ++j) s.set(j, oracle::random_cyclo(f, rng));
  CHECK(qseries_from_json(f, qseries_to_json(s)) == s);
  CHECK(qseries_from_json(f, Json{{"series", qseries_to_json(s)}}) == s);
  const PQSeries p = PQSeries::outer(s, s.truncated(3));
  CHECK(pqseries_from_json(f, pqseries_to_json(p)) == p);
  CHECK(pqseries_from_json(f, Json{{"series", pqseries_to_json(p)}, {"level", 5}}) == p);

  CHECK_THROWS_AS(qseries_from_json(f, parse_json_text("[]")), ParseError);
  CHECK_THROWS_AS(qseries_from_json(f, parse_json_text(R"([["1/2","0/1"]])")), ParseError);
  CHECK_THROWS_AS(qseries_from_json(f, parse_json_text(R"([[1,0,0,0]])")), ParseError);
  CHECK_THROWS_AS(qseries_from_json(f, parse_json_text(R"({"other":[]})")), ParseError);
  const Json ragged = Json::array({qseries_to_json(s), qseries_to_json(s.truncated(2))});
  CHECK_THROWS_AS(pqseries_from_json(f, ragged), ParseError);
}

TEST_CASE("basis dump and certificate hash are deterministic") {
  const ModFormBasis b = weight_basis(5, 2, 6);
  const Json j = basis_to_json(b);
  CHECK(j["elements"].size() == 3);
  CHECK(j["certificate"]["rank"] == 3);
  CHECK(j["sturm"] == 5);
  const std::string h = basis_hash(b);
  CHECK(h.size() == 64);
  CHECK(h == basis_hash(weight_basis(5, 2, 6)));
  CHECK(h != basis_hash(weight_basis(5, 2, 7)));
  CHECK(h != basis_hash(weight_basis(5, 3, 7)));
}

TEST_CASE("reduction reports") {
  const int level = 5;
  const std::size_t prec = 7;
  const auto& f = CycloField::get(level);
  const UqClass trivial = reduce_Uq(genus(cp_chern(2), level, prec), level, 4, prec);
  const Json r = uq_report(trivial);
  CHECK(r["verdict"] == "trivial");
  CHECK(r["sturm"] == 5);
  CHECK(r["prec"] == prec);
  CHECK(r["residual"].size() == prec);
  CHECK(r["modular_combination"].size() == 4);
  CHECK(r["basis_certificate_hash"] == basis_hash(weight_basis(level, 2, prec)));
  const UqClass half = reduce_Uq(QSeries::monomial(Cyclo(f, make_rational(1, 2)), 6, prec), level, 4, prec);
  CHECK(uq_report(half)["verdict"] == "nontrivial");

  const PQSeries g = genus_bivariate(split_product(cp_chern(1), cp_chern(1)), level, 6, 6);
  const Json w = wt_report(reduce_Wtilde(g, level, 4));
  CHECK(w["verdict"] == "trivial");
  CHECK(w["mixed"].size() == 6);
  CHECK(w["p_series"]["verdict"] == "trivial");
  CHECK(w.dump() == wt_report(reduce_Wtilde(g, level, 4)).dump());
}
