#include "doctest.h"
#include "ghom/errors.hpp"
#include "ghom/io.hpp"
#include "ghom/matui.hpp"
#include "support/corpus.hpp"

using namespace ghom;

TEST_CASE("groupoid kinds parse") {
  auto P = parse_groupoid(R"j({"kind": "pair", "n": 3})j");
  CHECK(P.size() == 9);
  CHECK(parse_groupoid(R"j({"kind": "cyclic_group", "m": 4})j").size() == 4);
  auto V = parse_groupoid(R"j({"kind": "group_table", "elements": ["e","a"],
                              "mul": [["e","e","e"],["e","a","a"],["a","e","a"],["a","a","e"]]})j");
  CHECK(V.size() == 2);
  CHECK(V.unit_count() == 1);
  auto A = parse_groupoid(R"j({"kind": "action", "group": {"kind": "cyclic_group", "m": 2},
                              "points": ["x","y"], "act": [["g0","x","x"],["g0","y","y"],["g1","x","y"],["g1","y","x"]]})j");
  CHECK(A.size() == 4);
  CHECK(A.unit_count() == 2);
  auto U = parse_groupoid(R"j({"kind": "disjoint_union", "parts": [{"kind": "pair", "n": 2}, {"kind": "cyclic_group", "m": 3}]})j");
  CHECK(U.size() == 7);
  auto R = parse_groupoid(R"j({"kind": "restriction", "groupoid": {"kind": "pair", "n": 3}, "units": ["(1,1)","(3,3)"]})j");
  CHECK(R.size() == 4);
}

TEST_CASE("groupoid parse errors name the field") {
  auto message = [](const std::string& text) {
    try {
      parse_groupoid(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"j({"kind": "pair", "n": 3)j").find("invalid JSON") != std::string::npos);
  CHECK(message(R"j({"kind": "pair", "n": 3, "extra": 1})j").find("\"extra\"") != std::string::npos);
  CHECK(message(R"j({"kind": "pair"})j").find("\"n\"") != std::string::npos);
  CHECK(message(R"j({"kind": "pair", "n": 0})j").find("groupoid.n") != std::string::npos);
  CHECK(message(R"j({"kind": "torus"})j").find("torus") != std::string::npos);
  CHECK(message(R"j({"kind": "disjoint_union", "parts": [{"kind": "pair", "n": 1, "m": 2}]})j").find("parts[0]") !=
        std::string::npos);
  CHECK(message(R"j({"kind": "action", "group": {"kind": "pair", "n": 2}, "points": [], "act": []})j").find("group") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_groupoid(R"j({"kind": "table", "units": ["x"], "arrows": [], "compose": []})j"), MalformedSpec);
}

TEST_CASE("table serialization round-trips the corpus") {
  for (const auto& [name, G] : testing::groupoid_corpus()) {
    INFO(name);
    auto H = parse_groupoid(groupoid_to_json(G));
    REQUIRE(H.size() == G.size());
    for (Arrow g = 0; g < G.size(); ++g) {
      Arrow h = H.arrow(G.id(g));
      CHECK(H.id(H.src(h)) == G.id(G.src(g)));
      CHECK(H.id(H.inv(h)) == G.id(G.inv(g)));
      for (Arrow k : G.range_fiber(G.src(g))) CHECK(H.id(H.mul(h, H.arrow(G.id(k)))) == G.id(G.mul(g, k)));
    }
    if (G.size() <= 18) CHECK(homology_of_groupoid(H, 1) == homology_of_groupoid(G, 1));
  }
}

TEST_CASE("colouring and scale files") {
  auto P = pair_groupoid(2);
  auto C = parse_colouring(P, R"j({"parts": [["(1,1)","(1,2)","(2,1)","(2,2)"], ["(1,1)","(2,2)"]]})j");
  CHECK(C.colour_count() == 2);
  CHECK(parse_colouring(P, colouring_to_json(C)).parts() == C.parts());
  try {
    parse_colouring(P, R"j({"parts": [["(1,1)","(2,2)"], ["(1,2)"]]})j");
    FAIL("expected MalformedSpec");
  } catch (const MalformedSpec& e) {
    CHECK(std::string(e.what()).find("parts[1]") != std::string::npos);
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_colouring(P, R"j({"parts": [["(1,1)"]]})j"), MalformedSpec);
  CHECK_THROWS_AS(parse_colouring(P, R"j({"parts": [["(9,9)"]]})j"), ParseError);
  CHECK_THROWS_AS(parse_colouring(P, R"j({"parts": [], "x": 1})j"), ParseError);

  CHECK(parse_scale(P, R"j("all")j") == ScaleSet::all(P));
  CHECK(parse_scale(P, R"j("units")j") == ScaleSet::units(P));
  CHECK(parse_scale(P, R"j(["(1,2)"])j").size() == 1);
  CHECK_THROWS_AS(parse_scale(P, R"j("most")j"), ParseError);
}

TEST_CASE("metric files") {
  auto X = parse_metric(R"j({"points": ["a","b"], "dist": [[0, "3/6"], ["1/2", 0]]})j");
  CHECK(X.dist(0, 1) == mpq_class(1, 2));
  CHECK_THROWS_AS(parse_metric(R"j({"points": ["a","b"], "dist": [[0, 0.5], [0.5, 0]]})j"), ParseError);
  CHECK_THROWS_AS(parse_metric(R"j({"points": ["a","b"], "dist": [[0, "1/0"], ["1/0", 0]]})j"), ParseError);
  CHECK_THROWS_AS(parse_metric(R"j({"points": ["a","b"], "dist": [[0, "x"], ["x", 0]]})j"), ParseError);
  CHECK_THROWS_AS(parse_metric(R"j({"points": ["a","b"], "dist": [[0, 1], [2, 0]]})j"), MalformedSpec);
}

TEST_CASE("matrix files") {
  auto M = parse_matrix("2 3\n1 -2 3\n\n4 5 123456789012345678901234567890\n");
  CHECK(M.rows() == 2);
  CHECK(M.at(0, 1) == Integer(-2));
  CHECK(M.at(1, 2) == Integer::parse("123456789012345678901234567890"));
  CHECK(parse_matrix("0 0\n").rows() == 0);
  CHECK_THROWS_AS(parse_matrix(""), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 2\n1 2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 1\nx\n"), ParseError);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
