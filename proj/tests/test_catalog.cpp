#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redtensor/catalog.hpp"

using namespace rtp;

TEST_CASE("builtin names resolve and unknown names throw") {
  for (const std::string& n : builtin_names()) {
    CatalogEntry e = builtin(n);
    CHECK(e.name == n);
    CHECK(e.cat.rank() >= 1);
  }
  CHECK_THROWS_AS(builtin("Ising2"), UnknownName);
  CHECK_THROWS_AS(builtin("nonexistent"), UnknownName);
}

TEST_CASE("builtin RepZ2 shape") {
  CatalogEntry e = builtin("RepZ2");
  CHECK(e.cat.rank() == 2);
  CHECK(e.cat.symmetric);
  for (auto& [k, v] : e.cat.Fsym) CHECK(v.at(0, 0) == Cyc(1));
  for (auto& [k, v] : e.cat.Rsym) CHECK(v.at(0, 0) == Cyc(1));
}

TEST_CASE("builtin Ising1 data matches the catalog contract") {
  CatalogEntry e = builtin("Ising1");
  const FusionCategory& c = e.cat;
  Label sg = c.label_index("sigma");
  Cyc inv_sqrt2 = (Cyc::root_of_unity(8) - Cyc::root_of_unity(8).pow(3)) * Cyc(Rat(1, 2));
  CHECK(c.Fsym.at({sg, sg, sg, sg, 0, 0}).at(0, 0) == inv_sqrt2);
  CHECK(c.Fsym.at({sg, sg, sg, sg, 1, 1}).at(0, 0) == -inv_sqrt2);
  CHECK(c.Rsym.at({sg, sg, 0}).at(0, 0) == Cyc::root_of_unity(16).inv());
  REQUIRE(e.inclusions.size() == 1);
  CHECK(e.inclusions[0].a_name == "sVec");
  CHECK(e.inclusions[0].obj_map.at("f") == std::vector<std::string>{"psi"});
}

TEST_CASE("category file round-trip is byte-identical after one pass") {
  for (const std::string& n : {"Ising1", "ToricCode", "RepS3", "DoubleSemion", "Vec"}) {
    CAPTURE(n);
    CatalogEntry e = builtin(n);
    std::string text = serialize_category_file(e);
    CatalogEntry parsed = parse_category_file(text);
    CHECK(parsed.name == e.name);
    CHECK(parsed.cat.labels == e.cat.labels);
    CHECK(parsed.cat.N == e.cat.N);
    CHECK(parsed.cat.braided == e.cat.braided);
    CHECK(parsed.cat.symmetric == e.cat.symmetric);
    std::string again = serialize_category_file(parsed);
    CHECK(again == text);
  }
}

TEST_CASE("parser reports syntax errors with positions") {
  CHECK_THROWS_AS(parse_category_file("category X\nsimples a b\nfusion a b\n"), FileSyntaxError);
  try {
    parse_category_file("category X\nsimples a a\n");
    CHECK(false);
  } catch (const FileSyntaxError& err) {
    CHECK(err.line == 2);
  }
  // bad scalar expression
  CHECK_THROWS_AS(parse_category_file("category X\nsimples a\nunit a\ndual a=a\n"
                                      "fusion a a -> a\ndim a = E(8\n"),
                  FileSyntaxError);
}

TEST_CASE("parser reports missing table entries as semantic errors") {
  CatalogEntry e = builtin("Ising1");
  std::string text = serialize_category_file(e);
  // drop one F line
  auto pos = text.find("\nF ");
  auto end = text.find('\n', pos + 1);
  std::string broken = text.substr(0, pos) + text.substr(end);
  CHECK_THROWS_AS(parse_category_file(broken), SemanticError);

  // drop one R line: braiding table becomes incomplete
  auto rpos = text.find("\nR ");
  auto rend = text.find('\n', rpos + 1);
  std::string rbroken = text.substr(0, rpos) + text.substr(rend);
  CHECK_THROWS_AS(parse_category_file(rbroken), SemanticError);
}

TEST_CASE("scalar expression in files parses to canonical values") {
  std::string text =
      "category T\n"
      "simples 1 x\n"
      "unit 1\n"
      "dual 1=1 x=x\n"
      "fusion 1 1 -> 1\nfusion 1 x -> x\nfusion x 1 -> x\nfusion x x -> 1\n"
      "dim 1 = 1\ndim x = 1\n"
      "twist 1 = 1\ntwist x = E(16)^-1 * E(16)\n"
      "F x x x x : 1->1 = 2/4 + 1/2\n"
      "R x x : 1 = 1\n";
  CatalogEntry e = parse_category_file(text);
  CHECK(e.cat.twist[1] == Cyc(1));
  CHECK(e.cat.Fsym.at({1, 1, 1, 1, 0, 0}).at(0, 0) == Cyc(1));
  CHECK(e.cat.symmetric);
}

TEST_CASE("serializer output parses for every builtin (fuzz the canonical path)") {
  for (const std::string& n : builtin_names()) {
    CAPTURE(n);
    CatalogEntry e = builtin(n);
    std::string text = serialize_category_file(e);
    CatalogEntry parsed = parse_category_file(text);
    CHECK(serialize_category_file(parsed) == text);
  }
}
