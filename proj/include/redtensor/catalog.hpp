// Built-in verified category data, the category file format, and its
// parser/serializer.
//
// File format (line oriented, whitespace separated, # comments):
//   category <name>
//   simples <l1> <l2> ...
//   unit <l>
//   dual <l>=<l> ...
//   fusion <a> <b> -> <c>[+<c>...]      (repetition encodes multiplicity)
//   dim <a> = <scalar-expr>
//   twist <a> = <scalar-expr>
//   F <a> <b> <c> <d> : <e>-><f> = <scalar-expr>
//   R <a> <b> : <c> = <scalar-expr>
//   include <A-name> : <a>-><objectexpr> ...

#pragma once

#include <map>
#include <string>
#include <vector>

#include "redtensor/fusion.hpp"

namespace rtp {

struct IncludeSpec {
  std::string a_name;                                        // catalog name of A
  std::map<std::string, std::vector<std::string>> obj_map;   // A-label -> sum of C-labels
};

struct CatalogEntry {
  std::string name;
  FusionCategory cat;
  std::vector<IncludeSpec> inclusions;
};

struct UnknownName : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FileSyntaxError : std::runtime_error {
  std::size_t line, col;
  FileSyntaxError(std::size_t l, std::size_t c, const std::string& m)
      : std::runtime_error("syntax error at line " + std::to_string(l) + ", column " +
                           std::to_string(c) + ": " + m),
        line(l),
        col(c) {}
};
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// builtin names: Vec, sVec, RepZ2, RepZ3, RepS3, Semion, Ising1, Ising3, ...,
// Ising15 (odd nu mod 16), ToricCode, DoubleSemion, ZsVec
CatalogEntry builtin(const std::string& name);
std::vector<std::string> builtin_names();

CatalogEntry parse_category_file(const std::string& text);
std::string serialize_category_file(const CatalogEntry& entry);

}  // namespace rtp
