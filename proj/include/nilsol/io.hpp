#pragma once

#include <string>

#include "nilsol/algebra.hpp"

namespace nilsol {

/// Malformed document syntax; position is 1-based.
struct ParseError : Error {
  ParseError(const std::string& what, int line_, int column_)
      : Error(what), line(line_), column(column_) {}
  int line;
  int column;
};

/// On-disk tuple document: a JSON object with fields
///   q        positive integer
///   p        positive integer
///   matrices array of p arrays of q*q numbers, row-major
///   label    optional string
///   provenance optional string (free-form, written by the CLI)
/// Serialization uses 17 significant decimal digits, so a round trip
/// reproduces every entry bit-exactly.
std::string serialize_tuple(const StructureTuple& tuple,
                            const std::string& provenance = {});

StructureTuple parse_tuple(const std::string& text);

StructureTuple load_tuple(const std::string& path);

void save_tuple(const StructureTuple& tuple, const std::string& path,
                const std::string& provenance = {});

}  // namespace nilsol
