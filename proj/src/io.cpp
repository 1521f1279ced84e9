#include "nilsol/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nilsol {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string escape_string(const std::string& s) {
  return json(s).dump();  // quotes included
}

// Translates a byte offset from nlohmann's parse_error into line/column.
std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

int require_positive_int(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw SchemaError(std::string("field '") + key + "' must be a positive integer");
  return v.get<int>();
}

}  // namespace

std::string serialize_tuple(const StructureTuple& tuple, const std::string& provenance) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"q\": " << tuple.q() << ",\n";
  out << "  \"p\": " << tuple.p() << ",\n";
  if (!tuple.label().empty()) out << "  \"label\": " << escape_string(tuple.label()) << ",\n";
  if (!provenance.empty()) out << "  \"provenance\": " << escape_string(provenance) << ",\n";
  out << "  \"matrices\": [\n";
  for (int k = 0; k < tuple.p(); ++k) {
    const Eigen::MatrixXd& m = tuple.matrix(k);
    out << "    [";
    for (int i = 0; i < tuple.q(); ++i)
      for (int j = 0; j < tuple.q(); ++j) {
        if (i != 0 || j != 0) out << ", ";
        out << format_double(m(i, j));
      }
    out << "]" << (k + 1 < tuple.p() ? "," : "") << "\n";
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

StructureTuple parse_tuple(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << "tuple document: malformed JSON at line " << line << ", column " << column;
    throw ParseError(os.str(), line, column);
  }
  if (!doc.is_object()) throw SchemaError("tuple document must be a JSON object");

  const int q = require_positive_int(doc, "q");
  const int p = require_positive_int(doc, "p");
  if (q > kMaxQ) {
    std::ostringstream os;
    os << "q = " << q << " exceeds the supported envelope q <= " << kMaxQ;
    throw SchemaError(os.str());
  }
  const int max_p = kMaxQ * (kMaxQ - 1) / 2;  // dim so(kMaxQ)
  if (p > max_p) {
    std::ostringstream os;
    os << "p = " << p << " exceeds the supported envelope p <= " << max_p;
    throw SchemaError(os.str());
  }
  if (!doc.contains("matrices") || !doc.at("matrices").is_array())
    throw SchemaError("field 'matrices' must be an array");
  const json& mats = doc.at("matrices");
  if (static_cast<int>(mats.size()) != p) {
    std::ostringstream os;
    os << "expected p = " << p << " matrices, got " << mats.size();
    throw SchemaError(os.str());
  }

  std::vector<Eigen::MatrixXd> matrices;
  matrices.reserve(mats.size());
  for (int k = 0; k < p; ++k) {
    const json& entry = mats.at(static_cast<std::size_t>(k));
    if (!entry.is_array() || static_cast<int>(entry.size()) != q * q) {
      std::ostringstream os;
      os << "matrix " << k << ": expected " << q * q << " numbers (row-major " << q << "x" << q
         << "), got " << (entry.is_array() ? std::to_string(entry.size()) : "a non-array");
      throw SchemaError(os.str());
    }
    Eigen::MatrixXd m(q, q);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        const json& v = entry.at(static_cast<std::size_t>(i * q + j));
        if (!v.is_number()) {
          std::ostringstream os;
          os << "matrix " << k << ": entry (" << i << "," << j << ") is not a number";
          throw SchemaError(os.str());
        }
        m(i, j) = v.get<double>();
      }
    matrices.push_back(std::move(m));
  }

  std::string label;
  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) throw SchemaError("field 'label' must be a string");
    label = doc.at("label").get<std::string>();
  }
  return StructureTuple(std::move(matrices), std::move(label));
}

StructureTuple load_tuple(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_tuple(buffer.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line, e.column);
  }
}

void save_tuple(const StructureTuple& tuple, const std::string& path,
                const std::string& provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << serialize_tuple(tuple, provenance);
  if (!out) throw Error("failed to write '" + path + "'");
}

}  // namespace nilsol
