#pragma once

/**
 * Document formats shared by the CLI and tests: the variety-spec document
 * (JSON with fields p, e, kind, ambient_dim, equations, potential), dense
 * complex matrices as (re, im) pairs, and a small result-table type that
 * serializes to CSV or a JSON document with identical fields.
 */

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "igz/cat.hpp"
#include "igz/variety.hpp"

namespace igz {

using Json = nlohmann::json;

/// Full-precision, locale-independent double formatting (byte-stable).
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
      throw ValidationError("ResultTable: row width mismatch");
    rows.push_back(std::move(row));
  }

  std::string to_csv() const {
    std::ostringstream os;
    for (size_t i = 0; i < columns.size(); ++i)
      os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (auto& row : rows)
      for (size_t i = 0; i < row.size(); ++i)
        os << row[i] << (i + 1 < row.size() ? "," : "\n");
    return os.str();
  }

  std::string to_doc() const {
    Json doc;
    doc["columns"] = columns;
    Json rws = Json::array();
    for (auto& row : rows) {
      Json r = Json::object();
      for (size_t i = 0; i < row.size(); ++i) r[columns[i]] = row[i];
      rws.push_back(std::move(r));
    }
    doc["rows"] = std::move(rws);
    return doc.dump(2) + "\n";
  }
};

struct VarietyDocument {
  VarietySpec X;
  Potential f;
};

/// Builtins by name: "spec"/"point", "A<k>", "P<k>".
inline VarietySpec builtin_variety(const std::string& name, const FieldCtx* ctx) {
  if (name == "spec" || name == "point") return VarietySpec::point(ctx);
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'P')) {
    int k = std::stoi(name.substr(1));
    return name[0] == 'A' ? VarietySpec::affine_space(ctx, k)
                          : VarietySpec::proj_space(ctx, k);
  }
  throw ValidationError("unknown builtin variety '" + name + "'");
}

inline VarietyDocument parse_variety_doc(const Json& doc) {
  if (!doc.contains("p")) throw ValidationError("variety document: missing 'p'");
  uint32_t p = doc.at("p").get<uint32_t>();
  uint32_t e = doc.value("e", 1u);
  const FieldCtx* ctx = ff_make(p, e);
  std::string kind = doc.value("kind", std::string("affine"));

  VarietyDocument out{VarietySpec::point(ctx), MPoly(ctx, 0)};
  if (kind == "builtin") {
    out.X = builtin_variety(doc.at("name").get<std::string>(), ctx);
  } else {
    int n = doc.at("ambient_dim").get<int>();
    int ncoords = (kind == "projective") ? n + 1 : n;
    std::vector<MPoly> eqs;
    if (doc.contains("equations"))
      for (auto& eq : doc.at("equations"))
        eqs.push_back(MPoly::parse(ctx, ncoords, eq.get<std::string>()));
    if (kind == "affine")
      out.X = eqs.empty() ? VarietySpec::affine_space(ctx, n)
                          : VarietySpec::affine(ctx, n, std::move(eqs));
    else if (kind == "projective")
      out.X = VarietySpec::projective(ctx, n, std::move(eqs));
    else
      throw ValidationError("variety document: unknown kind '" + kind + "'");
  }
  out.f = MPoly(ctx, out.X.ncoords());
  if (doc.contains("potential")) {
    out.f = MPoly::parse(ctx, out.X.ncoords(),
                         doc.at("potential").get<std::string>());
    check_potential(out.X, out.f);
  }
  return out;
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read input file '" + path + "'");
  Json doc;
  in >> doc;
  return doc;
}

inline CMat parse_cmatrix(const Json& m) {
  size_t rows = m.size();
  CMat out(rows, rows);
  for (size_t i = 0; i < rows; ++i) {
    if (m[i].size() != rows)
      throw ValidationError("matrix document: not square");
    for (size_t j = 0; j < rows; ++j) {
      auto& cell = m[i][j];
      if (cell.is_array())
        out(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
      else
        out(i, j) = Complex(cell.get<double>(), 0.0);
    }
  }
  return out;
}

}  // namespace igz
