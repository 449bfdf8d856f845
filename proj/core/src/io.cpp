#include "dilato/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dilato {

namespace {

using nlohmann::json;

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const json& rows, Index dim) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != dim)
    throw Error(ErrorKind::IoError, "matrix must have 'dim' rows");
  CMat m(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != dim)
      throw Error(ErrorKind::IoError, "matrix must be square with 'dim' columns");
    for (Index j = 0; j < dim; ++j) {
      const json& entry = row[static_cast<size_t>(j)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        throw Error(ErrorKind::IoError, "complex scalars must be [re, im] arrays");
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

}  // namespace

std::string pair_to_json_text(const CommutingPair& pair) {
  json doc;
  doc["schema"] = "pair-v1";
  doc["dim"] = pair.dim();
  doc["t1"] = matrix_to_json(pair.t1);
  doc["t2"] = matrix_to_json(pair.t2);
  return doc.dump(1) + "\n";
}

CommutingPair pair_from_json_text(const std::string& text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::IoError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != "pair-v1")
    throw Error(ErrorKind::IoError, "expected an object with schema 'pair-v1'");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw Error(ErrorKind::IoError, "missing integer field 'dim'");
  const Index dim = doc["dim"].get<Index>();
  if (dim < 1) throw Error(ErrorKind::IoError, "'dim' must be >= 1");
  if (!doc.contains("t1") || !doc.contains("t2"))
    throw Error(ErrorKind::IoError, "missing 't1' or 't2'");
  const CMat t1 = matrix_from_json(doc["t1"], dim);
  const CMat t2 = matrix_from_json(doc["t2"], dim);
  return validate_pair(t1, t2, tol);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "short write to '" + path + "'");
}

void save_pair(const CommutingPair& pair, const std::string& path) {
  write_text_file(path, pair_to_json_text(pair));
}

CommutingPair load_pair(const std::string& path, double tol) {
  return pair_from_json_text(read_text_file(path), tol);
}

std::string matrix_to_json_text(const CMat& m) { return matrix_to_json(m).dump(); }

namespace {

json check_to_json(const CheckLine& line) {
  json c;
  c["name"] = line.name;
  c["value"] = line.value;
  c["bound"] = line.bound;
  c["relation"] = line.require_at_most ? "<=" : ">=";
  c["pass"] = line.pass;
  if (!line.note.empty()) c["note"] = line.note;
  return c;
}

}  // namespace

std::string reports_to_json(const std::vector<SuiteReport>& reports) {
  json doc;
  doc["tool"] = "dilato";
  bool all_pass = true;
  json suites = json::array();
  for (const SuiteReport& report : reports) {
    json s;
    s["suite"] = report.suite;
    s["instances"] = report.instances;
    s["skipped"] = report.skipped;
    if (!report.skip_reasons.empty()) s["skip_reasons"] = report.skip_reasons;
    json checks = json::array();
    for (const CheckLine& line : report.checks) checks.push_back(check_to_json(line));
    s["checks"] = std::move(checks);
    s["pass"] = report.passed();
    all_pass = all_pass && report.passed();
    suites.push_back(std::move(s));
  }
  doc["suites"] = std::move(suites);
  doc["pass"] = all_pass;
  return doc.dump(1) + "\n";
}

std::string reports_to_text(const std::vector<SuiteReport>& reports) {
  std::ostringstream out;
  for (const SuiteReport& report : reports) {
    out << "suite " << report.suite << " (" << report.instances << " instances";
    if (report.skipped > 0) out << ", " << report.skipped << " skipped";
    out << ")\n";
    for (const CheckLine& line : report.checks) {
      out << "  [" << (line.pass ? "PASS" : "FAIL") << "] " << line.name << " = "
          << std::scientific << line.value << (line.require_at_most ? " <= " : " >= ")
          << line.bound;
      if (!line.note.empty()) out << "  (" << line.note << ")";
      out << "\n";
    }
    for (const std::string& reason : report.skip_reasons)
      out << "  [SKIP] " << reason << "\n";
  }
  return out.str();
}

}  // namespace dilato
