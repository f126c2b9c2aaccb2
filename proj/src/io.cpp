#include "l2dict/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace l2dict {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "malformed JSON");
  return j;
}

Matrix matrix_from_entries(const json& entries) {
  if (!entries.is_array() || entries.empty()) fail(errc::parse_error, "matrix entries must be a non-empty array");
  const int rows = static_cast<int>(entries.size());
  if (!entries[0].is_array()) fail(errc::parse_error, "matrix entries must be an array of rows");
  const int cols = static_cast<int>(entries[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = entries[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) fail(errc::parse_error, "ragged matrix rows");
    for (int j = 0; j < cols; ++j) {
      if (!row[j].is_number()) fail(errc::parse_error, "matrix entries must be numbers");
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries")) fail(errc::parse_error, "expected an object with \"entries\"");
  Matrix m = matrix_from_entries(j["entries"]);
  if (j.contains("dim")) {
    const int dim = j["dim"].get<int>();
    if (m.rows() != dim || m.cols() != dim) fail(errc::parse_error, "\"dim\" does not match the entries");
  }
  if (j.contains("rows") && j["rows"].get<int>() != m.rows()) fail(errc::parse_error, "\"rows\" mismatch");
  if (j.contains("cols") && j["cols"].get<int>() != m.cols()) fail(errc::parse_error, "\"cols\" mismatch");
  return m;
}

Matrix matrix_from_csv(const std::string& text) {
  std::vector<Vec> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Vec row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) fail(errc::parse_error, "trailing characters in CSV cell '" + cell + "'");
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        fail(errc::parse_error, "bad CSV number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) fail(errc::parse_error, "ragged CSV rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(errc::parse_error, "empty matrix file");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

void append_rows(std::string& out, const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
}

void append_json_entries(std::string& out, const Matrix& m, const std::string& indent) {
  out += "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "\n" + indent + "  [";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_double(m(i, j));
    }
    out += "]";
  }
  out += "\n" + indent + "]";
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

FileFormat parse_format(const std::string& name) {
  if (name == "csv") return FileFormat::csv;
  if (name == "json") return FileFormat::json;
  fail(errc::parse_error, "unknown format '" + name + "' (expected csv or json)");
}

Matrix read_matrix_text(const std::string& text) {
  return looks_like_json(text) ? matrix_from_json(parse_json(text)) : matrix_from_csv(text);
}

Matrix read_matrix_file(const std::string& path) { return read_matrix_text(read_text_file(path)); }

std::string write_matrix(const Matrix& m, FileFormat format) {
  std::string out;
  if (format == FileFormat::csv) {
    append_rows(out, m);
    return out;
  }
  if (m.rows() == m.cols()) {
    out += "{\n  \"dim\": " + std::to_string(m.rows()) + ",\n  \"entries\": ";
  } else {
    out += "{\n  \"rows\": " + std::to_string(m.rows()) + ",\n  \"cols\": " + std::to_string(m.cols()) +
           ",\n  \"entries\": ";
  }
  append_json_entries(out, m, "  ");
  out += "\n}\n";
  return out;
}

SynthesisArtifact artifact_from_solution(const OptimalSolution& solution) {
  return {solution.dictionary.vectors.rows(), solution.dictionary.size,     solution.optimal_value,
          solution.dictionary.vectors,       solution.gram.entries(),      solution.scheme.pinv_matrix};
}

std::string write_artifact(const SynthesisArtifact& artifact, FileFormat format) {
  std::string out;
  if (format == FileFormat::csv) {
    out += "# optimal_value\n" + format_double(artifact.optimal_value) + "\n";
    out += "# dictionary\n";
    append_rows(out, artifact.dictionary);
    out += "# gram\n";
    append_rows(out, artifact.gram);
    out += "# pinv\n";
    append_rows(out, artifact.pinv);
    return out;
  }
  out += "{\n  \"count\": " + std::to_string(artifact.count) + ",\n  \"dictionary\": ";
  append_json_entries(out, artifact.dictionary, "  ");
  out += ",\n  \"dim\": " + std::to_string(artifact.dim) + ",\n  \"gram\": ";
  append_json_entries(out, artifact.gram, "  ");
  out += ",\n  \"optimal_value\": " + format_double(artifact.optimal_value) + ",\n  \"pinv\": ";
  append_json_entries(out, artifact.pinv, "  ");
  out += "\n}\n";
  return out;
}

SynthesisArtifact read_artifact_text(const std::string& text) {
  SynthesisArtifact artifact;
  if (looks_like_json(text)) {
    json j = parse_json(text);
    for (const char* key : {"count", "dictionary", "dim", "gram", "optimal_value", "pinv"})
      if (!j.contains(key)) fail(errc::parse_error, std::string("artifact is missing \"") + key + "\"");
    artifact.dim = j["dim"].get<int>();
    artifact.count = j["count"].get<int>();
    artifact.optimal_value = j["optimal_value"].get<double>();
    artifact.dictionary = matrix_from_entries(j["dictionary"]);
    artifact.gram = matrix_from_entries(j["gram"]);
    artifact.pinv = matrix_from_entries(j["pinv"]);
  } else {
    std::istringstream in(text);
    std::string line, section, body;
    std::vector<std::pair<std::string, std::string>> sections;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.rfind("# ", 0) == 0) {
        if (!section.empty()) sections.emplace_back(section, body);
        section = line.substr(2);
        body.clear();
      } else if (!line.empty()) {
        body += line + "\n";
      }
    }
    if (!section.empty()) sections.emplace_back(section, body);
    auto find = [&](const std::string& name) -> const std::string& {
      for (const auto& [key, value] : sections)
        if (key == name) return value;
      fail(errc::parse_error, "artifact is missing section '" + name + "'");
    };
    artifact.optimal_value = matrix_from_csv(find("optimal_value"))(0, 0);
    artifact.dictionary = matrix_from_csv(find("dictionary"));
    artifact.gram = matrix_from_csv(find("gram"));
    artifact.pinv = matrix_from_csv(find("pinv"));
    artifact.dim = artifact.dictionary.rows();
    artifact.count = artifact.dictionary.cols();
  }
  if (artifact.dictionary.rows() != artifact.dim || artifact.dictionary.cols() != artifact.count ||
      artifact.gram.rows() != artifact.dim || artifact.gram.cols() != artifact.dim ||
      artifact.pinv.rows() != artifact.count || artifact.pinv.cols() != artifact.dim)
    fail(errc::parse_error, "artifact blocks have inconsistent shapes");
  return artifact;
}

SynthesisArtifact read_artifact_file(const std::string& path) { return read_artifact_text(read_text_file(path)); }

std::vector<LtiSystem> read_systems_text(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_array() || j.empty()) fail(errc::parse_error, "expected a non-empty array of systems");
  std::vector<LtiSystem> systems;
  systems.reserve(j.size());
  for (const json& item : j) {
    if (!item.is_object() || !item.contains("A") || !item.contains("B"))
      fail(errc::parse_error, "each system needs \"A\" and \"B\"");
    std::string id = item.contains("id") ? item["id"].get<std::string>() : std::to_string(systems.size());
    try {
      systems.emplace_back(matrix_from_entries(item["A"]), matrix_from_entries(item["B"]), std::move(id));
    } catch (const Error& e) {
      if (e.code() == errc::parse_error) throw;
      fail(errc::parse_error, std::string("bad system definition: ") + e.what());
    }
  }
  return systems;
}

std::vector<LtiSystem> read_systems_file(const std::string& path) { return read_systems_text(read_text_file(path)); }

std::string write_ranking(const std::vector<RankedDesign>& ranking, FileFormat format) {
  std::string out;
  if (format == FileFormat::csv) {
    for (const RankedDesign& r : ranking) {
      out += r.id + ",";
      if (r.cost) out += format_double(*r.cost);
      out += r.controllable ? ",true\n" : ",false\n";
    }
    return out;
  }
  out += "[";
  for (size_t i = 0; i < ranking.size(); ++i) {
    const RankedDesign& r = ranking[i];
    if (i) out += ",";
    out += "\n  {\"controllable\": ";
    out += r.controllable ? "true" : "false";
    out += ", \"cost\": ";
    out += r.cost ? format_double(*r.cost) : "null";
    out += ", \"id\": \"" + r.id + "\", \"index\": " + std::to_string(r.input_index) + "}";
  }
  out += "\n]\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::parse_error, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(errc::parse_error, "write failed for '" + path + "'");
}

}  // namespace l2dict
