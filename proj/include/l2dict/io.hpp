#pragma once

#include <string>
#include <vector>

#include "l2dict/control.hpp"
#include "l2dict/dictionary.hpp"
#include "l2dict/matrix.hpp"

namespace l2dict {

enum class FileFormat { csv, json };

FileFormat parse_format(const std::string& name);  // "csv" | "json"

/// Matrices travel either as header-less CSV (one row per line, comma
/// separated, LF endings) or as JSON {"dim": n, "entries": [[...]]}
/// (rectangular ones carry "rows"/"cols" instead of "dim"). Readers detect
/// the format from the content; numbers are written with 17 significant
/// digits so round-trips are exact.
Matrix read_matrix_text(const std::string& text);
Matrix read_matrix_file(const std::string& path);
std::string write_matrix(const Matrix& m, FileFormat format);

/// Synthesis artifact: dictionary columns, realized Gram matrix, optimal
/// value and the representation pseudo-inverse.
struct SynthesisArtifact {
  int dim;
  int count;
  double optimal_value;
  Matrix dictionary;  // dim x count
  Matrix gram;        // dim x dim
  Matrix pinv;        // count x dim
};

SynthesisArtifact artifact_from_solution(const OptimalSolution& solution);
std::string write_artifact(const SynthesisArtifact& artifact, FileFormat format);
SynthesisArtifact read_artifact_text(const std::string& text);
SynthesisArtifact read_artifact_file(const std::string& path);

/// Candidate systems: JSON array of {"A": [[...]], "B": [[...]], "id": "..."}.
std::vector<LtiSystem> read_systems_text(const std::string& text);
std::vector<LtiSystem> read_systems_file(const std::string& path);
std::string write_ranking(const std::vector<RankedDesign>& ranking, FileFormat format);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// 17-significant-digit decimal, the serialization used everywhere.
std::string format_double(double x);

}  // namespace l2dict
