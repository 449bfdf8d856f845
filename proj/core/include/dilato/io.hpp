#pragma once

#include <string>
#include <vector>

#include "dilato/pairs.hpp"
#include "dilato/verify.hpp"

namespace dilato {

/// pair-v1 instance codec: {"schema": "pair-v1", "dim": n, "t1": [...],
/// "t2": [...]} with matrices as row-major nested arrays and every complex
/// scalar as a two-element [re, im] array. Serialization is byte-stable for
/// identical inputs.
std::string pair_to_json_text(const CommutingPair& pair);
CommutingPair pair_from_json_text(const std::string& text, double tol = 1e-10);

void save_pair(const CommutingPair& pair, const std::string& path);
CommutingPair load_pair(const std::string& path, double tol = 1e-10);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Report serialization shared by the CLI and the acceptance suite.
std::string reports_to_json(const std::vector<SuiteReport>& reports);
std::string reports_to_text(const std::vector<SuiteReport>& reports);

/// Matrix codec used inside report payloads.
std::string matrix_to_json_text(const CMat& m);

}  // namespace dilato
