#pragma once

// Result serialization. All numeric values are printed with 12 significant
// digits so exact-mode output is byte-stable across runs.

#include <string>
#include <vector>

#include "tpmsim/suites.hpp"

namespace tpmsim {

std::string format_number(double v);

std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);
std::string to_text(const std::vector<ResultRow>& rows);

std::string render(const std::vector<ResultRow>& rows, OutFormat format);

// Write to output.path ("-" means stdout). IO failures carry the path.
void emit(const std::vector<ResultRow>& rows, const OutputSpec& output);

}  // namespace tpmsim
