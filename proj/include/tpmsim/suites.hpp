#pragma once

// Configuration-driven experiment suites. The preset grids (table2, table4,
// fig2) are fully parameterized; `custom` takes a complete ProtocolConfig
// from the flat key-value config surface.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tpmsim/montecarlo.hpp"
#include "tpmsim/protocol.hpp"

namespace tpmsim {

enum class SuiteKind { table2, table4, fig2, custom };
enum class RunMode { exact, montecarlo, both };
enum class OutFormat { csv, json, text };

struct OutputSpec {
    OutFormat format = OutFormat::csv;
    std::string path = "-";  // "-" writes to stdout
};

struct SuiteSpec {
    SuiteKind suite = SuiteKind::table2;
    RunMode mode = RunMode::exact;
    ShotPlan plan;
    std::optional<double> phi1_override;
    std::optional<ProtocolConfig> custom_config;
    OutputSpec output;
    bool check = false;
    unsigned threads = 1;
};

struct ResultRow {
    std::string suite;
    std::string coord1;  // alpha or betaE
    std::string coord2;  // t in units of tau, or Hf label
    std::string quantity;
    std::optional<double> exact;
    std::optional<double> mc_mean;
    std::optional<double> mc_rms;
    std::string flags;
};

struct SuiteCell {
    std::string coord1;
    std::string coord2;
    ProtocolConfig config;
    std::vector<std::string> quantities;
};

// Grid construction. phi1 overrides the evolution phase in every cell; the
// table4 default phase is chosen per axis so the drive commutes with the
// final measurement.
std::vector<SuiteCell> suite_cells(const SuiteSpec& spec);

std::vector<ResultRow> run_suite(const SuiteSpec& spec);

// Band checks against the embedded reference values; returns failure
// messages (empty means pass).
std::vector<std::string> check_suite(const SuiteSpec& spec, const std::vector<ResultRow>& rows);

// Resolve a SuiteSpec from flat key-value maps; flag entries override file
// entries. Unknown keys raise invalid_argument listing them; montecarlo
// modes require an explicit seed.
SuiteSpec resolve_suite_spec(const std::map<std::string, std::string>& file_kv,
                             const std::map<std::string, std::string>& flag_kv);

// Parse a flat `key = value` config file (# comments, blank lines allowed).
std::map<std::string, std::string> parse_config_file(const std::string& path);

std::string suite_name(SuiteKind kind);

}  // namespace tpmsim
