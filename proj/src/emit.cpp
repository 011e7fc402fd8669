#include "tpmsim/emit.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace tpmsim {

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

const char* kHeader = "suite,alpha_or_betaE,t_or_hf,quantity,exact,mc_mean,mc_rms,flags";

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = kHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += r.suite + ',' + r.coord1 + ',' + r.coord2 + ',' + r.quantity + ',' + opt_number(r.exact) +
               ',' + opt_number(r.mc_mean) + ',' + opt_number(r.mc_rms) + ',' + r.flags + '\n';
    }
    return out;
}

std::string to_json(const std::vector<ResultRow>& rows) {
    std::string out = "[";
    bool first = true;
    for (const ResultRow& r : rows) {
        out += first ? "\n" : ",\n";
        first = false;
        out += "  {\"suite\": " + json_string(r.suite) + ", \"alpha_or_betaE\": " + json_string(r.coord1) +
               ", \"t_or_hf\": " + json_string(r.coord2) + ", \"quantity\": " + json_string(r.quantity) +
               ", \"exact\": " + (r.exact ? format_number(*r.exact) : "null") +
               ", \"mc_mean\": " + (r.mc_mean ? format_number(*r.mc_mean) : "null") +
               ", \"mc_rms\": " + (r.mc_rms ? format_number(*r.mc_rms) : "null") +
               ", \"flags\": " + json_string(r.flags) + "}";
    }
    out += "\n]\n";
    return out;
}

std::string to_text(const std::vector<ResultRow>& rows) {
    const std::array<std::string, 8> header{"suite", "alpha_or_betaE", "t_or_hf", "quantity",
                                            "exact", "mc_mean",        "mc_rms",  "flags"};
    std::vector<std::array<std::string, 8>> table;
    table.push_back(header);
    for (const ResultRow& r : rows)
        table.push_back({r.suite, r.coord1, r.coord2, r.quantity, opt_number(r.exact),
                         opt_number(r.mc_mean), opt_number(r.mc_rms), r.flags});
    std::array<std::size_t, 8> width{};
    for (const auto& row : table)
        for (std::size_t c = 0; c < 8; ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : table) {
        for (std::size_t c = 0; c < 8; ++c) {
            out += row[c];
            if (c + 1 < 8) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    }
    return out;
}

std::string render(const std::vector<ResultRow>& rows, OutFormat format) {
    switch (format) {
        case OutFormat::csv: return to_csv(rows);
        case OutFormat::json: return to_json(rows);
        case OutFormat::text: return to_text(rows);
    }
    throw std::logic_error("unknown output format");
}

void emit(const std::vector<ResultRow>& rows, const OutputSpec& output) {
    const std::string content = render(rows, output.format);
    if (output.path == "-") {
        std::cout << content;
        if (!std::cout) throw std::runtime_error("emit: failed writing to stdout");
        return;
    }
    std::ofstream out(output.path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot open " + output.path);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("emit: failed writing " + output.path);
}

}  // namespace tpmsim
