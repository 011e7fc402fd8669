#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tpmsim/emit.hpp"
#include "tpmsim/suites.hpp"

using namespace tpmsim;

namespace {

SuiteSpec spec_of(SuiteKind kind, RunMode mode) {
    SuiteSpec spec;
    spec.suite = kind;
    spec.mode = mode;
    return spec;
}

const ResultRow& find_row(const std::vector<ResultRow>& rows, const std::string& c1,
                          const std::string& c2, const std::string& quantity) {
    for (const ResultRow& r : rows)
        if (r.coord1 == c1 && r.coord2 == c2 && r.quantity == quantity) return r;
    throw std::out_of_range("row not found: " + c1 + "/" + c2 + "/" + quantity);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const char* name) {
    return std::string("tpmsim_test_") + name;
}

}  // namespace

TEST_CASE("suite grids have the published shapes") {
    CHECK(suite_cells(spec_of(SuiteKind::table2, RunMode::exact)).size() == 12);
    CHECK(suite_cells(spec_of(SuiteKind::table4, RunMode::exact)).size() == 9);
    CHECK(suite_cells(spec_of(SuiteKind::fig2, RunMode::exact)).size() == 4);
}

TEST_CASE("table4 exact rows") {
    const auto rows = run_suite(spec_of(SuiteKind::table4, RunMode::exact));
    CHECK(rows.size() == 18);  // 9 cells x 2 quantities
    const ResultRow& diss = find_row(rows, "1", "Hf1", "dissipation");
    REQUIRE(diss.exact.has_value());
    CHECK(std::abs(*diss.exact - 0.7615941559557649) < 1e-12);
    const ResultRow& jarz = find_row(rows, "1", "Hf1", "jarzynski");
    REQUIRE(jarz.exact.has_value());
    CHECK(std::abs(*jarz.exact - 1.0) < 1e-12);
    // every cell appears exactly once per quantity
    for (const char* c1 : {"0.2", "0.5", "1"})
        for (const char* c2 : {"Hf1", "Hf2", "Hf3"}) {
            int seen = 0;
            for (const ResultRow& r : rows)
                if (r.coord1 == c1 && r.coord2 == c2 && r.quantity == "jarzynski") ++seen;
            CHECK(seen == 1);
        }
}

TEST_CASE("table2 exact rows") {
    const auto rows = run_suite(spec_of(SuiteKind::table2, RunMode::exact));
    CHECK(rows.size() == 24);
    for (int t = 1; t <= 4; ++t) {
        const ResultRow& mi = find_row(rows, "1", std::to_string(t), "total_mi");
        const ResultRow& eq = find_row(rows, "1", std::to_string(t), "exp_neg_info");
        CHECK(std::abs(*mi.exact) < 1e-12);
        CHECK(std::abs(*eq.exact - 1.0) < 1e-12);
    }
    const ResultRow& mi = find_row(rows, format_number(std::sqrt(2.0 / 3.0)), "4", "total_mi");
    CHECK(std::abs(*mi.exact - 0.5041185703430315) < 1e-12);
}

TEST_CASE("fig2 exact rows") {
    const auto rows = run_suite(spec_of(SuiteKind::fig2, RunMode::exact));
    CHECK(rows.size() == 40);  // 4 time points x (8 probabilities + 2 functionals)
    const std::string alpha = format_number(std::sqrt(2.0 / 3.0));
    for (int t = 1; t <= 4; ++t) {
        CHECK(std::abs(*find_row(rows, alpha, std::to_string(t), "p-").exact - 2.0 / 3.0) < 1e-12);
        CHECK(std::abs(*find_row(rows, alpha, std::to_string(t), "p+").exact - 1.0 / 3.0) < 1e-12);
    }
    CHECK(std::abs(*find_row(rows, alpha, "1", "q-").exact - 0.9793384772605349) < 1e-12);
    CHECK(std::abs(*find_row(rows, alpha, "4", "q-").exact - 0.21658994017028926) < 1e-12);
}

TEST_CASE("check_suite accepts the exact grids and rejects corrupted values") {
    const SuiteSpec table4 = spec_of(SuiteKind::table4, RunMode::exact);
    auto rows = run_suite(table4);
    CHECK(check_suite(table4, rows).empty());
    // corrupt one dissipation value
    for (ResultRow& r : rows)
        if (r.coord1 == "0.5" && r.coord2 == "Hf2" && r.quantity == "dissipation") *r.exact += 0.05;
    CHECK(!check_suite(table4, rows).empty());

    const SuiteSpec table2 = spec_of(SuiteKind::table2, RunMode::exact);
    CHECK(check_suite(table2, run_suite(table2)).empty());
    const SuiteSpec fig2 = spec_of(SuiteKind::fig2, RunMode::exact);
    CHECK(check_suite(fig2, run_suite(fig2)).empty());
}

TEST_CASE("montecarlo rows are reproducible and carry independent cell noise") {
    SuiteSpec spec = spec_of(SuiteKind::table4, RunMode::both);
    spec.plan.seed = 91;
    spec.plan.shots_per_setting = 2000;
    spec.plan.replications = 10;
    const auto a = run_suite(spec);
    const auto b = run_suite(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].mc_mean == b[k].mc_mean);
        CHECK(a[k].mc_rms == b[k].mc_rms);
    }
    CHECK(to_csv(a) == to_csv(b));
    // different Hf cells see different shot noise
    const ResultRow& hf1 = find_row(a, "0.2", "Hf1", "jarzynski");
    const ResultRow& hf2 = find_row(a, "0.2", "Hf2", "jarzynski");
    CHECK(*hf1.mc_mean != *hf2.mc_mean);
}

TEST_CASE("csv output matches the golden files") {
    const struct {
        SuiteKind kind;
        const char* file;
    } cases[] = {{SuiteKind::table2, "golden/table2_exact.csv"},
                 {SuiteKind::table4, "golden/table4_exact.csv"},
                 {SuiteKind::fig2, "golden/fig2_exact.csv"}};
    for (const auto& c : cases) {
        const auto rows = run_suite(spec_of(c.kind, RunMode::exact));
        const std::string expected = read_file(std::string(TPMSIM_TEST_DATA_DIR "/") + c.file);
        CHECK(to_csv(rows) == expected);
    }
}

TEST_CASE("emit formats") {
    CHECK(to_csv({}) == "suite,alpha_or_betaE,t_or_hf,quantity,exact,mc_mean,mc_rms,flags\n");

    const auto rows = run_suite(spec_of(SuiteKind::table4, RunMode::exact));
    const std::string csv = to_csv(rows);
    CHECK(csv.find("table4,0.2,Hf1,dissipation,0.039475064045,,,\n") != std::string::npos);

    // json carries the same numeric strings as the csv
    const nlohmann::json parsed = nlohmann::json::parse(to_json(rows));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(parsed[k]["suite"] == rows[k].suite);
        CHECK(parsed[k]["quantity"] == rows[k].quantity);
        if (rows[k].exact) {
            CHECK(format_number(parsed[k]["exact"].get<double>()) == format_number(*rows[k].exact));
        } else {
            CHECK(parsed[k]["exact"].is_null());
        }
        CHECK(parsed[k]["mc_mean"].is_null());
    }

    const std::string text = to_text(rows);
    CHECK(text.find("dissipation") != std::string::npos);

    // emit writes files and surfaces IO failures with the path
    const std::string path = temp_path("emit.csv");
    OutputSpec output;
    output.path = path;
    emit(rows, output);
    CHECK(read_file(path) == csv);
    std::remove(path.c_str());
    output.path = "no_such_dir_tpmsim/out.csv";
    CHECK_THROWS_WITH_AS(emit(rows, output), doctest::Contains("no_such_dir_tpmsim"),
                         std::runtime_error);
}

TEST_CASE("resolve_suite_spec") {
    // defaults and grid selection
    const SuiteSpec table4 = resolve_suite_spec({}, {{"suite", "table4"}, {"mode", "exact"}});
    CHECK(table4.suite == SuiteKind::table4);
    CHECK(table4.mode == RunMode::exact);
    CHECK(table4.plan.shots_per_setting == 40000);
    CHECK(table4.plan.replications == 100);
    CHECK(suite_cells(table4).size() == 9);

    const SuiteSpec fig2 = resolve_suite_spec(
        {}, {{"suite", "fig2"}, {"mode", "both"}, {"seed", "7"}, {"shots", "40000"}});
    CHECK(fig2.mode == RunMode::both);
    CHECK(fig2.plan.seed == 7);

    // montecarlo without a seed is refused
    CHECK_THROWS_WITH_AS(resolve_suite_spec({}, {{"suite", "table2"}, {"mode", "montecarlo"}}),
                         doctest::Contains("seed"), std::invalid_argument);

    // unknown keys are listed
    CHECK_THROWS_WITH_AS(
        resolve_suite_spec({{"sheets", "9"}}, {{"suite", "table2"}, {"modee", "exact"}}),
        doctest::Contains("modee"), std::invalid_argument);

    // custom needs a complete protocol config, and validates it
    CHECK_THROWS_AS(resolve_suite_spec({}, {{"suite", "custom"}}), std::invalid_argument);
    CHECK_THROWS_AS(resolve_suite_spec({}, {{"suite", "custom"}, {"state", "pure"}, {"alpha", "1.2"}}),
                    std::invalid_argument);
    const SuiteSpec custom = resolve_suite_spec(
        {}, {{"suite", "custom"},  {"state", "gibbs"}, {"beta_e", "0.5"},
             {"q_axis", "O"},      {"theta1", "0.62831853"}, {"phi1", "-1.0471975512"}});
    REQUIRE(custom.custom_config.has_value());
    CHECK(custom.custom_config->initial.kind == InitialStateSpec::Kind::gibbs);
    CHECK(custom.custom_config->energy.has_value());
    CHECK(suite_cells(custom).size() == 1);

    // custom-only keys are rejected on preset suites
    CHECK_THROWS_AS(resolve_suite_spec({}, {{"suite", "table2"}, {"alpha", "0.5"}}),
                    std::invalid_argument);

    // flags override the file
    const SuiteSpec merged = resolve_suite_spec({{"suite", "table2"}, {"shots", "100"}},
                                                {{"suite", "table4"}, {"mode", "exact"}});
    CHECK(merged.suite == SuiteKind::table4);
    CHECK(merged.plan.shots_per_setting == 100);

    // spam parsing
    const SuiteSpec spam = resolve_suite_spec(
        {}, {{"suite", "table4"}, {"mode", "montecarlo"}, {"seed", "1"}, {"spam", "0.007,0.0022"}});
    REQUIRE(spam.plan.spam.has_value());
    CHECK(spam.plan.spam->p_prep_error == 0.007);
    CHECK(spam.plan.spam->p_detect_error == 0.0022);
    CHECK_THROWS_AS(resolve_suite_spec({}, {{"suite", "table4"}, {"spam", "0.007"}}),
                    std::invalid_argument);

    // check is restricted to preset suites
    CHECK_THROWS_AS(resolve_suite_spec({}, {{"suite", "custom"}, {"state", "pure"}, {"alpha", "0.5"},
                                            {"check", "1"}}),
                    std::invalid_argument);
}

TEST_CASE("parse_config_file") {
    const std::string path = temp_path("config.cfg");
    {
        std::ofstream out(path);
        out << "# thermal run\n"
            << "suite = table4\n"
            << "mode = montecarlo   # overridden by flags in the merged test\n"
            << "seed = 11\n"
            << "\n"
            << "shots = 2000\n";
    }
    const auto kv = parse_config_file(path);
    std::remove(path.c_str());
    CHECK(kv.at("suite") == "table4");
    CHECK(kv.at("mode") == "montecarlo");
    CHECK(kv.at("seed") == "11");
    CHECK(kv.at("shots") == "2000");
    CHECK(kv.size() == 4);

    CHECK_THROWS_AS(parse_config_file("definitely_missing.cfg"), std::invalid_argument);
}

TEST_CASE("phi1 override feeds every cell") {
    SuiteSpec spec = spec_of(SuiteKind::table2, RunMode::exact);
    spec.phi1_override = 0.4;
    for (const SuiteCell& cell : suite_cells(spec)) CHECK(cell.config.evolution.phi == 0.4);
    // total MI is phase sensitive away from alpha = 1
    const auto plain = run_suite(spec_of(SuiteKind::table2, RunMode::exact));
    const auto shifted = run_suite(spec);
    const std::string alpha = format_number(std::sqrt(2.0 / 3.0));
    CHECK(*find_row(plain, alpha, "1", "total_mi").exact !=
          *find_row(shifted, alpha, "1", "total_mi").exact);
}
