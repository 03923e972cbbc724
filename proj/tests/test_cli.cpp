// End-to-end tests that drive the qcssbound binary. The binary path is
// injected by CMake through QCSS_CLI_PATH.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qcss/bounds.hpp"
#include "qcss/json_io.hpp"
#include "qcss/seqlab.hpp"
#include "qcss/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QCSS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// value of `column` in the CSV row whose first field is `label`
std::string csv_cell(const std::string& csv, const std::string& label, int column) {
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind(label + ",", 0) != 0) continue;
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i <= column; ++i) std::getline(ls, cell, ',');
        return cell;
    }
    return {};
}

fs::path tmp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("bound command") {
    SUBCASE("uniform weight equals the welch kind") {
        const CmdResult u = run_cli("bound --M 2 --N 16 --K 9 --weight uniform --format json");
        const CmdResult w = run_cli("bound --M 2 --N 16 --K 9 --kind welch --format json");
        REQUIRE(u.exit_code == 0);
        REQUIRE(w.exit_code == 0);
        const double uv = json::parse(u.output)["value"].get<double>();
        const double wv = json::parse(w.output)["value"].get<double>();
        CHECK(std::abs(uv - wv) <= 1e-10 * std::abs(wv));
    }
    SUBCASE("stable CSV header") {
        const CmdResult r = run_cli("bound --M 2 --N 16 --K 9 --kind welch");
        REQUIRE(r.exit_code == 0);
        CHECK(r.output.rfind(
                  "M,N,K,kind,weight_family,m,j,value,welch,ratio_to_welch,valid,validity_notes",
                  0) == 0);
    }
    SUBCASE("cosine closed form reproduces the reference ratio at N=2048") {
        const CmdResult r = run_cli("bound --M 2 --N 2048 --K 5 --kind cosine --format json");
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(std::abs(j["ratio_to_welch"].get<double>() - 1.0043) < 1e-4);
        CHECK(j["valid"].get<bool>());
    }
    SUBCASE("the general functional at the cosine weight matches at N=2048") {
        const CmdResult r = run_cli("bound --M 2 --N 2048 --K 5 --weight cosine --format json");
        REQUIRE(r.exit_code == 0);
        CHECK(std::abs(json::parse(r.output)["ratio_to_welch"].get<double>() - 1.0043) < 1e-4);
    }
    SUBCASE("weight file round trip equals the in-memory functional") {
        const fs::path wf = tmp_file("qcss_cli_weights.txt");
        const qcss::VectorXd w = qcss::sine_weights(16, 9);
        qcss::write_weight_file(wf.string(), w);
        const CmdResult file_run =
            run_cli("bound --M 2 --N 16 --K 9 --weight-file " + wf.string() + " --format json");
        REQUIRE(file_run.exit_code == 0);
        const double got = json::parse(file_run.output)["value"].get<double>();
        const double expect = qcss::glb(qcss::QcssParams(9, 2, 16), w).value;
        CHECK(got == expect);  // bit-exact through the 17-digit text format
        fs::remove(wf);
    }
    SUBCASE("usage errors exit with 2") {
        CHECK(run_cli("bound --M 2 --N 16").exit_code == 2);        // missing --K
        CHECK(run_cli("bound --M 2 --N 16 --K 4 --no-such").exit_code == 2);
        CHECK(run_cli("nonsense").exit_code == 2);
        CHECK(run_cli("bound --M 2 --N 16 --K 9 --kind bogus").exit_code == 2);
        CHECK(run_cli("bound --M 2 --N 16 --K 9 --weight step --m 99").exit_code == 2);
    }
    SUBCASE("help exits 0") { CHECK(run_cli("--help").exit_code == 0); }
}

TEST_CASE("table1 command matches the reference ratios") {
    const CmdResult r = run_cli("table1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.rfind("row,M=2,M=3,", 0) == 0);  // stable header
    // spot-check columns M=2 (col 1), M=10 (col 9), M=17 (col 16)
    CHECK(csv_cell(r.output, "B1_over_BW", 1) == "1.0043");
    CHECK(csv_cell(r.output, "B2_over_BW", 1) == "1.0026");
    CHECK(csv_cell(r.output, "B3_over_BW", 1) == "0.9909");
    CHECK(csv_cell(r.output, "B3_over_BW", 9) == "0.9910");
    CHECK(csv_cell(r.output, "B1_over_BW", 16) == "1.0003");
    CHECK(csv_cell(r.output, "B2_over_BW", 16) == "0.9977");
    CHECK(csv_cell(r.output, "B3_over_BW", 16) == "0.9841");
    CHECK(csv_cell(r.output, "K", 1) == "5");
}

TEST_CASE("curves command") {
    const fs::path prefix = tmp_file("qcss_curves");
    const CmdResult r =
        run_cli("curves --r-points 4000 --M-range 2:64 --out " + prefix.string());
    REQUIRE(r.exit_code == 0);
    const std::string l_csv = slurp(prefix.string() + ".L.csv");
    const std::string d_csv = slurp(prefix.string() + ".dM.csv");
    REQUIRE_FALSE(l_csv.empty());
    REQUIRE_FALSE(d_csv.empty());

    SUBCASE("L curve minimum and the constant comparator row") {
        std::istringstream is(l_csv);
        std::string line;
        std::getline(is, line);  // header
        double min_l = 1e300;
        bool constant_ok = true;
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            std::string r_s, l_s, c_s;
            std::getline(ls, r_s, ',');
            std::getline(ls, l_s, ',');
            std::getline(ls, c_s, ',');
            min_l = std::min(min_l, std::stod(l_s));
            constant_ok = constant_ok && std::stod(c_s) == 2.4674011002723395;
        }
        CHECK(min_l == doctest::Approx(2.483257).epsilon(2e-5));
        CHECK(constant_ok);
    }
    SUBCASE("d3 positive exactly on {3,5,7,9,11}") {
        std::istringstream is(d_csv);
        std::string line;
        std::getline(is, line);
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            std::string m_s, d1_s, d2_s, d3_s;
            std::getline(ls, m_s, ',');
            std::getline(ls, d1_s, ',');
            std::getline(ls, d2_s, ',');
            std::getline(ls, d3_s, ',');
            const long long M = std::stoll(m_s);
            const bool expect = M == 3 || M == 5 || M == 7 || M == 9 || M == 11;
            CHECK((std::stod(d3_s) > 0.0) == expect);
            CHECK(std::stod(d1_s) > 0.0);
        }
    }
    fs::remove(prefix.string() + ".L.csv");
    fs::remove(prefix.string() + ".dM.csv");
}

TEST_CASE("sweep command") {
    const CmdResult r = run_cli("sweep --M-range 2:3 --K-range 2:12 --N 16");
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.output);
    std::string line;
    std::getline(is, line);
    CHECK(line == "M,K,N,k_bar,family,m,value,welch,ratio_to_welch,valid,beats_welch");
    long long rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 11);
        const long long M = std::stoll(cells[0]);
        const long long K = std::stoll(cells[1]);
        const long long kb = std::stoll(cells[3]);
        const bool beats = cells[10] == "true";
        if (K <= kb) CHECK_FALSE(beats);                       // below the necessity threshold
        if (cells[4] == "step" && K >= 4 * M) CHECK(beats);    // K >= 4M guarantee
    }
    CHECK(rows == 2 * 11 * 4);  // (M cells) x (K cells) x families
}

TEST_CASE("verify command") {
    SUBCASE("small grid passes and emits schema-shaped JSON") {
        const CmdResult r = run_cli("verify --sets 3 --trials 200");
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(j["pass"].get<bool>());
        REQUIRE(j.contains("sections"));
        for (const auto& s : j["sections"]) {
            CHECK(s.contains("name"));
            CHECK(s.contains("pass"));
            CHECK(s["pass"].get<bool>());
        }
        // keys promised by schemas/perturbation_report.schema.json
        const json& lm = j["sections"].back();
        for (const char* key : {"params", "seed", "trials", "norm_cap", "objective_at_w",
                                "max_violation", "max_violation_rel", "identity_max_mismatch",
                                "min_norm", "max_norm", "cases", "warning"})
            CHECK(lm.contains(key));
    }
    SUBCASE("faulty weight file fails with a simplex diagnostic") {
        const fs::path wf = tmp_file("qcss_cli_bad_weights.txt");
        {
            std::ofstream out(wf);
            out << "0.5\n0.6\n-0.1\n";
        }
        const CmdResult r = run_cli("verify --weight-file " + wf.string());
        CHECK(r.exit_code == 1);
        const json j = json::parse(r.output);
        CHECK_FALSE(j["pass"].get<bool>());
        CHECK_FALSE(j["weight_file"]["ok"].get<bool>());
        CHECK(j["weight_file"]["offending_index"].get<long long>() == 2);
        CHECK(j["weight_file"]["message"].get<std::string>().find("entry 2") !=
              std::string::npos);
        fs::remove(wf);
    }
    SUBCASE("sequence-set files run through the bound sandwich") {
        const fs::path sf = tmp_file("qcss_cli_set.json");
        qcss::write_sequence_set(sf.string(), qcss::random_qcss(6, 2, 8, 4, 3));
        const CmdResult r = run_cli("verify --set-file " + sf.string());
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(j["pass"].get<bool>());
        CHECK(j["violations"].get<long long>() == 0);
        CHECK(j["delta_max_sq"].get<double>() > 0.0);
        fs::remove(sf);
    }
    SUBCASE("local-min probe respects the requested shape") {
        const CmdResult r = run_cli("verify --local-min --M 16 --N 64 --trials 150 --seed 9");
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(j["trials"].get<long long>() == 150);
        CHECK(j["params"]["M"].get<long long>() == 16);
        CHECK(j["identity_max_mismatch"].get<double>() <= 1e-9);
        CHECK(j["accepted_trials"].get<long long>() == 150);
    }
}

TEST_CASE("determinism: identical config and seed give byte-identical files") {
    const fs::path a = tmp_file("qcss_det_a.csv");
    const fs::path b = tmp_file("qcss_det_b.csv");
    REQUIRE(run_cli("sweep --M-range 2:4 --K-range 2:10 --N 16 --out " + a.string()).exit_code ==
            0);
    REQUIRE(run_cli("sweep --M-range 2:4 --K-range 2:10 --N 16 --out " + b.string()).exit_code ==
            0);
    CHECK(slurp(a) == slurp(b));

    const fs::path va = tmp_file("qcss_det_a.json");
    const fs::path vb = tmp_file("qcss_det_b.json");
    REQUIRE(run_cli("verify --sets 2 --trials 120 --seed 5 --out " + va.string()).exit_code == 0);
    REQUIRE(run_cli("verify --sets 2 --trials 120 --seed 5 --out " + vb.string()).exit_code == 0);
    CHECK(slurp(va) == slurp(vb));
    for (const auto& p : {a, b, va, vb}) fs::remove(p);
}

TEST_CASE("config file provides defaults and flags win") {
    const fs::path cfg = tmp_file("qcss_cli_config.ini");
    {
        std::ofstream out(cfg);
        out << "[bound]\nM = 2\nN = 16\nK = 9\nkind = welch\n";
    }
    const CmdResult from_cfg = run_cli("--config " + cfg.string() + " bound --format json");
    REQUIRE(from_cfg.exit_code == 0);
    CHECK(json::parse(from_cfg.output)["kind"].get<std::string>() == "welch");
    const CmdResult overridden =
        run_cli("--config " + cfg.string() + " bound --kind chebyshev --format json");
    REQUIRE(overridden.exit_code == 0);
    CHECK(json::parse(overridden.output)["kind"].get<std::string>() == "glb_chebyshev");
    fs::remove(cfg);
}

TEST_CASE("thread cap env var is honored") {
    const fs::path a = tmp_file("qcss_thr_a.csv");
    const fs::path b = tmp_file("qcss_thr_b.csv");
    const std::string base = "sweep --M-range 2:5 --K-range 2:20 --N 32 --out ";
    REQUIRE(run_cli(base + a.string()).exit_code == 0);
    // prefix env var through sh -c semantics of popen
    const std::string cmd = "QCSS_BOUNDS_THREADS=1 " + std::string(QCSS_CLI_PATH) + " " + base +
                            b.string() + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(a) == slurp(b));  // parallel and serial runs emit identical bytes
    fs::remove(a);
    fs::remove(b);
}
