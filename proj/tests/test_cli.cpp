// End-to-end checks of the command-line tool: exit codes, output formats,
// and byte-identical reruns. The binary path is injected by the build.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string cli = GATEPOWER_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("gatepower_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("gate-report on a named gate writes a JSON report", "[cli]") {
    TempDir tmp;
    const auto out = tmp.file("cnot.json");
    REQUIRE(run("gate-report --gate cnot --skip-arbitrary --out " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(std::abs(j["e_g"].get<double>() - 1.0) < 5e-4);
    CHECK(std::abs(j["c_g_norm"].get<double>() - 0.5) < 5e-4);
    CHECK(std::abs(j["e_g_closed_form"].get<double>() - 1.0) < 1e-9);
    CHECK(fs::exists(out + ".manifest.json"));
}

TEST_CASE("gate-report accepts matrix and cartan specs", "[cli]") {
    TempDir tmp;
    std::string id_text;
    for (int i = 0; i < 16; ++i) {
        id_text += (i % 5 == 0) ? "1,0" : "0,0";
        if (i != 15) id_text += ",";
    }
    const auto out = tmp.file("id.json");
    REQUIRE(run("gate-report --matrix " + id_text + " --skip-arbitrary --out " + out) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(std::abs(j["e_g"].get<double>()) < 1e-6);
    CHECK(std::abs(j["c_g_bits"].get<double>()) < 1e-6);
    CHECK(std::abs(j["c_g_l1"].get<double>()) < 1e-6);

    REQUIRE(run("gate-report --cartan 0.785398163397448,0,0 --skip-arbitrary --out " +
                tmp.file("k.json")) == 0);
}

TEST_CASE("usage errors exit with code 1", "[cli]") {
    CHECK(run("gate-report") == 1);                      // no gate given
    CHECK(run("gate-report --gate nosuchgate") == 1);    // unknown token
    CHECK(run("nosuchcommand") == 1);
    CHECK(run("scan --kind bogus --out /tmp/x.csv") == 1);
    CHECK(run("gate-report --matrix 1,2,3") == 1);       // parse error
}

TEST_CASE("campaign then fit then export round-trip", "[cli][slow]") {
    TempDir tmp;
    const auto hist = tmp.file("hist.csv");
    REQUIRE(run("campaign --samples 300 --seed 11 --workers 2 --out " + hist) == 0);
    CHECK(fs::exists(hist));
    CHECK(fs::exists(hist + ".samples.csv"));
    CHECK(fs::exists(hist + ".manifest.json"));

    // deterministic rerun: byte-identical CSVs
    const auto hist2 = tmp.file("hist2.csv");
    REQUIRE(run("campaign --samples 300 --seed 11 --workers 1 --out " + hist2) == 0);
    auto strip_manifest_line = [](std::string s) { return s.substr(s.find('\n') + 1); };
    CHECK(strip_manifest_line(slurp(hist)) == strip_manifest_line(slurp(hist2)));

    const auto fit = tmp.file("fit.json");
    const int fit_rc =
        std::system((cli + " fit --in " + hist + " --axis ent --bin top --out " + fit +
                     " > /dev/null 2>&1")
                        .c_str());
    REQUIRE(WIFEXITED(fit_rc));
    const int code = WEXITSTATUS(fit_rc);
    CHECK((code == 0 || code == 2)); // 300 samples may not populate 8 bins
    if (code == 0) {
        const auto j = nlohmann::json::parse(slurp(fit));
        CHECK(j["alpha_b"].get<double>() > 0.0);
        CHECK(fs::exists(fit + ".curve.csv"));
    }

    const auto scatter = tmp.file("scatter.csv");
    REQUIRE(run("export --in " + hist + ".samples.csv --pair eg-cg --out " + scatter) == 0);
    const auto text = slurp(scatter);
    CHECK(text.find("e_g,c_g_bits") != std::string::npos);

    CHECK(run("export --in " + hist + ".samples.csv --pair ebar-cbar --out " +
              tmp.file("bad.csv")) == 2);
}

TEST_CASE("fit on an empty section exits with code 2", "[cli]") {
    TempDir tmp;
    // a histogram whose mass sits in one cell: top-row section has < 8 points
    const auto hist = tmp.file("tiny.csv");
    REQUIRE(run("campaign --samples 1 --seed 5 --out " + hist) == 0);
    CHECK(run("fit --in " + hist + " --axis coh --bin 0 --out " + tmp.file("f.json")) == 2);
}

TEST_CASE("stilde_surface scan emits the grid", "[cli]") {
    TempDir tmp;
    const auto out = tmp.file("surface.csv");
    REQUIRE(run("scan --kind stilde_surface --gate hh --res 8 --out " + out) == 0);
    const auto text = slurp(out);
    CHECK(text.find("theta,phi,s1,s2,s3,s4") != std::string::npos);
    // 9 x 9 grid rows + manifest comment + header
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 2 + 9 * 9);
}

TEST_CASE("alpha_region scan emits consistent rows", "[cli]") {
    TempDir tmp;
    const auto out = tmp.file("region.csv");
    REQUIRE(run("scan --kind alpha_region --res 2 --seed 3 --out " + out) == 0);
    std::ifstream in(out);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("ax", 0) == 0) continue;
        // columns: ax,ay,az,c_tilde,maximal
        std::istringstream ls(line);
        std::string cell;
        double ct = 0.0;
        int maximal = -1;
        for (int c = 0; c < 5; ++c) {
            std::getline(ls, cell, ',');
            if (c == 3) ct = std::stod(cell);
            if (c == 4) maximal = std::stoi(cell);
        }
        CHECK(ct >= 0.0);
        CHECK(ct <= 1.0 + 1e-9);
        CHECK(maximal == (ct >= 1.0 - 5e-3 ? 1 : 0));
        ++rows;
    }
    CHECK(rows == 8); // 2^3 kernel grid cells
}
