#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

std::string slurp_file(const std::string &path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cvq(const std::string &args) {
    static int counter = 0;
    const std::string out_path =
        "cli_out_" + std::to_string(counter++) + ".txt";
    const std::string cmd = std::string(CVQ_BINARY) + " " + args + " > " +
                            out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WEXITSTATUS(status);
    result.output = slurp_file(out_path);
    std::remove(out_path.c_str());
    return result;
}

std::string circuit(const char *name) {
    return std::string(CVSIM_CIRCUIT_DIR) + "/" + name;
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    out << content;
}

} // namespace

TEST_CASE("cvq run: single-mode pipeline on the gaussian backend") {
    const CliResult r =
        run_cvq("run " + circuit("fig1_pipeline.cvq") + " -b gaussian");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    // displacement alpha = 0.5 puts the mean at sqrt(2 hbar) * 0.5, the
    // subsequent squeeze contracts it by e^{-0.5}
    const double mean_x = doc["snapshot"]["state"]["mean"][0];
    CHECK(mean_x == doctest::Approx(2.0 * 0.5 * std::exp(-0.5)));
    CHECK(doc["snapshot"]["backend"] == "gaussian");
    CHECK(doc["outcomes"].empty());
}

TEST_CASE("cvq run: decision listing runs on the grid backend") {
    const CliResult r = run_cvq("run " + circuit("deutsch_jozsa.cvq") +
                                " -b grid --grid-n 256 --seed 7");
    CHECK(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["outcomes"].size() == 1);
}

TEST_CASE("cvq run: unsupported rotation angle on grid exits 3") {
    write_file("bad_angle.cvq", "modes 1\nRgate(0.3) | q[0]\n");
    const CliResult r = run_cvq("run bad_angle.cvq -b grid");
    CHECK(r.exit_code == 3);
    std::remove("bad_angle.cvq");
}

TEST_CASE("cvq run: malformed gate exits 2") {
    write_file("bad_gate.cvq", "modes 1\nNope(1) | q[0]\n");
    const CliResult r = run_cvq("run bad_gate.cvq -b gaussian");
    CHECK(r.exit_code == 2);
    std::remove("bad_gate.cvq");
}

TEST_CASE("cvq run: shots accumulate outcomes") {
    write_file("shots.cvq", "modes 1\nCoherent(0.7) | q[0]\nMeasureX | q[0]\n");
    const CliResult r = run_cvq("run shots.cvq -b gaussian --shots 5 --seed 3");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["outcomes"].size() == 5);
    CHECK(doc["outcomes"][4]["shot"] == 4);
    std::remove("shots.cvq");
}

TEST_CASE("cvq wigner: vacuum peak equals 1/(pi hbar)") {
    write_file("vac.cvq", "modes 1\nVacuum() | q[0]\n");
    const CliResult r =
        run_cvq("wigner vac.cvq -b gaussian --points 201 --format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,p,w");
    double peak = -1.0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        peak = std::max(peak, std::stod(line.substr(c2 + 1)));
        (void)c1;
    }
    CHECK(peak == doctest::Approx(1.0 / (3.14159265358979 * 2.0))
                      .epsilon(1e-6));
    std::remove("vac.cvq");
}

TEST_CASE("cvq wigner: mode out of range exits 3") {
    write_file("vac2.cvq", "modes 1\nVacuum() | q[0]\n");
    const CliResult r = run_cvq("wigner vac2.cvq -b gaussian --mode 2");
    CHECK(r.exit_code == 3);
    std::remove("vac2.cvq");
}

TEST_CASE("cvq wigner: grid backend and pgm output") {
    write_file("sq.cvq", "modes 1\nSqueezed(0.5) | q[0]\n");
    const CliResult r = run_cvq(
        "wigner sq.cvq -b grid --points 64 --pgm sq.pgm --format json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["values"].size() == 64);
    const std::string pgm = slurp_file("sq.pgm");
    CHECK(pgm.substr(0, 2) == "P5");
    std::remove("sq.cvq");
    std::remove("sq.pgm");
}

TEST_CASE("cvq grover") {
    SUBCASE("default run succeeds with high probability") {
        const CliResult r =
            run_cvq("grover --bins 64 --target 12 --trace-out trace.csv");
        REQUIRE(r.exit_code == 0);
        const nlohmann::json doc = nlohmann::json::parse(r.output);
        CHECK(doc["success_prob_final"].get<double>() > 0.5);
        CHECK(doc["iterations"] == 6);
        const std::string trace = slurp_file("trace.csv");
        CHECK(trace.rfind("iteration,target_prob", 0) == 0);
        std::remove("trace.csv");
    }
    SUBCASE("zero iterations give the uniform baseline") {
        const CliResult r =
            run_cvq("grover --bins 64 --target 12 --iterations 0");
        REQUIRE(r.exit_code == 0);
        const nlohmann::json doc = nlohmann::json::parse(r.output);
        CHECK(doc["success_prob_final"].get<double>() ==
              doctest::Approx(1.0 / 64.0).epsilon(1e-6));
    }
    SUBCASE("non power-of-two bins exit 4") {
        const CliResult r = run_cvq("grover --bins 63 --target 12");
        CHECK(r.exit_code == 4);
    }
}

TEST_CASE("cvq dj") {
    SUBCASE("reference oracles classify correctly") {
        const CliResult c = run_cvq("dj --oracle constant --shots 100");
        REQUIRE(c.exit_code == 0);
        CHECK(nlohmann::json::parse(c.output)["verdict"] == "constant");
        const CliResult b = run_cvq("dj --oracle balanced --shots 100");
        REQUIRE(b.exit_code == 0);
        CHECK(nlohmann::json::parse(b.output)["verdict"] == "balanced");
    }
    SUBCASE("oracle from a file") {
        write_file("oracle.cvq", "modes 2\nXgate(1) | q[1]\n");
        const CliResult r = run_cvq("dj --oracle oracle.cvq --shots 50");
        REQUIRE(r.exit_code == 0);
        CHECK(nlohmann::json::parse(r.output)["verdict"] == "constant");
        std::remove("oracle.cvq");
    }
    SUBCASE("non-gaussian oracle file exits 3") {
        write_file("oracle_bad.cvq", "modes 2\nInvert(0, 0.5) | q[1]\n");
        const CliResult r = run_cvq("dj --oracle oracle_bad.cvq --shots 10");
        CHECK(r.exit_code == 3);
        std::remove("oracle_bad.cvq");
    }
}

TEST_CASE("cvq verify") {
    SUBCASE("clean run passes") {
        const CliResult r = run_cvq("verify --json");
        CHECK(r.exit_code == 0);
        const nlohmann::json doc = nlohmann::json::parse(r.output);
        CHECK(doc["all_pass"] == true);
        CHECK(doc["checks"].size() > 10);
    }
    SUBCASE("injected hbar mismatch produces a named failure") {
        const CliResult r = run_cvq("verify --json --inject-fault "
                                    "hbar-mismatch");
        CHECK(r.exit_code != 0);
        const nlohmann::json doc = nlohmann::json::parse(r.output);
        bool found = false;
        for (const auto &check : doc["checks"])
            if (check["name"] == "cross_backend_moments" &&
                check["pass"] == false)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("cvq determinism: identical seed, byte-identical output") {
    const std::string dj = circuit("deutsch_jozsa.cvq");
    const CliResult a =
        run_cvq("run " + dj + " -b gaussian --seed 42 --shots 3");
    const CliResult b =
        run_cvq("run " + dj + " -b gaussian --seed 42 --shots 3");
    CHECK(a.output == b.output);
    const CliResult g1 = run_cvq("grover --bins 16 --target 3 --seed 9");
    const CliResult g2 = run_cvq("grover --bins 16 --target 3 --seed 9");
    CHECK(g1.output == g2.output);
    const CliResult d1 = run_cvq("dj --oracle balanced --seed 5 --shots 40");
    const CliResult d2 = run_cvq("dj --oracle balanced --seed 5 --shots 40");
    CHECK(d1.output == d2.output);
}
