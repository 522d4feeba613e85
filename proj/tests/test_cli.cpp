// Command-line surface: argument parsing, exit codes, output formats, and
// byte-identity between the installed binary and the in-process entry point.

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmvkit/cli.hpp"
#include "cmvkit/cmv.hpp"
#include "cmvkit/json_io.hpp"
#include "cmvkit/schedule.hpp"
#include "test_util.hpp"

using namespace cmvkit;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult result;
    result.code = run_cli(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::string join(const std::vector<std::string>& args) {
    std::string text;
    for (const std::string& a : args) {
        if (!text.empty()) text += ' ';
        text += a;
    }
    return text;
}

// Run the installed binary with the same arguments; stderr is discarded.
std::pair<int, std::string> run_binary(const std::vector<std::string>& args) {
    const std::string command = std::string(CMVKIT_BIN) + " " + join(args) + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), got);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), output};
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

bool starts_with(const std::string& text, const std::string& prefix) {
    return text.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_CASE("complex and angle arguments parse strictly") {
    CHECK(parse_complex("0.5,-0.25") == cplx(0.5, -0.25));
    CHECK(parse_complex("2") == cplx(2.0, 0.0));
    CHECK(parse_complex("-1e-3,2.5e2") == cplx(-1e-3, 2.5e2));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1,"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);

    CHECK(parse_zeta_angle("0.25pi") == doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(parse_zeta_angle("1pi") == doctest::Approx(pi).epsilon(1e-15));
    CHECK(parse_zeta_angle("-0.5pi") == doctest::Approx(-pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(parse_zeta_angle("0.25"), std::invalid_argument);
    CHECK_THROWS_AS(parse_zeta_angle("pi"), std::invalid_argument);
    CHECK_THROWS_AS(parse_zeta_angle("0.25pie"), std::invalid_argument);
}

TEST_CASE("exit codes distinguish usage errors from numerical failures") {
    SUBCASE("success returns zero with output on the stream") {
        const CliResult r =
            invoke({"weyl", "caratheodory", "--measure", "geronimus_mu", "--z", "0.5"});
        CHECK(r.code == 0);
        CHECK(r.err.empty());
        const json j = json::parse(r.out);
        CHECK(std::abs(complex_from_json(j.at("F")) - cplx(0.5, 0.0)) <= 1e-10);
    }

    SUBCASE("two input sources are rejected") {
        const CliResult r = invoke({"measure", "moments", "--measure", "lebesgue", "--random", "4"});
        CHECK(r.code == 1);
        CHECK(r.err.find("exactly one input source") != std::string::npos);
    }

    SUBCASE("a missing spectral parameter is a usage error") {
        const CliResult r = invoke({"weyl", "caratheodory", "--measure", "lebesgue"});
        CHECK(r.code == 1);
        CHECK(r.err.find("--z") != std::string::npos);
    }

    SUBCASE("malformed option values are usage errors, not crashes") {
        CHECK(invoke({"weyl", "caratheodory", "--measure", "lebesgue", "--z", "junk"}).code == 1);
        CHECK(invoke({"cmv", "build", "--measure", "lebesgue", "--zeta-const", "0.25"}).code == 1);
    }

    SUBCASE("unknown builtin names are reported on the error stream") {
        const CliResult r = invoke({"measure", "moments", "--measure", "nope"});
        CHECK(r.code == 1);
        CHECK(starts_with(r.err, "error: "));
    }

    SUBCASE("a rejected format is a usage error") {
        const CliResult r =
            invoke({"measure", "moments", "--measure", "lebesgue", "--format", "yaml"});
        CHECK(r.code == 1);
        CHECK(r.err.find("--format must be json or csv") != std::string::npos);
    }

    SUBCASE("help exits zero") {
        const CliResult r = invoke({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("Usage") != std::string::npos);
    }

    SUBCASE("a missing subcommand is a usage error") {
        CHECK(invoke({}).code == 1);
    }

    SUBCASE("verification failure exits two after emitting the report") {
        const std::vector<std::string> base = {"gz",   "verify", "--measure", "geronimus_mu",
                                               "--z",  "0.7,0.1", "--lo",      "1",
                                               "--hi", "6"};
        const CliResult clean = invoke(base);
        CHECK(clean.code == 0);
        const json ok = json::parse(clean.out);
        CHECK(ok.at("block_pass").get<bool>());
        CHECK(ok.at("recursion_pass").get<bool>());

        std::vector<std::string> corrupted = base;
        corrupted.insert(corrupted.end(), {"--perturb", "1e-3"});
        const CliResult broken = invoke(corrupted);
        CHECK(broken.code == 2);
        CHECK(starts_with(broken.err, "numerical failure: "));
        CHECK(broken.err.find("equivalence verification") != std::string::npos);
        const json bad = json::parse(broken.out);
        CHECK_FALSE(bad.at("block_pass").get<bool>());
        CHECK_FALSE(bad.at("recursion_pass").get<bool>());
    }
}

TEST_CASE("the binary and the in-process entry point emit identical bytes") {
    const std::vector<std::vector<std::string>> commands = {
        {"weyl", "caratheodory", "--measure", "geronimus_mu", "--z", "0.25,0.1"},
        {"cmv", "build", "--measure", "geronimus_mu", "--n", "5", "--zeta-const", "0.25pi",
         "--rotated", "--format", "csv"},
        {"gz", "propagate", "--measure", "geronimus_mu", "--z", "0.3,0.2", "--lo", "0", "--hi",
         "5"},
    };
    for (const auto& args : commands) {
        CAPTURE(join(args));
        const CliResult in_process = invoke(args);
        const auto [code, output] = run_binary(args);
        CHECK(in_process.code == 0);
        CHECK(code == 0);
        CHECK(in_process.out == output);
    }

    SUBCASE("numerical failures carry exit code two through the binary") {
        const std::vector<std::string> args = {"gz",   "verify",  "--measure", "geronimus_mu",
                                               "--z",  "0.7,0.1", "--lo",      "1",
                                               "--hi", "6",       "--perturb", "1e-3"};
        const auto [code, output] = run_binary(args);
        CHECK(code == 2);
        CHECK_FALSE(json::parse(output).at("block_pass").get<bool>());
    }
}

TEST_CASE("schedule files round trip through the toolkit") {
    std::mt19937_64 rng(29);
    const CoefficientSchedule s = cmvkit::test::random_schedule(rng, 10);
    const std::string path = temp_path("cmvkit_test_schedule.json");
    {
        std::ofstream file(path);
        REQUIRE(bool(file));
        file << schedule_to_json(s).dump(2) << "\n";
    }

    SUBCASE("a reloaded schedule is identical") {
        const CoefficientSchedule loaded = load_schedule(path);
        CHECK(loaded.lo() == s.lo());
        CHECK(loaded.is_half_lattice() == s.is_half_lattice());
        REQUIRE(loaded.alphas().size() == s.alphas().size());
        for (std::size_t k = 0; k < s.alphas().size(); ++k) {
            CHECK(loaded.alphas()[k] == s.alphas()[k]);
            CHECK(loaded.zetas()[k] == s.zetas()[k]);
        }
    }

    SUBCASE("the file source feeds the operator build") {
        const CliResult r = invoke({"cmv", "build", "--schedule", path});
        CHECK(r.code == 0);
        const BandedUnitary expected =
            build_cmv(s, 0, 5, false, false, BoundaryMode::principal_truncation);
        CHECK(r.out == matrix_to_json(expected).dump(2) + "\n");
    }

    SUBCASE("extracted coefficients reload as a schedule") {
        const std::string out_path = temp_path("cmvkit_test_verblunsky.json");
        const CliResult r = invoke({"measure", "verblunsky", "--measure", "geronimus_mu", "--n",
                                    "6", "--out", out_path});
        CHECK(r.code == 0);
        CHECK(r.out.empty());
        std::ifstream file(out_path);
        REQUIRE(bool(file));
        json j;
        file >> j;
        const CoefficientSchedule extracted = schedule_from_json(j);
        REQUIRE(extracted.alphas().size() == 6);
        for (int k = 0; k < 6; ++k)
            CHECK(std::abs(extracted.alpha(k) - cplx(-1.0 / (k + 2), 0.0)) <= 1e-9);
        std::filesystem::remove(out_path);
    }

    SUBCASE("an unwritable output path is a usage error") {
        const CliResult r = invoke({"measure", "moments", "--measure", "lebesgue", "--out",
                                    "/nonexistent_dir_for_cmvkit/out.json"});
        CHECK(r.code == 1);
        CHECK(r.err.find("cannot open output file") != std::string::npos);
    }

    std::filesystem::remove(path);
}

TEST_CASE("random schedules are reproducible from the seed") {
    const std::vector<std::string> args = {"cmv", "build", "--random", "8",
                                           "--seed", "777", "--format", "csv"};
    const CliResult first = invoke(args);
    const CliResult second = invoke(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);

    std::vector<std::string> other = args;
    other[5] = "778";
    const CliResult different = invoke(other);
    CHECK(different.code == 0);
    CHECK(first.out != different.out);
}

TEST_CASE("csv headers are stable") {
    SUBCASE("moments") {
        const CliResult r = invoke({"measure", "moments", "--measure", "lebesgue", "--format",
                                    "csv"});
        CHECK(r.code == 0);
        CHECK(starts_with(r.out, "k,re,im\n0,1,0\n"));
    }
    SUBCASE("polynomial sequences") {
        const CliResult r = invoke({"opuc", "sequence", "--measure", "geronimus_mu", "--n", "3",
                                    "--format", "csv"});
        CHECK(r.code == 0);
        CHECK(starts_with(r.out, "n,kind,power,re,im\n"));
    }
    SUBCASE("operator windows") {
        const CliResult r = invoke({"cmv", "build", "--measure", "lebesgue", "--n", "4",
                                    "--format", "csv"});
        CHECK(r.code == 0);
        CHECK(starts_with(r.out, "row,col,re,im\n"));
    }
    SUBCASE("evolution records") {
        const CliResult r = invoke({"cmv", "evolve", "--measure", "geronimus_mu", "--n", "4",
                                    "--steps", "4", "--stride", "2", "--format", "csv"});
        CHECK(r.code == 0);
        CHECK(starts_with(r.out, "step,norm,p_0,p_1,p_2,p_3\n"));
    }
    SUBCASE("propagation defaults to csv") {
        const CliResult r = invoke({"gz", "propagate", "--measure", "geronimus_mu", "--z",
                                    "0.3,0.2", "--lo", "0", "--hi", "4"});
        CHECK(r.code == 0);
        CHECK(starts_with(r.out, "n,re_f,im_f,re_g,im_g\n"));
    }
    SUBCASE("boundary seed tables") {
        const CliResult r = invoke({"gz", "table", "--measure", "geronimus_mu", "--z", "0.3,0.2",
                                    "--k", "2"});
        CHECK(r.code == 0);
        CHECK(starts_with(r.out, "family,n,re_f,im_f,re_g,im_g\n"));
    }
}

TEST_CASE("rotated operator entries match the worked values via the command line") {
    const double rt = std::sqrt(2.0) / 2.0;  // cos and sin of the constant phase

    const CliResult plain = invoke(
        {"cmv", "build", "--measure", "geronimus_mu", "--n", "5", "--rotated", "--zeta-const",
         "0.25pi"});
    CHECK(plain.code == 0);
    const json j = json::parse(plain.out);
    CHECK(j.at("lo").get<int>() == 0);
    CHECK(j.at("size").get<int>() == 5);
    CHECK(j.at("boundary").get<std::string>() == "principal_truncation");
    const auto entry = [&](const json& matrix, int row, int col) {
        return complex_from_json(matrix.at("entries").at(row).at(col));
    };
    CHECK(std::abs(entry(j, 0, 0) - cplx(-0.5, 0.0)) <= 1e-12);
    const double s36 = std::sqrt(3.0) / 6.0;
    CHECK(std::abs(entry(j, 0, 1) - cplx(-s36 * rt, -s36 * rt)) <= 1e-12);
    CHECK(std::abs(entry(j, 0, 2) - cplx(0.0, std::sqrt(6.0) / 3.0)) <= 1e-12);
    CHECK(std::abs(entry(j, 4, 4) - cplx(-1.0 / 30.0, 0.0)) <= 1e-12);

    const CliResult alt = invoke(
        {"cmv", "build", "--measure", "geronimus_mu", "--n", "5", "--rotated", "--alternate",
         "--zeta-const", "0.25pi"});
    CHECK(alt.code == 0);
    const json ja = json::parse(alt.out);
    const double s32 = std::sqrt(3.0) / 2.0;
    CHECK(std::abs(entry(ja, 0, 1) - cplx(s32 * rt, s32 * rt)) <= 1e-12);
    CHECK(std::abs(entry(ja, 1, 0) - cplx(-s36 * rt, s36 * rt)) <= 1e-12);
}

TEST_CASE("splitting reports exact decoupling at a unimodular coefficient") {
    std::vector<cplx> alpha(12, cplx(0.3, -0.1));
    alpha[5] = cplx(0.0, 1.0);
    const CoefficientSchedule s = CoefficientSchedule::half_lattice(alpha);
    const std::string path = temp_path("cmvkit_test_split.json");
    {
        std::ofstream file(path);
        REQUIRE(bool(file));
        file << schedule_to_json(s).dump(2) << "\n";
    }
    const CliResult r = invoke({"cmv", "split", "--schedule", path, "--k", "5"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("leakage").get<double>() == 0.0);
    CHECK(j.at("left").at("lo").get<int>() == 1);
    CHECK(j.at("left").at("size").get<int>() == 5);
    CHECK(j.at("right").at("lo").get<int>() == 6);
    CHECK(j.at("right").at("size").get<int>() == 6);
    std::filesystem::remove(path);
}

TEST_CASE("partial-sum verdicts surface through the command line") {
    const auto classify = [&](const char* r_text) {
        const CliResult r = invoke({"weyl", "classify", "--measure", "geronimus_mu", "--z", "0.5",
                                    "--r", r_text, "--n", "128"});
        REQUIRE(r.code == 0);
        return json::parse(r.out).at("verdict").get<std::string>();
    };
    CHECK(classify("0.5") == "square_summable");
    CHECK(classify("0.6") == "divergent");

    const CliResult rotation = invoke({"weyl", "rotation", "--measure", "geronimus_mu",
                                       "--zeta-const", "0.3pi", "--z", "0.5", "--r", "0.5",
                                       "--n", "64"});
    CHECK(rotation.code == 0);
    const json j = json::parse(rotation.out);
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("max_abs_diff").get<double>() <= 1e-13);
}
