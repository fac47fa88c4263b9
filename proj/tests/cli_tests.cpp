// Integration tests for the command-line tool. argv[1] is the binary path.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "photoncorr/geometry.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int g_failures = 0;
std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = "\"" + g_binary + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        throw std::runtime_error("popen failed for: " + cmd);
    }
    RunResult result;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        result.output.append(buf, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

void run_test(const std::string& name, const std::function<void()>& body) {
    try {
        body();
        std::cout << "[PASS] " << name << "\n";
    } catch (const std::exception& e) {
        std::cout << "[FAIL] " << name << ": " << e.what() << "\n";
        ++g_failures;
    }
}

void expect(bool condition, const std::string& message) {
    if (!condition) {
        throw std::runtime_error(message);
    }
}

void expect_close(double actual, double expected, double tol, const std::string& message) {
    if (!(std::abs(actual - expected) <= tol)) {
        throw std::runtime_error(message + ": expected " + std::to_string(expected) + ", got " +
                                 std::to_string(actual));
    }
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    expect(static_cast<bool>(in), "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_path(const std::string& name) {
    return fs::temp_directory_path() / ("photoncorr_cli_test_" + std::to_string(getpid()) + "_" + name);
}

void test_sweep_csv_stdout() {
    const RunResult r = run_cli("sweep --n 2 --m 2 --kd pi --points 201");
    expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    const auto lines = split_lines(r.output);
    expect(lines.size() == 202, "expected 202 lines, got " + std::to_string(lines.size()));
    expect(lines[0] == "theta2,g_value,g_normalized", "bad header: " + lines[0]);
    // grid center lands exactly on theta2 = 0 where the peak value is 4
    expect(lines[101] == "0,4,1", "bad central row: " + lines[101]);

    // ten emitters, tenth order: the normalized column still peaks at 1 at zero
    const RunResult big = run_cli("sweep --n 10 --m 10 --kd pi --points 201");
    expect(big.exit_code == 0, "exit code " + std::to_string(big.exit_code));
    const auto big_lines = split_lines(big.output);
    expect(big_lines[101].substr(0, 2) == "0,", "N=10 central row theta");
    expect(big_lines[101].substr(big_lines[101].rfind(',')) == ",1", "N=10 central row peak");
    for (std::size_t i = 1; i < big_lines.size(); ++i) {
        if (i == 101) {
            continue;
        }
        const std::string tail = big_lines[i].substr(big_lines[i].rfind(',') + 1);
        expect(std::stod(tail) < 1.0, "off-center normalized value should stay below 1");
    }
}

void test_sweep_output_is_reproducible() {
    const fs::path a = temp_path("a.csv");
    const fs::path b = temp_path("b.csv");
    const std::string args = " --n 3 --m 2 --kd 2.5 --theta1 0.2 --points 301 --output ";
    expect(run_cli("sweep" + args + a.string()).exit_code == 0, "first run failed");
    expect(run_cli("sweep" + args + b.string()).exit_code == 0, "second run failed");
    const std::string content_a = read_file(a);
    expect(content_a == read_file(b), "outputs differ between identical runs");
    expect(content_a.substr(0, 28) == "theta2,g_value,g_normalized\n", "bad file header");

    const json meta = json::parse(read_file(a.string() + ".meta.json"));
    expect(meta.at("n") == 3, "meta n");
    expect(meta.at("m") == 2, "meta m");
    expect_close(meta.at("kd").get<double>(), 2.5, 1e-15, "meta kd");
    expect_close(meta.at("theta1").get<double>(), 0.2, 1e-15, "meta theta1");
    expect(meta.at("route") == "closed_form", "meta route");
    expect(meta.at("points") == 301, "meta points");
    expect(meta.at("seed") == 42, "meta seed");
    expect(meta.at("tool_version").is_string(), "meta tool_version");

    fs::remove(a);
    fs::remove(b);
    fs::remove(a.string() + ".meta.json");
    fs::remove(b.string() + ".meta.json");
}

void test_sweep_json_format() {
    const RunResult r = run_cli("sweep --n 4 --m 4 --points 101 --format json");
    expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    const json doc = json::parse(r.output);
    expect(doc.at("meta").at("n") == 4, "meta n");
    expect(doc.at("theta2").size() == 101, "theta2 length");
    expect(doc.at("g_value").size() == 101, "g_value length");
    expect(doc.at("g_normalized").size() == 101, "g_normalized length");
    expect_close(doc.at("g_normalized")[50].get<double>(), 1.0, 0.0, "central normalized value");
}

void test_fwhm_and_kd_tokens() {
    const RunResult r = run_cli("fwhm --n 10 --kd pi");
    expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    const json doc = json::parse(r.output);
    expect_close(doc.at("predicted").get<double>(), 0.2, 1e-12, "predicted width at kd = pi");
    expect(doc.at("relative_error").get<double>() < 0.15, "measured width off by >= 15%");

    const json doubled = json::parse(run_cli("fwhm --n 10 --kd 2pi").output);
    expect_close(doubled.at("predicted").get<double>(), 0.1, 1e-12, "predicted width at kd = 2pi");

    const json decimal = json::parse(run_cli("fwhm --n 10 --kd 3.14159265358979323846").output);
    expect_close(decimal.at("predicted").get<double>(), 0.2, 1e-12, "kd as a decimal");
}

void test_visibility() {
    const RunResult r = run_cli("visibility --n 10 --m 2");
    expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    const json doc = json::parse(r.output);
    expect_close(doc.at("predicted").get<double>(), 1.0 / 2.6, 1e-12, "predicted visibility");
    expect_close(doc.at("measured").get<double>(), 1.0 / 2.6, 1e-3, "measured visibility");
}

void test_evolve_heralds_w_state() {
    const RunResult r = run_cli("evolve --n 4 --detections 0,0,0");
    expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    const json doc = json::parse(r.output);
    expect_close(doc.at("overlap_sq_w_state").get<double>(), 1.0, 1e-10, "W overlap");
    expect_close(doc.at("overlap_sq_heralded_w").get<double>(), 1.0, 1e-10, "heralded overlap");
    expect_close(doc.at("norm_sq").get<double>(), 1.0, 1e-12, "norm");
    expect(doc.at("state").at("amplitudes").size() == 4, "amplitude count");

    // off-axis heralding: the phase-carrying target matches, the plain W state does not
    const json tilted = json::parse(run_cli("evolve --n 3 --kd 2.0 --detections 0.4,0.4").output);
    expect_close(tilted.at("overlap_sq_heralded_w").get<double>(), 1.0, 1e-10,
                 "tilted heralded overlap");
    expect(tilted.at("overlap_sq_w_state").get<double>() < 0.999, "plain W should not match");
}

void test_verify() {
    const fs::path out = temp_path("verify.json");
    const RunResult r = run_cli("verify --nmax 5 --trials 20 --seed 7 --output " + out.string());
    expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    const json doc = json::parse(read_file(out));
    expect(doc.at("pass") == true, "verification should pass");
    expect(doc.at("seed") == 7, "seed echo");
    expect(doc.at("trials") == 20, "trials echo");
    expect(doc.at("max_rel_discrepancy").get<double>() < 1e-8, "discrepancy under tolerance");
    expect(doc.at("worst").contains("angles"), "worst tuple recorded");
    fs::remove(out);
}

void test_usage_errors_exit_2() {
    expect(run_cli("").exit_code == 2, "missing subcommand");
    expect(run_cli("sweep --n 2 --m 5").exit_code == 2, "m > n");
    expect(run_cli("sweep --n 2 --kd nope").exit_code == 2, "bad kd token");
    expect(run_cli("sweep --n 2 --kd 0").exit_code == 2, "kd = 0");
    expect(run_cli("sweep --n 2 --route bogus").exit_code == 2, "bad route");
    expect(run_cli("evolve --n 3 --detections 0,0,0").exit_code == 2, "too many detections");
    expect(run_cli("visibility --n 1").exit_code == 2, "visibility needs n >= 2");
    expect(run_cli("--help").exit_code == 0, "--help should exit 0");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-photoncorr-binary>\n";
        return 1;
    }
    g_binary = argv[1];

    run_test("sweep: CSV on stdout", test_sweep_csv_stdout);
    run_test("sweep: byte-identical files + metadata sidecar", test_sweep_output_is_reproducible);
    run_test("sweep: json format", test_sweep_json_format);
    run_test("fwhm: prediction, measurement, kd tokens", test_fwhm_and_kd_tokens);
    run_test("visibility: prediction vs measurement", test_visibility);
    run_test("evolve: heralded W state", test_evolve_heralds_w_state);
    run_test("verify: route agreement report", test_verify);
    run_test("usage errors exit with 2", test_usage_errors_exit_2);

    if (g_failures != 0) {
        std::cout << g_failures << " test(s) failed\n";
    }
    return g_failures;
}
