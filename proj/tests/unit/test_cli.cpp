#include "lozi/cli.hpp"
#include "lozi/export.hpp"
#include "lozi/manifolds.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace lozi;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "lozi");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "lozi_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("curve lists") {
    CHECK(cli::parse_curves("C1..C6") == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(cli::parse_curves("C2,C5") == std::vector<int>{2, 5});
    CHECK(cli::parse_curves("3") == std::vector<int>{3});
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"manifold", "--depth", "x"}).code == 1);
    CHECK(run({"homoclinic", "--format", "svg"}).code == 1);
    CHECK(run({"manifold", "--a", "0.5", "--b", "0.2"}).code == 1);
    CHECK(run({"trace", "--curve", "C7"}).code == 1);
}

TEST_CASE("manifold CSV round-trips") {
    const fs::path stem = scratch("m");
    const Result r = run({"manifold", "--a", "1.46", "--b", "0.86", "--format", "csv", "--out", stem.string()});
    REQUIRE(r.code == 0);
    const fs::path unstable = stem.string() + "_unstable.csv";
    REQUIRE(fs::exists(stem.string() + "_stable.csv"));
    REQUIRE(fs::exists(unstable));
    std::ifstream in(unstable);
    const auto rows = read_arc_csv(in);
    const ManifoldArc arc = unstable_arc(Params(1.46, 0.86), 4);
    REQUIRE(rows.size() == arc.line.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].p == arc.line[i]);
        if (auto it = arc.anchors.find(i); it != arc.anchors.end()) CHECK(rows[i].label == it->second.str());
    }
}

TEST_CASE("manifold SVG") {
    const Result r = run({"manifold", "--a", "1.46", "--b", "0.86", "--depth", "6", "--format", "svg"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("<svg") != std::string::npos);
    CHECK(r.out.find("stroke=\"red\"") != std::string::npos);
    CHECK(r.out.find("stroke=\"blue\"") != std::string::npos);
    CHECK(r.out.find(">Z^2<") != std::string::npos);
    CHECK(r.out.find(">V^-1<") != std::string::npos);
}

TEST_CASE("truncation is reported") {
    const fs::path stem = scratch("t");
    const Result r = run({"manifold", "--a", "1.7", "--b", "0.5", "--depth", "20", "--max-vertices", "200", "--out",
                          stem.string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(stem.string() + "_unstable.csv");
    CHECK(text.find("# truncated=true") != std::string::npos);
}

TEST_CASE("homoclinic reports") {
    SUBCASE("outside") {
        const Result r = run({"homoclinic", "--a", "0.95", "--b", "0.5"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["fundamental"].empty());
        CHECK(j["tangency"]["records"].empty());
    }
    SUBCASE("inside") {
        const Result r = run({"homoclinic", "--a", "1.7", "--b", "0.5"});
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["tangency"]["transversal"].get<int>() > 0);
    }
    SUBCASE("reference pair snapped onto C1") {
        const Result r = run({"homoclinic", "--a", "1.46", "--b", "0.332873", "--snap"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["snapped_on"] == "ZIterOnStableSeg(1)");
        CHECK(std::fabs(j["b"].get<double>() - 0.332873) < 1e-6);
        CHECK(j["tangency"]["transversal"] == 0);
        CHECK(j["tangency"]["other"] == 0);
        bool z2 = false;
        for (const auto& rec : j["tangency"]["records"])
            for (const auto& l : rec["labels"]) z2 = z2 || (l == "Z^2" && rec["flag"] == "Z-orbit");
        CHECK(z2);
    }
}

TEST_CASE("trace CSV") {
    const Result r = run({"trace", "--curve", "C1", "--b-from", "0.01", "--b-to", "0.54", "--step", "0.005"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    double prev_b = -1;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'a') continue;
        std::istringstream ls(line);
        std::string a, b, res;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        std::getline(ls, res, ',');
        CHECK(std::stod(b) > prev_b);
        CHECK(std::fabs(std::stod(res)) < 1e-10);
        prev_b = std::stod(b);
        ++rows;
    }
    CHECK(rows == 107);
}

TEST_CASE("endpoints against the fixture") {
    const Result r = run({"endpoints", "--curves", "C1..C6"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "curve,a_n,b_n,abs_da,abs_db,status");
    int ok = 0;
    while (std::getline(in, line)) ok += line.size() > 3 && line.substr(line.size() - 3) == ",ok";
    CHECK(ok == 6);
    const Result unknown = run({"endpoints", "--curves", "C7"});
    CHECK(unknown.code == 2);
    CHECK(unknown.out.find("no-condition") != std::string::npos);
    // A fixture that disagrees is a verification failure.
    const fs::path dir = scratch("bad_fixture");
    fs::create_directories(dir);
    std::ofstream(dir / "table2_endpoints.csv") << "curve,a_n,b_n\nC1,1.5,0.5\n";
    CHECK(run({"endpoints", "--curves", "C1", "--fixtures", dir.string()}).code == 3);
}

TEST_CASE("verify-tables") {
    const Result r = run({"verify-tables", "--table", "1", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    for (const auto& c : j["checks"]) CHECK(c["status"] == "ok");
}

TEST_CASE("outputs are deterministic") {
    for (std::vector<std::string> args : {std::vector<std::string>{"homoclinic", "--a", "1.7", "--b", "0.5"},
                                          {"trace", "--curve", "C3"},
                                          {"scan", "--na", "4", "--nb", "3", "--format", "json"}}) {
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("config file with flag precedence") {
    const fs::path cfg = scratch("run.ini");
    std::ofstream(cfg) << "a=1.7\nb=0.5\ndepth=6\n";
    const Result from_file = run({"--config", cfg.string(), "homoclinic"});
    REQUIRE(from_file.code == 0);
    auto j = nlohmann::json::parse(from_file.out);
    CHECK(j["a"] == 1.7);
    CHECK(j["depth"] == 6);
    const Result flag = run({"--config", cfg.string(), "homoclinic", "--depth", "4"});
    j = nlohmann::json::parse(flag.out);
    CHECK(j["depth"] == 4);
}

TEST_CASE("scan raster") {
    const Result r = run({"scan", "--a-min", "0.9", "--a-max", "1.7", "--b-min", "0.5", "--b-max", "0.6", "--na", "3",
                          "--nb", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find(",no\n") != std::string::npos);
    CHECK(r.out.find(",yes\n") != std::string::npos);
    const Result svg = run({"scan", "--na", "4", "--nb", "4", "--format", "svg"});
    CHECK(svg.out.find("<rect shape-rendering") != std::string::npos);
}

}
