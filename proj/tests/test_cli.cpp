#include <doctest.h>

#include "kap/cli.hpp"
#include "kap/pillowcase.hpp"
#include "kap/repsys.hpp"
#include "kap/svg.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

using namespace kap;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << s;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("kap-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("cli apoly writes deterministic JSON") {
    TempDir dir;
    auto out = dir.file("a.json");
    CHECK(cli::run({"apoly", "3/1", "--json", out}) == 0);
    std::string first = slurp(out);
    CHECK(first.find("a_poly") != std::string::npos);
    CHECK(cli::run({"apoly", "3/1", "--json", out}) == 0);
    CHECK(slurp(out) == first);
}

TEST_CASE("cli exit codes") {
    // usage errors
    CHECK(cli::run({"apoly", "4/1"}) == 2);
    CHECK(cli::run({"apoly", "nonsense"}) == 2);
    CHECK(cli::run({"definitely-not-a-subcommand"}) == 2);
    // verdict failure: unknot fails the slice property
    TempDir dir;
    auto out = dir.file("unknot.json");
    CHECK(cli::run({"apoly", "1/1", "--json", out}) == 0);
    CHECK(cli::run({"slices", out, "--n", "16", "--tol", "1e-8"}) == 1);
    // and the trefoil passes
    auto tref = dir.file("tref.json");
    CHECK(cli::run({"apoly", "3/1", "--json", tref}) == 0);
    CHECK(cli::run({"slices", tref, "--n", "16", "--tol", "1e-8"}) == 0);
    // bounds checking
    CHECK(cli::run({"slices", tref, "--n", "4"}) == 2);
    CHECK(cli::run({"pillowcase", "3/1", "--n", "200001"}) == 2);
}

TEST_CASE("cli pillowcase / validate round trip") {
    TempDir dir;
    auto csv = dir.file("pillow.csv");
    auto apoly_json = dir.file("a.json");
    CHECK(cli::run({"pillowcase", "3/1", "--n", "45", "--tol", "1e-10", "--csv", csv}) == 0);
    std::string first = slurp(csv);
    CHECK(cli::run({"pillowcase", "3/1", "--n", "45", "--tol", "1e-10", "--csv", csv}) == 0);
    CHECK(slurp(csv) == first); // byte identical rerun
    CHECK(cli::run({"apoly", "3/1", "--json", apoly_json}) == 0);
    CHECK(cli::run({"validate", apoly_json, csv}) == 0);
}

TEST_CASE("cli plan / certify / critical on a synthetic set") {
    TempDir dir;
    auto csv = dir.file("set.csv");
    // synthetic set: abelian samples plus two off-line points and mirrors
    PillowSet s;
    {
        std::vector<PillowPoint> pts;
        for (int k = 0; k < 36; ++k) {
            PillowPoint p;
            p.theta = 2 * kPi * k / 36;
            p.eta = 0;
            pts.push_back(p);
        }
        auto add = [&](double th, double et) {
            PillowPoint p;
            p.theta = wrap_2pi(th);
            p.eta = wrap_2pi(et);
            pts.push_back(p);
        };
        add(0.3, 1.0);
        add(-0.3, -1.0);
        add(2.0, 4.0);
        add(-2.0, -4.0);
        s = PillowSet::from_points(std::move(pts), 1e-4, "synthetic");
    }
    spit(csv, pillowset_to_csv(s));
    auto g1 = dir.file("g1.json"), g2 = dir.file("g2.json");
    CHECK(cli::run({"plan", "--avoid", "--set", csv, "--delta", "1e-4", "--g1-out", g1,
                    "--g2-out", g2}) == 0);
    CHECK(cli::run({"certify", "--set", csv, "--g1", g1, "--g2", g2, "--delta", "1e-4"}) ==
          0);
    CHECK(cli::run({"critical", "--p1", csv, "--p2", csv, "--g1", g1, "--g2", g2, "--tol",
                    "1e-4"}) == 0);
    // slice-path planner end to end on the unknot
    auto g = dir.file("g.json");
    CHECK(cli::run({"plan", "--knot", "1/1", "--eta0", "4.712", "--n", "36", "--g-out",
                    g}) == 0);
    CHECK(slurp(g).find("knots") != std::string::npos);
    // blocked on a trefoil slice angle picked from the image
    auto rk = compute_pillowcase(parse_knot_spec("3/1"), 90, 1e-10);
    double eta0 = -1;
    for (const auto& p : rk.points)
        if (p.eta >= kPi && circ_dist(p.eta, kPi) > 0.2) eta0 = p.eta;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", eta0);
    CHECK(cli::run({"plan", "--knot", "3/1", "--eta0", buf, "--n", "90", "--g-out", g}) ==
          1);
}

TEST_CASE("cli render: structure, determinism, corridor geometry") {
    TempDir dir;
    auto csv = dir.file("empty.csv");
    spit(csv, "");
    auto svg = dir.file("out.svg");
    CHECK(cli::run({"render", csv, "-o", svg}) == 0);
    std::string body = slurp(svg);
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("theta") != std::string::npos);
    CHECK(body.find("pi/2") != std::string::npos);
    CHECK(cli::run({"render", csv, "-o", svg}) == 0);
    CHECK(slurp(svg) == body);

    // trefoil with planner overlay: the graph polyline stays inside the band
    auto pcsv = dir.file("p.csv");
    CHECK(cli::run({"pillowcase", "1/1", "--n", "36", "--csv", pcsv}) == 0);
    auto g = dir.file("g.json");
    CHECK(cli::run({"plan", "--knot", "1/1", "--eta0", "4.2", "--n", "36", "--g-out", g}) ==
          0);
    auto svg2 = dir.file("overlay.svg");
    CHECK(cli::run({"render", pcsv, "-o", svg2, "--g", g, "--path-eta0", "4.2",
                    "--corridor", "0.5"}) == 0);
    std::string doc = slurp(svg2);
    // parse corridor rectangles and graph polylines from the emitted geometry
    std::vector<std::array<double, 4>> rects;
    {
        std::regex re("class=\"corridor\" x=\"([0-9.+-]+)\" y=\"([0-9.+-]+)\" "
                      "width=\"([0-9.+-]+)\" height=\"([0-9.+-]+)\"");
        for (auto it = std::sregex_iterator(doc.begin(), doc.end(), re);
             it != std::sregex_iterator(); ++it)
            rects.push_back({std::stod((*it)[1]), std::stod((*it)[2]),
                             std::stod((*it)[3]), std::stod((*it)[4])});
    }
    REQUIRE(!rects.empty());
    std::vector<std::pair<double, double>> graph_pts;
    {
        std::regex re("class=\"graph\"[^>]*points=\"([^\"]*)\"");
        for (auto it = std::sregex_iterator(doc.begin(), doc.end(), re);
             it != std::sregex_iterator(); ++it) {
            std::istringstream is((*it)[1]);
            std::string pair;
            while (is >> pair) {
                auto comma = pair.find(',');
                graph_pts.push_back({std::stod(pair.substr(0, comma)),
                                     std::stod(pair.substr(comma + 1))});
            }
        }
    }
    REQUIRE(!graph_pts.empty());
    int inside = 0;
    for (const auto& [x, y] : graph_pts) {
        for (const auto& r : rects) {
            if (x >= r[0] - 0.5 && x <= r[0] + r[2] + 0.5 && y >= r[1] - 0.5 &&
                y <= r[1] + r[3] + 0.5) {
                ++inside;
                break;
            }
        }
    }
    CHECK(inside == (int)graph_pts.size());
}

TEST_CASE("cli config document") {
    TempDir dir;
    auto cfg = dir.file("run.json");
    auto out = dir.file("a.json");
    spit(cfg, std::string("{\"subcommand\": \"apoly\", \"args\": [\"3/1\", \"--json\", \"") +
                  out + "\"]}\n");
    CHECK(cli::run({"--config", cfg}) == 0);
    CHECK(slurp(out).find("a_poly") != std::string::npos);
    spit(cfg, "{\"nonsense\": 1}");
    CHECK(cli::run({"--config", cfg}) == 2);
}
