#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minsurf/errors.hpp"
#include "minsurf/scene.hpp"
#include "minsurf/weierstrass.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace minsurf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string scene_code(const std::string& text) {
    try {
        load_scene(text);
    } catch (const SceneError& e) {
        return e.code + " @ " + e.location;
    }
    return "no error";
}

struct ParsedObj {
    std::vector<Vec3> v, vn;
    std::vector<std::vector<int>> faces;
};

ParsedObj parse_obj(const std::string& text) {
    ParsedObj out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v" || tag == "vn") {
            Vec3 p;
            ls >> p.x >> p.y >> p.z;
            (tag == "v" ? out.v : out.vn).push_back(p);
        } else if (tag == "f") {
            std::vector<int> ids;
            std::string tok;
            while (ls >> tok) ids.push_back(std::stoi(tok.substr(0, tok.find('/'))));
            out.faces.push_back(ids);
        }
    }
    return out;
}

const char* kCatenoidScene = R"({
  "surface": "catenoid",
  "loops": {"neck": {"circle": {"r": 0.5}}, "square": {"polyline": [[0.4,0.4],[-0.4,0.4],[-0.4,-0.4],[0.4,-0.4]]}},
  "spheres": {"cap": {"center": [1.0, 0.0, -0.8], "radius": 1.2806248474865697}},
  "checks": ["period-conditions", "flux-table", "contact-angle", "beta-on-boundary",
             "index-audit", "curvature-line-closure"],
  "output": "scene-out/catenoid"
})";

} // namespace

TEST_SUITE("scene loading") {
    TEST_CASE("catalog names expand") {
        Scene s = load_scene(R"({"surface": "catenoid", "loops": {"neck": {"circle": {"r": 0.5}}}})");
        CHECK(s.entry.name == "catenoid");
        REQUIRE(s.entry.wd.has_value());
        CHECK(s.entry.expected.f_constant == Complex(1.0));
        CHECK(s.loops.count("neck") == 1);
        CHECK(s.output == "out");

        Scene pair = load_scene(R"({"surface": "enneper-pair:2"})");
        CHECK(pair.entry.name == "enneper-pair:2");
    }

    TEST_CASE("explicit weierstrass data") {
        Scene s = load_scene(R"({"surface": {
            "g": {"num": [[0,0],[1,0]]},
            "h": {"num": [[0,1]], "den": [[0,0],[1,0]]},
            "domain": {"puncture": true},
            "basepoint": [1, 0]
        }})");
        REQUIRE(s.entry.wd.has_value());
        CHECK(s.entry.wd->g.num().degree() == 1);
        CHECK(s.entry.wd->domain.puncture_at_zero);
        // this datum deliberately breaks the height period
        ValidationReport rep = validate(*s.entry.wd);
        CHECK(!rep.ok());
        CHECK(rep.height_defect == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
    }

    TEST_CASE("distinct error codes with locations") {
        CHECK(scene_code("{ not json") == "malformed-json @ $");
        CHECK(scene_code(R"({"surface": "helicoid"})") == "unknown-name @ $.surface");
        CHECK(scene_code(R"({"surface": {"g": {"num": [[0,0],[1,0]]},
                                          "h": {"num": [[1,0]], "den": []}}})") ==
              "schema @ $.surface.h.den");
        CHECK(scene_code(R"({"surface": "catenoid", "checks": ["flux-table:nosuch"]})") ==
              "dangling-reference @ $.checks[0]");
        CHECK(scene_code(R"({"surface": "catenoid",
                             "spheres": {"b": {"center": [0,0,0], "radius": 1}},
                             "checks": ["contact-angle:wrong"]})") ==
              "dangling-reference @ $.checks[0]");
        CHECK(scene_code(R"({"surface": "catenoid", "checks": ["bogus"]})") ==
              "unknown-check @ $.checks[0]");
    }

    TEST_CASE("schema violations") {
        CHECK(scene_code(R"({"loops": {}})") == "schema @ $.surface");
        CHECK(scene_code(R"({"surface": "catenoid", "loops": {"l": {"circle": {"r": -1}}}})") ==
              "schema @ $.loops.l.circle.r");
        CHECK(scene_code(R"({"surface": "catenoid", "loops": {"l": {"polyline": [[0,0],[1,0]]}}})") ==
              "schema @ $.loops.l.polyline");
        CHECK(scene_code(R"({"surface": "catenoid", "spheres": {"s": {"center": [0,0,0]}}})") ==
              "schema @ $.spheres.s.radius");
        CHECK(scene_code(R"({"surface": "plane", "checks": ["beta-on-boundary"]})") ==
              "schema @ $.checks[0]");
        CHECK(scene_code(R"({"surface": "enneper:1", "checks": ["beta-on-boundary"]})") ==
              "schema @ $.checks[0]"); // no boundary circle in the domain
        CHECK(scene_code(R"({"surface": "catenoid", "checks": ["contact-angle"]})") ==
              "schema @ $.checks[0]"); // no spheres to measure against
        CHECK(scene_code(R"({"surface": {"g": {"num": [[0,0],[1,0]]},
                                          "h": {"num": [[1,0]]},
                                          "domain": {"r_inner": 2, "r_outer": 1}}})") ==
              "schema @ $.surface.domain.r_outer");
    }
}

TEST_SUITE("verification runs") {
    TEST_CASE("catenoid scene passes all seven checks") {
        Scene scene = load_scene(kCatenoidScene);
        auto outcomes = run_verification(scene);
        REQUIRE(outcomes.size() == 6);
        for (const auto& o : outcomes) {
            CAPTURE(o.id);
            CAPTURE(o.note);
            CHECK(o.passed());
            CHECK(o.wall_time_ms >= 0.0);
        }
        // ordered by id
        for (size_t i = 1; i < outcomes.size(); ++i) CHECK(outcomes[i - 1].id <= outcomes[i].id);

        // artifacts on disk
        CHECK(fs::exists("scene-out/catenoid/report.json"));
        for (const char* csv :
             {"period-conditions.csv", "flux-table.csv", "contact-angle.csv",
              "beta-on-boundary.csv", "index-audit.csv", "curvature-line-closure.csv"})
            CHECK(fs::exists(fs::path("scene-out/catenoid") / csv));

        const std::string report = slurp("scene-out/catenoid/report.json");
        CHECK(report.find("\"schema\": \"1\"") != std::string::npos);
        CHECK(report.find("\"angle_convention\": \"normal\"") != std::string::npos);
        CHECK(report.find("wall") == std::string::npos); // deterministic file

        // determinism: a second run reproduces every byte
        auto again = run_verification(scene);
        CHECK(slurp("scene-out/catenoid/report.json") == report);
        const std::string flux_csv = slurp("scene-out/catenoid/flux-table.csv");
        run_verification(scene);
        CHECK(slurp("scene-out/catenoid/flux-table.csv") == flux_csv);
        CHECK(flux_csv.substr(0, 28) == "loop,fx,fy,fz,method_gap\nnec");
    }

    TEST_CASE("enneper scene: zero flux and total curvature") {
        Scene scene = load_scene(R"({
            "surface": "enneper:1",
            "loops": {"r05": {"circle": {"r": 0.5}}, "r2": {"circle": {"r": 2}}},
            "checks": ["period-conditions", "flux-table", "total-curvature"],
            "output": "scene-out/enneper"
        })");
        auto outcomes = run_verification(scene);
        REQUIRE(outcomes.size() == 3);
        for (const auto& o : outcomes) {
            CAPTURE(o.id);
            CHECK(o.passed());
        }
        for (const auto& o : outcomes)
            if (o.id == "flux-table")
                for (const auto& [k, v] : o.measured)
                    if (k.find(".fz") != std::string::npos) CHECK(std::abs(v) < 1e-10);
        for (const auto& o : outcomes)
            if (o.id == "total-curvature")
                for (const auto& [k, v] : o.measured)
                    if (k == "value") CHECK(v == doctest::Approx(-4.0 * M_PI).epsilon(0.02));
    }

    TEST_CASE("enneper pair scene: neck flux, boundary reality, closure") {
        Scene scene = load_scene(R"({
            "surface": "enneper-pair:2",
            "loops": {"neck": {"circle": {"r": 1.0}}},
            "checks": ["period-conditions", "flux-table", "beta-on-boundary",
                       "index-audit", "curvature-line-closure"],
            "output": "scene-out/pair"
        })");
        auto outcomes = run_verification(scene);
        REQUIRE(outcomes.size() == 5);
        for (const auto& o : outcomes) {
            CAPTURE(o.id);
            CAPTURE(o.note);
            CHECK(o.passed());
        }
        for (const auto& o : outcomes) {
            if (o.id == "flux-table")
                for (const auto& [k, v] : o.measured)
                    if (k == "neck.fz") CHECK(v == doctest::Approx(2.0 * M_PI).epsilon(1e-7));
            if (o.id == "index-audit")
                for (const auto& [k, v] : o.measured) {
                    if (k == "index_sum") CHECK(v == 1.0);
                    if (k == "curvature_line_boundary") CHECK(v == 1.0);
                }
        }
    }

    TEST_CASE("broken period datum fails period-conditions") {
        Scene scene = load_scene(R"({
            "surface": {"g": {"num": [[0,0],[1,0]]},
                        "h": {"num": [[0,1]], "den": [[0,0],[1,0]]},
                        "domain": {"puncture": true}, "basepoint": [1, 0]},
            "checks": ["period-conditions"],
            "output": "scene-out/broken"
        })");
        auto outcomes = run_verification(scene);
        REQUIRE(outcomes.size() == 1);
        CHECK(!outcomes[0].passed());
        bool saw_height = false;
        for (const auto& [k, v] : outcomes[0].measured)
            if (k == "height_defect") {
                saw_height = true;
                CHECK(v == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
            }
        CHECK(saw_height);
    }

    TEST_CASE("plane scene measures the exact contact angle") {
        Scene scene = load_scene(R"({
            "surface": "plane",
            "spheres": {"ball": {"center": [0.5, 0, 0], "radius": 1}},
            "checks": ["contact-angle"],
            "output": "scene-out/plane"
        })");
        auto outcomes = run_verification(scene);
        REQUIRE(outcomes.size() == 1);
        CHECK(outcomes[0].passed());
        for (const auto& [k, v] : outcomes[0].measured) {
            // plane through the origin, sphere center at distance 0.5: the
            // normals meet at acos(-0.5) all along the intersection circle
            if (k == "ball.mean_angle") CHECK(std::abs(v - 2.0 * M_PI / 3.0) < 1e-13);
            if (k == "ball.max_deviation") CHECK(v < 1e-13);
        }

        // reported angle flips under the supplement convention
        VerifyConfig cfg;
        cfg.angle_supplement = true;
        auto supp = run_verification(scene, cfg);
        for (const auto& [k, v] : supp[0].measured)
            if (k == "ball.mean_angle") CHECK(std::abs(v - M_PI / 3.0) < 1e-13);
    }

    TEST_CASE("unknown check id aborts before execution") {
        Scene scene = load_scene(R"({"surface": "catenoid", "output": "scene-out/tmp"})");
        scene.checks.push_back("made-up-check");
        CHECK_THROWS_AS(run_verification(scene), SceneError);
        CHECK(!fs::exists("scene-out/tmp/report.json"));
    }
}

TEST_SUITE("mesh export") {
    TEST_CASE("catenoid grid lies on the profile of revolution") {
        Scene scene = load_scene(R"({"surface": "catenoid"})");
        ParsedObj obj = parse_obj(export_mesh(*scene.entry.wd, 16, 64));
        CHECK(obj.v.size() == 1024);
        CHECK(obj.vn.size() == 1024);
        CHECK(obj.faces.size() == 15 * 64);
        // axis through (1, 0): distance from it equals cosh of the height
        for (const Vec3& p : obj.v) {
            const double rad = std::hypot(p.x - 1.0, p.y);
            CHECK(std::abs(rad - std::cosh(p.z)) < 1e-6);
        }
        // every face references existing vertices; the seam is welded
        int max_id = 0;
        for (const auto& f : obj.faces) {
            CHECK(f.size() == 4);
            for (int id : f) {
                CHECK(id >= 1);
                CHECK(id <= 1024);
                max_id = std::max(max_id, id);
            }
        }
        CHECK(max_id == 1024);
        // normals are unit and outward-consistent
        for (const Vec3& n : obj.vn) CHECK(std::abs(n.norm() - 1.0) < 1e-9);
    }

    TEST_CASE("plane grid is coplanar") {
        CatalogEntry plane = make_plane(Vec3{0.0, 1.0, 1.0}, 0.25);
        ParsedObj obj = parse_obj(export_mesh(*plane.plane, 5, 12));
        CHECK(obj.v.size() == 60);
        for (const Vec3& p : obj.v)
            CHECK(std::abs(p.dot(plane.plane->normal) - 0.25) < 1e-12);
    }

    TEST_CASE("vertex normals agree with finite-difference cross products") {
        Scene scene = load_scene(R"({"surface": "enneper:1"})");
        const WeierstrassData& wd = *scene.entry.wd;
        ParsedObj obj = parse_obj(export_mesh(wd, 8, 32));
        REQUIRE(obj.v.size() == 256);
        const double delta = 1e-4;
        for (size_t idx = 5; idx < obj.v.size(); idx += 17) {
            const int j = int(idx) / 32, k = int(idx) % 32;
            const double r = 1e-3 * std::pow(1.0 / 1e-3, j / 7.0);
            const Complex z = std::polar(r, 2.0 * M_PI * k / 32.0);
            if (std::abs(z) < 10 * delta) continue; // keep the stencil inside the grid scale
            const Vec3 xu = (immerse(wd, z + delta) - immerse(wd, z - delta)) / (2 * delta);
            const Vec3 xv = (immerse(wd, z + Complex(0, delta)) - immerse(wd, z - Complex(0, delta))) /
                            (2 * delta);
            const Vec3 n_fd = xu.cross(xv).normalized();
            CHECK((n_fd - obj.vn[idx]).norm() < 1e-5);
        }
    }

    TEST_CASE("grid through a pole names the bad region") {
        RationalFunction g = RationalFunction::monomial(1);
        RationalFunction h(ComplexPoly::constant(Complex(1.0)),
                           ComplexPoly({Complex(-0.5), Complex(1.0)}));
        WeierstrassData wd(g, h, AnnulusDomain{0.0, 1.0, false, 1.0}, Complex(0.9));
        CHECK_THROWS_AS(export_mesh(wd, 8, 8), MeshingError);
    }

    TEST_CASE("grid bounds are validated") {
        Scene scene = load_scene(R"({"surface": "catenoid"})");
        CHECK_THROWS_AS(export_mesh(*scene.entry.wd, 1, 8), InvalidInput);
        CHECK_THROWS_AS(export_mesh(*scene.entry.wd, 4, 2), InvalidInput);
    }
}
