#pragma once

#include "minsurf/catalog.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/path.hpp"
#include "minsurf/weierstrass.hpp"

#include <map>
#include <string>
#include <vector>

namespace minsurf {

/// Tunables shared by every check, echoed verbatim into each report so a
/// pass/fail decision can be reproduced from the report alone.
struct VerifyConfig {
    int boundary_samples = 512; // beta, contact angle, boundary curvature
    int grid_samples = 200;     // f-constancy grid
    int flux_samples = 2048;    // conormal quadrature
    int winding_samples = 4096;
    int curvature_theta_n = 256; // total-curvature angular grid
    double tc_r_outer = 50.0;    // truncation for unbounded domains
    double tc_r_inner = 0.02;    //   (inner radius used when punctured)
    double tol_period = 1e-10;
    double tol_beta = 1e-12;
    double tol_flux_gap = 1e-6;
    double tol_angle_dev = 1e-6;       // constancy of the contact angle
    double tol_plane_angle_dev = 1e-12;
    double tol_total_curvature = 0.02; // relative
    double tol_trace_drift = 1e-6;
    double tol_trace_closure = 1e-4;
    bool angle_supplement = false; // report pi - angle instead
};

struct Scene {
    CatalogEntry entry;
    std::map<std::string, PathSpec> loops;
    std::map<std::string, SphereSpec> spheres;
    // check ids, optionally suffixed ":loopname" / ":spherename"
    std::vector<std::string> checks;
    std::string output = "out";
};

struct VerificationOutcome {
    enum class Status { Pass, Fail, Indeterminate };
    std::string id;
    Status status = Status::Pass;
    std::vector<std::pair<std::string, double>> measured;
    std::vector<std::pair<std::string, double>> tolerances;
    std::string note;
    double wall_time_ms = 0.0; // never serialized: reports stay byte-identical

    bool passed() const { return status == Status::Pass; }
};

/// The seven check identifiers accepted in Scene::checks.
const std::vector<std::string>& known_checks();

/// Parse and fully resolve a scene document (catalog names expanded,
/// references checked).  Violations raise SceneError with a JSON-path
/// location and one of the codes "malformed-json", "unknown-name",
/// "dangling-reference", "schema".
Scene load_scene(const std::string& json_text);

/// Execute every check in the scene and write <output>/report.json plus
/// one CSV per check.  Outcomes come back ordered by check id.
std::vector<VerificationOutcome> run_verification(const Scene& scene,
                                                  const VerifyConfig& config = {});

/// Wavefront OBJ on an (n_r x n_theta) log-radial grid with vertex
/// normals; the angular seam reuses indices instead of duplicating
/// vertices.  Grid nodes must avoid poles of the data (MeshingError
/// otherwise, naming the bad point).
std::string export_mesh(const WeierstrassData& wd, int n_r, int n_theta);
std::string export_mesh(const PlaneChart& plane, int n_r, int n_theta);

} // namespace minsurf
