#include <CLI11.hpp>

#include "minsurf/catalog.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/hopf.hpp"
#include "minsurf/scene.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace minsurf;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Scene scene_from_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f.good()) throw SceneError("config", "$", "cannot read scene file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_scene(ss.str());
}

// Resolve the surface either from --scene or from a catalog name.
Scene resolve_surface(const std::string& scene_path, const std::string& name) {
    if (!scene_path.empty()) return scene_from_file(scene_path);
    if (name.empty())
        throw SceneError("config", "$", "give a catalog surface name or --scene <file>");
    Scene s;
    s.entry = catalog_lookup(name);
    return s;
}

Complex parse_complex_pair(const std::string& text, const char* what) {
    double re = 0, im = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) != 2)
        throw SceneError("config", "$", std::string("cannot parse ") + what + " '" + text +
                                            "' (expected re,im)");
    return Complex(re, im);
}

double generator_radius_of(const AnnulusDomain& dom) {
    if (dom.boundary_circle) return *dom.boundary_circle;
    if (dom.r_inner > 0.0 && std::isfinite(dom.r_outer))
        return std::sqrt(dom.r_inner * dom.r_outer);
    if (dom.r_inner > 0.0) return 2.0 * dom.r_inner;
    return std::isfinite(dom.r_outer) ? dom.r_outer / 2.0 : 1.0;
}

const char* status_word(VerificationOutcome::Status s) {
    switch (s) {
    case VerificationOutcome::Status::Pass: return "PASS";
    case VerificationOutcome::Status::Fail: return "FAIL";
    case VerificationOutcome::Status::Indeterminate: return "INDETERMINATE";
    }
    return "?";
}

int cmd_verify(const std::string& scene_path, const std::string& out_dir,
               const VerifyConfig& cfg) {
    Scene scene = scene_from_file(scene_path);
    if (!out_dir.empty()) scene.output = out_dir;
    auto outcomes = run_verification(scene, cfg);
    bool all_pass = true;
    for (const auto& o : outcomes) {
        std::cout << status_word(o.status) << "  " << o.id;
        for (const auto& [k, v] : o.measured) std::cout << "  " << k << "=" << fmt(v);
        if (!o.note.empty()) std::cout << "  (" << o.note << ")";
        std::cout << "\n";
        all_pass = all_pass && o.passed();
    }
    std::cout << "report: " << (fs::path(scene.output) / "report.json").string() << "\n";
    return all_pass ? 0 : 1;
}

int cmd_mesh(const std::string& scene_path, const std::string& name, const std::string& out_dir,
             int n_r, int n_theta) {
    Scene scene = resolve_surface(scene_path, name);
    const std::string obj = scene.entry.plane ? export_mesh(*scene.entry.plane, n_r, n_theta)
                                              : export_mesh(*scene.entry.wd, n_r, n_theta);
    std::string stem = scene.entry.name;
    for (char& c : stem)
        if (c == ':') c = '-';
    const fs::path dir = out_dir.empty() ? fs::path("out") : fs::path(out_dir);
    fs::create_directories(dir);
    const fs::path file = dir / (stem + ".obj");
    std::ofstream f(file, std::ios::binary);
    f << obj;
    std::cout << file.string() << "\n";
    return 0;
}

int cmd_flux(const std::string& scene_path, const std::string& name, int samples) {
    Scene scene = resolve_surface(scene_path, name);
    if (scene.entry.plane)
        throw SceneError("config", "$", "the plane has no Weierstrass data to integrate");
    const WeierstrassData& wd = *scene.entry.wd;
    if (scene.loops.empty())
        scene.loops.emplace("generator", PathSpec::circle(generator_radius_of(wd.domain)));
    std::cout << "loop,fx,fy,fz,method_gap\n";
    for (const auto& [loop_name, loop] : scene.loops) {
        FluxVector fv = flux(wd, loop, samples);
        std::cout << loop_name << ',' << fmt(fv.value.x) << ',' << fmt(fv.value.y) << ','
                  << fmt(fv.value.z) << ',' << fmt(fv.method_gap) << "\n";
    }
    return 0;
}

int cmd_indices(const std::string& scene_path, const std::string& name) {
    Scene scene = resolve_surface(scene_path, name);
    if (scene.entry.plane) {
        std::cout << "totally umbilic: the curvature-line field is undefined everywhere\n";
        return 0;
    }
    const WeierstrassData& wd = *scene.entry.wd;
    HopfDifferential hd = hopf_differential(wd);
    if (!wd.domain.boundary_circle) {
        // no capillary rim: report interior umbilics only
        auto umb = find_umbilics(hd, wd.domain);
        std::cout << "location_re,location_im,order,index\n";
        for (const auto& u : umb)
            std::cout << fmt(u.location.real()) << ',' << fmt(u.location.imag()) << ',' << u.order
                      << ',' << u.rotation_index.str() << "\n";
        return 0;
    }
    const AuditTopology topo = (wd.domain.puncture_at_zero || wd.domain.r_inner > 0.0)
                                   ? AuditTopology::punctured_capillary_disk()
                                   : AuditTopology::capillary_disk();
    IndexAudit audit = index_audit(hd, topo);
    std::cout << "where,location_re,location_im,order,index\n";
    for (const auto& e : audit.entries) {
        const char* where = e.at == IndexEntry::At::Interior
                                ? "interior"
                                : (e.at == IndexEntry::At::Puncture ? "puncture" : "infinity");
        std::cout << where << ',' << fmt(e.location.real()) << ',' << fmt(e.location.imag()) << ','
                  << e.order << ',' << e.index.str() << "\n";
    }
    std::cout << "sum " << audit.index_sum.str() << ", expected " << audit.expected.str() << ", "
              << (audit.pass ? "PASS" : (audit.indeterminate ? "INDETERMINATE" : "FAIL")) << "\n";
    return audit.pass ? 0 : 1;
}

int cmd_trace(const std::string& scene_path, const std::string& name, const std::string& start,
              const std::string& branch_name, double length, double step,
              const std::string& out_file) {
    Scene scene = resolve_surface(scene_path, name);
    if (scene.entry.plane)
        throw SceneError("config", "$", "the plane is totally umbilic; there is nothing to trace");
    const Complex z0 = parse_complex_pair(start, "--start");
    const CurvatureBranch branch =
        branch_name == "second" ? CurvatureBranch::Second : CurvatureBranch::First;
    if (length <= 0.0) length = 2.0 * M_PI * std::max(1e-3, std::abs(z0));
    if (step <= 0.0) step = 0.005 * std::max(1e-3, std::abs(z0));

    TraceResult tr = trace_line_of_curvature(*scene.entry.wd, z0, branch, length, step);
    std::ostringstream body;
    body << "i,re,im\n";
    for (size_t i = 0; i < tr.points.size(); ++i)
        body << i << ',' << fmt(tr.points[i].real()) << ',' << fmt(tr.points[i].imag()) << "\n";
    const char* stop = tr.stop == TraceStop::Completed
                           ? "completed"
                           : (tr.stop == TraceStop::DomainBoundary ? "domain-boundary"
                                                                   : "umbilic-proximity");
    if (out_file.empty()) {
        std::cout << body.str();
        std::cout << "# stop: " << stop << ", chart length " << fmt(tr.length) << "\n";
    } else {
        std::ofstream f(out_file, std::ios::binary);
        f << body.str();
        std::cout << out_file << " (" << tr.points.size() << " points, stop: " << stop << ")\n";
    }
    return 0;
}

int cmd_curvature(const std::string& scene_path, const std::string& name,
                  const std::string& sphere_arg, int samples) {
    Scene scene = resolve_surface(scene_path, name);
    if (scene.entry.plane)
        throw SceneError("config", "$",
                         "the plane has zero curvature everywhere; use contact-angle checks");
    const WeierstrassData& wd = *scene.entry.wd;
    if (!wd.domain.boundary_circle)
        throw SceneError("config", "$", "the surface has no boundary circle to sample");

    SphereSpec sphere;
    if (!sphere_arg.empty()) {
        double cx, cy, cz, r;
        if (std::sscanf(sphere_arg.c_str(), "%lf,%lf,%lf,%lf", &cx, &cy, &cz, &r) != 4 || r <= 0)
            throw SceneError("config", "$",
                             "cannot parse --sphere '" + sphere_arg + "' (expected cx,cy,cz,r)");
        sphere = SphereSpec{Vec3{cx, cy, cz}, r};
    } else if (!scene.spheres.empty()) {
        sphere = scene.spheres.begin()->second;
    } else if (scene.entry.name == "critical-catenoid") {
        sphere = make_critical_catenoid().sphere;
    }

    BoundaryCurvatureReport rep =
        boundary_curvatures(wd, *wd.domain.boundary_circle, samples, sphere);
    std::cout << "theta,kappa_g_frenet,kappa_g_data,kappa_n,alpha,beta,lambda\n";
    for (const auto& s : rep.samples)
        std::cout << fmt(s.theta) << ',' << fmt(s.kappa_g_frenet) << ',' << fmt(s.kappa_g_data)
                  << ',' << fmt(s.kappa_n) << ',' << fmt(s.alpha) << ',' << fmt(s.beta) << ','
                  << fmt(s.lambda) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal-surface toolkit: Weierstrass data, curvature-line fields, "
                 "flux, index audits, meshes"};
    app.require_subcommand(1);

    std::string scene_path, name, out_dir, start, branch = "first", sphere_arg, out_file;
    int samples = 0, n_r = 16, n_theta = 64;
    double tol = 0.0, length = 0.0, step = 0.0;
    std::string angle_convention = "normal";

    auto add_surface_opts = [&](CLI::App* cmd, bool positional_name) {
        cmd->add_option("--scene", scene_path, "scene JSON file");
        if (positional_name) cmd->add_option("name", name, "catalog surface name");
    };

    CLI::App* verify = app.add_subcommand("verify", "run the checks of a scene");
    verify->add_option("--scene", scene_path, "scene JSON file")->required();
    verify->add_option("--out", out_dir, "report directory (overrides the scene)");
    verify->add_option("--samples", samples, "boundary/grid sample count override");
    verify->add_option("--tol", tol, "override contact-angle and flux-gap tolerances");
    verify->add_option("--angle-convention", angle_convention,
                       "report angles as measured (normal) or as pi minus (supplement)")
        ->check(CLI::IsMember({"normal", "supplement"}));

    CLI::App* mesh = app.add_subcommand("mesh", "export a Wavefront OBJ grid");
    add_surface_opts(mesh, true);
    mesh->add_option("--out", out_dir, "output directory (default out/)");
    mesh->add_option("--nr", n_r, "radial rings (default 16)");
    mesh->add_option("--ntheta", n_theta, "angular columns (default 64)");

    CLI::App* fluxc = app.add_subcommand("flux", "flux table for the scene loops");
    add_surface_opts(fluxc, true);
    fluxc->add_option("--samples", samples, "quadrature samples (default 2048)");

    CLI::App* indices = app.add_subcommand("indices", "umbilic rotation-index audit");
    add_surface_opts(indices, true);

    CLI::App* trace = app.add_subcommand("trace", "trace a line of curvature");
    add_surface_opts(trace, true);
    trace->add_option("--start", start, "start point re,im")->required();
    trace->add_option("--branch", branch, "first or second principal direction")
        ->check(CLI::IsMember({"first", "second"}));
    trace->add_option("--length", length, "chart arclength budget");
    trace->add_option("--step", step, "integration step");
    trace->add_option("--out", out_file, "write the polyline CSV here");

    CLI::App* curva = app.add_subcommand("curvature", "boundary curvature decomposition");
    add_surface_opts(curva, true);
    curva->add_option("--sphere", sphere_arg, "reference sphere cx,cy,cz,r");
    curva->add_option("--samples", samples, "boundary samples (default 512)");

    CLI::App* catalog = app.add_subcommand("catalog", "catalog operations");
    catalog->require_subcommand(1);
    CLI::App* list = catalog->add_subcommand("list", "list the named surfaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& [pattern, text] : catalog_descriptions())
                std::cout << pattern << "\n    " << text << "\n";
            return 0;
        }
        if (verify->parsed()) {
            VerifyConfig cfg;
            if (samples > 0) {
                cfg.boundary_samples = samples;
                cfg.grid_samples = samples;
                cfg.flux_samples = std::max(64, 4 * samples);
            }
            if (tol > 0.0) {
                cfg.tol_angle_dev = tol;
                cfg.tol_flux_gap = tol;
            }
            cfg.angle_supplement = angle_convention == "supplement";
            return cmd_verify(scene_path, out_dir, cfg);
        }
        if (mesh->parsed()) return cmd_mesh(scene_path, name, out_dir, n_r, n_theta);
        if (fluxc->parsed()) return cmd_flux(scene_path, name, samples > 0 ? samples : 2048);
        if (indices->parsed()) return cmd_indices(scene_path, name);
        if (trace->parsed())
            return cmd_trace(scene_path, name, start, branch, length, step, out_file);
        if (curva->parsed())
            return cmd_curvature(scene_path, name, sphere_arg, samples > 0 ? samples : 512);
    } catch (const SceneError& e) {
        std::cerr << "configuration error [" << e.code << "] " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
