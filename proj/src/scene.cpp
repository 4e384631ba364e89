#include "minsurf/scene.hpp"

#include "minsurf/errors.hpp"
#include "minsurf/hopf.hpp"
#include "minsurf/quadrature.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace minsurf {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string describe_z(const Complex& z) {
    return "(" + fmt12(z.real()) + ", " + fmt12(z.imag()) + ")";
}

// ---------- JSON -> domain objects, with path-tracked diagnostics ----------

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw SceneError("schema", path, what);
}

const json& expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    return j;
}

double expect_number(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

Complex complex_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) schema_error(path, "expected a [re, im] pair");
    return Complex(expect_number(j[0], path + "[0]"), expect_number(j[1], path + "[1]"));
}

ComplexPoly poly_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array of [re, im] coefficient pairs");
    std::vector<Complex> coeffs;
    coeffs.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        coeffs.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return ComplexPoly(coeffs);
}

RationalFunction rational_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    if (!j.contains("num")) schema_error(path + ".num", "missing coefficient array");
    ComplexPoly num = poly_from_json(j.at("num"), path + ".num");
    ComplexPoly den = ComplexPoly::constant(Complex(1.0));
    if (j.contains("den")) {
        den = poly_from_json(j.at("den"), path + ".den");
        if (den.is_zero())
            schema_error(path + ".den", "denominator must not be the zero polynomial");
    }
    return RationalFunction(num, den);
}

AnnulusDomain domain_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    AnnulusDomain dom;
    if (j.contains("r_inner")) dom.r_inner = expect_number(j.at("r_inner"), path + ".r_inner");
    if (j.contains("r_outer")) dom.r_outer = expect_number(j.at("r_outer"), path + ".r_outer");
    if (j.contains("puncture")) {
        if (!j.at("puncture").is_boolean()) schema_error(path + ".puncture", "expected a boolean");
        dom.puncture_at_zero = j.at("puncture").get<bool>();
    }
    if (j.contains("boundary"))
        dom.boundary_circle = expect_number(j.at("boundary"), path + ".boundary");
    if (dom.r_inner < 0.0) schema_error(path + ".r_inner", "radius must be nonnegative");
    if (!(dom.r_outer > dom.r_inner))
        schema_error(path + ".r_outer", "outer radius must exceed the inner one");
    if (dom.boundary_circle) {
        if (!(*dom.boundary_circle > dom.r_inner) ||
            *dom.boundary_circle > dom.r_outer * (1.0 + 1e-12))
            schema_error(path + ".boundary", "boundary circle must lie inside the annulus");
    }
    return dom;
}

Complex scene_default_basepoint(const AnnulusDomain& dom) {
    if (dom.contains(Complex(1.0))) return Complex(1.0);
    if (std::isfinite(dom.r_outer) && dom.r_inner > 0.0)
        return Complex(std::sqrt(dom.r_inner * dom.r_outer));
    if (std::isfinite(dom.r_outer)) return Complex(dom.r_outer / 2.0);
    return Complex(2.0 * dom.r_inner);
}

CatalogEntry surface_from_json(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return catalog_lookup(j.get<std::string>());
        } catch (const InvalidInput& e) {
            throw SceneError("unknown-name", path, e.what());
        }
    }
    if (!j.is_object()) schema_error(path, "expected a catalog name or a {g, h, ...} object");
    if (!j.contains("g")) schema_error(path + ".g", "missing Gauss map");
    if (!j.contains("h")) schema_error(path + ".h", "missing height-differential density");
    RationalFunction g = rational_from_json(j.at("g"), path + ".g");
    RationalFunction h = rational_from_json(j.at("h"), path + ".h");
    AnnulusDomain dom;
    if (j.contains("domain")) dom = domain_from_json(j.at("domain"), path + ".domain");
    Complex base = j.contains("basepoint")
                       ? complex_from_json(j.at("basepoint"), path + ".basepoint")
                       : scene_default_basepoint(dom);
    CatalogEntry entry;
    entry.name = "custom";
    try {
        entry.wd.emplace(g, h, dom, base);
    } catch (const Error& e) {
        schema_error(path, e.what());
    }
    return entry;
}

PathSpec loop_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    if (j.contains("circle")) {
        const json& c = expect_object(j.at("circle"), path + ".circle");
        if (!c.contains("r")) schema_error(path + ".circle.r", "missing radius");
        const double r = expect_number(c.at("r"), path + ".circle.r");
        if (!(r > 0.0)) schema_error(path + ".circle.r", "radius must be positive");
        Complex center(0.0);
        if (c.contains("center")) center = complex_from_json(c.at("center"), path + ".circle.center");
        return PathSpec::circle(r, center);
    }
    if (j.contains("polyline")) {
        const json& p = j.at("polyline");
        if (!p.is_array() || p.size() < 3)
            schema_error(path + ".polyline", "expected at least three [re, im] vertices");
        std::vector<Complex> pts;
        for (size_t i = 0; i < p.size(); ++i)
            pts.push_back(complex_from_json(p[i], path + ".polyline[" + std::to_string(i) + "]"));
        return PathSpec::polyline(pts, /*closed=*/true);
    }
    schema_error(path, "expected a \"circle\" or \"polyline\" loop");
}

SphereSpec sphere_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    if (!j.contains("center")) schema_error(path + ".center", "missing center");
    const json& c = j.at("center");
    if (!c.is_array() || c.size() != 3) schema_error(path + ".center", "expected [x, y, z]");
    SphereSpec s;
    s.center = Vec3{expect_number(c[0], path + ".center[0]"),
                    expect_number(c[1], path + ".center[1]"),
                    expect_number(c[2], path + ".center[2]")};
    if (!j.contains("radius")) schema_error(path + ".radius", "missing radius");
    s.radius = expect_number(j.at("radius"), path + ".radius");
    if (!(s.radius > 0.0)) schema_error(path + ".radius", "radius must be positive");
    return s;
}

struct CheckRef {
    std::string id;  // bare identifier
    std::string ref; // optional loop/sphere name after ':'
};

CheckRef split_check(const std::string& full) {
    const size_t pos = full.find(':');
    if (pos == std::string::npos) return {full, ""};
    return {full.substr(0, pos), full.substr(pos + 1)};
}

void validate_checks(const Scene& scene, const std::string& base_path) {
    const auto& known = known_checks();
    for (size_t i = 0; i < scene.checks.size(); ++i) {
        const std::string path = base_path + "[" + std::to_string(i) + "]";
        const CheckRef cr = split_check(scene.checks[i]);
        if (std::find(known.begin(), known.end(), cr.id) == known.end())
            throw SceneError("unknown-check", path, "unknown check id '" + cr.id + "'");
        if (!cr.ref.empty()) {
            if (cr.id == "flux-table") {
                if (!scene.loops.count(cr.ref))
                    throw SceneError("dangling-reference", path,
                                     "references loop '" + cr.ref + "' which is not defined");
            } else if (cr.id == "contact-angle") {
                if (!scene.spheres.count(cr.ref))
                    throw SceneError("dangling-reference", path,
                                     "references sphere '" + cr.ref + "' which is not defined");
            } else {
                schema_error(path, "check '" + cr.id + "' does not take a reference");
            }
        }
        if (scene.entry.plane && cr.id != "contact-angle")
            schema_error(path, "check '" + cr.id + "' needs Weierstrass data; "
                               "the plane entry has none");
        if (scene.entry.wd) {
            const bool needs_rim = cr.id == "contact-angle" || cr.id == "beta-on-boundary" ||
                                   cr.id == "index-audit" || cr.id == "curvature-line-closure";
            if (needs_rim && !scene.entry.wd->domain.boundary_circle)
                schema_error(path, "check '" + cr.id + "' needs a boundary circle in the domain");
        }
        if (cr.id == "contact-angle" && cr.ref.empty() && scene.spheres.empty())
            schema_error(path, "contact-angle needs at least one sphere in the scene");
    }
}

// ------------------------------ the checks ------------------------------

using Clock = std::chrono::steady_clock;

VerificationOutcome check_period_conditions(const Scene& scene, const VerifyConfig& cfg) {
    VerificationOutcome out;
    ValidationReport rep = validate(*scene.entry.wd);
    out.measured = {{"period_defect", rep.period_defect},
                    {"height_defect", rep.height_defect},
                    {"regular", rep.regular ? 1.0 : 0.0}};
    out.tolerances = {{"period_defect", cfg.tol_period}, {"height_defect", cfg.tol_period}};
    const bool ok =
        rep.regular && rep.period_defect <= cfg.tol_period && rep.height_defect <= cfg.tol_period;
    out.status = ok ? VerificationOutcome::Status::Pass : VerificationOutcome::Status::Fail;
    if (!rep.problems.empty()) out.note = rep.problems.front();
    return out;
}

VerificationOutcome check_flux_table(const Scene& scene, const VerifyConfig& cfg,
                                     const std::string& only, std::string& csv) {
    VerificationOutcome out;
    std::ostringstream table;
    table << "loop,fx,fy,fz,method_gap\n";
    bool ok = true;
    for (const auto& [name, loop] : scene.loops) {
        if (!only.empty() && name != only) continue;
        FluxVector fv = flux(*scene.entry.wd, loop, cfg.flux_samples);
        table << name << ',' << fmt17(fv.value.x) << ',' << fmt17(fv.value.y) << ','
              << fmt17(fv.value.z) << ',' << fmt17(fv.method_gap) << '\n';
        out.measured.push_back({name + ".fz", fv.value.z});
        out.measured.push_back({name + ".method_gap", fv.method_gap});
        ok = ok && fv.method_gap <= cfg.tol_flux_gap;
    }
    out.tolerances = {{"method_gap", cfg.tol_flux_gap}};
    out.status = ok ? VerificationOutcome::Status::Pass : VerificationOutcome::Status::Fail;
    csv = table.str();
    return out;
}

double reported_angle(double angle, const VerifyConfig& cfg) {
    return cfg.angle_supplement ? M_PI - angle : angle;
}

VerificationOutcome check_contact_angle(const Scene& scene, const VerifyConfig& cfg,
                                        const std::string& only, std::string& csv) {
    VerificationOutcome out;
    std::ostringstream table;
    table << "sphere,mean_angle,max_deviation,samples\n";
    const double tol =
        scene.entry.plane ? cfg.tol_plane_angle_dev : cfg.tol_angle_dev;
    bool ok = true;
    for (const auto& [name, sphere] : scene.spheres) {
        if (!only.empty() && name != only) continue;
        try {
            ContactAngleReport rep =
                scene.entry.plane
                    ? scene.entry.plane->contact_angle(sphere.center, sphere.radius,
                                                       cfg.boundary_samples)
                    : contact_angle_profile(*scene.entry.wd,
                                            *scene.entry.wd->domain.boundary_circle,
                                            sphere.center, sphere.radius, cfg.boundary_samples);
            const double mean = reported_angle(rep.mean, cfg);
            table << name << ',' << fmt17(mean) << ',' << fmt17(rep.max_deviation) << ','
                  << rep.samples.size() << '\n';
            out.measured.push_back({name + ".mean_angle", mean});
            out.measured.push_back({name + ".max_deviation", rep.max_deviation});
            ok = ok && rep.max_deviation <= tol;
        } catch (const GeometryMismatch& e) {
            ok = false;
            out.note = e.what();
            table << name << ",nan,nan,0\n";
        }
    }
    out.tolerances = {{"max_deviation", tol}};
    out.status = ok ? VerificationOutcome::Status::Pass : VerificationOutcome::Status::Fail;
    csv = table.str();
    return out;
}

VerificationOutcome check_beta_on_boundary(const Scene& scene, const VerifyConfig& cfg,
                                           std::string& csv) {
    VerificationOutcome out;
    const WeierstrassData& wd = *scene.entry.wd;
    const double rb = *wd.domain.boundary_circle;
    HopfFFunction ff = f_function(hopf_differential(wd));
    std::ostringstream table;
    table << "theta,alpha,beta\n";
    double max_beta = 0.0, max_f = 0.0;
    for (int i = 0; i < cfg.boundary_samples; ++i) {
        const double theta = 2.0 * M_PI * i / cfg.boundary_samples;
        const Complex z = std::polar(rb, theta);
        const double a = ff.alpha(z), b = ff.beta(z);
        table << fmt17(theta) << ',' << fmt17(a) << ',' << fmt17(b) << '\n';
        max_beta = std::max(max_beta, std::abs(b));
        max_f = std::max(max_f, std::hypot(a, b));
    }
    out.measured = {{"max_abs_beta", max_beta}, {"max_abs_f", max_f}};
    out.tolerances = {{"max_abs_beta", cfg.tol_beta}};
    out.status = max_beta <= cfg.tol_beta ? VerificationOutcome::Status::Pass
                                          : VerificationOutcome::Status::Fail;
    csv = table.str();
    return out;
}

const char* audit_where(IndexEntry::At at) {
    switch (at) {
    case IndexEntry::At::Interior: return "interior";
    case IndexEntry::At::Puncture: return "puncture";
    case IndexEntry::At::Infinity: return "infinity";
    }
    return "?";
}

VerificationOutcome check_index_audit(const Scene& scene, const VerifyConfig&, std::string& csv) {
    VerificationOutcome out;
    const WeierstrassData& wd = *scene.entry.wd;
    const AnnulusDomain& dom = wd.domain;
    const AuditTopology topo = (dom.puncture_at_zero || dom.r_inner > 0.0)
                                   ? AuditTopology::punctured_capillary_disk()
                                   : AuditTopology::capillary_disk();
    std::ostringstream table;
    table << "where,location_re,location_im,order,index\n";
    try {
        IndexAudit audit = index_audit(hopf_differential(wd), topo);
        for (const IndexEntry& e : audit.entries)
            table << audit_where(e.at) << ',' << fmt17(e.location.real()) << ','
                  << fmt17(e.location.imag()) << ',' << e.order << ',' << e.index.str() << '\n';
        out.measured = {{"index_sum", audit.index_sum.value()},
                        {"expected", audit.expected.value()},
                        {"boundary_zeros", double(audit.boundary_zeros.size())},
                        {"curvature_line_boundary", audit.curvature_line_boundary ? 1.0 : 0.0}};
        if (audit.indeterminate) {
            out.status = VerificationOutcome::Status::Indeterminate;
            out.note = "zeros on the boundary circle make the index sum indeterminate";
        } else {
            out.status = audit.pass ? VerificationOutcome::Status::Pass
                                    : VerificationOutcome::Status::Fail;
        }
    } catch (const TotallyUmbilic& e) {
        out.status = VerificationOutcome::Status::Indeterminate;
        out.note = e.what();
    }
    csv = table.str();
    return out;
}

VerificationOutcome check_total_curvature(const Scene& scene, const VerifyConfig& cfg,
                                          std::string& csv) {
    VerificationOutcome out;
    const WeierstrassData& wd = *scene.entry.wd;
    TotalCurvature tc;
    if (std::isfinite(wd.domain.r_outer)) {
        tc = total_curvature(wd, static_cast<std::size_t>(cfg.curvature_theta_n));
    } else {
        AnnulusDomain region;
        region.r_inner = (wd.domain.puncture_at_zero || wd.domain.r_inner > 0.0)
                             ? std::max(wd.domain.r_inner, cfg.tc_r_inner)
                             : 0.0;
        region.r_outer = cfg.tc_r_outer;
        tc = total_curvature(wd, region, static_cast<std::size_t>(cfg.curvature_theta_n));
    }
    const double rel = (tc.reference == 0.0) ? std::abs(tc.value)
                                             : std::abs(tc.value - tc.reference) /
                                                   std::abs(tc.reference);
    out.measured = {{"value", tc.value}, {"reference", tc.reference}, {"relative_error", rel}};
    out.tolerances = {{"relative_error", cfg.tol_total_curvature}};
    out.status = rel <= cfg.tol_total_curvature ? VerificationOutcome::Status::Pass
                                                : VerificationOutcome::Status::Fail;
    std::ostringstream table;
    table << "quantity,value\n"
          << "value," << fmt17(tc.value) << '\n'
          << "reference," << fmt17(tc.reference) << '\n'
          << "relative_error," << fmt17(rel) << '\n';
    csv = table.str();
    return out;
}

VerificationOutcome check_curvature_line_closure(const Scene& scene, const VerifyConfig& cfg,
                                                 std::string& csv) {
    VerificationOutcome out;
    const WeierstrassData& wd = *scene.entry.wd;
    const double rb = *wd.domain.boundary_circle;
    // trace just inside an outer rim so radial jitter cannot leave the chart
    const double rt = (std::abs(rb - wd.domain.r_outer) < 1e-12) ? 0.98 * rb : rb;
    const Complex z0 = std::polar(rt, 0.3);

    std::ostringstream table;
    table << "i,re,im\n";
    try {
        HopfFFunction ff = f_function(hopf_differential(wd));
        // the circle direction satisfies Phi (iz)^2 = -f > 0 exactly when Re f < 0
        const CurvatureBranch branch =
            ff.alpha(z0) < 0.0 ? CurvatureBranch::First : CurvatureBranch::Second;
        TraceResult tr =
            trace_line_of_curvature(wd, z0, branch, 2.0 * M_PI * rt, 0.005 * rt);
        double drift = 0.0;
        for (size_t i = 0; i < tr.points.size(); ++i) {
            drift = std::max(drift, std::abs(std::abs(tr.points[i]) - rt));
            table << i << ',' << fmt17(tr.points[i].real()) << ',' << fmt17(tr.points[i].imag())
                  << '\n';
        }
        const double closure = tr.points.empty() ? std::nan("") : std::abs(tr.points.back() - z0);
        out.measured = {{"trace_radius", rt},
                        {"max_radial_drift", drift},
                        {"closure_gap", closure},
                        {"points", double(tr.points.size())}};
        out.tolerances = {{"max_radial_drift", cfg.tol_trace_drift},
                          {"closure_gap", cfg.tol_trace_closure}};
        const bool ok = tr.stop == TraceStop::Completed && drift <= cfg.tol_trace_drift &&
                        closure <= cfg.tol_trace_closure;
        out.status = ok ? VerificationOutcome::Status::Pass : VerificationOutcome::Status::Fail;
        if (tr.stop != TraceStop::Completed) out.note = "trace stopped before a full revolution";
    } catch (const Error& e) {
        out.status = VerificationOutcome::Status::Fail;
        out.note = e.what();
    }
    csv = table.str();
    return out;
}

std::string csv_filename(const std::string& check) {
    std::string name = check;
    for (char& c : name)
        if (c == ':') c = '-';
    return name + ".csv";
}

json config_to_json(const VerifyConfig& cfg) {
    return json{
        {"samples",
         {{"boundary", cfg.boundary_samples},
          {"grid", cfg.grid_samples},
          {"flux", cfg.flux_samples},
          {"winding", cfg.winding_samples},
          {"curvature_grid", cfg.curvature_theta_n}}},
        {"truncation", {{"r_inner", cfg.tc_r_inner}, {"r_outer", cfg.tc_r_outer}}},
        {"tolerances",
         {{"period", cfg.tol_period},
          {"beta", cfg.tol_beta},
          {"flux_method_gap", cfg.tol_flux_gap},
          {"contact_angle_deviation", cfg.tol_angle_dev},
          {"plane_angle_deviation", cfg.tol_plane_angle_dev},
          {"total_curvature_relative", cfg.tol_total_curvature},
          {"trace_drift", cfg.tol_trace_drift},
          {"trace_closure", cfg.tol_trace_closure}}},
        {"angle_convention", cfg.angle_supplement ? "supplement" : "normal"},
    };
}

const char* status_str(VerificationOutcome::Status s) {
    switch (s) {
    case VerificationOutcome::Status::Pass: return "pass";
    case VerificationOutcome::Status::Fail: return "fail";
    case VerificationOutcome::Status::Indeterminate: return "indeterminate";
    }
    return "?";
}

} // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> ids = {
        "period-conditions", "flux-table",      "contact-angle",
        "beta-on-boundary",  "index-audit",     "total-curvature",
        "curvature-line-closure",
    };
    return ids;
}

Scene load_scene(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SceneError("malformed-json", "$", e.what());
    }
    expect_object(doc, "$");
    if (!doc.contains("surface")) schema_error("$.surface", "missing surface");

    Scene scene;
    scene.entry = surface_from_json(doc.at("surface"), "$.surface");
    if (doc.contains("loops")) {
        const json& loops = expect_object(doc.at("loops"), "$.loops");
        for (const auto& [name, j] : loops.items())
            scene.loops.emplace(name, loop_from_json(j, "$.loops." + name));
    }
    if (doc.contains("spheres")) {
        const json& spheres = expect_object(doc.at("spheres"), "$.spheres");
        for (const auto& [name, j] : spheres.items())
            scene.spheres.emplace(name, sphere_from_json(j, "$.spheres." + name));
    }
    if (doc.contains("checks")) {
        const json& checks = doc.at("checks");
        if (!checks.is_array()) schema_error("$.checks", "expected an array of check ids");
        for (size_t i = 0; i < checks.size(); ++i) {
            if (!checks[i].is_string())
                schema_error("$.checks[" + std::to_string(i) + "]", "expected a string");
            scene.checks.push_back(checks[i].get<std::string>());
        }
    }
    if (doc.contains("output")) {
        if (!doc.at("output").is_string()) schema_error("$.output", "expected a string");
        scene.output = doc.at("output").get<std::string>();
    }
    validate_checks(scene, "$.checks");
    return scene;
}

std::vector<VerificationOutcome> run_verification(const Scene& scene, const VerifyConfig& cfg) {
    validate_checks(scene, "$.checks");

    std::vector<VerificationOutcome> outcomes;
    std::vector<std::pair<std::string, std::string>> csvs; // filename -> body
    for (const std::string& check : scene.checks) {
        const CheckRef cr = split_check(check);
        const auto t0 = Clock::now();
        VerificationOutcome out;
        std::string csv;
        if (cr.id == "period-conditions") {
            out = check_period_conditions(scene, cfg);
            csv = "quantity,value\nperiod_defect," + fmt17(out.measured[0].second) +
                  "\nheight_defect," + fmt17(out.measured[1].second) + "\nregular," +
                  fmt17(out.measured[2].second) + "\n";
        } else if (cr.id == "flux-table") {
            out = check_flux_table(scene, cfg, cr.ref, csv);
        } else if (cr.id == "contact-angle") {
            out = check_contact_angle(scene, cfg, cr.ref, csv);
        } else if (cr.id == "beta-on-boundary") {
            out = check_beta_on_boundary(scene, cfg, csv);
        } else if (cr.id == "index-audit") {
            out = check_index_audit(scene, cfg, csv);
        } else if (cr.id == "total-curvature") {
            out = check_total_curvature(scene, cfg, csv);
        } else if (cr.id == "curvature-line-closure") {
            out = check_curvature_line_closure(scene, cfg, csv);
        }
        out.id = check;
        out.wall_time_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        outcomes.push_back(std::move(out));
        if (!csv.empty()) csvs.emplace_back(csv_filename(check), csv);
    }

    std::stable_sort(outcomes.begin(), outcomes.end(),
                     [](const VerificationOutcome& a, const VerificationOutcome& b) {
                         return a.id < b.id;
                     });

    json report;
    report["schema"] = "1";
    report["surface"] = scene.entry.name;
    report["config"] = config_to_json(cfg);
    json jout = json::array();
    for (const VerificationOutcome& o : outcomes) {
        json jo;
        jo["id"] = o.id;
        jo["status"] = status_str(o.status);
        json mm = json::object(), tt = json::object();
        for (const auto& [k, v] : o.measured) mm[k] = v;
        for (const auto& [k, v] : o.tolerances) tt[k] = v;
        jo["measured"] = mm;
        jo["tolerances"] = tt;
        if (!o.note.empty()) jo["note"] = o.note;
        jout.push_back(jo);
    }
    report["outcomes"] = jout;

    namespace fs = std::filesystem;
    fs::create_directories(scene.output);
    {
        std::ofstream f(fs::path(scene.output) / "report.json", std::ios::binary);
        f << report.dump(2) << '\n';
    }
    for (const auto& [name, body] : csvs) {
        std::ofstream f(fs::path(scene.output) / name, std::ios::binary);
        f << body;
    }
    return outcomes;
}

// ------------------------------- meshing -------------------------------

namespace {

Vec3 mesh_displacement(const WeierstrassData& wd, const PathSpec& path) {
    Vec3 d;
    const RationalFunction* phi[3] = {&wd.phi1, &wd.phi2, &wd.phi3};
    double* comp[3] = {&d.x, &d.y, &d.z};
    for (int i = 0; i < 3; ++i) {
        const RationalFunction& p = *phi[i];
        // 1e-10 per short segment: looser than point evaluation because the
        // integrand can reach ~1/r^2 near an end while vertex positions only
        // need coordinates good to well under the mesh tolerance
        *comp[i] = integrate_path([&p](Complex z) { return p(z); }, path, 1e-10).real();
    }
    return d;
}

std::string obj_from_grid(const std::vector<Vec3>& verts, const std::vector<Vec3>& normals,
                          int n_r, int n_theta) {
    std::ostringstream obj;
    obj << "# log-radial parametric grid, " << n_r << " x " << n_theta << " vertices\n";
    for (const Vec3& v : verts)
        obj << "v " << fmt12(v.x) << ' ' << fmt12(v.y) << ' ' << fmt12(v.z) << '\n';
    for (const Vec3& n : normals)
        obj << "vn " << fmt12(n.x) << ' ' << fmt12(n.y) << ' ' << fmt12(n.z) << '\n';
    auto id = [n_theta](int j, int k) { return j * n_theta + (k % n_theta) + 1; };
    for (int j = 0; j + 1 < n_r; ++j)
        for (int k = 0; k < n_theta; ++k) {
            const int a = id(j, k), b = id(j, k + 1), c = id(j + 1, k + 1), d = id(j + 1, k);
            obj << "f " << a << "//" << a << ' ' << b << "//" << b << ' ' << c << "//" << c << ' '
                << d << "//" << d << '\n';
        }
    return obj.str();
}

} // namespace

std::string export_mesh(const WeierstrassData& wd, int n_r, int n_theta) {
    if (n_r < 2) throw InvalidInput("export_mesh: need at least two radial rings");
    if (n_theta < 3) throw InvalidInput("export_mesh: need at least three angular columns");

    const AnnulusDomain& dom = wd.domain;
    double hi;
    if (std::isfinite(dom.r_outer))
        hi = (dom.boundary_circle && *dom.boundary_circle >= dom.r_outer)
                 ? *dom.boundary_circle
                 : dom.r_outer * (1.0 - 1e-9);
    else
        hi = dom.boundary_circle ? *dom.boundary_circle : 1.0;
    double lo = (dom.r_inner > 0.0) ? dom.r_inner * (1.0 + 1e-9) : 1e-3;
    if (!(lo < hi)) throw MeshingError("export_mesh: radial range of the chart is degenerate");

    std::vector<double> radii(n_r);
    for (int j = 0; j < n_r; ++j)
        radii[j] = lo * std::pow(hi / lo, double(j) / double(n_r - 1));

    // March each spoke inward from the outer ring: segments near an end at
    // z = 0 stay short, so the adaptive quadrature never has to resolve the
    // blowing-up integrand across a long path.
    std::vector<Vec3> verts(size_t(n_r) * n_theta), normals(size_t(n_r) * n_theta);
    for (int k = 0; k < n_theta; ++k) {
        const double theta = 2.0 * M_PI * k / n_theta;
        const Complex outer = std::polar(radii[n_r - 1], theta);
        Vec3 X;
        try {
            X = immerse(wd, outer);
        } catch (const Error& e) {
            throw MeshingError("export_mesh: cannot reach grid node z = " + describe_z(outer) +
                               ": " + e.what());
        }
        for (int j = n_r - 1; j >= 0; --j) {
            const Complex node = std::polar(radii[j], theta);
            if (j < n_r - 1) {
                const Complex prev = std::polar(radii[j + 1], theta);
                try {
                    X += mesh_displacement(wd, PathSpec::segment(prev, node));
                } catch (const Error& e) {
                    throw MeshingError("export_mesh: integration failed on the spoke through z = " +
                                       describe_z(node) + ": " + e.what());
                }
            }
            // the normal needs no integration: read it off the Gauss map,
            // rejecting nodes where the conformal factor is zero or infinite
            const auto vgh = wd.gh.eval(node);
            const auto vhg = wd.h_over_g.eval(node);
            if (!vgh || !vhg || std::abs(*vgh) + std::abs(*vhg) == 0.0)
                throw MeshingError("export_mesh: grid node z = " + describe_z(node) +
                                   " is a singular point of the data");
            normals[size_t(j) * n_theta + k] = normal_from_gauss(wd.g.eval(node));
            verts[size_t(j) * n_theta + k] = X;
        }
    }
    return obj_from_grid(verts, normals, n_r, n_theta);
}

std::string export_mesh(const PlaneChart& plane, int n_r, int n_theta) {
    if (n_r < 2) throw InvalidInput("export_mesh: need at least two radial rings");
    if (n_theta < 3) throw InvalidInput("export_mesh: need at least three angular columns");
    const double lo = 1e-2, hi = 1.0;
    std::vector<Vec3> verts(size_t(n_r) * n_theta), normals(size_t(n_r) * n_theta);
    for (int j = 0; j < n_r; ++j) {
        const double r = lo * std::pow(hi / lo, double(j) / double(n_r - 1));
        for (int k = 0; k < n_theta; ++k) {
            const double theta = 2.0 * M_PI * k / n_theta;
            verts[size_t(j) * n_theta + k] = plane.point(r * std::cos(theta), r * std::sin(theta));
            normals[size_t(j) * n_theta + k] = plane.normal;
        }
    }
    return obj_from_grid(verts, normals, n_r, n_theta);
}

} // namespace minsurf
