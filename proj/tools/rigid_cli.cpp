// Command-line front end: rigidity analysis, load resolution, projective
// transforms, central projections with velocity transport, catalog
// generation, and seeded property verification. All reports are JSON on
// stdout; identical invocations produce byte-identical output.
//
// Exit codes: 0 success / property verified, 1 property violation or
// unresolvable load, 2 input error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigid/catalog.hpp"
#include "rigid/json_io.hpp"
#include "rigid/pogorelov.hpp"
#include "rigid/projective.hpp"
#include "rigid/rigidity.hpp"
#include "rigid/verify.hpp"

namespace {

using rigid::json;

struct CommonFlags {
    bool exact = false;
    double tolerance = 1e-10;

    rigid::TolerancePolicy policy() const {
        return exact ? rigid::TolerancePolicy::exact()
                     : rigid::TolerancePolicy::floating(tolerance);
    }
};

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

json kinematic_report_json(const rigid::KinematicReport<double>& rep) {
    json doc;
    doc["dim_motions"] = rep.dim_motions;
    doc["dim_trivial"] = rep.dim_trivial;
    doc["dof"] = rep.dof;
    doc["rigid"] = rep.rigid;
    doc["degenerate_span"] = rep.degenerate_span;
    doc["singular_values"] = rep.singular_values;
    return doc;
}

template <class T>
json kinematic_summary(const rigid::KinematicReport<T>& rep,
                       const std::vector<double>& singular_values) {
    json doc;
    doc["dim_motions"] = rep.dim_motions;
    doc["dim_trivial"] = rep.dim_trivial;
    doc["dof"] = rep.dof;
    doc["rigid"] = rep.rigid;
    doc["degenerate_span"] = rep.degenerate_span;
    doc["singular_values"] = singular_values;
    return doc;
}

void write_sv_csv(const std::string& path, const std::vector<double>& sv) {
    std::ofstream out(path);
    if (!out) throw rigid::SchemaError("cannot write file '" + path + "'");
    out << "index,singular_value\n";
    json row;
    for (std::size_t i = 0; i < sv.size(); ++i) {
        // json formatting keeps the shortest round-trip representation
        out << i << "," << json(sv[i]).dump() << "\n";
    }
}

int cmd_analyze(const std::string& path, const CommonFlags& flags, const std::string& sv_csv,
                bool with_statics) {
    const json doc = rigid::load_json_file(path);
    // floating diagnostics (singular values) accompany both modes
    const auto fwd = rigid::parse_framework<double>(doc);
    const auto repd = rigid::analyze_kinematics(fwd, rigid::TolerancePolicy::floating(flags.tolerance));
    json out;
    if (flags.exact) {
        const auto fwq = rigid::parse_framework<rigid::Rational>(doc);
        const auto repq = rigid::analyze_kinematics(fwq, rigid::TolerancePolicy::exact());
        out = kinematic_summary(repq, repd.singular_values);
        if (with_statics && fwq.geometry == rigid::Geometry::euclidean) {
            const auto sta = rigid::analyze_statics(fwq, rigid::TolerancePolicy::exact());
            out["statics"] = {{"dim_equilibrium", sta.dim_equilibrium},
                              {"dim_resolvable", sta.dim_resolvable},
                              {"static_dof", sta.static_dof}};
        }
    } else {
        out = kinematic_report_json(repd);
        if (with_statics && fwd.geometry == rigid::Geometry::euclidean) {
            const auto sta = rigid::analyze_statics(fwd, flags.policy());
            out["statics"] = {{"dim_equilibrium", sta.dim_equilibrium},
                              {"dim_resolvable", sta.dim_resolvable},
                              {"static_dof", sta.static_dof}};
        }
    }
    if (!sv_csv.empty()) write_sv_csv(sv_csv, repd.singular_values);
    emit(out);
    return 0;
}

template <class T>
int resolve_impl(const json& fdoc, const json& ldoc, const rigid::TolerancePolicy& tol) {
    const auto fw = rigid::parse_framework<T>(fdoc);
    const auto load = rigid::parse_field<T>(ldoc);
    const auto res = rigid::resolve_load(fw, load, tol);
    json out;
    out["resolved"] = res.resolved;
    out["residual"] = res.residual_norm();
    if (res.resolved) out["stress"] = rigid::stress_to_json(res.stress, fw)["stress"];
    emit(out);
    return res.resolved ? 0 : 1;
}

int cmd_resolve(const std::string& fpath, const std::string& lpath, const CommonFlags& flags) {
    const json fdoc = rigid::load_json_file(fpath);
    const json ldoc = rigid::load_json_file(lpath);
    if (flags.exact) return resolve_impl<rigid::Rational>(fdoc, ldoc, flags.policy());
    return resolve_impl<double>(fdoc, ldoc, flags.policy());
}

template <class T>
int transform_impl(const json& fdoc, const json& mdoc, const std::string& motion_path,
                   const std::string& load_path, const rigid::TolerancePolicy&) {
    const auto fw = rigid::parse_framework<T>(fdoc);
    const rigid::ProjectiveMap<T> phi(rigid::parse_square_matrix<T>(mdoc));
    const auto image = rigid::apply_projective(phi, fw);
    json out;
    out["framework"] = rigid::framework_to_json(image);
    if (!motion_path.empty()) {
        const auto q = rigid::parse_field<T>(rigid::load_json_file(motion_path));
        const auto moved = rigid::transport_motion(phi, fw, q);
        out["motion"] = rigid::field_to_json(moved)["field"];
        json residuals = json::array();
        for (const auto& r : rigid::edge_constraint_values(image, moved))
            residuals.push_back(rigid::to_double(r));
        out["edge_residuals"] = std::move(residuals);
    }
    if (!load_path.empty()) {
        const auto f = rigid::parse_field<T>(rigid::load_json_file(load_path));
        const auto moved = rigid::transport_load(phi, fw, f);
        out["load"] = rigid::field_to_json(moved)["field"];
        out["load_equilibrium"] = rigid::is_equilibrium_load(image, moved);
    }
    emit(out);
    return 0;
}

int cmd_transform(const std::string& fpath, const std::string& mpath,
                  const std::string& motion_path, const std::string& load_path,
                  const CommonFlags& flags) {
    const json fdoc = rigid::load_json_file(fpath);
    const json mdoc = rigid::load_json_file(mpath);
    if (flags.exact)
        return transform_impl<rigid::Rational>(fdoc, mdoc, motion_path, load_path, flags.policy());
    return transform_impl<double>(fdoc, mdoc, motion_path, load_path, flags.policy());
}

int cmd_pogorelov(const std::string& fpath, const std::string& target_name, double fit,
                  const std::string& motion_path, const std::string& direction) {
    const json fdoc = rigid::load_json_file(fpath);
    auto fw = rigid::parse_framework<double>(fdoc);
    if (fw.geometry != rigid::Geometry::euclidean)
        throw rigid::GeometryMismatch("pogorelov expects the Euclidean base framework");
    const rigid::Geometry target = rigid::geometry_from_name(target_name);
    if (target == rigid::Geometry::euclidean)
        throw rigid::InvalidParameters("target must be hyperbolic or spherical");
    if (fit > 0.0) fw = rigid::fit_disk(fw, fit);

    const auto projected = rigid::central_project(fw, target);
    json out;
    out["framework"] = rigid::framework_to_json(projected);

    if (!motion_path.empty()) {
        const auto field = rigid::parse_field<double>(rigid::load_json_file(motion_path));
        const bool forward = direction != "from";
        rigid::PogorelovDirection dir;
        if (target == rigid::Geometry::hyperbolic)
            dir = forward ? rigid::PogorelovDirection::to_hyperbolic
                          : rigid::PogorelovDirection::from_hyperbolic;
        else
            dir = forward ? rigid::PogorelovDirection::to_spherical
                          : rigid::PogorelovDirection::from_spherical;
        const auto moved = rigid::pogorelov_transport(fw, field, dir);
        out["motion"] = rigid::field_to_json(moved)["field"];
        const auto& check_fw = forward ? projected : fw;
        json residuals = json::array();
        for (const auto& r : rigid::edge_constraint_values(check_fw, moved))
            residuals.push_back(r);
        out["edge_residuals"] = std::move(residuals);
        if (forward) out["euclidean_framework"] = rigid::framework_to_json(fw);
    }
    emit(out);
    return 0;
}

int cmd_catalog(const rigid::ExampleSpec& spec, const std::string& output) {
    const auto ex = rigid::make_example(spec);
    const json doc = rigid::example_to_json(ex);
    if (output.empty())
        emit(doc);
    else
        rigid::save_json_file(output, doc);
    return 0;
}

int cmd_verify(const rigid::VerifyPlan& plan, const std::string& dump_dir) {
    const auto report = rigid::run_verify(plan);
    emit(report.to_json());
    if (!report.ok()) {
        for (const auto& f : report.failures) {
            const std::string path = dump_dir + "/verify-fail-" + plan.property + "-" +
                                     std::to_string(f.index) + ".json";
            rigid::save_json_file(path, f.instance);
        }
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bar-joint framework rigidity toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string fw_path, second_path, sv_csv, motion_path, load_path, output, direction = "to";
    bool with_statics = false;
    double fit_disk_r = 0.0;
    std::string target;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--exact", flags.exact, "use exact rational arithmetic");
        cmd->add_option("--tolerance", flags.tolerance, "relative rank cutoff (floating mode)");
    };

    auto* analyze = app.add_subcommand("analyze", "kinematic rigidity report");
    analyze->add_option("framework", fw_path, "framework JSON file")->required();
    analyze->add_option("--sv-csv", sv_csv, "write singular values as CSV");
    analyze->add_flag("--statics", with_statics, "include the static report (Euclidean)");
    add_common(analyze);

    auto* resolve = app.add_subcommand("resolve", "resolve a load by an edge stress");
    resolve->add_option("framework", fw_path)->required();
    resolve->add_option("load", second_path, "load JSON file")->required();
    add_common(resolve);

    auto* transform = app.add_subcommand("transform", "apply a projective map");
    transform->add_option("framework", fw_path)->required();
    transform->add_option("map", second_path, "projective map JSON file")->required();
    transform->add_option("--motion", motion_path, "velocity field to transport");
    transform->add_option("--load", load_path, "load to transport");
    add_common(transform);

    auto* pogo = app.add_subcommand("pogorelov", "central projection and velocity transport");
    pogo->add_option("framework", fw_path, "Euclidean framework JSON")->required();
    pogo->add_option("--target", target, "hyperbolic or spherical")->required();
    pogo->add_option("--fit-disk", fit_disk_r, "pre-scale into the given radius");
    pogo->add_option("--motion", motion_path, "velocity field to transport");
    pogo->add_option("--direction", direction, "'to' (Euclidean input) or 'from' (surface input)")
        ->check(CLI::IsMember({"to", "from"}));

    rigid::ExampleSpec spec;
    std::vector<double> axes;
    bool generic = false, at_inf = false;
    auto* catalog = app.add_subcommand("catalog", "generate a named example framework");
    catalog->add_option("id", spec.id,
                        "simplex | cycle | twisted_octahedron | liebmann_octahedron | "
                        "desargues | bipartite_quadric")
        ->required();
    catalog->add_option("--dimension", spec.dimension, "simplex dimension");
    catalog->add_option("--count", spec.count, "cycle length / white class size");
    catalog->add_option("--count2", spec.count2, "black class size");
    catalog->add_option("--radius", spec.radius, "antiprism base radius");
    catalog->add_option("--height", spec.height, "antiprism base separation");
    catalog->add_option("--twist", spec.twist_deg, "top base rotation from the regular position");
    catalog->add_flag("--generic", generic, "desargues: perturb away from concurrency");
    catalog->add_flag("--at-infinity", at_inf, "desargues: parallel matching lines");
    catalog->add_option("--axes", axes, "bipartite quadric semi-axes");
    catalog->add_option("-o,--output", output, "write to file instead of stdout");

    rigid::VerifyPlan plan;
    std::string dump_dir = ".";
    auto* verify = app.add_subcommand("verify", "seeded property verification");
    verify->add_option("--property", plan.property,
                       "darboux-sauer | pogorelov | static-kinematic-duality | virtual-work | "
                       "affine-invariance | blaschke")
        ->required();
    verify->add_option("--trials", plan.trials, "number of seeded trials");
    verify->add_option("--seed", plan.seed, "base seed");
    verify->add_option("--d", plan.dimension, "fix the ambient dimension (2 or 3)");
    verify->add_option("--tolerance", plan.rel_epsilon, "floating rank cutoff");
    verify->add_option("--dump-dir", dump_dir, "directory for failing-instance dumps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(fw_path, flags, sv_csv, with_statics);
        if (resolve->parsed()) return cmd_resolve(fw_path, second_path, flags);
        if (transform->parsed())
            return cmd_transform(fw_path, second_path, motion_path, load_path, flags);
        if (pogo->parsed())
            return cmd_pogorelov(fw_path, target, fit_disk_r, motion_path, direction);
        if (catalog->parsed()) {
            spec.concurrent = !generic;
            spec.at_infinity = at_inf;
            spec.axes = axes;
            return cmd_catalog(spec, output);
        }
        if (verify->parsed()) return cmd_verify(plan, dump_dir);
    } catch (const rigid::Error& e) {
        json err;
        err["error"] = e.kind();
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "InternalError";
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 2;
}
