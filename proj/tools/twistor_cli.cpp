#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twistor/counts.hpp"
#include "twistor/json_io.hpp"
#include "twistor/metric.hpp"
#include "twistor/verify.hpp"

using namespace tw;

namespace {

struct Options {
    std::string in, out, json_out;
    double tol = kProjTol;
    std::uint64_t seed = 42;
    int samples = -1;
    double rho = NAN, a = NAN, lambda = 2.0;
    std::int64_t ia = 0, ib = 0;
    int grid = 9, refine = 0;
    double extent = 2.0;
    bool arclength = false;
};

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot read input file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write output file: " + path);
    f << text;
}

// --json doubles as the output path for JSON-producing subcommands.
std::string json_target(const Options& o) { return o.json_out.empty() ? o.out : o.json_out; }

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Surface11 read_surface(const Options& o) {
    Mat3 A = matrix_from_json(parse_json(read_input(o.in)));
    try {
        return surface_from_matrix(A);
    } catch (const ScalarMatrix&) {
        throw InputError("scalar matrix: A must not be a multiple of the identity");
    }
}

Curve11 smooth_curve_from(const json& j) {
    Curve11 c = curve_from_json(j);
    if (c.kind != Curve11::Smooth) throw InputError("reducible curve where a smooth curve is required (qm = 0)");
    return c;
}

int cmd_classify(const Options& o) {
    Surface11 S = read_surface(o);
    CanonicalClass cc = classify(S);
    json out = {{"class", to_json(cc)}, {"tag", to_string(cc.tag)}};
    out["singular_locus"] = to_json(singular_locus(S));
    out["is_j_invariant"] = is_j_invariant(S, o.tol);
    if (cc.tag == ClassTag::A1) out["unitary_form"] = to_json(unitary_canonical_form(S));
    write_output(json_target(o), dump(out));
    return 0;
}

int cmd_fibers(const Options& o) {
    Surface11 S = read_surface(o);
    write_output(json_target(o), dump(to_json(twistor_fibers_in(S))));
    return 0;
}

int cmd_branch_grid(const Options& o) {
    if (o.grid < 2) throw InputError("--grid must be at least 2");
    if (!(o.extent > 0)) throw InputError("--extent must be positive");
    Surface11 S = read_surface(o);
    if (eigenstructure(S).groups.size() != 3) throw InputError("branch-grid needs a smooth surface");
    UnitaryForm f = unitary_canonical_form(S);
    std::string csv = "q0re,q0im,q1re,q1im,q2re,q2im,Rre,Rim\n";
    int n = o.grid;
    auto coord = [&](int i) { return -o.extent + 2 * o.extent * i / (n - 1); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    Vec3 q(1.0, cplx(coord(a), coord(b)), cplx(coord(c), coord(d)));
                    BranchSample s = branch_R(S, point(q));
                    csv += "1,0," + num(q(1).real()) + "," + num(q(1).imag()) + "," + num(q(2).real()) + "," +
                           num(q(2).imag()) + "," + num(s.R.real()) + "," + num(s.R.imag()) + "\n";
                }
    write_output(o.out, csv);
    if (o.refine > 0) {
        json zs = json::array();
        for (auto& z : find_branch_zeros(f, o.refine, o.seed)) {
            Row3 qa = z.q.v.transpose() * f.U.adjoint();
            zs.push_back({{"q", to_json(normalize(point(qa.transpose())))}, {"residual", z.residual}});
        }
        std::string target = o.json_out.empty() ? "-" : o.json_out;
        write_output(target, dump({{"seed", o.seed}, {"zeros", zs}}));
    }
    return 0;
}

int cmd_profile(const Options& o) {
    if (!(o.rho > 0)) throw InputError("--rho must be a positive number");
    int n = o.samples < 0 ? 512 : o.samples;
    if (n < 16) throw InputError("--samples must be at least 16");
    ProfileCurve pc = profile_curve(o.rho, n);
    std::string csv = "v,f,g\n";
    if (o.arclength) {
        // resample at equal arc length of the (f, g) curve
        std::vector<double> s(pc.samples.size(), 0.0);
        for (size_t i = 1; i < s.size(); ++i)
            s[i] = s[i - 1] + std::hypot(pc.samples[i].f - pc.samples[i - 1].f, pc.samples[i].g - pc.samples[i - 1].g);
        size_t k = 0;
        for (int i = 0; i < n; ++i) {
            double t = s.back() * i / (n - 1);
            while (k + 2 < s.size() && s[k + 1] < t) ++k;
            double w = s[k + 1] > s[k] ? (t - s[k]) / (s[k + 1] - s[k]) : 0.0;
            auto lerp = [&](double x, double y) { return x + w * (y - x); };
            const auto &a = pc.samples[k], &b = pc.samples[k + 1];
            csv += num(lerp(a.v, b.v)) + "," + num(lerp(a.f, b.f)) + "," + num(lerp(a.g, b.g)) + "\n";
        }
    } else {
        for (auto& p : pc.samples) csv += num(p.v) + "," + num(p.f) + "," + num(p.g) + "\n";
    }
    if (pc.clamp_events > 0) std::cerr << "profile: " << pc.clamp_events << " negative radicands clamped to 0\n";
    write_output(o.out, csv);
    return 0;
}

int cmd_torus(const Options& o) {
    if (!std::isfinite(o.a) || o.a == 0) throw InputError("--a must be a nonzero number");
    int n = o.samples < 0 ? 2048 : o.samples;
    if (n < 2) throw InputError("--samples must be at least 2");
    TorusProfile tp = torus_profile(o.a, o.lambda, n);
    std::string csv = "x,s_outer,s_inner\n";
    for (auto& r : tp.rows)
        csv += num(r.x) + "," + (r.s_outer ? num(*r.s_outer) : "") + "," + (r.s_inner ? num(*r.s_inner) : "") + "\n";
    write_output(o.out, csv);
    if (!o.json_out.empty())
        write_output(o.json_out, dump({{"a", tp.a},
                                       {"lambda", tp.lambda},
                                       {"singular_count", tp.singular_count},
                                       {"singular_x", tp.singular_x}}));
    return 0;
}

int cmd_sphere(const Options& o) {
    Curve11 c = smooth_curve_from(parse_json(read_input(o.in)));
    SphereNormalForm nf = sphere_normal_form(c);
    ImageQuadric Q = image_quadric(c);
    write_output(json_target(o), dump({{"rho", nf.rho}, {"Phi", to_json(Q.Phi)}, {"U", to_json(nf.U)}}));
    return 0;
}

int cmd_intersect(const Options& o) {
    json j = parse_json(read_input(o.in));
    if (!j.is_object() || !j.contains("c1") || !j.contains("c2"))
        throw InputError("intersect: expected {\"c1\": Curve11, \"c2\": Curve11}");
    Curve11 c1 = curve_from_json(j["c1"]), c2 = curve_from_json(j["c2"]);
    Intersection I;
    try {
        I = intersect(c1, c2, o.tol);
    } catch (const IdenticalCurves&) {
        throw InputError("identical curves: the intersection is the whole curve");
    }
    write_output(json_target(o), dump(to_json(I)));
    return 0;
}

int cmd_counts(const Options& o) {
    std::int64_t a = o.ia, b = o.ib;
    if (std::abs(a) > kMaxBidegree || std::abs(b) > kMaxBidegree) throw InputError("bidegree out of range");
    json out = {{"a", a},
                {"b", b},
                {"h0_product", h0_product(a, b)},
                {"h0_flag", h0_flag(a, b)},
                {"triple_product", triple_product({a, b}, {b, a}, {1, 0})},
                {"c1_squared", c1_squared(a, b)},
                {"blowup_count", a == 1 && b >= 1 ? json(blowup_count_1d(b)) : json(nullptr)}};
    write_output(json_target(o), dump(out));
    return 0;
}

int cmd_verify(const Options& o) {
    int n = o.samples < 0 ? 100 : o.samples;
    if (n < 1) throw InputError("--samples must be at least 1");
    VerificationReport r = run_suite(o.seed, n);
    std::string text = dump(to_json(r));
    if (!o.json_out.empty()) write_output(o.json_out, text);
    if (!o.out.empty()) write_output(o.out, text);
    for (auto& c : r.checks)
        std::cerr << (c.failures ? "FAIL " : "ok   ") << c.name << "  samples=" << c.samples
                  << " failures=" << c.failures << " worst=" << c.worst_residual << "\n";
    return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twistor geometry of the flag manifold"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--tol", o.tol, "incidence tolerance")->check(CLI::PositiveNumber);
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--out", o.out, "output file (default stdout)");
        s->add_option("--json", o.json_out, "JSON output file");
        return s;
    };
    auto with_in = [&](CLI::App* s) {
        s->add_option("--in", o.in, "input JSON file (default stdin)");
        return common(s);
    };
    auto* classify_cmd = with_in(app.add_subcommand("classify", "classify the surface S_A"));
    auto* fibers_cmd = with_in(app.add_subcommand("fibers", "twistor fibers contained in S_A"));
    auto* grid_cmd = with_in(app.add_subcommand("branch-grid", "branch polynomial on a grid of the chart q0 = 1"));
    grid_cmd->add_option("--grid", o.grid, "nodes per real axis");
    grid_cmd->add_option("--extent", o.extent, "half-width of the grid");
    grid_cmd->add_option("--refine", o.refine, "multistart zero search starts (zeros to --json)");
    auto* profile_cmd = common(app.add_subcommand("profile", "profile curve of a twistor sphere"));
    profile_cmd->add_option("--rho", o.rho, "sphere parameter")->required();
    profile_cmd->add_option("--samples", o.samples, "number of nodes");
    profile_cmd->add_flag("--arclength", o.arclength, "resample at equal arc length");
    auto* torus_cmd = common(app.add_subcommand("torus", "torus profile of a toric branch locus"));
    torus_cmd->add_option("--a", o.a, "off-diagonal entry a")->required();
    torus_cmd->add_option("--lambda", o.lambda, "eigenvalue lambda (default 2)");
    torus_cmd->add_option("--samples", o.samples, "grid nodes");
    auto* sphere_cmd = with_in(app.add_subcommand("sphere", "image sphere of L_{q,m}"));
    auto* intersect_cmd = with_in(app.add_subcommand("intersect", "intersection of two (1,1)-curves"));
    auto* counts_cmd = common(app.add_subcommand("counts", "integer invariants of bidegree (a,b)"));
    counts_cmd->add_option("--a", o.ia, "first degree")->required();
    counts_cmd->add_option("--b", o.ib, "second degree")->required();
    auto* verify_cmd = common(app.add_subcommand("verify", "seeded property suite"));
    verify_cmd->add_option("--samples", o.samples, "samples per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(o);
        if (fibers_cmd->parsed()) return cmd_fibers(o);
        if (grid_cmd->parsed()) return cmd_branch_grid(o);
        if (profile_cmd->parsed()) return cmd_profile(o);
        if (torus_cmd->parsed()) return cmd_torus(o);
        if (sphere_cmd->parsed()) return cmd_sphere(o);
        if (intersect_cmd->parsed()) return cmd_intersect(o);
        if (counts_cmd->parsed()) return cmd_counts(o);
        if (verify_cmd->parsed()) return cmd_verify(o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
