#include "twistor/json_io.hpp"

#include <cmath>

namespace tw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

double finite(const json& j, const std::string& what) {
    require(j.is_number(), what + ": expected a number");
    double x = j.get<double>();
    require(std::isfinite(x), what + ": non-finite number");
    return x;
}

const json& field(const json& j, const char* key, const std::string& what) {
    require(j.is_object() && j.contains(key), what + ": missing \"" + key + "\"");
    return j.at(key);
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const ProjVec& v) {
    return {{"flavor", v.flavor == Flavor::Point ? "point" : "line"},
            {"coords", json::array({to_json(v.v(0)), to_json(v.v(1)), to_json(v.v(2))})}};
}

json to_json(const FlagPoint& x) { return {{"p", to_json(x.p)}, {"l", to_json(x.l)}}; }

json to_json(const Curve11& c) {
    return {{"q", to_json(c.q)}, {"m", to_json(c.m)}, {"kind", c.kind == Curve11::Smooth ? "smooth" : "reducible"}};
}

json to_json(const Mat3& A) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json r = json::array();
        for (int k = 0; k < 3; ++k) r.push_back(to_json(A(i, k)));
        rows.push_back(r);
    }
    return rows;
}

json matrix_json(const Mat3& A) { return {{"A", to_json(A)}}; }

json to_json(const CanonicalClass& c) {
    json j = {{"tag", to_string(c.tag)}, {"transform", to_json(c.transform)}, {"min_gap", c.min_gap}};
    if (c.tag == ClassTag::A1) j["lambda"] = to_json(c.lambda);
    return j;
}

json to_json(const UnitaryForm& f) {
    return {{"lambda", to_json(f.lambda)}, {"a", to_json(f.a)}, {"b", to_json(f.b)}, {"c", to_json(f.c)},
            {"U", to_json(f.U)}};
}

json to_json(const SingularLocus& s) {
    json j;
    switch (s.kind) {
        case SingularLocus::Smooth: j["kind"] = "smooth"; break;
        case SingularLocus::Point: j["kind"] = "point"; break;
        case SingularLocus::Curve: j["kind"] = "curve"; break;
    }
    if (s.point) j["point"] = to_json(*s.point);
    if (s.curve) j["curve"] = to_json(*s.curve);
    if (s.kind != SingularLocus::Smooth) j["eigenvalue"] = to_json(s.eigenvalue);
    return j;
}

json to_json(const FiberSet& f) {
    json j = {{"type", to_string(f.kind)}, {"condition", f.condition}, {"boundary", f.boundary}};
    if (f.kind == FiberSet::Circle) {
        j["lambda"] = f.circle_lambda;
        j["frame"] = to_json(f.frame);
    } else {
        json pts = json::array();
        for (auto& p : f.points) pts.push_back(to_json(p));
        j["points"] = pts;
    }
    j["warnings"] = f.warnings;
    return j;
}

json to_json(const Intersection& I) {
    static const char* names[] = {"empty", "one_point", "two_points", "shared_component"};
    json pts = json::array();
    for (auto& x : I.points) pts.push_back(to_json(x));
    return {{"kind", names[I.kind]}, {"points", pts}};
}

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return finite(j, "complex number");
    require(j.is_array() && j.size() == 2, "complex number: expected [re, im]");
    return {finite(j[0], "complex number"), finite(j[1], "complex number")};
}

ProjVec projvec_from_json(const json& j) {
    const json& fl = field(j, "flavor", "ProjVec");
    require(fl.is_string() && (fl == "point" || fl == "line"), "ProjVec: flavor must be \"point\" or \"line\"");
    const json& c = field(j, "coords", "ProjVec");
    require(c.is_array() && c.size() == 3, "ProjVec: coords must have three entries");
    ProjVec v;
    v.flavor = fl == "point" ? Flavor::Point : Flavor::Line;
    for (int k = 0; k < 3; ++k) v.v(k) = cplx_from_json(c[k]);
    if (v.v.norm() < kZeroTol) throw ZeroVector("ProjVec: zero vector");
    return v;
}

FlagPoint flag_from_json(const json& j) {
    FlagPoint x{projvec_from_json(field(j, "p", "FlagPoint")), projvec_from_json(field(j, "l", "FlagPoint"))};
    return x;
}

Curve11 curve_from_json(const json& j) {
    ProjVec q = projvec_from_json(field(j, "q", "Curve11"));
    ProjVec m = projvec_from_json(field(j, "m", "Curve11"));
    require(q.flavor == Flavor::Point && m.flavor == Flavor::Line, "Curve11: q must be a point and m a line");
    // keep the given representatives so emitted curves re-parse bit for bit
    Curve11 c = curve(q, m);
    c.q = q;
    c.m = m;
    return c;
}

Mat3 mat3_from_json(const json& j) {
    require(j.is_array() && j.size() == 3, "matrix: expected three rows");
    Mat3 A;
    for (int i = 0; i < 3; ++i) {
        require(j[i].is_array() && j[i].size() == 3, "matrix: each row needs three entries");
        for (int k = 0; k < 3; ++k) A(i, k) = cplx_from_json(j[i][k]);
    }
    return A;
}

Mat3 matrix_from_json(const json& j) { return mat3_from_json(field(j, "A", "matrix")); }

CanonicalClass canonical_class_from_json(const json& j) {
    const json& t = field(j, "tag", "CanonicalClass");
    require(t.is_string(), "CanonicalClass: tag must be a string");
    CanonicalClass c{ClassTag::A1, 0, Mat3::Identity(), 0};
    bool found = false;
    for (ClassTag k : {ClassTag::A1, ClassTag::A2, ClassTag::A3, ClassTag::A4, ClassTag::A5})
        if (to_string(k) == t.get<std::string>()) {
            c.tag = k;
            found = true;
        }
    require(found, "CanonicalClass: unknown tag");
    if (j.contains("lambda")) c.lambda = cplx_from_json(j["lambda"]);
    if (j.contains("transform")) c.transform = mat3_from_json(j["transform"]);
    if (j.contains("min_gap")) c.min_gap = finite(j["min_gap"], "min_gap");
    return c;
}

FiberSet fiberset_from_json(const json& j) {
    const json& t = field(j, "type", "FiberSet");
    FiberSet f;
    if (t == "empty") f.kind = FiberSet::Empty;
    else if (t == "one") f.kind = FiberSet::One;
    else if (t == "two") f.kind = FiberSet::Two;
    else if (t == "circle") f.kind = FiberSet::Circle;
    else throw InputError("FiberSet: unknown type");
    if (j.contains("points"))
        for (auto& p : j["points"]) f.points.push_back(projvec_from_json(p));
    if (j.contains("lambda")) f.circle_lambda = finite(j["lambda"], "lambda");
    if (j.contains("frame")) f.frame = mat3_from_json(j["frame"]);
    if (j.contains("condition")) f.condition = j["condition"].get<std::string>();
    if (j.contains("boundary")) f.boundary = j["boundary"].get<bool>();
    if (j.contains("warnings")) f.warnings = j["warnings"].get<std::vector<std::string>>();
    return f;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tw
