#include "symfi/report.hpp"

#include "symfi/errors.hpp"

#include "json.hpp"

#include <sstream>

namespace symfi {

namespace {

using nlohmann::json;

json poly_to_json(const BiPoly &p) {
    json arr = json::array();
    const auto &terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        arr.push_back({it->first.i, it->first.j, rat_to_string(it->second)});
    return arr;
}

BiPoly poly_from_json(const json &arr) {
    BiPoly p;
    for (const auto &t : arr)
        p.set_coeff(t.at(0).get<int>(), t.at(1).get<int>(), rat_from_string(t.at(2).get<std::string>()));
    return p;
}

} // namespace

Report Report::from_result(const DriverResult &res, std::optional<std::uint64_t> seed,
                           bool deterministic) {
    Report rep;
    switch (res.outcome.kind) {
        case Outcome::Kind::Equation: rep.status = "equation"; break;
        case Outcome::Kind::NoneFound: rep.status = "none"; break;
        case Outcome::Kind::Unknown: rep.status = "unknown"; break;
    }
    if (res.outcome.eq) {
        rep.cls = res.outcome.eq->cls;
        rep.equation = res.outcome.eq;
    }
    rep.diag = res.diag;
    rep.seed = seed;
    rep.deterministic = deterministic;
    return rep;
}

std::string Report::to_json() const {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = "symfi";
    j["version"] = kToolVersion;
    j["status"] = status;
    if (cls) {
        j["class"] = class_name(*cls);
        j["k"] = cls->kind == FIClassKind::Darbouxian ? cls->k : 1;
    }
    if (equation) {
        j["F"] = {{"num", poly_to_json(equation->F.num())}, {"den", poly_to_json(equation->F.den())}};
        j["degree"] = equation->degree;
    }
    json d;
    d["sigma"] = diag.sigma;
    d["kernel_dim"] = diag.kernel_dim;
    d["wdeg"] = diag.wdeg;
    d["chain"] = diag.chain;
    d["reason"] = reason_name(diag.reason);
    d["time_ms"] = diag.time_ms;
    d["point"] = {rat_to_string(diag.point.x0), rat_to_string(diag.point.y0)};
    j["diagnostics"] = d;
    if (seed) j["seed"] = *seed;
    j["deterministic"] = deterministic;
    return j.dump(2);
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "status: " << status << "\n";
    if (cls) os << "class: " << class_name(*cls) << "\n";
    if (equation) {
        const auto &eq = *equation;
        os << "degree: " << eq.degree << "\n";
        switch (eq.cls.kind) {
            case FIClassKind::Rational:
                os << "equation: F - (" << eq.F.to_string() << ") = 0\n";
                break;
            case FIClassKind::Darbouxian:
                if (eq.cls.k == 1)
                    os << "equation: dF/dy - (" << eq.F.to_string() << ") = 0\n";
                else
                    os << "equation: dF/dy - G^(1/" << eq.cls.k << ") = 0 with G = "
                       << eq.F.to_string() << "\n";
                break;
            case FIClassKind::Liouvillian:
                os << "equation: d2F/dy2 - (" << eq.F.to_string() << ") dF/dy = 0\n";
                break;
            case FIClassKind::Riccati:
                os << "equation: d2F/dy2 - (" << eq.F.to_string() << ") F = 0\n";
                break;
        }
    }
    if (status == "unknown") os << "reason: " << reason_name(diag.reason) << "\n";
    os << "point: (" << rat_to_string(diag.point.x0) << ", " << rat_to_string(diag.point.y0) << ")\n";
    os << "sigma: " << diag.sigma << "  kernel_dim: " << diag.kernel_dim << "  wdeg: " << diag.wdeg
       << "\n";
    if (!diag.chain.empty()) {
        os << "chain:";
        for (const auto &c : diag.chain) os << " " << c;
        os << "\n";
    }
    os << "time_ms: " << diag.time_ms << "\n";
    return os.str();
}

Report report_from_json(const std::string &json_text) {
    json j = json::parse(json_text);
    Report rep;
    rep.status = j.at("status").get<std::string>();
    if (j.contains("class")) {
        std::string cn = j["class"].get<std::string>();
        IntegralClass c;
        if (cn == "rational")
            c = {FIClassKind::Rational, 1};
        else if (cn == "liouvillian")
            c = {FIClassKind::Liouvillian, 1};
        else if (cn == "riccati")
            c = {FIClassKind::Riccati, 1};
        else
            c = {FIClassKind::Darbouxian, j.value("k", 1)};
        rep.cls = c;
    }
    if (j.contains("F")) {
        BiPoly num = poly_from_json(j["F"]["num"]);
        BiPoly den = poly_from_json(j["F"]["den"]);
        CanonicalEquation eq = make_equation(*rep.cls, RatFunc(num, den));
        rep.equation = eq;
    }
    const auto &d = j.at("diagnostics");
    rep.diag.sigma = d.at("sigma").get<std::size_t>();
    rep.diag.kernel_dim = d.at("kernel_dim").get<long>();
    rep.diag.wdeg = d.at("wdeg").get<long>();
    rep.diag.chain = d.at("chain").get<std::vector<std::string>>();
    rep.diag.time_ms = d.at("time_ms").get<double>();
    rep.diag.point = BasePoint{rat_from_string(d.at("point")[0].get<std::string>()),
                               rat_from_string(d.at("point")[1].get<std::string>())};
    if (j.contains("seed")) rep.seed = j["seed"].get<std::uint64_t>();
    rep.deterministic = j.value("deterministic", false);
    return rep;
}

bool reports_equal(const Report &a, const Report &b) {
    if (a.status != b.status) return false;
    if (a.cls.has_value() != b.cls.has_value()) return false;
    if (a.cls && !(*a.cls == *b.cls)) return false;
    if (a.equation.has_value() != b.equation.has_value()) return false;
    if (a.equation) {
        if (!(a.equation->F == b.equation->F)) return false;
        if (a.equation->degree != b.equation->degree) return false;
    }
    return a.diag.sigma == b.diag.sigma && a.diag.kernel_dim == b.diag.kernel_dim &&
           a.diag.wdeg == b.diag.wdeg && a.diag.chain == b.diag.chain;
}

} // namespace symfi
