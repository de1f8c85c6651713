#include "siclab/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace siclab {

namespace {

std::mutex catalog_mutex;

std::string big_to_string(const BigInt& x) { return x.str(); }

Json quadint_to_json(const QuadInt& x) {
    // Exact values as strings only when they exceed 64 bits.
    auto one = [](const BigInt& v) -> Json {
        if (v >= std::numeric_limits<std::int64_t>::min() &&
            v <= std::numeric_limits<std::int64_t>::max()) {
            return v.convert_to<std::int64_t>();
        }
        return big_to_string(v);
    };
    return Json::array({one(x.a), one(x.b)});
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument("complex value must be a number or [re, im]");
}

Json vector_to_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

CVector vector_from_json(const Json& j) {
    if (j.is_object()) {
        if (!j.contains("vector")) throw std::invalid_argument("object has no \"vector\" field");
        return vector_from_json(j.at("vector"));
    }
    if (!j.is_array() || j.empty()) throw std::invalid_argument("vector must be a non-empty array");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

Json to_json(const OverlapTable& table) {
    Json values = Json::array();
    for (const Complex& c : table.values()) values.push_back(complex_to_json(c));
    return {{"d", table.dim().d()}, {"dbar", table.dim().dbar()}, {"values", values}};
}

OverlapTable overlap_table_from_json(const Json& j) {
    const Dimension dim(j.at("d").get<int>());
    if (j.contains("dbar") && j.at("dbar").get<int>() != dim.dbar()) {
        throw std::invalid_argument("dbar does not match d");
    }
    const Json& values = j.at("values");
    const auto n = static_cast<std::size_t>(dim.dbar());
    if (!values.is_array() || values.size() != n * n) {
        throw std::invalid_argument("overlap table must hold dbar^2 values");
    }
    OverlapTable table(dim);
    for (std::size_t k = 0; k < values.size(); ++k) {
        table(DisplacementIndex(dim, static_cast<std::int64_t>(k / n), static_cast<std::int64_t>(k % n))) =
            complex_from_json(values[k]);
    }
    return table;
}

Json to_json(const FiducialRecord& rec) {
    Json j = {{"d", rec.d},
              {"vector", vector_to_json(rec.vector)},
              {"source", rec.source},
              {"residual", rec.residual}};
    if (rec.t) j["t"] = *rec.t;
    if (rec.seed) j["seed"] = *rec.seed;
    if (rec.loss) j["loss"] = *rec.loss;
    return j;
}

FiducialRecord fiducial_from_json(const Json& j) {
    FiducialRecord rec;
    rec.d = j.at("d").get<int>();
    rec.vector = vector_from_json(j.at("vector"));
    if (rec.vector.size() != rec.d) throw std::invalid_argument("catalog vector length != d");
    rec.source = j.value("source", std::string("unknown"));
    rec.residual = j.value("residual", 0.0);
    if (j.contains("t")) rec.t = j.at("t").get<double>();
    if (j.contains("seed")) rec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("loss")) rec.loss = j.at("loss").get<double>();
    return rec;
}

std::vector<FiducialRecord> read_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    const Json j = Json::parse(in);
    if (!j.is_array()) throw std::invalid_argument("catalog must be a JSON array");
    std::vector<FiducialRecord> out;
    for (const auto& e : j) out.push_back(fiducial_from_json(e));
    return out;
}

void append_to_catalog(const std::string& path, const FiducialRecord& rec) {
    std::lock_guard lock(catalog_mutex);
    Json arr = Json::array();
    {
        std::ifstream in(path);
        if (in) arr = Json::parse(in);
        if (!arr.is_array()) throw std::invalid_argument("catalog must be a JSON array");
    }
    arr.push_back(to_json(rec));
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write catalog " + path);
    out << arr.dump(2) << '\n';
}

std::string resolve_catalog_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SICLAB_CATALOG"); env && *env) return env;
    return "fiducials.json";
}

Json fieldinfo_json(int d) {
    const FieldData fd = field_data(d);
    const NormOneUnit u = norm_one_unit_and_r(fd);
    const int dbar = d % 2 == 0 ? 2 * d : d;
    Json splitting = Json::object();
    for (const auto& [p, k] : factorize(dbar)) {
        splitting[std::to_string(p)] = to_string(prime_splitting(fd, p));
    }
    const bool j_ok = j_isomorphism_criteria(d);
    Json out = {{"d", d},
                {"dbar", dbar},
                {"D", fd.D},
                {"omega_kind", to_string(fd.kind)},
                {"u_f", quadint_to_json(u.u_f)},
                {"norm_uf", norm(fd, u.u_f).convert_to<std::int64_t>()},
                {"u_D", quadint_to_json(u.u_D)},
                {"r", u.r ? Json(*u.r) : Json(nullptr)},
                {"order_uD_mod_dbar", u.order_mod_dbar},
                {"order_matches_3_iota_r", u.order_matches},
                {"splitting", splitting},
                {"ideal_divisor_count", ideal_divisors(fd, !j_ok).count},
                {"type", to_string(classify_type(d))},
                {"j_criteria", j_ok},
                {"one_orbit", one_orbit_predicate(d)}};
    return out;
}

Json to_json(const OrbitReport& report) {
    Json orbits = Json::array();
    for (const auto& o : report.orbits) {
        Json e = {{"rep", {o.rep.first, o.rep.second}}, {"size", o.size}, {"gcd_level", o.gcd_level}};
        if (!o.split_labels.empty()) {
            Json labels = Json::array();
            for (const auto& l : o.split_labels) labels.push_back({{"p", l.p}, {"e", {l.e1, l.e2}}});
            e["split_labels"] = labels;
        }
        orbits.push_back(e);
    }
    return {{"dbar", report.dbar}, {"group_order", report.group_order}, {"orbits", orbits}};
}

Json to_json(const CorrespondenceReport& r) {
    Json out = {{"d", r.d},
                {"dbar", r.dbar},
                {"type", to_string(r.type)},
                {"j_criteria", r.j_criteria},
                {"treat3_as_ramified", r.treat3_as_ramified},
                {"F", {r.f.m[0], r.f.m[1], r.f.m[2], r.f.m[3]}},
                {"group_order", r.orbits.group_order},
                {"orbits", to_json(r.orbits)["orbits"]},
                {"orbit_count", r.orbit_count},
                {"divisor_count", r.divisor_count},
                {"match", r.match}};
    if (r.algebraic) {
        out["algebraic_model"] = {{"orbit_count", r.algebraic->orbit_count},
                                  {"divisor_count", r.algebraic->divisor_count},
                                  {"group_order", r.algebraic->group_order},
                                  {"match", r.algebraic->match}};
    }
    return out;
}

Json to_json(const RayClassOrders& o) {
    Json levels = Json::array();
    for (const auto& l : o.per_divisor) {
        levels.push_back({{"n", l.n},
                          {"order_OK_units", l.order_OK_units},
                          {"order_uf_subgroup", l.order_uf_subgroup},
                          {"quotient_order", l.quotient_order}});
    }
    return {{"order_OK_units", o.order_OK_units},
            {"order_uf_subgroup", o.order_uf_subgroup},
            {"quotient_order", o.quotient_order},
            {"per_divisor", levels}};
}

}  // namespace siclab
