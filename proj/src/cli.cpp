#include "siclab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "siclab/fiducials.hpp"
#include "siclab/galois.hpp"
#include "siclab/json_io.hpp"
#include "siclab/momentmap.hpp"
#include "siclab/overlap.hpp"
#include "siclab/quadfield.hpp"
#include "siclab/selftest.hpp"

namespace siclab {

namespace {

// Malformed input; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SourceOptions {
    std::optional<double> family_t;
    std::string catalog_id;
    std::string vector_file;
    std::string catalog_path;
};

void add_source_options(CLI::App* cmd, SourceOptions& s) {
    cmd->add_option("--family-t", s.family_t, "Member t of the d = 3 exact family");
    cmd->add_option("--catalog", s.catalog_id,
                    "Catalog id: d2, d3, bengtsson, or an index into the catalog file");
    cmd->add_option("--vector", s.vector_file, "JSON file holding the vector");
    cmd->add_option("--catalog-file", s.catalog_path, "Catalog path (default $SICLAB_CATALOG or ./fiducials.json)");
}

CVector load_vector(int d, const SourceOptions& s) {
    const int given = (s.family_t ? 1 : 0) + (s.catalog_id.empty() ? 0 : 1) + (s.vector_file.empty() ? 0 : 1);
    if (given != 1) throw InputError("give exactly one of --family-t, --catalog, --vector");
    CVector z;
    if (s.family_t) {
        if (d != 3) throw InputError("--family-t requires --d 3");
        z = exact_fiducial_d3(*s.family_t).vector;
    } else if (!s.catalog_id.empty()) {
        if (auto rec = catalog_fiducial(s.catalog_id)) {
            z = rec->vector;
        } else {
            std::size_t pos = 0;
            int idx = -1;
            try {
                idx = std::stoi(s.catalog_id, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != s.catalog_id.size() || idx < 0) throw InputError("unknown catalog id " + s.catalog_id);
            const auto cat = read_catalog(resolve_catalog_path(s.catalog_path));
            if (idx >= static_cast<int>(cat.size())) throw InputError("catalog index out of range");
            z = cat[idx].vector;
        }
    } else {
        std::ifstream in(s.vector_file);
        if (!in) throw InputError("cannot open " + s.vector_file);
        z = vector_from_json(Json::parse(in));
    }
    if (z.size() != d) {
        throw InputError("vector has length " + std::to_string(z.size()) + " but d = " + std::to_string(d));
    }
    if (z.norm() == 0.0) throw InputError("vector is zero");
    return z.normalized();
}

void emit(std::ostream& out, const Json& j, bool compact) {
    out << (compact ? j.dump() : j.dump(2)) << '\n';
}

std::vector<double> kronecker_angles(int m, int i) {
    static const double roots[] = {2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0};
    std::vector<double> th(m);
    for (int k = 0; k < m; ++k) {
        const double a = std::sqrt(roots[k % 12]) + k / 12;
        th[k] = 2.0 * std::numbers::pi * (i * a - std::floor(i * a));
    }
    return th;
}

std::pair<int, int> parse_pair(const std::string& s) {
    std::istringstream in(s);
    int a = 0;
    int b = 0;
    char comma = 0;
    if (!(in >> a >> comma >> b) || comma != ',' || !in.eof()) {
        throw InputError("expected p1,p2 but got \"" + s + "\"");
    }
    return {a, b};
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heisenberg SIC-POVM toolkit"};
    app.require_subcommand(1);

    bool json = false;
    double tol = kSicTol;
    int d = 0;
    SourceOptions src;
    auto common = [&](CLI::App* cmd, bool needs_d = true) {
        cmd->add_flag("--json", json, "Compact JSON output");
        cmd->add_option("--tol", tol, "Tolerance");
        if (needs_d) cmd->add_option("--d", d, "Dimension")->required();
    };

    auto* verify = app.add_subcommand("verify", "Test a vector for the SIC property");
    common(verify);
    add_source_options(verify, src);

    auto* overlap = app.add_subcommand("overlap", "Print the overlap table of a vector");
    common(overlap);
    add_source_options(overlap, src);

    auto* moment = app.add_subcommand("moment", "Sample the admissible set in moment coordinates");
    common(moment);
    std::string subgroup = "0,1";
    int samples = 360;
    std::string csv_path;
    moment->add_option("--subgroup", subgroup, "Generator p1,p2 of the cyclic subgroup");
    moment->add_option("--samples", samples, "Samples per branch");
    moment->add_option("--csv", csv_path, "Also write CSV to this file");
    moment->add_option("--catalog-file", src.catalog_path, "Catalog path");

    auto* search = app.add_subcommand("search", "Numerical fiducial search");
    common(search);
    SearchConfig cfg;
    bool no_append = false;
    bool all_restarts = false;
    search->add_option("--restarts", cfg.restarts, "Independent restarts");
    search->add_option("--seed", cfg.seed, "Master seed");
    search->add_option("--max-iters", cfg.max_iters, "Iterations per restart");
    search->add_option("--workers", cfg.workers, "Worker threads (0 = hardware)");
    search->add_option("--catalog-file", src.catalog_path, "Catalog path");
    search->add_flag("--no-append", no_append, "Do not append to the catalog");
    search->add_flag("--all", all_restarts, "Run every restart instead of stopping at the first success");

    auto* orbits = app.add_subcommand("orbits", "M-orbits of Z_dbar^2 and ideal divisors of dbar");
    common(orbits);

    auto* fieldinfo = app.add_subcommand("fieldinfo", "Quadratic field data attached to d");
    common(fieldinfo);

    auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
    common(selftest, false);
    int dmin = 3;
    int dmax = 12;
    selftest->add_option("--dmin", dmin, "Smallest dimension");
    selftest->add_option("--dmax", dmax, "Largest dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            const Dimension dim(d);
            const CVector z = load_vector(d, src);
            const OverlapTable table = overlap_map(dim, z);
            const SicReport rep = is_sic_fiducial(table, tol);
            double lo = 1.0;
            double hi = 0.0;
            for (int a = 0; a < dim.dbar(); ++a) {
                for (int b = 0; b < dim.dbar(); ++b) {
                    if (a % d == 0 && b % d == 0) continue;
                    const double v = std::norm(table.at(a, b));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            if (json) {
                emit(out,
                     {{"d", d},
                      {"pass", rep.pass},
                      {"worst_residual", rep.worst_residual},
                      {"worst_index", {rep.worst_index.p1(), rep.worst_index.p2()}},
                      {"target", 1.0 / (d + 1)},
                      {"min_abs2", lo},
                      {"max_abs2", hi},
                      {"vector", vector_to_json(z)}},
                     true);
            } else {
                out << (rep.pass ? "PASS" : "FAIL") << " d=" << d << " worst residual "
                    << rep.worst_residual << " at (" << rep.worst_index.p1() << ","
                    << rep.worst_index.p2() << ")\n"
                    << "|Phi|^2 range [" << lo << ", " << hi << "], target " << 1.0 / (d + 1) << '\n';
            }
            return rep.pass ? 0 : 1;
        }

        if (*overlap) {
            const Dimension dim(d);
            const OverlapTable table = overlap_map(dim, load_vector(d, src));
            if (json) {
                emit(out, to_json(table), true);
            } else {
                out << std::setprecision(6);
                for (int a = 0; a < dim.dbar(); ++a) {
                    for (int b = 0; b < dim.dbar(); ++b) {
                        const Complex c = table.at(a, b);
                        out << (b ? "  " : "") << c.real() << (c.imag() < 0 ? "-" : "+")
                            << std::abs(c.imag()) << 'i';
                    }
                    out << '\n';
                }
            }
            return 0;
        }

        if (*moment) {
            const Dimension dim(d);
            if (d < 3) throw InputError("moment requires d >= 3");
            if (samples < 1) throw InputError("--samples must be positive");
            const auto [g1, g2] = parse_pair(subgroup);
            CyclicSubgroup c{DisplacementIndex(dim, 0, 1), dim.dbar()};
            try {
                c = make_cyclic_subgroup(dim, DisplacementIndex(dim, g1, g2));
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            const AdmissibleGeometry geo = admissible_geometry(dim);
            const int m = free_angle_count(dim);
            std::vector<AdmissiblePoint> points;
            std::vector<int> branches;
            for (int branch : dim.even() ? std::vector<int>{1, -1} : std::vector<int>{1}) {
                const int count = m == 0 ? 1 : samples;
                for (int i = 0; i < count; ++i) {
                    std::vector<double> th;
                    if (m == 1) th = {2.0 * std::numbers::pi * i / samples};
                    else if (m > 1) th = kronecker_angles(m, i);
                    points.push_back(admissible_parametrize(dim, th, branch));
                    branches.push_back(branch);
                }
            }

            std::optional<CVector> fid;
            if (d <= 4) {
                fid = catalog_fiducial("d" + std::to_string(d))->vector;
            } else {
                for (const auto& rec : read_catalog(resolve_catalog_path(src.catalog_path))) {
                    if (rec.d == d) {
                        fid = rec.vector.normalized();
                        break;
                    }
                }
            }

            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                if (!f) throw InputError("cannot write " + csv_path);
                write_points_csv(f, points);
            }
            if (!json) {
                write_points_csv(out, points);
                return 0;
            }
            Json pts = Json::array();
            int inside = 0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                std::vector<double> x(points[i].x.data(), points[i].x.data() + d);
                pts.push_back({{"x", x}, {"inside_delta", points[i].inside}, {"branch", branches[i]}});
                inside += points[i].inside ? 1 : 0;
            }
            Json report = {{"d", d},
                           {"subgroup", {c.generator.p1(), c.generator.p2()}},
                           {"sphere_radius", geo.sphere_radius},
                           {"torus_radius", geo.torus_radius},
                           {"torus_dim", geo.torus_dim},
                           {"components", geo.components},
                           {"point_count", points.size()},
                           {"inside_count", inside},
                           {"points", pts}};
            if (fid) {
                const TorusEigenbasis basis = torus_eigenbasis(dim, c);
                Json images = Json::array();
                for (const CVector& v : heisenberg_orbit(dim, *fid)) {
                    const RVector x = moment_map(dim, basis, v.normalized());
                    images.push_back({{"x", std::vector<double>(x.data(), x.data() + d)},
                                      {"admissible", is_admissible_image(dim, x, tol)}});
                }
                report["fiducial_images"] = images;
            }
            emit(out, report, true);
            return 0;
        }

        if (*search) {
            cfg.d = d;
            cfg.tol = tol;
            cfg.stop_on_success = !all_restarts;
            if (cfg.restarts < 1 || cfg.max_iters < 1) throw InputError("restarts and max-iters must be positive");
            Dimension check(d);
            const SearchResult res = search_fiducial(cfg);
            const std::string path = resolve_catalog_path(src.catalog_path);
            bool appended = false;
            if (res.success && !no_append) {
                append_to_catalog(path, res.best);
                appended = true;
            }
            Json report = {{"d", d},
                           {"success", res.success},
                           {"residual", res.best.residual},
                           {"loss", *res.best.loss},
                           {"seed", cfg.seed},
                           {"best_restart", res.best_restart},
                           {"restarts_run", res.restarts_run},
                           {"successes", res.successes},
                           {"vector", vector_to_json(res.best.vector)},
                           {"catalog", appended ? Json(path) : Json(nullptr)}};
            emit(out, report, json);
            return res.success ? 0 : 1;
        }

        if (*orbits) {
            if (d < 4) throw InputError("orbits requires d >= 4");
            CorrespondenceReport rep;
            try {
                rep = orbit_divisor_correspondence(d);
            } catch (const std::length_error& e) {
                throw InputError(e.what());
            }
            emit(out, to_json(rep), json);
            return 0;
        }

        if (*fieldinfo) {
            if (d <= 3) throw InputError("fieldinfo requires d >= 4");
            Json j = fieldinfo_json(d);
            j["ray_class_orders"] = to_json(ray_class_group_orders(d));
            emit(out, j, json);
            return 0;
        }

        if (*selftest) {
            if (dmin < 2 || dmax < dmin || dmax > kMaxDimension) throw InputError("invalid dimension range");
            const SelftestResult r = run_selftest(dmin, dmax, json ? nullptr : &out);
            if (json) {
                emit(out, {{"checks", r.checks}, {"failures", r.failures}, {"failed", r.failed}}, true);
            } else {
                out << r.checks - r.failures << "/" << r.checks << " checks passed\n";
            }
            return r.failures == 0 ? 0 : 1;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace siclab
