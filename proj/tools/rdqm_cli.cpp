#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdqm/casoratian.hpp"
#include "rdqm/darboux.hpp"
#include "rdqm/family.hpp"
#include "rdqm/limits.hpp"
#include "rdqm/report.hpp"
#include "rdqm/safe_points.hpp"
#include "rdqm/suite.hpp"

namespace {

using namespace rdqm;

std::map<std::string, Rational> parse_params(const std::string& spec) {
    std::map<std::string, Rational> out;
    if (spec.empty()) return out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("parameter entry '" + item + "' is not name=value");
        out.emplace(item.substr(0, eq), Rational::parse(item.substr(eq + 1)));
    }
    return out;
}

std::vector<long> parse_long_list(const std::string& spec) {
    std::vector<long> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        long v = std::stol(item, &pos);
        if (pos != item.size()) throw InvalidInput("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void emit(const ReportDocument& doc, const std::string& out_path) {
    std::string text = doc.to_json().dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw InvalidInput("cannot open output path '" + out_path + "'");
        f << text;
    }
}

int exit_code(const ReportDocument& doc) { return doc.failed() == 0 ? 0 : 1; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of discrete orthogonal polynomial identities"};
    app.require_subcommand(1);

    std::string family_tok, params_spec, twist_tok = "i", dset_spec, out_path, only_spec;
    long lattice_n = -1, caln = 0;
    unsigned precision = 256;
    long tol_exp = 0;
    unsigned workers = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->add_option("--precision", precision, "working precision in bits")->check(CLI::Range(16u, 65536u));
    };

    CLI::App* verify = app.add_subcommand("verify", "check one Casoratian identity instance");
    verify->add_option("--family", family_tok, "family token")->required();
    verify->add_option("--params", params_spec, "comma list name=p/q")->required();
    verify->add_option("--n", lattice_n, "lattice size N (finite families)");
    verify->add_option("--twist", twist_tok, "twist token (default i)");
    verify->add_option("--dset", dset_spec, "seed degrees, comma list")->required();
    verify->add_option("--caln", caln, "calN >= max(dset)")->required();
    add_common(verify);

    CLI::App* families = app.add_subcommand("families", "run family data checks");
    families->add_option("--family", family_tok, "restrict to one family token");
    add_common(families);

    CLI::App* darboux = app.add_subcommand("darboux", "one-step deformation spectral checks");
    darboux->add_option("--family", family_tok, "family token (default qr)");
    darboux->add_option("--params", params_spec, "comma list name=p/q (default validated point)");
    darboux->add_option("--n", lattice_n, "lattice size N");
    darboux->add_option("--tol-exp", tol_exp, "tolerance 2^-e (default e = precision/2)");
    long vmax = 2;
    darboux->add_option("--vmax", vmax, "highest seed degree to gate and deform (default 2)")
        ->check(CLI::Range(0l, 64l));
    add_common(darboux);

    CLI::App* suite = app.add_subcommand("suite", "run the full verification matrix");
    suite->add_option("--only", only_spec, "filter: family=<tok> or criterion=<1..10>");
    suite->add_option("--workers", workers, "worker threads (0 = hardware)");
    add_common(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        BigFloat::set_default_precision(precision);
        ReportDocument doc;

        if (verify->parsed()) {
            auto params = parse_params(params_spec);
            Family fam = family_from_token(family_tok);
            ParamSet ps = make_params(fam, params, lattice_n);
            TwistId tw = twist_from_token(twist_tok);
            IndexSets idx = build_index_sets(parse_long_list(dset_spec), caln);
            doc.config = {{"command", "verify"}, {"family", family_tok}, {"params", params_spec},
                          {"n", lattice_n}, {"twist", twist_tok}, {"dset", dset_spec},
                          {"caln", caln}, {"precision", precision}};
            CheckRecord rec = suite_detail::timed(
                1, "casoratian-identity", "verify/" + family_tok, family_tok, twist_tok,
                [&](CheckRecord& r) {
                    IdentityInstance inst{ps, tw, idx};
                    ProportionalityReport rep = verify_identity(inst);
                    r.index_sets = suite_detail::index_sets_json(idx);
                    r.skipped_points = static_cast<long>(rep.degenerate_points.size());
                    if (rep.status == ProportionalityStatus::Proportional) {
                        r.ratio = rep.ratio->str();
                    } else if (rep.status == ProportionalityStatus::BothZero) {
                        r.status = "degenerate";
                        r.details = "both sides vanished on the whole grid";
                    } else {
                        r.status = "fail";
                        r.details = "identity falsified at this parameter point";
                    }
                });
            doc.checks.push_back(rec);
            if (fam == Family::qR && tw == TwistId::I && rec.passed()) {
                doc.checks.push_back(suite_detail::timed(
                    2, "constant-A", "verify/" + family_tok + "/constant-A", family_tok, twist_tok,
                    [&](CheckRecord& r) {
                        Rational A = qracah_constant_A(ps, idx);
                        r.ratio = A.str();
                        suite_detail::require(r, A.str() == rec.ratio,
                                              "closed-form constant != measured ratio");
                    }));
            }
            emit(doc, out_path);
            return exit_code(doc);
        }

        if (families->parsed()) {
            doc.config = {{"command", "families"}, {"family", family_tok}};
            for (CheckRecord& rec : suite_family_axioms()) {
                if (!family_tok.empty() && rec.family != family_tok) continue;
                doc.checks.push_back(std::move(rec));
            }
            if (doc.checks.empty()) throw InvalidInput("no checks selected");
            emit(doc, out_path);
            return exit_code(doc);
        }

        if (darboux->parsed()) {
            Family fam = family_tok.empty() ? Family::qR : family_from_token(family_tok);
            if (fam != Family::qR) throw InvalidInput("deformation checks are q-Racah only");
            ParamSet ps = params_spec.empty() ? safe_point(Family::qR)
                                              : make_params(fam, parse_params(params_spec), lattice_n);
            long e = tol_exp > 0 ? tol_exp : static_cast<long>(precision / 2);
            BigFloat tol = BigFloat::pow2(-e);
            doc.config = {{"command", "darboux"}, {"family", meta(fam).token},
                          {"params", params_spec}, {"precision", precision}, {"tol_exp", e}};
            std::vector<long> vs;
            for (long v = 0; v <= vmax; ++v) vs.push_back(v);
            doc.checks.push_back(suite_detail::timed(
                8, "parameter-range", "darboux/range", meta(fam).token, "i", [&](CheckRecord& r) {
                    ParameterRangeReport rep = validate_parameter_range(ps, vs);
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& c : rep.constraints)
                        arr.push_back({{"constraint", c.name}, {"satisfied", c.satisfied}});
                    for (const auto& c : rep.xi_positivity)
                        arr.push_back({{"constraint", c.name}, {"satisfied", c.satisfied}});
                    r.index_sets = arr;
                    suite_detail::require(r, rep.all_ok(), "parameter range violated");
                }));
            for (long d1 = 0; d1 <= vmax; ++d1) {
                doc.checks.push_back(suite_detail::timed(
                    8, "deformed-spectrum", "darboux/d1=" + std::to_string(d1), meta(fam).token, "i",
                    [&](CheckRecord& r) {
                        DeformedBundle b = build_deformed(ps, TwistId::I, d1);
                        suite_detail::require(r, b.boundary_zeroes && b.compat_product && b.compat_sum,
                                              "hatted potential identities");
                        SpectrumReport sr = deformed_spectrum_check(b, tol);
                        suite_detail::require(r, sr.spectrum_ok, "spectrum mismatch");
                        suite_detail::require(r, sr.residuals_ok, "eigenvector residuals");
                        suite_detail::require(r, sr.orthogonal_ok, "orthogonality");
                        suite_detail::require(r, sr.factorized_ok, "factorized form");
                        suite_detail::require(r, sr.determinant_ok, "det(H - Etilde)");
                        r.details = "max eigenvalue error " + sr.max_eigen_error.str(6);
                    }));
            }
            emit(doc, out_path);
            return exit_code(doc);
        }

        // suite
        SuiteConfig cfg;
        cfg.precision = precision;
        cfg.workers = workers;
        if (!only_spec.empty()) {
            auto eq = only_spec.find('=');
            if (eq == std::string::npos) throw InvalidInput("--only expects key=value");
            std::string key = only_spec.substr(0, eq), val = only_spec.substr(eq + 1);
            if (key == "family")
                cfg.only_family = val;
            else if (key == "criterion")
                cfg.only_criterion = std::stoi(val);
            else
                throw InvalidInput("--only supports family=<tok> or criterion=<k>");
        }
        doc.config = {{"command", "suite"}, {"only", only_spec}, {"precision", precision}};
        doc.checks = run_suite(cfg);
        if (doc.checks.empty()) throw InvalidInput("no checks selected");
        emit(doc, out_path);
        return exit_code(doc);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
