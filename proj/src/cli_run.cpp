#include "cfr/cli_run.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfr/complexity.hpp"
#include "cfr/density.hpp"
#include "cfr/errors.hpp"
#include "cfr/functionals.hpp"
#include "cfr/hydrogenic.hpp"
#include "cfr/verify.hpp"

namespace cfr::cli {
namespace {

using complexity::ComplexityReport;
using complexity::format_number;
using complexity::Method;
using functionals::LambdaParam;
using hydrogenic::QuantumNumbers;
using quadrature::QuadratureSpec;

constexpr int kOk = 0;
constexpr int kUsage = 1;          // bad arguments or parameter domain errors
constexpr int kNoConvergence = 2;  // divergent or non-converging integrals
constexpr int kVerifyFail = 3;     // a verification suite reported failures

std::string fraction(int num, int den) {
    if (num == 0) return "0";
    return std::to_string(num) + "/" + std::to_string(den);
}

// The admissible orders form the open interval above max{(d-1)/d, d/(d+2)}.
void require_admissible(double lambda, int dim) {
    if (std::isfinite(lambda) && lambda > LambdaParam::lower_bound(dim)) return;
    throw std::domain_error("lambda must exceed max{" + fraction(dim - 1, dim) +
                            ", " + fraction(dim, dim + 2) + "} for dim " +
                            std::to_string(dim) + " (got lambda = " +
                            format_number(lambda) + ")");
}

std::optional<double> env_tolerance() {
    const char* raw = std::getenv("CFR_TOL");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !std::isfinite(v) || v <= 0.0)
        throw std::domain_error("CFR_TOL must be a positive real, got \"" +
                                std::string(raw) + "\"");
    return v;
}

// Precedence: explicit per-run tolerance, then CFR_TOL, then the default.
QuadratureSpec make_spec(std::optional<double> explicit_tol) {
    QuadratureSpec spec;
    if (!explicit_tol) explicit_tol = env_tolerance();
    if (explicit_tol) spec.rel_tol = *explicit_tol;
    return spec;
}

Method parse_method(const std::string& name) {
    if (name == "closed") return Method::analytic;
    if (name == "quadrature") return Method::quadrature;
    if (name == "both") return Method::both;
    throw std::domain_error("method must be one of closed|quadrature|both");
}

// Evaluates one hydrogenic state, honoring the requested route. A "closed"
// request without a covering closed form degrades to quadrature; *fell_back
// reports that so callers can print a notice.
ComplexityReport hydrogenic_report(const QuantumNumbers& qn,
                                   const LambdaParam& lam, Method method,
                                   const QuadratureSpec& spec,
                                   bool* fell_back) {
    *fell_back = false;
    if (method == Method::analytic) {
        if (auto closed = hydrogenic::cfr_closed(qn, lam)) return *closed;
        *fell_back = true;
        return hydrogenic::cfr_numeric(qn, lam, spec);
    }
    ComplexityReport rep = hydrogenic::cfr_report(qn, lam, method, spec);
    if (method == Method::both && rep.method == "quadrature") *fell_back = true;
    return rep;
}

void fallback_notice(std::ostream& err, const QuantumNumbers& qn,
                     double lambda) {
    err << "notice: no closed form covers lambda = " << format_number(lambda)
        << " for state (" << qn.n << "," << qn.l << "," << qn.m
        << "); using quadrature\n";
}

int cmd_gaussian(double lambda, int dim, const QuadratureSpec& spec,
                 std::ostream& out) {
    require_admissible(lambda, dim);
    LambdaParam lam(lambda, dim);
    // At order 1 the extremal family degenerates to the Gaussian itself.
    densities::Density rho =
        lam.shannon_limit()
            ? (dim == 1 ? densities::gaussian_line(1.0)
                        : densities::gaussian_radial(dim, 1.0))
            : densities::make_generalized_gaussian(lambda, dim).density;
    ComplexityReport rep = complexity::cfr_complexity(rho, lam, spec);
    out << complexity::to_json(rep) << "\n";
    return kOk;
}

int cmd_hydrogenic(int n, int l, int m, double Z, double lambda,
                   const std::string& method_name, const QuadratureSpec& spec,
                   std::ostream& out, std::ostream& err) {
    require_admissible(lambda, 3);
    QuantumNumbers qn(n, l, m, Z);
    LambdaParam lam(lambda, 3);
    Method method = parse_method(method_name);
    bool fell_back = false;
    ComplexityReport rep = hydrogenic_report(qn, lam, method, spec, &fell_back);
    if (fell_back) fallback_notice(err, qn, lambda);
    out << complexity::to_json(rep) << "\n";
    return kOk;
}

// ---- sweep -----------------------------------------------------------

struct SweepRow {
    double lambda = 0.0;
    int n = 0, l = 0, m = 0;
    std::optional<ComplexityReport> report;
    std::string error;  // single line; empty on success
};

std::vector<double> lambda_values(const nlohmann::json& node) {
    std::vector<double> values;
    if (node.is_array()) {
        for (const auto& item : node) {
            if (!item.is_number())
                throw std::domain_error(
                    "sweep config: \"lambdas\" entries must be numbers");
            values.push_back(item.get<double>());
        }
    } else if (node.is_object()) {
        for (const char* key : {"min", "max", "step"})
            if (!node.contains(key) || !node[key].is_number())
                throw std::domain_error(
                    "sweep config: lambda range needs numeric min/max/step");
        double lo = node["min"].get<double>();
        double hi = node["max"].get<double>();
        double step = node["step"].get<double>();
        if (!(step > 0.0) || hi < lo)
            throw std::domain_error(
                "sweep config: lambda range needs step > 0 and max >= min");
        // Nudge the count so an endpoint hit only by rounding still counts.
        int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
        for (int i = 0; i <= count; ++i) values.push_back(lo + i * step);
    } else {
        throw std::domain_error(
            "sweep config: \"lambdas\" must be an array or {min,max,step}");
    }
    if (values.empty())
        throw std::domain_error("sweep config: lambda list is empty");
    return values;
}

int require_int(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key) || !obj[key].is_number_integer())
        throw std::domain_error(std::string("sweep config: state needs integer \"") +
                                key + "\"");
    return obj[key].get<int>();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string json_escape(const std::string& s) {
    std::string escaped;
    for (char c : s) {
        switch (c) {
            case '"': escaped += "\\\""; break;
            case '\\': escaped += "\\\\"; break;
            case '\n': escaped += "\\n"; break;
            case '\t': escaped += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    escaped += buf;
                } else {
                    escaped += c;
                }
        }
    }
    return escaped;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "lambda,n,l,m,fisher_lambda,renyi_power,d_norm,cfr,method,"
           "discrepancy,error\n";
    for (const auto& row : rows) {
        out << format_number(row.lambda) << ',' << row.n << ',' << row.l << ','
            << row.m << ',';
        if (row.report) {
            const auto& r = *row.report;
            out << format_number(r.fisher_lambda) << ','
                << format_number(r.renyi_power) << ','
                << format_number(r.d_norm) << ',' << format_number(r.cfr)
                << ',' << r.method << ','
                << (r.discrepancy ? format_number(*r.discrepancy)
                                  : std::string());
        } else {
            out << ",,,,,";
        }
        out << ',' << csv_escape(row.error) << '\n';
    }
}

void emit_json(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        out << "  {\"lambda\": " << format_number(row.lambda)
            << ", \"n\": " << row.n << ", \"l\": " << row.l
            << ", \"m\": " << row.m;
        if (row.report) {
            const auto& r = *row.report;
            out << ", \"fisher_lambda\": " << format_number(r.fisher_lambda)
                << ", \"renyi_power\": " << format_number(r.renyi_power)
                << ", \"d_norm\": " << format_number(r.d_norm)
                << ", \"cfr\": " << format_number(r.cfr) << ", \"method\": \""
                << r.method << "\", \"discrepancy\": "
                << (r.discrepancy ? format_number(*r.discrepancy)
                                  : std::string("null"));
        }
        if (!row.error.empty())
            out << ", \"error\": \"" << json_escape(row.error) << "\"";
        out << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
}

int cmd_sweep(const std::string& config_path, std::ostream& out,
              std::ostream& err) {
    std::ifstream file(config_path);
    if (!file)
        throw std::domain_error("cannot open config file: " + config_path);
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::domain_error("sweep config is not valid JSON: " +
                                std::string(e.what()));
    }

    if (!cfg.contains("states") || !cfg["states"].is_array() ||
        cfg["states"].empty())
        throw std::domain_error(
            "sweep config: \"states\" must be a non-empty array of {n,l,m}");
    if (!cfg.contains("lambdas"))
        throw std::domain_error("sweep config: missing \"lambdas\"");
    std::vector<double> lambdas = lambda_values(cfg["lambdas"]);

    double Z = 1.0;
    if (cfg.contains("Z")) {
        if (!cfg["Z"].is_number() || !(cfg["Z"].get<double>() > 0.0))
            throw std::domain_error("sweep config: \"Z\" must be positive");
        Z = cfg["Z"].get<double>();
    }
    std::string method_name = cfg.value("method", std::string("both"));
    Method method = parse_method(method_name);
    std::string fmt = cfg.value("format", std::string("csv"));
    if (fmt != "csv" && fmt != "json")
        throw std::domain_error("sweep config: format must be csv or json");
    std::optional<double> tol;
    if (cfg.contains("rel_tol")) {
        if (!cfg["rel_tol"].is_number() ||
            !(cfg["rel_tol"].get<double>() > 0.0))
            throw std::domain_error(
                "sweep config: \"rel_tol\" must be a positive number");
        tol = cfg["rel_tol"].get<double>();
    }
    QuadratureSpec spec = make_spec(tol);

    // State-major, lambda-minor order, evaluated sequentially so reruns are
    // bit-identical. A failing row carries its error in-row; the run goes on.
    std::vector<SweepRow> rows;
    for (const auto& state : cfg["states"]) {
        int n = require_int(state, "n");
        int l = require_int(state, "l");
        int m = require_int(state, "m");
        for (double lambda : lambdas) {
            SweepRow row;
            row.lambda = lambda;
            row.n = n;
            row.l = l;
            row.m = m;
            try {
                require_admissible(lambda, 3);
                QuantumNumbers qn(n, l, m, Z);
                LambdaParam lam(lambda, 3);
                bool fell_back = false;
                row.report =
                    hydrogenic_report(qn, lam, method, spec, &fell_back);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }

    std::string output_path = cfg.value("output", std::string());
    if (output_path.empty()) {
        if (fmt == "csv")
            emit_csv(rows, out);
        else
            emit_json(rows, out);
    } else {
        std::ofstream sink(output_path);
        if (!sink)
            throw std::domain_error("cannot open output file: " + output_path);
        if (fmt == "csv")
            emit_csv(rows, sink);
        else
            emit_json(rows, sink);
        if (!sink.flush())
            throw std::domain_error("failed writing output file: " +
                                    output_path);
        err << "wrote " << rows.size() << " rows to " << output_path << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& suite, std::ostream& out) {
    std::vector<verify::SuiteResult> results;
    if (suite == "all")
        results = verify::run_all();
    else
        results.push_back(verify::run_suite(suite));
    bool all_pass = true;
    for (const auto& sr : results) {
        for (const auto& check : sr.checks) {
            out << (check.pass ? "[PASS] " : "[FAIL] ") << sr.name << "/"
                << check.name << ": " << check.detail << "\n";
            all_pass = all_pass && check.pass;
        }
    }
    out << (all_pass ? "all checks passed\n" : "FAILURES detected\n");
    return all_pass ? kOk : kVerifyFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    CLI::App app{
        "Fisher-Renyi complexity of probability densities: a one-parameter "
        "family of dimensionless, scale-invariant measures with a sharp "
        "lower bound of 1"};
    app.name("cfr");
    app.require_subcommand(1);

    double g_lambda = 0.0;
    int g_dim = 0;
    auto* gaussian = app.add_subcommand(
        "gaussian", "Evaluate the extremal generalized Gaussian (expects 1)");
    gaussian->add_option("--lambda", g_lambda, "Complexity order")->required();
    gaussian->add_option("--dim", g_dim, "Spatial dimension (1-3)")
        ->required()
        ->check(CLI::Range(1, 3));

    int h_n = 0, h_l = 0, h_m = 0;
    double h_Z = 1.0, h_lambda = 0.0;
    std::string h_method = "both";
    auto* hydro = app.add_subcommand(
        "hydrogenic", "Evaluate a bound one-electron state (n, l, m)");
    hydro->add_option("-n", h_n, "Principal quantum number")->required();
    hydro->add_option("-l", h_l, "Orbital quantum number")->required();
    hydro->add_option("-m", h_m, "Magnetic quantum number")->required();
    hydro->add_option("--Z", h_Z, "Nuclear charge (default 1)");
    hydro->add_option("--lambda", h_lambda, "Complexity order")->required();
    hydro->add_option("--method", h_method, "closed|quadrature|both")
        ->check(CLI::IsMember({"closed", "quadrature", "both"}));

    std::string sweep_config;
    auto* sweep = app.add_subcommand(
        "sweep", "Evaluate a batch of states and orders from a JSON config");
    sweep->add_option("--config", sweep_config, "JSON config path")
        ->required()
        ->check(CLI::ExistingFile);

    std::string verify_suite = "all";
    auto* verify_cmd = app.add_subcommand(
        "verify", "Run the property-verification suites");
    verify_cmd->add_option("suite", verify_suite, "Suite to run")
        ->check(CLI::IsMember({"all", "bounds", "scaling", "replication",
                               "rearrangement", "near-continuity",
                               "hydrogenic"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (gaussian->parsed())
            return cmd_gaussian(g_lambda, g_dim, make_spec(std::nullopt), out);
        if (hydro->parsed())
            return cmd_hydrogenic(h_n, h_l, h_m, h_Z, h_lambda, h_method,
                                  make_spec(std::nullopt), out, err);
        if (sweep->parsed()) return cmd_sweep(sweep_config, out, err);
        if (verify_cmd->parsed()) return cmd_verify(verify_suite, out);
        err << "error: no command selected\n";
        return kUsage;
    } catch (const convergence_error& e) {
        err << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const divergence_error& e) {
        err << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace cfr::cli
