/* Command-line front end: curve files in, reproducible reports out.
 *
 * Subcommands: omega, expand, wave, wkb-check, quantize, oracle, certify.
 * Exit codes: 0 success, 1 mathematical check failure, 2 usage error,
 * 3 guard violation.  Reports are plain text; --json writes a sidecar with
 * exact rational strings.
 */

#include "qcurve/certify.hpp"
#include "qcurve/json_io.hpp"
#include "qcurve/oracles.hpp"
#include "qcurve/wkb.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qcurve;

namespace {

int exit_usage = 2, exit_guard = 3, exit_math = 1;

void write_sidecar(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw MathError("cannot write sidecar " + path);
    out << j.dump(2) << "\n";
}

std::vector<long> parse_profile(const std::string& s) {
    std::vector<long> mu;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            mu.push_back(std::stol(cur));
            cur.clear();
        } else
            cur.push_back(ch);
    }
    if (!cur.empty()) mu.push_back(std::stol(cur));
    return mu;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact topological recursion and quantum curve toolkit"};
    app.require_subcommand(1);

    std::string curve_path, op_path, p0_path, json_path, gw_path;
    int g = 0, n = 0, K = 2;
    long depth = 8;
    std::string bounds = "1,2", tval, primitive = "principal", basepoint = "0";

    auto add_curve = [&](CLI::App* cmd) {
        cmd->add_option("--curve", curve_path, "curve file")->required();
        cmd->add_option("--json", json_path, "machine-readable sidecar path");
    };

    CLI::App* omega_cmd = app.add_subcommand("omega", "print the tensor data of omega^g_n");
    omega_cmd->add_option("g", g)->required();
    omega_cmd->add_option("n", n)->required();
    add_curve(omega_cmd);

    CLI::App* expand_cmd = app.add_subcommand("expand", "print the weighted-count table M_{g,n}");
    expand_cmd->add_option("g", g)->required();
    expand_cmd->add_option("n", n)->required();
    expand_cmd->add_option("--depth", depth, "largest sum(mu)")->required();
    add_curve(expand_cmd);

    CLI::App* wave_cmd = app.add_subcommand("wave", "print S_0..S_K");
    wave_cmd->add_option("--k", K, "largest k")->required();
    wave_cmd->add_option("--primitive", primitive, "principal | basepoint");
    wave_cmd->add_option("--basepoint", basepoint, "basepoint for the basepoint primitive");
    wave_cmd->add_option("--t", tval, "apply the t-shift with this rational t");
    add_curve(wave_cmd);

    CLI::App* wkb_cmd = app.add_subcommand("wkb-check", "residual ledger of an operator on the wave");
    wkb_cmd->add_option("--op", op_path, "operator file")->required();
    wkb_cmd->add_option("--k", K, "verify through hbar^K")->required();
    wkb_cmd->add_option("--t", tval, "difference flavour: override the operator parameter t");
    add_curve(wkb_cmd);

    CLI::App* quant_cmd = app.add_subcommand("quantize", "reconstruct hbar corrections from the wave");
    quant_cmd->add_option("--k", K, "reconstruct through hbar^K")->required();
    quant_cmd->add_option("--bounds", bounds, "degree bounds dx,dy")->required();
    quant_cmd->add_option("--p0", p0_path, "operator file with the defining polynomial P_0")->required();
    add_curve(quant_cmd);

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "run an independent oracle");
    std::vector<std::string> oracle_args;
    oracle_cmd->add_option("args", oracle_args, "NAME ARGS...")->expected(-1);
    oracle_cmd->add_option("--json", json_path, "machine-readable sidecar path");

    CLI::App* certify_cmd = app.add_subcommand("certify", "run the full acceptance suite");
    certify_cmd->add_option("--curve", curve_path, "Catalan-type curve file (optional override)");
    certify_cmd->add_option("--gw-curve", gw_path, "difference-curve file (optional override)");
    certify_cmd->add_option("--json", json_path, "machine-readable sidecar path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (omega_cmd->parsed() || expand_cmd->parsed()) {
            if (n < 1 || 2 * g - 2 + n < -1) {
                std::cerr << "usage: (g, n) must satisfy n >= 1 and 2g-2+n >= -1\n";
                return exit_usage;
            }
        }

        if (omega_cmd->parsed()) {
            SpectralCurve c = SpectralCurve::from_file(curve_path);
            Engine eng(c);
            const Multidifferential& md = eng.omega(g, n);
            std::cout << "omega(" << g << "," << n << ") on " << curve_path << "\n";
            if (!md.stable) {
                std::cout << (n == 1 ? "unstable: -y dx in closed form\n"
                                     : "unstable: Cauchy kernel dz1 dz2/(z1-z2)^2\n");
                return 0;
            }
            for (const auto& [key, cv] : md.tensor.terms()) {
                for (const auto& b : key) {
                    FieldElement a = eng.branch().points[b.alpha].alpha;
                    std::string root = a.is_zero() ? "z"
                                                   : (a.str()[0] == '-' ? "z + " + a.str().substr(1)
                                                                        : "z - " + a.str());
                    std::cout << "(" << root << ")^-" << b.k + 1 << " ";
                }
                std::cout << " coeff " << cv.str() << "\n";
            }
            for (const auto& w : eng.warnings()) std::cout << "# warning: " << w << "\n";
            write_sidecar(json_path, to_json(md.tensor, eng.branch()));
            return 0;
        }

        if (expand_cmd->parsed()) {
            SpectralCurve c = SpectralCurve::from_file(curve_path);
            Engine eng(c);
            if (g == 0 && n == 1) {
                SeriesQ s = eng.dF01_dx_series(static_cast<int>(2 * depth + 1));
                std::cout << "dF01/dx coefficients of x^-(2n+1) [Catalan numbers]: ";
                for (long j = 0; 2 * j + 1 <= 2 * depth + 1; ++j)
                    std::cout << s.coefficient(static_cast<int>(2 * j + 1)).str()
                              << (2 * j + 3 <= 2 * depth + 1 ? "," : "");
                std::cout << "\n";
            }
            auto table = eng.x_expansion(g, n, depth);
            std::cout << "M_{" << g << "," << n << "}(mu) for sum(mu) <= " << depth << ":\n";
            for (const auto& [mu, v] : table) {
                std::cout << "  mu=(";
                for (size_t i = 0; i < mu.size(); ++i) std::cout << (i ? "," : "") << mu[i];
                std::cout << ") -> " << v.str() << "\n";
            }
            write_sidecar(json_path, to_json(table));
            return 0;
        }

        if (wave_cmd->parsed()) {
            SpectralCurve c = SpectralCurve::from_file(curve_path);
            Engine eng(c);
            PrimitiveChoice choice =
                primitive == "basepoint" ? PrimitiveChoice::Basepoint : PrimitiveChoice::PrincipalPart;
            WaveAssembler wa(eng, choice, FieldElement::from_string(basepoint));
            WaveExpansion w = wa.wave(K);
            if (!tval.empty()) w = t_shift(w, FieldElement::from_string(tval));
            for (int k = 0; k <= K; ++k)
                std::cout << "S_" << k << " = " << print_logaug(w.S[k], c.parameter()) << "\n";
            std::cout << "# " << w.normalisation << "\n";
            write_sidecar(json_path, to_json(w, c.parameter()));
            return 0;
        }

        if (wkb_cmd->parsed()) {
            SpectralCurve c = SpectralCurve::from_file(curve_path);
            Engine eng(c);
            OperatorPolynomial op = OperatorPolynomial::from_file(op_path);
            std::vector<std::string> rows;
            bool all_zero = true;
            if (op.flavour == OperatorPolynomial::Flavour::Differential) {
                WaveAssembler wa(eng);
                WaveExpansion w = wa.wave(K);
                auto res = verify_quantum_curve(op, w, K);
                for (int k = 0; k <= K; ++k) {
                    bool z = res[k].is_zero();
                    all_zero = all_zero && z;
                    rows.push_back("hbar^" + std::to_string(k) + " residual: " +
                                   (z ? "0" : print_logaug(res[k], c.parameter())));
                }
            } else {
                std::optional<FieldElement> t;
                if (!tval.empty()) t = FieldElement::from_string(tval);
                auto res = difference_wkb_check(op, eng, K, t);
                for (int k = 0; k <= K; ++k) {
                    bool z = res[k].is_zero();
                    all_zero = all_zero && z;
                    rows.push_back("hbar^" + std::to_string(k) + " residual: " +
                                   (z ? "0" : print_rational(res[k], c.parameter())));
                }
            }
            json jr = json::array();
            for (const auto& r : rows) {
                std::cout << r << "\n";
                jr.push_back(r);
            }
            write_sidecar(json_path, jr);
            if (!all_zero) {
                std::cout << "verification FAILED\n";
                return exit_math;
            }
            std::cout << "all residuals vanish through hbar^" << K << "\n";
            return 0;
        }

        if (quant_cmd->parsed()) {
            SpectralCurve c = SpectralCurve::from_file(curve_path);
            Engine eng(c);
            OperatorPolynomial p0op = OperatorPolynomial::from_file(p0_path);
            auto comma = bounds.find(',');
            if (comma == std::string::npos) {
                std::cerr << "usage: --bounds dx,dy\n";
                return exit_usage;
            }
            int dxb = std::stoi(bounds.substr(0, comma));
            int dyb = std::stoi(bounds.substr(comma + 1));
            WaveAssembler wa(eng);
            WaveExpansion w = wa.wave(K);
            auto rec = reconstruct_operator(w, semiclassical_limit(p0op), dxb, dyb, K);
            std::cout << rec.op.print();
            for (size_t i = 0; i < rec.solution_space_dim.size(); ++i)
                std::cout << "# solution space dimension at hbar^" << i + 1 << ": "
                          << rec.solution_space_dim[i] << "\n";
            json j{{"operator", rec.op.print()}, {"solution_space_dim", rec.solution_space_dim}};
            write_sidecar(json_path, j);
            return 0;
        }

        if (oracle_cmd->parsed()) {
            if (oracle_args.empty()) {
                std::cerr << "usage: oracle NAME ARGS...\n";
                return exit_usage;
            }
            const std::string& name = oracle_args[0];
            json j;
            auto need = [&](size_t k) {
                if (oracle_args.size() != k + 1)
                    throw GuardError("oracle " + name + ": wrong argument count");
            };
            if (name == "catalan") {
                need(1);
                j = catalan(std::stol(oracle_args[1])).str();
            } else if (name == "stirling") {
                need(2);
                j = stirling_first(std::stol(oracle_args[1]), std::stol(oracle_args[2])).str();
            } else if (name == "bernoulli") {
                need(1);
                j = bernoulli(std::stol(oracle_args[1])).str();
            } else if (name == "dessin") {
                need(2);
                DessinCount d = dessin_count(std::stol(oracle_args[1]), std::stol(oracle_args[2]));
                j = {{"disconnected", d.disconnected.str()},
                     {"connected", d.connected.str()},
                     {"closed_form", d.closed_form.str()}};
            } else if (name == "belyi") {
                need(2);
                j = belyi_count(std::stol(oracle_args[1]), parse_profile(oracle_args[2])).str();
            } else if (name == "hermite") {
                need(1);
                j = print_polynomial(hermite(std::stol(oracle_args[1])), "x");
            } else if (name == "hermite-check") {
                need(2);
                j = hermite_wave_check(std::stol(oracle_args[1]), std::stoi(oracle_args[2])).is_zero()
                        ? "0"
                        : "nonzero";
            } else if (name == "xexp") {
                need(1);
                json arr = json::array();
                auto cs = wave_x_expansion_closed(std::stoi(oracle_args[1]));
                for (size_t e = 0; e < cs.size(); ++e)
                    arr.push_back({{"e", e + 1}, {"coefficient", cs[e].str()}});
                j = arr;
            } else if (name == "gw-ratio") {
                need(1);
                long d = std::stol(oracle_args[1]);
                j = {{"difference_equation", print_rational(gw_psi_ratio(d), "w")},
                     {"linear_system", print_rational(gw_psi_ratio_via_system(d), "w")}};
            } else if (name == "gw-recursion") {
                need(1);
                j = gw_psi0_recursion_residual(std::stoi(oracle_args[1])).is_zero() ? "0" : "nonzero";
            } else if (name == "toda") {
                need(1);
                j = toda_residual(std::stoi(oracle_args[1])).is_zero() ? "0" : "nonzero";
            } else {
                std::cerr << "unknown oracle '" << name << "'\n";
                return exit_usage;
            }
            std::cout << j.dump(2) << "\n";
            write_sidecar(json_path, j);
            return 0;
        }

        if (certify_cmd->parsed()) {
            std::optional<std::string> cpath, gpath;
            if (!curve_path.empty()) cpath = curve_path;
            if (!gw_path.empty()) gpath = gw_path;
            auto results = run_acceptance(cpath, gpath);
            json jr = json::array();
            for (const auto& r : results) {
                // the stdout report is deterministic; measured runtimes go to stderr
                std::printf("criterion %2d [%s] %-48s [%s]%s%s\n", r.id, r.pass ? "PASS" : "FAIL",
                            r.name.c_str(), r.provenance.c_str(), r.pass ? "" : "  -- ",
                            r.pass ? "" : r.detail.c_str());
                std::fprintf(stderr, "# timing: criterion %2d %7.2fs (budget %.0fs)\n", r.id,
                             r.seconds, r.budget);
                jr.push_back({{"id", r.id},
                              {"name", r.name},
                              {"pass", r.pass},
                              {"seconds", r.seconds},
                              {"budget", r.budget},
                              {"provenance", r.provenance},
                              {"detail", r.detail}});
            }
            write_sidecar(json_path, jr);
            bool all = all_passed(results);
            std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
            return all ? 0 : exit_math;
        }
    } catch (const GuardError& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return exit_guard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_math;
    }
    return exit_usage;
}
