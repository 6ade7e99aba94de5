// Command-line front end: every library operation behind one subcommand,
// with deterministic 9-significant-digit output for plotting and regression.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscsheet/continuation.hpp"
#include "oscsheet/io.hpp"
#include "oscsheet/oracle.hpp"
#include "oscsheet/quartets.hpp"
#include "oscsheet/specfun.hpp"
#include "oscsheet/surface.hpp"
#include "oscsheet/zerodim.hpp"

namespace {

using oscsheet::cplx;
using oscsheet::fmt_complex;
using oscsheet::fmt_g9;

// Complex CLI values use the shell-safe "re,im" syntax; a bare "re" is real.
cplx parse_complex(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw std::invalid_argument("expected a number in 're' or 're,im' form: " + text);
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw std::invalid_argument("expected 're,im' form: " + text);
    }
    std::string rest;
    if (in >> rest) throw std::invalid_argument("trailing characters in complex value: " + text);
    return {re, im};
}

struct Tolerances {
    double monodromy_match = 1e-8;
    double trace_residual = 1e-10;
};

Tolerances tolerances_from_env() {
    Tolerances tol;
    if (const char* env = std::getenv("RT_TOL")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value))
            throw std::invalid_argument("RT_TOL must be a positive float");
        tol.monodromy_match = value;
        tol.trace_residual = value;
    }
    return tol;
}

oscsheet::PathSpec load_path(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open path file: " + file);
    nlohmann::json j;
    in >> j;
    return oscsheet::path_from_json(j);
}

void check_track_residuals(const oscsheet::OscillatorPair& osc, const oscsheet::RootTrack& track,
                           double tol) {
    for (const auto& sample : track.samples) {
        const auto coeffs = oscsheet::quartic_coeffs(osc, sample.g);
        for (const cplx& root : sample.roots) {
            const double scale = 1.0 + std::norm(root * root);
            if (std::abs(oscsheet::quartic_value(coeffs, root)) > tol * scale)
                throw oscsheet::convergence_error("trace: sample violates the residual tolerance");
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Riemann-sheet structure of coupled-oscillator spectra and "
                 "zero-dimensional partition functions"};
    app.require_subcommand(1);
    const Tolerances tol = tolerances_from_env();

    // ---- eval ----
    double nu = 2.0, omega = 1.0;
    std::string g_text = "0";
    int sheet_index = 1;
    bool as_json = false;

    auto* eval = app.add_subcommand("eval", "Evaluate the sheet-indexed energy E(g)");
    eval->add_option("--nu", nu, "oscillator frequency nu")->required();
    eval->add_option("--omega", omega, "oscillator frequency omega")->required();
    eval->add_option("--g", g_text, "coupling, 're' or 're,im'")->required();
    eval->add_option("--sheet", sheet_index, "sheet number 1..4")->required();
    eval->add_flag("--json", as_json, "emit JSON");
    eval->callback([&] {
        const oscsheet::OscillatorPair osc{nu, omega};
        const cplx g = parse_complex(g_text);
        const cplx e = oscsheet::eval_sheet(osc, g, oscsheet::SheetId::from_index(sheet_index));
        if (as_json) {
            nlohmann::json j{{"sheet", sheet_index}, {"E", {e.real(), e.imag()}}};
            std::cout << j.dump() << '\n';
        } else {
            std::cout << fmt_complex(e) << '\n';
        }
    });

    // ---- trace ----
    std::string path_file, out_file;
    auto* trace = app.add_subcommand("trace", "Track the four roots along a path, emit CSV");
    trace->add_option("--path", path_file, "path JSON file")->required();
    trace->add_option("--nu", nu)->required();
    trace->add_option("--omega", omega)->required();
    trace->add_option("--out", out_file, "output CSV file (default: stdout)");
    trace->callback([&] {
        const oscsheet::OscillatorPair osc{nu, omega};
        const auto track = oscsheet::track_roots(osc, load_path(path_file));
        check_track_residuals(osc, track, tol.trace_residual);
        if (out_file.empty()) {
            oscsheet::write_trace_csv(std::cout, track);
        } else {
            std::ofstream out(out_file);
            if (!out) throw std::invalid_argument("cannot open output file: " + out_file);
            oscsheet::write_trace_csv(out, track);
        }
    });

    // ---- monodromy ----
    auto* mono = app.add_subcommand("monodromy", "Permutation of the sheets around a closed loop");
    mono->add_option("--path", path_file, "closed path JSON file")->required();
    mono->add_option("--nu", nu)->required();
    mono->add_option("--omega", omega)->required();
    mono->add_flag("--json", as_json, "emit JSON");
    mono->callback([&] {
        const oscsheet::OscillatorPair osc{nu, omega};
        const auto perm = oscsheet::monodromy(osc, load_path(path_file), tol.monodromy_match);
        const auto e0 = oscsheet::sheet_values_at_zero(osc);
        if (as_json) {
            nlohmann::json j{{"cycles", perm.cycles()}};
            auto map = nlohmann::json::array();
            for (int i = 0; i < 4; ++i) map.push_back(perm.to[i] + 1);
            j["maps_to"] = std::move(map);
            std::cout << j.dump() << '\n';
        } else {
            std::cout << "permutation " << perm.cycles() << '\n';
            for (int i = 0; i < 4; ++i)
                std::cout << "Sheet " << i + 1 << " (E(0)=" << fmt_g9(e0[i]) << ") -> Sheet "
                          << perm.to[i] + 1 << " (E(0)=" << fmt_g9(e0[perm.to[i]]) << ")\n";
        }
    });

    // ---- grand-tour ----
    auto* tour = app.add_subcommand("grand-tour",
                                    "Visit all four sheets and report E(0) after each leg");
    tour->alias("grand_tour");
    tour->add_option("--nu", nu)->required();
    tour->add_option("--omega", omega)->required();
    tour->add_flag("--json", as_json, "emit JSON");
    tour->callback([&] {
        const oscsheet::OscillatorPair osc{nu, omega};
        const auto report = oscsheet::grand_tour(osc);
        if (as_json) {
            nlohmann::json j{{"start_E0", report.energy_start}};
            auto legs = nlohmann::json::array();
            for (const auto& leg : report.legs)
                legs.push_back({{"description", leg.description},
                                {"sheet", leg.sheet_after},
                                {"E0", {leg.energy_at_zero.real(), leg.energy_at_zero.imag()}}});
            j["legs"] = std::move(legs);
            j["net_change"] = report.net_change();
            std::cout << j.dump() << '\n';
        } else {
            std::cout << "start Sheet 1 E(0)=" << fmt_g9(report.energy_start) << '\n';
            int k = 1;
            for (const auto& leg : report.legs)
                std::cout << "leg " << k++ << ": " << leg.description << " -> Sheet "
                          << leg.sheet_after << " E(0)=" << fmt_complex(leg.energy_at_zero) << '\n';
            std::cout << "net change " << fmt_g9(report.net_change()) << '\n';
        }
    });

    // ---- quartets ----
    auto* quart = app.add_subcommand("quartets", "Quartet energies at one coupling on one sheet");
    quart->add_option("--nu", nu)->required();
    quart->add_option("--omega", omega)->required();
    quart->add_option("--g", g_text)->required();
    quart->add_option("--sheet", sheet_index)->required();
    quart->add_flag("--json", as_json, "emit JSON");
    quart->callback([&] {
        const oscsheet::OscillatorPair osc{nu, omega};
        const cplx g = parse_complex(g_text);
        const auto q =
            oscsheet::quartet_energies(osc, g, oscsheet::SheetId::from_index(sheet_index));
        if (as_json) {
            nlohmann::json j{{"sheet", sheet_index},
                             {"(0,0)", {q.e00.real(), q.e00.imag()}},
                             {"(0,1)", {q.e01.real(), q.e01.imag()}},
                             {"(1,0)", {q.e10.real(), q.e10.imag()}},
                             {"(1,1)", {q.e11.real(), q.e11.imag()}},
                             {"note", oscsheet::QuartetEnergies::labeling_note}};
            std::cout << j.dump() << '\n';
        } else {
            std::cout << "(0,0) " << fmt_complex(q.e00) << '\n'
                      << "(0,1) " << fmt_complex(q.e01) << '\n'
                      << "(1,0) " << fmt_complex(q.e10) << '\n'
                      << "(1,1) " << fmt_complex(q.e11) << '\n'
                      << "note: " << oscsheet::QuartetEnergies::labeling_note << '\n';
        }
    });

    // ---- oracle ----
    double g_real = 0.0;
    int nmax = 30, klow = 4;
    auto* orac = app.add_subcommand("oracle", "Fock-basis diagonalization of the Hamiltonian");
    orac->add_option("--nu", nu)->required();
    orac->add_option("--omega", omega)->required();
    orac->add_option("--g", g_real, "real coupling inside |g| < 2 nu omega")->required();
    orac->add_option("--nmax", nmax, "quanta per mode");
    orac->add_option("--k", klow, "number of eigenvalues");
    orac->add_flag("--json", as_json, "emit JSON");
    orac->callback([&] {
        const oscsheet::OscillatorPair osc{nu, omega};
        const auto slice =
            oscsheet::lowest_energies(osc, g_real, oscsheet::FockTruncation{nmax}, klow);
        if (as_json) {
            nlohmann::json j{{"n_max", slice.n_max},
                             {"eigenvalues", slice.eigenvalues},
                             {"truncation_error", slice.truncation_error}};
            std::cout << j.dump() << '\n';
        } else {
            for (std::size_t i = 0; i < slice.eigenvalues.size(); ++i)
                std::cout << "E[" << i << "] " << fmt_g9(slice.eigenvalues[i]) << " (trunc err "
                          << fmt_g9(slice.truncation_error[i]) << ")\n";
        }
    });

    // ---- partition ----
    std::string model = "quadratic";
    int sign = 1, sextic_sheet = 0;
    std::string j_text = "0", k_text = "0";
    auto* part = app.add_subcommand("partition", "Zero-dimensional partition functions");
    part->add_option("--model", model, "quadratic | sextic")->required();
    part->add_option("--g", g_text)->required();
    part->add_option("--nu", nu);
    part->add_option("--omega", omega);
    part->add_option("--sign", sign, "sheet sign for the quadratic model (+1 or -1)");
    part->add_option("--sheet", sextic_sheet, "sextic sheet index k (mod 6)");
    part->add_option("--J", j_text, "source coupled to x (quadratic model)");
    part->add_option("--K", k_text, "source coupled to y (quadratic model)");
    part->add_flag("--json", as_json, "emit JSON");
    part->callback([&] {
        const cplx g = parse_complex(g_text);
        if (model == "quadratic") {
            const oscsheet::OscillatorPair osc{nu, omega};
            const oscsheet::SourcePair src{parse_complex(j_text), parse_complex(k_text)};
            const bool sourced = src.J != cplx{} || src.K != cplx{};
            const cplx z = sourced ? oscsheet::z_quadratic_sourced(osc, g, src, sign)
                                   : oscsheet::z_quadratic(osc, g, sign);
            if (as_json) {
                nlohmann::json j{{"model", "quadratic"}, {"Z", {z.real(), z.imag()}}};
                if (sourced) j["note"] = "essential singularities at g = +-2 nu omega";
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "Z " << fmt_complex(z) << '\n';
                if (sourced)
                    std::cout << "note: essential singularities at g = +-2 nu omega\n";
            }
            return;
        }
        if (model != "sextic") throw std::invalid_argument("unknown model: " + model);

        std::optional<cplx> series, connection;
        std::optional<double> quadrature;
        if (std::abs(g) <= 1.6) series = oscsheet::z_sextic_series(g);
        if (std::abs(1.0 - g * g / 4.0) <= 0.8)
            connection = oscsheet::z_sextic_connection(g, oscsheet::SexticSheet{sextic_sheet});
        if (g.imag() == 0.0 && std::abs(g.real()) < 2.0)
            quadrature = oscsheet::z_sextic_quadrature(g.real());
        if (!series && !connection && !quadrature)
            throw std::domain_error("partition: coupling outside every evaluation domain");

        std::vector<cplx> values;
        std::string header, row;
        const auto add = [&](const char* name, cplx v) {
            if (!header.empty()) { header += ' '; row += ' '; }
            header += name;
            row += fmt_complex(v);
            values.push_back(v);
        };
        if (series) add("series", *series);
        if (connection) add("connection", *connection);
        if (quadrature) add("quadrature", *quadrature);
        double max_delta = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i + 1; j < values.size(); ++j)
                max_delta = std::max(max_delta, std::abs(values[i] - values[j]));
        if (as_json) {
            nlohmann::json j{{"model", "sextic"}, {"max_abs_delta", max_delta}};
            if (series) j["series"] = {series->real(), series->imag()};
            if (connection) j["connection"] = {connection->real(), connection->imag()};
            if (quadrature) j["quadrature"] = *quadrature;
            std::cout << j.dump() << '\n';
        } else {
            std::cout << header << " max_abs_delta\n" << row << ' ' << fmt_g9(max_delta) << '\n';
        }
    });

    // ---- greens ----
    int alpha = 0, beta = 0;
    auto* greens = app.add_subcommand("greens", "Sextic Green's function G_{alpha,beta}");
    greens->add_option("--alpha", alpha)->required();
    greens->add_option("--beta", beta)->required();
    greens->add_option("--g", g_text)->required();
    greens->add_flag("--json", as_json, "emit JSON");
    greens->callback([&] {
        const cplx g = parse_complex(g_text);
        const oscsheet::GreenIndex idx{alpha, beta};
        const cplx series = oscsheet::greens_series(idx, g);
        std::optional<double> quad;
        if (g.imag() == 0.0 && std::abs(g.real()) < 2.0)
            quad = oscsheet::greens_quadrature(idx, g.real());
        std::optional<oscsheet::Rational> exponent;
        if ((alpha + beta) % 2 == 0) exponent = oscsheet::singularity_exponent(idx);
        if (as_json) {
            nlohmann::json j{{"alpha", alpha}, {"beta", beta},
                             {"series", {series.real(), series.imag()}}};
            if (quad) {
                j["quadrature"] = *quad;
                j["abs_delta"] = std::abs(series - *quad);
            }
            if (exponent)
                j["exponent"] = std::to_string(exponent->num) + "/" + std::to_string(exponent->den);
            std::cout << j.dump() << '\n';
        } else {
            std::cout << "series " << fmt_complex(series) << '\n';
            if (quad) {
                std::cout << "quadrature " << fmt_g9(*quad) << '\n'
                          << "abs_delta " << fmt_g9(std::abs(series - *quad)) << '\n';
            }
            if (exponent)
                std::cout << "exponent " << exponent->num << '/' << exponent->den << '\n';
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
