// latticeweak: command-line driver for the lattice beta-decay toolkit.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "latticeweak/compiler.hpp"
#include "latticeweak/decay_models.hpp"
#include "latticeweak/evolution.hpp"
#include "latticeweak/io_util.hpp"
#include "latticeweak/resources.hpp"
#include "latticeweak/simulator.hpp"
#include "latticeweak/spectra.hpp"

using namespace latticeweak;

namespace {

std::string params_config_text(const LatticeParams& p) { return params_to_json(p).dump(); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

std::vector<double> time_grid(double tmax, double dt) {
    if (dt <= 0.0 || tmax < 0.0) throw std::invalid_argument("invalid time grid");
    std::vector<double> ts;
    for (double t = 0.0; t <= tmax + 1e-12; t += dt) ts.push_back(t);
    return ts;
}

int run_ham(const std::string& params, const std::string& piece, const std::string& form,
            const std::string& out) {
    const LatticeParams p = params_from_preset_or_file(params);
    const QubitLayout lay(LayoutScheme::Interleaved, p.L);
    OperatorSum op;
    if (piece == "quarks") {
        op = build_h_quarks(p, lay);
    } else if (piece == "leptons") {
        op = build_h_leptons(p, lay, form == "standard" ? LeptonBasis::Standard : LeptonBasis::Tilde);
    } else if (piece == "glue") {
        op = build_h_glue(p, lay);
    } else if (piece == "beta") {
        BetaForm f = BetaForm::Valence;
        if (form == "standard") f = BetaForm::Standard;
        else if (form == "tilde") f = BetaForm::Tilde;
        else if (form == "grouped") f = BetaForm::Grouped;
        else if (form != "valence" && !form.empty())
            throw std::invalid_argument("unknown beta form '" + form + "'");
        op = build_h_beta(p, lay, f);
    } else if (piece == "majorana") {
        op = build_h_majorana(p, lay);
    } else if (piece == "full") {
        op = build_full(p, lay);
    } else {
        throw std::invalid_argument("unknown piece '" + piece + "'");
    }
    std::ostringstream os;
    os << "# version: " << kVersion << "\n# config: " << config_hash(params_config_text(p))
       << "\n# piece: " << piece << "\n";
    os << op.normalized().dump();
    if (out.empty()) std::cout << os.str();
    else write_text(out, os.str());
    return 0;
}

int run_spectrum(const std::string& params, const std::string& out) {
    const LatticeParams p = params_from_preset_or_file(params);
    const SpectrumTable table = spectrum_table(p);
    CsvArtifact a = make_artifact(params_config_text(p));
    a.columns = {"label", "gap"};
    for (const auto& row : table) {
        std::ostringstream g;
        g.precision(12);
        g << row.gap;
        a.rows.push_back({row.label, g.str()});
    }
    if (out.empty()) std::cout << a.to_string();
    else a.save(out);
    return 0;
}

int run_evolve(const std::string& params, const std::string& method, int steps, double tmax,
               double dt, const std::string& op_form, bool entropy, const std::string& out) {
    const LatticeParams p = params_from_preset_or_file(params);
    const std::vector<double> times = time_grid(tmax, dt);
    CsvArtifact a = make_artifact(params_config_text(p));
    a.add_meta("method", method == "exact" ? "exact" : ("trotter-" + std::to_string(steps)));
    a.add_meta("operator", op_form);

    if (method == "exact") {
        const QubitLayout lay(LayoutScheme::Interleaved, p.L);
        FullOptions opt;
        if (op_form == "full") opt.beta_form = BetaForm::Tilde;
        else if (op_form != "valence") throw std::invalid_argument("operator must be valence|full");
        const OperatorSum H = build_full(p, lay, opt);
        LatticeParams p0 = p;
        p0.G = 0.0;
        const SectorSpec sector = dynamical_sector(H, lay);
        const Eigen::VectorXcd v0 = dressed_delta_minus(build_full(p0, lay), sector, lay);
        const ExactEvolver ev(H, sector);
        a.columns = entropy ? std::vector<std::string>{"t", "p_decay", "s_linear"}
                            : std::vector<std::string>{"t", "p_decay"};
        for (double t : times) {
            const Eigen::VectorXcd v = ev.state(v0, t);
            std::vector<double> row = {t, decay_probability(sector, v, lay)};
            if (entropy) row.push_back(linear_entropy(sector, v, valence_quark_qubits(lay)));
            a.add_row(row);
        }
    } else if (method == "trotter") {
        if (op_form != "valence")
            throw std::invalid_argument("trotter evolution supports the valence operator only");
        a.columns = {"t", "p_decay"};
        const std::vector<double> probs = two_factor_trotter_decay(p, times, steps);
        for (std::size_t i = 0; i < times.size(); ++i) a.add_row({times[i], probs[i]});
    } else {
        throw std::invalid_argument("method must be exact|trotter");
    }
    if (out.empty()) std::cout << a.to_string();
    else a.save(out);
    return 0;
}

int run_circuit(const std::string& params, bool prep, int trotter_steps, double t,
                const std::string& out, const std::string& counts_out) {
    const LatticeParams p = params_from_preset_or_file(params);
    const QubitLayout lay(LayoutScheme::Interleaved, p.L);
    Circuit c;
    if (prep) {
        c = state_prep_circuit(p);
    } else if (trotter_steps > 0) {
        c = state_prep_circuit(p, lay.nqubits() + 1);
        c.append(trotter_step_circuit(p, lay, t, trotter_steps));
    } else {
        throw std::invalid_argument("choose --prep or --trotter N");
    }
    std::ostringstream os;
    os << "# version: " << kVersion << "\n# config: " << config_hash(params_config_text(p))
       << "\n" << c.to_text();
    if (out.empty()) std::cout << os.str();
    else write_text(out, os.str());
    if (!counts_out.empty()) {
        nlohmann::json j = gate_count_report(p, lay, t, std::max(1, trotter_steps)).to_json();
        j["circuit_cnot"] = c.cnot_count();
        write_text(counts_out, j.dump(2) + "\n");
    }
    return 0;
}

int run_sample(const std::string& circuit_path, int shots, std::uint64_t seed,
               const std::string& post, const std::string& out) {
    const Circuit c = Circuit::load(circuit_path);
    ShotResult r = run(c, shots, seed);
    if (post != "none") {
        // Infer the layout from the circuit width (16 qubits per site + optional ancilla).
        const int L = c.nqubits / 16;
        if (L < 1) throw std::invalid_argument("circuit too small for post-selection");
        const QubitLayout lay(LayoutScheme::Interleaved, L);
        PostSelectFilters f;
        if (post == "BLA" || (post == "BL" && c.nqubits == 16 * L + 1))
            f.ancilla = 16 * L;
        else if (post != "BL")
            throw std::invalid_argument("post-select must be BL|BLA|none");
        r = post_select(r, lay, f);
    }
    if (out.empty()) std::cout << r.to_json_string() << "\n";
    else write_text(out, r.to_json_string() + "\n");
    return 0;
}

int run_resources(const std::string& l_list, const std::string& out) {
    nlohmann::json arr = nlohmann::json::array();
    std::stringstream ss(l_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) arr.push_back(resource_estimate(std::stoll(tok)).to_json());
    const std::string text = arr.dump(2) + "\n";
    if (out.empty()) std::cout << text;
    else write_text(out, text);
    return 0;
}

int run_ensemble(const std::string& yf_list, int samples, std::uint64_t seed, double tmax,
                 double dt, const std::string& out) {
    std::vector<int> yfs;
    std::stringstream ss(yf_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) yfs.push_back(std::stoi(tok));
    if (yfs.empty()) throw std::invalid_argument("empty --yf list");
    const std::vector<double> times = time_grid(tmax, dt);

    CsvArtifact a = make_artifact("ensemble yf=" + yf_list + " samples=" + std::to_string(samples),
                                  static_cast<long long>(seed));
    a.add_meta("fit_window", "P<0.95 down to 1.5x plateau");
    a.columns = {"t"};
    std::vector<PersistenceCurve> curves;
    for (int yf : yfs) {
        EnsembleConfig cfg;
        cfg.y_f = yf;
        cfg.samples = samples;
        cfg.seed = seed;
        curves.push_back(ensemble_persistence(cfg, times));
        a.columns.push_back("p_yf" + std::to_string(yf));
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> row = {times[i]};
        for (const auto& c : curves) row.push_back(c.persistence[i]);
        a.add_row(row);
    }
    if (out.empty()) std::cout << a.to_string();
    else a.save(out);
    return 0;
}

int run_widths(double G, double g_V, double Q, double G_F, double V_ud, double M_n, double M_p,
               double m_e, double g_A, const std::string& out) {
    nlohmann::json j;
    j["fprime"] = {{"y0", phase_space_fprime(0.0)},
                   {"y0.5", phase_space_fprime(0.5)},
                   {"y1", phase_space_fprime(1.0)}};
    j["delta_width"] = delta_width_1p1(G, g_V, Q);
    j["neutron_width"] = neutron_width(G_F, V_ud, M_n, M_p, m_e, g_V, g_A);
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) std::cout << text;
    else write_text(out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"latticeweak: 1+1D lattice beta-decay simulation toolkit"};
    app.require_subcommand(1);

    std::string params = "paper-l1", piece = "full", form, out, counts_out, circuit_path;
    std::string method = "exact", op_form = "valence", post = "BL", yf_list = "20,50,100,400";
    std::string l_list = "5,10,50,100";
    int steps = 20, trotter_steps = 0, shots = 200, samples = 2000;
    std::uint64_t seed = 1;
    double tmax = 8.0, dt = 0.05, t = 0.5;
    bool prep = false, entropy = false;
    double wG = 1.0, g_V = 1.0, Q = 1.0, G_F = 1.1663787e-5, V_ud = 0.97435;
    double M_n = 0.93957, M_p = 0.93827, m_e = 0.000511, g_A = 1.27;

    auto* c_ham = app.add_subcommand("ham", "dump a Hamiltonian piece as Pauli terms");
    c_ham->add_option("--params", params);
    c_ham->add_option("--piece", piece);
    c_ham->add_option("--form", form);
    c_ham->add_option("--out", out);

    auto* c_spec = app.add_subcommand("spectrum", "baryon/lepton spectrum table");
    c_spec->add_option("--params", params);
    c_spec->add_option("--out", out);

    auto* c_ev = app.add_subcommand("evolve", "decay-probability curve");
    c_ev->add_option("--params", params);
    c_ev->add_option("--method", method);
    c_ev->add_option("--steps", steps);
    c_ev->add_option("--tmax", tmax);
    c_ev->add_option("--dt", dt);
    c_ev->add_option("--operator", op_form);
    c_ev->add_flag("--entropy", entropy);
    c_ev->add_option("--out", out);

    auto* c_circ = app.add_subcommand("circuit", "compile circuits");
    c_circ->add_option("--params", params);
    c_circ->add_flag("--prep", prep);
    c_circ->add_option("--trotter", trotter_steps);
    c_circ->add_option("--t", t);
    c_circ->add_option("--out", out);
    c_circ->add_option("--counts", counts_out);

    auto* c_sample = app.add_subcommand("sample", "shot sampling with post-selection");
    c_sample->add_option("--circuit", circuit_path)->required();
    c_sample->add_option("--shots", shots);
    c_sample->add_option("--seed", seed);
    c_sample->add_option("--post-select", post);
    c_sample->add_option("--out", out);

    auto* c_res = app.add_subcommand("resources", "per-step gate resource formulas");
    c_res->add_option("--l", l_list);
    c_res->add_option("--out", out);

    auto* c_ens = app.add_subcommand("ensemble", "random-matrix persistence curves");
    c_ens->add_option("--yf", yf_list);
    c_ens->add_option("--samples", samples);
    c_ens->add_option("--seed", seed);
    c_ens->add_option("--tmax", tmax);
    c_ens->add_option("--dt", dt);
    c_ens->add_option("--out", out);

    auto* c_w = app.add_subcommand("widths", "analytic decay widths");
    c_w->add_option("--G", wG);
    c_w->add_option("--gv", g_V);
    c_w->add_option("--Q", Q);
    c_w->add_option("--gf", G_F);
    c_w->add_option("--vud", V_ud);
    c_w->add_option("--mn", M_n);
    c_w->add_option("--mp", M_p);
    c_w->add_option("--me", m_e);
    c_w->add_option("--ga", g_A);
    c_w->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_ham->parsed()) return run_ham(params, piece, form, out);
        if (c_spec->parsed()) return run_spectrum(params, out);
        if (c_ev->parsed())
            return run_evolve(params, method, steps, tmax, dt, op_form, entropy, out);
        if (c_circ->parsed()) return run_circuit(params, prep, trotter_steps, t, out, counts_out);
        if (c_sample->parsed()) return run_sample(circuit_path, shots, seed, post, out);
        if (c_res->parsed()) return run_resources(l_list, out);
        if (c_ens->parsed()) return run_ensemble(yf_list, samples, seed, tmax, dt, out);
        if (c_w->parsed()) return run_widths(wG, g_V, Q, G_F, V_ud, M_n, M_p, m_e, g_A, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
