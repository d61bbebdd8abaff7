// modesim command-line front end: verification suites, qutrit synthesis,
// intensity-profile emission, and the polarization-OAM CNOT, all with
// machine-readable JSON reports.
//
// Exit codes: 0 = all checks passed, 1 = a verification tolerance was
// violated, 2 = usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modesim/evolve.hpp"
#include "modesim/fock.hpp"
#include "modesim/generators.hpp"
#include "modesim/nogo.hpp"
#include "modesim/optics.hpp"
#include "modesim/qutrit.hpp"
#include "modesim/verify.hpp"
#include "modesim/version.hpp"

namespace {

using namespace modesim;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsageError = 2;

struct RunConfig {
    int n_max = 8;
    std::uint64_t seed = 42;
    std::map<std::string, double> tolerances;
    std::string output_dir = ".";
    std::string format = "json";

    double tol(const std::string& name, double fallback) const {
        auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }

    void validate() const {
        if (n_max < 4 || n_max > 16)
            throw CLI::ValidationError("--n-max must be in [4, 16]");
        if (format != "json" && format != "csv")
            throw CLI::ValidationError("--format must be json or csv");
        for (const auto& [name, value] : tolerances)
            if (value <= 0.0)
                throw CLI::ValidationError("tolerance '" + name + "' must be positive");
    }

    json echo() const {
        json j;
        j["n_max"] = n_max;
        j["seed"] = seed;
        j["format"] = format;
        j["tolerances"] = tolerances;
        j["version"] = kVersion;
        return j;
    }
};

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::FileError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "n_max" || key == "n-max")
            cfg.n_max = std::stoi(value);
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "out" || key == "output_dir")
            cfg.output_dir = value;
        else if (key == "format")
            cfg.format = value;
        else if (key.rfind("tol.", 0) == 0)
            cfg.tolerances[key.substr(4)] = std::stod(value);
        else
            throw CLI::ValidationError("unknown config key '" + key + "'");
    }
}

void write_report(const RunConfig& cfg, const std::string& name, const json& body) {
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / (name + ".json");
    std::ofstream out(path);
    out << body.dump(2) << "\n";
    std::cout << "report: " << path.string() << "\n";
}

complexd parse_complex(const std::string& tok) {
    // Accepts "1.5", "1.5+0.5i", "1.5-0.5i", "0.5i".
    std::string s = tok;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() == 'i' || s.back() == 'j') {
        s.pop_back();
        // Split at the last +/- that is not an exponent sign.
        for (int k = static_cast<int>(s.size()) - 1; k > 0; --k) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                return {std::stod(s.substr(0, k)), std::stod(s.substr(k))};
            }
        }
        return {0.0, std::stod(s)};
    }
    return {std::stod(s), 0.0};
}

FockVector parse_state_spec(const std::string& spec, const TruncationScheme& trunc) {
    if (spec.rfind("HG:", 0) == 0) {
        std::istringstream ss(spec.substr(3));
        int nx, ny;
        char comma;
        if (!(ss >> nx >> comma >> ny) || comma != ',')
            throw std::invalid_argument("malformed HG spec, expected HG:nx,ny");
        return FockVector::basis_state({nx, ny}, trunc);
    }
    if (spec.rfind("LG:", 0) == 0) {
        std::istringstream ss(spec.substr(3));
        int l, p;
        char comma;
        if (!(ss >> l >> comma >> p) || comma != ',')
            throw std::invalid_argument("malformed LG spec, expected LG:l,p");
        return lg_state(l, p, trunc);
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("state spec is neither HG:/LG: shorthand nor a readable file");
    std::stringstream buf;
    buf << in.rdbuf();
    FockVector v = fock_vector_from_json(buf.str());
    if (v.trunc.n_max != trunc.n_max)
        throw std::invalid_argument("state file n_max does not match --n-max");
    return v;
}

int run_algebra_verify(const RunConfig& cfg) {
    const TruncationScheme trunc(cfg.n_max);
    const VerificationReport tables = verify_commutator_tables(
        trunc, cfg.tol("algebra_passive", 1e-12), cfg.tol("algebra_active", 1e-10));
    const StructureReport su3 = verify_structure_constants(trunc, cfg.tol("structure", 1e-12));

    json j;
    j["config"] = cfg.echo();
    j["commutator_tables"] = json::parse(tables.to_json());
    j["su3_structure"] = json::parse(su3.to_json());
    const bool ok = tables.ok && su3.ok;
    j["ok"] = ok;
    write_report(cfg, "algebra-verify", j);
    std::cout << (ok ? "algebra-verify: all residuals within tolerance\n"
                     : "algebra-verify: FAILURES present\n");
    return ok ? kExitOk : kExitVerificationFailure;
}

int run_nogo_report(const RunConfig& cfg) {
    const TruncationScheme trunc(cfg.n_max);
    const NogoReport rep = run_nogo_suite(trunc, cfg.seed, 20);
    json j;
    j["config"] = cfg.echo();
    j["report"] = json::parse(rep.to_json());
    j["ok"] = rep.ok;
    write_report(cfg, "nogo-report", j);
    for (const auto& c : rep.claims)
        std::cout << (c.pass ? "pass " : "FAIL ") << c.claim_id << ": " << c.verdict << "\n";
    return rep.ok ? kExitOk : kExitVerificationFailure;
}

int run_prepare_qutrit(const RunConfig& cfg, const std::string& target_spec) {
    std::vector<complexd> comps;
    std::istringstream ss(target_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) comps.push_back(parse_complex(tok));
    if (comps.size() != 3)
        throw std::invalid_argument("--target must have three components c00,c10,c01");

    QutritAmplitudes target{comps[0], comps[1], comps[2]};
    const double n = target.norm();
    if (n == 0.0) throw std::invalid_argument("--target must be nonzero");
    target = {target.c00 / n, target.c10 / n, target.c01 / n};
    target = target.canonical();

    const PreparationAngles angles = solve_preparation(target);
    const TruncationScheme trunc(cfg.n_max);
    const QutritAmplitudes prepared =
        prepare_qutrit(angles.theta, angles.phi, angles.theta_p, angles.phi_p, trunc);
    const double residual = (prepared.canonical().as_vector() - target.as_vector()).norm();

    const double tol = cfg.tol("prepare", 1e-10);
    json j;
    j["config"] = cfg.echo();
    j["target"] = {{"c00", {target.c00.real(), target.c00.imag()}},
                   {"c10", {target.c10.real(), target.c10.imag()}},
                   {"c01", {target.c01.real(), target.c01.imag()}}};
    j["angles"] = {{"theta", angles.theta},
                   {"phi", angles.phi},
                   {"theta_p", angles.theta_p},
                   {"phi_p", angles.phi_p},
                   {"degenerate", angles.degenerate}};
    j["residual"] = residual;
    j["ok"] = residual < tol;
    write_report(cfg, "prepare-qutrit", j);
    std::cout << "theta=" << angles.theta << " phi=" << angles.phi << " theta'=" << angles.theta_p
              << " phi'=" << angles.phi_p << " residual=" << residual << "\n";
    return residual < tol ? kExitOk : kExitVerificationFailure;
}

int run_decompose(const RunConfig& cfg, const std::string& unitary_file) {
    std::ifstream in(unitary_file);
    if (!in) throw std::invalid_argument("cannot open unitary file: " + unitary_file);
    json ju = json::parse(in);
    if (!ju.is_array() || ju.size() != 3)
        throw std::invalid_argument("unitary file must hold a 3x3 array of [re, im] pairs");
    Eigen::Matrix3cd u;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            u(r, c) = complexd(ju[r][c][0].get<double>(), ju[r][c][1].get<double>());

    const GateSequence seq = decompose_su3(u);
    const Eigen::Matrix3cd rebuilt =
        std::exp(complexd(0.0, seq.global_phase)) * evaluate_ht(seq);
    const double err = (rebuilt - u).norm();
    const double tol = cfg.tol("decompose", 1e-8);

    json j;
    j["config"] = cfg.echo();
    j["sequence"] = json::parse(seq.to_json());
    j["reconstruction_error"] = err;
    j["ok"] = err < tol;
    write_report(cfg, "decompose", j);
    std::cout << "elements=" << seq.elements.size() << " global_phase=" << seq.global_phase
              << " reconstruction_error=" << err << "\n";
    return err < tol ? kExitOk : kExitVerificationFailure;
}

int run_profile(const RunConfig& cfg, const std::string& state_spec,
                const std::string& generator, double param, double half_extent, int resolution) {
    const TruncationScheme trunc(cfg.n_max);
    FockVector state = parse_state_spec(state_spec, trunc);
    if (state.norm() == 0.0) throw std::invalid_argument("state is zero");
    state = state.normalized_copy();

    if (!generator.empty()) {
        const FockOperator g = build_generator(parse_label(generator), trunc);
        state = apply(expi(g, param), state);
    }

    const SpatialGrid grid(half_extent, resolution);
    const Eigen::MatrixXd intensity = intensity_profile(state, grid);

    std::filesystem::create_directories(cfg.output_dir);
    std::filesystem::path data_path = std::filesystem::path(cfg.output_dir) / "profile";
    if (cfg.format == "csv") {
        data_path += ".csv";
        std::ofstream out(data_path);
        write_intensity_csv(out, intensity, grid);
    } else {
        data_path += ".intensity.json";
        std::ofstream out(data_path);
        out << intensity_json(intensity, grid, 0) << "\n";
    }

    const double power = intensity.sum() * grid.cell_area();
    json j;
    j["config"] = cfg.echo();
    j["state"] = state_spec;
    if (!generator.empty()) {
        j["generator"] = generator;
        j["param"] = param;
    }
    j["grid"] = {{"half_extent", grid.half_extent},
                 {"resolution", grid.resolution},
                 {"waist", grid.waist}};
    j["grid_power"] = power;
    j["data_file"] = data_path.filename().string();
    j["ok"] = true;
    write_report(cfg, "profile", j);
    std::cout << "intensity written to " << data_path.string() << " (grid power " << power
              << ")\n";
    return kExitOk;
}

json pol_oam_json(const PolOamState& s) {
    json j = json::array();
    for (int k = 0; k < 4; ++k) j.push_back({s.amp(k).real(), s.amp(k).imag()});
    return j;
}

int run_cnot(const RunConfig& cfg, const std::string& input_spec) {
    const InterferometerModel model = build_cnot_interferometer();
    const double tol = cfg.tol("cnot", 1e-10);

    json j;
    j["config"] = cfg.echo();
    j["interferometer"] = {{"phase_h", {model.phase_h.real(), model.phase_h.imag()}},
                           {"phase_v", {model.phase_v.real(), model.phase_v.imag()}},
                           {"max_deviation_vs_gate", model.max_deviation}};

    bool ok = model.max_deviation < tol;
    static const char* names[4] = {"H,+1", "H,-1", "V,+1", "V,-1"};
    if (input_spec.empty()) {
        auto& table = j["truth_table"] = json::array();
        for (int k = 0; k < 4; ++k) {
            PolOamState in;
            in.amp(k) = 1.0;
            const PolOamState gate = cnot_apply(in);
            const PolOamState path = cnot_interferometer(in);
            const double dev = (gate.amp - path.amp).norm();
            ok = ok && dev < tol;
            table.push_back({{"input", names[k]},
                             {"gate_output", pol_oam_json(gate)},
                             {"interferometer_output", pol_oam_json(path)},
                             {"deviation", dev}});
        }
    } else {
        PolOamState in;
        if (input_spec == "H+1") in = PolOamState::basis(0, +1);
        else if (input_spec == "H-1") in = PolOamState::basis(0, -1);
        else if (input_spec == "V+1") in = PolOamState::basis(1, +1);
        else if (input_spec == "V-1") in = PolOamState::basis(1, -1);
        else if (input_spec == "bell") {
            in.amp << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0), 0.0;
        } else {
            std::ifstream fin(input_spec);
            if (!fin) throw std::invalid_argument("unknown cnot input spec: " + input_spec);
            const json ja = json::parse(fin);
            if (!ja.is_array() || ja.size() != 4)
                throw std::invalid_argument("cnot input file must hold four [re, im] pairs");
            for (int k = 0; k < 4; ++k) in.amp(k) = complexd(ja[k][0], ja[k][1]);
            in.amp.normalize();
        }
        const PolOamState gate = cnot_apply(in);
        const PolOamState path = cnot_interferometer(in);
        const double dev = (gate.amp - path.amp).norm();
        ok = ok && dev < tol;
        j["input"] = pol_oam_json(in);
        j["gate_output"] = pol_oam_json(gate);
        j["interferometer_output"] = pol_oam_json(path);
        j["deviation"] = dev;
    }
    j["ok"] = ok;
    write_report(cfg, "cnot", j);
    std::cout << (ok ? "cnot: interferometer matches gate level\n" : "cnot: MISMATCH\n");
    return ok ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode spatial-mode operator algebra simulator"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;
    std::vector<std::string> tol_specs;
    app.add_option("--config", config_file, "flat key=value config file (flags override)");
    app.add_option("--n-max", cfg.n_max, "total-order cutoff (default 8)");
    app.add_option("--seed", cfg.seed, "random seed for sampled claims (default 42)");
    app.add_option("--tol", tol_specs, "tolerance override, name=value (repeatable)");
    app.add_option("--out", cfg.output_dir, "report output directory (default .)");
    app.add_option("--format", cfg.format, "profile data format: json|csv");

    auto* algebra = app.add_subcommand("algebra-verify",
                                       "verify all commutator tables and SU(3) structure constants");
    auto* nogo = app.add_subcommand("nogo-report", "run the no-go proposition suite");

    std::string target_spec;
    auto* prepare = app.add_subcommand("prepare-qutrit", "solve and verify qutrit preparation");
    prepare->add_option("--target", target_spec, "target amplitudes c00,c10,c01")->required();

    std::string unitary_file;
    auto* decompose = app.add_subcommand("decompose", "decompose a 3x3 unitary into triad rotations");
    decompose->add_option("--unitary", unitary_file, "JSON file with a 3x3 array of [re,im] pairs")
        ->required();

    std::string state_spec, generator;
    double param = 0.0, half_extent = 4.0;
    int resolution = 256;
    auto* profile = app.add_subcommand("profile", "emit the spatial intensity profile of a state");
    profile->add_option("--state", state_spec, "HG:nx,ny | LG:l,p | JSON state file")->required();
    profile->add_option("--generator", generator, "generator label to apply first");
    profile->add_option("--param", param, "evolution parameter t for --generator");
    profile->add_option("--half-extent", half_extent, "grid half extent in waists (default 4)");
    profile->add_option("--resolution", resolution, "grid points per axis (default 256)");

    std::string cnot_input;
    auto* cnot = app.add_subcommand("cnot", "polarization-OAM CNOT: gate level vs interferometer");
    cnot->add_option("--input", cnot_input, "H+1|H-1|V+1|V-1|bell|file (omit for truth table)");

    // Let the shared flags (--n-max, --seed, ...) appear after the subcommand.
    for (auto* sub : {algebra, nogo, prepare, decompose, profile, cnot}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsageError;
    }

    try {
        if (!config_file.empty()) {
            // Flags override the file: load the file into a fresh config,
            // then re-apply every flag that was given on the command line.
            RunConfig from_file;
            load_config_file(config_file, from_file);
            if (app.get_option("--n-max")->count() == 0) cfg.n_max = from_file.n_max;
            if (app.get_option("--seed")->count() == 0) cfg.seed = from_file.seed;
            if (app.get_option("--out")->count() == 0) cfg.output_dir = from_file.output_dir;
            if (app.get_option("--format")->count() == 0) cfg.format = from_file.format;
            for (const auto& [name, value] : from_file.tolerances)
                cfg.tolerances.emplace(name, value);  // flag-provided names win below
        }
        for (const auto& spec : tol_specs) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--tol expects name=value");
            cfg.tolerances[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
        }
        cfg.validate();

        if (algebra->parsed()) return run_algebra_verify(cfg);
        if (nogo->parsed()) return run_nogo_report(cfg);
        if (prepare->parsed()) return run_prepare_qutrit(cfg, target_spec);
        if (decompose->parsed()) return run_decompose(cfg, unitary_file);
        if (profile->parsed())
            return run_profile(cfg, state_spec, generator, param, half_extent, resolution);
        if (cnot->parsed()) return run_cnot(cfg, cnot_input);
        return kExitUsageError;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    }
}
