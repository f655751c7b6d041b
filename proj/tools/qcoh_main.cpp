#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoh/coherence.hpp"
#include "qcoh/discord.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/infotheory.hpp"
#include "qcoh/io.hpp"
#include "qcoh/operations.hpp"
#include "qcoh/states.hpp"
#include "qcoh/verify.hpp"
#include "qcoh/version.hpp"

namespace {

using nlohmann::json;
using namespace qcoh;

// Exit contract: 0 success, 1 internal-consistency failure, 2 bad input,
// 3 verification counterexamples found.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitCounterexample = 3;

std::string fmt6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

// Aligned two-column table; numbers at 6 decimals, JSON keeps full precision.
class Table {
  public:
    void row(const std::string& key, double v) { rows_.emplace_back(key, fmt6(v)); }
    void row(const std::string& key, const std::string& v) { rows_.emplace_back(key, v); }
    void row(const std::string& key, bool v) { rows_.emplace_back(key, v ? "yes" : "no"); }
    void row(const std::string& key, int v) { rows_.emplace_back(key, std::to_string(v)); }

    void print(std::ostream& os) const {
        std::size_t width = 0;
        for (const auto& [k, _] : rows_) width = std::max(width, k.size());
        for (const auto& [k, v] : rows_)
            os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
    }

  private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

void emit(const json& report, const Table& table, const std::string& format) {
    if (format == "table")
        table.print(std::cout);
    else
        std::cout << report.dump(2) << "\n";
}

struct CommonOpts {
    std::string basis_file;
    std::string format = "json";
    std::string output;
    OptimizerOptions opts;
    std::uint64_t seed = 0;
};

void add_format_flag(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
}

void add_optimizer_flags(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--restarts", c.opts.restarts, "Optimizer restarts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd->add_option("--tol", c.opts.tol, "Optimizer objective tolerance")
        ->capture_default_str();
    cmd->add_option("--max-iters", c.opts.max_iters, "Optimizer iterations per restart")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

json report_header(std::uint64_t seed) {
    return json{{"version", kVersion}, {"seed", seed}};
}

std::pair<int, int> parse_dims(const std::string& dims) {
    const auto x = dims.find('x');
    if (x == std::string::npos)
        throw qcoh::ParseError("--dims expects AxB, e.g. 2x2; got '" + dims + "'");
    try {
        const int a = std::stoi(dims.substr(0, x));
        const int b = std::stoi(dims.substr(x + 1));
        if (a < 1 || b < 1) throw std::invalid_argument("nonpositive");
        return {a, b};
    } catch (const std::exception&) {
        throw qcoh::ParseError("--dims expects positive integers AxB; got '" + dims + "'");
    }
}

int cmd_measure(const std::string& input, const CommonOpts& c) {
    DensityMatrix rho = load_state(input);
    CoherenceReport rep;
    if (c.basis_file.empty()) {
        rep = coherence_report(rho);
    } else {
        Mat basis = load_basis(c.basis_file);
        if (basis.rows() != rho.mat.rows())
            throw DimensionError("basis dimension does not match the state");
        rep = coherence_report(rho, basis, "custom");
    }
    json j = report_header(c.seed);
    j["entropy"] = rep.entropy;
    j["c_r"] = rep.c_r;
    j["c_l1"] = rep.c_l1;
    j["basis"] = rep.basis_label;
    Table t;
    t.row("entropy", rep.entropy);
    t.row("c_r", rep.c_r);
    t.row("c_l1", rep.c_l1);
    t.row("basis", rep.basis_label);
    emit(j, t, c.format);
    return kExitOk;
}

int cmd_holevo(const std::string& input, const CommonOpts& c) {
    Ensemble e = load_ensemble(input);
    ChannelReport rep;
    if (c.basis_file.empty()) {
        rep = information_loss(e);
    } else {
        Mat basis = load_basis(c.basis_file);
        rep = information_loss(e, basis);
    }
    json j = report_header(c.seed);
    j["chi"] = rep.chi;
    j["h_xy"] = rep.h_xy;
    j["il"] = rep.il;
    j["cl"] = rep.cl;
    j["identity_residual"] = rep.residual;
    j["basis"] = rep.basis_label;
    Table t;
    t.row("chi", rep.chi);
    t.row("h_xy", rep.h_xy);
    t.row("il", rep.il);
    t.row("cl", rep.cl);
    t.row("identity_residual", rep.residual);
    t.row("basis", rep.basis_label);
    emit(j, t, c.format);
    return kExitOk;
}

int cmd_access(const std::string& input, CommonOpts c) {
    Ensemble e = load_ensemble(input);
    c.opts.seed = c.seed;
    AccessibleInfoResult res = accessible_info(e, c.opts);
    const double chi = holevo_chi(e);
    json j = report_header(c.seed);
    j["quantity"] = "projective accessible information";
    j["value"] = res.value;
    j["chi"] = chi;
    j["n_restarts"] = res.n_restarts;
    j["converged"] = res.converged;
    j["best_basis"] = matrix_to_json(res.best_basis.unitary);
    Table t;
    t.row("accessible_info", res.value);
    t.row("chi", chi);
    t.row("n_restarts", res.n_restarts);
    t.row("converged", res.converged);
    emit(j, t, c.format);
    return kExitOk;
}

int cmd_discord(const std::string& input, CommonOpts c) {
    BipartiteState s = load_bipartite(input);
    json j = report_header(c.seed);
    Table t;
    if (!c.basis_file.empty()) {
        Mat basis = load_basis(c.basis_file);
        DiscordReport rep = delta_discord(s, ProjectiveBasis{basis, "custom"});
        j["mutual_info"] = rep.mutual_info;
        j["classical_info_j"] = rep.classical_info_j;
        j["delta"] = rep.delta;
        j["local_coherence_ab"] = rep.local_coherence_ab;
        j["c_r_b"] = rep.c_r_b;
        j["route_residual"] = rep.route_residual;
        j["basis"] = rep.basis_label;
        t.row("mutual_info", rep.mutual_info);
        t.row("classical_info_j", rep.classical_info_j);
        t.row("delta", rep.delta);
        t.row("local_coherence_ab", rep.local_coherence_ab);
        t.row("c_r_b", rep.c_r_b);
        t.row("route_residual", rep.route_residual);
        t.row("basis", rep.basis_label);
    } else {
        c.opts.seed = c.seed;
        OptimizedDiscord d = quantum_discord(s, c.opts);
        const double i_ab = mutual_information(s);
        j["discord"] = d.value;
        j["mutual_info"] = i_ab;
        j["n_restarts"] = d.n_restarts;
        j["converged"] = d.converged;
        j["best_basis"] = matrix_to_json(d.best_basis.unitary);
        t.row("discord", d.value);
        t.row("mutual_info", i_ab);
        t.row("n_restarts", d.n_restarts);
        t.row("converged", d.converged);
    }
    emit(j, t, c.format);
    return kExitOk;
}

int cmd_erase(const std::string& input, const CommonOpts& c) {
    DensityMatrix rho = load_state(input);
    DensityMatrix out;
    PhaseMixture mix;
    double gap = 0.0;
    if (c.basis_file.empty()) {
        std::tie(out, mix) = coherence_erasing_channel(rho);
        gap = (out.mat - dephase(rho.mat)).cwiseAbs().maxCoeff();
    } else {
        Mat basis = load_basis(c.basis_file);
        std::tie(out, mix) = coherence_erasing_channel(rho, basis);
        gap = (out.mat - dephase(rho.mat, basis)).cwiseAbs().maxCoeff();
    }
    json j = report_header(c.seed);
    j["output"] = to_json(out);
    j["n_phases"] = static_cast<int>(mix.unitaries.size());
    j["dephase_gap"] = gap;
    j["c_r_before"] = c.basis_file.empty()
                          ? relative_entropy_coherence(rho)
                          : relative_entropy_coherence(rho, load_basis(c.basis_file));
    Table t;
    t.row("n_phases", static_cast<int>(mix.unitaries.size()));
    t.row("dephase_gap", gap);
    t.row("c_r_before", j["c_r_before"].get<double>());
    emit(j, t, c.format);
    if (!c.output.empty()) save_state(out, c.output);
    return kExitOk;
}

struct RandomOpts {
    std::string kind;
    int dim = 2;
    int rank = 0; // 0 = full rank
    std::string dims = "2x2";
    int count = 2; // ensemble members / separable terms
};

int cmd_random(const RandomOpts& r, const CommonOpts& c) {
    Rng rng(c.seed);
    json j;
    if (r.kind == "density") {
        const int rank = r.rank == 0 ? r.dim : r.rank;
        if (rank < 1 || rank > r.dim)
            throw qcoh::ValidationError("rank must be in [1, dim]");
        j = to_json(random_density(r.dim, rank, rng));
    } else if (r.kind == "ensemble") {
        j = to_json(random_ensemble(r.dim, r.count, rng));
    } else if (r.kind == "separable") {
        auto [da, db] = parse_dims(r.dims);
        j = to_json(random_separable(da, db, r.count, rng));
    } else {
        throw qcoh::ValidationError("unknown kind '" + r.kind +
                                    "'; expected density, ensemble, or separable");
    }
    if (c.output.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(j, c.output);
    return kExitOk;
}

int cmd_verify(const std::string& suite, int count, const std::string& dims,
               const CommonOpts& c) {
    VerifyConfig cfg;
    cfg.n_instances = count;
    cfg.seed = c.seed;
    std::tie(cfg.dim_a, cfg.dim_b) = parse_dims(dims);
    cfg.opts = c.opts;

    std::vector<VerificationReport> reports = run_suite(suite, cfg);

    bool any_failed = false;
    json out = report_header(c.seed);
    out["reports"] = json::array();
    Table t;
    for (const VerificationReport& rep : reports) {
        out["reports"].push_back(to_json(rep));
        t.row(rep.suite,
              std::to_string(rep.n_passed) + "/" + std::to_string(rep.n_instances) +
                  " passed in " + fmt6(rep.wall_time_s) + " s");
        for (const auto& [key, value] : rep.worst) t.row("  " + key, value);
        if (!rep.counterexamples.empty()) {
            any_failed = true;
            std::filesystem::create_directories("counterexamples");
            int k = 0;
            for (const json& ce : rep.counterexamples) {
                const std::string path = "counterexamples/" + rep.suite + "-" +
                                         std::to_string(rep.seed) + "-" +
                                         std::to_string(k++) + ".json";
                write_json_file(ce, path);
                t.row("  counterexample", path);
            }
        }
    }
    emit(out, t, c.format);
    return any_failed ? kExitCounterexample : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence, information loss, and discord calculator"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string input;
    RandomOpts rnd;
    std::string suite;
    std::string dims = "2x2";
    int count = -1;

    CLI::App* measure = app.add_subcommand("measure", "Entropy and coherence of a state");
    measure->add_option("input", input, "Density-matrix JSON file")->required();
    measure->add_option("--basis", c.basis_file, "Reference-basis JSON file");
    add_format_flag(measure, c);

    CLI::App* holevo = app.add_subcommand("holevo", "Holevo quantity and information loss");
    holevo->add_option("input", input, "Ensemble JSON file")->required();
    holevo->add_option("--basis", c.basis_file, "Reference-basis JSON file");
    add_format_flag(holevo, c);

    CLI::App* access = app.add_subcommand("access", "Projective accessible information");
    access->add_option("input", input, "Ensemble JSON file")->required();
    add_optimizer_flags(access, c);
    add_format_flag(access, c);

    CLI::App* discord = app.add_subcommand("discord", "Quantum discord (measured on B)");
    discord->add_option("input", input, "Bipartite-state JSON file")->required();
    discord->add_option("--basis", c.basis_file,
                        "Measure in this fixed basis instead of optimizing");
    add_optimizer_flags(discord, c);
    add_format_flag(discord, c);

    CLI::App* erase = app.add_subcommand("erase", "Apply the coherence-erasing channel");
    erase->add_option("input", input, "Density-matrix JSON file")->required();
    erase->add_option("--basis", c.basis_file, "Reference-basis JSON file");
    erase->add_option("-o,--output", c.output, "Write the output state here");
    add_format_flag(erase, c);

    CLI::App* verify = app.add_subcommand("verify", "Run a randomized verification suite");
    verify->add_option("suite", suite, "theorem1 | lemma1 | lemma2 | eq5to8 | all")
        ->required();
    verify->add_option("-n,--instances", count, "Instances per suite (default: suite-specific)");
    verify->add_option("--dims", dims, "Bipartite dimensions AxB")->capture_default_str();
    c.opts.restarts = 16; // suite default; overridden by --restarts
    add_optimizer_flags(verify, c);
    add_format_flag(verify, c);

    CLI::App* random_cmd = app.add_subcommand("random", "Generate a random instance file");
    random_cmd->add_option("kind", rnd.kind, "density | ensemble | separable")->required();
    random_cmd->add_option("-d,--dim", rnd.dim, "Hilbert-space dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    random_cmd->add_option("--rank", rnd.rank, "State rank (density; default full)");
    random_cmd->add_option("--dims", rnd.dims, "Bipartite dimensions AxB (separable)")
        ->capture_default_str();
    random_cmd->add_option("-n,--count", rnd.count, "Members / terms")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    random_cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    random_cmd->add_option("-o,--output", c.output, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (measure->parsed()) return cmd_measure(input, c);
        if (holevo->parsed()) return cmd_holevo(input, c);
        if (access->parsed()) return cmd_access(input, c);
        if (discord->parsed()) return cmd_discord(input, c);
        if (erase->parsed()) return cmd_erase(input, c);
        if (verify->parsed()) return cmd_verify(suite, count, dims, c);
        if (random_cmd->parsed()) return cmd_random(rnd, c);
        std::cerr << "no command given\n";
        return kExitInput;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const qcoh::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DimensionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
