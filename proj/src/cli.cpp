#include "entorder/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "entorder/io.hpp"

namespace entorder {

namespace {

using io::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInconclusive = 2;

void emit(const json& report) { std::cout << report.dump(2) << '\n'; }

std::string default_outdir() {
    if (const char* env = std::getenv("ENTORDER_OUTDIR")) return env;
    return "entorder_out";
}

bool is_oscillatory(const TailSequence& t) {
    return !t.finite() && t.generator()->kind() == "log_oscillation";
}

double auto_horizon(const TailSequence& a, const TailSequence& b, double requested) {
    if (requested > 0) return requested;
    return is_oscillatory(a) || is_oscillatory(b) ? 1200.0 : 48.0;
}

std::optional<SchmidtSpectrum> as_spectrum(const io::SpectrumInput& in) {
    if (in.lambdas) return SchmidtSpectrum(*in.lambdas);
    if (in.tail.finite()) return spectrum_from_tail(in.tail, in.tail.rank());
    return std::nullopt;
}

// ------------------------------------------------------------- validate

int cmd_validate(const std::string& path, double horizon_decades) {
    const auto input = io::load_spectrum_file(path);
    IndexRange range{0.0, 0.0};
    if (input.tail.finite())
        range.hi = static_cast<double>(input.tail.finite_log_values().size());
    else
        range.hi = std::pow(10.0, horizon_decades);
    const auto report = validate_tail(input.tail, range);
    emit(json{{"config",
               {{"command", "validate"}, {"input", path}, {"horizon_decades", horizon_decades}}},
              {"source", input.source},
              {"generator", io::descriptor_of(input.tail)},
              {"report", io::to_json(report)}});
    return kExitOk;
}

// -------------------------------------------------------------- convert

int cmd_convert(const std::string& psi_path, const std::string& phi_path,
                const std::string& regime, double horizon) {
    const auto psi_in = io::load_spectrum_file(psi_path);
    const auto phi_in = io::load_spectrum_file(phi_path);
    const bool both_finite = psi_in.tail.finite() && phi_in.tail.finite();

    json config{{"command", "convert"},
                {"psi", psi_path},
                {"phi", phi_path},
                {"regime", regime},
                {"horizon_decades", horizon}};

    if (regime == "locc") {
        if (!both_finite) {
            std::cerr << "error: locc regime needs two finite spectra (generated tails are "
                         "unsupported in this combination)\n";
            return kExitInputError;
        }
        const auto psi = as_spectrum(psi_in), phi = as_spectrum(phi_in);
        emit(json{{"config", std::move(config)},
                  {"forward", locc_convertible(*psi, *phi)},
                  {"backward", locc_convertible(*phi, *psi)},
                  {"max_probability_forward", max_conversion_probability(*psi, *phi)},
                  {"max_probability_backward", max_conversion_probability(*phi, *psi)}});
        return kExitOk;
    }

    if (both_finite) {
        const auto psi = as_spectrum(psi_in), phi = as_spectrum(phi_in);
        config["horizon_decades"] = 0.0;
        emit(json{{"config", std::move(config)},
                  {"forward", slocc_convertible_finite(*psi, *phi)},
                  {"backward", slocc_convertible_finite(*phi, *psi)},
                  {"rank_psi", psi->rank()},
                  {"rank_phi", phi->rank()},
                  {"max_probability_forward", max_conversion_probability(*psi, *phi)},
                  {"max_probability_backward", max_conversion_probability(*phi, *psi)}});
        return kExitOk;
    }
    if (psi_in.tail.finite() != phi_in.tail.finite()) {
        std::cerr << "error: slocc regime cannot mix a finite spectrum with a generated tail\n";
        return kExitInputError;
    }

    SampleSchedule schedule;
    schedule.decades = auto_horizon(psi_in.tail, phi_in.tail, horizon);
    config["horizon_decades"] = schedule.decades;
    const auto cert = certify_incomparable(psi_in.tail, phi_in.tail, schedule);
    emit(json{{"config", std::move(config)},
              {"forward_verdict", to_string(cert.forward.verdict)},
              {"backward_verdict", to_string(cert.backward.verdict)},
              {"incomparable", cert.certified},
              {"detail", io::to_json(cert)}});
    const bool inconclusive = cert.forward.verdict == Verdict::inconclusive ||
                              cert.backward.verdict == Verdict::inconclusive;
    return inconclusive ? kExitInconclusive : kExitOk;
}

// ------------------------------------------------------ reproduce-paper

int cmd_reproduce(double q, double r_lo, double r_hi, double horizon, int grid,
                  const std::string& outdir) {
    DemoConfig cfg;
    cfg.q = q;
    cfg.r_lo = r_lo;
    cfg.r_hi = r_hi;
    cfg.horizon_decades = horizon;
    cfg.certificate_grid = grid;
    const auto demo = run_incomparability_demo(cfg);

    json report{{"config",
                 {{"command", "reproduce-paper"},
                  {"q", q},
                  {"r_lo", r_lo},
                  {"r_hi", r_hi},
                  {"horizon_decades", horizon},
                  {"grid", grid},
                  {"out", outdir}}},
                {"demo", io::to_json(demo)}};

    std::filesystem::create_directories(outdir);
    {
        std::ofstream out(outdir + "/demo.json");
        out << report.dump(2) << '\n';
    }
    for (const auto& [r, cert] : demo.certificates) {
        std::ostringstream name;
        name.precision(6);
        name << outdir << "/trend_r" << r;
        std::ofstream fwd(name.str() + "_forward.csv");
        fwd << io::trend_csv(cert.forward);
        std::ofstream bwd(name.str() + "_backward.csv");
        bwd << io::trend_csv(cert.backward);
    }
    emit(report);
    return demo.reproduced ? kExitOk : kExitInconclusive;
}

// ---------------------------------------------------------------- poset

int cmd_poset(const std::string& path, int trials, std::uint64_t seed, int random_count,
              int elements, bool total) {
    json config{{"command", "poset"}, {"trials", trials},   {"seed", seed},
                {"random", random_count}, {"elements", elements}, {"total", total}};
    if (!path.empty()) config["input"] = path;

    if (!path.empty()) {
        const auto input = io::load_poset(io::load_json_file(path));
        if (!input.chain) {
            std::cerr << "error: poset spec has no chain\n";
            return kExitInputError;
        }
        const auto mv = chain_monotones(input.poset, *input.chain);
        const auto laws = verify_monotone_laws(input.poset, *input.chain, trials, seed);
        emit(json{{"config", std::move(config)},
                  {"monotones", io::to_json(mv, input.poset)},
                  {"laws", io::to_json(laws)}});
        return kExitOk;
    }

    std::mt19937_64 rng(seed);
    json instances = json::array();
    long violations = 0;
    long equal_pairs = 0, elements_checked = 0;
    const double densities[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (int i = 0; i < random_count; ++i) {
        const auto p = total ? random_total_preorder(elements, rng)
                             : random_preorder(elements, densities[i % 9], rng);
        const auto chain = total ? covering_chain(p) : *random_chain(p, rng);
        const auto laws = verify_monotone_laws(p, chain, trials, rng());
        violations += laws.total_violations();
        if (total) {
            const auto mv = chain_monotones(p, chain);
            for (std::size_t e = 0; e < p.size(); ++e) {
                ++elements_checked;
                if (mv.r_minus[e] == mv.r_plus[e]) ++equal_pairs;
            }
        }
        if (laws.total_violations() > 0) instances.push_back(io::to_json(laws));
    }
    json out{{"config", std::move(config)},
             {"instances", random_count},
             {"total_violations", violations}};
    if (total) {
        out["elements_checked"] = elements_checked;
        out["extremal_pair_equal"] = equal_pairs;
    }
    if (!instances.empty()) out["violating_instances"] = std::move(instances);
    emit(out);
    return kExitOk;
}

// --------------------------------------------------------- family-check

int cmd_family_check(const std::string& path, double horizon) {
    const auto family = io::family_from_descriptor(io::load_json_file(path));
    SampleSchedule schedule;
    schedule.decades = horizon > 0 ? horizon : (family.kind == "log_oscillation" ? 1200.0 : 48.0);
    const auto report = validate_family(family, schedule);
    emit(json{{"config",
               {{"command", "family-check"},
                {"input", path},
                {"horizon_decades", schedule.decades},
                {"kind", family.kind}}},
              {"report", io::to_json(report)}});
    return report.conclusive ? kExitOk : kExitInconclusive;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"convertibility ordering of bipartite pure states from Schmidt spectra"};
    app.require_subcommand(1);

    // validate
    std::string v_path;
    double v_horizon = 6.0;
    auto* validate = app.add_subcommand("validate", "check the four tail conditions of a file");
    validate->add_option("file", v_path, "spectrum or tail file (CSV or JSON)")->required();
    validate->add_option("--horizon", v_horizon, "decades of index checked for generated tails");

    // convert
    std::string c_psi, c_phi, c_regime = "locc";
    double c_horizon = 0.0;
    auto* convert = app.add_subcommand("convert", "decide convertibility between two states");
    convert->add_option("psi", c_psi, "source state file")->required();
    convert->add_option("phi", c_phi, "target state file")->required();
    convert->add_option("--regime", c_regime, "locc or slocc")
        ->check(CLI::IsMember({"locc", "slocc"}));
    convert->add_option("--horizon", c_horizon, "decades of index for trend evidence (0 = auto)");

    // reproduce-paper
    double r_q = 0.5, r_lo = 1.0, r_hi = 2.0, r_horizon = 1200.0;
    int r_grid = 5;
    std::string r_out = default_outdir();
    auto* reproduce = app.add_subcommand(
        "reproduce-paper", "certify the squeezed vs log-oscillation incomparability construction");
    reproduce->add_option("--q", r_q, "squeezing parameter in (0,1)");
    reproduce->add_option("--r-lo", r_lo, "family exponent lower end");
    reproduce->add_option("--r-hi", r_hi, "family exponent upper end");
    reproduce->add_option("--horizon", r_horizon, "decades of index");
    reproduce->add_option("--grid", r_grid, "certificate grid size");
    reproduce->add_option("--out", r_out, "output directory (default $ENTORDER_OUTDIR)");

    // poset
    std::string p_path;
    int p_trials = 20, p_random = 0, p_elements = 8;
    std::uint64_t p_seed = 1;
    bool p_total = false;
    auto* poset = app.add_subcommand("poset", "verify the monotone laws on finite posets");
    poset->add_option("file", p_path, "poset spec JSON");
    poset->add_option("--trials", p_trials, "random consistent monotones per instance");
    poset->add_option("--seed", p_seed, "random seed");
    poset->add_option("--random", p_random, "number of generated instances");
    poset->add_option("--elements", p_elements, "elements per generated instance")
        ->check(CLI::Range(1, 12));
    poset->add_flag("--total", p_total, "generate totally ordered instances with covering chains");

    // family-check
    std::string f_path;
    double f_horizon = 0.0;
    auto* family = app.add_subcommand("family-check", "validate a tail family descriptor");
    family->add_option("file", f_path, "family descriptor JSON")->required();
    family->add_option("--horizon", f_horizon, "decades of index (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (validate->parsed()) return cmd_validate(v_path, v_horizon);
        if (convert->parsed()) return cmd_convert(c_psi, c_phi, c_regime, c_horizon);
        if (reproduce->parsed()) {
            if (!(r_q > 0.0 && r_q < 1.0) || !(r_lo <= r_hi) || !(r_lo > 0.0) || r_grid < 1 ||
                !(r_horizon > 0.0 && r_horizon <= 1e6)) {
                std::cerr << "error: need 0 < q < 1, 0 < r-lo <= r-hi, grid >= 1, "
                             "0 < horizon <= 1e6\n";
                return kExitInputError;
            }
            return cmd_reproduce(r_q, r_lo, r_hi, r_horizon, r_grid, r_out);
        }
        if (poset->parsed()) {
            if (p_path.empty() && p_random <= 0) {
                std::cerr << "error: poset needs a spec file or --random N\n";
                return kExitInputError;
            }
            return cmd_poset(p_path, p_trials, p_seed, p_random, p_elements, p_total);
        }
        if (family->parsed()) return cmd_family_check(f_path, f_horizon);
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const TailValidityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace entorder
