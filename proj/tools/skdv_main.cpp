// Command-line front end: exact verification of the bilinear representations,
// Bell polynomial expansions, Hirota operator evaluation on tau functions,
// and soliton profile data for plotting.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "skdv/skdv.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string config_path;
    std::map<std::string, std::string> kappa_flags;  // flag name -> value
};

void add_param_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config with wave-number keys");
    for (const char* key : {"kappa", "kappa-tilde", "kappa1", "kappa2", "kappa-tilde1",
                            "kappa-tilde2"}) {
        cmd->add_option_function<std::string>(
            std::string("--") + key,
            [&opts, key](const std::string& v) { opts.kappa_flags[key] = v; },
            "rational value, e.g. 4/5");
    }
}

skdv::SolitonParams resolve_params(const CommonOptions& opts) {
    skdv::SolitonParams par;
    const auto assign = [&par](const std::string& key, const std::string& value) {
        const skdv::Rational r = skdv::parse_rational(value);
        if (key == "kappa") par.kappa = r;
        else if (key == "kappa_tilde" || key == "kappa-tilde") par.kappa_tilde = r;
        else if (key == "kappa1") par.kappa1 = r;
        else if (key == "kappa2") par.kappa2 = r;
        else if (key == "kappa_tilde1" || key == "kappa-tilde1") par.kappa_tilde1 = r;
        else if (key == "kappa_tilde2" || key == "kappa-tilde2") par.kappa_tilde2 = r;
        else throw skdv::parse_error("unknown config key: " + key);
    };
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw skdv::parse_error("cannot open config: " + opts.config_path);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw skdv::parse_error("bad config JSON: " + std::string(e.what()));
        }
        for (const auto& [key, value] : doc.items())
            assign(key, value.get<std::string>());
    }
    for (const auto& [key, value] : opts.kappa_flags) assign(key, value);
    return par;
}

json report_to_json(const skdv::CheckReport& rep) {
    json lines = json::array();
    for (const auto& l : rep.lines)
        lines.push_back({{"name", l.name},
                         {"pass", l.pass},
                         {"residual_terms", l.residual_terms},
                         {"detail", l.detail}});
    return {{"case", rep.case_id}, {"pass", rep.pass()}, {"lines", lines}};
}

int run_verify(const std::string& case_name, const skdv::SolitonParams& par,
               std::uint64_t seed, bool json_output) {
    using skdv::CaseId;
    static const std::map<std::string, std::vector<CaseId>> cases = {
        {"a1", {CaseId::A1}},
        {"a4", {CaseId::A4}},
        {"two-boson", {CaseId::TwoBoson}},
        {"am2", {CaseId::Am2}},
        {"miura", {CaseId::Miura}},
        {"q-flow", {CaseId::QFlow}},
        {"n2kdv", {CaseId::N2Kdv}},
        {"burgers", {CaseId::Burgers}},
        {"bell-link", {CaseId::BellLink}},
        {"all",
         {CaseId::A1, CaseId::A4, CaseId::Am2, CaseId::N2Kdv, CaseId::Burgers,
          CaseId::BellLink}},
    };
    const auto it = cases.find(case_name);
    if (it == cases.end()) {
        std::cerr << "unknown case '" << case_name << "'\n";
        return kExitUsage;
    }
    std::vector<skdv::CheckReport> reports;
    for (const CaseId id : it->second)
        for (auto& rep : skdv::run_case(id, par, seed)) reports.push_back(std::move(rep));

    bool all_pass = true;
    if (json_output) {
        json doc = json::array();
        for (const auto& rep : reports) {
            doc.push_back(report_to_json(rep));
            all_pass = all_pass && rep.pass();
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& rep : reports) {
            rep.print(std::cout);
            all_pass = all_pass && rep.pass();
        }
        std::cout << (all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return all_pass ? kExitOk : kExitCheckFailed;
}

std::vector<double> parse_times(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

int run_soliton(const std::string& profile_name, const skdv::GridSpec& grid,
                const skdv::SolitonParams& par, const std::string& out_path,
                const std::string& plot_path) {
    if (profile_name.size() != 3 || (profile_name[0] != 'u' && profile_name[0] != 'v')) {
        std::cerr << "profile must be one of u11,u22,v11,v22,v12,v21\n";
        return kExitUsage;
    }
    const int m = profile_name[1] - '0';
    const int n = profile_name[2] - '0';
    if ((m != 1 && m != 2) || (n != 1 && n != 2)) {
        std::cerr << "profile indices must be 1 or 2\n";
        return kExitUsage;
    }
    const auto [u, v] = skdv::profile(m, n, par);
    const skdv::SuperFraction& expr = profile_name[0] == 'u' ? u : v;
    const skdv::GridTable table = skdv::eval_grid(expr, grid);
    {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitUsage;
        }
        skdv::emit_csv(table, out);
    }
    std::cout << "wrote " << table.size() << " rows to " << out_path << "\n";
    if (!plot_path.empty()) {
        std::ofstream out(plot_path);
        if (!out) {
            std::cerr << "cannot write " << plot_path << "\n";
            return kExitUsage;
        }
        skdv::emit_plot_script(out_path, grid.times, profile_name, out);
        std::cout << "wrote plot script to " << plot_path << "\n";
    }
    return kExitOk;
}

// Slot spec "i*B", "-2*p", "B"; unknown even field names are declared.
skdv::BellSlot parse_slot(const std::string& text) {
    const auto star = text.rfind('*');
    skdv::GaussianRational mult(1);
    std::string name = text;
    if (star != std::string::npos) {
        mult = skdv::parse_gaussian(text.substr(0, star));
        name = text.substr(star + 1);
    } else if (!name.empty() && (name[0] == '-' || name[0] == '+')) {
        mult = skdv::GaussianRational(name[0] == '-' ? -1 : 1);
        name = name.substr(1);
    }
    std::string trimmed;
    for (char c : name)
        if (c != ' ') trimmed += c;
    if (trimmed.empty()) throw skdv::parse_error("empty field name in slot '" + text + "'");
    const skdv::FieldId f = skdv::FieldRegistry::instance().declare(trimmed);
    return {mult, f};
}

int run_bell(const std::string& index_str, const std::string& fields_str) {
    const skdv::MultiIndex idx = skdv::parse_index(index_str);
    if (fields_str.empty()) {
        const skdv::JetExpr y = skdv::bell_Y(skdv::FieldRegistry::kF, idx);
        std::cout << "Y_{" << index_str << "}(f) = " << skdv::to_string(y) << "\n";
        return kExitOk;
    }
    const auto comma = fields_str.find(',');
    if (comma == std::string::npos) {
        std::cerr << "--fields wants two comma-separated slots, e.g. \"i*B,-p\"\n";
        return kExitUsage;
    }
    const skdv::BellSlot s1 = parse_slot(fields_str.substr(0, comma));
    const skdv::BellSlot s2 = parse_slot(fields_str.substr(comma + 1));
    const skdv::JetExpr y = skdv::binary_bell(idx, s1, s2);
    std::cout << "Y_{" << index_str << "}(" << fields_str << ") = " << skdv::to_string(y)
              << "\n";
    return kExitOk;
}

int run_hirota(const std::string& op_str, const std::string& pair_name,
               const skdv::SolitonParams& par) {
    const skdv::OperatorCombo combo = skdv::parse_operator(op_str);
    skdv::SolitonSpec spec;
    if (pair_name == "f1g1" || pair_name == "ft1gt1") {
        spec.kind = skdv::SolitonSpec::Kind::One;
        spec.tilde = pair_name == "ft1gt1";
        spec.kappas = {skdv::GaussianRational(spec.tilde ? par.kappa_tilde : par.kappa)};
    } else if (pair_name == "f2g2" || pair_name == "ft2gt2") {
        spec.kind = skdv::SolitonSpec::Kind::Two;
        spec.tilde = pair_name == "ft2gt2";
        if (spec.tilde)
            spec.kappas = {skdv::GaussianRational(par.kappa_tilde1),
                           skdv::GaussianRational(par.kappa_tilde2)};
        else
            spec.kappas = {skdv::GaussianRational(par.kappa1),
                           skdv::GaussianRational(par.kappa2)};
    } else {
        std::cerr << "pair must be one of f1g1,f2g2,ft1gt1,ft2gt2\n";
        return kExitUsage;
    }
    const skdv::TauPair tau = skdv::build_tau(spec);
    const skdv::SuperExpr r = skdv::hirota_poly(tau.f, tau.g, combo);
    std::cout << "(" << op_str << ")(f.g) = " << skdv::to_string(r) << "\n";
    return r.is_zero() ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact super-calculus toolkit: bilinear representation checks and "
                 "soliton profile data"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the exact verification suite");
    std::string case_name = "all";
    std::uint64_t seed = 20230815;
    bool json_output = false;
    CommonOptions verify_opts;
    verify->add_option("--case", case_name,
                       "a1|a4|am2|n2kdv|burgers|bell-link|all (also: two-boson, miura, "
                       "q-flow)");
    verify->add_option("--seed", seed, "seed for the randomized checks");
    verify->add_flag("--json", json_output, "machine-readable report");
    add_param_flags(verify, verify_opts);

    // soliton
    auto* soliton = app.add_subcommand("soliton", "evaluate a profile on a grid and emit CSV");
    std::string profile_name;
    skdv::GridSpec grid;
    std::string times_str = "-2,0,2";
    std::string out_path = "profile.csv";
    std::string plot_path;
    CommonOptions soliton_opts;
    soliton->add_option("--profile", profile_name, "u11|u22|v11|v22|v12|v21")->required();
    soliton->add_option("--x-min", grid.x_min, "grid start (default -20)");
    soliton->add_option("--x-max", grid.x_max, "grid end (default 20)");
    soliton->add_option("--samples", grid.samples, "sample count (default 801)");
    soliton->add_option("--times", times_str, "comma-separated time slices (default -2,0,2)");
    soliton->add_option("--out", out_path, "CSV output path")->required();
    soliton->add_option("--plot-script", plot_path, "write a gnuplot script here");
    add_param_flags(soliton, soliton_opts);

    // bell
    auto* bell = app.add_subcommand("bell", "print Bell polynomial expansions");
    std::string index_str;
    std::string fields_str;
    bell->add_option("--index", index_str, "index string: \"3x\", \"t\", \"xxx,theta1\", "
                                           "\"x,t2\"")
        ->required();
    bell->add_option("--fields", fields_str,
                     "two slots \"i*B,-p\" for the binary expansion (omit for the "
                     "one-variable form)");

    // hirota
    auto* hir = app.add_subcommand("hirota", "apply an operator combination to a tau pair");
    std::string op_str;
    std::string pair_name = "f1g1";
    CommonOptions hirota_opts;
    hir->add_option("--op", op_str, "operator string, e.g. \"Dt+Dx^3\" or \"S1(Dt+Dx^3)\"")
        ->required();
    hir->add_option("--pair", pair_name, "f1g1|f2g2|ft1gt1|ft2gt2 (default f1g1)");
    add_param_flags(hir, hirota_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed())
            return run_verify(case_name, resolve_params(verify_opts), seed, json_output);
        if (soliton->parsed()) {
            grid.times = parse_times(times_str);
            return run_soliton(profile_name, grid, resolve_params(soliton_opts), out_path,
                               plot_path);
        }
        if (bell->parsed()) return run_bell(index_str, fields_str);
        if (hir->parsed()) return run_hirota(op_str, pair_name, resolve_params(hirota_opts));
    } catch (const skdv::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
