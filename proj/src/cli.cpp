#include "bohr/cli.hpp"

#include "bohr/error.hpp"
#include "bohr/radii.hpp"
#include "bohr/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>

namespace bohr::cli {

namespace {

std::string cell_text(const Cell& c)
{
    if (const auto* i = std::get_if<std::int64_t>(&c)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&c)) {
        return format_real(*d);
    }
    return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c)
{
    if (const auto* i = std::get_if<std::int64_t>(&c)) {
        return *i;
    }
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) {
            return nullptr;
        }
        const std::string s = format_real(*d);
        double v = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), v);
        return v;
    }
    return std::get<std::string>(c);
}

struct Common {
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--format", c.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--out", c.out_path, "output file (default: stdout)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", c.config_path, "key=value file; command-line flags take precedence");
}

template <typename T>
CLI::Option* scalar(CLI::App* sub, const std::string& name, T& v, const std::string& desc)
{
    return sub->add_option(name, v, desc)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

int emit(const Table& t, const Common& c, std::ostream& out, std::ostream& err)
{
    const Format f = c.format == "jsonl" ? Format::JsonLines : Format::Csv;
    if (c.out_path.empty()) {
        write_table(t, f, out);
        return kExitOk;
    }
    std::ofstream file(c.out_path);
    if (!file) {
        err << "error: cannot open " << c.out_path << " for writing\n";
        return kExitUsage;
    }
    write_table(t, f, file);
    return kExitOk;
}

std::string find_config_path(const std::vector<std::string>& args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) {
            return args[i].substr(9);
        }
    }
    return {};
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag)
{
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Config entries become tokens placed before the command-line ones, skipping
// any key the command line sets itself.
std::vector<std::string> merge_config(CLI::App* sub, const std::vector<std::string>& args, const std::string& path)
{
    std::vector<std::string> tokens;
    for (const auto& [key, value] : read_config(path)) {
        const std::string flag = "--" + key;
        if (key == "config") {
            throw std::runtime_error("config files cannot nest");
        }
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        if (opt == nullptr) {
            throw std::runtime_error("unknown config key '" + key + "'");
        }
        if (given_on_command_line(args, flag)) {
            continue;
        }
        if (opt->get_items_expected_max() == 0) {
            if (value == "true" || value == "1" || value == "yes") {
                tokens.push_back(flag);
            } else if (!(value == "false" || value == "0" || value == "no")) {
                throw std::runtime_error("flag '" + key + "' expects true or false");
            }
            continue;
        }
        tokens.push_back(flag);
        tokens.push_back(value);
    }
    tokens.insert(tokens.end(), args.begin(), args.end());
    return tokens;
}

struct RadiiArgs {
    std::string family;
    int N = 1;
    int m = 0;
    int k = 1;
    double a = 0.0;
};

int cmd_radii(const RadiiArgs& p, const Common& c, std::ostream& out, std::ostream& err)
{
    const auto fam = parse_family(p.family);
    RadiusQuery q{*fam, p.N, p.m, p.k, p.a};
    const RealPolynomial poly = radius_poly(q);
    const double radius = sharp_radius(q);
    Table t{{"family", "N", "m", "k", "a", "radius", "residual"}, {}};
    t.rows.push_back({p.family, std::int64_t{p.N}, std::int64_t{p.m}, std::int64_t{p.k}, p.a, radius,
                      normalized_residual(poly, radius)});
    return emit(t, c, out, err);
}

struct VerifyArgs {
    std::string functional;
    int N = 1;
    int m = 0;
    int k = 1;
    int samples = 200;
    std::uint64_t seed = 0;
    double r_max = 0.0;
    int trunc = kDefaultTruncation;
    double tol = 1e-3;
    int threads = 1;
    int refinement_start = 0;
    std::vector<double> extremal_a{0.2, 0.5, 0.8};
    bool no_extremal = false;
};

int cmd_verify(const VerifyArgs& p, bool has_r_max, const Common& c, std::ostream& out, std::ostream& err)
{
    if (p.samples < 1 || p.trunc < 1 || p.threads < 1 || !(p.tol > 0.0)) {
        err << "error: samples, trunc and threads must be >= 1 and tol > 0\n";
        return kExitUsage;
    }
    if (has_r_max && !(p.r_max > 0.0 && p.r_max < 1.0)) {
        err << "error: RadiusRange: requires 0<r-max<1\n";
        return kExitUsage;
    }
    SweepConfig cfg;
    cfg.functional = {*parse_functional(p.functional), p.N, p.m, p.k, {}};
    if (p.refinement_start > 0) {
        cfg.functional.refinement_start = p.refinement_start;
    }
    cfg.samples = p.samples;
    cfg.seed = p.seed;
    cfg.trunc = p.trunc;
    cfg.tolerance = p.tol;
    cfg.threads = p.threads;
    if (!p.no_extremal) {
        cfg.extremal_a = p.extremal_a;
    }
    constexpr double step = 0.05;
    for (int i = 1;; ++i) {
        const double r = i * step;
        if (has_r_max ? r > p.r_max + 1e-12 : r >= 1.0 - 1e-12) {
            break;
        }
        cfg.r_grid.push_back(r);
    }
    if (has_r_max) {
        if (cfg.r_grid.empty() || cfg.r_grid.back() < p.r_max - 1e-12) {
            cfg.r_grid.push_back(p.r_max);
        }
        cfg.clip_to_radius = false;
    } else {
        cfg.edge_probe = true;
    }

    const SweepReport rep = run_sweep(cfg);
    Table t{{"sample_id", "r", "lhs", "threshold", "tail", "margin", "verdict"}, {}};
    for (const SweepRow& row : rep.rows) {
        t.rows.push_back({static_cast<std::int64_t>(row.sample_id), row.r, row.value.lhs, row.value.threshold,
                          row.value.tail, row.value.margin, std::string(verdict_name(row.verdict))});
    }
    const int rc = emit(t, c, out, err);
    err << "holds=" << rep.holds << " violates=" << rep.violates << " inconclusive=" << rep.inconclusive
        << " radius_used=" << format_real(rep.radius_used) << "\n";
    if (rc != kExitOk) {
        return rc;
    }
    return rep.violates == 0 ? kExitOk : kExitViolation;
}

struct SharpnessArgs {
    int k = 1;
    int m = 0;
    std::vector<double> a;
    double tol = 1e-6;
    bool harmonic = false;
};

int cmd_sharpness(const SharpnessArgs& p, const Common& c, std::ostream& out, std::ostream& err)
{
    if (p.a.empty()) {
        err << "error: --a needs at least one value\n";
        return kExitUsage;
    }
    if (!(p.tol > 0.0)) {
        err << "error: tol must be positive\n";
        return kExitUsage;
    }
    for (double a : p.a) {
        if (!(a >= 0.0 && a < 1.0)) {
            err << "error: ParamRange: requires 0<=a<1\n";
            return kExitUsage;
        }
    }
    if (p.k < 1 || p.m < 0 || p.m > p.k) {
        err << "error: FamilyConstraint: requires 0<=m<=k\n";
        return kExitUsage;
    }
    Table t{{"k", "m", "a", "r_cross", "r_theory", "gap"}, {}};
    double worst = 0.0;
    for (double a : p.a) {
        const CrossoverResult res = p.harmonic ? harmonic_crossover(p.k, p.m, a, p.tol) : crossover(p.k, p.m, a, p.tol);
        worst = std::max(worst, res.gap);
        t.rows.push_back({std::int64_t{res.k}, std::int64_t{res.m}, res.a, res.r_cross, res.r_theory, res.gap});
    }
    const int rc = emit(t, c, out, err);
    if (rc != kExitOk) {
        return rc;
    }
    return worst <= p.tol ? kExitOk : kExitViolation;
}

std::vector<std::string> family_names()
{
    return {"phi1", "phi2", "phi3", "auto-phi", "lacunary-sym", "refined-root"};
}

std::vector<std::string> functional_names()
{
    return {"lemma12", "a", "b", "c", "i", "n1", "harmonic", "baseline-sym", "baseline-norm"};
}

} // namespace

std::string format_real(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_table(const Table& t, Format f, std::ostream& out)
{
    if (f == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            out << (i ? "," : "") << t.columns[i];
        }
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << cell_text(row[i]);
            }
            out << '\n';
        }
        return;
    }
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[t.columns[i]] = cell_json(row[i]);
        }
        out << obj.dump() << '\n';
    }
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file " + path);
    }
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sharp radii and refined Bohr inequality checks", "bohr"};
    app.require_subcommand(1);

    Common common;
    RadiiArgs radii_args;
    CLI::App* radii = app.add_subcommand("radii", "sharp radius of one radius equation");
    radii->add_option("--family", radii_args.family, "radius equation family")
        ->required()
        ->check(CLI::IsMember(family_names()))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    scalar(radii, "--N", radii_args.N, "N (phi families)");
    scalar(radii, "--m", radii_args.m, "m");
    scalar(radii, "--k", radii_args.k, "k (lacunary and refined-root families)");
    scalar(radii, "--a", radii_args.a, "leading coefficient magnitude (refined-root)");
    add_common(radii, common);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "seeded sweep of a refined functional below its radius");
    verify->add_option("--functional", verify_args.functional, "functional to evaluate")
        ->required()
        ->check(CLI::IsMember(functional_names()))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    scalar(verify, "--N", verify_args.N, "N (lemma12, a, b, baseline-norm)");
    scalar(verify, "--m", verify_args.m, "m");
    scalar(verify, "--k", verify_args.k, "k (lacunary functionals)");
    scalar(verify, "--samples", verify_args.samples, "number of random samples");
    scalar(verify, "--seed", verify_args.seed, "64-bit seed");
    CLI::Option* r_max_opt = scalar(verify, "--r-max", verify_args.r_max, "largest r, no clipping to the radius");
    scalar(verify, "--trunc", verify_args.trunc, "base truncation order");
    scalar(verify, "--tol", verify_args.tol, "distance kept below each sample's radius");
    scalar(verify, "--threads", verify_args.threads, "worker threads");
    scalar(verify, "--refinement-start", verify_args.refinement_start, "first index of the squared sum");
    verify->add_option("--extremal-a", verify_args.extremal_a, "extremal-family parameters appended to the samples")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    verify->add_flag("--no-extremal", verify_args.no_extremal, "random samples only");
    add_common(verify, common);

    SharpnessArgs sharp_args;
    CLI::App* sharp = app.add_subcommand("sharpness", "crossover of the extremal family against the theory radius");
    scalar(sharp, "--k", sharp_args.k, "k");
    scalar(sharp, "--m", sharp_args.m, "m");
    sharp->add_option("--a", sharp_args.a, "comma-separated a values")->delimiter(',');
    scalar(sharp, "--tol", sharp_args.tol, "gap tolerance");
    sharp->add_flag("--harmonic", sharp_args.harmonic, "use the harmonic pair h = g against 2");
    add_common(sharp, common);

    try {
        std::vector<std::string> tokens = args;
        if (!args.empty()) {
            if (CLI::App* sub = app.get_subcommand_no_throw(args.front())) {
                const std::vector<std::string> rest(args.begin() + 1, args.end());
                const std::string cfg = find_config_path(rest);
                if (!cfg.empty()) {
                    tokens = merge_config(sub, rest, cfg);
                    tokens.insert(tokens.begin(), args.front());
                }
            }
        }
        std::reverse(tokens.begin(), tokens.end());
        app.parse(std::move(tokens));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (radii->parsed()) {
            return cmd_radii(radii_args, common, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_args, r_max_opt->count() > 0, common, out, err);
        }
        return cmd_sharpness(sharp_args, common, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.code() == ErrorCode::NoCrossover) {
            return kExitViolation;
        }
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace bohr::cli
