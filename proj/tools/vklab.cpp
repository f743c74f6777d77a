// Config-driven experiment harness: every subcommand maps onto one library
// operation and emits a CSV (or JSON) artifact plus a one-line summary.
// Exit codes: 0 pass, 1 tolerance fail, 2 config error, 3 numerical error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vklab/diffeo.hpp"
#include "vklab/errors.hpp"
#include "vklab/partitions.hpp"
#include "vklab/rng.hpp"
#include "vklab/spherical.hpp"
#include "vklab/symfunc.hpp"
#include "vklab/table.hpp"
#include "vklab/vkchar.hpp"

using nlohmann::json;
using namespace vklab;

namespace {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

const json& require_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("config error at " + path + "/" + key + ": required field missing");
    return j.at(key);
}

double get_number(const json& j, const std::string& key, const std::string& path) {
    const json& v = require_field(j, key, path);
    if (!v.is_number()) throw ConfigError("config error at " + path + "/" + key + ": expected a number");
    return v.get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("config error at /" + key + ": expected a number");
    return j.at(key).get<double>();
}

long get_integer(const json& j, const std::string& key, const std::string& path) {
    const json& v = require_field(j, key, path);
    if (!v.is_number_integer()) throw ConfigError("config error at " + path + "/" + key + ": expected an integer");
    return v.get<long>();
}

std::vector<double> get_real_list(const json& j, const std::string& key, const std::string& path) {
    const json& v = require_field(j, key, path);
    if (!v.is_array()) throw ConfigError("config error at " + path + "/" + key + ": expected an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("config error at " + path + "/" + key + ": expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<long> get_int_list(const json& j, const std::string& key, const std::string& path) {
    const json& v = require_field(j, key, path);
    if (!v.is_array()) throw ConfigError("config error at " + path + "/" + key + ": expected an array");
    std::vector<long> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw ConfigError("config error at " + path + "/" + key + ": expected integers");
        out.push_back(e.get<long>());
    }
    return out;
}

// entries are numbers (real) or [re, im] pairs
std::vector<Complex> get_complex_list(const json& j, const std::string& key,
                                      const std::string& path) {
    const json& v = require_field(j, key, path);
    if (!v.is_array()) throw ConfigError("config error at " + path + "/" + key + ": expected an array");
    std::vector<Complex> out;
    for (const auto& e : v) {
        if (e.is_number())
            out.emplace_back(e.get<double>(), 0.0);
        else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        else
            throw ConfigError("config error at " + path + "/" + key +
                              ": expected numbers or [re, im] pairs");
    }
    return out;
}

VKParams parse_params(const json& j, const std::string& path) {
    const json& p = require_field(j, "params", path);
    std::vector<double> alphas, betas;
    if (p.contains("alphas")) alphas = get_real_list(p, "alphas", path + "/params");
    if (p.contains("betas")) betas = get_real_list(p, "betas", path + "/params");
    const double gamma = get_number_or(p, "gamma", 0.0);
    try {
        return VKParams::make(std::move(alphas), std::move(betas), gamma);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config error at ") + path + "/params: " + e.what());
    }
}

CompressionFrame parse_frame(const json& j, const std::string& path) {
    const json& f = require_field(j, "frame", path);
    return CompressionFrame::make(get_integer(f, "dim_plus", path + "/frame"),
                                  get_integer(f, "dim_minus", path + "/frame"));
}

Box parse_box(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 4)
        throw ConfigError("config error at " + path + ": expected [x0, y0, x1, y1]");
    return Box::make(v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                     v[3].get<double>());
}

QuadratureGrid parse_grid(const json& j, const std::string& path) {
    const json& g = require_field(j, "grid", path);
    const Box box = parse_box(require_field(g, "box", path + "/grid"), path + "/grid/box");
    const long res = get_integer(g, "resolution", path + "/grid");
    QuadratureGrid::Rule rule = QuadratureGrid::Rule::Midpoint;
    if (g.contains("rule")) {
        const std::string r = g.at("rule").get<std::string>();
        if (r == "midpoint")
            rule = QuadratureGrid::Rule::Midpoint;
        else if (r == "gauss")
            rule = QuadratureGrid::Rule::GaussLegendre;
        else
            throw ConfigError("config error at " + path + "/grid/rule: expected midpoint or gauss");
    }
    return QuadratureGrid::make(box, static_cast<int>(res), rule);
}

Vec2 parse_vec2(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2)
        throw ConfigError("config error at " + path + ": expected [x, y]");
    return Vec2(v[0].get<double>(), v[1].get<double>());
}

FlowDiffeo parse_flow(const json& flow, const std::string& path) {
    const json& fields = require_field(flow, "fields", path);
    if (!fields.is_array() || fields.empty())
        throw ConfigError("config error at " + path + "/fields: expected a nonempty array");
    VectorField vf;
    std::size_t idx = 0;
    for (const auto& f : fields) {
        const std::string fpath = path + "/fields[" + std::to_string(idx++) + "]";
        const std::string type = require_field(f, "type", fpath).get<std::string>();
        const Vec2 center = parse_vec2(require_field(f, "center", fpath), fpath + "/center");
        const double amp = get_number(f, "amplitude", fpath);
        const double plateau = get_number(f, "plateau_radius", fpath);
        const double support = get_number(f, "support_radius", fpath);
        if (type == "constant") {
            const Vec2 dir = parse_vec2(require_field(f, "direction", fpath), fpath + "/direction");
            vf.primitives.push_back(FieldPrimitive::constant(center, dir, amp, plateau, support));
        } else if (type == "rotation") {
            vf.primitives.push_back(FieldPrimitive::rotation(center, amp, plateau, support));
        } else if (type == "radial") {
            vf.primitives.push_back(FieldPrimitive::radial(center, amp, plateau, support));
        } else {
            throw ConfigError("config error at " + fpath +
                              "/type: expected constant, rotation or radial");
        }
    }
    const double time = get_number(flow, "time", path);
    const long steps = flow.contains("steps") ? get_integer(flow, "steps", path) : 64;
    return FlowDiffeo::flow(std::move(vf), time, static_cast<int>(steps));
}

struct OutputOptions {
    std::string config_path;
    std::string out_path;        // empty: stdout
    std::string format = "csv";  // csv | json
    std::optional<std::uint64_t> seed_override;
    std::string signature_csv;  // character subcommand: comma-separated parts
};

std::vector<long> parse_signature_parts(const std::string& csv) {
    std::vector<long> parts;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t pos = 0;
            const long v = std::stol(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            parts.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("config error: signature parts must be integers, got '" + tok + "'");
        }
    }
    return parts;
}

json load_config(const OutputOptions& opt) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("config error: cannot open " + opt.config_path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }
    return j;
}

std::uint64_t resolve_seed(const json& cfg, const OutputOptions& opt) {
    if (opt.seed_override) return *opt.seed_override;
    if (cfg.contains("seed")) {
        if (!cfg.at("seed").is_number_integer())
            throw ConfigError("config error at /seed: expected an integer");
        return cfg.at("seed").get<std::uint64_t>();
    }
    return 0;
}

std::string resolve_out(const json& cfg, const OutputOptions& opt) {
    if (!opt.out_path.empty()) return opt.out_path;
    if (cfg.contains("output")) return cfg.at("output").get<std::string>();
    return {};
}

void write_artifact(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("config error: cannot write " + path);
    out << body;
}

std::string table_body(const ConvergenceTable& table, const std::string& format) {
    std::ostringstream os;
    if (format == "json")
        table.write_json(os);
    else
        table.write_csv(os);
    return os.str();
}

std::string scalar_record_csv(const std::vector<std::pair<std::string, std::string>>& cols) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].first;
    os << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].second;
    os << '\n';
    return os.str();
}

std::string scalar_record_json(const std::vector<std::pair<std::string, std::string>>& cols) {
    json j;
    for (const auto& [k, v] : cols) j[k] = v;
    return j.dump(2) + "\n";
}

std::string scalar_record(const std::vector<std::pair<std::string, std::string>>& cols,
                          const std::string& format) {
    return format == "json" ? scalar_record_json(cols) : scalar_record_csv(cols);
}

int finish(const std::string& kind, const std::string& detail, bool pass) {
    std::cout << kind << " " << detail << " " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

void report_warnings(const ConvergenceTable& table) {
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
}

// ----- subcommand runners ----------------------------------------------------

int run_character(const OutputOptions& opt) {
    const json cfg = load_config(opt);
    const double tol = get_number_or(cfg, "tolerance", 1e-8);

    // irreducible mode: a signature (from --signature or the config's integer
    // array) evaluated as a normalized character at a spectrum block
    if (!opt.signature_csv.empty() || cfg.contains("signature")) {
        std::vector<long> parts;
        if (!opt.signature_csv.empty()) {
            parts = parse_signature_parts(opt.signature_csv);
        } else {
            for (const long p : get_int_list(cfg, "signature", "")) parts.push_back(p);
        }
        const long V = get_integer(cfg, "V", "");
        const auto a = get_complex_list(cfg, "a", "");
        Signature sig = make_signature(std::move(parts), V);
        const Complex value = normalized_character(sig, EigenList::make(a), V);
        write_artifact(resolve_out(cfg, opt),
                       scalar_record({{"value_re", format_double(value.real())},
                                      {"value_im", format_double(value.imag())},
                                      {"abs_value", format_double(std::abs(value))}},
                                     opt.format));
        const bool pass = std::abs(value) <= 1.0 + tol;
        return finish("character",
                      "signature=" + sig.to_string() + " |value|=" + format_double(std::abs(value)),
                      pass);
    }

    const VKParams params = parse_params(cfg, "");
    const std::uint64_t seed = resolve_seed(cfg, opt);

    Matrix w;
    const json& wspec = require_field(cfg, "w", "");
    const std::string kind = require_field(wspec, "kind", "/w").get<std::string>();
    if (kind == "haar") {
        const long dim = get_integer(wspec, "dim", "/w");
        Rng rng(seed);
        w = haar_unitary(static_cast<int>(dim), rng);
    } else if (kind == "diag") {
        const auto eig = get_complex_list(wspec, "eigenvalues", "/w");
        w = Matrix::Zero(static_cast<Eigen::Index>(eig.size()), static_cast<Eigen::Index>(eig.size()));
        for (std::size_t i = 0; i < eig.size(); ++i) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = eig[i];
    } else {
        throw ConfigError("config error at /w/kind: expected haar or diag");
    }

    const Complex value = character_det(params, w);
    write_artifact(resolve_out(cfg, opt),
                   scalar_record({{"value_re", format_double(value.real())},
                                  {"value_im", format_double(value.imag())},
                                  {"abs_value", format_double(std::abs(value))}},
                                 opt.format));
    const bool pass = std::abs(value) <= 1.0 + tol;
    return finish("character", "dim=" + std::to_string(w.rows()) +
                                   " |value|=" + format_double(std::abs(value)),
                  pass);
}

int run_compress(const OutputOptions& opt) {
    const json cfg = load_config(opt);
    const VKParams params = parse_params(cfg, "");
    const CompressionFrame frame = parse_frame(cfg, "");
    const std::uint64_t seed = resolve_seed(cfg, opt);
    const double tol = get_number_or(cfg, "tolerance", 1e-8);

    Rng rng(seed);
    const Matrix w = haar_unitary(static_cast<int>(frame.total()), rng);
    const Complex value = compressed_functional(params, frame, w);
    write_artifact(resolve_out(cfg, opt),
                   scalar_record({{"value_re", format_double(value.real())},
                                  {"value_im", format_double(value.imag())},
                                  {"abs_value", format_double(std::abs(value))}},
                                 opt.format));
    const bool pass = std::abs(value) <= 1.0 + tol;
    return finish("compress",
                  "frame=" + std::to_string(frame.dim_plus) + "+" +
                      std::to_string(frame.dim_minus) +
                      " |value|=" + format_double(std::abs(value)),
                  pass);
}

int run_psd_check(const OutputOptions& opt) {
    const json cfg = load_config(opt);
    const VKParams params = parse_params(cfg, "");
    const CompressionFrame frame = parse_frame(cfg, "");
    const long m = get_integer(cfg, "m", "");
    if (m <= 0) throw ConfigError("config error at /m: expected a positive integer");
    const std::uint64_t seed = resolve_seed(cfg, opt);
    const double tol = get_number_or(cfg, "tolerance", 1e-8);

    Rng rng(seed);
    std::vector<Matrix> elements;
    elements.reserve(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i)
        elements.push_back(haar_unitary(static_cast<int>(frame.total()), rng));

    const PsdReport rep = gram_psd_check(
        [&](const Matrix& g) { return compressed_functional(params, frame, g); }, elements, tol);

    write_artifact(resolve_out(cfg, opt),
                   scalar_record({{"seed", std::to_string(seed)},
                                  {"m", std::to_string(m)},
                                  {"min_eig", format_double(rep.min_eigenvalue)},
                                  {"pass", rep.pass ? "1" : "0"}},
                                 opt.format));
    return finish("psd-check",
                  "m=" + std::to_string(m) + " min_eig=" + format_double(rep.min_eigenvalue),
                  rep.pass);
}

int run_table_experiment(const OutputOptions& opt, const std::string& kind) {
    const json cfg = load_config(opt);
    const double tol = get_number_or(cfg, "tolerance", 1e-2);
    ConvergenceTable table;

    if (kind == "nv-limit" || kind == "ext-limit") {
        const auto a = get_complex_list(cfg, "a", "");
        const double density = get_number(cfg, "density", "");
        const auto V = get_int_list(cfg, "V", "");
        const auto schedule = LimitSchedule::make(V, density);
        const EigenList spectrum = EigenList::make(a);
        table = kind == "nv-limit" ? nv_limit_experiment(spectrum, schedule)
                                   : exterior_limit_experiment(spectrum, schedule);
    } else if (kind == "vk-limit") {
        const VKParams params = parse_params(cfg, "");
        const auto a = get_complex_list(cfg, "a", "");
        const auto V = get_int_list(cfg, "V", "");
        const auto schedule = LimitSchedule::make(V, 0.0);
        table = asymptotic_character_experiment(params, EigenList::make(a), schedule);
    } else {  // spherical
        const double c = get_number(cfg, "c", "");
        const double rate = get_number(cfg, "rate", "");
        const auto V = get_int_list(cfg, "V", "");
        DensityNormalization norm = DensityNormalization::PerVolume;
        if (cfg.contains("normalization")) {
            const std::string n = cfg.at("normalization").get<std::string>();
            if (n == "per-volume")
                norm = DensityNormalization::PerVolume;
            else if (n == "per-sqrt-volume")
                norm = DensityNormalization::PerSqrtVolume;
            else
                throw ConfigError(
                    "config error at /normalization: expected per-volume or per-sqrt-volume");
        }
        table = e_lambda_limit_experiment(c, rate, V, norm);
    }

    report_warnings(table);
    write_artifact(resolve_out(cfg, opt), table_body(table, opt.format));
    const bool pass = table.final_error() < tol && table.warnings.empty();
    return finish(kind, "final_error=" + format_double(table.final_error()), pass);
}

int run_diffeo_free_boson(const OutputOptions& opt) {
    const json cfg = load_config(opt);
    const QuadratureGrid grid = parse_grid(cfg, "");
    const double tol = get_number_or(cfg, "tolerance", 1e-4);
    const json& flows = require_field(cfg, "flows", "");
    if (!flows.is_array() || flows.empty())
        throw ConfigError("config error at /flows: expected a nonempty array");
    const Box omega_box =
        cfg.contains("omega_box") ? parse_box(cfg.at("omega_box"), "/omega_box") : grid.box;

    std::ostringstream csv;
    json rows = json::array();
    csv << "flow,route_a,route_b,abs_diff\n";
    double worst = 0.0;
    std::size_t idx = 0;
    for (const auto& fspec : flows) {
        const FlowDiffeo psi = parse_flow(fspec, "/flows[" + std::to_string(idx) + "]");
        const double a = free_boson_functional(psi, grid);
        const double b = std::exp(omega_pairing(psi, omega_box, grid));
        const double diff = std::fabs(a - b);
        worst = std::max(worst, diff);
        csv << idx << ',' << format_double(a) << ',' << format_double(b) << ','
            << format_double(diff) << '\n';
        rows.push_back({{"flow", idx}, {"route_a", a}, {"route_b", b}, {"abs_diff", diff}});
        ++idx;
    }
    write_artifact(resolve_out(cfg, opt), opt.format == "json"
                                              ? json{{"rows", rows}}.dump(2) + "\n"
                                              : csv.str());
    return finish("diffeo-free-boson", "max_route_diff=" + format_double(worst), worst <= tol);
}

int run_diffeo_compress(const OutputOptions& opt) {
    const json cfg = load_config(opt);
    const VKParams params = parse_params(cfg, "");
    const QuadratureGrid grid = parse_grid(cfg, "");
    const FlowDiffeo psi = parse_flow(require_field(cfg, "flow", ""), "/flow");
    const double tol = get_number_or(cfg, "tolerance", 1e-6);

    const json& bspec = require_field(cfg, "basis", "");
    const std::string bkind = require_field(bspec, "kind", "/basis").get<std::string>();
    BasisFamily basis;
    if (bkind == "bumps") {
        const json& centers = require_field(bspec, "centers", "/basis");
        if (!centers.is_array() || centers.empty())
            throw ConfigError("config error at /basis/centers: expected a nonempty array");
        std::vector<Vec2> pts;
        std::size_t i = 0;
        for (const auto& c : centers)
            pts.push_back(parse_vec2(c, "/basis/centers[" + std::to_string(i++) + "]"));
        basis = BasisFamily::bumps(pts, get_number(bspec, "plateau_radius", "/basis"),
                                   get_number(bspec, "support_radius", "/basis"), grid);
    } else if (bkind == "indicator-rings") {
        const json& boxes = require_field(bspec, "boxes", "/basis");
        if (!boxes.is_array() || boxes.empty())
            throw ConfigError("config error at /basis/boxes: expected a nonempty array");
        std::vector<Box> nested;
        std::size_t i = 0;
        for (const auto& b : boxes)
            nested.push_back(parse_box(b, "/basis/boxes[" + std::to_string(i++) + "]"));
        basis = BasisFamily::indicator_rings(nested);
    } else {
        throw ConfigError("config error at /basis/kind: expected bumps or indicator-rings");
    }

    const CompressedDiffeoValue out = diffeo_compressed_functional(params, psi, basis, grid);
    write_artifact(resolve_out(cfg, opt),
                   scalar_record({{"value_re", format_double(out.value.real())},
                                  {"value_im", format_double(out.value.imag())},
                                  {"block_norm", format_double(out.block_norm)},
                                  {"rescaled", out.rescaled ? "1" : "0"}},
                                 opt.format));
    const bool pass = std::abs(out.value) <= 1.0 + tol;
    return finish("diffeo-compress",
                  "|value|=" + format_double(std::abs(out.value)) +
                      " block_norm=" + format_double(out.block_norm),
                  pass);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for determinantal unitary-group characters, N/V limits, "
                 "and their diffeomorphism-group restrictions"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {"character",   "compress",  "psd-check",
                                            "nv-limit",    "ext-limit", "vk-limit",
                                            "spherical",   "diffeo-free-boson",
                                            "diffeo-compress"};
    std::map<std::string, OutputOptions> opts;
    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind);
        auto& o = opts[kind];
        sub->add_option("--config", o.config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", o.out_path, "artifact path (default: config 'output' or stdout)");
        sub->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option_function<std::uint64_t>(
            "--seed", [&o](const std::uint64_t& s) { o.seed_override = s; },
            "override the config seed");
        if (kind == "character")
            sub->add_option("--signature", o.signature_csv,
                            "comma-separated signature parts (irreducible mode)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string kind = app.get_subcommands().front()->get_name();

    try {
        const OutputOptions& o = opts[kind];
        if (kind == "character") return run_character(o);
        if (kind == "compress") return run_compress(o);
        if (kind == "psd-check") return run_psd_check(o);
        if (kind == "nv-limit" || kind == "ext-limit" || kind == "vk-limit" || kind == "spherical")
            return run_table_experiment(o, kind);
        if (kind == "diffeo-free-boson") return run_diffeo_free_boson(o);
        if (kind == "diffeo-compress") return run_diffeo_compress(o);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
