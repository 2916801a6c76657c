// Command-line front end over the rpmres shared library: resonance tables,
// transmission curves, width estimates, overlap scans, wavefunction export.
// Configuration comes from presets and/or a JSON file; explicit flags win.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rpmres.h"

using json = nlohmann::ordered_json;

namespace {

int exit_code(rpmres_status st)
{
    switch (st) {
    case RPMRES_OK: return 0;
    case RPMRES_ERR_CONVERGENCE: return 2;
    case RPMRES_ERR_UNITARITY: return 3;
    case RPMRES_ERR_CONFIG: return 4;
    case RPMRES_ERR_DOMAIN: return 4;
    default: return 2;
    }
}

[[noreturn]] void die(rpmres_status st, const std::string& what)
{
    std::fprintf(stderr, "rpmres: %s: %s\n", what.c_str(), rpmres_last_error());
    std::exit(exit_code(st));
}

[[noreturn]] void die_config(const std::string& msg)
{
    std::fprintf(stderr, "rpmres: %s\n", msg.c_str());
    std::exit(4);
}

std::string fmt17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return buf;
}

// ---- configuration ------------------------------------------------------

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        die_config("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        die_config(path + ": " + e.what());
    }
    return j;
}

std::string preset_dir()
{
    if (const char* env = std::getenv("RPMRES_PRESET_DIR"))
        return env;
#ifdef RPMRES_PRESET_DIR
    return RPMRES_PRESET_DIR;
#else
    return "presets";
#endif
}

// deep-merge b over a (objects merged recursively, everything else replaced)
void merge_over(json& a, const json& b)
{
    if (!a.is_object() || !b.is_object()) {
        a = b;
        return;
    }
    for (auto it = b.begin(); it != b.end(); ++it) {
        if (a.contains(it.key()))
            merge_over(a[it.key()], it.value());
        else
            a[it.key()] = it.value();
    }
}

// numbers may arrive as JSON strings (preferred, keeps full precision) or
// as JSON numbers (re-rendered at 17 significant digits)
std::string num_str(const json& v, const char* what)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number())
        return fmt17(v.get<double>());
    die_config(std::string(what) + " must be a number or a numeric string");
}

// accepts 0/1 or "even"/"odd"
int parse_parity(const json& v)
{
    if (v.is_number_integer()) {
        int p = v.get<int>();
        if (p == 0 || p == 1)
            return p;
    } else if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "even")
            return 0;
        if (s == "odd")
            return 1;
    }
    die_config("parity must be 0, 1, \"even\" or \"odd\"");
}

struct PotHandle {
    rpmres_potential* p = nullptr;
    bool free_particle = false;
    ~PotHandle()
    {
        if (p)
            rpmres_potential_free(p);
    }
};

void build_potential(const json& cfg, PotHandle& out, bool allow_free)
{
    if (!cfg.contains("potential"))
        die_config("config needs a \"potential\" object");
    const json& pj = cfg["potential"];
    std::string kind = pj.value("kind", "");
    rpmres_status st = RPMRES_OK;
    if (kind == "gaussian") {
        st = rpmres_potential_gaussian(num_str(pj.at("v0"), "v0").c_str(),
                                       num_str(pj.at("lambda"), "lambda").c_str(), &out.p);
    } else if (kind == "kg") {
        st = rpmres_potential_kg(num_str(pj.at("J"), "J").c_str(),
                                 num_str(pj.at("lambda"), "lambda").c_str(), &out.p);
    } else if (kind == "custom") {
        std::vector<std::string> cs;
        for (const auto& c : pj.at("coeffs"))
            cs.push_back(num_str(c, "coeffs entry"));
        std::vector<const char*> ptrs;
        for (const auto& s : cs)
            ptrs.push_back(s.c_str());
        st = rpmres_potential_custom(ptrs.data(), ptrs.size(), &out.p);
    } else if (kind == "free" && allow_free) {
        out.free_particle = true;
        return;
    } else {
        die_config("potential.kind must be gaussian, kg or custom" +
                   std::string(allow_free ? " (or free)" : ""));
    }
    if (st != RPMRES_OK)
        die(st, "building potential");
}

int pick_digits(const json& cfg, int flag_digits)
{
    if (flag_digits > 0)
        return flag_digits;
    if (cfg.contains("digits"))
        return cfg["digits"].get<int>();
    if (const char* env = std::getenv("RPMRES_PRECISION_DIGITS"))
        return std::atoi(env);
    return 64;
}

// command-scoped "digits" wins over the top-level key
int pick_digits(const json& cfg, const json& section, int flag_digits)
{
    if (flag_digits <= 0 && section.contains("digits"))
        return section["digits"].get<int>();
    return pick_digits(cfg, flag_digits);
}

std::FILE* open_out(const std::string& path)
{
    if (path == "-")
        return stdout;
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        die_config("cannot open output file: " + path);
    return f;
}

void close_out(std::FILE* f)
{
    if (f && f != stdout)
        std::fclose(f);
}

// ---- stable-digit truncation for the human table ------------------------

// keep digits of the full-precision decimal string down to the decade just
// above err, truncating rather than rounding; err = 0 keeps everything
std::string truncate_stable(const std::string& full, double err)
{
    if (full.empty())
        return full;
    double v = std::strtod(full.c_str(), nullptr);
    if (v == 0.0)
        return "0";
    if (!(err > 0))
        return full;
    int vexp = static_cast<int>(std::floor(std::log10(std::fabs(v))));
    int eexp = static_cast<int>(std::floor(std::log10(err)));
    int sig = vexp - eexp; // digits of v that sit above the error decade
    if (sig < 1)
        return "~0"; // the component is smaller than its own uncertainty
    if (sig > 40)
        sig = 40;

    // full strings are scientific: [-]d.dddd...e[+-]XX
    auto epos = full.find_first_of("eE");
    std::string mant = epos == std::string::npos ? full : full.substr(0, epos);
    std::string tail = epos == std::string::npos ? "" : full.substr(epos);
    size_t keep = (mant[0] == '-' ? 1 : 0) + 1; // sign + leading digit
    if (sig > 1)
        keep += 1 + static_cast<size_t>(sig - 1); // '.' + remaining digits
    if (keep < mant.size())
        mant = mant.substr(0, keep);
    return mant + tail;
}

// ---- resonance command --------------------------------------------------

using ResRow = std::pair<std::string, rpmres_resonance>; // label (may be empty), result

void emit_resonance_csv(std::FILE* f, const std::vector<ResRow>& rs, bool with_label)
{
    std::fprintf(f, "%sparity,epsilon_R,epsilon_I,gamma,error_estimate,D_final\n",
                 with_label ? "label," : "");
    for (const auto& [lab, r] : rs) {
        if (with_label)
            std::fprintf(f, "%s,", lab.c_str());
        std::fprintf(f, "%d,%s,%s,%s,%s,%d\n", r.parity, r.epsilon_R, r.epsilon_I,
                     r.gamma, fmt17(r.error_estimate).c_str(), r.D_final);
    }
}

void emit_resonance_table(const std::vector<ResRow>& rs, bool with_label)
{
    if (with_label)
        std::printf("%-8s ", "label");
    std::printf("%-6s %-26s %-28s %-14s %-9s %s\n", "parity", "epsilon_R", "epsilon_I",
                "Gamma", "err", "D");
    for (const auto& [lab, r] : rs) {
        if (with_label)
            std::printf("%-8s ", lab.c_str());
        std::printf("%-6s %-26s %-28s %-14s %-9.1e %d\n", r.parity == 0 ? "even" : "odd",
                    truncate_stable(r.epsilon_R, r.error_estimate).c_str(),
                    truncate_stable(r.epsilon_I, r.error_estimate).c_str(),
                    truncate_stable(r.gamma, r.error_estimate).c_str(), r.error_estimate,
                    r.D_final);
    }
}

// runs one seeds- or search-mode job against a single potential
std::vector<rpmres_resonance> run_resonance_job(rpmres_potential* p, const json& rc,
                                                int digits)
{
    int d = rc.value("d", 0);
    int D_min = rc.value("D_min", 8);
    int D_max = rc.value("D_max", 20);
    std::vector<rpmres_resonance> rows;

    if (rc.contains("seeds")) {
        // reproduction mode: one ladder per supplied seed
        for (const auto& s : rc["seeds"]) {
            int parity = parse_parity(s.at("parity"));
            std::string re = num_str(s.at("re"), "seed re");
            std::string im = num_str(s.at("im"), "seed im");
            int smin = s.value("D_min", D_min);
            rpmres_resonance r;
            rpmres_status st = rpmres_converge_resonance(
                p, parity, d, smin, D_max, re.c_str(), im.c_str(), digits, &r);
            if (st != RPMRES_OK)
                die(st, "converging seed " + re);
            rows.push_back(r);
        }
    } else {
        // search mode: multistart per requested parity
        std::string parity = rc.value("parity", "both");
        int count = rc.value("count", 3);
        double re_lo = rc.value("re_lo", 0.0);
        double re_hi = rc.value("re_hi", 5.0);
        double im_depth = rc.value("im_depth", 3.0);
        std::vector<int> ps;
        if (parity == "even")
            ps = {0};
        else if (parity == "odd")
            ps = {1};
        else if (parity == "both")
            ps = {0, 1};
        else
            die_config("resonances.parity must be even, odd or both");
        for (int s : ps) {
            std::vector<rpmres_resonance> buf(count);
            size_t n = 0;
            rpmres_status st = rpmres_lowest_resonances(p, s, count, d, D_min, D_max,
                                                        digits, re_lo, re_hi, im_depth,
                                                        buf.data(), &n);
            if (st != RPMRES_OK)
                die(st, "resonance search");
            rows.insert(rows.end(), buf.begin(), buf.begin() + n);
        }
        std::sort(rows.begin(), rows.end(),
                  [](const rpmres_resonance& a, const rpmres_resonance& b) {
                      return a.epsilon_R_d < b.epsilon_R_d;
                  });
    }
    return rows;
}

int cmd_resonances(const json& cfg, int flag_digits)
{
    json rc = cfg.value("resonances", json::object());
    int digits = pick_digits(cfg, rc, flag_digits);
    std::vector<ResRow> rows;
    bool family = rc.contains("family");

    if (family) {
        // one job per entry, each with its own potential; entry fields
        // override the shared defaults in the surrounding object
        json defaults = rc;
        defaults.erase("family");
        defaults.erase("csv");
        for (const auto& e : rc["family"]) {
            if (!e.contains("potential"))
                die_config("family entries need a \"potential\" object");
            json sub = cfg;
            sub["potential"] = e["potential"];
            PotHandle pot;
            build_potential(sub, pot, false);
            json job = defaults;
            merge_over(job, e);
            int jd = job.contains("digits") ? job["digits"].get<int>() : digits;
            std::string lab = e.value("label", std::string());
            for (const auto& r : run_resonance_job(pot.p, job, jd))
                rows.emplace_back(lab, r);
        }
    } else {
        PotHandle pot;
        build_potential(cfg, pot, false);
        for (const auto& r : run_resonance_job(pot.p, rc, digits))
            rows.emplace_back(std::string(), r);
    }

    std::string csv = rc.value("csv", "");
    if (csv == "-") {
        emit_resonance_csv(stdout, rows, family);
    } else {
        emit_resonance_table(rows, family);
        if (!csv.empty()) {
            std::FILE* f = open_out(csv);
            emit_resonance_csv(f, rows, family);
            close_out(f);
        }
    }
    return 0;
}

// ---- transmission command -----------------------------------------------

int cmd_transmission(const json& cfg, int)
{
    PotHandle pot;
    build_potential(cfg, pot, true);
    json tc = cfg.value("transmission", json::object());
    double lo = tc.value("lo", 0.1);
    double hi = tc.value("hi", 4.0);
    int n = tc.value("n_points", 200);
    if (n < 2)
        die_config("transmission.n_points must be >= 2");

    std::vector<rpmres_tpoint> pts(n);
    if (pot.free_particle) {
        for (int i = 0; i < n; ++i)
            pts[i] = {lo + (hi - lo) * i / (n - 1), 1.0, 0.0, 0.0};
    } else {
        rpmres_status st = rpmres_scan_transmission(pot.p, lo, hi, n, pts.data());
        if (st != RPMRES_OK)
            die(st, "transmission scan");
    }

    std::FILE* f = open_out(tc.value("csv", "-"));
    std::fprintf(f, "epsilon,T,R,residual\n");
    for (const auto& t : pts)
        std::fprintf(f, "%s,%s,%s,%s\n", fmt17(t.epsilon).c_str(), fmt17(t.T).c_str(),
                     fmt17(t.R).c_str(), fmt17(t.residual).c_str());
    close_out(f);

    if (tc.contains("bw")) {
        const json& bw = tc["bw"];
        double eR = bw.at("eps_R").get<double>();
        double eI = std::fabs(bw.at("eps_I").get<double>());
        std::FILE* g = open_out(bw.value("csv", "-"));
        std::fprintf(g, "epsilon,bw\n");
        for (int i = 0; i < n; ++i) {
            double e = lo + (hi - lo) * i / (n - 1);
            std::fprintf(g, "%s,%s\n", fmt17(e).c_str(),
                         fmt17(rpmres_bw_profile(e, eR, eI)).c_str());
        }
        close_out(g);
    }
    return 0;
}

// ---- width-estimate command ---------------------------------------------

int cmd_sa(const json& cfg, int)
{
    PotHandle pot;
    build_potential(cfg, pot, false);
    json sc = cfg.value("sa", json::object());
    int parity = sc.contains("parity") ? parse_parity(sc["parity"]) : 0;

    double eps_T;
    if (sc.contains("eps_T")) {
        eps_T = sc["eps_T"].get<double>();
    } else if (sc.contains("peak_lo") && sc.contains("peak_hi")) {
        double Tp = 0;
        rpmres_status st = rpmres_transmission_peak(
            pot.p, sc["peak_lo"].get<double>(), sc["peak_hi"].get<double>(),
            sc.value("peak_tol", 1e-10), &eps_T, &Tp);
        if (st != RPMRES_OK)
            die(st, "locating transmission peak");
    } else {
        die_config("sa needs eps_T or a peak_lo/peak_hi bracket");
    }

    rpmres_sa_report rep;
    rpmres_status st = rpmres_sa_width(pot.p, parity, eps_T, &rep);
    if (st != RPMRES_OK)
        die(st, "width estimate");

    json out;
    out["gamma_SA"] = rep.gamma_SA;
    out["epsilon_T"] = rep.epsilon_T_used;
    out["a"] = rep.a_used;
    out["b"] = rep.b_used;
    out["norm_integral"] = rep.norm_integral;
    out["boundary_density"] = rep.boundary_density;
    if (sc.contains("gamma_rpm")) {
        double grpm = std::strtod(num_str(sc["gamma_rpm"], "gamma_rpm").c_str(), nullptr);
        out["gamma_RPM"] = grpm;
        out["ratio"] = rep.gamma_SA / grpm;
    }

    std::FILE* f = open_out(sc.value("json", "-"));
    std::fprintf(f, "%s\n", out.dump(2).c_str());
    close_out(f);
    return 0;
}

// ---- overlap command ----------------------------------------------------

int cmd_overlap(const json& cfg, int flag_digits)
{
    json oc = cfg.value("overlap", json::object());
    if (!oc.contains("v0_list"))
        die_config("overlap needs v0_list");
    std::string lambda = oc.contains("lambda") ? num_str(oc["lambda"], "lambda") : "1";
    int digits = pick_digits(cfg, oc, flag_digits);
    int D_min = oc.value("D_min", 8);
    int D_max = oc.value("D_max", 20);
    double im_depth = oc.value("im_depth", 4.0);

    std::FILE* f = open_out(oc.value("csv", "-"));
    std::fprintf(f, "v0,epsilon_R1,gamma1,epsilon_R2,gamma2,overlap\n");
    for (const auto& v0j : oc["v0_list"]) {
        std::string v0 = num_str(v0j, "v0_list entry");
        PotHandle pot;
        rpmres_status st = rpmres_potential_gaussian(v0.c_str(), lambda.c_str(), &pot.p);
        if (st != RPMRES_OK)
            die(st, "building potential");

        double re_hi;
        if (oc.contains("re_hi")) {
            re_hi = oc["re_hi"].get<double>();
        } else {
            double b = 0, vb = 0;
            rpmres_barrier_geometry(pot.p, &b, &vb);
            re_hi = vb + 3.0; // wide enough for the second state of deep wells
        }

        std::vector<rpmres_resonance> all;
        for (int s : {0, 1}) {
            rpmres_resonance buf[2];
            size_t n = 0;
            st = rpmres_lowest_resonances(pot.p, s, 2, 0, D_min, D_max, digits, 0.05,
                                          re_hi, im_depth, buf, &n);
            if (st != RPMRES_OK)
                die(st, "resonance search at v0=" + v0);
            all.insert(all.end(), buf, buf + n);
        }
        std::sort(all.begin(), all.end(),
                  [](const rpmres_resonance& a, const rpmres_resonance& b) {
                      return a.epsilon_R_d < b.epsilon_R_d;
                  });
        if (all.size() < 2) {
            std::fprintf(stderr,
                         "rpmres: fewer than two states found for v0=%s "
                         "(widen re_hi/im_depth)\n",
                         v0.c_str());
            close_out(f);
            std::exit(2);
        }
        const rpmres_resonance& r1 = all[0];
        const rpmres_resonance& r2 = all[1];
        int overlap =
            std::fabs(r2.epsilon_R_d - r1.epsilon_R_d) < (r1.gamma_d + r2.gamma_d) / 2;
        std::fprintf(f, "%s,%s,%s,%s,%s,%d\n", v0.c_str(), fmt17(r1.epsilon_R_d).c_str(),
                     fmt17(r1.gamma_d).c_str(), fmt17(r2.epsilon_R_d).c_str(),
                     fmt17(r2.gamma_d).c_str(), overlap);
    }
    close_out(f);
    return 0;
}

// ---- wavefunction export ------------------------------------------------

int cmd_wave(const json& cfg, int)
{
    PotHandle pot;
    build_potential(cfg, pot, false);
    json wc = cfg.value("wave", json::object());
    int parity = wc.contains("parity") ? parse_parity(wc["parity"]) : 0;
    int M = wc.value("M", 24);
    std::string re = wc.contains("eps_re") ? num_str(wc["eps_re"], "eps_re") : "";
    std::string im = wc.contains("eps_im") ? num_str(wc["eps_im"], "eps_im") : "0";
    if (re.empty())
        die_config("wave needs eps_re");
    double x_lo = wc.value("x_lo", 0.0);
    double x_hi = wc.value("x_hi", 2.0);
    int n = wc.value("n", 201);
    if (n < 2)
        die_config("wave.n must be >= 2");

    std::vector<double> x(n), fre(n), fim(n), a2(n);
    rpmres_status st = rpmres_wave_sample(pot.p, parity, re.c_str(), im.c_str(), M, x_lo,
                                          x_hi, n, x.data(), fre.data(), fim.data(),
                                          a2.data());
    if (st != RPMRES_OK)
        die(st, "sampling wavefunction");

    std::FILE* f = open_out(wc.value("csv", "-"));
    std::fprintf(f, "x,re_phi,im_phi,abs2\n");
    for (int i = 0; i < n; ++i)
        std::fprintf(f, "%s,%s,%s,%s\n", fmt17(x[i]).c_str(), fmt17(fre[i]).c_str(),
                     fmt17(fim[i]).c_str(), fmt17(a2[i]).c_str());
    close_out(f);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Resonances, transmission and widths of symmetric 1-D wells"};
    app.require_subcommand(1);

    std::string preset, config_path;
    int flag_digits = 0;
    std::string flag_v0, flag_lambda, flag_J, flag_csv;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--preset", preset, "preset name from the preset directory");
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--digits", flag_digits, "working precision (decimal digits)");
        sub->add_option("--v0", flag_v0, "override potential v0");
        sub->add_option("--lambda", flag_lambda, "override potential lambda");
        sub->add_option("--J", flag_J, "override potential J");
        sub->add_option("--csv", flag_csv, "override output path ('-' = stdout)");
    };

    CLI::App* c_res = app.add_subcommand("resonances", "lowest bound/resonant states");
    CLI::App* c_tra = app.add_subcommand("transmission", "T(eps) curve export");
    CLI::App* c_sa = app.add_subcommand("sa", "boundary-flux width estimate");
    CLI::App* c_ovl = app.add_subcommand("overlap", "first-two-states overlap scan");
    CLI::App* c_wav = app.add_subcommand("wave", "wavefunction series export");
    for (CLI::App* s : {c_res, c_tra, c_sa, c_ovl, c_wav})
        add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    json cfg = json::object();
    if (!preset.empty())
        merge_over(cfg, load_json_file(preset_dir() + "/" + preset + ".json"));
    if (!config_path.empty())
        merge_over(cfg, load_json_file(config_path));

    // flag overrides
    if (!flag_v0.empty())
        cfg["potential"]["v0"] = flag_v0;
    if (!flag_lambda.empty())
        cfg["potential"]["lambda"] = flag_lambda;
    if (!flag_J.empty())
        cfg["potential"]["J"] = flag_J;

    try {
        if (c_res->parsed()) {
            if (!flag_csv.empty())
                cfg["resonances"]["csv"] = flag_csv;
            return cmd_resonances(cfg, flag_digits);
        }
        if (c_tra->parsed()) {
            if (!flag_csv.empty())
                cfg["transmission"]["csv"] = flag_csv;
            return cmd_transmission(cfg, flag_digits);
        }
        if (c_sa->parsed()) {
            if (!flag_csv.empty())
                cfg["sa"]["json"] = flag_csv;
            return cmd_sa(cfg, flag_digits);
        }
        if (c_ovl->parsed()) {
            if (!flag_csv.empty())
                cfg["overlap"]["csv"] = flag_csv;
            return cmd_overlap(cfg, flag_digits);
        }
        if (c_wav->parsed()) {
            if (!flag_csv.empty())
                cfg["wave"]["csv"] = flag_csv;
            return cmd_wave(cfg, flag_digits);
        }
    } catch (const json::exception& e) {
        die_config(std::string("config: ") + e.what());
    }
    return 4;
}
