#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include <oklab/io.hpp>

namespace {

using namespace oklab;

size_t line_of_byte(const std::string& text, size_t byte) {
    size_t line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format;
    int m_max_override = 0;
};

/* Stream selection: configured path, --out override, or stdout. */
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

Flag flag_for_command(const std::string& cmd, const JobConfig& cfg) {
    Flag f;
    f.point = cfg.point;
    f.order = cfg.flag_order;
    if (cmd == "infbody")
        f.kind = Flag::Kind::infinitesimal;
    else
        f.kind = cfg.has_flag_kind ? cfg.flag_kind : Flag::Kind::coordinate;
    return f;
}

void emit_polytope_csv(std::ostream& os, const Polytope& P) {
    for (int c = 0; c < P.ambient; ++c)
        os << (c ? "," : "") << "x" << c << ",x" << c << "_exact";
    os << "\n";
    for (const auto& v : P.vertices) {
        for (size_t c = 0; c < v.size(); ++c) os << (c ? "," : "") << csv_pair(v[c]);
        os << "\n";
    }
}

int cmd_body(const std::string& cmd, const JobConfig& cfg, const MonomialSeries& S,
             std::ostream& os) {
    BodyResult r = okounkov_body(S, flag_for_command(cmd, cfg));
    if (cfg.format == "csv") {
        os << "# limit_mode," << to_string(r.report.mode) << "\n";
        emit_polytope_csv(os, r.body);
        return 0;
    }
    json j = polytope_json(r.body);
    j["limit_mode"] = to_string(r.report.mode);
    j["m_max"] = r.report.m_full;
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_gauges(const JobConfig& cfg, const MonomialSeries& S, std::ostream& os) {
    GaugeReport g = compute_gauges(S, cfg.point);
    Rational mu = nakayama_mu(g.inf.body);
    SeshadriEstimate est = seshadri_estimate(S, cfg.point);
    if (cfg.format == "csv") {
        os << "name,value,exact\n";
        os << "xi," << csv_pair(g.xi) << "\n";
        os << "xitilde," << csv_pair(g.xi_tilde) << "\n";
        os << "mu," << csv_pair(mu) << "\n";
        os << "seshadri_estimate," << csv_pair(est.value) << "\n";
        return 0;
    }
    json j;
    j["xi"] = rational_json(g.xi);
    j["xitilde"] = rational_json(g.xi_tilde);
    j["mu"] = rational_json(mu);
    j["seshadri_estimate"] = rational_json(est.value);
    j["jet_estimate_stabilized"] = est.stabilized;
    j["limit_modes"] = {{"coordinate", to_string(g.coord.report.mode)},
                        {"infinitesimal", to_string(g.inf.report.mode)}};
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_jets(const JobConfig& cfg, const MonomialSeries& S, std::ostream& os) {
    SeshadriEstimate est = seshadri_estimate(S, cfg.point);
    if (cfg.format == "csv") {
        os << "m,jet\n";
        for (int m = 1; m <= S.m_max; ++m)
            os << m << "," << est.jets[static_cast<size_t>(m - 1)] << "\n";
        os << "# seshadri_estimate," << csv_pair(est.value) << "\n";
        return 0;
    }
    json j;
    j["jets"] = json::array();
    for (int m = 1; m <= S.m_max; ++m)
        j["jets"].push_back({m, est.jets[static_cast<size_t>(m - 1)]});
    j["seshadri_estimate"] = rational_json(est.value);
    j["stabilized"] = est.stabilized;
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_mass(const JobConfig& cfg, const MonomialSeries& S, std::ostream& os) {
    FiltrationProfile prof = jumping_profile(S, S.m_max, cfg.point);
    if (cfg.format == "csv") {
        os << "# profile\nl,e\n";
        for (size_t l = 0; l < prof.e.size(); ++l)
            os << (l + 1) << "," << prof.e[l] << "\n";
        os << "# mass\nt,t_exact,mass,mass_exact\n";
        for (const auto& t : cfg.t_grid)
            os << csv_pair(t) << "," << csv_pair(mass_plus(prof, t)) << "\n";
        return 0;
    }
    json j;
    j["m"] = prof.m;
    j["count"] = prof.e.size();
    j["total_mass"] = prof.total_mass();
    j["e"] = prof.e;
    j["alpha"] = prof.alpha;
    j["beta"] = prof.beta;
    j["mass"] = json::array();
    for (const auto& t : cfg.t_grid)
        j["mass"].push_back(
            {{"t", rational_json(t)}, {"value", rational_json(mass_plus(prof, t))}});
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_ivf(const JobConfig& cfg, const MonomialSeries& S, std::ostream& os) {
    IntegratedVolume iv = integrated_volume(S, cfg.point);
    VolumeInvariants inv = extract_invariants(iv);
    if (cfg.format == "csv") {
        os << "# phihat\nt,t_exact,phihat,phihat_exact\n";
        for (const auto& t : cfg.t_grid)
            os << csv_pair(t) << "," << csv_pair(iv.phihat.eval(t)) << "\n";
        os << "# mass_approx\nm,t,t_exact,approx,approx_exact,phihat,phihat_exact,"
              "abs_error,abs_error_exact\n";
        for (int m = 1; m <= S.m_max; ++m)
            for (const auto& t : cfg.t_grid) {
                Rational approx = ivf_mass_approx(S, m, t, cfg.point);
                Rational exact = iv.phihat.eval(t);
                os << m << "," << csv_pair(t) << "," << csv_pair(approx) << ","
                   << csv_pair(exact) << "," << csv_pair(rat_abs(approx - exact))
                   << "\n";
            }
        return 0;
    }
    json j;
    j["n"] = iv.n;
    j["total_volume"] = rational_json(iv.total_volume);
    j["limit_mode"] = to_string(iv.inf_body.report.mode);
    j["profile"] = piecewise_json(iv.profile);
    j["phihat_prime"] = piecewise_json(iv.phihat_prime);
    j["phihat"] = piecewise_json(iv.phihat);
    j["invariants"] = {{"mu", rational_json(inv.mu)},
                       {"seshadri", rational_json(inv.seshadri)},
                       {"vol_t", piecewise_json(inv.vol_t)}};
    j["phihat_table"] = json::array();
    for (const auto& t : cfg.t_grid)
        j["phihat_table"].push_back(
            {{"t", rational_json(t)}, {"value", rational_json(iv.phihat.eval(t))}});
    j["mass_approx_table"] = json::array();
    for (int m = 1; m <= S.m_max; ++m)
        for (const auto& t : cfg.t_grid) {
            Rational approx = ivf_mass_approx(S, m, t, cfg.point);
            Rational exact = iv.phihat.eval(t);
            j["mass_approx_table"].push_back(
                {{"m", m},
                 {"t", rational_json(t)},
                 {"approx", rational_json(approx)},
                 {"phihat", rational_json(exact)},
                 {"abs_error", rational_json(rat_abs(approx - exact))}});
        }
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_check(const JobConfig& cfg, const MonomialSeries& S, std::ostream& os) {
    std::vector<std::string> failures;
    int checked = 0;
    auto note = [&](bool ok, const std::string& name) {
        ++checked;
        if (ok) {
            os << "ok " << name << "\n";
        } else {
            os << "FAIL " << name << "\n";
            failures.push_back(name);
        }
    };

    GaugeReport g = compute_gauges(S, cfg.point);
    IntegratedVolume iv = integrated_volume(S, cfg.point);
    VolumeInvariants inv = extract_invariants(iv);
    SeshadriEstimate est = seshadri_estimate(S, cfg.point);
    Rational mu = nakayama_mu(g.inf.body);
    int n = S.dim();

    note(verify_double_description(g.coord.body), "coordinate body double-description");
    note(verify_double_description(g.inf.body), "infinitesimal body double-description");
    note(g.xi_tilde >= g.xi, "inverted gauge dominates standard gauge");
    note(model_simplex(n, SimplexMode::inverted, mu).contains_polytope(g.inf.body),
         "infinitesimal body inside inverted simplex at mu");
    note(iv.profile.definite_integral() == iv.total_volume,
         "profile integrates to body volume");
    note(iv.phihat.derivative() == iv.phihat_prime, "phihat antiderivative consistency");

    Rational nfact(1);
    for (int i = 2; i <= n; ++i) nfact *= i;
    Poly monomial(static_cast<size_t>(n) + 1, Rational(0));
    monomial[static_cast<size_t>(n)] = Rational(1) / nfact;
    bool growth_ok = true, monotone_ok = true;
    const auto& fp = iv.phihat_prime;
    for (size_t i = 0; i < fp.piece_count(); ++i) {
        Rational lo = fp.breakpoints()[i], hi = fp.breakpoints()[i + 1];
        Poly growth = poly_sub(poly_sub(Poly{iv.total_volume}, fp.piece(i)), monomial);
        if (!poly_nonpositive_on(growth, lo, hi)) growth_ok = false;
        if (!poly_nonpositive_on(poly_derive(fp.piece(i)), lo, hi)) monotone_ok = false;
    }
    note(growth_ok, "mass growth bounded by t^n/n!");
    note(monotone_ok, "phihat_prime nonincreasing");

    FiltrationProfile prof = jumping_profile(S, S.m_max, cfg.point);
    bool mass_ok = true;
    std::vector<Rational> samples;
    for (const auto& t : cfg.t_grid) samples.push_back(t * S.m_max);
    Rational top = prof.alpha.empty() ? Rational(1) : Rational(prof.alpha.front());
    for (int k = 0; k <= 7; ++k) samples.push_back(top * rat(k, 7) + rat(k % 3, 5));
    for (const auto& t : samples)
        if (mass_plus(prof, t, MassMethod::closed_form) !=
            mass_plus(prof, t, MassMethod::integral))
            mass_ok = false;
    note(mass_ok, "mass closed form agrees with integral form");

    BodyResult fb = filtered_body(S, Flag::infinitesimal_flag(cfg.point, cfg.flag_order));
    bool slice_ok = true;
    for (const auto& t : cfg.t_grid)
        if (phihat_via_filtered_body(fb.body, t) != iv.phihat.eval(t)) slice_ok = false;
    note(slice_ok, "phihat agrees with filtered-body slices");

    note(inv.mu == mu, "mu agrees with exhaustion of phihat_prime");
    note(est.value <= inv.seshadri, "jet estimate below profile threshold");

    json rep;
    rep["xi"] = rational_json(g.xi);
    rep["xitilde"] = rational_json(g.xi_tilde);
    rep["mu"] = rational_json(mu);
    rep["seshadri"] = rational_json(inv.seshadri);
    rep["seshadri_estimate"] = rational_json(est.value);
    os << "report " << rep.dump() << "\n";

    if (!failures.empty()) {
        os << failures.size() << " of " << checked << " properties violated:\n";
        for (const auto& f : failures) os << "  " << f << "\n";
        return 1;
    }
    os << "all " << checked << " properties hold\n";
    return 0;
}

int run(const std::string& cmd, const Options& opt) {
    std::ifstream in(opt.config_path);
    if (!in) {
        std::cerr << "error: cannot open config file: " << opt.config_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error& e) {
        std::cerr << "error: " << opt.config_path << ":" << line_of_byte(text, e.byte)
                  << ": " << e.what() << "\n";
        return 2;
    }

    JobConfig cfg;
    try {
        cfg = parse_job_config(parsed);
        if (opt.m_max_override != 0) {
            cfg.m_max = opt.m_max_override;
            if (cfg.m_max < 2) throw ConfigError("m_max", "must be at least 2");
        }
        if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
        if (!opt.format.empty()) cfg.format = opt.format;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        MonomialSeries S = build_series(cfg);
        OutputTarget target(cfg.out_path);
        std::ostream& os = target.stream();
        if (cmd == "body" || cmd == "infbody") return cmd_body(cmd, cfg, S, os);
        if (cmd == "gauges") return cmd_gauges(cfg, S, os);
        if (cmd == "jets") return cmd_jets(cfg, S, os);
        if (cmd == "mass") return cmd_mass(cfg, S, os);
        if (cmd == "ivf") return cmd_ivf(cfg, S, os);
        return cmd_check(cfg, S, os);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "okounkov-lab: limit bodies, gauges, jumping profiles, and integrated "
        "volume functions of monomial graded linear series. Set OKOUNKOV_THREADS "
        "to parallelize level computations."};
    app.require_subcommand(1);

    static const std::vector<std::pair<std::string, std::string>> commands = {
        {"body", "flag body of the configured series (coordinate flag by default)"},
        {"infbody", "infinitesimal-flag body of the configured series"},
        {"gauges", "inscribed-simplex gauges, exhaustion scale, and jet estimate"},
        {"jets", "jet separation per level and the derived estimate"},
        {"mass", "jumping profile and bounded-mass table"},
        {"ivf", "integrated volume function, invariants, and mass approximants"},
        {"check", "invariant audit over the configured series"}};

    std::map<std::string, Options> opts;
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        Options& o = opts[name];
        sub->add_option("--config", o.config_path, "job configuration (JSON)")
            ->required();
        sub->add_option("--out", o.out_path, "output path (default: stdout)");
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--m-max", o.m_max_override, "override the truncation level");
    }

    CLI11_PARSE(app, argc, argv);
    std::string cmd = app.get_subcommands().front()->get_name();
    return run(cmd, opts[cmd]);
}
