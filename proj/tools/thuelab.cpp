// thuelab: twisted Thue forms of a number field - build forms, classify
// units, solve |F_eps(x,y)| <= m over boxes and unit families, trace the
// derived quantities of a solution, and run lattice/polytope density
// experiments.  Input is a JSON field spec (polynomial + fundamental units);
// output is JSON lines (or CSV) with exact integers/rationals and
// midpoint+-radius enclosures, deterministic for a fixed config and seed.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "thuelab/density.hpp"
#include "thuelab/io.hpp"
#include "thuelab/solver.hpp"
#include "thuelab/tracer.hpp"
#include "thuelab/version.hpp"

using namespace thuelab;

namespace {

struct Emitter {
    std::string format;
    std::vector<std::string> csv_header;
    bool header_done = false;

    void doc(const ordered_json& j) {
        if (format == "jsonl") {
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "# " << j.dump() << "\n";
        }
    }
    static std::string scalar(const ordered_json& v) {
        if (v.is_object() && v.contains("mid")) {
            std::string r = v.value("rad", "0");
            return v.value("mid", "") + "+-" + r;
        }
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }
    void row(const ordered_json& j) {
        if (format == "jsonl") {
            std::cout << j.dump() << "\n";
            return;
        }
        if (!header_done) {
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                std::cout << (first ? "" : ",") << it.key();
                first = false;
            }
            std::cout << "\n";
            header_done = true;
        }
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::cout << (first ? "" : ",") << scalar(it.value());
            first = false;
        }
        std::cout << "\n";
    }
};

std::vector<long> parse_exponents(const std::string& s, int r) {
    std::vector<long> e;
    if (!s.empty()) {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) e.push_back(std::stol(item));
    }
    if ((int)e.size() > r) throw InputError("too many exponents for unit rank " + std::to_string(r));
    e.resize(r, 0);
    return e;
}

ordered_json tri_json(Tri t) { return ordered_json(tri_name(t)); }

ordered_json solution_json(const SolutionRecord& s) {
    ordered_json j;
    j["x"] = integer_json(s.x);
    j["y"] = integer_json(s.y);
    j["value"] = integer_json(s.value);
    j["eps"] = exponent_json(s.e);
    j["swapped"] = s.swapped;
    return j;
}

ordered_json header_json(const std::string& command, const RunConfig& cfg,
                         const std::string& spec_path) {
    ordered_json h;
    h["tool"] = "thuelab";
    h["version"] = kVersion;
    h["command"] = command;
    if (!spec_path.empty()) h["spec"] = spec_path;
    h["config"] = cfg.echo();
    return h;
}

ordered_json classification_json(const ClassificationRecord& rec) {
    ordered_json j;
    j["eps"] = exponent_json(rec.e);
    j["delta"] = rec.delta;
    j["in_E"] = rec.in_E;
    j["in_E_nu"] = tri_json(rec.in_E_nu);
    j["in_tilde_E_nu"] = tri_json(rec.in_tilde_E_nu);
    j["house_alpha_eps"] = enclosure_json(rec.house_alpha_eps);
    if (rec.witness1 >= 0) j["witnesses"] = {rec.witness1, rec.witness2};
    if (!rec.nu_tests_applicable) j["nu_tests_applicable"] = false;
    if (!rec.flag.empty()) j["flag"] = rec.flag;
    return j;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"twisted Thue forms: construction, classification, solving, tracing, densities"};
    app.require_subcommand(1);

    std::string spec_path;
    RunConfig cfg;
    std::string set_name = "Enu";
    app.add_option("--spec", spec_path, "field specification JSON file");
    app.add_option("--precision", cfg.precision, "working precision in bits");
    app.add_option("--max-precision", cfg.max_precision, "precision cap for adaptive predicates");
    std::string nu_str = "1/2", house_str = "10", m_str = "1";
    app.add_option("--nu", nu_str, "threshold exponent nu in (0,1)");
    app.add_option("--m", m_str, "Thue inequality bound m");
    app.add_option("--house-bound", house_str, "house bound N for unit families");
    app.add_option("--box", cfg.box, "coordinate search box |x|,|y| <= X");
    long exp_box_val = -1;
    app.add_option("--exp-box", exp_box_val, "override exponent box radius");
    app.add_option("--samples", cfg.samples, "Monte Carlo samples");
    app.add_option("--seed", cfg.seed, "Monte Carlo seed");
    app.add_option("--set", set_name, "unit set filter: E, Enu, tildeEnu");
    app.add_option("--format", cfg.format, "output format: jsonl or csv");

    auto* field_cmd = app.add_subcommand("field", "field-level commands");
    auto* field_check = field_cmd->add_subcommand("check", "validate a field spec");
    auto* units_cmd = app.add_subcommand("units", "unit-group commands");
    auto* units_enum = units_cmd->add_subcommand("enum", "enumerate units by house bound");
    auto* units_classify = units_cmd->add_subcommand("classify", "classify units into E sets");
    auto* form_cmd = app.add_subcommand("form", "binary form commands");
    auto* form_build = form_cmd->add_subcommand("build", "build the twisted form F_eps");
    auto* thue_cmd = app.add_subcommand("thue", "Thue inequality solving");
    auto* thue_solve = thue_cmd->add_subcommand("solve", "solve one form over a box");
    auto* thue_family = thue_cmd->add_subcommand("family", "solve over a unit family");
    auto* trace_cmd = app.add_subcommand("trace", "trace one solution triple");
    auto* density_cmd = app.add_subcommand("density", "lattice and polytope experiments");
    auto* density_count = density_cmd->add_subcommand("count", "lattice points in a region");
    auto* density_volume = density_cmd->add_subcommand("volume", "region volume");
    auto* density_series_cmd = density_cmd->add_subcommand("series", "density counts over an N grid");

    std::string unit_exp_str;
    int torsion_power = 0;
    for (auto* c : {form_build, thue_solve}) {
        c->add_option("--unit-exponent", unit_exp_str, "comma-separated unit exponents");
        c->add_option("--torsion", torsion_power, "torsion power");
    }
    std::string trace_x = "1", trace_y = "1", lambda_str = "1/2", mu_str = "3/2";
    trace_cmd->add_option("--x", trace_x, "solution x");
    trace_cmd->add_option("--y", trace_y, "solution y");
    trace_cmd->add_option("--unit-exponent", unit_exp_str, "comma-separated unit exponents");
    trace_cmd->add_option("--torsion", torsion_power, "torsion power");
    trace_cmd->add_option("--lambda", lambda_str, "Lemma 12(a) parameter in (0,1)");
    trace_cmd->add_option("--mu", mu_str, "Lemma 12(b) parameter > 1");

    std::string region_name = "H_M", M_str = "1", translate_name = "alpha", method = "box";
    int sig_r1 = -1, sig_r2 = -1;
    density_count->add_option("--region", region_name, "region kind");
    density_count->add_option("--M", M_str, "threshold M (rational)");
    density_count->add_option("--translate", translate_name, "lattice translate: alpha or one");
    density_volume->add_option("--region", region_name, "region kind");
    density_volume->add_option("--M", M_str, "threshold M (rational)");
    density_volume->add_option("--r1", sig_r1, "real embeddings");
    density_volume->add_option("--r2", sig_r2, "complex pairs");
    density_volume->add_option("--method", method, "box (analytic) or mc (Monte Carlo)");
    std::string grid_str;
    density_series_cmd->add_option("--grid", grid_str, "comma-separated increasing N values");

    CLI11_PARSE(app, argc, argv);

    cfg.nu = parse_rational(nu_str);
    cfg.house_bound = parse_rational(house_str);
    {
        mpq_class mq = parse_rational(m_str);
        if (mq.get_den() != 1) throw InputError("m must be an integer");
        cfg.m = mq.get_num();
    }
    if (exp_box_val >= 0) cfg.exp_box = exp_box_val;
    cfg.validate();
    PrecPolicy pp = cfg.prec_policy();

    Emitter em{cfg.format};
    int exit_borderline = 0;

    auto need_spec = [&]() {
        if (spec_path.empty()) throw InputError("--spec is required for this command");
        return load_field_spec(spec_path, pp);
    };

    if (*field_check) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("field check", cfg, spec_path));
        ordered_json j;
        j["degree"] = ls.field.degree();
        j["r1"] = ls.field.r1();
        j["r2"] = ls.field.r2();
        j["unit_rank"] = ls.field.unit_rank();
        j["torsion_order"] = ls.basis.torsion_order();
        j["regulator"] = enclosure_json(ls.basis.regulator(cfg.precision));
        j["cm_field"] = cm_field_check(ls.field) == CmVerdict::CmWithTotallyRealSubfield;
        if (ls.basis.nonfundamental_index())
            j["nonfundamental_index_vs_reference"] = *ls.basis.nonfundamental_index();
        em.row(j);
        return 0;
    }
    if (*units_enum) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("units enum", cfg, spec_path));
        EnumerationResult er =
            enumerate_units(ls.basis, ls.field.generator(), cfg.house_bound, pp, cfg.exp_box);
        for (const auto& eu : er.units) {
            ordered_json j;
            j["eps"] = exponent_json(eu.e);
            j["coords"] = [&] {
                ordered_json a = ordered_json::array();
                for (const auto& c : eu.u.coords()) a.push_back(rational_json(c));
                return a;
            }();
            j["house_alpha_eps"] = enclosure_json(eu.house_alpha_u);
            em.row(j);
        }
        for (const auto& e : er.undecided) {
            ordered_json j;
            j["eps"] = exponent_json(e);
            j["undecided"] = true;
            em.row(j);
            exit_borderline = 3;
        }
        return exit_borderline;
    }
    if (*units_classify) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("units classify", cfg, spec_path));
        FamilyClassification fc =
            classify_family(ls.basis, ls.field.generator(), cfg.house_bound, cfg.nu, pp);
        for (const auto& rec : fc.records) em.row(classification_json(rec));
        ordered_json c;
        c["counts"] = {{"total", fc.counts.total},
                       {"E", fc.counts.E},
                       {"E_nu", fc.counts.E_nu},
                       {"tilde_E_nu", fc.counts.tilde_E_nu},
                       {"borderline", fc.counts.borderline}};
        em.doc(c);
        if (fc.counts.borderline || !fc.undecided_units.empty()) exit_borderline = 3;
        return exit_borderline;
    }
    if (*form_build) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("form build", cfg, spec_path));
        UnitExponent e{torsion_power, parse_exponents(unit_exp_str, ls.basis.rank())};
        FieldElement eps = unit_from_exponent(ls.basis, e);
        TwistedForm tf = twisted_form(ls.field.generator(), eps);
        ordered_json j;
        j["eps"] = exponent_json(e);
        j["delta"] = tf.delta;
        ordered_json coeffs = ordered_json::array();
        for (const auto& c : tf.form.coeffs) coeffs.push_back(integer_json(c));
        j["coeffs"] = coeffs;
        j["pretty"] = tf.form.to_string();
        em.row(j);
        return 0;
    }
    if (*thue_solve) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("thue solve", cfg, spec_path));
        UnitExponent e{torsion_power, parse_exponents(unit_exp_str, ls.basis.rank())};
        FieldElement eps = unit_from_exponent(ls.basis, e);
        TwistedForm tf = twisted_form(ls.field.generator(), eps);
        for (const auto& s : solve_box(tf.form, cfg.m, cfg.box, e)) em.row(solution_json(s));
        return 0;
    }
    if (*thue_family) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("thue family", cfg, spec_path));
        SetFilter f = set_name == "E" ? SetFilter::E
                      : set_name == "tildeEnu" ? SetFilter::TildeE_nu
                                               : SetFilter::E_nu;
        FamilySolveResult r = solve_family(ls.basis, ls.field.generator(), cfg.nu, cfg.m,
                                           cfg.house_bound, cfg.box, f, pp);
        for (const auto& s : r.solutions) em.row(solution_json(s));
        ExponentReport rep = empirical_exponent(r.solutions, ls.basis, ls.field.generator(),
                                                cfg.m < 2 ? mpz_class(2) : cfg.m, pp);
        ordered_json j;
        if (rep.kappa_emp) j["kappa_emp"] = enclosure_json(*rep.kappa_emp);
        j["solutions"] = (long)r.solutions.size();
        em.doc(j);
        if (r.classification.counts.borderline) exit_borderline = 3;
        return exit_borderline;
    }
    if (*trace_cmd) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("trace", cfg, spec_path));
        UnitExponent e{torsion_power, parse_exponents(unit_exp_str, ls.basis.rank())};
        SolutionRecord sol;
        sol.x = mpz_class(trace_x);
        sol.y = mpz_class(trace_y);
        sol.e = e;
        sol.m = cfg.m;
        FieldElement eps = unit_from_exponent(ls.basis, e);
        TwistedForm tf = twisted_form(ls.field.generator(), eps);
        sol.value = evaluate(tf.form, sol.x, sol.y);
        TraceParams params;
        params.lambda = parse_rational(lambda_str);
        params.mu = parse_rational(mu_str);
        SolutionTrace tr = trace(ls.basis, ls.field.generator(), sol, cfg.nu, cfg.m, pp, params);
        ordered_json j;
        j["solution"] = solution_json(tr.solution);
        j["A"] = tr.A;
        j["A_tilde"] = enclosure_json(tr.A_tilde);
        j["B"] = tr.B;
        j["B_tilde"] = enclosure_json(tr.B_tilde);
        ordered_json rho = ordered_json::array();
        for (const auto& c : tr.beta_dec->rho.coords()) rho.push_back(rational_json(c));
        j["rho"] = rho;
        j["rho_height"] = enclosure_json(tr.beta_dec->rho_height);
        j["b"] = exponent_json(tr.beta_dec->b);
        ordered_json pe;
        pe["sigma_a"] = tr.privileged.sigma_a;
        pe["sigma_b"] = tr.privileged.sigma_b;
        pe["tau_a"] = tr.privileged.tau_a;
        pe["tau_b"] = tr.privileged.tau_b;
        pe["Sigma_a"] = tr.privileged.Sigma_a;
        pe["Sigma_b"] = tr.privileged.Sigma_b;
        pe["T_a"] = tr.privileged.T_a;
        pe["T_b"] = tr.privileged.T_b;
        pe["tau_b_ne_sigma_b"] = tr.privileged.tau_b_ne_sigma_b;
        j["privileged"] = pe;
        j["small_regime"] = tri_json(tr.small_regime);
        j["regime_threshold"] = enclosure_json(tr.regime_threshold);
        ordered_json margins = ordered_json::array();
        for (const auto& mg : tr.margins) {
            ordered_json mj;
            mj["id"] = mg.id;
            mj["lhs"] = enclosure_json(mg.lhs);
            mj["rhs"] = enclosure_json(mg.rhs);
            mj["holds"] = tri_json(mg.holds);
            if (!mg.note.empty()) mj["note"] = mg.note;
            margins.push_back(mj);
        }
        j["margins"] = margins;
        ordered_json lfs = ordered_json::array();
        for (const auto& lf : tr.linear_forms) {
            ordered_json lj;
            lj["id"] = lf.id;
            lj["phis"] = lf.phis;
            lj["degenerate"] = lf.degenerate;
            if (!lf.degenerate) {
                lj["value"] = enclosure_json(lf.value);
                lj["witness"] = enclosure_json(lf.witness);
            }
            if (!lf.note.empty()) lj["note"] = lf.note;
            lfs.push_back(lj);
        }
        j["linear_forms"] = lfs;
        j["six_terms_contain_zero"] = tr.six_terms_contain_zero;
        j["six_term_max_width"] = tr.six_term_max_width;
        j["internal_inconsistencies"] = tr.internal_inconsistencies;
        em.doc(j);
        if (tr.internal_inconsistencies) return 4;
        for (const auto& mg : tr.margins)
            if (mg.holds == Tri::Unknown) exit_borderline = 3;
        return exit_borderline;
    }
    if (*density_count) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("density count", cfg, spec_path));
        auto kind = region_kind_from_name(region_name);
        if (!kind) throw InputError("unknown region kind: " + region_name);
        RegionSpec spec =
            RegionSpec::make(*kind, ls.field.r1(), ls.field.r2(), parse_rational(M_str), cfg.nu);
        RealInterval M = RealInterval::from_mpq(spec.M, cfg.precision);
        FieldElement alpha = ls.field.generator();
        const FieldElement* tr = translate_name == "one" ? nullptr : &alpha;
        long count = count_lattice_points(ls.basis, tr, spec, M, pp);
        ordered_json j;
        j["region"] = region_name;
        j["M"] = spec.M.get_str();
        j["translate"] = translate_name;
        j["count"] = count;
        em.row(j);
        return 0;
    }
    if (*density_volume) {
        em.doc(header_json("density volume", cfg, spec_path));
        auto kind = region_kind_from_name(region_name);
        if (!kind) throw InputError("unknown region kind: " + region_name);
        int r1 = sig_r1, r2 = sig_r2;
        if (r1 < 0 || r2 < 0) {
            LoadedSpec ls = need_spec();
            r1 = ls.field.r1();
            r2 = ls.field.r2();
        }
        RegionSpec spec = RegionSpec::make(*kind, r1, r2, parse_rational(M_str), cfg.nu);
        VolumeResult vr = method == "mc" ? region_volume_mc(spec, cfg.samples, cfg.seed)
                                         : region_volume_box(spec);
        ordered_json j;
        j["region"] = region_name;
        j["r1"] = r1;
        j["r2"] = r2;
        j["M"] = spec.M.get_str();
        j["nu"] = spec.nu.get_str();
        j["feasible"] = vr.feasible;
        if (!vr.reason.empty()) j["reason"] = vr.reason;
        if (vr.has_exact) j["volume_exact"] = vr.exact.get_str();
        if (vr.feasible && vr.has_exact && spec.kind != RegionKind::H_M) {
            j["box_a"] = vr.box_a.get_str();
            j["box_b"] = vr.box_b.get_str();
            j["box_c"] = vr.box_c.get_str();
        }
        if (vr.has_estimate) {
            j["estimate"] = vr.estimate;
            j["stderr"] = vr.stderr_est;
            j["samples"] = vr.samples;
            j["seed"] = vr.seed;
        }
        em.row(j);
        return 0;
    }
    if (*density_series_cmd) {
        LoadedSpec ls = need_spec();
        em.doc(header_json("density series", cfg, spec_path));
        std::vector<mpq_class> grid;
        std::stringstream ss(grid_str);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(parse_rational(item));
        if (grid.empty()) throw InputError("--grid is required");
        auto rows = density_series(ls.basis, ls.field.generator(), cfg.nu, grid, pp);
        for (const auto& row : rows) {
            ordered_json j;
            j["N"] = row.N.get_str();
            j["total"] = row.counts.total;
            j["E"] = row.counts.E;
            j["E_nu"] = row.counts.E_nu;
            j["tilde_E_nu"] = row.counts.tilde_E_nu;
            j["ratio_total"] = enclosure_json(row.ratio_total);
            j["ratio_E"] = enclosure_json(row.ratio_E);
            j["ratio_E_nu"] = enclosure_json(row.ratio_E_nu);
            j["ratio_tilde"] = enclosure_json(row.ratio_tilde);
            if (row.counts.borderline) j["borderline"] = row.counts.borderline;
            em.row(j);
            if (row.counts.borderline) exit_borderline = 3;
        }
        return exit_borderline;
    }
    throw InputError("no subcommand selected");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "{\"error\":\"input\",\"message\":" << ordered_json(e.what()).dump() << "}\n";
        return 2;
    } catch (const UndecidedError& e) {
        std::cerr << "{\"error\":\"undecided\",\"message\":" << ordered_json(e.what()).dump() << "}\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":" << ordered_json(e.what()).dump() << "}\n";
        return 4;
    }
}
