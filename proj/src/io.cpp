#include "thuelab/io.hpp"

#include <fstream>

namespace thuelab {

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    std::string t = s;
    if (t.front() == '+') t = t.substr(1);
    size_t slash = t.find('/');
    if (slash != std::string::npos) {
        mpq_class q;
        if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
            throw InputError("bad rational literal: " + s);
        q.canonicalize();
        if (q.get_den() == 0) throw InputError("zero denominator: " + s);
        return q;
    }
    size_t dot = t.find('.');
    if (dot != std::string::npos) {
        std::string intpart = t.substr(0, dot);
        std::string frac = t.substr(dot + 1);
        for (char c : frac)
            if (!isdigit((unsigned char)c)) throw InputError("bad decimal literal: " + s);
        bool neg = !intpart.empty() && intpart[0] == '-';
        if (neg) intpart = intpart.substr(1);
        if (intpart.empty()) intpart = "0";
        mpz_class num(intpart + frac);
        mpz_class den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        mpq_class q(num, den);
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    }
    try {
        mpz_class z(t);
        return mpq_class(z);
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal: " + s);
    }
}

namespace {

mpq_class json_to_rational(const ordered_json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return mpq_class((long)v.get<long long>());
    throw InputError("expected integer or rational string, got: " + v.dump());
}

mpz_class json_to_integer(const ordered_json& v) {
    if (v.is_string()) {
        mpq_class q = parse_rational(v.get<std::string>());
        if (q.get_den() != 1) throw InputError("expected an integer, got " + v.dump());
        return q.get_num();
    }
    if (v.is_number_integer()) return mpz_class((long)v.get<long long>());
    throw InputError("expected integer, got: " + v.dump());
}

} // namespace

LoadedSpec parse_field_spec(const ordered_json& j, const PrecPolicy& pp) {
    if (!j.is_object()) throw InputError("field spec must be a JSON object");
    if (!j.contains("poly")) throw InputError("field spec missing 'poly'");
    std::vector<mpz_class> coeffs;
    for (const auto& c : j.at("poly")) coeffs.push_back(json_to_integer(c));
    NumberField K = NumberField::load(coeffs, pp);
    int d = K.degree();

    auto coords_of = [&](const ordered_json& arr) {
        if (!arr.is_array() || (int)arr.size() != d)
            throw InputError("coordinate vector must have length " + std::to_string(d));
        std::vector<mpq_class> c;
        for (const auto& v : arr) c.push_back(json_to_rational(v));
        return c;
    };

    if (!j.contains("units")) throw InputError("field spec missing 'units'");
    std::vector<FieldElement> units;
    for (const auto& u : j.at("units")) units.push_back(K.element(coords_of(u)));

    int w = 2;
    if (j.contains("torsion_order")) w = (int)json_to_integer(j.at("torsion_order")).get_si();
    FieldElement tgen = K.from_rational(-1);
    if (j.contains("torsion_gen")) tgen = K.element(coords_of(j.at("torsion_gen")));

    std::optional<mpq_class> ref;
    if (j.contains("reference_regulator"))
        ref = json_to_rational(j.at("reference_regulator"));

    UnitGroupBasis basis = validate_basis(K, units, w, tgen, ref, pp);
    return LoadedSpec{std::move(K), std::move(basis), std::move(ref)};
}

LoadedSpec load_field_spec(const std::string& path, const PrecPolicy& pp) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open field spec: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("field spec is not valid JSON: " + std::string(e.what()));
    }
    return parse_field_spec(j, pp);
}

void RunConfig::validate() const {
    if (precision < 32) throw InputError("precision must be >= 32 bits");
    if (max_precision < precision) throw InputError("max precision below working precision");
    if (!(nu > 0 && nu < 1)) throw InputError("nu must satisfy 0 < nu < 1");
    if (m < 0) throw InputError("m must be nonnegative");
    if (!(house_bound > 0)) throw InputError("house bound must be positive");
    if (box < 1) throw InputError("coordinate box must be >= 1");
    if (format != "jsonl" && format != "csv") throw InputError("format must be jsonl or csv");
}

ordered_json RunConfig::echo() const {
    ordered_json c;
    c["precision_bits"] = precision;
    c["max_precision_bits"] = max_precision;
    c["nu"] = nu.get_str();
    c["m"] = m.get_str();
    c["house_bound"] = house_bound.get_str();
    c["box"] = box;
    if (exp_box) c["exp_box"] = *exp_box;
    c["samples"] = samples;
    c["seed"] = seed;
    c["format"] = format;
    return c;
}

ordered_json enclosure_json(const RealInterval& x) {
    auto [mid, rad] = x.mid_rad_strings();
    ordered_json j;
    j["mid"] = mid;
    j["rad"] = rad;
    return j;
}

ordered_json rational_json(const mpq_class& q) {
    if (q.get_den() == 1 && mpz_fits_slong_p(q.get_num().get_mpz_t()))
        return ordered_json(q.get_num().get_si());
    return ordered_json(q.get_str());
}

ordered_json integer_json(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) return ordered_json(z.get_si());
    return ordered_json(z.get_str());
}

ordered_json exponent_json(const UnitExponent& e) {
    ordered_json j;
    j["torsion_power"] = e.torsion_power;
    j["exponents"] = e.exps;
    return j;
}

} // namespace thuelab
