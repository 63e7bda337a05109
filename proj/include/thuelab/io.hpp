#pragma once

#include <optional>
#include <string>

#include "thuelab/units.hpp"

// nlohmann/json, vendored as a plain header
#include "json.hpp"

namespace thuelab {

using ordered_json = nlohmann::ordered_json;

// Parsed field specification file: polynomial, fundamental units, torsion.
struct LoadedSpec {
    NumberField field;
    UnitGroupBasis basis;
    std::optional<mpq_class> reference_regulator;
};

// Accepts "p/q", integers, and decimal strings ("1.25" -> 5/4).
mpq_class parse_rational(const std::string& s);

LoadedSpec parse_field_spec(const ordered_json& j, const PrecPolicy& pp);
LoadedSpec load_field_spec(const std::string& path, const PrecPolicy& pp);

struct RunConfig {
    long precision = 128;
    long max_precision = 4096;
    mpq_class nu{1, 2};
    mpz_class m = 1;
    mpq_class house_bound = 10;
    long box = 100;
    std::optional<long> exp_box;
    unsigned long samples = 1000000;
    std::uint64_t seed = 1;
    std::string format = "jsonl";

    PrecPolicy prec_policy() const { return PrecPolicy(precision, max_precision); }
    void validate() const;
    ordered_json echo() const;
};

// Numeric annotations: exact integers/rationals vs. enclosures, never a bare
// binary float.
ordered_json enclosure_json(const RealInterval& x);
ordered_json rational_json(const mpq_class& q);
ordered_json integer_json(const mpz_class& z);
ordered_json exponent_json(const UnitExponent& e);

} // namespace thuelab
