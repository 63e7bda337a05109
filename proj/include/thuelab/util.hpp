#pragma once

#include <stdexcept>
#include <string>

namespace thuelab {

// Three-valued verdict for rigorous comparisons on enclosures.
enum class Tri { False, True, Unknown };

inline const char* tri_name(Tri t) {
    switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
    }
}

// Raised when a predicate cannot be decided at the configured precision cap.
class UndecidedError : public std::runtime_error {
public:
    explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user input (bad polynomial, bad unit data, bad config).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency violation; indicates a bug, never bad input.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by interval ops whose operand domain is violated (log of a range
// touching 0, division by a range containing 0).  Escalation loops catch it
// and retry at higher precision.
class IntervalDomainError : public std::runtime_error {
public:
    explicit IntervalDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Working/maximum precision in bits for adaptive predicates.
struct PrecPolicy {
    long start = 128;
    long max = 4096;

    PrecPolicy() = default;
    PrecPolicy(long s, long m) : start(s), max(m) {}
};

// Runs f(prec) with doubling precision until it returns a value or the cap
// is reached.  f returns std::optional<T>; domain errors are treated as
// "not yet resolved".
template <class F>
auto resolve_with_precision(const PrecPolicy& pp, F&& f, const char* what = "predicate") {
    long p = pp.start;
    for (;;) {
        try {
            if (auto r = f(p)) return *r;
        } catch (const IntervalDomainError&) {
            // retry at higher precision
        }
        if (p >= pp.max) throw UndecidedError(std::string(what) + ": undecided at max precision");
        p = std::min(p * 2, pp.max);
    }
}

} // namespace thuelab
