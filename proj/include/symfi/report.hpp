#ifndef SYMFI_REPORT_HPP
#define SYMFI_REPORT_HPP

#include "symfi/driver.hpp"

#include <optional>
#include <string>

namespace symfi {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char *kToolVersion = "0.1.0";

// Machine-readable result record. Coefficients are serialized as exact "p/q"
// strings; monomials of F are listed in graded-lex descending order as
// [i, j, "p/q"] triples (x^i y^j).
struct Report {
    std::string status; // "equation" | "none" | "unknown"
    std::optional<IntegralClass> cls;
    std::optional<CanonicalEquation> equation;
    Diagnostics diag;
    std::optional<std::uint64_t> seed;
    bool deterministic = false;

    static Report from_result(const DriverResult &res, std::optional<std::uint64_t> seed,
                              bool deterministic);
    std::string to_json() const;
    std::string to_text() const;
};

// round-trip support for the JSON report (mathematical content only)
Report report_from_json(const std::string &json_text);
bool reports_equal(const Report &a, const Report &b);

} // namespace symfi

#endif
