#pragma once

#include "polycontract/coefficients.hpp"
#include "polycontract/contraction.hpp"
#include "polycontract/metric_space.hpp"
#include "polycontract/self_map.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polycontract {

/// Problem documents are JSON with a versioned format header:
///
///   {
///     "format": "polycontract/1",
///     "kind": "banach" | "kannan" | "almost" | "polynomial" | "almost-polynomial",
///     "space": {"type": "finite", "points": [...], "dist": [[...]]}
///            | {"type": "interval", "lo": r, "hi": r, "grid": n},
///     "map":   {"type": "table", "images": {label: label, ...}}
///            | {"type": "piecewise", "branches": [{"lo": r, "hi": r,
///                 "include_lo": b, "include_hi": b, "expr": "..."}]},
///     "family": {"k": n, "a": [{"type": "const", "value": r}
///                            | {"type": "table", "values": [[...]]}
///                            | {"type": "expr", "source": "..."}]},
///     "certificate": {"lambda": r, "j": n, "A_j": r, "L": [r...], "ell": r}
///   }
///
/// Rationals r are JSON integers or strings ("3/4", "0.25"); JSON floats
/// are rejected so values stay exact. family and certificate are required
/// only by the kinds that use them.
struct ProblemDocument {
    enum class Kind { banach, kannan, almost, polynomial, almost_polynomial };

    struct FiniteSpaceData {
        std::vector<std::string> points;
        std::vector<std::vector<Rational>> dist;
    };
    struct IntervalSpaceData {
        Rational lo, hi;
        std::size_t grid = 2;
    };
    struct CertificateData {
        std::optional<Rational> lambda;
        std::optional<unsigned> j;
        std::optional<Rational> Aj;
        std::vector<Rational> L;
        std::optional<Rational> ell;
    };

    Kind kind = Kind::banach;
    std::variant<FiniteSpaceData, IntervalSpaceData> space_data;
    std::optional<std::map<std::string, std::string>> table_images;
    std::optional<std::vector<PiecewiseBranch>> branches;
    std::optional<CoefficientFamily> family;
    std::optional<CertificateData> certificate;
    std::string raw;

    bool is_finite() const { return std::holds_alternative<FiniteSpaceData>(space_data); }
    const FiniteSpaceData& finite_data() const { return std::get<FiniteSpaceData>(space_data); }
    const IntervalSpaceData& interval_data() const {
        return std::get<IntervalSpaceData>(space_data);
    }

    /// Constructs the typed space; throws InputError when the matrix is
    /// not a metric (run validate_metric first to report violations).
    FiniteMetricSpace finite_space() const;
    IntervalGridSpace interval_space() const;
    /// Resolves the label table against the space; checks totality.
    TableMap table_map(const FiniteMetricSpace& space) const;
    PiecewiseMap piecewise_map() const;

    /// Certificate assembly, checking the fields the kind requires.
    PolynomialCertificate polynomial_certificate() const;
    AlmostPolynomialCertificate almost_polynomial_certificate() const;
};

std::string to_string(ProblemDocument::Kind kind);

/// Parses and structurally validates a problem document. Throws
/// InputError (with a message naming the offending field) on anything
/// malformed.
ProblemDocument parse_document(std::string_view json_text);

/// FNV-1a 64-bit digest of the raw document bytes, as "fnv1a64:<hex>".
std::string input_digest(std::string_view raw);

}  // namespace polycontract
