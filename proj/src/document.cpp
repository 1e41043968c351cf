#include "polycontract/document.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <utility>

namespace polycontract {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw InputError(message); }

Rational rational_field(const json& value, const std::string& where) {
    if (value.is_number_integer()) {
        return Rational(static_cast<long long>(value.get<std::int64_t>()));
    }
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const InputError& e) {
            fail(where + ": " + e.what());
        }
    }
    if (value.is_number_float()) {
        fail(where + ": write non-integer rationals as strings (\"3/4\", \"0.25\") to keep them exact");
    }
    fail(where + ": expected a rational (integer or string)");
}

unsigned unsigned_field(const json& value, const std::string& where) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        fail(where + ": expected a non-negative integer");
    }
    return value.get<unsigned>();
}

const json& require(const json& object, const char* key, const std::string& where) {
    auto it = object.find(key);
    if (it == object.end()) fail(where + ": missing required field '" + key + "'");
    return *it;
}

std::vector<std::vector<Rational>> rational_matrix(const json& value, const std::string& where) {
    if (!value.is_array()) fail(where + ": expected an array of rows");
    std::vector<std::vector<Rational>> matrix;
    for (std::size_t r = 0; r < value.size(); ++r) {
        const json& row = value[r];
        if (!row.is_array()) fail(where + ": row " + std::to_string(r) + " is not an array");
        std::vector<Rational> out;
        out.reserve(row.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            out.push_back(rational_field(row[c], where + "[" + std::to_string(r) + "][" +
                                                     std::to_string(c) + "]"));
        }
        matrix.push_back(std::move(out));
    }
    return matrix;
}

ProblemDocument::Kind parse_kind(const std::string& text) {
    if (text == "banach") return ProblemDocument::Kind::banach;
    if (text == "kannan") return ProblemDocument::Kind::kannan;
    if (text == "almost") return ProblemDocument::Kind::almost;
    if (text == "polynomial") return ProblemDocument::Kind::polynomial;
    if (text == "almost-polynomial") return ProblemDocument::Kind::almost_polynomial;
    fail("kind: expected banach | kannan | almost | polynomial | almost-polynomial, got '" + text +
         "'");
}

Coefficient parse_coefficient(const json& value, const std::string& where) {
    if (!value.is_object()) fail(where + ": expected an object");
    const std::string type = require(value, "type", where).get<std::string>();
    if (type == "const") return Coefficient(rational_field(require(value, "value", where), where));
    if (type == "table") return Coefficient(PairTable{rational_matrix(require(value, "values", where), where)});
    if (type == "expr") {
        const std::string source = require(value, "source", where).get<std::string>();
        try {
            return Coefficient(parse_expression(source));
        } catch (const ParseError& e) {
            fail(where + ": " + e.what());
        }
    }
    fail(where + ": expected type const | table | expr");
}

}  // namespace

std::string to_string(ProblemDocument::Kind kind) {
    switch (kind) {
        case ProblemDocument::Kind::banach: return "banach";
        case ProblemDocument::Kind::kannan: return "kannan";
        case ProblemDocument::Kind::almost: return "almost";
        case ProblemDocument::Kind::polynomial: return "polynomial";
        case ProblemDocument::Kind::almost_polynomial: return "almost-polynomial";
    }
    return "?";
}

FiniteMetricSpace ProblemDocument::finite_space() const {
    const auto& data = finite_data();
    return FiniteMetricSpace(data.points, data.dist);
}

IntervalGridSpace ProblemDocument::interval_space() const {
    const auto& data = interval_data();
    return IntervalGridSpace(data.lo, data.hi, data.grid);
}

TableMap ProblemDocument::table_map(const FiniteMetricSpace& space) const {
    if (!table_images) fail("document has no table map");
    std::vector<std::size_t> image(space.size(), space.size());
    std::size_t assigned = 0;
    for (const auto& [from, to] : *table_images) {
        auto p = space.index_of(from);
        if (!p) fail("map: unknown point label '" + from + "'");
        auto q = space.index_of(to);
        if (!q) fail("map: image '" + to + "' is not a point of the space");
        image[*p] = *q;
        ++assigned;
    }
    if (assigned != space.size()) fail("map: every point needs exactly one image");
    return TableMap(std::move(image));
}

PiecewiseMap ProblemDocument::piecewise_map() const {
    if (!branches) fail("document has no piecewise map");
    return PiecewiseMap(*branches);
}

PolynomialCertificate ProblemDocument::polynomial_certificate() const {
    if (!family) fail("kind polynomial needs a coefficient family");
    if (!certificate || !certificate->lambda) fail("kind polynomial needs certificate.lambda");
    if (!certificate->j) fail("kind polynomial needs certificate.j");
    if (!certificate->Aj) fail("kind polynomial needs certificate.A_j");
    PolynomialCertificate cert;
    cert.lambda = *certificate->lambda;
    cert.family = *family;
    cert.witness_j = *certificate->j;
    cert.witness_Aj = *certificate->Aj;
    return cert;
}

AlmostPolynomialCertificate ProblemDocument::almost_polynomial_certificate() const {
    if (!family) fail("kind almost-polynomial needs a coefficient family");
    if (!certificate || !certificate->lambda) fail("kind almost-polynomial needs certificate.lambda");
    if (!certificate->j) fail("kind almost-polynomial needs certificate.j");
    if (!certificate->Aj) fail("kind almost-polynomial needs certificate.A_j");
    if (certificate->L.empty()) fail("kind almost-polynomial needs certificate.L");
    AlmostPolynomialCertificate cert;
    cert.lambda = *certificate->lambda;
    cert.family = *family;
    cert.witness_j = *certificate->j;
    cert.witness_Aj = *certificate->Aj;
    cert.L = certificate->L;
    return cert;
}

ProblemDocument parse_document(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("document root must be a JSON object");

    const std::string format = require(doc, "format", "document").get<std::string>();
    if (format != "polycontract/1") {
        fail("unsupported document format '" + format + "' (expected polycontract/1)");
    }

    ProblemDocument out;
    out.raw = std::string(json_text);
    out.kind = parse_kind(require(doc, "kind", "document").get<std::string>());

    const json& space = require(doc, "space", "document");
    const std::string space_type = require(space, "type", "space").get<std::string>();
    if (space_type == "finite") {
        ProblemDocument::FiniteSpaceData data;
        for (const json& label : require(space, "points", "space")) {
            data.points.push_back(label.get<std::string>());
        }
        data.dist = rational_matrix(require(space, "dist", "space"), "space.dist");
        out.space_data = std::move(data);
    } else if (space_type == "interval") {
        ProblemDocument::IntervalSpaceData data;
        data.lo = rational_field(require(space, "lo", "space"), "space.lo");
        data.hi = rational_field(require(space, "hi", "space"), "space.hi");
        data.grid = unsigned_field(require(space, "grid", "space"), "space.grid");
        out.space_data = std::move(data);
    } else {
        fail("space.type: expected finite | interval");
    }

    const json& map = require(doc, "map", "document");
    const std::string map_type = require(map, "type", "map").get<std::string>();
    if (map_type == "table") {
        if (!out.is_finite()) fail("table maps need a finite space");
        std::map<std::string, std::string> images;
        for (const auto& [from, to] : require(map, "images", "map").items()) {
            if (!to.is_string()) fail("map.images: values must be point labels");
            images[from] = to.get<std::string>();
        }
        out.table_images = std::move(images);
    } else if (map_type == "piecewise") {
        if (out.is_finite()) fail("piecewise maps need an interval space");
        std::vector<PiecewiseBranch> branches;
        for (const json& branch : require(map, "branches", "map")) {
            PiecewiseBranch b{rational_field(require(branch, "lo", "map.branches"), "branch.lo"),
                              rational_field(require(branch, "hi", "map.branches"), "branch.hi"),
                              true,
                              true,
                              Expression()};
            if (auto it = branch.find("include_lo"); it != branch.end()) {
                b.closed_lo = it->get<bool>();
            }
            if (auto it = branch.find("include_hi"); it != branch.end()) {
                b.closed_hi = it->get<bool>();
            }
            const std::string source = require(branch, "expr", "map.branches").get<std::string>();
            try {
                b.expr = parse_expression(source);
            } catch (const ParseError& e) {
                fail(std::string("map.branches.expr: ") + e.what());
            }
            branches.push_back(std::move(b));
        }
        out.branches = std::move(branches);
    } else {
        fail("map.type: expected table | piecewise");
    }

    if (auto it = doc.find("family"); it != doc.end()) {
        CoefficientFamily family;
        family.k = unsigned_field(require(*it, "k", "family"), "family.k");
        const json& a = require(*it, "a", "family");
        if (!a.is_array()) fail("family.a: expected an array of coefficients");
        for (std::size_t i = 0; i < a.size(); ++i) {
            family.a.push_back(parse_coefficient(a[i], "family.a[" + std::to_string(i) + "]"));
        }
        out.family = std::move(family);
    }

    if (auto it = doc.find("certificate"); it != doc.end()) {
        ProblemDocument::CertificateData cert;
        if (auto f = it->find("lambda"); f != it->end()) {
            cert.lambda = rational_field(*f, "certificate.lambda");
        }
        if (auto f = it->find("j"); f != it->end()) cert.j = unsigned_field(*f, "certificate.j");
        if (auto f = it->find("A_j"); f != it->end()) {
            cert.Aj = rational_field(*f, "certificate.A_j");
        }
        if (auto f = it->find("L"); f != it->end()) {
            if (!f->is_array()) fail("certificate.L: expected an array of rationals");
            for (std::size_t i = 0; i < f->size(); ++i) {
                cert.L.push_back(rational_field((*f)[i], "certificate.L[" + std::to_string(i) + "]"));
            }
        }
        if (auto f = it->find("ell"); f != it->end()) cert.ell = rational_field(*f, "certificate.ell");
        out.certificate = std::move(cert);
    }

    return out;
}

std::string input_digest(std::string_view raw) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char byte : raw) {
        hash ^= byte;
        hash *= 0x100000001b3ull;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace polycontract
