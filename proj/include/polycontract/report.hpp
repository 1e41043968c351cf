#pragma once

#include "polycontract/cert_search.hpp"
#include "polycontract/contraction.hpp"
#include "polycontract/document.hpp"
#include "polycontract/picard.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <string_view>

namespace polycontract::report {

/// Reports use insertion-ordered JSON so that identical inputs always
/// produce byte-identical output.
using Json = nlohmann::ordered_json;

using LabelFn = std::function<std::string(std::size_t)>;

/// Common header: tool name, version, input digest, command.
Json envelope(std::string_view command, std::string_view raw_document);

Json verdict_json(const Verdict& v);
Json lipschitz_json(const LipschitzReport& r);
Json kannan_json(const KannanReport& r);
Json violation_json(const MetricViolation& v, const std::vector<std::string>& labels);
Json pair_rows_json(const std::vector<PairRow>& rows, const LabelFn& label);
Json lower_bound_json(const LowerBoundReport& r, const LabelFn& label);
Json continuity_json(const ContinuityReport& r);
Json trace_json(const PicardTrace& t);
Json bound_value_json(const BoundValue& b);
Json bound_check_json(const BoundCheckReport& r);
Json family_json(const CoefficientFamily& f);
Json polynomial_certificate_json(const PolynomialCertificate& c);
Json almost_certificate_json(const AlmostPolynomialCertificate& c);
Json synthesis_json(const SynthesisResult& r);
Json orbit_json(const OrbitDecomposition& od, const LabelFn& label);

}  // namespace polycontract::report
