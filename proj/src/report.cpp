#include "polycontract/report.hpp"

#include "polycontract/version.hpp"

namespace polycontract::report {

namespace {

std::string str(const Rational& r) { return to_string(r); }

}  // namespace

Json envelope(std::string_view command, std::string_view raw_document) {
    Json j;
    j["tool"] = std::string(kToolName);
    j["version"] = std::string(kToolVersion);
    j["command"] = std::string(command);
    j["input_digest"] = input_digest(raw_document);
    return j;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    if (v.worst_pair) j["worst_pair"] = {v.worst_pair->first, v.worst_pair->second};
    if (v.status != Verdict::Status::pass || v.worst_pair) {
        j["lhs"] = str(v.lhs);
        j["rhs"] = str(v.rhs);
    }
    j["min_feasible_lambda"] = v.min_feasible_lambda ? Json(str(*v.min_feasible_lambda)) : Json(nullptr);
    if (v.grid_verified) j["grid_verified"] = true;
    return j;
}

Json lipschitz_json(const LipschitzReport& r) {
    Json j;
    j["ratio"] = str(r.ratio);
    j["contraction"] = r.ratio < 1;
    if (r.grid_verified) j["grid_verified"] = true;
    return j;
}

Json kannan_json(const KannanReport& r) {
    Json j;
    if (r.ratio) {
        j["ratio"] = str(*r.ratio);
        j["kannan"] = *r.ratio < Rational(1, 2);
    } else {
        j["ratio"] = nullptr;
        j["infeasible"] = true;
        j["kannan"] = false;
    }
    if (r.grid_verified) j["grid_verified"] = true;
    return j;
}

Json violation_json(const MetricViolation& v, const std::vector<std::string>& labels) {
    Json j;
    j["kind"] = to_string(v.kind);
    Json witness = Json::array();
    for (std::size_t p : v.witness) witness.push_back(labels.at(p));
    j["witness"] = witness;
    j["left"] = str(v.left);
    j["right"] = str(v.right);
    return j;
}

Json pair_rows_json(const std::vector<PairRow>& rows, const LabelFn& label) {
    Json arr = Json::array();
    for (const PairRow& row : rows) {
        Json j;
        j["pair"] = {label(row.p), label(row.q)};
        j["lhs"] = str(row.lhs);
        j["rhs"] = str(row.rhs);
        arr.push_back(std::move(j));
    }
    return arr;
}

Json lower_bound_json(const LowerBoundReport& r, const LabelFn& label) {
    Json j;
    j["min_value"] = str(r.min_value);
    j["positive"] = r.positive;
    j["at_pair"] = {label(r.where.first), label(r.where.second)};
    if (r.grid_evidence) j["grid_evidence"] = true;
    return j;
}

Json continuity_json(const ContinuityReport& r) {
    Json j;
    j["a0_identically_zero"] = r.a0_identically_zero;
    Json bounds = Json::array();
    for (const Rational& b : r.upper_bounds) bounds.push_back(str(b));
    j["upper_bounds"] = bounds;
    j["best_j"] = r.best_j;
    j["best_Aj"] = str(r.best_Aj);
    j["continuity_guaranteed"] = r.guaranteed;
    if (r.grid_evidence) j["grid_evidence"] = true;
    return j;
}

Json trace_json(const PicardTrace& t) {
    Json j;
    j["iterates"] = t.iterates;
    Json steps = Json::array();
    for (const Rational& d : t.step_dist) steps.push_back(str(d));
    j["step_dist"] = steps;
    j["status"] = to_string(t.status);
    j["limit"] = t.limit ? Json(*t.limit) : Json(nullptr);
    if (!t.dist_to_limit.empty()) {
        Json dists = Json::array();
        for (const Rational& d : t.dist_to_limit) dists.push_back(str(d));
        j["dist_to_limit"] = dists;
    }
    if (t.bound_params) {
        j["bound_params"] = {{"j", t.bound_params->j},
                             {"lambda", str(t.bound_params->lambda)},
                             {"sigma", str(t.bound_params->sigma)}};
    }
    return j;
}

Json bound_value_json(const BoundValue& b) {
    if (b.exact) return Json(str(b.value));
    Json j;
    j["lower"] = str(b.lower);
    j["upper"] = str(b.upper);
    return j;
}

Json bound_check_json(const BoundCheckReport& r) {
    Json j;
    j["hard"] = r.hard;
    j["all_within"] = r.all_within;
    Json rows = Json::array();
    for (const BoundCheckRow& row : r.rows) {
        Json entry;
        entry["n"] = row.n;
        entry["observed"] = str(row.observed);
        entry["bound"] = bound_value_json(row.bound);
        entry["outcome"] = row.outcome == BoundCheckRow::Outcome::within      ? "within"
                           : row.outcome == BoundCheckRow::Outcome::violated ? "violated"
                                                                             : "indeterminate";
        rows.push_back(std::move(entry));
    }
    j["rows"] = rows;
    return j;
}

Json family_json(const CoefficientFamily& f) {
    Json j;
    j["k"] = f.k;
    Json arr = Json::array();
    for (const Coefficient& c : f.a) {
        Json entry;
        if (c.is_constant()) {
            entry["type"] = "const";
            entry["value"] = str(c.constant());
        } else if (c.is_table()) {
            entry["type"] = "table";
            Json rows = Json::array();
            for (const auto& row : c.table().values) {
                Json r = Json::array();
                for (const Rational& v : row) r.push_back(str(v));
                rows.push_back(std::move(r));
            }
            entry["values"] = rows;
        } else {
            entry["type"] = "expr";
            entry["source"] = c.expression().to_string();
        }
        arr.push_back(std::move(entry));
    }
    j["a"] = arr;
    return j;
}

Json polynomial_certificate_json(const PolynomialCertificate& c) {
    Json j;
    j["lambda"] = str(c.lambda);
    j["j"] = c.witness_j;
    j["A_j"] = str(c.witness_Aj);
    j["family"] = family_json(c.family);
    return j;
}

Json almost_certificate_json(const AlmostPolynomialCertificate& c) {
    Json j;
    j["lambda"] = str(c.lambda);
    j["j"] = c.witness_j;
    j["A_j"] = str(c.witness_Aj);
    Json l = Json::array();
    for (const Rational& v : c.L) l.push_back(str(v));
    j["L"] = l;
    j["family"] = family_json(c.family);
    return j;
}

Json synthesis_json(const SynthesisResult& r) {
    Json j;
    j["status"] = r.status == SynthesisResult::Status::found ? "found" : "infeasible-below-one";
    j["lambda"] = str(r.lambda);
    if (r.polynomial) j["certificate"] = polynomial_certificate_json(*r.polynomial);
    if (r.almost) j["certificate"] = almost_certificate_json(*r.almost);
    Json probes = Json::array();
    for (const ProbeRecord& p : r.probes) {
        probes.push_back(Json{{"lambda", str(p.lambda)}, {"feasible", p.feasible}});
    }
    j["probes"] = probes;
    return j;
}

Json orbit_json(const OrbitDecomposition& od, const LabelFn& label) {
    Json j;
    j["start"] = label(od.start);
    Json tail = Json::array();
    for (std::size_t p : od.tail) tail.push_back(label(p));
    j["tail"] = tail;
    Json cycle = Json::array();
    for (std::size_t p : od.cycle) cycle.push_back(label(p));
    j["cycle"] = cycle;
    j["cycle_length"] = od.cycle_length();
    return j;
}

}  // namespace polycontract::report
