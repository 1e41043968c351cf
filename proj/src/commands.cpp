#include "polycontract/commands.hpp"

#include "polycontract/picard.hpp"
#include "polycontract/version.hpp"

#include <sstream>
#include <utility>

namespace polycontract {

namespace {

using report::Json;

constexpr std::size_t kPairTableLimit = 16;  // collect per-pair rows up to this point count

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void line(std::string& out, std::string_view text) {
    out += text;
    out += '\n';
}

void kv(std::string& out, std::string_view key, std::string_view value) {
    out += "  ";
    out += key;
    out += ": ";
    out += value;
    out += '\n';
}

std::string pair_str(const std::pair<std::string, std::string>& p) {
    return "(" + p.first + ", " + p.second + ")";
}

std::string verdict_human(const Verdict& v) {
    std::string out;
    kv(out, "status", to_string(v.status));
    if (v.worst_pair) {
        kv(out, "worst pair", pair_str(*v.worst_pair));
        kv(out, "lhs", to_string(v.lhs));
        kv(out, "rhs", to_string(v.rhs));
    }
    kv(out, "min feasible lambda",
       v.min_feasible_lambda ? to_string(*v.min_feasible_lambda) : "none");
    if (v.grid_verified) kv(out, "note", "grid-verified (evidence on the grid, not the continuum)");
    return out;
}

struct LoadedFinite {
    FiniteMetricSpace space;
    TableMap map;
};

LoadedFinite load_finite(const ProblemDocument& doc) {
    FiniteMetricSpace space = doc.finite_space();
    TableMap map = doc.table_map(space);
    return {std::move(space), std::move(map)};
}

struct LoadedInterval {
    IntervalGridSpace space;
    PiecewiseMap map;
};

LoadedInterval load_interval(const ProblemDocument& doc) {
    IntervalGridSpace space = doc.interval_space();
    PiecewiseMap map = doc.piecewise_map();
    validate_piecewise(space, map);
    return {std::move(space), std::move(map)};
}

report::LabelFn finite_labels(const FiniteMetricSpace& space) {
    return [labels = space.labels()](std::size_t p) { return labels.at(p); };
}

report::LabelFn grid_labels(const IntervalGridSpace& space) {
    return [pts = space.points()](std::size_t p) { return to_string(pts.at(p)); };
}

void append_pair_table(std::string& human, const std::vector<PairRow>& rows,
                       const report::LabelFn& label) {
    if (rows.empty()) return;
    line(human, "  pair values (lhs | rhs):");
    for (const PairRow& row : rows) {
        human += "    (" + label(row.p) + ", " + label(row.q) + "): " + to_string(row.lhs) +
                 " | " + to_string(row.rhs) + "\n";
    }
}

// Checks the certificate's claimed uniform lower bound a_j >= A_j.
template <class Space>
Json witness_bound_json(const Space& space, const CoefficientFamily& family, unsigned j,
                        const Rational& claimed, const report::LabelFn& label, bool& ok) {
    LowerBoundReport lb = check_lower_bound_condition(space, family, j);
    ok = lb.min_value >= claimed && lb.positive;
    Json out = report::lower_bound_json(lb, label);
    out["claimed_Aj"] = to_string(claimed);
    out["holds"] = ok;
    return out;
}

}  // namespace

CommandResult cmd_validate(const ProblemDocument& doc) {
    CommandResult result;
    result.machine = report::envelope("validate", doc.raw);
    result.machine["kind"] = to_string(doc.kind);
    std::string& human = result.human;
    line(human, "validate");

    if (doc.is_finite()) {
        auto violation = validate_metric(doc.finite_data().dist);
        if (violation) {
            result.machine["metric"] = {
                {"valid", false},
                {"violation", report::violation_json(*violation, doc.finite_data().points)}};
            result.exit_code = 1;
            kv(human, "metric", "INVALID (" + to_string(violation->kind) + ")");
            std::string witness;
            for (std::size_t p : violation->witness) {
                if (!witness.empty()) witness += ", ";
                witness += doc.finite_data().points.at(p);
            }
            kv(human, "witness", "(" + witness + ")");
            kv(human, "violated comparison",
               to_string(violation->left) + " > " + to_string(violation->right));
            return result;
        }
        result.machine["metric"] = {{"valid", true}};
        kv(human, "metric", "valid");
    }

    // Remaining document semantics: spaces, maps, families, certificates.
    try {
        if (doc.is_finite()) {
            LoadedFinite loaded = load_finite(doc);
            switch (doc.kind) {
                case ProblemDocument::Kind::polynomial:
                    doc.polynomial_certificate().validate(&loaded.space);
                    break;
                case ProblemDocument::Kind::almost_polynomial:
                    doc.almost_polynomial_certificate().validate(&loaded.space);
                    break;
                case ProblemDocument::Kind::almost:
                    if (!doc.certificate || !doc.certificate->lambda || !doc.certificate->ell) {
                        throw InputError("kind almost needs certificate.lambda and certificate.ell");
                    }
                    break;
                default: break;
            }
        } else {
            LoadedInterval loaded = load_interval(doc);
            switch (doc.kind) {
                case ProblemDocument::Kind::polynomial:
                    doc.polynomial_certificate().validate(nullptr);
                    doc.polynomial_certificate().family.validate_for_grid();
                    break;
                case ProblemDocument::Kind::almost_polynomial:
                    doc.almost_polynomial_certificate().validate(nullptr);
                    doc.almost_polynomial_certificate().family.validate_for_grid();
                    break;
                case ProblemDocument::Kind::almost:
                    if (!doc.certificate || !doc.certificate->lambda || !doc.certificate->ell) {
                        throw InputError("kind almost needs certificate.lambda and certificate.ell");
                    }
                    break;
                default: break;
            }
        }
    } catch (const InputError& e) {
        result.machine["well_formed"] = false;
        result.machine["reason"] = e.what();
        result.exit_code = 1;
        kv(human, "well-formed", std::string("NO: ") + e.what());
        return result;
    }

    result.machine["well_formed"] = true;
    kv(human, "well-formed", "yes");
    kv(human, "result", "valid");
    return result;
}

CommandResult cmd_verify(const ProblemDocument& doc) {
    CommandResult result;
    result.machine = report::envelope("verify", doc.raw);
    result.machine["kind"] = to_string(doc.kind);
    std::string& human = result.human;
    line(human, "verify (" + to_string(doc.kind) + ")");

    switch (doc.kind) {
        case ProblemDocument::Kind::banach: {
            LipschitzReport r = doc.is_finite() ? [&] {
                LoadedFinite loaded = load_finite(doc);
                return verify_banach(loaded.space, loaded.map);
            }() : [&] {
                LoadedInterval loaded = load_interval(doc);
                return verify_banach(loaded.space, loaded.map);
            }();
            result.machine["banach"] = report::lipschitz_json(r);
            result.exit_code = r.ratio < 1 ? 0 : 1;
            kv(human, "lipschitz ratio", to_string(r.ratio));
            kv(human, "contraction", r.ratio < 1 ? "yes" : "no");
            break;
        }
        case ProblemDocument::Kind::kannan: {
            KannanReport r = doc.is_finite() ? [&] {
                LoadedFinite loaded = load_finite(doc);
                return verify_kannan(loaded.space, loaded.map);
            }() : [&] {
                LoadedInterval loaded = load_interval(doc);
                return verify_kannan(loaded.space, loaded.map);
            }();
            result.machine["kannan"] = report::kannan_json(r);
            const bool holds = r.ratio && *r.ratio < Rational(1, 2);
            result.exit_code = holds ? 0 : 1;
            kv(human, "minimal lambda", r.ratio ? to_string(*r.ratio) : "infeasible");
            kv(human, "kannan (needs < 1/2)", holds ? "yes" : "no");
            break;
        }
        case ProblemDocument::Kind::almost: {
            if (!doc.certificate || !doc.certificate->lambda || !doc.certificate->ell) {
                throw InputError("kind almost needs certificate.lambda and certificate.ell");
            }
            const Rational& lambda = *doc.certificate->lambda;
            const Rational& ell = *doc.certificate->ell;
            Verdict v = doc.is_finite() ? [&] {
                LoadedFinite loaded = load_finite(doc);
                return verify_almost_contraction(loaded.space, loaded.map, lambda, ell);
            }() : [&] {
                LoadedInterval loaded = load_interval(doc);
                return verify_almost_contraction(loaded.space, loaded.map, lambda, ell);
            }();
            result.machine["lambda"] = to_string(lambda);
            result.machine["ell"] = to_string(ell);
            result.machine["verdict"] = report::verdict_json(v);
            result.exit_code = v.status == Verdict::Status::pass ? 0 : 1;
            human += verdict_human(v);
            break;
        }
        case ProblemDocument::Kind::polynomial: {
            PolynomialCertificate cert = doc.polynomial_certificate();
            bool witness_ok = false;
            Verdict verdict;
            if (doc.is_finite()) {
                LoadedFinite loaded = load_finite(doc);
                ScanOptions opts;
                opts.collect_pairs = loaded.space.size() <= kPairTableLimit;
                VerifyResult vr = verify_polynomial(loaded.space, loaded.map, cert, opts);
                verdict = vr.verdict;
                auto label = finite_labels(loaded.space);
                if (opts.collect_pairs) {
                    result.machine["pairs"] = report::pair_rows_json(vr.pairs, label);
                }
                result.machine["witness_bound"] = witness_bound_json(
                    loaded.space, cert.family, cert.witness_j, cert.witness_Aj, label, witness_ok);
                append_pair_table(human, vr.pairs, label);
            } else {
                LoadedInterval loaded = load_interval(doc);
                VerifyResult vr = verify_polynomial(loaded.space, loaded.map, cert);
                verdict = vr.verdict;
                result.machine["witness_bound"] =
                    witness_bound_json(loaded.space, cert.family, cert.witness_j, cert.witness_Aj,
                                       grid_labels(loaded.space), witness_ok);
            }
            result.machine["lambda"] = to_string(cert.lambda);
            result.machine["verdict"] = report::verdict_json(verdict);
            result.exit_code =
                verdict.status == Verdict::Status::pass && witness_ok ? 0 : 1;
            kv(human, "lambda", to_string(cert.lambda));
            human += verdict_human(verdict);
            kv(human, "lower bound a_j >= A_j", witness_ok ? "holds" : "FAILS");
            break;
        }
        case ProblemDocument::Kind::almost_polynomial: {
            AlmostPolynomialCertificate cert = doc.almost_polynomial_certificate();
            bool witness_ok = false;
            Verdict verdict;
            if (doc.is_finite()) {
                LoadedFinite loaded = load_finite(doc);
                ScanOptions opts;
                opts.collect_pairs = loaded.space.size() <= kPairTableLimit;
                VerifyResult vr = verify_almost_polynomial(loaded.space, loaded.map, cert, opts);
                verdict = vr.verdict;
                auto label = finite_labels(loaded.space);
                if (opts.collect_pairs) {
                    result.machine["pairs"] = report::pair_rows_json(vr.pairs, label);
                }
                result.machine["witness_bound"] = witness_bound_json(
                    loaded.space, cert.family, cert.witness_j, cert.witness_Aj, label, witness_ok);
                append_pair_table(human, vr.pairs, label);
            } else {
                LoadedInterval loaded = load_interval(doc);
                VerifyResult vr = verify_almost_polynomial(loaded.space, loaded.map, cert);
                verdict = vr.verdict;
                result.machine["witness_bound"] =
                    witness_bound_json(loaded.space, cert.family, cert.witness_j, cert.witness_Aj,
                                       grid_labels(loaded.space), witness_ok);
            }
            result.machine["lambda"] = to_string(cert.lambda);
            result.machine["verdict"] = report::verdict_json(verdict);
            result.exit_code =
                verdict.status == Verdict::Status::pass && witness_ok ? 0 : 1;
            kv(human, "lambda", to_string(cert.lambda));
            human += verdict_human(verdict);
            kv(human, "lower bound a_j >= A_j", witness_ok ? "holds" : "FAILS");
            break;
        }
    }
    kv(human, "result", result.exit_code == 0 ? "pass" : "fail");
    return result;
}

CommandResult cmd_iterate(const ProblemDocument& doc, const IterateOptions& opts) {
    CommandResult result;
    result.machine = report::envelope("iterate", doc.raw);
    std::string& human = result.human;
    line(human, "iterate");
    kv(human, "start", opts.start);

    PicardTrace trace;
    std::optional<Rational> sigma;
    unsigned bound_j = 1;
    Rational bound_lambda;

    auto certificate_family = [&]() -> const CoefficientFamily& {
        switch (doc.kind) {
            case ProblemDocument::Kind::polynomial:
            case ProblemDocument::Kind::almost_polynomial:
                if (!doc.family) throw InputError("bound check needs a coefficient family");
                return *doc.family;
            default:
                throw InputError("bound check needs a polynomial or almost-polynomial document");
        }
    };

    if (doc.is_finite()) {
        LoadedFinite loaded = load_finite(doc);
        auto start = loaded.space.index_of(opts.start);
        if (!start) throw InputError("start point '" + opts.start + "' is not in the space");
        trace = iterate(loaded.space, loaded.map, *start);
        result.machine["orbit"] =
            report::orbit_json(orbit(loaded.map, *start), finite_labels(loaded.space));
        if (opts.bound_check) {
            const CoefficientFamily& family = certificate_family();
            if (!doc.certificate || !doc.certificate->lambda || !doc.certificate->j ||
                !doc.certificate->Aj) {
                throw InputError("bound check needs certificate lambda, j and A_j");
            }
            bound_j = *doc.certificate->j;
            bound_lambda = *doc.certificate->lambda;
            sigma = sigma0(loaded.space, loaded.map, family, bound_j, *doc.certificate->Aj, *start);
        }
    } else {
        LoadedInterval loaded = load_interval(doc);
        Rational start = parse_rational(opts.start);
        StopRule stop{opts.tolerance, opts.max_iter};
        trace = iterate(loaded.space, loaded.map, start, stop);
        if (opts.bound_check) {
            const CoefficientFamily& family = certificate_family();
            if (!doc.certificate || !doc.certificate->lambda || !doc.certificate->j ||
                !doc.certificate->Aj) {
                throw InputError("bound check needs certificate lambda, j and A_j");
            }
            bound_j = *doc.certificate->j;
            bound_lambda = *doc.certificate->lambda;
            sigma = sigma0(loaded.space, loaded.map, family, bound_j, *doc.certificate->Aj, start);
        }
    }

    bool bound_ok = true;
    if (sigma) {
        trace.bound_params = PicardTrace::BoundParams{bound_j, bound_lambda, *sigma};
        if (trace.status == PicardTrace::Status::converged) {
            BoundCheckReport bounds = check_bound_against_trace(trace, bound_j, bound_lambda, *sigma);
            result.machine["bound_check"] = report::bound_check_json(bounds);
            bound_ok = !bounds.hard || bounds.all_within;
            kv(human, "sigma", to_string(*sigma));
            kv(human, "bound check",
               bounds.all_within ? "all within"
                                 : (bounds.hard ? "VIOLATED" : "violations (empirical, j >= 2)"));
        } else {
            result.machine["bound_check"] = nullptr;
            kv(human, "bound check", "skipped (trace did not converge)");
        }
    }

    result.machine["trace"] = report::trace_json(trace);
    kv(human, "status", to_string(trace.status));
    if (trace.limit) kv(human, "limit", *trace.limit);
    std::ostringstream path;
    for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
        if (i) path << " -> ";
        path << trace.iterates[i];
    }
    kv(human, "path", path.str());

    result.exit_code = trace.status == PicardTrace::Status::converged && bound_ok ? 0 : 1;
    kv(human, "result", result.exit_code == 0 ? "pass" : "fail");
    return result;
}

CommandResult cmd_search(const ProblemDocument& doc, const SearchOptions& opts) {
    CommandResult result;
    result.machine = report::envelope("search", doc.raw);
    std::string& human = result.human;
    line(human, "search");

    if (!doc.is_finite()) {
        throw InputError("certificate synthesis is supported on finite spaces only");
    }
    LoadedFinite loaded = load_finite(doc);

    SynthesisResult synth;
    Verdict reverify;
    switch (doc.kind) {
        case ProblemDocument::Kind::polynomial: {
            synth = synthesize_polynomial(loaded.space, loaded.map, opts.k, opts.mode,
                                          opts.lambda_tol);
            if (synth.status == SynthesisResult::Status::found) {
                reverify = verify_polynomial(loaded.space, loaded.map, *synth.polynomial).verdict;
            }
            break;
        }
        case ProblemDocument::Kind::almost_polynomial: {
            synth = synthesize_almost(loaded.space, loaded.map, opts.k, opts.lambda_tol);
            if (synth.status == SynthesisResult::Status::found) {
                reverify =
                    verify_almost_polynomial(loaded.space, loaded.map, *synth.almost).verdict;
            }
            break;
        }
        default:
            throw InputError("search needs a polynomial or almost-polynomial document");
    }

    result.machine["k"] = opts.k;
    if (doc.kind == ProblemDocument::Kind::polynomial) {
        result.machine["mode"] = opts.mode == FamilyMode::constant ? "constant" : "full";
    }
    result.machine["lambda_tol"] = to_string(opts.lambda_tol);
    result.machine["synthesis"] = report::synthesis_json(synth);

    const bool found = synth.status == SynthesisResult::Status::found;
    kv(human, "status", found ? "found" : "infeasible-below-one");
    kv(human, "lambda", to_string(synth.lambda));
    kv(human, "probes", std::to_string(synth.probes.size()));
    if (found) {
        result.machine["reverify"] = report::verdict_json(reverify);
        kv(human, "re-verification", to_string(reverify.status));
        result.exit_code = reverify.status == Verdict::Status::pass ? 0 : 1;
    } else {
        result.exit_code = 1;
    }
    kv(human, "result", result.exit_code == 0 ? "pass" : "fail");
    return result;
}

}  // namespace polycontract
