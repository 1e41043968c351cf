#include "polycontract/contraction.hpp"

#include "pair_eval.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <utility>

namespace polycontract {

std::string to_string(Verdict::Status status) {
    switch (status) {
        case Verdict::Status::pass: return "pass";
        case Verdict::Status::fail: return "fail";
        case Verdict::Status::infeasible: return "infeasible";
    }
    return "?";
}

void PolynomialCertificate::validate(const FiniteMetricSpace* space) const {
    if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must lie in the open interval (0,1)");
    family.validate(space);
    if (witness_j < 1 || witness_j > family.k) throw InputError("witness j must lie in 1..k");
    if (witness_Aj <= 0) throw InputError("witness A_j must be > 0");
}

void AlmostPolynomialCertificate::validate(const FiniteMetricSpace* space) const {
    if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must lie in the open interval (0,1)");
    family.validate(space);
    if (witness_j < 1 || witness_j > family.k) throw InputError("witness j must lie in 1..k");
    if (witness_Aj <= 0) throw InputError("witness A_j must be > 0");
    if (L.size() != family.k + 1) throw InputError("L must supply exactly k+1 values L_0..L_k");
    for (const Rational& l : L) {
        if (l <= 0) throw InputError("every L_i must be > 0");
    }
}

namespace {

// Shared result of a ratio scan over ordered pairs: the first pair that is
// infeasible for every lambda (rhs = 0 < lhs), and the pair maximizing
// lhs/rhs among pairs with rhs > 0 (earliest maximizer on ties).
struct RatioScan {
    std::optional<std::pair<std::size_t, std::size_t>> infeasible_at;
    Rational infeasible_lhs;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Rational best_lhs{0};
    Rational best_rhs{0};
    std::vector<PairRow> rows;
};

template <class Eval>
void scan_range(std::size_t p_begin, std::size_t p_end, std::size_t n, bool collect,
                const Eval& eval, RatioScan& out) {
    PairRow row{0, 0, 0, 0};
    for (std::size_t p = p_begin; p < p_end; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            row.p = p;
            row.q = q;
            if (!eval(p, q, row)) continue;
            if (collect) out.rows.push_back(row);
            if (row.rhs == 0) {
                if (row.lhs != 0 && !out.infeasible_at) {
                    out.infeasible_at = {p, q};
                    out.infeasible_lhs = row.lhs;
                }
            } else if (!out.best || row.lhs * out.best_rhs > out.best_lhs * row.rhs) {
                out.best = {p, q};
                out.best_lhs = row.lhs;
                out.best_rhs = row.rhs;
            }
        }
    }
}

// Eval: bool(p, q, PairRow&) filling lhs and the unscaled rhs; returning
// false skips the pair. Must be safe for concurrent calls.
template <class Eval>
RatioScan scan_ordered_pairs(std::size_t n, const ScanOptions& opts, const Eval& eval) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunks = (opts.parallel && n >= 128) ? std::min<std::size_t>(hw, n) : 1;

    if (chunks <= 1) {
        RatioScan out;
        scan_range(0, n, n, opts.collect_pairs, eval, out);
        return out;
    }

    std::vector<std::future<RatioScan>> futures;
    const std::size_t per = (n + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t p0 = c * per;
        const std::size_t p1 = std::min(n, p0 + per);
        futures.push_back(std::async(std::launch::async, [&, p0, p1] {
            RatioScan part;
            scan_range(p0, p1, n, opts.collect_pairs, eval, part);
            return part;
        }));
    }

    // Merge in chunk order so the outcome matches the serial scan exactly.
    RatioScan out;
    for (auto& f : futures) {
        RatioScan part = f.get();
        if (!out.infeasible_at && part.infeasible_at) {
            out.infeasible_at = part.infeasible_at;
            out.infeasible_lhs = std::move(part.infeasible_lhs);
        }
        if (part.best &&
            (!out.best || part.best_lhs * out.best_rhs > out.best_lhs * part.best_rhs)) {
            out.best = part.best;
            out.best_lhs = std::move(part.best_lhs);
            out.best_rhs = std::move(part.best_rhs);
        }
        if (opts.collect_pairs) {
            out.rows.insert(out.rows.end(), std::make_move_iterator(part.rows.begin()),
                            std::make_move_iterator(part.rows.end()));
        }
    }
    return out;
}

template <class Label>
Verdict ratio_verdict(const RatioScan& scan, const Rational& lambda, const Label& label) {
    Verdict v;
    if (scan.infeasible_at) {
        v.status = Verdict::Status::infeasible;
        v.worst_indices = scan.infeasible_at;
        v.lhs = scan.infeasible_lhs;
        v.rhs = 0;
    } else if (scan.best) {
        v.min_feasible_lambda = scan.best_lhs / scan.best_rhs;
        v.status = *v.min_feasible_lambda <= lambda ? Verdict::Status::pass : Verdict::Status::fail;
        v.worst_indices = scan.best;
        v.lhs = scan.best_lhs;
        v.rhs = scan.best_rhs;
    } else {
        // Every pair had lhs = rhs = 0 (or was skipped): vacuous pass.
        v.status = Verdict::Status::pass;
        v.min_feasible_lambda = Rational(0);
    }
    if (v.worst_indices) {
        v.worst_pair = {label(v.worst_indices->first), label(v.worst_indices->second)};
    }
    return v;
}

// ---- finite-space evaluation contexts ----------------------------------

std::vector<std::size_t> image_vector(const FiniteMetricSpace& space, const TableMap& map) {
    validate_table(space, map);
    return map.image();
}

// Sum of a_i(p,q) d^i(p,q) built incrementally over i.
Rational family_sum(const CoefficientFamily& family, const std::vector<std::vector<Rational>>& D,
                    std::size_t p, std::size_t q) {
    Rational sum = 0;
    Rational power = 1;
    const Rational& d = D[p][q];
    for (unsigned i = 0; i <= family.k; ++i) {
        sum += family.a[i].at(p, q) * power;
        if (i < family.k) power *= d;
    }
    return sum;
}

// ---- grid evaluation context --------------------------------------------

struct GridCoefficient {
    const Coefficient* coeff;
    std::optional<detail::PairEvaluator> on_points;
    std::optional<detail::PairEvaluator> on_images;

    Rational at_points(std::size_t p, std::size_t q) const {
        if (coeff->is_constant()) return coeff->constant();
        return on_points->at(p, q);
    }
    Rational at_images(std::size_t p, std::size_t q) const {
        if (coeff->is_constant()) return coeff->constant();
        return on_images->at(p, q);
    }
};

struct GridContext {
    const std::vector<Rational>* points;
    std::vector<Rational> images;
    std::vector<GridCoefficient> coeffs;

    GridContext(const IntervalGridSpace& space, const PiecewiseMap& map,
                const CoefficientFamily& family) {
        validate_piecewise(space, map);
        family.validate_for_grid();
        points = &space.points();
        images.reserve(points->size());
        for (const Rational& x : *points) images.push_back(map.apply(x));
        coeffs.reserve(family.a.size());
        for (const Coefficient& c : family.a) {
            GridCoefficient gc{&c, std::nullopt, std::nullopt};
            if (c.is_expression()) {
                gc.on_points.emplace(c.expression(), points, points);
                gc.on_points->warm_up();
                gc.on_images.emplace(c.expression(), &images, &images);
                gc.on_images->warm_up();
            }
            coeffs.push_back(std::move(gc));
        }
    }

    void check_nonnegative(unsigned i, const Rational& v, std::size_t p, std::size_t q,
                           bool image_side) const {
        if (v < 0) {
            const auto& xs = image_side ? images : *points;
            throw InputError("coefficient a_" + std::to_string(i) + " is negative at (" +
                             to_string(xs[p]) + ", " + to_string(xs[q]) + ")");
        }
    }
};

}  // namespace

// ---- verify_polynomial ----------------------------------------------------

VerifyResult verify_polynomial(const FiniteMetricSpace& space, const TableMap& map,
                               const PolynomialCertificate& cert, const ScanOptions& opts) {
    cert.validate(&space);
    const auto img = image_vector(space, map);
    const auto& D = space.matrix();
    const CoefficientFamily& family = cert.family;

    auto eval = [&](std::size_t p, std::size_t q, PairRow& row) {
        row.lhs = family_sum(family, D, img[p], img[q]);
        row.rhs = family_sum(family, D, p, q);
        return true;
    };
    RatioScan scan = scan_ordered_pairs(space.size(), opts, eval);
    Verdict verdict = ratio_verdict(scan, cert.lambda, [&](std::size_t p) { return space.label(p); });
    return {std::move(verdict), std::move(scan.rows)};
}

VerifyResult verify_polynomial(const IntervalGridSpace& space, const PiecewiseMap& map,
                               const PolynomialCertificate& cert, const ScanOptions& opts) {
    cert.validate(nullptr);
    GridContext ctx(space, map, cert.family);
    const auto& pts = *ctx.points;
    const unsigned k = cert.family.k;

    auto eval = [&](std::size_t p, std::size_t q, PairRow& row) {
        Rational d_img = rational_abs(ctx.images[p] - ctx.images[q]);
        Rational d_pq = rational_abs(pts[p] - pts[q]);
        Rational lhs = 0, rhs = 0, lpow = 1, rpow = 1;
        for (unsigned i = 0; i <= k; ++i) {
            Rational al = ctx.coeffs[i].at_images(p, q);
            ctx.check_nonnegative(i, al, p, q, true);
            Rational ar = ctx.coeffs[i].at_points(p, q);
            ctx.check_nonnegative(i, ar, p, q, false);
            lhs += al * lpow;
            rhs += ar * rpow;
            if (i < k) {
                lpow *= d_img;
                rpow *= d_pq;
            }
        }
        row.lhs = std::move(lhs);
        row.rhs = std::move(rhs);
        return true;
    };
    RatioScan scan = scan_ordered_pairs(pts.size(), opts, eval);
    Verdict verdict =
        ratio_verdict(scan, cert.lambda, [&](std::size_t p) { return to_string(pts[p]); });
    verdict.grid_verified = true;
    return {std::move(verdict), std::move(scan.rows)};
}

// ---- verify_almost_polynomial ---------------------------------------------

VerifyResult verify_almost_polynomial(const FiniteMetricSpace& space, const TableMap& map,
                                      const AlmostPolynomialCertificate& cert,
                                      const ScanOptions& opts) {
    cert.validate(&space);
    const auto img = image_vector(space, map);
    const auto& D = space.matrix();
    const CoefficientFamily& family = cert.family;

    auto eval = [&](std::size_t p, std::size_t q, PairRow& row) {
        row.lhs = family_sum(family, D, img[p], img[q]);
        // rhs base: sum_i a_i(p,q) [d^i(p,q) + L_i d^i(q, Tp)]
        const Rational& d_pq = D[p][q];
        const Rational& d_yTx = D[q][img[p]];
        Rational rhs = 0, pow_pq = 1, pow_yTx = 1;
        for (unsigned i = 0; i <= family.k; ++i) {
            rhs += family.a[i].at(p, q) * (pow_pq + cert.L[i] * pow_yTx);
            if (i < family.k) {
                pow_pq *= d_pq;
                pow_yTx *= d_yTx;
            }
        }
        row.rhs = std::move(rhs);
        return true;
    };
    RatioScan scan = scan_ordered_pairs(space.size(), opts, eval);
    Verdict verdict = ratio_verdict(scan, cert.lambda, [&](std::size_t p) { return space.label(p); });
    return {std::move(verdict), std::move(scan.rows)};
}

VerifyResult verify_almost_polynomial(const IntervalGridSpace& space, const PiecewiseMap& map,
                                      const AlmostPolynomialCertificate& cert,
                                      const ScanOptions& opts) {
    cert.validate(nullptr);
    GridContext ctx(space, map, cert.family);
    const auto& pts = *ctx.points;
    const unsigned k = cert.family.k;

    auto eval = [&](std::size_t p, std::size_t q, PairRow& row) {
        Rational d_img = rational_abs(ctx.images[p] - ctx.images[q]);
        Rational d_pq = rational_abs(pts[p] - pts[q]);
        Rational d_yTx = rational_abs(pts[q] - ctx.images[p]);
        Rational lhs = 0, rhs = 0, lpow = 1, pow_pq = 1, pow_yTx = 1;
        for (unsigned i = 0; i <= k; ++i) {
            Rational al = ctx.coeffs[i].at_images(p, q);
            ctx.check_nonnegative(i, al, p, q, true);
            Rational ar = ctx.coeffs[i].at_points(p, q);
            ctx.check_nonnegative(i, ar, p, q, false);
            lhs += al * lpow;
            rhs += ar * (pow_pq + cert.L[i] * pow_yTx);
            if (i < k) {
                lpow *= d_img;
                pow_pq *= d_pq;
                pow_yTx *= d_yTx;
            }
        }
        row.lhs = std::move(lhs);
        row.rhs = std::move(rhs);
        return true;
    };
    RatioScan scan = scan_ordered_pairs(pts.size(), opts, eval);
    Verdict verdict =
        ratio_verdict(scan, cert.lambda, [&](std::size_t p) { return to_string(pts[p]); });
    verdict.grid_verified = true;
    return {std::move(verdict), std::move(scan.rows)};
}

SideValues polynomial_sides(const IntervalGridSpace& space, const PiecewiseMap& map,
                            const PolynomialCertificate& cert, const Rational& x,
                            const Rational& y) {
    cert.validate(nullptr);
    cert.family.validate_for_grid();
    if (!space.contains(x) || !space.contains(y)) throw InputError("point outside the interval");
    const Rational tx = map.apply(x);
    const Rational ty = map.apply(y);
    SideValues sides{0, 0};
    for (unsigned i = 0; i <= cert.family.k; ++i) {
        sides.lhs += cert.family.a[i].at(tx, ty) * power_distance(space, i, tx, ty);
        sides.rhs += cert.family.a[i].at(x, y) * power_distance(space, i, x, y);
    }
    return sides;
}

SideValues almost_polynomial_sides(const IntervalGridSpace& space, const PiecewiseMap& map,
                                   const AlmostPolynomialCertificate& cert, const Rational& x,
                                   const Rational& y) {
    cert.validate(nullptr);
    cert.family.validate_for_grid();
    if (!space.contains(x) || !space.contains(y)) throw InputError("point outside the interval");
    const Rational tx = map.apply(x);
    const Rational ty = map.apply(y);
    SideValues sides{0, 0};
    for (unsigned i = 0; i <= cert.family.k; ++i) {
        sides.lhs += cert.family.a[i].at(tx, ty) * power_distance(space, i, tx, ty);
        sides.rhs += cert.family.a[i].at(x, y) *
                     (power_distance(space, i, x, y) + cert.L[i] * power_distance(space, i, y, tx));
    }
    return sides;
}

// ---- classic conditions -----------------------------------------------------

namespace {

template <class DistPair, class DistImage>
LipschitzReport lipschitz_scan(std::size_t n, const DistPair& d_pair, const DistImage& d_image) {
    LipschitzReport report;
    ScanOptions opts;
    auto eval = [&](std::size_t p, std::size_t q, PairRow& row) {
        if (p == q) return false;
        row.lhs = d_image(p, q);
        row.rhs = d_pair(p, q);
        return true;
    };
    RatioScan scan = scan_ordered_pairs(n, opts, eval);
    if (scan.best) {
        report.ratio = scan.best_lhs / scan.best_rhs;
        report.worst = scan.best;
    }
    return report;
}

}  // namespace

LipschitzReport verify_banach(const FiniteMetricSpace& space, const TableMap& map) {
    const auto img = image_vector(space, map);
    const auto& D = space.matrix();
    return lipschitz_scan(
        space.size(), [&](std::size_t p, std::size_t q) { return D[p][q]; },
        [&](std::size_t p, std::size_t q) { return D[img[p]][img[q]]; });
}

LipschitzReport verify_banach(const IntervalGridSpace& space, const PiecewiseMap& map) {
    validate_piecewise(space, map);
    const auto& pts = space.points();
    std::vector<Rational> img;
    img.reserve(pts.size());
    for (const Rational& x : pts) img.push_back(map.apply(x));
    LipschitzReport report = lipschitz_scan(
        pts.size(), [&](std::size_t p, std::size_t q) { return rational_abs(pts[p] - pts[q]); },
        [&](std::size_t p, std::size_t q) { return rational_abs(img[p] - img[q]); });
    report.grid_verified = true;
    return report;
}

namespace {

template <class DistTT, class Bracket>
KannanReport kannan_scan(std::size_t n, const DistTT& d_image, const Bracket& bracket) {
    KannanReport report;
    ScanOptions opts;
    auto eval = [&](std::size_t p, std::size_t q, PairRow& row) {
        row.lhs = d_image(p, q);
        row.rhs = bracket(p, q);
        return true;
    };
    RatioScan scan = scan_ordered_pairs(n, opts, eval);
    if (scan.infeasible_at) {
        report.ratio = std::nullopt;
        report.worst = scan.infeasible_at;
    } else if (scan.best) {
        report.ratio = scan.best_lhs / scan.best_rhs;
        report.worst = scan.best;
    } else {
        report.ratio = Rational(0);
    }
    return report;
}

}  // namespace

KannanReport verify_kannan(const FiniteMetricSpace& space, const TableMap& map) {
    const auto img = image_vector(space, map);
    const auto& D = space.matrix();
    return kannan_scan(
        space.size(), [&](std::size_t p, std::size_t q) { return D[img[p]][img[q]]; },
        [&](std::size_t p, std::size_t q) { return D[p][img[p]] + D[q][img[q]]; });
}

KannanReport verify_kannan(const IntervalGridSpace& space, const PiecewiseMap& map) {
    validate_piecewise(space, map);
    const auto& pts = space.points();
    std::vector<Rational> img;
    img.reserve(pts.size());
    for (const Rational& x : pts) img.push_back(map.apply(x));
    KannanReport report = kannan_scan(
        pts.size(), [&](std::size_t p, std::size_t q) { return rational_abs(img[p] - img[q]); },
        [&](std::size_t p, std::size_t q) {
            return rational_abs(pts[p] - img[p]) + rational_abs(pts[q] - img[q]);
        });
    report.grid_verified = true;
    return report;
}

namespace {

// Almost contraction d(Tx,Ty) <= lambda d(x,y) + ell d(y,Tx), scanned with
// the lambda term isolated: with adj = max(lhs - ell*d(y,Tx), 0) the pair
// passes iff adj <= lambda*d(x,y), so the ratio engine applies to
// (adj, d(x,y)) and yields the minimal feasible lambda at this ell.
template <class Dist3, class Label>
Verdict almost_contraction_scan(std::size_t n, const Rational& lambda, const Rational& ell,
                                const Dist3& dists, const Label& label) {
    if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must lie in the open interval (0,1)");
    if (ell <= 0) throw InputError("ell must be > 0");
    ScanOptions opts;
    auto eval = [&](std::size_t p, std::size_t q, PairRow& row) {
        auto [d_img, d_pq, d_yTx] = dists(p, q);
        Rational adj = d_img - ell * d_yTx;
        if (adj < 0) adj = 0;
        row.lhs = std::move(adj);
        row.rhs = std::move(d_pq);
        return true;
    };
    RatioScan scan = scan_ordered_pairs(n, opts, eval);
    Verdict v = ratio_verdict(scan, lambda, label);
    // Report the original two sides at the worst pair.
    if (v.worst_indices) {
        auto [d_img, d_pq, d_yTx] = dists(v.worst_indices->first, v.worst_indices->second);
        v.lhs = d_img;
        v.rhs = lambda * d_pq + ell * d_yTx;
    }
    return v;
}

}  // namespace

Verdict verify_almost_contraction(const FiniteMetricSpace& space, const TableMap& map,
                                  const Rational& lambda, const Rational& ell) {
    const auto img = image_vector(space, map);
    const auto& D = space.matrix();
    return almost_contraction_scan(
        space.size(), lambda, ell,
        [&](std::size_t p, std::size_t q) {
            return std::tuple<Rational, Rational, Rational>(D[img[p]][img[q]], D[p][q],
                                                            D[q][img[p]]);
        },
        [&](std::size_t p) { return space.label(p); });
}

Verdict verify_almost_contraction(const IntervalGridSpace& space, const PiecewiseMap& map,
                                  const Rational& lambda, const Rational& ell) {
    validate_piecewise(space, map);
    const auto& pts = space.points();
    std::vector<Rational> img;
    img.reserve(pts.size());
    for (const Rational& x : pts) img.push_back(map.apply(x));
    Verdict v = almost_contraction_scan(
        pts.size(), lambda, ell,
        [&](std::size_t p, std::size_t q) {
            return std::tuple<Rational, Rational, Rational>(rational_abs(img[p] - img[q]),
                                                            rational_abs(pts[p] - pts[q]),
                                                            rational_abs(pts[q] - img[p]));
        },
        [&](std::size_t p) { return to_string(pts[p]); });
    v.grid_verified = true;
    return v;
}

// ---- coefficient condition checks -----------------------------------------

namespace {

template <class CoeffAt>
LowerBoundReport lower_bound_scan(std::size_t n, const CoeffAt& value) {
    LowerBoundReport report;
    bool first = true;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            Rational v = value(p, q);
            if (first || v < report.min_value) {
                report.min_value = std::move(v);
                report.where = {p, q};
                first = false;
            }
        }
    }
    report.positive = !first && report.min_value > 0;
    return report;
}

template <class CoeffAt>
Rational upper_bound_scan(std::size_t n, const CoeffAt& value) {
    Rational best = 0;
    bool first = true;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            Rational v = value(p, q);
            if (first || v > best) {
                best = std::move(v);
                first = false;
            }
        }
    }
    return best;
}

}  // namespace

LowerBoundReport check_lower_bound_condition(const FiniteMetricSpace& space,
                                             const CoefficientFamily& family, unsigned j) {
    family.validate(&space);
    if (j < 1 || j > family.k) throw InputError("j must lie in 1..k");
    const Coefficient& c = family.a[j];
    if (c.is_constant()) {
        return LowerBoundReport{c.constant(), c.constant() > 0, {0, 0}, false};
    }
    return lower_bound_scan(space.size(),
                            [&](std::size_t p, std::size_t q) { return c.at(p, q); });
}

LowerBoundReport check_lower_bound_condition(const IntervalGridSpace& space,
                                             const CoefficientFamily& family, unsigned j) {
    family.validate_for_grid();
    if (j < 1 || j > family.k) throw InputError("j must lie in 1..k");
    const Coefficient& c = family.a[j];
    LowerBoundReport report;
    if (c.is_constant()) {
        report = LowerBoundReport{c.constant(), c.constant() > 0, {0, 0}, true};
        return report;
    }
    const auto& pts = space.points();
    detail::PairEvaluator ev(c.expression(), &pts, &pts);
    ev.warm_up();
    report = lower_bound_scan(pts.size(),
                              [&](std::size_t p, std::size_t q) { return ev.at(p, q); });
    report.grid_evidence = true;
    return report;
}

namespace {

template <class CoeffMin, class CoeffMax, class CoeffIsZero>
ContinuityReport continuity_scan(const CoefficientFamily& family, const CoeffIsZero& a0_zero,
                                 const CoeffMax& coeff_max, const CoeffMin& coeff_min) {
    ContinuityReport report;
    report.a0_identically_zero = a0_zero();
    for (unsigned i = 1; i <= family.k; ++i) report.upper_bounds.push_back(coeff_max(i));
    bool first = true;
    for (unsigned j = 1; j <= family.k; ++j) {
        Rational m = coeff_min(j);
        if (first || m > report.best_Aj) {
            report.best_Aj = std::move(m);
            report.best_j = j;
            first = false;
        }
    }
    report.guaranteed = report.a0_identically_zero && report.best_Aj > 0;
    return report;
}

}  // namespace

ContinuityReport check_continuity_conditions(const FiniteMetricSpace& space,
                                             const CoefficientFamily& family) {
    family.validate(&space);
    const std::size_t n = space.size();
    auto value = [&](unsigned i, std::size_t p, std::size_t q) { return family.a[i].at(p, q); };
    return continuity_scan(
        family,
        [&] {
            if (family.a[0].is_constant()) return family.a[0].constant() == 0;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    if (value(0, p, q) != 0) return false;
            return true;
        },
        [&](unsigned i) {
            if (family.a[i].is_constant()) return family.a[i].constant();
            return upper_bound_scan(n, [&](std::size_t p, std::size_t q) { return value(i, p, q); });
        },
        [&](unsigned j) {
            if (family.a[j].is_constant()) return family.a[j].constant();
            return lower_bound_scan(n, [&](std::size_t p, std::size_t q) { return value(j, p, q); })
                .min_value;
        });
}

ContinuityReport check_continuity_conditions(const IntervalGridSpace& space,
                                             const CoefficientFamily& family) {
    family.validate_for_grid();
    const auto& pts = space.points();
    std::vector<std::optional<detail::PairEvaluator>> evals(family.a.size());
    for (std::size_t i = 0; i < family.a.size(); ++i) {
        if (family.a[i].is_expression()) {
            evals[i].emplace(family.a[i].expression(), &pts, &pts);
            evals[i]->warm_up();
        }
    }
    auto value = [&](unsigned i, std::size_t p, std::size_t q) {
        if (family.a[i].is_constant()) return family.a[i].constant();
        return evals[i]->at(p, q);
    };
    ContinuityReport report = continuity_scan(
        family,
        [&] {
            if (family.a[0].is_constant()) return family.a[0].constant() == 0;
            for (std::size_t p = 0; p < pts.size(); ++p)
                for (std::size_t q = 0; q < pts.size(); ++q)
                    if (value(0, p, q) != 0) return false;
            return true;
        },
        [&](unsigned i) {
            if (family.a[i].is_constant()) return family.a[i].constant();
            return upper_bound_scan(pts.size(),
                                    [&](std::size_t p, std::size_t q) { return value(i, p, q); });
        },
        [&](unsigned j) {
            if (family.a[j].is_constant()) return family.a[j].constant();
            return lower_bound_scan(pts.size(),
                                    [&](std::size_t p, std::size_t q) { return value(j, p, q); })
                .min_value;
        });
    report.grid_evidence = true;
    return report;
}

}  // namespace polycontract
