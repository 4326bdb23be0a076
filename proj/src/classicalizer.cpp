#include "schottky/classicalizer.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace schottky {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Move power_move(long k, const char* note) {
    Move m;
    m.kind = Move::Kind::multiply_power;
    m.power = k;
    m.annotation = note;
    return m;
}

Move scale_move(Complex s, const char* note) {
    Move m;
    m.kind = Move::Kind::conjugate_scale;
    m.scale = s;
    m.annotation = note;
    return m;
}

struct Candidate {
    std::vector<Move> moves;
    bool renormalize = false;
};

std::optional<MarkedGroup> evaluate(const MarkedGroup& state, const Candidate& cand) {
    try {
        MarkedGroup out = state;
        for (const Move& m : cand.moves) out = apply_move(out, m);
        if (cand.renormalize) out = normalize_pair(out);
        return out;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Deterministic dilation line search: the best conjugating scale along the
// axis direction, by coarse log-grid plus one refinement pass.
std::optional<Move> best_dilation(const MarkedGroup& state) {
    auto margin_at = [&](double logS) -> double {
        Move m = scale_move(Complex(std::exp(logS), 0.0), "C");
        const auto next = evaluate(state, {{m}, false});
        return next ? score_pair(*next) : kNegInf;
    };
    double bestLog = 0.0;
    double bestMargin = margin_at(0.0);
    for (int pass = 0; pass < 2; ++pass) {
        const double step = pass == 0 ? 0.35 : 0.07;
        const double center = bestLog;
        for (int i = -4; i <= 4; ++i) {
            const double logS = center + step * i;
            const double margin = margin_at(logS);
            if (margin > bestMargin) {
                bestMargin = margin;
                bestLog = logS;
            }
        }
    }
    if (std::abs(bestLog) < 1e-12) return std::nullopt;
    return scale_move(Complex(std::exp(bestLog), 0.0), "C");
}

std::vector<Candidate> propose(const MarkedGroup& state) {
    std::vector<Candidate> cands;
    const MoebiusMap& am = state.alpha.map();
    const MoebiusMap& bm = state.beta.map();
    const Complex lambda = am.a();
    const double lamAbs = std::abs(lambda);

    if (std::abs(bm.c()) > 1e-12) {
        const Complex zeta = bm.a() / bm.c();
        const Complex eta = -bm.d() / bm.c();
        std::optional<long> kStar;
        try {
            kStar = select_power_k(lambda, ComplexPoint(zeta));
        } catch (const Error&) {
            // zeta at 0 or multiplier too close; power moves unavailable
        }
        if (kStar) {
            const long k = *kStar;
            if (k != 0) cands.push_back({{power_move(k, "k")}, false});
            cands.push_back({{power_move(k - 1, "B")}, false});
            cands.push_back({{power_move(k + 1, "k+1")}, false});
            // Case C: recenter |zeta lambda^{2k}| and its partner around 1.
            const double zetaAfter = std::abs(zeta) * std::pow(lamAbs, 2.0 * k);
            if (zetaAfter > 0.0 && std::abs(std::log(zetaAfter)) > 1e-9) {
                Candidate c;
                if (k != 0) c.moves.push_back(power_move(k, "k"));
                c.moves.push_back(scale_move(1.0 / std::sqrt(zetaAfter), "C"));
                cands.push_back(std::move(c));
            }
        }
        if (lamAbs > 1.0 && lamAbs <= 2.0) {
            try {
                cands.push_back({{power_move(select_power_m(lambda), "A1")}, false});
            } catch (const Error&) {
            }
        }
        if (std::abs(zeta) > std::abs(eta)) {
            Move m;
            m.kind = Move::Kind::invert_beta;
            m.annotation = "order";
            cands.push_back({{m}, false});
        }
    }

    if (auto dilation = best_dilation(state)) cands.push_back({{*dilation}, false});

    if (std::abs(am.trace()) > std::abs(bm.trace())) {
        Move m;
        m.kind = Move::Kind::swap_gens;
        m.annotation = "order";
        cands.push_back({{m}, true});
    }
    return cands;
}

// Case B2 restart: diagonalize the word alpha^k beta and make it the new
// first generator, demoting alpha to the second slot.
std::optional<MarkedGroup> try_rebase(const MarkedGroup& state) {
    const MoebiusMap& am = state.alpha.map();
    const MoebiusMap& bm = state.beta.map();
    std::vector<long> powers{1};
    if (std::abs(bm.c()) > 1e-12) {
        try {
            const long k = select_power_k(am.a(), ComplexPoint(bm.a() / bm.c()));
            powers.assign({k, k + 1, k - 1, 1});
        } catch (const Error&) {
        }
    }
    for (long k : powers) {
        try {
            const MoebiusMap word = compose(moebius_power(am, k), bm);
            const ClassifiedMap wordC(word);
            if (!wordC.loxodromic()) continue;
            auto [zm, zp] = fixed_points(wordC);
            ComplexPoint repelling = zm, attracting = zp;
            const double dp =
                zp.is_infinity() ? std::norm(word.d()) : word.derivative_modulus(zp.value());
            if (dp >= 1.0) std::swap(repelling, attracting);
            MoebiusMap phi;
            if (repelling.is_infinity())
                phi = MoebiusMap(0.0, 1.0, 1.0, -attracting.value());
            else if (attracting.is_infinity())
                phi = MoebiusMap::translation(-repelling.value());
            else
                phi = MoebiusMap(1.0, -repelling.value(), 1.0, -attracting.value());

            Move m;
            m.kind = Move::Kind::rebase;
            m.rebaseAlpha = conjugate(phi, word);
            m.rebaseBeta = conjugate(phi, am);
            m.annotation = "B2";
            return normalize_pair(apply_move(state, m));
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

} // namespace

long select_power_k(Complex lambda, const ComplexPoint& zeta) {
    const double lam = std::abs(lambda);
    if (!(lam - 1.0 > 1e-12))
        fail(errc::multiplier_too_close, "|lambda| - 1 <= 1e-12; power selection overflows");
    if (zeta.is_infinity() || zeta.modulus() == 0.0)
        fail(errc::out_of_range, "zeta must be finite and nonzero");
    const double z = zeta.modulus();
    long k = static_cast<long>(std::ceil(-std::log(z) / (2.0 * std::log(lam))));
    while (z * std::pow(lam, 2.0 * static_cast<double>(k)) < 1.0) ++k;
    while (z * std::pow(lam, 2.0 * static_cast<double>(k)) >= lam * lam) --k;
    return k;
}

int select_power_m(Complex lambda) {
    const double lam = std::abs(lambda);
    if (lam > 2.0)
        fail(errc::out_of_range, "power m is defined only for |lambda| <= 2");
    if (!(lam - 1.0 > 1e-12))
        fail(errc::multiplier_too_close, "|lambda| - 1 <= 1e-12; power selection overflows");
    const double x = 1.0 / (lam - 1.0);
    long m = std::max(1l, static_cast<long>(std::ceil(x - 1.0)));
    while (1.0 + 1.0 / static_cast<double>(m + 1) > lam) ++m;
    while (m > 1 && lam > 1.0 + 1.0 / static_cast<double>(m)) --m;
    if (1.0 + 1.0 / static_cast<double>(m + 1) > lam || lam > 1.0 + 1.0 / static_cast<double>(m))
        fail(errc::out_of_range, "no admissible power m");
    return static_cast<int>(m);
}

double score_pair(const MarkedGroup& pair) {
    try {
        return marking_margins(pair, generic_position_frame(pair)).minMargin;
    } catch (const Error&) {
        return kNegInf;
    }
}

SearchReport classicalize(const MarkedGroup& pair, const ClassicalizerConfig& config) {
    MarkedGroup state = [&] {
        try {
            return normalize_pair(pair);
        } catch (const Error& e) {
            switch (e.code()) {
                case errc::shared_fixed_point:
                case errc::not_loxodromic:
                case errc::parabolic_or_elliptic:
                case errc::multiplier_too_close:
                case errc::degenerate_input:
                    fail(errc::degenerate_input, std::string("cannot normalize input: ") + e.what());
                default:
                    throw;
            }
        }
    }();

    SearchReport report;
    report.finalPair = state;
    double current = score_pair(state);
    report.scores.push_back(current);

    auto certify = [&](const MarkedGroup& s, int iterations) -> bool {
        if (auto cert = check_classical_marking(s)) {
            report.certified = true;
            report.certificate = cert;
            report.finalPair = s;
            report.iterations = iterations;
            return true;
        }
        return false;
    };

    if (certify(state, 0)) return report;

    double bestSeen = current;
    int sinceBest = 0;
    int rebases = 0;

    auto accept = [&](MarkedGroup&& next, double score) {
        const std::size_t from = state.history.size();
        state = std::move(next);
        for (std::size_t i = from; i < state.history.size(); ++i)
            report.trace.emplace_back(state.history[i], score);
        report.scores.push_back(score);
        if (score > bestSeen + 1e-15) {
            bestSeen = score;
            sinceBest = 0;
        } else {
            ++sinceBest;
        }
    };

    for (int iter = 1; iter <= config.budget; ++iter) {
        report.iterations = iter;

        double bestScore = kNegInf;
        std::optional<MarkedGroup> bestNext;
        for (const Candidate& cand : propose(state)) {
            auto next = evaluate(state, cand);
            if (!next) continue;
            if (certify(*next, iter)) return report;
            const double sc = score_pair(*next);
            if (sc > bestScore) {
                bestScore = sc;
                bestNext = std::move(next);
            }
        }

        const bool wantRebase = !bestNext || (sinceBest >= config.plateau);
        if (wantRebase && rebases < config.maxRebases) {
            if (auto rb = try_rebase(state)) {
                ++rebases;
                sinceBest = 0;
                const double sc = score_pair(*rb);
                accept(std::move(*rb), sc);
                if (certify(state, iter)) return report;
                continue;
            }
        }
        if (!bestNext) break;
        accept(std::move(*bestNext), bestScore);
    }

    report.certified = false;
    report.finalPair = state;
    return report;
}

} // namespace schottky
