#include "schottky/group_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace schottky {

namespace {

struct Token {
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    int line = 1, column = 0;
    std::string current;
    int startLine = 1, startColumn = 1;
    bool inComment = false;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back({current, startLine, startColumn});
            current.clear();
        }
    };
    for (char ch : text) {
        ++column;
        if (ch == '\n') {
            flush();
            inComment = false;
            ++line;
            column = 0;
            continue;
        }
        if (inComment) continue;
        if (ch == '#') {
            flush();
            inComment = true;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            flush();
            continue;
        }
        if (ch == '/') {
            flush();
            tokens.push_back({"/", line, column});
            continue;
        }
        if (current.empty()) {
            startLine = line;
            startColumn = column;
        }
        current.push_back(ch);
    }
    flush();
    return tokens;
}

Complex parse_complex(const Token& token) {
    const auto comma = token.text.find(',');
    if (comma == std::string::npos)
        fail(errc::parse_error, "expected \"re,im\" at line " + std::to_string(token.line) +
                                    ":" + std::to_string(token.column));
    const std::string reStr = token.text.substr(0, comma);
    const std::string imStr = token.text.substr(comma + 1);
    try {
        std::size_t usedRe = 0, usedIm = 0;
        const double re = std::stod(reStr, &usedRe);
        const double im = std::stod(imStr, &usedIm);
        if (usedRe != reStr.size() || usedIm != imStr.size()) throw std::invalid_argument("");
        return Complex(re, im);
    } catch (const std::exception&) {
        fail(errc::parse_error, "bad complex number '" + token.text + "' at line " +
                                    std::to_string(token.line) + ":" +
                                    std::to_string(token.column));
    }
}

MoebiusMap matrix_from(const std::array<Complex, 4>& e, const char* which) {
    const Complex det = e[0] * e[3] - e[1] * e[2];
    if (std::abs(det) < 1e-8)
        fail(errc::bad_determinant, std::string(which) + " matrix has |det| < 1e-8");
    if (std::abs(det - Complex(1.0, 0.0)) > 1e-9) {
        char buffer[96];
        std::snprintf(buffer, sizeof(buffer), "%s matrix determinant %.3g renormalized to 1",
                      which, std::abs(det));
        emit_condition_warning(buffer);
    }
    return MoebiusMap(e[0], e[1], e[2], e[3]);
}

void format_complex(std::string& out, Complex z) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g", z.real(), z.imag());
    out += buffer;
}

} // namespace

MarkedGroup parse_group_text(const std::string& text) {
    const std::vector<Token> tokens = tokenize(text);
    std::array<Complex, 8> entries;
    std::size_t count = 0;
    for (const Token& token : tokens) {
        if (token.text == "/") {
            if (count != 4)
                fail(errc::parse_error,
                     "'/' must separate two complete matrices (line " +
                         std::to_string(token.line) + ":" + std::to_string(token.column) + ")");
            continue;
        }
        if (count >= entries.size())
            fail(errc::parse_error, "more than eight entries (line " +
                                        std::to_string(token.line) + ":" +
                                        std::to_string(token.column) + ")");
        entries[count++] = parse_complex(token);
    }
    if (count != entries.size())
        fail(errc::parse_error,
             "expected eight complex entries, found " + std::to_string(count));

    const MoebiusMap alpha = matrix_from({entries[0], entries[1], entries[2], entries[3]}, "first");
    const MoebiusMap beta = matrix_from({entries[4], entries[5], entries[6], entries[7]}, "second");
    return make_marked_group(alpha, beta);
}

MarkedGroup parse_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_group_text(buffer.str());
}

std::string format_group(const MarkedGroup& pair) {
    std::string out;
    const MoebiusMap* mats[2] = {&pair.alpha.map(), &pair.beta.map()};
    for (int i = 0; i < 2; ++i) {
        for (Complex e : {mats[i]->a(), mats[i]->b(), mats[i]->c(), mats[i]->d()}) {
            format_complex(out, e);
            out += ' ';
        }
        out += i == 0 ? "/ " : "";
    }
    out += '\n';
    return out;
}

MarkedGroup sample_group(Rng& rng, const SampleParams& params) {
    if (params.traceScale < 2.1)
        fail(errc::bad_config, "traceScale must be >= 2.1");
    constexpr int kMaxTries = 1000;
    for (int attempt = 0; attempt < kMaxTries; ++attempt) {
        const double lamAbs = rng.log_uniform(params.multiplierLo, params.multiplierHi);
        const MoebiusMap alpha = MoebiusMap::diagonal(Complex(lamAbs, 0.0));

        auto annulus_point = [&] {
            const double r =
                rng.log_uniform(params.fixedPointModulusLo, params.fixedPointModulusHi);
            const double phi = rng.uniform(0.0, 2.0 * 3.141592653589793238462643);
            return Complex(r * std::cos(phi), r * std::sin(phi));
        };
        const Complex p = annulus_point();
        const Complex q = annulus_point();
        if (std::abs(p - q) < params.minFixedPointGap) continue;

        const double phase = rng.uniform(0.0, 2.0 * 3.141592653589793238462643);
        const Complex tr = params.traceScale * Complex(std::cos(phase), std::sin(phase));
        const Complex disc = std::sqrt(tr * tr - 4.0);
        Complex mu = (tr + disc) / 2.0;
        if (std::abs(mu) < 1.0) mu = (tr - disc) / 2.0;
        const MoebiusMap beta =
            MoebiusMap::with_fixed_points(ComplexPoint(p), ComplexPoint(q), mu * mu);

        MarkedGroup pair;
        try {
            pair = make_marked_group(alpha, beta);
        } catch (const Error&) {
            continue;
        }
        if (params.minZGap > 0.0) {
            try {
                if (z_gap(pair).zPair < params.minZGap) continue;
            } catch (const Error&) {
                continue;
            }
        }
        return pair;
    }
    fail(errc::degenerate_input, "sampler failed to satisfy constraints");
}

std::string group_digest(const MarkedGroup& pair) {
    const std::string text = format_group(pair);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ull;
    }
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

} // namespace schottky
