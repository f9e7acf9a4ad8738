#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "gitmilnor/lambda.hpp"
#include "gitmilnor/polynomial.hpp"

namespace gitmilnor {

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

namespace detail {

/// Recursive-descent reader for the polynomial grammar: variables x1..xN
/// (aliases x,y,z,w for the first four), integer or p/q coefficients,
/// optional '*', '^' exponents, '+'/'-' between terms.
class FormReader {
  public:
    explicit FormReader(const std::string& text) : s_(text) {}

    struct RawTerm {
        Rational coeff;
        std::vector<std::pair<int, int>> powers;  // (variable index, exponent)
        int max_var = -1;
    };

    std::vector<RawTerm> read() {
        std::vector<RawTerm> terms;
        skip_ws();
        if (eof()) throw ParseError("empty polynomial", pos_);
        bool negative = accept_sign();
        for (;;) {
            RawTerm t = read_term();
            if (negative) t.coeff = -t.coeff;
            terms.push_back(std::move(t));
            skip_ws();
            if (eof()) break;
            char c = s_[pos_];
            if (c == '+' || c == '-') {
                negative = c == '-';
                ++pos_;
                skip_ws();
                if (eof()) throw ParseError("dangling operator", pos_);
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
            }
        }
        return terms;
    }

  private:
    bool eof() const { return pos_ >= s_.size(); }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept_sign() {
        if (!eof() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            bool neg = s_[pos_] == '-';
            ++pos_;
            skip_ws();
            return neg;
        }
        return false;
    }

    long long read_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected an integer", pos_);
        return std::stoll(s_.substr(start, pos_ - start));
    }

    std::optional<int> read_variable() {
        skip_ws();
        if (eof()) return std::nullopt;
        char c = s_[pos_];
        if (c == 'x' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            long long idx = read_integer();
            if (idx < 1) throw ParseError("variable index must be at least 1", pos_);
            return static_cast<int>(idx - 1);
        }
        switch (c) {
            case 'x': ++pos_; return 0;
            case 'y': ++pos_; return 1;
            case 'z': ++pos_; return 2;
            case 'w': ++pos_; return 3;
            default: return std::nullopt;
        }
    }

    RawTerm read_term() {
        RawTerm t;
        t.coeff = 1;
        skip_ws();
        bool saw_factor = false;
        if (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            long long num = read_integer();
            long long den = 1;
            skip_ws();
            if (!eof() && s_[pos_] == '/') {
                ++pos_;
                den = read_integer();
                if (den == 0) throw ParseError("zero denominator", pos_);
            }
            t.coeff = rational(static_cast<long>(num), static_cast<long>(den));
            saw_factor = true;
        }
        for (;;) {
            skip_ws();
            if (!eof() && s_[pos_] == '*') {
                ++pos_;
                skip_ws();
            }
            auto var = read_variable();
            if (!var) break;
            int exponent = 1;
            skip_ws();
            if (!eof() && s_[pos_] == '^') {
                ++pos_;
                long long e = read_integer();
                if (e < 0) throw ParseError("negative exponent", pos_);
                exponent = static_cast<int>(e);
            }
            t.powers.emplace_back(*var, exponent);
            t.max_var = std::max(t.max_var, *var);
            saw_factor = true;
        }
        if (!saw_factor) throw ParseError("expected a coefficient or a variable", pos_);
        return t;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a polynomial. When n_vars is zero the variable count is inferred as
/// the highest index mentioned.
inline Polynomial parse_form(const std::string& text, int n_vars = 0) {
    detail::FormReader reader(text);
    auto raw = reader.read();
    int max_var = -1;
    for (const auto& t : raw) max_var = std::max(max_var, t.max_var);
    int n = n_vars > 0 ? n_vars : max_var + 1;
    if (n <= 0) throw ParseError("polynomial mentions no variables; pass the variable count", 0);
    if (max_var >= n) throw ParseError("variable index exceeds the declared variable count", 0);
    Polynomial p(n);
    for (const auto& t : raw) {
        Monomial m(std::vector<int>(static_cast<std::size_t>(n), 0));
        for (auto [v, e] : t.powers) m.exp[static_cast<std::size_t>(v)] += e;
        p.add_term(m, t.coeff);
    }
    return p;
}

inline Polynomial parse_homogeneous_form(const std::string& text, int n_vars = 0) {
    Polynomial p = parse_form(text, n_vars);
    if (p.is_zero()) throw ParseError("the zero polynomial is not a valid form here", 0);
    if (!p.is_homogeneous()) throw ParseError("polynomial is not homogeneous", 0);
    return p;
}

/// Split a ';'-separated generator list.
inline std::vector<Polynomial> parse_generators(const std::string& text, int n_vars = 0) {
    std::vector<std::string> pieces;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            pieces.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    pieces.push_back(cur);
    int n = n_vars;
    if (n == 0) {
        for (const auto& piece : pieces) n = std::max(n, parse_form(piece).n_vars());
    }
    std::vector<Polynomial> gens;
    gens.reserve(pieces.size());
    for (const auto& piece : pieces) gens.push_back(parse_homogeneous_form(piece, n));
    return gens;
}

/// Comma-separated integer weights, validated to sum to zero.
inline OnePS parse_one_ps(const std::string& text) {
    std::vector<long long> w;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw Error("empty weight entry in '" + text + "'");
        w.push_back(std::stoll(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    flush();
    return OnePS(std::move(w));
}

/// Render with indexed variable names (stem "x" or "u"), leading term first.
inline std::string to_string(const Polynomial& p, const std::string& stem = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        first = false;
        bool wrote_factor = false;
        if (m.degree() == 0 || mag != 1) {
            out += to_string(mag);
            wrote_factor = true;
        }
        for (int i = 0; i < m.n_vars(); ++i) {
            if (m[i] == 0) continue;
            if (wrote_factor) out += "*";
            wrote_factor = true;
            out += stem + std::to_string(i + 1);
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
        }
    }
    return out;
}

inline std::string to_string(const OnePS& lambda) {
    std::string out;
    for (int i = 0; i < lambda.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(lambda[i]);
    }
    return out;
}

inline std::string to_string(const Monomial& m, const std::string& stem = "x") {
    std::string out;
    for (int i = 0; i < m.n_vars(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += stem + std::to_string(i + 1);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

}  // namespace gitmilnor
