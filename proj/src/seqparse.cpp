#include "g2cal/seqparse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace g2cal {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw SyntaxError(std::string("expected '") + c + "'", pos);
    }
    bool accept_word(const char* w) {
        skip_ws();
        std::size_t len = std::string(w).size();
        if (s.compare(pos, len, w) == 0) {
            pos += len;
            return true;
        }
        return false;
    }
};

Int parse_uint(Cursor& c) {
    c.skip_ws();
    if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        throw SyntaxError("expected a digit", c.pos);
    Int v = 0;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        v = v * 10 + (c.s[c.pos] - '0');
        ++c.pos;
    }
    return v;
}

Rational parse_rational(Cursor& c, bool allow_sign) {
    int sign = 1;
    if (allow_sign) {
        if (c.accept('-'))
            sign = -1;
        else
            c.accept('+');
    }
    Int num = parse_uint(c);
    Int den = 1;
    if (c.accept('/')) den = parse_uint(c);
    if (den == 0) throw SyntaxError("zero denominator", c.pos);
    return Rational(sign * num, den);
}

/// simple := rational [ "*" sqrt ] | sqrt [ "/" int ]   with sqrt := "sqrt(" int ")"
Scalar parse_simple_coef(Cursor& c, bool allow_sign) {
    int sign = 1;
    if (allow_sign) {
        if (c.accept('-'))
            sign = -1;
        else
            c.accept('+');
    }
    if (c.accept_word("sqrt")) {
        c.expect('(');
        Int mv = parse_uint(c);
        c.expect(')');
        int m = mv.convert_to<int>();
        if (!is_square_free(m)) throw SyntaxError("sqrt argument must be square-free", c.pos);
        Rational b(sign);
        if (c.accept('/')) {
            Int den = parse_uint(c);
            if (den == 0) throw SyntaxError("zero denominator", c.pos);
            b /= Rational(den);
        }
        return Scalar(Rational(0), b, m);
    }
    Rational r = parse_rational(c, false);
    r *= sign;
    if (c.accept('*')) {
        if (!c.accept_word("sqrt")) {
            // not a surd: back up over the '*', the caller owns it
            --c.pos;
            return Scalar(r);
        }
        c.expect('(');
        Int mv = parse_uint(c);
        c.expect(')');
        int m = mv.convert_to<int>();
        if (!is_square_free(m)) throw SyntaxError("sqrt argument must be square-free", c.pos);
        return Scalar(Rational(0), r, m);
    }
    return Scalar(r);
}

/// coef := "(" simple (("+"|"-") simple)* ")" | simple
Scalar parse_coef(Cursor& c, bool allow_sign) {
    if (c.peek() == '(') {
        c.expect('(');
        Scalar v = parse_simple_coef(c, true);
        while (c.peek() == '+' || c.peek() == '-') v += parse_simple_coef(c, true);
        c.expect(')');
        return v;
    }
    return parse_simple_coef(c, allow_sign);
}

struct Term {
    Scalar coef;
    std::vector<int> indices;  // 1-based, as written
    bool has_monomial = false;
};

Term parse_term(Cursor& c, int n, int term_sign) {
    Term t;
    t.coef = Scalar(term_sign);
    bool have_coef = false;
    if (c.peek() != 'e') {
        Scalar v = parse_coef(c, false);
        t.coef *= v;
        have_coef = true;
        if (!c.accept('*')) return t;  // bare coefficient term
    }
    c.skip_ws();
    if (c.peek() != 'e') {
        if (have_coef) throw SyntaxError("expected monomial after '*'", c.pos);
        throw SyntaxError("expected coefficient or monomial", c.pos);
    }
    c.expect('e');
    c.expect('^');
    c.expect('{');
    t.has_monomial = true;
    c.skip_ws();
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        int idx = c.s[c.pos] - '0';
        if (idx < 1 || idx > n)
            throw IndexOutOfRange("index " + std::to_string(idx) + " outside 1.." +
                                  std::to_string(n));
        t.indices.push_back(idx);
        ++c.pos;
        c.skip_ws();
    }
    c.expect('}');
    if (t.indices.empty()) throw SyntaxError("empty monomial", c.pos);
    return t;
}

/// Canonicalizes a written index sequence: sorts, tracks the permutation
/// sign, detects repeats (which kill the term).
bool canonicalize(std::vector<int>& idx, int& sign) {
    sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return false;  // repeated factor
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return true;
}

}  // namespace

Scalar parse_scalar_literal(const std::string& text) {
    Cursor c{text};
    Scalar v = parse_simple_coef(c, true);
    while (c.peek() == '+' || c.peek() == '-') v += parse_simple_coef(c, true);
    if (!c.eof()) throw SyntaxError("trailing characters in scalar literal", c.pos);
    return v;
}

static KForm<Scalar> parse_form_at(Cursor& c, int n, int degree) {
    std::vector<Term> terms;
    int sign = c.accept('-') ? -1 : (c.accept('+'), 1);
    terms.push_back(parse_term(c, n, sign));
    while (true) {
        if (c.accept('+'))
            terms.push_back(parse_term(c, n, 1));
        else if (c.accept('-'))
            terms.push_back(parse_term(c, n, -1));
        else
            break;
    }

    int k = degree;
    for (const auto& t : terms) {
        if (!t.has_monomial) continue;
        const int tk = static_cast<int>(t.indices.size());
        if (k == -1)
            k = tk;
        else if (tk != k)
            throw MixedDegree("term of degree " + std::to_string(tk) + " in a degree-" +
                              std::to_string(k) + " form");
    }
    for (const auto& t : terms)
        if (!t.has_monomial && !t.coef.is_zero() && k != 0 && k != -1)
            throw MixedDegree("scalar term in a degree-" + std::to_string(k) + " form");
    if (k == -1) k = 0;  // a pure "0"

    KForm<Scalar> out(n, k);
    for (auto& t : terms) {
        if (t.coef.is_zero()) continue;
        if (!t.has_monomial) {
            out.add_term(0, t.coef);
            continue;
        }
        int s;
        if (!canonicalize(t.indices, s)) continue;
        Mask m = 0;
        for (int idx : t.indices) m |= Mask(1) << (idx - 1);
        out.add_term(m, s > 0 ? t.coef : -t.coef);
    }
    return out;
}

KForm<Scalar> parse_form(const std::string& text, int n, int degree) {
    if (n < 0 || n > 8) throw DimensionMismatch("parse_form: n out of range");
    Cursor c{text};
    KForm<Scalar> out = parse_form_at(c, n, degree);
    if (!c.eof()) throw SyntaxError("trailing characters in form", c.pos);
    return out;
}

namespace {

std::vector<int> mask_indices(Mask m) {
    std::vector<int> idx;
    for (int i = 0; i < 8; ++i)
        if (m & (Mask(1) << i)) idx.push_back(i + 1);
    return idx;
}

std::string monomial_string(Mask m) {
    std::string s = "e^{";
    for (int i : mask_indices(m)) s += static_cast<char>('0' + i);
    return s + "}";
}

std::string render(const std::vector<std::pair<Mask, std::string>>& pieces) {
    std::string out;
    for (const auto& [m, piece] : pieces) {
        (void)m;
        if (out.empty())
            out = piece;
        else if (!piece.empty() && piece[0] == '-')
            out += piece;
        else
            out += "+" + piece;
    }
    return out;
}

std::string scalar_term_string(const Scalar& c, Mask m) {
    if (m == 0) return c.to_string();
    const std::string mono = monomial_string(m);
    if (c == Scalar(1)) return mono;
    if (c == Scalar(-1)) return "-" + mono;
    std::string cs = c.to_string();
    const bool mixed = !c.is_rational() && c.rat() != 0;
    if (mixed) {
        if (!cs.empty() && cs[0] == '-') return "-(" + cs.substr(1) + ")*" + mono;
        return "(" + cs + ")*" + mono;
    }
    return cs + "*" + mono;
}

bool lex_less(Mask a, Mask b) { return mask_indices(a) < mask_indices(b); }

}  // namespace

std::string print_form(const KForm<Scalar>& x) {
    if (x.is_zero()) return "0";
    std::vector<std::pair<Mask, std::string>> pieces;
    for (const auto& [m, v] : x.coeffs()) pieces.emplace_back(m, scalar_term_string(v, m));
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    return render(pieces);
}

std::string print_form(const KForm<double>& x, int significant_digits) {
    if (x.is_zero()) return "0";
    std::vector<std::pair<Mask, std::string>> pieces;
    for (const auto& [m, v] : x.coeffs()) {
        std::ostringstream os;
        os.precision(significant_digits);
        os << v;
        std::string cs = os.str();
        std::string piece;
        if (m == 0)
            piece = cs;
        else if (cs == "1")
            piece = monomial_string(m);
        else if (cs == "-1")
            piece = "-" + monomial_string(m);
        else
            piece = cs + "*" + monomial_string(m);
        pieces.emplace_back(m, piece);
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    return render(pieces);
}

std::vector<KForm<Scalar>> parse_structure_tuple(const std::string& text) {
    // count entries first: top-level commas inside the outer parentheses
    Cursor probe{text};
    probe.expect('(');
    int depth = 1;
    int n = 1;
    for (std::size_t i = probe.pos; i < text.size() && depth > 0; ++i) {
        char ch = text[i];
        if (ch == '(')
            ++depth;
        else if (ch == ')')
            --depth;
        else if (ch == ',' && depth == 1)
            ++n;
    }
    if (n > 8) throw DimensionMismatch("structure tuple longer than 8 entries");

    Cursor c{text};
    c.expect('(');
    std::vector<KForm<Scalar>> eqs;
    for (int i = 0; i < n; ++i) {
        eqs.push_back(parse_form_at(c, n, 2));
        if (i + 1 < n) c.expect(',');
    }
    c.expect(')');
    if (!c.eof()) throw SyntaxError("trailing characters after tuple", c.pos);
    return eqs;
}

std::string print_structure_tuple(const std::vector<KForm<Scalar>>& eqs) {
    std::string out = "(";
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (i) out += ",";
        out += print_form(eqs[i]);
    }
    return out + ")";
}

}  // namespace g2cal
