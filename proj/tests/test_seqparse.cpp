#include <random>

#include "doctest.h"
#include "g2cal/liealg.hpp"
#include "g2cal/seqparse.hpp"

using namespace g2cal;

TEST_CASE("parse_form: paper literals") {
    auto w0 = parse_form("e^{16}+e^{25}+e^{34}", 6);
    CHECK(w0.degree() == 2);
    CHECK(w0.coeff((1 << 0) | (1 << 5)) == Scalar(1));
    CHECK(w0.coeff((1 << 1) | (1 << 4)) == Scalar(1));
    CHECK(w0.coeff((1 << 2) | (1 << 3)) == Scalar(1));

    auto zero = parse_form("0", 6, 2);
    CHECK(zero.is_zero());
    CHECK(zero.degree() == 2);

    auto s10 = parse_form("2*e^{16}+e^{25}-e^{34}+sqrt(3)*e^{24}+sqrt(3)*e^{35}", 6);
    CHECK(s10.coeff((1 << 0) | (1 << 5)) == Scalar(2));
    CHECK(s10.coeff((1 << 2) | (1 << 3)) == Scalar(-1));
    CHECK(s10.coeff((1 << 1) | (1 << 3)) == Scalar::sqrt_of(3));
    CHECK(s10.coeff((1 << 2) | (1 << 4)) == Scalar::sqrt_of(3));

    auto n12 = parse_form("sqrt(3)/12*e^{16}-1/4*e^{15}+sqrt(3)/12*e^{25}+1/4*e^{26}"
                          "-sqrt(3)/6*e^{34}",
                          6);
    CHECK(n12.coeff((1 << 0) | (1 << 5)) == Scalar(Rational(0), Rational(1, 12), 3));
    CHECK(n12.coeff((1 << 0) | (1 << 4)) == Scalar(Rational(-1, 4)));
}

TEST_CASE("canonicalization absorbs order/sign and kills repeats") {
    CHECK(parse_form("e^{21}", 6) == parse_form("-e^{12}", 6));
    CHECK(parse_form("e^{212}", 6, 3).is_zero());
    CHECK(parse_form("e^{12}-e^{12}", 6).is_zero());
}

TEST_CASE("parse errors carry a position and never crash") {
    CHECK_THROWS_AS(parse_form("e^{19}", 6), IndexOutOfRange);
    CHECK_THROWS_AS(parse_form("e^{12}+e^{123}", 6), MixedDegree);
    CHECK_THROWS_AS(parse_form("e^{12", 6), SyntaxError);
    CHECK_THROWS_AS(parse_form("++", 6), SyntaxError);
    CHECK_THROWS_AS(parse_form("2**e^{12}", 6), SyntaxError);
    CHECK_THROWS_AS(parse_form("", 6), SyntaxError);

    try {
        parse_form("e^{12}+e^{1", 6);
        CHECK(false);
    } catch (const SyntaxError& e) {
        CHECK(e.offset > 0);
    }
}

TEST_CASE("fuzzed invalid inputs yield SyntaxError-family failures, not crashes") {
    std::mt19937_64 rng(41);
    const std::string alphabet = "e^{}0123456789+-*/sqrt(), ";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(1, 24);
    for (int trial = 0; trial < 4000; ++trial) {
        std::string s;
        const int L = len(rng);
        for (int i = 0; i < L; ++i) s += alphabet[pick(rng)];
        try {
            auto f = parse_form(s, 6);
            (void)f;
        } catch (const Error&) {
            // any structured library error is fine; crashes are not
        }
    }
}

TEST_CASE("print . parse fixpoints") {
    const char* cases[] = {
        "e^{16}+e^{25}+e^{34}",
        "0",
        "2*e^{16}+sqrt(3)*e^{24}+e^{25}+sqrt(3)*e^{35}-e^{34}",
        "-5/4*e^{12}+e^{13}",
        "sqrt(3)/12*e^{16}-1/4*e^{15}",
    };
    for (const char* text : cases) {
        auto f = parse_form(text, 6);
        auto printed = print_form(f);
        CHECK(parse_form(printed, 6) == f);
        CHECK(print_form(parse_form(printed, 6)) == printed);
    }

    // canonical order is lexicographic on index tuples
    CHECK(print_form(parse_form("e^{23}+e^{16}", 6)) == "e^{16}+e^{23}");

    // mixed-surd coefficients survive the round trip
    KForm<Scalar> f(6, 2);
    f.add_term(0b11, Scalar(Rational(1, 2), Rational(-3, 2), 5));
    CHECK(parse_form(print_form(f), 6) == f);
}

TEST_CASE("structure tuples parse into validated Lie algebras") {
    auto abelian = parse_structure_equations("(0,0,0,0,0,0,0)");
    CHECK(abelian.dim() == 7);
    CHECK(abelian.series_flags().nilpotent);

    auto n9 = parse_structure_equations(
        "(0,0,e^{12},e^{13},e^{23},e^{15}+e^{24},e^{16}+e^{34}+e^{25})");
    CHECK(n9.dim() == 7);
    CHECK(n9.series_flags().nilpotent);
    // d eps^3 = e^{12} means [e1,e2] = -e3 under our sign convention
    ExactVector e1(7), e2(7);
    e1[0] = Scalar(1);
    e2[1] = Scalar(1);
    CHECK(n9.bracket(e1, e2)[2] == Scalar(-1));

    auto s10 = parse_structure_equations(
        "(e^{23},-e^{36},e^{26},e^{26}-e^{56},e^{36}+e^{46},0,"
        "2*e^{16}+e^{25}-e^{34}+sqrt(3)*e^{24}+sqrt(3)*e^{35})");
    CHECK(s10.dim() == 7);
    CHECK(s10.is_unimodular());

    CHECK_THROWS_AS(parse_structure_equations("(e^{23},e^{23})"), Error);

    // round trip
    auto printed = print_structure_tuple(n9.structure());
    auto again = parse_structure_equations(printed);
    CHECK(again.structure() == n9.structure());
}
