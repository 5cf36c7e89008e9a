#include <set>

#include "doctest.h"
#include "g2cal/catalog.hpp"
#include "g2cal/extension.hpp"
#include "g2cal/seqparse.hpp"
#include "g2cal/soliton.hpp"

using namespace g2cal;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

/// contactization census entry point: a 7-dim algebra is a contactization
/// iff its center is one-dimensional and d theta restricted to the
/// complement of the generator is symplectic
bool census_contactization(const LieAlgebra& L) {
    auto z = L.center();
    if (z.size() != 1) return false;
    return is_contactization(L, z[0]);
}

}  // namespace

TEST_CASE("catalog loads and exposes entries") {
    CHECK(cat().all().size() >= 56);
    CHECK_THROWS_AS(cat().get("does_not_exist"), UnknownName);
    const auto& n12 = cat().get("n12");
    CHECK(n12.has("phi"));
    CHECK(n12.at("lambda") == "1/2");
    CHECK(n12.at("tau") == "1/2*e^{56}-1/2*e^{37}");
    CHECK(n12.has("soliton_D"));
}

TEST_CASE("every entry parses with the Jacobi identity and matches its flags") {
    for (const auto& e : cat().all()) {
        CAPTURE(e.name);
        auto L = e.algebra();
        if (e.has("unimodular")) CHECK(L.is_unimodular() == e.flag("unimodular"));
        if (e.has("nilpotent")) CHECK(L.series_flags().nilpotent == e.flag("nilpotent"));
        if (e.fields.count("class") && e.at("class") == "table1") {
            auto f = L.series_flags();
            CHECK(f.solvable);
            CHECK(!f.nilpotent);
        }
        if (e.has("center_dim"))
            CHECK(L.center().size() == std::stoul(e.at("center_dim")));
        if (e.has("der_dim"))
            CHECK(L.derivations().dimension() == std::stoul(e.at("der_dim")));
    }
}

TEST_CASE("contactization census: exactly n9..n12 among the nilpotent list") {
    std::set<std::string> got;
    for (const auto& name : cat().list({{"class", "nilpotent"}})) {
        auto L = cat().get(name).algebra();
        if (census_contactization(L)) got.insert(name);
        CHECK(census_contactization(L) == cat().get(name).flag("contactization"));
    }
    CHECK(got == std::set<std::string>{"n9", "n10", "n11", "n12"});
}

TEST_CASE("contactization census: exactly s10, s11 among the solvable list") {
    std::set<std::string> got;
    for (const auto& name : cat().list({{"class", "solvable"}})) {
        auto L = cat().get(name).algebra();
        if (census_contactization(L)) got.insert(name);
        CHECK(census_contactization(L) == cat().get(name).flag("contactization"));
    }
    CHECK(got == std::set<std::string>{"s10", "s11"});
    CHECK(cat().list({{"class", "solvable"}, {"contactization", "true"}}) ==
          std::vector<std::string>{"s10", "s11"});
}

TEST_CASE("every stored phi is closed and definite") {
    for (const auto& e : cat().all()) {
        if (!e.has("phi")) continue;
        CAPTURE(e.name);
        auto L = e.algebra();
        auto phi = parse_form(e.at("phi"), 7, 3);
        CHECK(L.d(phi).is_zero());
        auto data = g2_metric(phi);
        CHECK(data.definite);
        if (e.has("g_phi") && e.at("g_phi") == "identity")
            CHECK((data.g->matrix() - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() <
                  1e-10);
    }
}

TEST_CASE("stored torsion facts re-verify") {
    {
        const auto& e = cat().get("n12");
        auto L = e.algebra();
        auto phi = parse_form(e.at("phi"), 7, 3);
        auto tor = g2_torsion(L, phi);
        auto tau_expect = to_double(parse_form(e.at("tau"), 7, 2));
        CHECK(max_abs_coeff(tor.tau - tau_expect) < 1e-9);
    }
    {
        const auto& e = cat().get("s7");
        auto tor = g2_torsion(e.algebra(), parse_form(e.at("phi"), 7, 3));
        CHECK(std::sqrt(tor.tau_norm2) < 1e-10);
    }
}

TEST_CASE("stored soliton certificates re-solve with small residual") {
    const auto& e = cat().get("n12");
    auto L = e.algebra();
    auto phi = parse_form(e.at("phi"), 7, 3);
    const double lambda = parse_scalar_literal(e.at("lambda")).to_double();
    auto D = to_double(parse_matrix_literal(e.at("soliton_D")));
    CHECK(soliton_residual(L, phi, lambda, D) < 1e-8);

    auto cert = soliton_solve(L, phi);
    CHECK(cert.feasible);
    CHECK(std::abs(cert.lambda - lambda) < 1e-7);
    CHECK(cert.residual < 1e-8);
}

TEST_CASE("stored construction data passes verify_construction") {
    for (const char* name : {"n9_h", "g6_70"}) {
        const auto& e = cat().get(name);
        CAPTURE(name);
        auto h = e.algebra();
        auto rep = verify_construction(h, parse_form(e.at("omega0"), 6, 2),
                                       parse_form(e.at("omegatilde"), 6, 2),
                                       parse_form(e.at("rho"), 6, 3));
        CHECK(rep.ok);
        // the extension reproduces the named 7-dimensional entry when the
        // stored omega0 matches that entry's d eps^7
        if (e.has("extension_of") && e.at("extension_of") == "n9")
            CHECK(rep.extension->g.structure() ==
                  cat().get("n9").algebra().structure());
    }
}

TEST_CASE("stored lattice data re-verifies, including the printed B") {
    for (const char* name : {"s8", "s9"}) {
        const auto& e = cat().get(name);
        CAPTURE(name);
        auto h = parse_structure_equations(e.at("lattice_h"));
        auto D = parse_matrix_literal(e.at("lattice_D"));
        auto E = parse_matrix_literal(e.at("lattice_E"));
        auto chk = lattice_criterion(h, D, parse_time_expr(e.at("lattice_t0")), E);
        CHECK(chk.integer);
        auto B_expect = parse_matrix_literal(e.at("lattice_B"));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                CHECK(chk.B_rounded[i][j] ==
                      B_expect(i, j).rat().convert_to<long long>());
    }
}

TEST_CASE("Table 1: every listed algebra admits a symplectic form") {
    for (const auto& name : cat().list({{"class", "table1"}})) {
        CAPTURE(name);
        const auto& e = cat().get(name);
        auto h = e.algebra();
        auto res = obstruction_search(h, parse_form("0", 6, 2), 11);
        CHECK(res.found);
        CHECK(h.d(res.witness).is_zero());
        CHECK(!pfaffian_top(res.witness).is_zero());
    }
}

TEST_CASE("stored cohomology facts re-verify") {
    const auto& e = cat().get("g6_13a");
    auto h = e.algebra();
    auto H2 = h.cohomology(2);
    CHECK(H2.dimension() == std::stoul(e.at("h2_dim")));

    const auto& q = cat().get("n9_h");
    auto hq = q.algebra();
    CHECK(hq.exact_forms(2).size() == std::stoul(q.at("exact2_dim")));
    CHECK(hq.exact_forms(4).size() == std::stoul(q.at("exact4_dim")));
}

TEST_CASE("parameterized families instantiate and validate") {
    const auto& s6 = cat().get("s6");
    auto at1 = family_algebra(s6, Scalar(1));
    CHECK(at1.structure() == s6.algebra().structure());
    auto at2 = family_algebra(s6, Scalar(Rational(2, 3)));
    CHECK(at2.is_unimodular());
    CHECK(!at2.series_flags().nilpotent);
    CHECK_THROWS(family_algebra(s6, Scalar(-1)));
    CHECK_THROWS_AS(family_algebra(cat().get("s7"), Scalar(1)), UnknownName);

    const auto& a517 = cat().get("A5_17a");
    auto b = family_algebra(a517, Scalar(Rational(3, 2)));
    CHECK(b.dim() == 6);
    CHECK(b.is_unimodular());
}
