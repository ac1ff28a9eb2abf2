#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "focklab/counterexample.hpp"
#include "focklab/genfun.hpp"
#include "focklab/kernels.hpp"
#include "support/oracles.hpp"

using namespace focklab;

namespace {
SineType make_sine(double r_max) { return SineType::sigma_lattice(r_max); }
}  // namespace

TEST_CASE("parameter selection lands in the admissible window") {
    const CounterexampleParams p = choose_parameters(2.0, 0.25, 0.0);
    CHECK(p.eps == doctest::Approx(0.25));
    CHECK(p.kappa == doctest::Approx(0.6875));
    // The window is (1 - a/4 + eps/2 - gamma, 1 - beta - gamma); the pick
    // must sit strictly inside.
    CHECK(p.kappa > 1.0 - 0.5 + 0.125);
    CHECK(p.kappa < 1.0 - 0.25);
}

TEST_CASE("parameter selection rejects the summable regime") {
    CHECK_THROWS(choose_parameters(2.0, 0.5, 0.0));   // beta = a/4: no window
    CHECK_THROWS(choose_parameters(2.0, 0.6, 0.0));   // beta > a/4
    CHECK_THROWS(choose_parameters(2.0, -0.1, 0.0));  // negative drag
    CHECK_THROWS(choose_parameters(0.0, 0.1, 0.0));   // degenerate exponent
}

TEST_CASE("taylor window at radius 3 spans indices 15 through 21") {
    const SineType s = make_sine(12.0);
    const TaylorBlock b = build_block(s, 3.0, 0.25);
    CHECK(b.n_lo == 15);
    CHECK(b.n_hi == 21);
    CHECK(b.R == doctest::Approx(3.0));
    REQUIRE(b.s_n.size() == 7);
}

TEST_CASE("block evaluation equals the direct windowed sum") {
    const SineType s = make_sine(12.0);
    const TaylorBlock b = build_block(s, 3.0, 0.25);
    for (complex z : {complex{0.0, 0.0}, complex{1.2, -0.7}, complex{2.5, 2.0}}) {
        complex want{0.0, 0.0};
        for (int n = b.n_lo; n <= b.n_hi; ++n) {
            const LogComplex term = b.s_n[n - b.n_lo];
            if (term.is_zero() || z == complex{0.0, 0.0}) continue;
            want += term.to_complex_or_zero() * std::pow(z, n);
        }
        const complex got = b.eval_log(z).to_complex_or_zero();
        CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("block coefficient norm matches a term-by-term lgamma sum") {
    const SineType s = make_sine(12.0);
    const TaylorBlock b = build_block(s, 3.0, 0.25);
    double want = 0.0;
    for (int n = b.n_lo; n <= b.n_hi; ++n) {
        const LogComplex c = b.s_n[n - b.n_lo];
        if (c.is_zero()) continue;
        want += std::exp(2.0 * c.logmag + log_monomial_norm(n, 2.0));
    }
    CHECK(b.log_norm_sq(2.0) == doctest::Approx(std::log(want)).epsilon(1e-10));
}

TEST_CASE("the block tracks the sine on its own annulus") {
    const SineType s = make_sine(12.0);
    const TaylorBlock b = build_block(s, 3.0, 0.25);
    // The windowed sum reproduces S near |z| = R up to the recorded defect,
    // everything weighted by e^{-phi}.
    CHECK(b.annulus_defect < 1.0);
    double seen = 0.0;
    for (int j = 0; j < 32; ++j) {
        const complex z = std::polar(3.0, 0.196 * j + 0.05);
        const complex block = b.eval_log(z).to_complex_or_zero() * std::exp(-std::norm(z));
        const complex sine = [&] {
            const LogComplex v = s.eval_log(z);
            if (v.is_zero()) return complex{0.0, 0.0};
            return LogComplex::make(v.logmag - std::norm(z), v.phase).to_complex_or_zero();
        }();
        seen = std::max(seen, std::abs(block - sine));
    }
    CHECK(seen <= b.annulus_defect * (1.0 + 1e-9));
}

TEST_CASE("shell selection returns the literal schedule when admissible") {
    const SineType s = make_sine(21.0);
    const CounterexampleParams p = choose_parameters(2.0, 0.25, 0.0);
    const auto shells = select_shells(s, 3, p);
    REQUIRE(shells.size() == 3);
    CHECK(shells[0].R == doctest::Approx(3.0));
    CHECK(shells[1].R == doctest::Approx(7.0));
    CHECK(shells[2].R == doctest::Approx(15.0));
    CHECK(shells[0].N == 21);
    CHECK(shells[1].N == 97);
    CHECK(shells[2].N == 437);
    // Every block must keep a degree the enclosed nodes cannot reproduce.
    for (const Shell& sh : shells) CHECK(sh.block.n_hi >= static_cast<int>(sh.N));
    // Windows must be disjoint and increasing for the witness to be valid.
    for (std::size_t k = 1; k < shells.size(); ++k)
        CHECK(shells[k].block.n_lo > shells[k - 1].block.n_hi);
}

TEST_CASE("fewer shells fit in a short truncation") {
    const SineType s = make_sine(9.0);
    const CounterexampleParams p = choose_parameters(2.0, 0.25, 0.0);
    const auto shells = select_shells(s, 3, p);
    CHECK(shells.size() < 3);
    CHECK(shells.size() >= 1);
}

TEST_CASE("witness assembles shells with the kappa damping") {
    const SineType s = make_sine(21.0);
    const CounterexampleParams p = choose_parameters(2.0, 0.25, 0.0);
    BlockWitness bw(p, select_shells(s, 2, p));
    // Pointwise: the witness is the damped sum of its blocks.
    for (complex z : {complex{1.1, 0.3}, complex{2.8, -1.9}}) {
        complex want{0.0, 0.0};
        for (const Shell& sh : bw.shells()) {
            want += sh.block.eval_log(z).to_complex_or_zero() * std::pow(sh.R, -p.kappa);
        }
        const complex got = bw.eval_log(z).to_complex_or_zero();
        CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
    // Norm: disjoint windows make the squared norms add exactly.
    const auto per_shell = bw.shell_norm_sq();
    double total = 0.0;
    for (double v : per_shell) total += v;
    CHECK(bw.norm_phi() == doctest::Approx(std::sqrt(total)).epsilon(1e-12));
}

TEST_CASE("witness validation rejects malformed shell lists") {
    const SineType s = make_sine(21.0);
    const CounterexampleParams p = choose_parameters(2.0, 0.25, 0.0);
    auto shells = select_shells(s, 2, p);
    REQUIRE(shells.size() == 2);
    std::vector<Shell> reversed{shells[1], shells[0]};
    CHECK_THROWS(BlockWitness(p, reversed));
    std::vector<Shell> duplicated{shells[0], shells[0]};
    CHECK_THROWS(BlockWitness(p, duplicated));
    CHECK_THROWS(BlockWitness(p, std::vector<Shell>{}));
}

TEST_CASE("witness csv lists every windowed coefficient per shell") {
    const SineType s = make_sine(21.0);
    const CounterexampleParams p = choose_parameters(2.0, 0.25, 0.0);
    BlockWitness bw(p, select_shells(s, 2, p));
    std::stringstream ss;
    bw.write_csv(ss);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "shell,R,n,logmag,phase");
    std::size_t rows = 0;
    for (std::string line; std::getline(ss, line);) ++rows;
    std::size_t want = 0;
    for (const Shell& sh : bw.shells()) want += sh.block.s_n.size();
    CHECK(rows == want);
}

TEST_CASE("interior remainder of the witness is of the block scale") {
    // One shell, smallest stage: the partial sums at N = 21 cannot absorb a
    // block whose top degree is 21, so the defect stays comparable to the
    // witness itself.
    const SineType s = make_sine(21.0);
    const CounterexampleParams p = choose_parameters(2.0, 0.25, 0.0);
    BlockWitness bw(p, select_shells(s, 1, p));
    const Contour c = build_contour(s.zeros(), bw.shells()[0].N);
    QuadratureSpec spec;
    spec.truncation_radius = c.scale_radius() + 1.0;
    spec.abs_floor = 1e-12 * bw.norm_phi();
    const double A = interior_remainder_norm(bw, s, c, 0.25, spec);
    CHECK(A > 0.1 * bw.norm_phi());
    CHECK(A < 10.0 * bw.norm_phi());
}
