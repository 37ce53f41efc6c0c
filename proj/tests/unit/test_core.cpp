#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "retrodict/core/distribution.hpp"
#include "retrodict/core/divergence.hpp"
#include "retrodict/core/dynamics.hpp"
#include "retrodict/core/entropy.hpp"
#include "retrodict/core/io.hpp"
#include "retrodict/core/random_systems.hpp"
#include "retrodict/errors.hpp"
#include "retrodict/random.hpp"

using namespace retrodict;
using namespace retrodict::core;

namespace {

oracle::Table to_table(const TransitionKernel& k) {
  oracle::Table t(k.source_size());
  for (std::size_t a = 0; a < k.source_size(); ++a) t[a].assign(k.row(a).begin(), k.row(a).end());
  return t;
}

std::vector<double> to_vector(const DiscreteDistribution& p) { return {p.mass().begin(), p.mass().end()}; }

TransitionKernel two_state() { return TransitionKernel(Matrix(2, 2, {0.9, 0.1, 0.2, 0.8})); }

TransitionKernel cyclic_three() { return TransitionKernel(Matrix(3, 3, {0.5, 0.5, 0, 0, 0.5, 0.5, 0.5, 0, 0.5})); }

double h2(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

}  // namespace

TEST_SUITE("distribution") {
  TEST_CASE("weights are normalized and the raw deviation kept") {
    DiscreteDistribution p({1.0, 3.0});
    CHECK(p[0] == doctest::Approx(0.25));
    CHECK(p.raw_deviation() == doctest::Approx(3.0));
    CHECK_FALSE(p.was_normalized());
    CHECK(DiscreteDistribution({0.5, 0.5}).was_normalized());
  }

  TEST_CASE("invalid weights are rejected") {
    CHECK_THROWS_AS(DiscreteDistribution(std::vector<double>{}), InputError);
    CHECK_THROWS_AS(DiscreteDistribution({-0.1, 1.1}), InputError);
    CHECK_THROWS_AS(DiscreteDistribution({0.0, 0.0}), InputError);
    CHECK_THROWS_AS(DiscreteDistribution({NAN, 1.0}), InputError);
    CHECK_THROWS_AS(DiscreteDistribution({"a", "a"}, {0.5, 0.5}), InputError);
  }

  TEST_CASE("kernel rows are renormalized") {
    TransitionKernel k(Matrix(2, 2, {2.0, 2.0, 1.0, 3.0}));
    CHECK(k(0, 0) == doctest::Approx(0.5));
    CHECK(k(1, 1) == doctest::Approx(0.75));
    CHECK(k.max_row_deviation() == doctest::Approx(3.0));
    CHECK_THROWS_AS(TransitionKernel(Matrix(2, 2, {0.0, 0.0, 1.0, 0.0})), InputError);
  }
}

TEST_SUITE("entropy") {
  TEST_CASE("shannon entropy examples") {
    CHECK(shannon_entropy(DiscreteDistribution({1.0, 0.0, 0.0})) == 0.0);
    CHECK(shannon_entropy(DiscreteDistribution::uniform(4)) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(shannon_entropy(DiscreteDistribution({0.25, 0.75})) ==
          doctest::Approx(-0.25 * std::log(0.25) - 0.75 * std::log(0.75)).epsilon(1e-15));
    CHECK(shannon_entropy(DiscreteDistribution({0.25, 0.75})) == doctest::Approx(0.562335).epsilon(1e-6));
  }

  TEST_CASE("evolve") {
    const DiscreteDistribution p({0.2, 0.3, 0.5});
    CHECK(to_vector(evolve(p, TransitionKernel::identity(3))) == to_vector(p));
    const DiscreteDistribution q({0.1, 0.6, 0.3});
    const auto out = evolve(p, TransitionKernel::constant_rows(q, 3));
    for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == doctest::Approx(q[i]).epsilon(1e-15));

    const auto k = cyclic_three();
    const auto u = DiscreteDistribution::uniform(3);
    const auto evolved = evolve(u, k);
    for (std::size_t w = 0; w < 3; ++w) {
      double brute = 0.0;
      for (std::size_t a = 0; a < 3; ++a) brute += u[a] * k(a, w);
      CHECK(evolved[w] == doctest::Approx(brute).epsilon(1e-15));
      CHECK(evolved[w] == doctest::Approx(1.0 / 3.0));
    }
  }

  TEST_CASE("bayes inversion") {
    const auto id = bayes_invert(TransitionKernel::identity(3), DiscreteDistribution::uniform(3));
    for (std::size_t w = 0; w < 3; ++w)
      for (std::size_t a = 0; a < 3; ++a) CHECK(id.row(w)[a] == (a == w ? 1.0 : 0.0));

    const DiscreteDistribution p({0.1, 0.6, 0.3});
    const auto flat = bayes_invert(TransitionKernel::constant_rows(DiscreteDistribution({0.3, 0.3, 0.4}), 3), p);
    for (std::size_t w = 0; w < 3; ++w)
      for (std::size_t a = 0; a < 3; ++a) CHECK(flat.row(w)[a] == doctest::Approx(p[a]).epsilon(1e-15));

    // Hand arithmetic: P_t = (0.55, 0.45).
    const auto rk = bayes_invert(two_state(), DiscreteDistribution({0.5, 0.5}));
    CHECK(rk.row(0)[0] == doctest::Approx(9.0 / 11.0).epsilon(1e-15));
    CHECK(rk.row(0)[1] == doctest::Approx(2.0 / 11.0).epsilon(1e-15));
    CHECK(rk.row(1)[0] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(rk.row(1)[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  }

  TEST_CASE("zero-probability final states are masked, not fatal") {
    TransitionKernel k(Matrix(2, 3, {0.5, 0.5, 0.0, 0.2, 0.8, 0.0}));
    const auto rk = bayes_invert(k, DiscreteDistribution::uniform(2));
    CHECK(rk.unsupported_count() == 1);
    CHECK_FALSE(rk.supported(2));
    CHECK_THROWS_AS(retrodiction_entropy(rk, std::size_t{2}), UndefinedRetrodiction);
    CHECK(std::isfinite(average_retrodiction_entropy(k, DiscreteDistribution::uniform(2))));
  }

  TEST_CASE("retrodiction entropy of single rows") {
    const auto id = bayes_invert(TransitionKernel::identity(4), DiscreteDistribution::uniform(4));
    CHECK(retrodiction_entropy(id, std::size_t{1}) == 0.0);
    const auto flat = bayes_invert(TransitionKernel::constant_rows(DiscreteDistribution::uniform(5), 5),
                                   DiscreteDistribution::uniform(5));
    CHECK(retrodiction_entropy(flat, std::size_t{0}) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
    const auto rk = bayes_invert(two_state(), DiscreteDistribution({0.5, 0.5}));
    CHECK(retrodiction_entropy(rk, std::size_t{0}) == doctest::Approx(oracle::entropy({9.0 / 11, 2.0 / 11})));
    CHECK(retrodiction_entropy(rk, "1") == doctest::Approx(h2(1.0 / 9.0)));
  }

  TEST_CASE("averaged entropies") {
    CHECK(average_retrodiction_entropy(TransitionKernel::identity(5), DiscreteDistribution::uniform(5)) == 0.0);
    const DiscreteDistribution p({0.1, 0.2, 0.7});
    CHECK(average_retrodiction_entropy(TransitionKernel::constant_rows(DiscreteDistribution({0.5, 0.5}), 3), p) ==
          doctest::Approx(shannon_entropy(p)).epsilon(1e-14));
    const DiscreteDistribution half({0.5, 0.5});
    CHECK(average_retrodiction_entropy(two_state(), half) ==
          doctest::Approx(0.55 * h2(9.0 / 11.0) + 0.45 * h2(1.0 / 9.0)).epsilon(1e-14));

    CHECK(average_transition_entropy(TransitionKernel::identity(5), DiscreteDistribution::uniform(5)) == 0.0);
    const auto doubly = TransitionKernel::constant_rows(DiscreteDistribution::uniform(6), 6);
    CHECK(average_transition_entropy(doubly, DiscreteDistribution::uniform(6)) ==
          doctest::Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(average_transition_entropy(two_state(), half) == doctest::Approx(0.5 * h2(0.9) + 0.5 * h2(0.2)).epsilon(1e-14));
  }

  TEST_CASE("posterior dispersion") {
    const Labels two{"0", "1"};
    RetrodictionKernel delta(two, {"w"}, Matrix(1, 2, {1.0, 0.0}), {true});
    const std::vector<std::vector<double>> line2{{0.0}, {1.0}};
    CHECK(posterior_dispersion(delta, 0, line2) == 0.0);
    RetrodictionKernel half(two, {"w"}, Matrix(1, 2, {0.5, 0.5}), {true});
    // Four ordered pairs, two at squared distance 1.
    CHECK(posterior_dispersion(half, 0, line2) == doctest::Approx(2 * 0.25 * 1.0));
    RetrodictionKernel third({"0", "1", "2"}, {"w"}, Matrix(1, 3, 1.0 / 3.0), {true});
    const std::vector<std::vector<double>> line3{{0.0}, {1.0}, {2.0}};
    double brute = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) brute += (i - j) * (i - j) / 9.0;
    CHECK(posterior_dispersion(third, 0, line3) == doctest::Approx(brute).epsilon(1e-15));
    CHECK(posterior_dispersion(third, 0, line3) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  }
}

TEST_SUITE("divergence") {
  TEST_CASE("kl divergence examples") {
    const DiscreteDistribution p({0.3, 0.7});
    CHECK(kl_divergence(p, p) == 0.0);
    CHECK(kl_divergence(DiscreteDistribution({1.0, 0.0}), DiscreteDistribution({0.5, 0.5})) ==
          doctest::Approx(1.0 * std::log(1.0 / 0.5)).epsilon(1e-15));
    const double inf = kl_divergence(DiscreteDistribution({0.5, 0.5}), DiscreteDistribution({1.0, 0.0}));
    CHECK(std::isinf(inf));
    CHECK(inf > 0);
  }

  TEST_CASE("kl family on special kernels") {
    const auto fam = averaged_kl_family(TransitionKernel::identity(3), DiscreteDistribution::uniform(3));
    CHECK(std::isinf(fam.t_t));
    CHECK(fam.any_infinite());
    const auto flat = averaged_kl_family(TransitionKernel::constant_rows(DiscreteDistribution({0.2, 0.8}), 4),
                                         DiscreteDistribution({0.1, 0.2, 0.3, 0.4}));
    for (const auto& [name, value] : flat.entries()) {
      CAPTURE(name);
      CHECK(std::abs(value) < 1e-15);
    }
  }

  TEST_CASE("overlap equality on a random 6-state kernel") {
    auto engine = make_stream(6, {1});
    const auto k = random_kernel(6, 6, engine);
    const auto p = random_distribution(6, engine);
    const auto fam = averaged_kl_family(k, p);
    CHECK(std::abs(fam.r_r - fam.t_t) < 1e-10);
  }

  TEST_CASE("kl relations") {
    auto engine = make_stream(4, {2});
    const auto k = random_kernel(4, 4, engine);
    const auto p = random_distribution(4, engine);
    const auto report = verify_kl_relations(k, p);
    CHECK(report.relations.size() == 8);
    CHECK(report.unchecked() == 0);
    CHECK(report.max_residual() < 1e-12);

    const auto flat = verify_kl_relations(TransitionKernel::constant_rows(DiscreteDistribution({0.6, 0.4}), 3),
                                          DiscreteDistribution({0.2, 0.3, 0.5}));
    CHECK(flat.max_residual() == doctest::Approx(0.0).scale(1e-15));
  }

  TEST_CASE("stationary prior: S_t = S_0 and the two overlap forms coincide") {
    auto engine = make_stream(7, {3});
    const auto k = random_kernel(5, 5, engine);
    const auto pi = stationary_distribution(k);
    const auto report = entropy_report(k, pi);
    CHECK(report.st() == doctest::Approx(report.s0()).epsilon(1e-12));
    CHECK(report.s0() - report.avg_sr() == doctest::Approx(report.st() - report.avg_st()).epsilon(1e-10));
    CHECK(std::abs(report.kl_family().r_p0 - (report.s0() - report.avg_sr())) < 1e-10);
  }

  TEST_CASE("mutual information") {
    const auto id = TransitionKernel::identity(4);
    CHECK(mutual_information(id, DiscreteDistribution::uniform(4)) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(mutual_information(TransitionKernel::constant_rows(DiscreteDistribution({0.5, 0.5}), 3),
                             DiscreteDistribution({0.2, 0.3, 0.5})) == doctest::Approx(0.0).scale(1e-15));
    auto engine = make_stream(5, {4});
    for (int trial = 0; trial < 20; ++trial) {
      const auto k = random_kernel(5, 5, engine);
      const auto p = random_distribution(5, engine);
      CHECK(std::abs(mutual_information(k, p) - oracle::mutual_information(to_table(k), to_vector(p))) < 1e-12);
    }
  }
}

TEST_SUITE("entropy report") {
  TEST_CASE("identity kernel with uniform prior") {
    const auto r = entropy_report(TransitionKernel::identity(6), DiscreteDistribution::uniform(6));
    CHECK(r.s0() == doctest::Approx(std::log(6.0)));
    CHECK(r.st() == doctest::Approx(std::log(6.0)));
    CHECK(r.avg_st() == 0.0);
    CHECK(r.avg_sr() == 0.0);
    CHECK(r.mutual_info() == doctest::Approx(std::log(6.0)));
  }

  TEST_CASE("fundamental identity on a random 8-state system against a joint-table oracle") {
    auto engine = make_stream(8, {5});
    const auto k = random_kernel(8, 8, engine);
    const auto p = random_distribution(8, engine);
    const auto r = entropy_report(k, p);
    CHECK(std::abs(r.fundamental_residual()) < 1e-12);
    CHECK(r.avg_sr() == doctest::Approx(oracle::average_retrodiction_entropy(to_table(k), to_vector(p))).epsilon(1e-13));
  }

  TEST_CASE("stationary prior of a random 5-state kernel") {
    auto engine = make_stream(5, {6});
    const auto k = random_kernel(5, 5, engine);
    const auto r = entropy_report(k, stationary_distribution(k));
    CHECK(std::abs(r.avg_sr() - r.avg_st()) < 1e-10);
  }

  TEST_CASE("mismatched sizes are input errors") {
    CHECK_THROWS_AS(entropy_report(TransitionKernel::identity(3), DiscreteDistribution::uniform(4)), InputError);
  }
}

TEST_SUITE("identity properties") {
  TEST_CASE("1000 random systems, 2 to 64 states") {
    auto engine = make_stream(2024, {7});
    std::uniform_int_distribution<std::size_t> size(2, 64);
    std::uniform_real_distribution<double> sparsity(0.0, 0.6);
    double worst_fundamental = 0.0, worst_mi = 0.0, worst_overlap = 0.0, worst_kl = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = size(engine);
      const std::size_t m = size(engine);
      const auto k = random_kernel(n, m, engine, trial % 2 ? sparsity(engine) : 0.0);
      const auto p = random_distribution(n, engine);
      const auto r = entropy_report(k, p);
      worst_fundamental = std::max(worst_fundamental, std::abs(r.fundamental_residual()));
      worst_mi = std::max(worst_mi, std::abs(r.mutual_info_residual()));
      if (std::isfinite(r.kl_family().t_t)) {
        worst_overlap = std::max(worst_overlap, std::abs(r.kl_family().t_t - r.kl_family().r_r));
      }
      worst_kl = std::max(worst_kl, verify_kl_relations(k, p).max_residual());
      CHECK(r.avg_sr() >= 0.0);
      CHECK(r.avg_sr() <= std::log(static_cast<double>(n)) + 1e-12);
      CHECK(r.avg_sr() <= r.s0() + 1e-12);
    }
    CHECK(worst_fundamental < 1e-10);
    CHECK(worst_mi < 1e-10);
    CHECK(worst_overlap < 1e-10);
    CHECK(worst_kl < 1e-10);
  }

  TEST_CASE("equilibrium equality for ergodic kernels") {
    auto engine = make_stream(99, {8});
    std::uniform_int_distribution<std::size_t> size(2, 20);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = size(engine);
      const auto k = random_kernel(n, n, engine);
      const auto r = entropy_report(k, stationary_distribution(k));
      CHECK(std::abs(r.avg_sr() - r.avg_st()) < 1e-9);
    }
  }

  TEST_CASE("Bayes round trip recovers the forward kernel") {
    auto engine = make_stream(11, {9});
    for (int trial = 0; trial < 50; ++trial) {
      const auto k = random_kernel(6, 4, engine);
      const auto p = random_distribution(6, engine);
      const auto rk = bayes_invert(k, p);
      const auto back = bayes_invert(as_transition_kernel(rk), evolve(p, k));
      for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t w = 0; w < 4; ++w) CHECK(std::abs(back.row(a)[w] - k(a, w)) < 1e-12);
    }
  }

  TEST_CASE("long-time limit: retrodiction forgets the observation") {
    auto engine = make_stream(12, {10});
    const auto one = random_kernel(5, 5, engine);
    const auto p0 = random_distribution(5, engine);
    const auto pi = stationary_distribution(one);
    auto k = one;
    for (int i = 0; i < 200; ++i) {
      double gap = 0.0;
      const auto pt = evolve(p0, k);
      for (std::size_t w = 0; w < 5; ++w) gap = std::max(gap, std::abs(pt[w] - pi[w]));
      if (gap < 1e-12) break;
      k = compose(k, one);
    }
    const auto rk = bayes_invert(k, p0);
    for (std::size_t w = 0; w < 5; ++w) {
      double tv = 0.0;
      for (std::size_t a = 0; a < 5; ++a) tv += 0.5 * std::abs(rk.row(w)[a] - p0[a]);
      CHECK(tv < 1e-8);
    }
    CHECK(std::abs(average_retrodiction_entropy(k, p0) - shannon_entropy(p0)) < 1e-8);
  }
}

TEST_SUITE("dynamics") {
  TEST_CASE("stationary distribution is a fixed point") {
    const auto pi = stationary_distribution(cyclic_three());
    for (std::size_t i = 0; i < 3; ++i) CHECK(pi[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    const auto pi2 = stationary_distribution(two_state());
    CHECK(pi2[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  }

  TEST_CASE("kl monotonicity trivial cases") {
    const std::vector<TransitionKernel> chain(5, cyclic_three());
    const DiscreteDistribution p({0.2, 0.5, 0.3});
    const auto same = kl_monotonicity_check(chain, p, p);
    for (double d : same.divergences) CHECK(d == 0.0);
    const std::vector<TransitionKernel> flat(4, TransitionKernel::constant_rows(DiscreteDistribution({0.1, 0.2, 0.7}), 3));
    const auto mixed = kl_monotonicity_check(flat, p, DiscreteDistribution({0.6, 0.2, 0.2}));
    CHECK(mixed.divergences[0] > 0.0);
    for (std::size_t t = 1; t < mixed.divergences.size(); ++t) CHECK(mixed.divergences[t] == doctest::Approx(0.0).scale(1e-15));
  }

  TEST_CASE("kl monotonicity on a random 6-state chain") {
    auto engine = make_stream(6, {11});
    std::vector<TransitionKernel> chain;
    for (int t = 0; t < 20; ++t) chain.push_back(random_kernel(6, 6, engine));
    std::size_t violations = 0;
    for (int pair = 0; pair < 100; ++pair) {
      const auto p = random_distribution(6, engine);
      const auto q = random_distribution(6, engine);
      const auto report = kl_monotonicity_check(chain, p, q);
      violations += report.violations;
      // Independent evaluation of the sequence.
      auto pv = to_vector(p), qv = to_vector(q);
      for (std::size_t t = 0; t < chain.size(); ++t) {
        std::vector<double> pn(6, 0.0), qn(6, 0.0);
        for (std::size_t a = 0; a < 6; ++a)
          for (std::size_t w = 0; w < 6; ++w) {
            pn[w] += pv[a] * chain[t](a, w);
            qn[w] += qv[a] * chain[t](a, w);
          }
        pv = pn;
        qv = qn;
        const double expected = oracle::kl(pv, qv);
        CHECK(std::abs(report.divergences[t + 1] - expected) < 1e-14 + 1e-10 * expected);
      }
    }
    CHECK(violations == 0);
  }

  TEST_CASE("rate bound: terms match a direct evaluation") {
    auto engine = make_stream(5, {12});
    const auto one = random_kernel(5, 5, engine);
    const auto p0 = random_distribution(5, engine);
    const auto report = rate_bound_check(one, p0, 4);
    REQUIRE(report.steps.size() == 4);
    auto oracle_terms = [&](const TransitionKernel& k) {
      const auto table = to_table(k);
      const auto prior = to_vector(p0);
      const auto pt = oracle::column_sums(oracle::joint(table, prior));
      double avg_st = 0.0, tt = 0.0;
      for (std::size_t a = 0; a < 5; ++a) {
        avg_st += prior[a] * oracle::entropy(table[a]);
        for (std::size_t b = 0; b < 5; ++b) tt += prior[a] * prior[b] * oracle::kl(table[a], table[b]);
      }
      std::vector<double> p0r(5);
      for (std::size_t w = 0; w < 5; ++w) {
        std::vector<double> post(5);
        for (std::size_t a = 0; a < 5; ++a) post[a] = prior[a] * table[a][w] / pt[w];
        p0r[w] = oracle::kl(prior, post);
      }
      return std::tuple{oracle::entropy(pt), avg_st, tt, p0r, pt};
    };
    auto k = TransitionKernel::identity(5);
    for (std::size_t t = 0; t < 4; ++t) {
      const auto next = compose(k, one);
      const auto [st0, ast0, tt0, r0, pt0] = oracle_terms(k);
      const auto [st1, ast1, tt1, r1, pt1] = oracle_terms(next);
      const auto& step = report.steps[t];
      CHECK(step.delta_st == doctest::Approx(st1 - st0).epsilon(1e-10));
      CHECK(step.delta_avg_st == doctest::Approx(ast1 - ast0).epsilon(1e-10));
      if (t > 0) {
        CHECK(step.delta_kl_tt == doctest::Approx(tt1 - tt0).epsilon(1e-10));
        double avg = 0.0;
        for (std::size_t w = 0; w < 5; ++w) avg += pt0[w] * (r1[w] - r0[w]);
        CHECK(step.avg_delta_kl_p0_r == doctest::Approx(avg).epsilon(1e-10));
      } else {
        CHECK_FALSE(step.verifiable);  // the identity kernel has infinite overlap
      }
      k = next;
    }
  }

  TEST_CASE("rate bound trivial kernels") {
    const DiscreteDistribution p({0.3, 0.3, 0.4});
    const auto id = rate_bound_check(TransitionKernel::identity(3), p, 5);
    CHECK(id.violations == 0);
    CHECK(id.unverifiable == 0);
    for (const auto& s : id.steps) {
      CHECK(s.delta_st == 0.0);
      CHECK(s.holds);
    }
    const auto flat = rate_bound_check(TransitionKernel::constant_rows(DiscreteDistribution({0.5, 0.25, 0.25}), 3), p, 5);
    for (std::size_t t = 1; t < flat.steps.size(); ++t) {
      CHECK(flat.steps[t].delta_st == 0.0);
      CHECK(flat.steps[t].bound == doctest::Approx(0.0).scale(1e-15));
    }
  }

  TEST_CASE("rate bound on a strictly positive random 5-state kernel, 30 steps") {
    auto engine = make_stream(30, {13});
    const auto one = random_kernel(5, 5, engine);
    const auto report = rate_bound_check(one, random_distribution(5, engine), 30);
    CHECK(report.violations == 0);
  }
}

TEST_SUITE("io") {
  TEST_CASE("kernel csv with labels, comments and blank lines") {
    const auto k = parse_kernel_csv("# two states\nsource,x,y\n\na,0.9,0.1\nb,0.2,0.8\n");
    CHECK(k.source_labels() == Labels{"a", "b"});
    CHECK(k.target_labels() == Labels{"x", "y"});
    CHECK(k(1, 0) == doctest::Approx(0.2));
  }

  TEST_CASE("malformed csv reports the position") {
    try {
      parse_kernel_csv("x,y\n0.5,0.5\n0.5\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_kernel_csv("x,y\n0.5,abc\n"), ParseError);
    CHECK_THROWS_AS(parse_kernel_csv("x,y\n0.5,nan\n"), InputError);
  }

  TEST_CASE("kernel json round trip") {
    auto engine = make_stream(1, {14});
    const auto k = random_kernel(3, 4, engine);
    std::ostringstream out;
    write_kernel_json(out, k);
    const auto back = parse_kernel_json(out.str());
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t w = 0; w < 4; ++w) CHECK(back(a, w) == doctest::Approx(k(a, w)).epsilon(1e-15));
    CHECK(back.target_labels() == k.target_labels());
    CHECK_THROWS_AS(parse_kernel_json("{\"labels\": [\"a\"], \"rows\": [[1.0]"), ParseError);
  }

  TEST_CASE("distribution json round trip") {
    const DiscreteDistribution p({"u", "v"}, {0.25, 0.75});
    std::ostringstream out;
    write_distribution_json(out, p);
    const auto back = parse_distribution_json(out.str());
    CHECK(back.labels() == p.labels());
    CHECK(back[1] == p[1]);
  }

  TEST_CASE("report json uses fixed keys and quotes infinities") {
    const auto json = report_to_json(entropy_report(TransitionKernel::identity(2), DiscreteDistribution::uniform(2)));
    for (const char* key : {"s0", "st", "avg_st", "avg_sr", "mutual_info", "kl_t_t", "kl_t_pt", "kl_pt_t", "kl_r_r",
                            "kl_r_p0", "kl_p0_r"}) {
      CAPTURE(key);
      CHECK(json.find(std::string("\"") + key + "\"") != std::string::npos);
    }
    CHECK(json.find("\"inf\"") != std::string::npos);
  }
}
