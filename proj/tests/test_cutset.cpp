#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "adhoc/channel.hpp"
#include "adhoc/cutset.hpp"
#include "adhoc/hierarchy.hpp"

using namespace adhoc;

namespace {

// composite Simpson on [a, b]
template <class F>
double simpson(F f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST(DenseBound, MatchesBruteForce) {
  const ChannelParams p{1.0, 2.0, 0.5, 3.0};
  const auto inst = sample_network(150, Regime::dense, 3);
  double want = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < inst.n; ++j)
      if (j != i) s += std::pow(inst.physical_distance(i, j), -3.0);
    want += std::log2(1.0 + p.P / p.N0 * s);
  }
  EXPECT_NEAR(dense_simo_upper_bound(inst, p), want, 1e-10 * want);
  EXPECT_THROW(dense_simo_upper_bound(sample_network(16, Regime::extended, 1), p), std::invalid_argument);
}

TEST(Cut, PartitionAndStrip) {
  const auto inst = sample_network(1024, Regime::extended, 4);
  const auto c = compute_cut(inst);
  EXPECT_EQ(c.S.size() + c.D.size(), 1024u);
  EXPECT_EQ(c.V_D.size() + c.D_far.size(), c.D.size());
  for (int i : c.V_D) EXPECT_LT(inst.positions[i].x * inst.side - c.cut_x, 1.0);
  for (int i : c.D_far) EXPECT_GE(inst.positions[i].x * inst.side - c.cut_x, 1.0);
  for (int i : c.S) EXPECT_LT(inst.positions[i].x * inst.side, c.cut_x);
}

TEST(DWeights, KernelMatchesDirectSum) {
  const auto inst = sample_network(512, Regime::extended, 5);
  const auto c = compute_cut(inst);
  const auto d = d_weights(c, 2.5);
  ASSERT_EQ(d.size(), c.S.size());
  for (std::size_t j = 0; j < c.S.size(); j += 17) EXPECT_NEAR(d[j], d_weight(c, c.S[j], 2.5), 1e-12 * d[j]);
}

TEST(DRegular, HandValues) {
  // terms 1 + 1/2 + 1/4 + 1/5 and 1 + 1/4 + 1/16 + 1/25
  EXPECT_NEAR(d_regular(1, 1, 2, 2.0), 1.95, 1e-12);
  EXPECT_NEAR(d_regular(1, 1, 2, 4.0), 1.3525, 1e-12);
  EXPECT_THROW(d_regular(0, 1, 2, 2.0), std::invalid_argument);
}

TEST(DRegular, TableMatchesDirect) {
  const int s = 9;
  for (double alpha : {2.0, 3.0}) {
    const auto t = d_regular_table(s, alpha);
    for (int kx = 1; kx <= s; ++kx)
      for (int ky = 1; ky <= s; ++ky) {
        const double want = d_regular(kx, ky, s, alpha);
        EXPECT_NEAR(t[(kx - 1) * s + ky - 1], want, 1e-12 * want);
      }
  }
}

TEST(Lemma10, FrozenTableMatchesQuadrature) {
  ASSERT_EQ(lemma10_table().size(), 4u);
  for (const auto& row : lemma10_table()) {
    const auto c = compute_lemma10_constants(row.alpha);
    EXPECT_NEAR(row.k2, c.k2, 1e-14 * c.k2);
    EXPECT_NEAR(row.k3, c.k3, 1e-14 * c.k3);
  }
}

TEST(Lemma10, IndependentOracles) {
  // alpha = 2: inner integral over v is atan(1/(2u)) / u
  const double k3 = simpson([](double u) { return std::atan(0.5 / u) / u; }, 1.0, 2.0);
  EXPECT_NEAR(lemma10_constants(2.0).k3, k3, 1e-10);
  const double k3_alpha4 = simpson([](double v) { return simpson([v](double u) { return std::pow(u * u + v * v, -2.0); }, 1.0, 2.0, 400); },
                                   0.0, 0.5, 400);
  EXPECT_NEAR(lemma10_constants(4.0).k3, k3_alpha4, 1e-10);
  EXPECT_NEAR(lemma10_constants(3.0).k2, 2 + 2 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(lemma10_constants(2.0).k2,
              (2 + std::numbers::pi + std::numbers::pi * std::log(3.0)) / std::log(4.0) + std::numbers::pi / 2, 1e-14);
  EXPECT_THROW(compute_lemma10_constants(1.5), std::invalid_argument);
}

TEST(Lemma10, SandwichOnSmallGrid) {
  for (double alpha : {2.0, 2.7, 3.5}) {
    const int s = 16;
    for (int kx = 1; kx <= s; ++kx)
      for (int ky = 1; ky <= s; ++ky) {
        const double d = d_regular(kx, ky, s, alpha);
        const auto b = dk_closed_bounds(kx, s * s, alpha);
        EXPECT_LE(b.lower, d);
        EXPECT_GE(b.upper, d);
      }
  }
}

TEST(PTot, SumOfWeights) {
  const ChannelParams p{2.0, 3.0, 1.0, 3.0};
  const auto inst = sample_network(400, Regime::extended, 6);
  const auto c = compute_cut(inst);
  double s = 0.0;
  for (int k : c.S) s += d_weight(c, k, 3.0);
  EXPECT_NEAR(p_tot(c, p), 6.0 * s, 1e-10 * s);
}

TEST(PTot, BelowRegularBound) {
  for (double alpha : {2.0, 3.0}) {
    ChannelParams p;
    p.alpha = alpha;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto inst = sample_network(1024, Regime::extended, seed);
      EXPECT_LE(p_tot(compute_cut(inst), p), p_tot_regular_bound(1024, p));
    }
  }
}

TEST(Equalized, UnitColumns) {
  const auto inst = sample_network(300, Regime::extended, 2);
  const auto c = compute_cut(inst);
  const auto m = build_equalized_matrix(c, 3.0, 1);
  EXPECT_EQ(m.cols.size() + m.dropped.size(), c.S.size());
  for (Eigen::Index k = 0; k < m.entries.cols(); ++k) EXPECT_NEAR(m.entries.col(k).squaredNorm(), 1.0, 1e-12);
}

TEST(SpectralNorm, MatchesSvd) {
  const auto h = channel_from_magnitudes(Eigen::MatrixXd::Random(30, 20).cwiseAbs(), 3).entries;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
  const double s = svd.singularValues()(0);
  EXPECT_NEAR(spectral_norm_sq(h), s * s, 1e-6 * s * s);
  EXPECT_THROW(spectral_norm_sq(Eigen::MatrixXcd(0, 0)), std::invalid_argument);
}

TEST(SpectralNorm, BelowTraceMoments) {
  const auto inst = sample_network(256, Regime::extended, 7);
  const auto c = compute_cut(inst);
  const auto m = build_equalized_matrix(c, 2.5, 4);
  const double sn = spectral_norm_sq(m);
  for (int l = 1; l <= 4; ++l) EXPECT_LE(sn, std::pow(trace_power(m.entries, l), 1.0 / l) * (1 + 1e-8));
  EXPECT_LE(sn, static_cast<double>(m.cols.size()));
}

TEST(TraceMoment, PowerMatchesProduct) {
  const auto h = channel_from_magnitudes(Eigen::MatrixXd::Random(4, 6).cwiseAbs(), 5).entries;
  const Eigen::MatrixXcd g = h.adjoint() * h;
  EXPECT_NEAR(trace_power(h, 3), (g * g * g).trace().real(), 1e-10);
}

TEST(TraceMoment, ExactOnRowVector) {
  // one row: H^*H has rank one with eigenvalue a^2 + b^2 whatever the phases
  EqualizedMatrix m;
  m.magnitude.resize(1, 2);
  m.magnitude << 0.6, 0.8;
  m.entries = m.magnitude.cast<std::complex<double>>();
  EXPECT_NEAR(trace_moment_exact(m, 2), 1.0, 1e-14);
  EXPECT_NEAR(trace_moment_exact(m, 3), 1.0, 1e-14);
}

TEST(TraceMoment, MonteCarloNearExact) {
  EqualizedMatrix m;
  m.magnitude.resize(2, 2);
  m.magnitude << 0.9, 0.3, 0.2, 0.7;
  const double exact = trace_moment_exact(m, 2);
  const auto mc = trace_moment(m, 2, 20000, 3);
  EXPECT_NEAR(mc.mean, exact, 4 * mc.std_error);
}

TEST(Catalan, ValuesAndOverflow) {
  EXPECT_EQ(catalan(0), 1u);
  EXPECT_EQ(catalan(5), 42u);
  EXPECT_EQ(catalan(15), 9694845u);
  EXPECT_EQ(catalan(35), 3116285494907301262ULL);
  EXPECT_THROW(catalan(40), std::overflow_error);
  EXPECT_THROW(catalan(-1), std::invalid_argument);
}

TEST(Cutset, BoundComposition) {
  ChannelParams p;
  p.alpha = 2.5;
  const auto inst = with_random_pairing(sample_network(1024, Regime::extended, 9), 9);
  const auto c = compute_cut(inst);
  const auto r = cutset_upper_bound(c, p, 0.05);
  EXPECT_NEAR(r.bound, 4 * (r.vd_term + r.far_term), 1e-9 * r.bound);
  EXPECT_NEAR(r.far_term, std::pow(1024.0, 0.05) * r.p_tot / p.N0 / std::log(2.0), 1e-9 * r.far_term);
  EXPECT_EQ(r.s_size + r.d_size, 1024);
  EXPECT_DOUBLE_EQ(r.theory_exponent, 0.75);
  SchemeConfig sc;
  EXPECT_GE(r.bound, run_bursty_extended(inst, p, sc).aggregate_rate);
  EXPECT_GE(r.bound, run_multihop_baseline(inst, p).aggregate_rate);
  EXPECT_THROW(cutset_upper_bound(c, p, 0.0), std::invalid_argument);
}

TEST(Cutset, TheoryExponent) {
  EXPECT_DOUBLE_EQ(scaling_exponent_theory(2.0), 1.0);
  EXPECT_DOUBLE_EQ(scaling_exponent_theory(3.0), 0.5);
  EXPECT_DOUBLE_EQ(scaling_exponent_theory(4.0), 0.5);
  EXPECT_THROW(scaling_exponent_theory(1.0), std::invalid_argument);
}
