#include "adhoc/cutset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "adhoc/channel.hpp"
#include "lemma10_table.hpp"

namespace adhoc {

namespace {

std::vector<Point> points_of(const NetworkInstance& inst, const std::vector<int>& ids) {
  std::vector<Point> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(inst.positions[i]);
  return out;
}

}  // namespace

double dense_simo_upper_bound(const NetworkInstance& inst, const ChannelParams& p) {
  if (inst.regime != Regime::dense) throw std::invalid_argument("dense SIMO bound needs a dense network");
  validate(p);
  const auto sums = kernels::inverse_power_sums_self(inst.positions, inst.side, p.alpha);
  double total = 0.0;
  for (double s : sums) total += std::log2(1.0 + p.P / p.N0 * p.G * s);
  return total;
}

CutGeometry compute_cut(const NetworkInstance& inst) {
  CutGeometry c;
  c.inst = &inst;
  c.cut_x = inst.side / 2;
  for (int i = 0; i < inst.n; ++i) {
    const double x = inst.positions[i].x * inst.side;
    if (x < c.cut_x) {
      c.S.push_back(i);
    } else {
      c.D.push_back(i);
      (x - c.cut_x < 1.0 ? c.V_D : c.D_far).push_back(i);
    }
  }
  return c;
}

double d_weight(const CutGeometry& cut, int k, double alpha) {
  const auto& inst = *cut.inst;
  double s = 0.0;
  for (int i : cut.D_far) {
    const double r = inst.physical_distance(i, k);
    check_far_field(r, inst.side);
    s += std::pow(r, -alpha);
  }
  return s;
}

std::vector<double> d_weights(const CutGeometry& cut, double alpha) {
  const auto& inst = *cut.inst;
  return kernels::inverse_power_sums(points_of(inst, cut.S), points_of(inst, cut.D_far), inst.side, alpha);
}

double d_regular(int kx, int ky, int sqrt_n, double alpha) {
  if (kx < 1 || ky < 1 || kx > sqrt_n || ky > sqrt_n) throw std::invalid_argument("lattice index out of range");
  double s = 0.0;
  for (int ix = 1; ix <= sqrt_n; ++ix)
    for (int iy = 1; iy <= sqrt_n; ++iy) {
      const double dx = ix + kx - 1, dy = iy - ky;
      s += std::pow(dx * dx + dy * dy, -alpha / 2);
    }
  return s;
}

std::vector<double> d_regular_table(int s, double alpha) {
  // w[x][y] = (x^2 + y^2)^{-alpha/2}, x in 1..2s, y in 0..s-1; prefix sums over y
  const int xs = 2 * s;
  std::vector<double> pre(static_cast<std::size_t>(xs + 1) * s, 0.0);
  auto P = [&](int x, int y) -> double& { return pre[static_cast<std::size_t>(x) * s + y]; };
  for (int x = 1; x <= xs; ++x) {
    double acc = 0.0;
    for (int y = 0; y < s; ++y) {
      acc += std::pow(static_cast<double>(x) * x + static_cast<double>(y) * y, -alpha / 2);
      P(x, y) = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(s) * s, 0.0);
  for (int kx = 1; kx <= s; ++kx)
    for (int ky = 1; ky <= s; ++ky) {
      double d = 0.0;
      for (int ix = 1; ix <= s; ++ix) {
        const int x = ix + kx - 1;
        d += P(x, ky - 1) + P(x, s - ky) - P(x, 0);
      }
      out[static_cast<std::size_t>(kx - 1) * s + (ky - 1)] = d;
    }
  return out;
}

Lemma10Constants compute_lemma10_constants(double alpha) {
  if (!(alpha >= 2.0)) throw std::invalid_argument("alpha must be >= 2");
  using boost::math::quadrature::gauss;
  Lemma10Constants c;
  c.alpha = alpha;
  const double pi = std::numbers::pi;
  c.k2 = alpha == 2.0 ? (2 + pi + pi * std::log(3.0)) / std::log(4.0) + pi / 2 : 2 + pi + pi / (alpha - 2);
  c.k3 = gauss<double, 30>::integrate(
      [alpha](double v) {
        return gauss<double, 30>::integrate([&](double u) { return std::pow(u * u + v * v, -alpha / 2); }, 1.0, 2.0);
      },
      0.0, 0.5);
  return c;
}

const std::vector<Lemma10Constants>& lemma10_table() { return detail::kLemma10Table; }

Lemma10Constants lemma10_constants(double alpha) {
  for (const auto& c : lemma10_table())
    if (c.alpha == alpha) return c;
  return compute_lemma10_constants(alpha);
}

DkBounds dk_closed_bounds(int kx, double n, double alpha) {
  if (kx < 1) throw std::invalid_argument("k_x must be >= 1");
  const Lemma10Constants c = lemma10_constants(alpha);
  const double base = std::pow(static_cast<double>(kx), 2.0 - alpha);
  return {c.k3 * base, alpha == 2.0 ? c.k2 * std::log(n) : c.k2 * base};
}

double p_tot(const CutGeometry& cut, const ChannelParams& p) {
  double s = 0.0;
  for (double d : d_weights(cut, p.alpha)) s += d;
  return p.P * p.G * s;
}

double p_tot_regular_bound(int n, const ChannelParams& p) {
  const int s = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
  double sum = 0.0;
  for (double d : d_regular_table(s, p.alpha)) sum += d;
  const double ln = std::log(static_cast<double>(n));
  return 2.0 * ln * ln * p.P * p.G * sum;
}

EqualizedMatrix build_equalized_matrix(const CutGeometry& cut, double alpha, std::uint64_t seed) {
  if (cut.D_far.empty()) throw std::invalid_argument("equalized matrix needs a non-empty far set");
  const auto& inst = *cut.inst;
  EqualizedMatrix m;
  m.rows = cut.D_far;
  const auto d = d_weights(cut, alpha);
  for (std::size_t j = 0; j < cut.S.size(); ++j) {
    if (d[j] > 0.0) {
      m.cols.push_back(cut.S[j]);
      m.d.push_back(d[j]);
    } else {
      m.dropped.push_back(cut.S[j]);
    }
  }
  m.magnitude.resize(m.rows.size(), m.cols.size());
  for (std::size_t k = 0; k < m.cols.size(); ++k) {
    const double norm = 1.0 / std::sqrt(m.d[k]);
    for (std::size_t i = 0; i < m.rows.size(); ++i)
      m.magnitude(i, k) = std::pow(inst.physical_distance(m.rows[i], m.cols[k]), -alpha / 2) * norm;
  }
  ChannelMatrix h = channel_from_magnitudes(m.magnitude, seed);
  m.entries = std::move(h.entries);
  return m;
}

double spectral_norm_sq(const Eigen::MatrixXcd& h, double rel_tol, int max_iter) {
  if (h.size() == 0) throw std::invalid_argument("spectral norm of an empty matrix");
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(h.cols()) / std::sqrt(static_cast<double>(h.cols()));
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXcd u = h * v;
    const double lambda = u.squaredNorm();
    Eigen::VectorXcd w = h.adjoint() * u;
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    if (it > 0 && std::abs(lambda - prev) <= rel_tol * lambda) return lambda;
    prev = lambda;
  }
  throw NumericError("power iteration did not converge");
}

double spectral_norm_sq(const EqualizedMatrix& m) { return spectral_norm_sq(m.entries); }

double max_row_sum_sq(const EqualizedMatrix& m) { return m.magnitude.array().square().rowwise().sum().maxCoeff(); }

double trace_power(const Eigen::MatrixXcd& h, int l) {
  if (l < 1) throw std::invalid_argument("moment order must be >= 1");
  const Eigen::MatrixXcd g = h.rows() <= h.cols() ? Eigen::MatrixXcd(h * h.adjoint())
                                                  : Eigen::MatrixXcd(h.adjoint() * h);
  if (l == 1) return g.trace().real();
  Eigen::MatrixXcd pw = g;
  for (int i = 2; i < l; ++i) pw = pw * g;
  // Tr(pw g) without forming the product
  return (pw.array() * g.transpose().array()).sum().real();
}

kernels::MeanEstimate trace_moment(const EqualizedMatrix& m, int l, int trials, std::uint64_t seed) {
  if (l < 1) throw std::invalid_argument("moment order must be >= 1");
  auto v = kernels::run_trials(trials, seed, [&](int, Rng& rng) {
    ChannelMatrix local;
    local.magnitude = m.magnitude;
    redraw_phases(local, rng);
    return trace_power(local.entries, l);
  });
  return kernels::summarize(v);
}

double trace_moment_exact(const EqualizedMatrix& m, int l) {
  if (l < 1) throw std::invalid_argument("moment order must be >= 1");
  const Eigen::Index rows = m.magnitude.rows(), cols = m.magnitude.cols();
  const int entries = static_cast<int>(rows * cols);
  const int k = 2 * l + 1;
  double combos = std::pow(static_cast<double>(k), entries);
  if (combos > 2e7) throw std::invalid_argument("matrix too large for exact phase averaging");
  const long total = static_cast<long>(combos);
  std::vector<int> idx(entries, 0);
  Eigen::MatrixXcd h(rows, cols);
  double sum = 0.0;
  for (long c = 0; c < total; ++c) {
    long r = c;
    for (int e = 0; e < entries; ++e) {
      idx[e] = static_cast<int>(r % k);
      r /= k;
    }
    for (int e = 0; e < entries; ++e) {
      const Eigen::Index i = e % rows, j = e / rows;
      h(i, j) = std::polar(m.magnitude(i, j), 2.0 * std::numbers::pi * idx[e] / k);
    }
    sum += trace_power(h, l);
  }
  return sum / static_cast<double>(total);
}

std::uint64_t catalan(int l) {
  if (l < 0) throw std::invalid_argument("catalan index must be >= 0");
  unsigned __int128 c = 1;
  for (int i = 0; i < l; ++i) {
    // C_{i+1} = C_i * 2(2i+1) / (i+2), exact at every step
    c = c * (2 * (2 * static_cast<unsigned __int128>(i) + 1));
    c /= static_cast<unsigned __int128>(i + 2);
    if (c > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("catalan number overflows 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

CutsetReport cutset_upper_bound(const CutGeometry& cut, const ChannelParams& p, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  validate(p);
  const auto& inst = *cut.inst;
  CutsetReport r;
  r.n = inst.n;
  r.alpha = p.alpha;
  r.epsilon = epsilon;
  r.s_size = static_cast<int>(cut.S.size());
  r.d_size = static_cast<int>(cut.D.size());
  r.vd_size = static_cast<int>(cut.V_D.size());
  r.dfar_size = static_cast<int>(cut.D_far.size());
  if (!cut.V_D.empty() && !cut.S.empty()) {
    // coherent MISO capacity into each strip node under per-node power P
    const auto amp = kernels::inverse_power_sums(points_of(inst, cut.V_D), points_of(inst, cut.S), inst.side,
                                                 p.alpha / 2);
    for (double a : amp) r.vd_term += std::log2(1.0 + p.P * p.G / p.N0 * a * a);
  }
  r.p_tot = cut.D_far.empty() ? 0.0 : p_tot(cut, p);
  r.far_term = std::pow(static_cast<double>(inst.n), epsilon) * r.p_tot / p.N0 * std::numbers::log2e;
  r.bound = 4.0 * (r.vd_term + r.far_term);
  r.theory_exponent = scaling_exponent_theory(p.alpha);
  return r;
}

double scaling_exponent_theory(double alpha) {
  if (!(alpha >= 2.0)) throw std::invalid_argument("alpha must be >= 2");
  return alpha <= 3.0 ? 2.0 - alpha / 2 : 0.5;
}

void to_json(nlohmann::json& j, const CutsetReport& r) {
  j = {{"n", r.n},
       {"alpha", r.alpha},
       {"epsilon", r.epsilon},
       {"s_size", r.s_size},
       {"d_size", r.d_size},
       {"vd_size", r.vd_size},
       {"dfar_size", r.dfar_size},
       {"vd_term", r.vd_term},
       {"far_term", r.far_term},
       {"p_tot", r.p_tot},
       {"bound", r.bound},
       {"theory_exponent", r.theory_exponent}};
}

}  // namespace adhoc
