#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "adhoc/kernels.hpp"
#include "adhoc/net_model.hpp"
#include "adhoc/params.hpp"

namespace adhoc {

double dense_simo_upper_bound(const NetworkInstance& inst, const ChannelParams& p);

struct CutGeometry {
  const NetworkInstance* inst = nullptr;
  double cut_x = 0.0;  // physical
  std::vector<int> S;
  std::vector<int> D;
  std::vector<int> V_D;    // D nodes within distance 1 of the cut
  std::vector<int> D_far;  // D minus V_D
};

CutGeometry compute_cut(const NetworkInstance& inst);

double d_weight(const CutGeometry& cut, int k, double alpha);
// d_weight for every node of S, in S order
std::vector<double> d_weights(const CutGeometry& cut, double alpha);

double d_regular(int kx, int ky, int sqrt_n, double alpha);
// all d_regular(kx, ky) with kx, ky in 1..sqrt_n, row-major in kx
std::vector<double> d_regular_table(int sqrt_n, double alpha);

struct Lemma10Constants {
  double alpha = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
};

// frozen table for alpha in {2, 2.5, 3, 4}, computed otherwise
Lemma10Constants lemma10_constants(double alpha);
Lemma10Constants compute_lemma10_constants(double alpha);
const std::vector<Lemma10Constants>& lemma10_table();

struct DkBounds {
  double lower = 0.0;
  double upper = 0.0;
};

DkBounds dk_closed_bounds(int kx, double n, double alpha);

double p_tot(const CutGeometry& cut, const ChannelParams& p);

// 2 (log n)^2 P G sum_{kx,ky} d_regular over the ceil(sqrt n) lattice
double p_tot_regular_bound(int n, const ChannelParams& p);

struct EqualizedMatrix {
  std::vector<int> rows;  // D_far
  std::vector<int> cols;  // S with d_k > 0
  std::vector<int> dropped;
  std::vector<double> d;
  Eigen::MatrixXd magnitude;
  Eigen::MatrixXcd entries;
};

EqualizedMatrix build_equalized_matrix(const CutGeometry& cut, double alpha, std::uint64_t seed);

double spectral_norm_sq(const Eigen::MatrixXcd& m, double rel_tol = 1e-8, int max_iter = 20000);
double spectral_norm_sq(const EqualizedMatrix& m);

double max_row_sum_sq(const EqualizedMatrix& m);

// Tr((H^* H)^l) for one realization
double trace_power(const Eigen::MatrixXcd& h, int l);

// Monte Carlo over phase redraws
kernels::MeanEstimate trace_moment(const EqualizedMatrix& m, int l, int trials, std::uint64_t seed);

// exact phase average on a (2l+1)-point grid per entry; tiny matrices only
double trace_moment_exact(const EqualizedMatrix& m, int l);

std::uint64_t catalan(int l);

struct CutsetReport {
  int n = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  int s_size = 0, d_size = 0, vd_size = 0, dfar_size = 0;
  double vd_term = 0.0;   // bits
  double far_term = 0.0;  // bits
  double p_tot = 0.0;
  double bound = 0.0;     // 4 (vd_term + far_term)
  double theory_exponent = 0.0;
};

void to_json(nlohmann::json& j, const CutsetReport& r);

CutsetReport cutset_upper_bound(const CutGeometry& cut, const ChannelParams& p, double epsilon = 0.05);

double scaling_exponent_theory(double alpha);

}  // namespace adhoc
