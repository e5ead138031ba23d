#pragma once

#include <cstddef>
#include <cstdint>

namespace prefopt::bounds {

/// max(0, ceil(v))
double ceil_plus(double v);

/// Accuracy of a fixed-radius estimate: 2 sqrt(d-1) (h/r + pi / 2^(T+1)).
double fixed_estimation_error(std::size_t d, double h, double r, int depth);

/// Comparisons of a fixed-radius estimate: (d-1)(T+3) + 1.
std::uint64_t fixed_estimation_comparisons(std::size_t d, int depth);

/// Comparisons to reach accuracy eps with a fixed radius small enough: (d-1) ceil(log2(51 sqrt(d-1)/eps)) + 1.
std::uint64_t fixed_comparisons_for_accuracy(std::size_t d, double eps);

/**
 * High-probability comparison count of an adaptive estimate at accuracy eps
 * with confidence 1 - delta:
 * 2(d-1) ceil(log2(7 sqrt(d-1)/eps)) + 2 ceil+(log2(h0 d^3 / (r eps))) + 16 + 4 ceil(log2(1/delta)).
 */
double adaptive_comparisons_whp(std::size_t d, double eps, double h0, double r, double delta);

/// Information lower bound for any estimator at accuracy eps: (d-1) log2(1/(pi eps)) - 1.
double estimation_lower_bound(std::size_t d, double eps);

/// Comparisons of NDD with fixed-radius estimates: K((d-1)(T+3) + 2).
std::uint64_t ndd_comparisons(std::size_t k_iters, std::size_t d, int depth);

/// Level-set gap of NDD with exact normals and eta = D1/sqrt(K).
double ndd_exact_gap(double d1, std::size_t k_iters);

/// Comparison bound of the eps-tuned NDD: 7d(1 + D1^2/eps^2) log2(224 pi d (1 + D1/eps)^2).
double ndd_eps_comparisons(std::size_t d, double d1, double eps);

/// Level-set gap of a completed adaNDD run: (D1 sqrt(ln(1 + 24 K^2 D1^2)) + 2 D1 + 3) / sqrt(K).
double adandd_gap(double d1, std::size_t k_iters);

/// Per-iteration comparison budget of adaNDD at iteration k with accuracy eps_k.
double adandd_iteration_budget(std::size_t d, double eps_k, double h0, double r_star, double delta,
                               std::size_t k);

/**
 * Total comparisons of adaNDD over K iterations:
 * 2Kd ceil(log2(7 d^(1/2) K^(3/2) (D1+3))) + 2K(ceil+(log2(h0 d^(5/2)/r*)) + 2 ceil(log2(2K^2/delta)) + 9).
 */
double adandd_total_comparisons(std::size_t d, std::size_t k_iters, double d1, double h0,
                                double r_star, double delta);

/// Regret of the coin-betting iterates against comparator u: |u - x1| sqrt(K ln(1 + 24 K^2 |u - x1|^2)) + 1.
double kt_regret(double u_dist, std::size_t k_iters);

/// Radius of the k-th coin-betting iterate around x1: 1 + (k-1) D1 + 2 sqrt(k-1).
double kt_iterate_radius(std::size_t k, double d1);

/// Minimum level-set gap of any K-step comparison method on the hard instance in d = K+1: 3 D1 / (4 sqrt(d)).
double hard_instance_gap(double d1, std::size_t d);

/// Iterations for the central-cut ellipsoid method to shrink from radius R to eps: 2d(d+1) ln(R/eps).
double ellipsoid_iterations(std::size_t d, double radius0, double eps);

}  // namespace prefopt::bounds
