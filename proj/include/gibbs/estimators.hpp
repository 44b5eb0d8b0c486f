#pragma once

#include <string>
#include <vector>

#include "gibbs/exact.hpp"
#include "gibbs/graph.hpp"
#include "gibbs/samplers.hpp"

namespace gibbs {

struct EstimateResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

struct DecayFit {
    double amplitude = 0.0;  // C in C exp(-r / xi)
    double xi = 0.0;
    double r2 = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

struct CriterionReport {
    double b_value = 0.0;
    bool satisfied = false;  // b < 1
    double coupling_k = 0.0;
    int dimension = 0;
    std::string s_descriptor;
};

// Fraction of configurations with a <-> b; binomial standard error.
// ghost_free masks the ghost edge range first.
EstimateResult connectivity(const Graph& g, const SampleBatch& batch, int a, int b,
                            bool ghost_free = false);
EstimateResult connectivity(const Graph& g, const ExactDistribution& dist, int a, int b,
                            bool ghost_free = false);

// Mean of s_a s_b over a spin batch, and the truncated version
// <s_a s_b> - <s_a><s_b> with first-order error propagation.
EstimateResult spin_two_point(const SampleBatch& batch, int a, int b);
EstimateResult spin_two_point_truncated(const SampleBatch& batch, int a, int b);

// Least squares on log tau against distance; xi = -1/slope. Throws
// std::domain_error on nonpositive tau or a nonnegative slope (no decay).
DecayFit fit_correlation_length(const std::vector<double>& distances,
                                const std::vector<double>& taus);

// Fraction of configurations connecting the centre to the sup-norm shell
// at radius k (requires an embedding).
EstimateResult boundary_reach(const Graph& g, const SampleBatch& batch, int k,
                              bool ghost_free = false);

// Open left-right crossing fraction along the given embedding axis.
EstimateResult crossing_probability(const Graph& g, const SampleBatch& batch, int axis = 0);
double crossing_probability_exact(const Graph& g, const ExactDistribution& dist, int axis = 0);

// Fraction of configurations containing a loop of nonzero winding along the
// given torus axis (displacement-tracking union-find; exact homology test).
// Ghost edges, if any, are always masked.
EstimateResult wrap_around_probability(const Graph& g, const SampleBatch& batch, int axis);
bool wraps_around(const Graph& g, const EdgeConfig& omega, int axis);
// wrap flags for every axis in one union-find pass
std::vector<char> wrap_axes(const Graph& g, const EdgeConfig& omega);

// b(S) = sum_{u in boundary(S)} 2 d K tau_S(x0, u); satisfied iff b < 1.
// tau_S uses the model's exact law on g_S with free boundary.
CriterionReport finite_size_criterion(const Graph& g_s, const ModelSpec& m, int x0, double k,
                                      int d);
CriterionReport finite_size_criterion(const Graph& g_s, const SampleBatch& batch, int x0,
                                      double k, int d);

// --- Kertesz line bounds -------------------------------------------------

// mu = (2d+1)^(2d+1) / (2d)^(2d)
double kertesz_mu(int d);

// Upper bound on the critical field at (d=2, q=2):
//   h <= artanh(sqrt(2 (1-p)^2 / p^2 - 1)).
// Returns +infinity ("no constraint") when the radicand is negative or the
// artanh argument reaches 1; the finite window is p in (1/2, 2 - sqrt(2)].
double kertesz_upper_bound_h(double p);

// Lower-bound threshold from the finite-size criterion: with
// delta = mu^(-4^d), no percolation below p_h = 1 - (1 - delta/2)^(1/|box(3k)|).
double kertesz_lower_bound_ph(int d, int k);

// Empirical distribution of a batch over dense config indices (width <= 24).
std::vector<double> empirical_distribution(const SampleBatch& batch);
double empirical_total_variation(const SampleBatch& batch, const ExactDistribution& exact);

}  // namespace gibbs
