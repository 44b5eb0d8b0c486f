#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gibbs {

// The two Ising energy conventions in use. They differ by an energy shift
// and a factor two in beta, so every caller names its convention explicitly.
//   pair_product:       H = -sum_edges J_e s_u s_v - h sum_v s_v
//                       (J_e = 1 internal, J_e = h on ghost edges)
//   disagreement_count: H = sum_edges J_e [s_u != s_v]
enum class EnergyConvention { pair_product, disagreement_count };

enum class ModelTag { ising, bernoulli, random_cluster, loop_o1, single_current, double_current };

// Parameter relations shared by the graphical representations:
//   x = tanh(beta), p = 1 - exp(-2 beta), x = p / (2 - p),
//   p_h = 1 - exp(-q h / (q - 1)).
inline double x_of_beta(double beta) { return std::tanh(beta); }
inline double p_of_beta(double beta) { return -std::expm1(-2.0 * beta); }
inline double x_of_p(double p) { return p / (2.0 - p); }
inline double p_of_x(double x) { return 2.0 * x / (1.0 + x); }
inline double beta_of_x(double x) { return std::atanh(x); }

// Bernoulli level pairing the loop measure with the single current:
// 1 - 1/cosh(beta) = 1 - sqrt(1 - x^2).
inline double single_current_bernoulli(double x) { return 1.0 - std::sqrt(1.0 - x * x); }

inline double ph_of_field(double q, double h) {
    if (h == 0.0) return 0.0;
    if (q <= 1.0) throw std::invalid_argument("ph_of_field: needs q > 1");
    return -std::expm1(-q * h / (q - 1.0));
}

inline double field_of_ph(double q, double ph) {
    if (ph == 0.0) return 0.0;
    if (q <= 1.0) throw std::invalid_argument("field_of_ph: needs q > 1");
    return -(q - 1.0) / q * std::log1p(-ph);
}

// Tagged parameter record. Only the fields relevant to the tag are set;
// the factory functions validate ranges.
struct ModelSpec {
    ModelTag tag = ModelTag::bernoulli;
    double beta = 0.0;
    double h = 0.0;
    double p = 0.0;
    double q = 1.0;
    double x = 0.0;
    EnergyConvention convention = EnergyConvention::pair_product;

    static ModelSpec ising(double beta, double h = 0.0,
                           EnergyConvention conv = EnergyConvention::pair_product) {
        if (beta < 0.0) throw std::invalid_argument("ising: beta < 0");
        if (h < 0.0) throw std::invalid_argument("ising: h < 0");
        ModelSpec m;
        m.tag = ModelTag::ising;
        m.beta = beta;
        m.h = h;
        m.convention = conv;
        return m;
    }

    static ModelSpec bernoulli(double p) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("bernoulli: p outside [0,1]");
        ModelSpec m;
        m.tag = ModelTag::bernoulli;
        m.p = p;
        return m;
    }

    static ModelSpec random_cluster(double p, double q, double h = 0.0) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("random_cluster: p outside [0,1]");
        if (q < 1.0) throw std::invalid_argument("random_cluster: q < 1");
        if (h < 0.0) throw std::invalid_argument("random_cluster: h < 0");
        if (h > 0.0 && q <= 1.0) throw std::invalid_argument("random_cluster: field needs q > 1");
        ModelSpec m;
        m.tag = ModelTag::random_cluster;
        m.p = p;
        m.q = q;
        m.h = h;
        return m;
    }

    static ModelSpec loop_o1(double x) {
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("loop_o1: x outside [0,1]");
        ModelSpec m;
        m.tag = ModelTag::loop_o1;
        m.x = x;
        return m;
    }

    static ModelSpec single_current(double x) {
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("single_current: x outside [0,1]");
        ModelSpec m;
        m.tag = ModelTag::single_current;
        m.x = x;
        return m;
    }

    static ModelSpec double_current(double x) {
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("double_current: x outside [0,1]");
        ModelSpec m;
        m.tag = ModelTag::double_current;
        m.x = x;
        return m;
    }

    bool is_spin_model() const { return tag == ModelTag::ising; }

    // p_h for the ghost edge range of the random cluster model.
    double ghost_edge_probability() const { return ph_of_field(q, h); }

    std::string tag_name() const {
        switch (tag) {
            case ModelTag::ising: return "ising";
            case ModelTag::bernoulli: return "bernoulli";
            case ModelTag::random_cluster: return "random-cluster";
            case ModelTag::loop_o1: return "loop-o1";
            case ModelTag::single_current: return "single-current";
            case ModelTag::double_current: return "double-current";
        }
        return "?";
    }
};

}  // namespace gibbs
