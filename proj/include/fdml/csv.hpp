#pragma once

// CSV writers. Every file starts with a header row; UTF-8, LF line endings.

#include "fdml/equilibrium.hpp"
#include "fdml/experiments.hpp"
#include "fdml/fde.hpp"
#include "fdml/stability.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace fdml::csv {

/// Shortest round-trippable decimal form of a double.
[[nodiscard]] std::string format_number(double value);

/// t,x,y (single) or t,x1,y1,x2,y2 (dimer): one row per grid node.
void write_trajectory(std::ostream& os, const Trajectory& trajectory);

/// Long format: beta,sample_index,x for the single cell, beta,neuron,sample_index,x for dimers.
/// Failed columns contribute no rows.
void write_sweep(std::ostream& os, const BifurcationScan& scan);

/// I,beta_star,coupling_value
void write_hopf_curve(std::ostream& os, const HopfCurve& curve);

/// I,branch,x_star,y_star
void write_equilibria(std::ostream& os, double I, const EquilibriumSet& set);

struct StabilityRow {
    double x_star = 0.0;
    StabilityReport report;
};

/// x_star,tau_plus,delta_plus,tau_minus,delta_minus,classification,beta_star
/// Minus-branch cells are empty for the single cell; beta_star holds either
/// the threshold or one of stable-for-all-orders / unstable-for-all-orders / undefined.
void write_stability(std::ostream& os, const std::vector<StabilityRow>& rows);

}  // namespace fdml::csv
