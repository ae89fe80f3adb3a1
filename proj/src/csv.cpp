#include "fdml/csv.hpp"

#include <charconv>

namespace fdml::csv {

std::string format_number(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

void write_trajectory(std::ostream& os, const Trajectory& trajectory) {
    if (trajectory.dimension() == 2) {
        os << "t,x,y\n";
    } else if (trajectory.dimension() == 4) {
        os << "t,x1,y1,x2,y2\n";
    } else {
        os << "t";
        for (std::size_t i = 0; i < trajectory.dimension(); ++i) {
            os << ",y" << i + 1;
        }
        os << '\n';
    }
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        os << format_number(trajectory.time(k));
        for (const double v : trajectory.state(k)) {
            os << ',' << format_number(v);
        }
        os << '\n';
    }
}

void write_sweep(std::ostream& os, const BifurcationScan& scan) {
    const bool dimer = !scan.columns.empty() && scan.columns.front().tails.size() > 1;
    os << (dimer ? "beta,neuron,sample_index,x\n" : "beta,sample_index,x\n");
    for (const auto& column : scan.columns) {
        if (column.error) {
            continue;
        }
        for (std::size_t neuron = 0; neuron < column.tails.size(); ++neuron) {
            const auto& tail = column.tails[neuron];
            for (std::size_t k = 0; k < tail.size(); ++k) {
                os << format_number(column.beta) << ',';
                if (dimer) {
                    os << neuron + 1 << ',';
                }
                os << k << ',' << format_number(tail[k]) << '\n';
            }
        }
    }
}

void write_hopf_curve(std::ostream& os, const HopfCurve& curve) {
    os << "I,beta_star,coupling_value\n";
    for (const auto& point : curve.points) {
        os << format_number(point.I) << ',' << format_number(point.beta_star) << ','
           << format_number(curve.coupling_value) << '\n';
    }
}

void write_equilibria(std::ostream& os, double I, const EquilibriumSet& set) {
    os << "I,branch,x_star,y_star\n";
    for (const auto& point : set.points) {
        os << format_number(I) << ',' << to_string(set.branch) << ',' << format_number(point.x_star) << ','
           << format_number(point.y_star) << '\n';
    }
}

void write_stability(std::ostream& os, const std::vector<StabilityRow>& rows) {
    os << "x_star,tau_plus,delta_plus,tau_minus,delta_minus,classification,beta_star\n";
    for (const auto& row : rows) {
        const auto& ind = row.report.indicators;
        os << format_number(row.x_star) << ',' << format_number(ind.tau_plus) << ','
           << format_number(ind.delta_plus) << ',';
        if (ind.tau_minus) os << format_number(*ind.tau_minus);
        os << ',';
        if (ind.delta_minus) os << format_number(*ind.delta_minus);
        os << ',' << to_string(row.report.classification) << ',';
        if (!row.report.beta_star) {
            os << "undefined";
        } else if (row.report.beta_star->is_threshold()) {
            os << format_number(row.report.beta_star->value);
        } else {
            os << row.report.beta_star->describe();
        }
        os << '\n';
    }
}

}  // namespace fdml::csv
