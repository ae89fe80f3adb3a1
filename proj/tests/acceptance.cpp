// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Simulation criteria run on the reduced grid t in [0, 1500], h = 0.05 with the
// direct history sums; `--full` switches them to t in [0, 6000], h = 0.01 on
// the FFT path.

#include "fdml/equilibrium.hpp"
#include "fdml/experiments.hpp"
#include "fdml/mittag_leffler.hpp"
#include "fdml/stability.hpp"
#include "fdml/validation.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fdml;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        const bool ok = std::abs(got - want) <= tol;
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << " = " << got << ", want " << want << " +/- " << tol << "] ";
        }
    }
};

bool full_resolution = false;

DmlParams with_current(double I) {
    DmlParams p;
    p.I = I;
    return p;
}

SolverConfig simulation_grid() {
    SolverConfig c;
    if (full_resolution) {
        c.use_fft = true;
    } else {
        c.t_end = 1500.0;
        c.h = 0.05;
    }
    return c;
}

// Same transient length in time units on either grid.
std::size_t discard_samples() { return full_resolution ? 100000 : 20000; }

void table_reproduction(Verdict& v) {
    const DmlParams p;
    const auto ex = find_extrema(p);
    v.near(ex.x_max, 0.0511432, 1e-6, "x_max");
    v.near(ex.I_max, 0.0154180, 1e-6, "I_max");
    v.near(ex.x_min, 0.2863875, 1e-6, "x_min");
    v.near(ex.I_min, 0.0033971, 1e-6, "I_min");
    v.near(i_infinity_derivative(0.2151013413424015, p, 1), -0.06709282841464406, 1e-8, "slope row 1");
    v.near(i_infinity_derivative(0.21747754638780026, p, 1), -0.06593178042834522, 1e-8, "slope row 2");
    v.near(i_infinity_derivative(0.2840112876589663, p, 1), -0.0033842365907062744, 1e-8, "slope row 3");
    v.detail << "x_max=" << ex.x_max << " I_max=" << ex.I_max << " x_min=" << ex.x_min << " I_min=" << ex.I_min;
}

void equilibrium_branches(Verdict& v) {
    const auto ex = find_extrema(DmlParams{});
    struct Case {
        double I;
        std::vector<std::pair<double, double>> points;
    };
    const std::vector<Case> cases{
        {0.0001, {{-0.08827, 0.00858}}},
        {0.019, {{0.40772, 0.11746}}},
        {ex.I_min, {{-0.07386, 0.00926}, {0.28639, 0.06193}}},
        {ex.I_max, {{0.05114, 0.0179}, {0.39491, 0.109785}}},
        {0.011, {{-0.027865, 0.0118}, {0.15041, 0.03022}, {0.37528, 0.09898}}},
    };
    for (const auto& c : cases) {
        const auto set = find_equilibria_2d(with_current(c.I));
        std::ostringstream tag;
        tag << "I=" << c.I;
        v.require(set.points.size() == c.points.size(), tag.str() + " count " + std::to_string(set.points.size()));
        v.detail << tag.str() << ":" << set.points.size() << " ";
        if (set.points.size() != c.points.size()) continue;
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            v.near(set.points[k].x_star, c.points[k].first, 1e-4, tag.str() + " x*");
            v.near(set.points[k].y_star, c.points[k].second, 1e-4, tag.str() + " y*");
        }
    }
}

double threshold_at(double I, const Coupling& c) {
    const auto p = with_current(I);
    const auto bs = beta_star(find_symmetric_equilibria(p, c).points.at(0).x_star, p, c);
    return bs.is_threshold() ? bs.value : std::nan("");
}

void closed_form_thresholds(Verdict& v) {
    SigmoidCoupling strong;
    strong.sigma = 0.001;
    SigmoidCoupling weak;
    weak.sigma = 0.0001;
    const double single = threshold_at(0.019, NoCoupling{});
    const double higher = threshold_at(0.022, NoCoupling{});
    const double lin_weak = threshold_at(0.019, LinearCoupling{0.001});
    const double lin_strong = threshold_at(0.019, LinearCoupling{0.008});
    const double sig_strong = threshold_at(0.019, strong);
    const double sig_weak = threshold_at(0.019, weak);
    v.near(single, 0.98233, 1e-4, "single I=0.019");
    v.near(higher, 0.98772, 1e-4, "single I=0.022");
    v.near(lin_weak, 0.98233, 1e-4, "linear theta=0.001");
    v.near(lin_strong, 0.98233, 1e-4, "linear theta=0.008");
    v.require(std::abs(lin_weak - lin_strong) < 1e-12, "theta independence");
    v.near(sig_strong, 0.98628, 1e-4, "sigmoid sigma=0.001");
    v.near(sig_weak, 0.98274, 1e-4, "sigmoid sigma=0.0001");
    v.detail << "beta*: " << single << ", " << higher << ", " << lin_weak << "/" << lin_strong << ", " << sig_strong
             << ", " << sig_weak;
}

void intermediate_indicators(Verdict& v) {
    const auto ind = indicators(0.40772, with_current(0.019), NoCoupling{});
    v.near(ind.tau_plus, 0.01673, 1e-4, "tau");
    v.near(ind.delta_plus, 0.0909, 1e-3, "delta");
    v.detail << "tau=" << ind.tau_plus << " delta=" << ind.delta_plus;
}

void solver_oracle(Verdict& v) {
    const auto report = run_oracle_suite(false);
    for (const auto& c : report.cases) {
        for (const double order : c.observed_orders) {
            v.require(order >= 1.0 + c.beta - 0.2, "order for beta=" + std::to_string(c.beta));
        }
        // The library evaluator agrees with an independent long-double series.
        v.near(mittag_leffler(c.beta, -1.0), oracle::relaxation_exact(c.beta, 1.0), 1e-13, "E_beta(-1)");
        v.detail << "beta=" << c.beta << " orders=" << c.observed_orders.front() << "," << c.observed_orders.back()
                 << " ";
    }
    v.near(report.classical.computed, std::exp(-1.0), 1e-5, "beta=1 x(1)");
    v.detail << "x(1)|beta=1=" << report.classical.computed;
}

void hopf_behavior(Verdict& v) {
    const auto p = with_current(0.019);
    const std::vector<double> y0{0.1, 0.1};
    ExperimentOptions options;
    options.discard = discard_samples();
    const auto below = run_experiment(p, NoCoupling{}, FractionalOrder(0.97), y0, simulation_grid(), options);
    const auto above = run_experiment(p, NoCoupling{}, FractionalOrder(0.99), y0, simulation_grid(), options);
    v.require(below.tail_amplitude_x < 1e-4, "beta=0.97 tail spread below 1e-4");
    v.near(below.final_state[0], 0.40772, 1e-3, "beta=0.97 final x");
    v.require(above.tail_amplitude_x > 0.05, "beta=0.99 tail spread above 0.05");
    v.detail << "beta=0.97 spread=" << below.tail_amplitude_x << " x_end=" << below.final_state[0]
             << "; beta=0.99 spread=" << above.tail_amplitude_x;
}

void sweep_onset(Verdict& v) {
    SweepOptions options;
    options.tail = full_resolution ? 5000 : 500;
    const auto scan = bifurcation_sweep(with_current(0.019), NoCoupling{}, std::vector<double>{0.1, 0.1},
                                        simulation_grid(), options);
    const auto failed = std::count_if(scan.columns.begin(), scan.columns.end(), [](const auto& c) { return c.error.has_value(); });
    v.require(failed == 0, "all sweep columns solved");
    const auto onset = oscillation_onset(scan);
    v.require(onset.has_value(), "oscillation at beta = 1");
    if (onset) {
        v.near(*onset, 0.98233, 0.005, "onset");
        v.detail << "columns=" << scan.columns.size() << " onset=" << *onset;
    }
}

void hopf_curve_families(Verdict& v) {
    const DmlParams p;
    const auto base = hopf_curve(p, NoCoupling{}, 0.016, 0.0235, 100);
    v.require(base.points.size() == 100, "2D curve complete");
    SigmoidCoupling syn;
    syn.sigma = 0.0;
    auto previous = hopf_curve(p, syn, 0.016, 0.0235, 100);
    v.require(previous.points.size() == base.points.size(), "sigma=0 curve complete");
    double identity = 0.0;
    for (std::size_t k = 0; k < std::min(base.points.size(), previous.points.size()); ++k) {
        identity = std::max(identity, std::abs(base.points[k].beta_star - previous.points[k].beta_star));
    }
    v.require(identity < 1e-12, "sigma=0 equals the 2D curve");
    std::size_t violations = 0;
    for (const double sigma : {0.0001, 0.0005, 0.001, 0.003}) {
        syn.sigma = sigma;
        const auto curve = hopf_curve(p, syn, 0.016, 0.0235, 100);
        v.require(curve.points.size() == previous.points.size(), "sigma curve complete");
        for (std::size_t k = 0; k < std::min(curve.points.size(), previous.points.size()); ++k) {
            if (curve.points[k].beta_star < previous.points[k].beta_star) ++violations;
        }
        previous = curve;
    }
    v.require(violations == 0, "nondecreasing in sigma");
    v.detail << "max |sigma=0 - 2D|=" << identity << " monotonicity violations=" << violations
             << " beta*(0.0235, sigma=0.003)=" << previous.points.back().beta_star;
}

void classifier_oracle(Verdict& v) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    int disagreements = 0;
    int stable = 0;
    while (checked < 500) {
        DmlParams p;
        p.A = 0.002 + 0.004 * unit(rng);
        p.alpha = 4.0 + 2.0 * unit(rng);
        p.gamma = 0.2 + 0.2 * unit(rng);
        p.I = -0.01 + 0.05 * unit(rng);
        const double beta = unit(rng) < 0.5 ? 0.9 + 0.1 * unit(rng) : std::max(1e-3, unit(rng));
        Coupling c = NoCoupling{};
        const double pick = unit(rng);
        if (pick < 1.0 / 3.0) {
            c = LinearCoupling{0.02 * unit(rng)};
        } else if (pick < 2.0 / 3.0) {
            SigmoidCoupling syn;
            syn.sigma = 0.005 * unit(rng);
            c = syn;
        }
        EquilibriumSet set;
        try {
            set = find_symmetric_equilibria(p, c);
        } catch (const NumericalError&) {
            continue;
        }
        for (const auto& pt : set.points) {
            if (checked == 500) break;
            const auto ind = indicators(pt.x_star, p, c);
            const auto branches = ind.branches();
            if (std::any_of(branches.begin(), branches.end(), [](const auto& b) { return std::abs(b.second) < 1e-12; })) {
                continue;
            }
            const bool expected = oracle::matignon_stable(jacobian(pt.x_star, p, c), beta);
            const bool got = classify(ind, FractionalOrder(beta)) == Classification::AsymptoticallyStable;
            disagreements += expected != got ? 1 : 0;
            stable += expected ? 1 : 0;
            ++checked;
        }
    }
    v.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
    v.detail << checked << " cases, " << stable << " stable, " << disagreements << " disagreements";
}

void dimer_symmetry(Verdict& v) {
    auto cfg = simulation_grid();
    cfg.use_fft = false;
    if (full_resolution) {
        cfg.t_end = 1500.0;
        cfg.h = 0.05;
    }
    const auto p = with_current(0.019);
    const std::vector<double> y0{0.1, 0.1, -0.2, 0.1};
    const std::vector<double> swapped{-0.2, 0.1, 0.1, 0.1};
    std::size_t mismatches = 0;
    std::size_t nodes = 0;
    const Coupling c = LinearCoupling{0.008};
    const auto a = solve_fde(make_rhs(p, c), FractionalOrder(0.99), cfg, y0);
    const auto b = solve_fde(make_rhs(p, c), FractionalOrder(0.99), cfg, swapped);
    v.require(a.size() == b.size(), "equal lengths");
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        const auto s = a.state(k);
        const auto r = b.state(k);
        mismatches += (s[0] != r[2]) + (s[1] != r[3]) + (s[2] != r[0]) + (s[3] != r[1]);
    }
    nodes += a.size();
    v.require(mismatches == 0, "bitwise component swap");
    v.detail << nodes << " nodes, " << mismatches << " mismatching entries";
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;  ///< runtime bound; 0 when none is stated
    std::function<void(Verdict&)> check;
};

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--full") == 0) {
            full_resolution = true;
        } else {
            std::fprintf(stderr, "usage: %s [--full]\n", argv[0]);
            return 2;
        }
    }
    const std::vector<Criterion> criteria{
        {1, "I_inf extrema and slopes", 1.0, table_reproduction},
        {2, "equilibrium branches", 1.0, equilibrium_branches},
        {3, "beta* closed forms", 1.0, closed_form_thresholds},
        {4, "intermediate indicators", 1.0, intermediate_indicators},
        {5, "solver oracle", 10.0, solver_oracle},
        {6, "Hopf behavior", full_resolution ? 0.0 : 30.0, hopf_behavior},
        {7, "sweep onset", 0.0, sweep_onset},
        {8, "Hopf-curve families", 5.0, hopf_curve_families},
        {9, "classifier oracle equivalence", 5.0, classifier_oracle},
        {10, "dimer symmetry", 10.0, dimer_symmetry},
    };

    std::printf("grid: %s\n", full_resolution ? "full (t in [0, 6000], h = 0.01, FFT)" : "reduced (t in [0, 1500], h = 0.05, direct)");
    int failures = 0;
    for (const auto& c : criteria) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.check(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
            v.require(false, "runtime over budget");
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s  criterion %2d  %-30s %8.3f s  %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                    v.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
