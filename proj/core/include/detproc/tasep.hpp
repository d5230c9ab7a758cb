#pragma once
// TASEP on Z: exact finite-N formulas and event-driven simulators.
//
// Particle ordering follows x_N < ... < x_2 < x_1, i.e. positions[0] is the
// rightmost particle. Step initial condition means y_k = -k.
//
// Binomial convention used by the extended kernels: binom(m, j) = 0 whenever
// m < 0 or m < j; this makes the one-step transition phi^{(n,n+1)}(x,y)
// reduce to the indicator 1[x > y].

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "detproc/rng.hpp"

namespace detproc {
namespace tasep {

struct ParticleConfig {
    std::vector<long> positions; // strictly decreasing
    std::vector<long> initial;   // y, same ordering
    double time = 0.0;

    int size() const { return int(positions.size()); }
    void validate() const; // exclusion + x_k >= y_k
};

ParticleConfig step_initial(int n);

struct UpdateRule {
    enum Kind { Continuous, Sequential, Parallel } kind = Continuous;
    double p = 0.5; // jump probability for the discrete rules
    static UpdateRule continuous() { return {Continuous, 0.0}; }
    static UpdateRule sequential(double p) { return {Sequential, p}; }
    static UpdateRule parallel(double p) { return {Parallel, p}; }
};

// F_n(x,t): contour integral on a circle enclosing w=0 (and w=1 for n > 0),
// trapezoid rule with node doubling to 1e-10 absolute.
double eval_F(int n, long x, double t);

// Green function det(F_{i-j}(x_{N+1-i} - y_{N+1-j}, t)), N <= 10.
double transition_prob(const ParticleConfig& target, double t);

// Evolve a copy of ic to time t (continuous) or floor(t) steps (discrete).
ParticleConfig simulate(const ParticleConfig& ic, double t, UpdateRule rule,
                        Rng& rng);

// binom(m, j) with the header convention.
double kernel_binom(long m, long j);

// phi^{(n1,n2)}(x1,x2) = binom(x1-x2-1, n2-n1-1) for n1 < n2, else 0.
double phi_shift(int n1, int n2, long x1, long x2);

// Psi^n_k(-n + x) = e^{-t} t^x/x! C_k(x,t); negative k by residue sum.
double psi_step(int n, int k, long x, double t);
// Phi^n_j(-n + x) = t^j / j! C_j(x,t), zero for j < 0.
double phi_step(int n, int j, long x, double t);

// Extended kernel for step IC via the Charlier sums (exact, recurrence based).
double kernel_step(int n1, long x1, int n2, long x2, double t);

// Same quantity through the double contour representation; n1 >= n2 only
// (disjoint circles |w| = 0.4 around 0 and |z-1| = 0.4 around 1).
double kernel_step_contour(int n1, long x1, int n2, long x2, double t);

// Discrete-time kernels, step IC, via contour quadrature.
double kernel_discrete(int n1, long x1, int n2, long x2, long t, UpdateRule rule);

// General initial data: Psi^n_i for arbitrary y by exact residue sums.
double psi_general(int n, int i, long x, double t, const std::vector<long>& y);

struct JointQuery {
    int n_particles = 1;
    std::vector<int> sigma;       // strictly increasing particle indices, 1-based
    std::vector<long> thresholds; // s_k, same length as sigma
    double time = 0.0;
    UpdateRule update = UpdateRule::continuous();
    std::optional<std::vector<long>> initial; // defaults to step IC
};

// P(for all k: x_{sigma(k)}(t) >= s_k) = det(1 - chi_s K chi_s) on the
// truncated lattice window; window enlargement is checked for stability.
double joint_distribution(const JointQuery& q);

// Lattice biorthogonality sum_x Psi^n_i(x) Phi^n_j(x) for step IC.
double biorthogonality_defect(int n, int i, int j, double t);

} // namespace tasep
} // namespace detproc
