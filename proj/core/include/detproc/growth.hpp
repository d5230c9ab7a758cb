#pragma once
// 2+1 interlacing particle dynamics driven by TASEP-style exponential clocks.
// The triangular array {x_k^n : 1 <= k <= n <= N} keeps
//   x_k^{n+1} < x_k^n <= x_{k+1}^{n+1}
// as a hard invariant: blocked jumps do nothing, pushes move the whole
// diagonal chain atomically. Virtual boundary variables are never stored.

#include <vector>

#include "detproc/rng.hpp"

namespace detproc {
namespace growth {

struct InterlacingArray {
    int n_levels = 0;
    double time = 0.0;
    // x[m-1] holds level m, size m, increasing within the level.
    std::vector<std::vector<long>> x;

    long get(int k, int m) const { return x[m - 1][k - 1]; } // 1-based
    int particle_count() const { return n_levels * (n_levels + 1) / 2; }
    void assert_interlacing() const; // throws std::logic_error on violation
};

// Packed initial condition x_k^n(0) = -n + k - 1.
InterlacingArray init_step(int n);

// One clock ring of particle (k, m): blocked, single jump, or push chain.
// Returns true if anything moved.
bool attempt_jump(InterlacingArray& a, int k, int m);

// Exact continuous-time evolution for a duration t (global exponential clock
// of rate N(N+1)/2 plus uniform particle choice).
void simulate(InterlacingArray& a, double t, Rng& rng);

// h(x, n) = #{k : x_k^n > x} for half-integer x.
int height(const InterlacingArray& a, double x, int n);

// Lozenge tiling snapshot. Tiles live on integer lattice cells (x, n);
// light-gray marks a particle, dark-gray an n-direction level step, white a
// flat cell. Together they are the visible faces of the cube-stack surface,
// which the SVG renderer projects axonometrically.
enum class LozengeType { White, LightGray, DarkGray };

struct LozengeTile {
    LozengeType type;
    long x;
    int n;
    int h; // surface height at the anchor, used by the renderer
};

struct LozengeTiling {
    int n_levels = 0;
    long x_min = 0, x_max = 0; // drawn window, inclusive
    std::vector<LozengeTile> tiles;
};

LozengeTiling to_lozenge(const InterlacingArray& a);
LozengeTiling to_lozenge(const InterlacingArray& a, long x_min, long x_max);

// Particle positions recovered from the light-gray tiles.
std::vector<std::vector<long>> lozenge_particles(const LozengeTiling& t);

// xi_k^n = sqrt(2N) (x_k^n - t) / sqrt(2t).
std::vector<std::vector<double>> diffusion_rescale(const InterlacingArray& a,
                                                   int n_levels);

} // namespace growth
} // namespace detproc
