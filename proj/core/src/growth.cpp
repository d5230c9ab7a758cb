#include "detproc/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace detproc {
namespace growth {

void InterlacingArray::assert_interlacing() const {
    for (int m = 1; m < n_levels; ++m) {
        // between level m (size m) and level m+1 (size m+1), 1-based k <= m:
        // x_k^{m+1} < x_k^m <= x_{k+1}^{m+1}
        for (int k = 1; k <= m; ++k) {
            if (!(x[m][k - 1] < x[m - 1][k - 1]))
                throw std::logic_error("interlacing violated: x_k^{m+1} < x_k^m");
            if (!(x[m - 1][k - 1] <= x[m][k]))
                throw std::logic_error("interlacing violated: x_k^m <= x_{k+1}^{m+1}");
        }
    }
}

InterlacingArray init_step(int n) {
    if (n < 1) throw std::invalid_argument("init_step: N >= 1");
    InterlacingArray a;
    a.n_levels = n;
    a.x.resize(n);
    for (int m = 1; m <= n; ++m) {
        a.x[m - 1].resize(m);
        for (int k = 1; k <= m; ++k) a.x[m - 1][k - 1] = -m + k - 1;
    }
    a.assert_interlacing();
    return a;
}

bool attempt_jump(InterlacingArray& a, int k, int m) {
    if (m < 1 || m > a.n_levels || k < 1 || k > m)
        throw std::invalid_argument("attempt_jump: invalid particle index");
    // Blocked by the heavier particle up-left: x_k^m = x_k^{m-1} - 1.
    if (k <= m - 1 && a.x[m - 1][k - 1] == a.x[m - 2][k - 1] - 1) return false;
    // Push chain: largest c with x_k^m = x_{k+1}^{m+1} = ... on the diagonal.
    const long pos = a.x[m - 1][k - 1];
    int c = 1;
    while (m + c <= a.n_levels && a.x[m + c - 1][k + c - 1] == pos) ++c;
    for (int i = 0; i < c; ++i) ++a.x[m + i - 1][k + i - 1];

    // Local invariant check around the moved chain.
    for (int i = 0; i < c; ++i) {
        const int mm = m + i, kk = k + i;
        const long v = a.x[mm - 1][kk - 1];
        if (kk >= 2 && a.x[mm - 1][kk - 2] >= v)
            throw std::logic_error("attempt_jump: level ordering broken");
        if (kk <= mm - 1 && !(v < a.x[mm - 2][kk - 1]))
            throw std::logic_error("attempt_jump: upper-left constraint broken");
        if (mm < a.n_levels && !(v <= a.x[mm][kk]))
            throw std::logic_error("attempt_jump: push chain left a violation");
    }
    return true;
}

void simulate(InterlacingArray& a, double t, Rng& rng) {
    if (t < 0.0) throw std::invalid_argument("simulate: t >= 0");
    const int total = a.particle_count();
    double tau = 0.0;
    for (;;) {
        tau += rng.exponential(double(total));
        if (tau > t) break;
        // Uniform particle among the triangle: decode a flat index.
        long j = long(rng.below(std::uint64_t(total)));
        int m = 1;
        while (j >= m) { j -= m; ++m; }
        attempt_jump(a, int(j) + 1, m);
    }
    a.time += t;
}

int height(const InterlacingArray& a, double x, int n) {
    if (n < 1 || n > a.n_levels) throw std::invalid_argument("height: bad level");
    int c = 0;
    for (long p : a.x[n - 1])
        if (double(p) > x) ++c;
    return c;
}

LozengeTiling to_lozenge(const InterlacingArray& a) {
    long lo = a.x[a.n_levels - 1][0], hi = a.x[a.n_levels - 1].back();
    for (const auto& lvl : a.x) {
        lo = std::min(lo, lvl.front());
        hi = std::max(hi, lvl.back());
    }
    return to_lozenge(a, lo - 1, hi + 1);
}

LozengeTiling to_lozenge(const InterlacingArray& a, long x_min, long x_max) {
    LozengeTiling t;
    t.n_levels = a.n_levels;
    t.x_min = x_min;
    t.x_max = x_max;
    for (int n = 1; n <= a.n_levels; ++n) {
        for (long x = x_min; x <= x_max; ++x) {
            const int h_here = height(a, x + 0.5, n);
            const int h_below = n >= 2 ? height(a, x + 0.5, n - 1) : 0;
            const bool particle =
                std::find(a.x[n - 1].begin(), a.x[n - 1].end(), x) != a.x[n - 1].end();
            if (particle)
                t.tiles.push_back({LozengeType::LightGray, x, n, h_here});
            if (h_here != h_below)
                t.tiles.push_back({LozengeType::DarkGray, x, n, h_below});
            t.tiles.push_back({LozengeType::White, x, n, h_here});
        }
    }
    return t;
}

std::vector<std::vector<long>> lozenge_particles(const LozengeTiling& t) {
    std::vector<std::vector<long>> out(t.n_levels);
    for (const LozengeTile& tile : t.tiles)
        if (tile.type == LozengeType::LightGray)
            out[tile.n - 1].push_back(tile.x);
    for (auto& lvl : out) std::sort(lvl.begin(), lvl.end());
    return out;
}

std::vector<std::vector<double>> diffusion_rescale(const InterlacingArray& a,
                                                   int n_levels) {
    if (n_levels > a.n_levels)
        throw std::invalid_argument("diffusion_rescale: not enough levels");
    const double t = a.time;
    if (!(t > 0.0)) throw std::invalid_argument("diffusion_rescale: needs t > 0");
    const double f = std::sqrt(2.0 * n_levels) / std::sqrt(2.0 * t);
    std::vector<std::vector<double>> xi(n_levels);
    for (int m = 1; m <= n_levels; ++m) {
        xi[m - 1].resize(m);
        for (int k = 1; k <= m; ++k)
            xi[m - 1][k - 1] = f * (double(a.x[m - 1][k - 1]) - t);
    }
    return xi;
}

} // namespace growth
} // namespace detproc
