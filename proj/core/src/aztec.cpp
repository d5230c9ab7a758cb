#include "detproc/aztec.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace detproc {
namespace aztec {

void ZArray::assert_invariants() const {
    for (int m = 1; m <= n_levels; ++m) {
        for (int k = 1; k < m; ++k)
            if (!(z[m - 1][k - 1] < z[m - 1][k]))
                throw std::logic_error("ZArray: within-level order violated");
    }
    for (int m = 1; m < n_levels; ++m) {
        // z_k^{m+1} <= z_k^m <= z_{k+1}^{m+1}
        for (int k = 1; k <= m; ++k) {
            if (!(z[m][k - 1] <= z[m - 1][k - 1]))
                throw std::logic_error("ZArray: left interlacing violated");
            if (!(z[m - 1][k - 1] <= z[m][k]))
                throw std::logic_error("ZArray: right interlacing violated");
        }
    }
}

ZArray initial(int n_levels) {
    if (n_levels < 1) throw std::invalid_argument("aztec::initial: N >= 1");
    ZArray a;
    a.n_levels = n_levels;
    a.z.resize(n_levels);
    a.moved.resize(n_levels);
    for (int m = 1; m <= n_levels; ++m) {
        a.z[m - 1].resize(m);
        a.moved[m - 1].assign(m, 0);
        for (int k = 0; k < m; ++k) a.z[m - 1][k] = k;
    }
    return a;
}

void step(ZArray& a, const CoinFn& coin) {
    const long t = a.step + 1;
    const int active = int(std::min<long>(t, a.n_levels));
    for (auto& lvl : a.moved) std::fill(lvl.begin(), lvl.end(), 0);

    for (int m = 1; m <= active; ++m) {
        for (int k = 1; k <= m; ++k) {
            if (a.moved[m - 1][k - 1]) continue; // pushed earlier this step
            // Tight slot under the (already updated) heavier level.
            if (k <= m - 1 && a.z[m - 1][k - 1] == a.z[m - 2][k - 1]) continue;
            // Target site occupied on the same level.
            if (k < m && a.z[m - 1][k - 1] + 1 == a.z[m - 1][k]) continue;
            if (!coin(m, k)) continue;

            long pos = ++a.z[m - 1][k - 1];
            a.moved[m - 1][k - 1] = 1;
            // Push the diagonal chain upward to restore interlacing.
            int mm = m, kk = k;
            while (mm < active && a.z[mm][kk] == pos - 1) {
                if (a.moved[mm][kk])
                    throw std::logic_error("aztec::step: particle pushed twice");
                ++a.z[mm][kk];
                a.moved[mm][kk] = 1;
                ++mm;
                ++kk;
            }
            if (mm < a.n_levels && a.z[mm][kk] < pos)
                throw std::logic_error("aztec::step: push reached a frozen level");
        }
    }
    a.step = t;
    a.assert_invariants();
}

void step(ZArray& a, double p, Rng& rng) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("aztec::step: p in (0,1)");
    step(a, [&](int, int) { return rng.bernoulli(p); });
}

namespace {

Domino make_particle_tile(long n, int m, long zval, bool was_moved) {
    const long a = 2 * zval - n;
    const long b = n + 1 - 2 * m;
    Domino d;
    if (was_moved) {
        d.type = DominoType::LightGray;
        d.black = {a, b};
        d.white = {a - 1, b - 1};
    } else {
        d.type = DominoType::MiddleGray;
        d.black = {a, b};
        d.white = {a + 1, b - 1};
    }
    return d;
}

} // namespace

DominoTiling to_domino(const ZArray& a) {
    const long n = a.step;
    if (n < 1 || n > a.n_levels)
        throw std::invalid_argument("to_domino: requires 1 <= step <= n_levels");
    DominoTiling t;
    t.order = int(n);

    // Particle tiles and per-level hole lists (black columns a = 2z - n).
    std::vector<std::vector<long>> holes(n + 1); // index by level m = 1..n
    std::vector<std::vector<long>> covered(n + 1); // whites covered from above
    for (int m = 1; m <= n; ++m) {
        std::vector<char> occupied(n + 1, 0); // slot z in [0, n]
        for (int k = 1; k <= m; ++k) {
            const long zval = a.z[m - 1][k - 1];
            if (zval < 0 || zval > n)
                throw std::logic_error("to_domino: slot out of diamond range");
            occupied[zval] = 1;
            const bool mv = a.moved[m - 1][k - 1] != 0;
            t.tiles.push_back(make_particle_tile(n, m, zval, mv));
            covered[m].push_back(2 * zval - n + (mv ? -1 : +1));
        }
        for (long s = 0; s <= n; ++s)
            if (!occupied[s]) holes[m].push_back(2 * s - n);
    }

    // White rows w_b = n - 2m sit between level m (above) and m+1 (below);
    // level-m particles cover from above, level-(m+1) holes from below.
    for (int m = 0; m <= int(n); ++m) {
        const long wb = n - 2 * m;
        std::vector<long> targets;
        std::vector<char> taken(2 * n + 1, 0);
        if (m >= 1)
            for (long c : covered[m]) {
                if (c < -n + 1 || c > n - 1 || taken[c + n])
                    throw std::logic_error("to_domino: particle cover clash");
                taken[c + n] = 1;
            }
        for (long w = -n + 1; w <= n - 1; w += 2)
            if (!taken[w + n]) targets.push_back(w);

        const std::vector<long>& hs = (m + 1 <= n) ? holes[m + 1] : holes[0];
        if (hs.size() != targets.size())
            throw std::logic_error("to_domino: hole/target count mismatch");
        const long hb = n + 1 - 2 * (m + 1);
        for (std::size_t i = 0; i < hs.size(); ++i) {
            const long h = hs[i], w = targets[i];
            Domino d;
            if (w == h - 1) {
                d.type = DominoType::DarkGray; // up-left
            } else if (w == h + 1) {
                d.type = DominoType::White; // up-right
            } else {
                throw std::logic_error("to_domino: hole matching not adjacent");
            }
            d.black = {h, hb};
            d.white = {w, wb};
            t.tiles.push_back(d);
        }
    }

    // Exact cover of the rotated diamond.
    std::map<std::pair<long, long>, int> count;
    for (const Domino& d : t.tiles) {
        ++count[{d.black[0], d.black[1]}];
        ++count[{d.white[0], d.white[1]}];
    }
    long cells = 0;
    for (long aa = -n; aa <= n; ++aa)
        for (long bb = -n; bb <= n; ++bb) {
            if ((aa + bb) % 2 == 0) continue;
            ++cells;
            auto it = count.find({aa, bb});
            if (it == count.end() || it->second != 1)
                throw std::logic_error("to_domino: cells not covered exactly once");
        }
    if (cells != 2 * n * (n + 1) || long(t.tiles.size()) != n * (n + 1))
        throw std::logic_error("to_domino: tile count off");
    return t;
}

std::string DominoTiling::key() const {
    std::vector<std::string> parts;
    for (const Domino& d : tiles) {
        parts.push_back(std::to_string(d.black[0]) + "," + std::to_string(d.black[1]) +
                        ":" + std::to_string(d.white[0]) + "," +
                        std::to_string(d.white[1]));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const std::string& p : parts) {
        out += p;
        out += ';';
    }
    return out;
}

DominoTiling sample_uniform(int n, Rng& rng) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("sample_uniform: 1 <= n <= 64");
    ZArray a = initial(n);
    for (int s = 0; s < n; ++s) step(a, 0.5, rng);
    return to_domino(a);
}

namespace {

// Backtracking exact-cover enumeration over the rotated diamond cells.
void enumerate_rec(long n, std::map<std::pair<long, long>, char>& used,
                   std::vector<Domino>& acc, std::vector<DominoTiling>& out) {
    // first free cell in row-major (b descending, a ascending) order
    std::pair<long, long> free_cell{0, 0};
    bool found = false;
    for (long b = n; !found && b >= -n; --b)
        for (long a = -n; a <= n; ++a) {
            if ((a + b) % 2 == 0) continue;
            if (!used.count({a, b})) {
                free_cell = {a, b};
                found = true;
                break;
            }
        }
    if (!found) {
        DominoTiling t;
        t.order = int(n);
        t.tiles = acc;
        out.push_back(t);
        return;
    }
    const long a = free_cell.first, b = free_cell.second;
    const bool is_black = ((a - n) % 2) == 0;
    // partner candidates: the four diagonal neighbors in the diamond
    const std::array<std::array<long, 2>, 4> nb = {
        {{a - 1, b - 1}, {a + 1, b - 1}, {a - 1, b + 1}, {a + 1, b + 1}}};
    for (const auto& w : nb) {
        if (std::labs(w[0]) > n || std::labs(w[1]) > n) continue;
        if (used.count({w[0], w[1]})) continue;
        Domino d;
        const std::array<long, 2> cell{a, b};
        const std::array<long, 2>& black = is_black ? cell : w;
        const std::array<long, 2>& white = is_black ? w : cell;
        const long da = white[0] - black[0], db = white[1] - black[1];
        if (da == -1 && db == -1) d.type = DominoType::LightGray;
        else if (da == 1 && db == -1) d.type = DominoType::MiddleGray;
        else if (da == -1 && db == 1) d.type = DominoType::DarkGray;
        else d.type = DominoType::White;
        d.black = black;
        d.white = white;
        used[{a, b}] = 1;
        used[{w[0], w[1]}] = 1;
        acc.push_back(d);
        enumerate_rec(n, used, acc, out);
        acc.pop_back();
        used.erase({a, b});
        used.erase({w[0], w[1]});
    }
}

} // namespace

std::vector<DominoTiling> enumerate_tilings(int n) {
    if (n < 1 || n > 4)
        throw std::invalid_argument("enumerate_tilings: n <= 4 (combinatorial)");
    std::map<std::pair<long, long>, char> used;
    std::vector<Domino> acc;
    std::vector<DominoTiling> out;
    enumerate_rec(n, used, acc, out);
    return out;
}

} // namespace aztec
} // namespace detproc
