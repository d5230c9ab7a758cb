#pragma once
// Discrete-time interlacing dynamics in shifted coordinates z_k^n = x_k^n + n
// and its Aztec-diamond domino image. One shuffling step t-1 -> t updates
// levels 1..t bottom-up: a particle whose slot under the already-updated
// heavier level is tight, or whose right neighbor sits on the target site,
// stays; otherwise it jumps with probability p, immediately pushing the
// diagonal chain above it. Pushed particles count as moved and do not flip
// their own coin. Running n steps at p = 1/2 and reading the tiles off the
// final state samples the order-n Aztec diamond uniformly.
//
// Tiling coordinates are the 45-degree rotated ones: cells are the integer
// points (a, b) with |a| <= n, |b| <= n, a + b odd; a domino joins two
// diagonal neighbors. Cells with a == n (mod 2) are "black"; every domino
// covers exactly one black cell, and the black cell plus the direction to
// its white partner encodes the tile type:
//   down-left  -> light-gray  (particle that moved; vertical after unrotation)
//   down-right -> middle-gray (particle that stayed; horizontal)
//   up-left    -> dark-gray   (hole; horizontal)
//   up-right   -> white       (hole; vertical)
// The renderer un-rotates via i = (a-b-1)/2, j = (a+b-1)/2.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "detproc/rng.hpp"

namespace detproc {
namespace aztec {

struct ZArray {
    int n_levels = 0;
    long step = 0;
    std::vector<std::vector<long>> z;          // z[m-1] = level m, increasing
    std::vector<std::vector<std::uint8_t>> moved; // last-step move flags

    long get(int k, int m) const { return z[m - 1][k - 1]; } // 1-based
    void assert_invariants() const;
};

// Packed initial condition z_k^n(0) = k - 1.
ZArray initial(int n_levels);

// Coin source; coin(m, k) (1-based) decides the jump of an unblocked,
// unpushed particle. The Rng-driven overload wraps bernoulli(p).
using CoinFn = std::function<bool(int, int)>;

void step(ZArray& a, double p, Rng& rng);
void step(ZArray& a, const CoinFn& coin);

enum class DominoType { LightGray, MiddleGray, DarkGray, White };

struct Domino {
    DominoType type;
    // rotated-frame cells; black carries the parity a == order (mod 2)
    std::array<long, 2> black;
    std::array<long, 2> white;
    bool vertical() const {
        return type == DominoType::LightGray || type == DominoType::White;
    }
};

struct DominoTiling {
    int order = 0;
    std::vector<Domino> tiles;
    // canonical serialization of the cell pairing, independent of gray codes
    std::string key() const;
};

// Tiling of the order-(a.step) diamond from the current state; requires
// 1 <= a.step <= a.n_levels. Exact cover is asserted, failure is a logic
// error.
DominoTiling to_domino(const ZArray& a);

// n steps at p = 1/2 from the packed start, then to_domino.
DominoTiling sample_uniform(int n, Rng& rng);

// Brute-force enumeration of all domino tilings of the order-n diamond
// (independent of the dynamics; 2^{n(n+1)/2} results, keep n tiny).
std::vector<DominoTiling> enumerate_tilings(int n);

} // namespace aztec
} // namespace detproc
