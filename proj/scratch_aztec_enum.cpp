// Exhaustive validation of the shuffling dynamics: enumerate every coin
// path exactly, push probabilities through to tilings, check uniformity.
#include <cstdio>
#include <map>
#include <vector>

#include "detproc/aztec.hpp"

using namespace detproc;

struct PathState {
    aztec::ZArray z;
    double prob;
};

// Enumerate all outcomes of one step from a given state.
std::vector<PathState> step_outcomes(const aztec::ZArray& start, double prob) {
    std::vector<PathState> out;
    std::vector<std::vector<bool>> prefixes = {{}};
    while (!prefixes.empty()) {
        std::vector<bool> prefix = prefixes.back();
        prefixes.pop_back();
        aztec::ZArray a = start;
        std::size_t asked = 0;
        bool overflow = false;
        aztec::CoinFn coin = [&](int, int) -> bool {
            if (asked < prefix.size()) return prefix[asked++];
            ++asked;
            overflow = true;
            return false;
        };
        aztec::step(a, coin);
        if (overflow) {
            std::vector<bool> f = prefix, t = prefix;
            f.push_back(false);
            t.push_back(true);
            prefixes.push_back(f);
            prefixes.push_back(t);
        } else {
            out.push_back({a, prob * std::pow(0.5, double(prefix.size()))});
        }
    }
    return out;
}

int main() {
    for (int order = 1; order <= 3; ++order) {
        std::vector<PathState> frontier = {{aztec::initial(order), 1.0}};
        for (int s = 0; s < order; ++s) {
            std::vector<PathState> next;
            for (const PathState& ps : frontier) {
                auto outs = step_outcomes(ps.z, ps.prob);
                next.insert(next.end(), outs.begin(), outs.end());
            }
            frontier = next;
        }
        std::map<std::string, double> dist;
        for (const PathState& ps : frontier)
            dist[aztec::to_domino(ps.z).key()] += ps.prob;

        const auto all = aztec::enumerate_tilings(order);
        const double want = 1.0 / double(all.size());
        double worst = 0.0, total = 0.0;
        int missing = 0;
        for (const auto& t : all) {
            auto it = dist.find(t.key());
            const double p = it == dist.end() ? 0.0 : it->second;
            if (it == dist.end()) ++missing;
            worst = std::max(worst, std::fabs(p - want));
            total += p;
        }
        bool alien = dist.size() > all.size();
        std::printf(
            "order %d: enumerated tilings %zu, dynamics hit %zu, missing %d, "
            "alien %d, total prob %.15f, worst |p - 1/%zu| = %.3e\n",
            order, all.size(), dist.size(), missing, int(alien), total,
            all.size(), worst);
    }
    return 0;
}
