#pragma once

#include <sbw/graph.hh>
#include <sbw/spin.hh>

#include <cstdint>
#include <string>
#include <vector>

namespace sbw
{
    // z^0 z^1 plus the 5-cycle z^1 z^2 z^3 z^4 z^5
    auto lolly_target() -> Graph;

    // smallest ell >= 6 with 5/ell < eta_bar
    auto lolly_ell(double eta_bar) -> int;

    struct LollyResult
    {
        Homomorphism h;         // into lolly_target(), indexed by hbar vertex
        int ell = 0;
        int zone = 0;
        std::vector<int> phi;   // 1 = inverted block
        std::vector<int> block_start;  // positions in the order
    };

    auto lolly_homomorphism(const Graph & hbar, const std::vector<int> & colouring, const std::vector<int> & order,
        double eta_bar) -> Homomorphism;

    // explicit block count and zone size; used by partition_H at desk scale
    auto lolly_with(const Graph & hbar, const std::vector<int> & colouring, const std::vector<int> & order,
        int ell, int zone) -> LollyResult;

    struct LollyReport
    {
        bool homomorphism = false;
        bool lolly1 = false, lolly2 = false, lolly3 = false;
        std::vector<long> preimage;  // sizes for z^0..z^5
        std::vector<std::string> failures;

        auto ok() const -> bool { return homomorphism && lolly1 && lolly2 && lolly3; }
    };

    auto verify_lolly(const Graph & hbar, const std::vector<int> & colouring, const std::vector<int> & order,
        const Homomorphism & h, double eta_bar, int zone, double slack) -> LollyReport;

    auto equitable_coloring(const Graph & g, int colours, std::uint64_t seed = 0) -> std::vector<int>;
    auto is_equitable(const Graph & g, const std::vector<int> & colouring, int colours) -> bool;

    auto spin_t_for(int delta) -> int;

    struct HPartition
    {
        int r = 0, t = 0, delta = 0, m = 0;
        double eta = 0.0;
        int zone = 0;                 // boundary block size (the bandwidth, at least 1)
        Homomorphism h;               // into SpinGraph(r, t)
        std::vector<std::vector<int>> classes;  // preimage of every spin vertex
        std::vector<std::vector<int>> x_tilde;  // per i: vertices of V~_i with a neighbour outside U~_i
        std::vector<int> ells;        // lolly block count per index
        int repaired = 0;             // vertices moved to u_i by the degree repair
        bool paper_beta_feasible = false;
        bool guaranteed = false;      // desk-scale sufficient condition for (H1),(H2),(H5)

        auto spin() const -> SpinGraph { return SpinGraph(r, t, true); }
        auto cls(SpinRole role, int i, int j = -1) const -> const std::vector<int> &;
    };

    struct PartitionHOptions
    {
        std::uint64_t seed = 0;
        bool verify = true;           // throw if the result fails verify_H_partition
    };

    auto partition_H(const Graph & hgraph, const std::vector<int> & order, int r, double eta, int delta,
        PartitionHOptions opts = {}) -> HPartition;

    // the three conditions on beta = bw/m with eta_bar = eta/20
    auto paper_beta_feasible(double beta, int r, double eta, int delta) -> bool;

    struct HReport
    {
        bool preimages = true;
        bool h1 = true, h2 = true, h3 = true, h4 = true, h5 = true;
        bool homomorphism = true;
        double tolerance = 0.0;       // additive slack used on size bounds
        std::vector<std::string> failures;

        auto ok() const -> bool { return preimages && h1 && h2 && h3 && h4 && h5 && homomorphism; }
    };

    auto verify_H_partition(const Graph & hgraph, const HPartition & part) -> HReport;

    // rebuild classes and X~ from h (for hand-built partitions)
    void rebuild_classes(const Graph & hgraph, HPartition & part);
}
