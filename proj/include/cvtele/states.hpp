#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cvtele/state_handle.hpp"

// Curated state catalog with closed-form constructions, the CLI state
// grammar, and pure-state entanglement tooling.
//
// Grammar: vacuum | two-mode-vacuum | coherent:<re>[+-]<im>i | fock:<n> |
//          thermal:n=<nbar> | cat:alpha=<c>,parity=even|odd | svs:r=<r> |
//          psub-svs:r=<r> | bell:c0=<v>,c1=<v>,...

namespace cvtele {

struct StateSpec {
    enum class Kind {
        vacuum,
        coherent,
        fock,
        thermal,
        cat,
        svs,
        psub_svs,
        fock_bell,
        two_mode_vacuum,
    };

    Kind kind = Kind::vacuum;
    cxd alpha{};                // coherent, cat
    int n = 0;                  // fock
    double nbar = 0.0;          // thermal
    double r = 0.0;             // svs, psub_svs
    bool even = true;           // cat parity
    std::vector<double> bell;   // fock_bell coefficients c_0..c_k
    int dim = 20;
    std::string text;           // canonical grammar form

    bool two_mode() const {
        return kind == Kind::svs || kind == Kind::psub_svs || kind == Kind::fock_bell ||
               kind == Kind::two_mode_vacuum;
    }
};

// Throws Error(module "states-parse") on malformed text; the CLI maps that
// to a usage error.
StateSpec parse_state_spec(std::string_view text, int dim);

// Normalized state with every closed-form representation attached; enforces
// the truncation-population guard (>= 1 - 1e-6 below dim).
StateHandle build(const StateSpec& spec);

StateHandle build(std::string_view text, int dim);

// States exercised by the verification suites.
std::vector<std::string> input_catalog();
std::vector<std::string> resource_catalog();

struct EntanglementRecord {
    double entropy = 0.0;    // base-2 entanglement entropy
    double delta_epr = 0.0;
    std::string label;
};

// Schmidt decomposition of a pure two-mode state (SVD of the coefficient
// matrix); errors on mixed input (purity < 1 - 1e-8).
EntanglementRecord schmidt_entropy(const StateHandle& state);

// Schmidt probabilities sorted descending (for SVS-equivalence checks).
std::vector<double> schmidt_probabilities(const StateHandle& state);
bool schmidt_geometric(const std::vector<double>& probs, double tol = 1e-6);

// Seeded mixture of fock_bell states (Schmidt rank <= 6) and
// photon-subtracted SVS at random r; every sample is pure and undisplaced.
std::vector<StateSpec> sample_pure_resources(int count, std::uint64_t seed, int dim);

// SVS entanglement entropy E(r) and the numerically inverted frontier
// Delta_EPR^SVS(E) (monotone bisection on r).
double svs_entropy(double r);
double svs_frontier_delta(double entropy);

}  // namespace cvtele
