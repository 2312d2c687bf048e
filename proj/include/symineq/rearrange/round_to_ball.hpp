#pragma once

#include <string>
#include <variant>
#include <vector>

#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/polytope.hpp"
#include "symineq/geomcore/region.hpp"

namespace symineq
{
enum class Scheme
{
    Greedy,
    IrrationalBasis
};

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& s);

struct RoundOptions
{
    Scheme scheme = Scheme::Greedy;
    int max_iters = 50;
    double tol = 0.01;          // stop once |E_m △ E*| <= tol·|E|
    int candidates = 64;        // sampled directions per greedy step
    int guard_tries = 8;        // next-best candidates tried before a step is declared stalled
    int hausdorff_directions = 256;
    int max_polygon_vertices = 512;
    int snapshot_every = 0;     // 0 keeps only the initial and final bodies
};

struct TraceStep
{
    int iteration = 0;
    Vector direction;  // empty for the initial state
    double symdiff = 0;
    double hausdorff = 0;
};

struct SymmetrisationTrace
{
    Scheme scheme = Scheme::Greedy;
    double volume = 0;
    Ball target;
    std::vector<TraceStep> steps;
    std::variant<GridSet, Polytope> final_body;
    std::vector<std::variant<GridSet, Polytope>> snapshots;
    bool converged = false;
    // Set when max_iters ran out or the greedy guard found no non-increasing step.
    bool flagged = false;
    std::string note;
};

// Iterated Steiner symmetrisation towards the origin-centred ball of equal volume.
// Greedy: each step picks, among `candidates` equally spaced directions, the one
// minimising |S_u(E_m) △ E*| (ties to the lowest index), then symmetrises along
// the rest of an orthonormal frame. A step whose outcome would raise the symmetric
// difference is replaced by the next-best candidate, up to guard_tries times.
// Irrational basis: one pass applies S_{u_1}, ..., S_{u_n} for a fixed basis
// whose angles are irrational multiples of pi.
SymmetrisationTrace round_to_ball(const GridSet& e, const RoundOptions& opt = {});
SymmetrisationTrace round_to_ball(const Polytope& e, const RoundOptions& opt = {});
SymmetrisationTrace round_to_ball(const Region& e, const RoundOptions& opt = {});

// Directions of the fixed-basis scheme in R^n.
std::vector<Vector> irrational_basis(int dim);

}  // namespace symineq
