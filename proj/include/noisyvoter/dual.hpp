// dual.hpp — backward-in-time dual of the voter dynamics: coalescing random
// walks with killing, exact stationary sampling by coupling from the past,
// the grand coupling of (X_t, Y), and two-walker coalescence estimators.
//
// Dual picture: walkers start at every vertex at the top of the time slab and
// consume the forward event history downward. A copy event moves the occupant
// walker to the copied neighbor (merging with any walker already there); a
// noise event kills the occupant cluster and fixes its color. Clusters killed
// before the bottom get that noise color; survivors read x0 at their final
// position. Walkers therefore move at rate 1-theta and die at rate theta.
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "noisyvoter/dynamics.hpp"
#include "noisyvoter/rng.hpp"

namespace nv {

enum class EventKind : std::uint8_t { Noise, Copy };

struct Event {
  double time;     // forward time for histories; backward time inside CFTP epochs
  int vertex;      // whose clock rang
  EventKind kind;
  int value;       // Noise: color in [0,q); Copy: index into adj[vertex]
};

// Time-descending event list over forward times [0, horizon].
struct EventHistory {
  double horizon = 0;
  std::vector<Event> events;
};

// Poisson(n * span) many events with the same law run_forward consumes,
// reversed into descending order.
EventHistory gen_history(const Graph& g, const ModelParams& p, double span, uint64_t seed);

// Forward replay (ascending time) of a history; equals run_forward when the
// history came from gen_history with the same seed.
ColorConfig apply_history(const Graph& g, const ModelParams& p, const ColorConfig& x0,
                          const EventHistory& h);

// Coalescing-walk state: one walker per vertex, union-find over coalesced
// clusters. Within a cluster only the root is simulated; the root is the
// lowest walker id, and a dead cluster never moves or merges again.
struct WalkerSystem {
  std::vector<int> parent;       // union-find
  std::vector<int> position;     // per live root
  std::vector<char> alive;       // per root
  std::vector<int> death_color;  // per dead root
  std::vector<int> occupant;     // vertex -> live root occupying it, or -1
  int live = 0;

  void init(int n);
  int find(int i);
  void apply(const Graph& g, const Event& e);
};

struct Estimate {
  double value;
  double se;  // one standard error
};

// Sample of X_t via the dual; distributed exactly as run_forward(g,p,x0,t) and
// configuration-equal to it when given the same seed.
ColorConfig backward_sample(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                            uint64_t seed);

struct CftpSample {
  ColorConfig y;
  std::vector<int> cluster;  // per-vertex cluster root id
  int n_clusters = 0;
};

// Exact sample from the stationary measure: extend the past in doubling
// horizons 1,2,4,... (epoch j reuses the fixed stream substream(seed,j), so
// extending never rewrites already-seen randomness) until every cluster has
// died; each cluster keeps the uniform color of its killing event.
// first_horizon_exp forces the initial chunk to cover horizon 2^e before the
// all-dead check runs; the output is the same for every value (the CFTP
// consistency property).
ColorConfig cftp_sample(const Graph& g, const ModelParams& p, uint64_t seed,
                        int first_horizon_exp = 0);
CftpSample cftp_sample_detailed(const Graph& g, const ModelParams& p, uint64_t seed,
                                int first_horizon_exp = 0);

struct CoupledSample {
  ColorConfig xt;  // marginally the law of X_t from x0
  ColorConfig y;   // marginally stationary
  std::vector<char> survived;  // per vertex: cluster reached forward time 0
};

// One history: stop at forward time 0 to read X_t, keep extending into the
// past for Y. X_t(v) == Y(v) wherever the cluster died inside [0, t].
CoupledSample coupled_sample(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                             uint64_t seed);

struct PairStats {
  Estimate p_meet;   // P(walks from u and v coalesce before either dies)
  Estimate p_after;  // P(they coalesce, at a time > t)
};

// Two-walker Monte Carlo (non-meeting walkers are independent, so simulating
// just the pair is exact). Binomial standard errors.
PairStats coalescence_probs(const Graph& g, const ModelParams& p, int u, int v, double t,
                            long long reps, uint64_t seed);

// Meet time of the two-walker system, +inf if either walker dies first.
double pair_meet_time(const Graph& g, double theta, int a, int b, Rng& rng);

struct TCorrResult {
  double t_corr;             // first grid time with edge-summed estimate < sqrt(n)
  std::size_t grid_index;
  Estimate sum;              // the estimate at the crossing
  std::vector<Estimate> sums;  // per grid point (common random numbers)
};

// Edge sum of P(u <->_{>t} v) over the grid; exhaustive over edges for
// m <= 10^4, uniformly sampled (and rescaled) above.
TCorrResult estimate_t_corr(const Graph& g, const ModelParams& p, const std::vector<double>& t_grid,
                            long long reps, uint64_t seed);

// Fraction of rate-(1-theta) walks (no killing) from `start` that stay inside
// S up to time t. `start` is a dense distribution supported on S.
Estimate stay_prob(const Graph& g, const ModelParams& p, const std::vector<int>& S, double t,
                   const std::vector<double>& start, long long reps, uint64_t seed);

// pi conditioned on S, as a dense vector.
std::vector<double> pi_restricted(const Graph& g, const std::vector<int>& S);

// P(every cluster of the full dual system is dead by backward time t).
Estimate all_dead_prob(const Graph& g, const ModelParams& p, double t, long long reps,
                       uint64_t seed);

// h(v) = (1/d(v)) * sum over neighbors w of P(v <-> w), estimated once per
// edge and shared by both endpoints.
std::vector<Estimate> estimate_h(const Graph& g, const ModelParams& p, long long reps,
                                 uint64_t seed);

inline constexpr double kNeverMeets = std::numeric_limits<double>::infinity();

}  // namespace nv
