#pragma once

// Edit-distance alignment of two discrete paths and the bridge candidates
// it induces.
//
// Nodes are letters; replacing p_i by q_j costs delta_scale * distance, a
// gap costs gap_ext per node plus gap_init per maximal run of same-side
// gaps. The DP is a global alignment: every node of both paths is consumed
// exactly once. With gap_init > 0 the table is a three-lane affine DP.

#include "pathmerge/config.hpp"
#include "pathmerge/path.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

namespace pathmerge {

struct MatchParams {
  double gap_ext = 0.0;
  double gap_init = 0.0;
  double delta_scale = 1.0;
};

struct EditOp {
  enum class Kind : std::uint8_t { Match, GapP, GapQ };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  Kind kind;
  std::size_t i = kNone;  // index into p (Match, GapP)
  std::size_t j = kNone;  // index into q (Match, GapQ)

  static EditOp match(std::size_t i, std::size_t j) { return {Kind::Match, i, j}; }
  static EditOp gap_p(std::size_t i) { return {Kind::GapP, i, kNone}; }
  static EditOp gap_q(std::size_t j) { return {Kind::GapQ, kNone, j}; }

  bool operator==(const EditOp&) const = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  double cost = 0.0;
};

/// Trace symbols. Diag consumes p_i and q_j, Up consumes p_i, Left consumes q_j.
enum class Trace : std::uint8_t { None = 0, Diag = 1, Up = 2, Left = 3 };

struct DpTables {
  using CostMatrix = Eigen::MatrixXd;
  using TraceMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

  /// (m+1) x (n+1); C(i,j) is the optimal cost of aligning p[0,i) with q[0,j).
  CostMatrix C;
  /// Last operation of an optimal alignment ending at (i,j).
  TraceMatrix TB;
  /// Affine mode only: per-lane costs and back-pointers (lane 0 match,
  /// 1 gap in q / Up, 2 gap in p / Left). Empty otherwise.
  std::vector<CostMatrix> lanes;
  std::vector<TraceMatrix> lane_from;

  Trace trace(std::size_t i, std::size_t j) const { return static_cast<Trace>(TB(i, j)); }
};

struct MatchResult {
  DpTables tables;
  Alignment alignment;
};

/// Replacement cost between two configurations.
double match_delta(const Config& a, const Config& b, const MatchParams& params,
                   const MetricWeights& w);

/// Optimal global alignment. Ties prefer Diag, then Up, then Left. Throws
/// std::invalid_argument on dof mismatch or empty paths.
MatchResult match_paths(const Path& p, const Path& q, const MatchParams& params,
                        const MetricWeights& w);

/// Cost of an explicit op list under the same pricing as match_paths.
double alignment_cost(const Path& p, const Path& q, const std::vector<EditOp>& ops,
                      const MatchParams& params, const MetricWeights& w);

/// Empty string when `a` is a valid global alignment of sizes (m, n).
std::string check_alignment(const Alignment& a, std::size_t m, std::size_t n);

/// delta_scale times the median distance between consecutive nodes of p and q.
double default_gap_ext(const Path& p, const Path& q, double delta_scale, const MetricWeights& w);

/// Deduplicated (i in p, j in q) pairs in ascending order: every Match, and
/// every gapped node joined to the matched nodes of the other path that
/// flank its gap run.
std::vector<std::pair<std::size_t, std::size_t>> bridge_candidates(const Alignment& a);
/// Same, after checking that `a` aligns p with q. Throws std::invalid_argument otherwise.
std::vector<std::pair<std::size_t, std::size_t>> bridge_candidates(const Path& p, const Path& q,
                                                                   const Alignment& a);

}  // namespace pathmerge
