#include "pathmerge/pathmatch.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace pathmerge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum Lane : std::uint8_t { kMatch = 0, kUp = 1, kLeft = 2 };

// Index of the smallest value, earliest wins ties.
std::uint8_t argmin3(double a, double b, double c) {
  std::uint8_t best = 0;
  double v = a;
  if (b < v) {
    best = 1;
    v = b;
  }
  if (c < v) best = 2;
  return best;
}

void require_compatible(const Path& p, const Path& q) {
  if (p.nodes.empty() || q.nodes.empty()) throw std::invalid_argument("match_paths: empty path");
  if (!p.nodes.empty() && !q.nodes.empty() && p.nodes.front().bodies() != q.nodes.front().bodies()) {
    throw std::invalid_argument("match_paths: dof mismatch between paths");
  }
}

Alignment trace_linear(const DpTables& t, std::size_t m, std::size_t n) {
  Alignment a;
  a.cost = t.C(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    switch (t.trace(i, j)) {
      case Trace::Diag:
        a.ops.push_back(EditOp::match(--i, --j));
        break;
      case Trace::Up:
        a.ops.push_back(EditOp::gap_p(--i));
        break;
      case Trace::Left:
        a.ops.push_back(EditOp::gap_q(--j));
        break;
      case Trace::None:
        throw std::logic_error("trace-back reached an empty cell");
    }
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

Alignment trace_affine(const DpTables& t, std::size_t m, std::size_t n) {
  Alignment a;
  const auto mi = static_cast<Eigen::Index>(m);
  const auto ni = static_cast<Eigen::Index>(n);
  a.cost = t.C(mi, ni);
  std::uint8_t lane = argmin3(t.lanes[0](mi, ni), t.lanes[1](mi, ni), t.lanes[2](mi, ni));
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    const std::uint8_t from = t.lane_from[lane](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (lane == kMatch) {
      a.ops.push_back(EditOp::match(--i, --j));
    } else if (lane == kUp) {
      a.ops.push_back(EditOp::gap_p(--i));
    } else {
      a.ops.push_back(EditOp::gap_q(--j));
    }
    lane = from;
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

}  // namespace

double match_delta(const Config& a, const Config& b, const MatchParams& params,
                   const MetricWeights& w) {
  return params.delta_scale * config_distance(a, b, w);
}

MatchResult match_paths(const Path& p, const Path& q, const MatchParams& params,
                        const MetricWeights& w) {
  require_compatible(p, q);
  if (params.gap_ext < 0.0 || params.gap_init < 0.0 || !(params.delta_scale > 0.0)) {
    throw std::invalid_argument("match_paths: gap costs must be >= 0 and delta_scale > 0");
  }
  const std::size_t m = p.size();
  const std::size_t n = q.size();
  const auto M = static_cast<Eigen::Index>(m);
  const auto N = static_cast<Eigen::Index>(n);

  MatchResult out;
  DpTables& t = out.tables;
  t.C = DpTables::CostMatrix::Constant(M + 1, N + 1, kInf);
  t.TB = DpTables::TraceMatrix::Zero(M + 1, N + 1);
  const double ext = params.gap_ext;

  if (params.gap_init == 0.0) {
    t.C(0, 0) = 0.0;
    for (Eigen::Index i = 0; i <= M; ++i) {
      for (Eigen::Index j = 0; j <= N; ++j) {
        if (i == 0 && j == 0) continue;
        const double diag = (i > 0 && j > 0)
                                ? t.C(i - 1, j - 1) + match_delta(p.nodes[i - 1], q.nodes[j - 1], params, w)
                                : kInf;
        const double up = i > 0 ? t.C(i - 1, j) + ext : kInf;
        const double left = j > 0 ? t.C(i, j - 1) + ext : kInf;
        const std::uint8_t pick = argmin3(diag, up, left);
        t.C(i, j) = pick == 0 ? diag : (pick == 1 ? up : left);
        t.TB(i, j) = static_cast<std::uint8_t>(static_cast<std::uint8_t>(Trace::Diag) + pick);
      }
    }
    out.alignment = trace_linear(t, m, n);
    return out;
  }

  const double open = params.gap_init + ext;
  t.lanes.assign(3, DpTables::CostMatrix::Constant(M + 1, N + 1, kInf));
  t.lane_from.assign(3, DpTables::TraceMatrix::Zero(M + 1, N + 1));
  auto& lm = t.lanes[kMatch];
  auto& lu = t.lanes[kUp];
  auto& ll = t.lanes[kLeft];
  lm(0, 0) = 0.0;
  t.C(0, 0) = 0.0;
  for (Eigen::Index i = 0; i <= M; ++i) {
    for (Eigen::Index j = 0; j <= N; ++j) {
      if (i == 0 && j == 0) continue;
      if (i > 0 && j > 0) {
        const std::uint8_t from = argmin3(lm(i - 1, j - 1), lu(i - 1, j - 1), ll(i - 1, j - 1));
        lm(i, j) = t.lanes[from](i - 1, j - 1) + match_delta(p.nodes[i - 1], q.nodes[j - 1], params, w);
        t.lane_from[kMatch](i, j) = from;
      }
      if (i > 0) {
        const double c[3] = {lm(i - 1, j) + open, lu(i - 1, j) + ext, ll(i - 1, j) + open};
        const std::uint8_t from = argmin3(c[0], c[1], c[2]);
        lu(i, j) = c[from];
        t.lane_from[kUp](i, j) = from;
      }
      if (j > 0) {
        const double c[3] = {lm(i, j - 1) + open, lu(i, j - 1) + open, ll(i, j - 1) + ext};
        const std::uint8_t from = argmin3(c[0], c[1], c[2]);
        ll(i, j) = c[from];
        t.lane_from[kLeft](i, j) = from;
      }
      const std::uint8_t pick = argmin3(lm(i, j), lu(i, j), ll(i, j));
      t.C(i, j) = t.lanes[pick](i, j);
      t.TB(i, j) = static_cast<std::uint8_t>(static_cast<std::uint8_t>(Trace::Diag) + pick);
    }
  }
  out.alignment = trace_affine(t, m, n);
  return out;
}

double alignment_cost(const Path& p, const Path& q, const std::vector<EditOp>& ops,
                      const MatchParams& params, const MetricWeights& w) {
  double cost = 0.0;
  EditOp::Kind prev = EditOp::Kind::Match;
  for (const auto& op : ops) {
    if (op.kind == EditOp::Kind::Match) {
      cost += match_delta(p.nodes.at(op.i), q.nodes.at(op.j), params, w);
    } else {
      cost += params.gap_ext;
      if (op.kind != prev) cost += params.gap_init;
    }
    prev = op.kind;
  }
  return cost;
}

std::string check_alignment(const Alignment& a, std::size_t m, std::size_t n) {
  std::size_t next_i = 0;
  std::size_t next_j = 0;
  for (std::size_t k = 0; k < a.ops.size(); ++k) {
    const auto& op = a.ops[k];
    const bool uses_i = op.kind != EditOp::Kind::GapQ;
    const bool uses_j = op.kind != EditOp::Kind::GapP;
    if (uses_i && op.i != next_i++) return "op " + std::to_string(k) + ": p index out of order";
    if (uses_j && op.j != next_j++) return "op " + std::to_string(k) + ": q index out of order";
  }
  if (next_i != m) return "alignment does not consume every node of p";
  if (next_j != n) return "alignment does not consume every node of q";
  return {};
}

double default_gap_ext(const Path& p, const Path& q, double delta_scale, const MetricWeights& w) {
  std::vector<double> steps;
  for (const Path* path : {&p, &q}) {
    for (std::size_t i = 0; i + 1 < path->size(); ++i) {
      steps.push_back(config_distance(path->nodes[i], path->nodes[i + 1], w));
    }
  }
  if (steps.empty()) return 0.0;
  std::sort(steps.begin(), steps.end());
  const std::size_t mid = steps.size() / 2;
  const double median = steps.size() % 2 ? steps[mid] : 0.5 * (steps[mid - 1] + steps[mid]);
  return delta_scale * median;
}

std::vector<std::pair<std::size_t, std::size_t>> bridge_candidates(const Alignment& a) {
  const std::size_t count = a.ops.size();
  std::vector<std::size_t> prev_match(count, EditOp::kNone);
  std::vector<std::size_t> next_match(count, EditOp::kNone);
  for (std::size_t k = 0, last = EditOp::kNone; k < count; ++k) {
    prev_match[k] = last;
    if (a.ops[k].kind == EditOp::Kind::Match) last = k;
  }
  for (std::size_t k = count, last = EditOp::kNone; k-- > 0;) {
    next_match[k] = last;
    if (a.ops[k].kind == EditOp::Kind::Match) last = k;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& op = a.ops[k];
    if (op.kind == EditOp::Kind::Match) {
      pairs.emplace_back(op.i, op.j);
      continue;
    }
    for (std::size_t flank : {prev_match[k], next_match[k]}) {
      if (flank == EditOp::kNone) continue;
      const auto& f = a.ops[flank];
      if (op.kind == EditOp::Kind::GapQ) {
        pairs.emplace_back(f.i, op.j);
      } else {
        pairs.emplace_back(op.i, f.j);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> bridge_candidates(const Path& p, const Path& q,
                                                                   const Alignment& a) {
  if (const std::string err = check_alignment(a, p.size(), q.size()); !err.empty()) {
    throw std::invalid_argument("bridge_candidates: " + err);
  }
  return bridge_candidates(a);
}

}  // namespace pathmerge
