// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <numeric>

#include "coreplace/errors.hpp"
#include "coreplace/exact/solver.hpp"

namespace coreplace::exact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct LocalTerm {
  std::size_t row;
  double coef;
};

// All products between the placements of two instances.
struct InstancePair {
  std::size_t lo = 0;  // instance with the smaller index
  std::size_t hi = 0;
  std::vector<double> cost;      // [s_lo * S + s_hi]
  std::vector<char> forbidden;   // product can never be 1
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpModel& model, double time_limit_s)
      : model_(model),
        servers_(model.server_count),
        groups_(model.instances.size()),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(time_limit_s))) {
    prepare();
  }

  SolveOutcome run() {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    if (!well_formed_) {
      out.status = SolveStatus::Infeasible;
      out.wall_time = std::chrono::steady_clock::now() - start;
      return out;
    }
    const double root_bound = groups_ == 0 ? 0.0 : lower_bound(0);
    dfs(0);
    out.nodes = nodes_;
    out.wall_time = std::chrono::steady_clock::now() - start;
    if (!best_.empty() || (groups_ == 0)) {
      Assignment a;
      for (std::size_t g = 0; g < groups_; ++g) a.emplace(model_.instances[g], best_[g]);
      out.assignment = std::move(a);
      out.psi = groups_ == 0 ? 0.0 : best_value_;
    }
    if (timed_out_) {
      out.status = SolveStatus::TimeLimit;
      out.lower_bound = std::min(root_bound, out.assignment ? out.psi : kInf);
    } else if (out.assignment) {
      out.status = SolveStatus::Optimal;
      out.lower_bound = out.psi;
    } else {
      out.status = SolveStatus::Infeasible;
      out.lower_bound = kInf;
    }
    return out;
  }

 private:
  void prepare() {
    const auto& vars = model_.variables;
    const std::size_t n_vars = vars.size();
    if (n_vars < groups_ * servers_) throw DomainError("model lacks placement variables");
    for (std::size_t g = 0; g < groups_; ++g) {
      for (ServerId s = 0; s < servers_; ++s) {
        const auto& v = vars[model_.placement_var(g, s)];
        if (v.kind != VarKind::Placement || v.instance != g || v.server != s) {
          throw DomainError("placement variables are not laid out instance-major");
        }
      }
    }

    obj_.assign(n_vars, 0.0);
    for (const auto& t : model_.objective) obj_[t.var] += t.coef;

    var_rows_.assign(n_vars, {});
    for (std::size_t r = 0; r < model_.rows.size(); ++r) {
      const auto& row = model_.rows[r];
      switch (row.kind) {
        case RowKind::Assignment:
        case RowKind::ProductUpperFirst:
        case RowKind::ProductUpperSecond:
        case RowKind::ProductLower:
          continue;
        default:
          break;
      }
      if (row.sense != Sense::LessEqual) throw DomainError("row " + row.name + " is not <=");
      const std::size_t local = rhs_.size();
      rhs_.push_back(row.rhs);
      for (const auto& t : row.terms) {
        if (t.coef < 0.0) throw DomainError("row " + row.name + " has a negative coefficient");
        if (t.coef == 0.0) continue;
        var_rows_[t.var].push_back({local, t.coef});
      }
    }
    activity_.assign(rhs_.size(), 0.0);

    forced_zero_.assign(n_vars, 0);
    for (std::size_t v = 0; v < n_vars; ++v) {
      for (const auto& [r, c] : var_rows_[v]) {
        if (c > rhs_[r] + kTolerance) forced_zero_[v] = 1;
      }
    }

    partner_.assign(groups_ * servers_, {});
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
    pairs_of_.assign(groups_, {});
    weight_.assign(groups_, 0.0);
    for (std::size_t y = groups_ * servers_; y < n_vars; ++y) {
      const auto& v = vars[y];
      if (v.kind != VarKind::Product) throw DomainError("unexpected variable " + v.name);
      partner_[v.first].push_back({y, v.second});
      partner_[v.second].push_back({y, v.first});
      const std::size_t g1 = v.first / servers_, s1 = v.first % servers_;
      const std::size_t g2 = v.second / servers_, s2 = v.second % servers_;
      if (g1 == g2) throw DomainError("product of two placements of one instance");
      const auto key = std::minmax(g1, g2);
      auto [it, inserted] = pair_index.emplace(std::pair{key.first, key.second}, pairs_.size());
      if (inserted) {
        InstancePair p;
        p.lo = key.first;
        p.hi = key.second;
        p.cost.assign(servers_ * servers_, 0.0);
        p.forbidden.assign(servers_ * servers_, 0);
        pairs_.push_back(std::move(p));
        pairs_of_[key.first].push_back(it->second);
        pairs_of_[key.second].push_back(it->second);
      }
      auto& p = pairs_[it->second];
      const std::size_t cell = g1 == p.lo ? s1 * servers_ + s2 : s2 * servers_ + s1;
      p.cost[cell] += obj_[y];
      if (forced_zero_[y]) p.forbidden[cell] = 1;
      weight_[g1] += obj_[y];
      weight_[g2] += obj_[y];
    }

    order_.resize(groups_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return weight_[a] > weight_[b]; });

    assign_.assign(groups_, kNone);
    occupancy_.assign(servers_, 0);
    fits_.assign(groups_ * servers_, 0);
    if (servers_ == 0 && groups_ > 0) well_formed_ = false;
  }

  bool timed_out() {
    if (timed_out_) return true;
    if ((nodes_ & 255u) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    return timed_out_;
  }

  bool fits(std::size_t g, ServerId s) const {
    const std::size_t x = model_.placement_var(g, s);
    if (forced_zero_[x]) return false;
    for (const auto& [r, c] : var_rows_[x]) {
      if (activity_[r] + c > rhs_[r] + kTolerance) return false;
    }
    return true;
  }

  bool fits_together(std::size_t g, std::size_t h, ServerId s) const {
    const std::size_t xg = model_.placement_var(g, s);
    const std::size_t xh = model_.placement_var(h, s);
    for (const auto& [r, c] : var_rows_[xg]) {
      double extra = c;
      for (const auto& [r2, c2] : var_rows_[xh]) {
        if (r2 == r) extra += c2;
      }
      if (activity_[r] + extra > rhs_[r] + kTolerance) return false;
    }
    return true;
  }

  // Partition of the objective: placed/placed terms are exact; each unplaced
  // instance takes its cheapest server against the placed ones; each
  // unplaced/unplaced pair takes its cheapest admissible server pair.
  double lower_bound(std::size_t depth) {
    for (std::size_t k = depth; k < groups_; ++k) {
      const std::size_t g = order_[k];
      for (ServerId s = 0; s < servers_; ++s) fits_[g * servers_ + s] = fits(g, s) ? 1 : 0;
    }
    double bound = objective_;
    for (std::size_t k = depth; k < groups_; ++k) {
      const std::size_t g = order_[k];
      double best = kInf;
      for (ServerId t = 0; t < servers_; ++t) {
        if (!fits_[g * servers_ + t]) continue;
        double c = 0.0;
        bool ok = true;
        for (std::size_t pi : pairs_of_[g]) {
          const auto& p = pairs_[pi];
          const std::size_t h = p.lo == g ? p.hi : p.lo;
          if (assign_[h] == kNone) continue;
          const std::size_t cell =
              p.lo == g ? t * servers_ + assign_[h] : assign_[h] * servers_ + t;
          if (p.forbidden[cell]) {
            ok = false;
            break;
          }
          c += p.cost[cell];
        }
        if (ok) best = std::min(best, c);
      }
      if (best == kInf) return kInf;
      bound += best;
    }
    for (const auto& p : pairs_) {
      if (assign_[p.lo] != kNone || assign_[p.hi] != kNone) continue;
      double best = kInf;
      for (ServerId s = 0; s < servers_; ++s) {
        if (!fits_[p.lo * servers_ + s]) continue;
        for (ServerId t = 0; t < servers_; ++t) {
          if (!fits_[p.hi * servers_ + t]) continue;
          const std::size_t cell = s * servers_ + t;
          if (p.forbidden[cell] || p.cost[cell] >= best) continue;
          if (s == t && !fits_together(p.lo, p.hi, s)) continue;
          best = p.cost[cell];
        }
      }
      if (best == kInf) return kInf;
      bound += best;
    }
    return bound;
  }

  // Applies x_{g,s} = 1 and every product it completes. Returns false, with
  // nothing applied, when a tracked row would overflow.
  bool place(std::size_t g, ServerId s) {
    const std::size_t x = model_.placement_var(g, s);
    const std::size_t mark = undo_.size();
    double delta_obj = obj_[x];
    const auto apply = [&](std::size_t v) {
      for (const auto& [r, c] : var_rows_[v]) {
        activity_[r] += c;
        undo_.push_back({r, c});
      }
    };
    apply(x);
    bool ok = true;
    for (const auto& [y, other] : partner_[x]) {
      const std::size_t h = other / servers_;
      if (assign_[h] != other % servers_) continue;
      if (forced_zero_[y]) {
        ok = false;
        break;
      }
      apply(y);
      delta_obj += obj_[y];
    }
    if (ok) {
      for (std::size_t k = mark; k < undo_.size(); ++k) {
        if (activity_[undo_[k].row] > rhs_[undo_[k].row] + kTolerance) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      unwind(mark);
      return false;
    }
    assign_[g] = s;
    ++occupancy_[s];
    objective_ += delta_obj;
    marks_.push_back({mark, delta_obj});
    return true;
  }

  void unplace(std::size_t g) {
    const auto [mark, delta_obj] = marks_.back();
    marks_.pop_back();
    unwind(mark);
    --occupancy_[assign_[g]];
    assign_[g] = kNone;
    objective_ -= delta_obj;
  }

  void unwind(std::size_t mark) {
    while (undo_.size() > mark) {
      activity_[undo_.back().row] -= undo_.back().coef;
      undo_.pop_back();
    }
  }

  void dfs(std::size_t depth) {
    ++nodes_;
    if (timed_out()) return;
    if (depth == groups_) {
      if (best_.empty() || objective_ < best_value_ - kTolerance) {
        best_value_ = objective_;
        best_ = assign_;
      }
      return;
    }
    const double bound = lower_bound(depth);
    if (bound == kInf || (!best_.empty() && bound >= best_value_ - kTolerance)) return;

    const std::size_t g = order_[depth];
    std::vector<char> class_seen(servers_, 0);
    for (ServerId s = 0; s < servers_; ++s) {
      if (occupancy_[s] == 0) {
        const std::size_t cls = model_.server_class[s];
        if (class_seen[cls]) continue;
        class_seen[cls] = 1;
      }
      if (!place(g, s)) continue;
      dfs(depth + 1);
      unplace(g);
      if (timed_out_) return;
    }
  }

  const IlpModel& model_;
  std::size_t servers_;
  std::size_t groups_;
  std::chrono::steady_clock::time_point deadline_;
  bool well_formed_ = true;

  std::vector<double> obj_;
  std::vector<double> rhs_;
  std::vector<double> activity_;
  std::vector<std::vector<LocalTerm>> var_rows_;
  std::vector<char> forced_zero_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> partner_;
  std::vector<InstancePair> pairs_;
  std::vector<std::vector<std::size_t>> pairs_of_;
  std::vector<double> weight_;
  std::vector<std::size_t> order_;

  std::vector<std::size_t> assign_;
  std::vector<std::size_t> occupancy_;
  std::vector<char> fits_;
  std::vector<LocalTerm> undo_;
  std::vector<std::pair<std::size_t, double>> marks_;
  double objective_ = 0.0;

  std::vector<std::size_t> best_;
  double best_value_ = kInf;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "?";
}

SolveOutcome solve_bnb(const IlpModel& model, double time_limit_s) {
  if (!(time_limit_s > 0.0)) throw ConfigError("time limit must be positive");
  return BranchAndBound(model, time_limit_s).run();
}

}  // namespace coreplace::exact
