// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dads/experiment.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "dads/errors.hpp"
#include "dads/io.hpp"
#include "dads/scenario.hpp"

namespace dads {

Network build_network(const ScenarioConfig& cfg) {
  cfg.validate();
  Network net;
  if (cfg.scenario == Scenario::geometric500) {
    RngStream rng = derive_stream(cfg.seed, "positions");
    Scenario2 s = build_geometric500(cfg, rng);
    net.model = std::move(s.model);
    net.graph = std::move(s.graph);
    net.resamples = s.resamples;
    bool first = true;
    for (const SensorNode& node : net.graph.nodes()) {
      if (node.neighbors_in.empty()) continue;
      if (first) net.primary = node.id, first = false;
      net.partitions.emplace(node.id, partition_neighbors(net.graph, node.id, cfg));
    }
  } else {
    Scenario1 s = build_star100(cfg);
    net.model = std::move(s.model);
    net.graph = std::move(s.graph);
    net.primary = s.receiver;
    net.partitions.emplace(s.receiver, std::move(s.partition));
  }
  return net;
}

namespace {

bool attacked(RunCase c) { return c != RunCase::no_attack; }
bool detects(RunCase c) { return c == RunCase::dads || c == RunCase::ads; }

int resolve_q(int configured, std::size_t neighbors) {
  return configured > 0 ? configured : static_cast<int>(neighbors / 2);
}

struct ReceiverRun {
  SensorId id = 0;
  std::size_t pos = 0;
  bool primary = false;
  PartitionResult partition;  // used by the estimator-facing selection
  PartitionResult reference;  // the scenario partition, for rate bookkeeping
  AttackConfig attack_cfg;
  std::optional<Attacker> attacker;
  RngStream attack_rng{0};
  DadsConfig select_cfg;
  SelectionState state;
  SelectionStreams streams;
  bool shadow = false;  // centralized selection alongside, not fed to the estimator
  PartitionResult single;
  DadsConfig shadow_cfg;
  SelectionState shadow_state;
  SelectionStreams shadow_streams;
  AttackTrace trace;
  std::optional<OptRateTracker> rate;
  std::optional<OptRateTracker> shadow_rate;
  std::vector<AttackRow> step_attacks;
  std::vector<std::vector<double>> ratio_error;
};

std::string context(int k, SensorId id) {
  return "step " + std::to_string(k) + ", sensor " + std::to_string(id) + ": ";
}

class CaseRunner {
 public:
  CaseRunner(const ScenarioConfig& cfg, const Network& net, RunCase which, bool main)
      : cfg_(cfg), net_(net), which_(which), main_(main), graph_(net.graph), truth_rng_(0) {
    ecfg_ = cfg.consensus_weight > 0 ? EstimatorConfig{cfg.consensus_weight, cfg.exclude_suspects}
                                      : EstimatorConfig::defaults_for(graph_, cfg.exclude_suspects);
    ecfg_.validate(graph_);
    truth_rng_ = derive_stream(cfg.seed, "truth");
    const auto nodes = graph_.nodes();
    receiver_of_.assign(nodes.size(), -1);
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      meas_rng_.push_back(derive_stream(cfg.seed, "meas", static_cast<std::uint64_t>(nodes[p].id)));
      if (nodes[p].neighbors_in.empty()) continue;
      receiver_of_[p] = static_cast<int>(receivers_.size());
      receivers_.push_back(make_receiver(nodes[p], p));
    }
  }

  CaseResult run(ExperimentResult& out) {
    CaseResult res;
    res.which = which_;
    const auto nodes = graph_.nodes();
    const std::size_t n_nodes = nodes.size();
    Vector x = net_.model.initial_state;
    if (main_) record_trajectory(out, x);
    std::vector<Vector> next(n_nodes);
    for (int k = 1; k <= cfg_.steps; ++k) {
      parallel_for(n_nodes, cfg_.threads, [&](std::size_t p) {
        const SensorNode& node = graph_.nodes()[p];
        try {
          const Vector y = measure(node, x, meas_rng_[p]);
          if (receiver_of_[p] >= 0) {
            next[p] = advance(receivers_[static_cast<std::size_t>(receiver_of_[p])], k, y);
          } else {
            next[p] = estimator_step(graph_, ecfg_, net_.model, node.id, y, {}, {});
          }
        } catch (const Error& e) {
          throw RunError(context(k, node.id) + e.what());
        }
      });
      for (std::size_t p = 0; p < n_nodes; ++p) graph_.nodes()[p].estimate = next[p];
      x = step_state(net_.model, x, truth_rng_);

      std::vector<double> errs(n_nodes);
      for (std::size_t p = 0; p < n_nodes; ++p) errs[p] = estimation_error(graph_.nodes()[p].estimate, x);
      res.errors.push_back(std::move(errs));
      if (main_) {
        record_trajectory(out, x);
        for (auto& r : receivers_) {
          out.attacks.insert(out.attacks.end(), r.step_attacks.begin(), r.step_attacks.end());
        }
        if (detects(which_)) record_selection(out, k);
      }
    }
    res.curve = rmse_curve(res.errors, which_ == RunCase::no_attack ? RmseAggregate::mean : RmseAggregate::max);
    if (main_) finish_primary(out);
    return res;
  }

 private:
  ReceiverRun make_receiver(const SensorNode& node, std::size_t pos) {
    ReceiverRun r;
    r.id = node.id;
    r.pos = pos;
    r.primary = node.id == net_.primary;
    const IdList& nb = node.neighbors_in;
    r.reference = net_.partitions.at(node.id);
    r.single = partition_single(nb);
    r.trace = AttackTrace(node.id);
    if (attacked(which_)) {
      r.attack_cfg = cfg_.attack;
      r.attack_cfg.q = resolve_q(cfg_.attack.q, nb.size());
      r.attack_cfg.validate(nb.size());
      r.attacker.emplace(nb, r.attack_cfg);
      r.attack_rng = derive_stream(cfg_.seed, "attack", static_cast<std::uint64_t>(node.id));
    }
    if (detects(which_)) {
      r.select_cfg = cfg_.selection;
      r.select_cfg.q = resolve_q(cfg_.selection.q, nb.size());
      if (which_ == RunCase::ads) {
        r.partition = r.single;
        r.select_cfg.method = GainUpdateMethod::m5_full;
        r.select_cfg.force_first_subset = -1;
        r.streams = SelectionStreams::derive(derive_seed(cfg_.seed, "ads"), node.id, 1);
      } else {
        r.partition = r.reference;
        r.streams = SelectionStreams::derive(cfg_.seed, node.id, r.partition.size());
      }
      r.state = SelectionState::fresh(nb, r.partition.size());
      if (r.primary && main_) {
        r.rate.emplace(cfg_.selection.kind, r.reference.size());
        if (cfg_.ads_baseline && which_ == RunCase::dads) {
          r.shadow = true;
          r.shadow_cfg = r.select_cfg;
          r.shadow_cfg.method = GainUpdateMethod::m5_full;
          r.shadow_cfg.force_first_subset = -1;
          r.shadow_state = SelectionState::fresh(nb, 1);
          r.shadow_streams = SelectionStreams::derive(derive_seed(cfg_.seed, "ads"), node.id, 1);
          r.shadow_rate.emplace(cfg_.selection.kind, r.reference.size());
        }
      }
    }
    return r;
  }

  Vector advance(ReceiverRun& r, int k, const Vector& y) {
    const SensorNode& self = graph_.nodes()[r.pos];
    std::map<SensorId, Vector> received;
    for (SensorId j : self.neighbors_in) received.emplace(j, graph_.node(j).estimate);

    r.step_attacks.clear();
    if (r.attacker) {
      IdList compromised = r.attacker->next(r.attack_rng);
      std::vector<InjectedSignal> signals;
      for (SensorId j : compromised) {
        auto [tampered, z] = inject(received.at(j), r.attack_cfg, r.attack_rng);
        received[j] = tampered;
        if (main_ && cfg_.write_attacks) {
          for (Index d : r.attack_cfg.attacked_dims) r.step_attacks.push_back({k, r.id, j, d, z(d)});
        }
        signals.push_back({r.id, j, std::move(z)});
      }
      r.trace.record(std::move(compromised), std::move(signals));
    }

    std::set<SensorId> suspects;
    if (detects(which_)) {
      const IdList& nb = self.neighbors_in;
      Matrix columns(net_.model.state_dim(), static_cast<Index>(nb.size()));
      std::vector<Indicator> indicators;
      for (std::size_t c = 0; c < nb.size(); ++c) {
        const Indicator& ind = graph_.node(nb[c]).indicator;
        columns.col(static_cast<Index>(c)) = kalman_mask(ind, self.estimate - received.at(nb[c]));
        indicators.push_back(ind);
      }
      const ErrorMatrix errors(nb, columns, indicators);

      SelectionHooks hooks;
      if (r.primary && main_ && cfg_.paired_reference) {
        hooks.before_update = [&](std::size_t l, const SelectionState& before, SensorId last) {
          if (l != 2) return;
          SelectionState a = before;
          SelectionState b = before;
          apply_gain_update(r.select_cfg.kind, errors,
                            gain_update_targets(r.select_cfg.method, r.partition, last, errors, before), a);
          apply_gain_update(r.select_cfg.kind, errors,
                            gain_update_targets(GainUpdateMethod::m2_partition_related, r.partition, last, errors,
                                                before),
                            b);
          std::vector<double> row;
          for (const IdList& subset : r.partition.subsets) row.push_back(ratio_error(a, b, subset));
          r.ratio_error.push_back(std::move(row));
        };
      }
      r.state = dads_select(errors, r.partition, std::move(r.state), r.select_cfg, r.streams, hooks);
      suspects.insert(r.state.suspects.begin(), r.state.suspects.end());
      if (r.rate) r.rate->add(errors, r.reference, r.state.suspects);
      if (r.shadow) {
        r.shadow_state = dads_select(errors, r.single, std::move(r.shadow_state), r.shadow_cfg, r.shadow_streams);
        r.shadow_rate->add(errors, r.reference, r.shadow_state.suspects);
      }
    }
    return estimator_step(graph_, ecfg_, net_.model, r.id, y, received, suspects);
  }

  void record_trajectory(ExperimentResult& out, const Vector& x) const {
    if (!cfg_.write_trajectories) return;
    const auto nodes = graph_.nodes();
    Matrix est(x.size(), static_cast<Index>(nodes.size()));
    for (std::size_t p = 0; p < nodes.size(); ++p) est.col(static_cast<Index>(p)) = nodes[p].estimate;
    out.truth.push_back(x);
    out.estimates.push_back(std::move(est));
  }

  const ReceiverRun& primary() const {
    for (const auto& r : receivers_) {
      if (r.primary) return r;
    }
    throw ContractViolation("experiment: primary receiver has no in-neighbors");
  }

  void record_selection(ExperimentResult& out, int k) const {
    if (!cfg_.write_selection) return;
    const ReceiverRun& r = primary();
    const Vector w = r.state.weights();
    for (std::size_t g = 0; g < r.partition.size(); ++g) {
      const IdList& subset = r.partition.subsets[g];
      for (std::size_t i = 0; i < subset.size(); ++i) {
        const SensorId j = subset[i];
        const auto it = std::find(r.state.suspects.begin(), r.state.suspects.end(), j);
        const bool sel = it != r.state.suspects.end();
        const int l = sel ? static_cast<int>(it - r.state.suspects.begin()) + 1 : 0;
        const Vector& ratio = r.state.ratio[g];
        const double p = static_cast<Index>(i) < ratio.size() ? ratio(static_cast<Index>(i)) : 0.0;
        out.selection.push_back(
            {k, l, static_cast<int>(g) + 1, j, w(static_cast<Index>(r.state.position(j))), p, sel});
      }
    }
  }

  void finish_primary(ExperimentResult& out) const {
    const ReceiverRun& r = primary();
    PrimaryStats& s = out.primary;
    s.receiver = r.id;
    s.partition = r.reference;
    s.trace = r.trace;
    if (r.attacker) s.balance = balance_stats(r.trace, r.reference);
    if (r.rate) {
      s.tracked = true;
      s.dads = r.rate->report();
      s.dads.algorithm = which_ == RunCase::ads ? "ADS" : "D-ADS";
      s.dads.stage1 = to_string(r.select_cfg.stage1);
      s.dads.family = attacked(which_) ? to_string(cfg_.attack.family) : "none";
      s.dads_updates = r.state.update_count;
    }
    if (r.shadow) {
      s.has_ads = true;
      s.ads = r.shadow_rate->report();
      s.ads.algorithm = "ADS";
      s.ads.stage1 = s.dads.stage1;
      s.ads.family = s.dads.family;
      s.ads_updates = r.shadow_state.update_count;
    }
    s.ratio_error = r.ratio_error;
  }

  const ScenarioConfig& cfg_;
  const Network& net_;
  RunCase which_;
  bool main_;
  NetworkGraph graph_;
  EstimatorConfig ecfg_;
  RngStream truth_rng_;
  std::vector<RngStream> meas_rng_;
  std::vector<int> receiver_of_;
  std::vector<ReceiverRun> receivers_;
};

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& cfg) {
  ExperimentResult out;
  out.config = cfg;
  out.network = build_network(cfg);
  const auto& cases = cfg.cases;
  out.main_case = std::find(cases.begin(), cases.end(), RunCase::dads) != cases.end() ? RunCase::dads : cases.front();
  for (RunCase c : cases) {
    CaseRunner runner(cfg, out.network, c, c == out.main_case);
    out.cases.push_back(runner.run(out));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output

void write_outputs(const ExperimentResult& result, const std::string& dir) {
  ensure_directory(dir);
  const ScenarioConfig& cfg = result.config;
  const auto nodes = result.network.graph.nodes();

  if (!result.truth.empty()) {
    CsvWriter w(dir + "/trajectories.csv", {"k", "sensor_id", "dim", "truth", "estimate"});
    for (std::size_t k = 0; k < result.truth.size(); ++k) {
      for (std::size_t p = 0; p < nodes.size(); ++p) {
        for (Index d = 0; d < result.truth[k].size(); ++d) {
          w.row(k, nodes[p].id, d, result.truth[k](d), result.estimates[k](d, static_cast<Index>(p)));
        }
      }
    }
  }
  if (cfg.write_attacks) {
    CsvWriter w(dir + "/attacks.csv", {"k", "receiver", "sender", "dim", "z"});
    for (const auto& a : result.attacks) w.row(a.k, a.receiver, a.sender, a.dim, a.z);
  }
  if (cfg.write_selection && !result.selection.empty()) {
    CsvWriter w(dir + "/selection.csv", {"k", "l", "subset", "candidate", "weight", "p", "selected"});
    for (const auto& s : result.selection) w.row(s.k, s.l, s.subset, s.candidate, s.weight, s.p, s.selected ? 1 : 0);
  }
  {
    CsvWriter w(dir + "/rmse.csv", {"k", "case", "value"});
    for (const auto& c : result.cases) {
      for (std::size_t k = 0; k < c.curve.size(); ++k) w.row(k + 1, to_string(c.which), c.curve[k]);
    }
  }
  const PrimaryStats& s = result.primary;
  if (s.tracked) {
    CsvWriter w(dir + "/optrate.csv", {"algorithm", "stage1", "family", "scope", "rate"});
    auto emit = [&](const OptRateReport& r) {
      for (std::size_t g = 0; g < r.per_subset.size(); ++g) {
        w.row(r.algorithm, r.stage1, r.family, "subset_" + std::to_string(g + 1), r.per_subset[g]);
      }
      w.row(r.algorithm, r.stage1, r.family, "subset_average", r.subset_average);
      w.row(r.algorithm, r.stage1, r.family, "total", r.total);
    };
    emit(s.dads);
    if (s.has_ads) emit(s.ads);
  }
  if (!s.balance.mean_attacked.empty()) {
    CsvWriter w(dir + "/balance.csv", {"subset", "mean_attacked", "intensity_ratio"});
    for (std::size_t g = 0; g < s.balance.mean_attacked.size(); ++g) {
      w.row(g + 1, s.balance.mean_attacked[g], s.balance.ratio_defined ? s.balance.intensity_ratio[g] : 0.0);
    }
  }
  if (!s.ratio_error.empty()) {
    CsvWriter w(dir + "/ratio_error.csv", {"k", "subset", "error", "wrmse"});
    const std::size_t m = s.ratio_error.front().size();
    std::vector<std::vector<double>> wr(m);
    for (std::size_t g = 0; g < m; ++g) {
      std::vector<double> col;
      for (const auto& row : s.ratio_error) col.push_back(row[g]);
      wr[g] = windowed_rmse(col, 10);
    }
    for (std::size_t k = 0; k < s.ratio_error.size(); ++k) {
      for (std::size_t g = 0; g < m; ++g) w.row(k + 1, g + 1, s.ratio_error[k][g], wr[g][k]);
    }
  }
  {
    CsvWriter w(dir + "/metrics.csv", {"key", "value"});
    w.row("scenario", to_string(cfg.scenario));
    w.row("seed", cfg.seed);
    w.row("steps", cfg.steps);
    w.row("nodes", nodes.size());
    w.row("position_resamples", result.network.resamples);
    w.row("primary_receiver", s.receiver);
    w.row("primary_subsets", s.partition.size());
    w.row("distance_evals", s.partition.distance_evals);
    if (s.tracked) {
      w.row("update_count", s.dads_updates);
      w.row("rate_excluded_steps", s.dads.excluded);
      w.row("rate_exceeded_one", s.dads.exceeded_one ? 1 : 0);
    }
    if (s.has_ads) w.row("ads_update_count", s.ads_updates);
    if (s.trace.steps() > 0) w.row("attack_delta_total", s.trace.delta_total());
    for (const auto& c : result.cases) w.row("mean_rmse_" + std::string(to_string(c.which)), mean(c.curve));
  }
  if (cfg.write_plots) regenerate_report(dir);
}

namespace {

bool exists(const std::string& path) { return std::ifstream(path).good(); }

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string regenerate_report(const std::string& dir) {
  std::ostringstream summary;
  if (exists(dir + "/metrics.csv")) {
    const CsvTable t = read_csv(dir + "/metrics.csv");
    summary << "Run metrics\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      summary << "  " << pad(t.text(i, "key"), 24) << t.text(i, "value") << "\n";
    }
  }
  if (exists(dir + "/optrate.csv")) {
    const CsvTable t = read_csv(dir + "/optrate.csv");
    summary << "\nAverage optimization rate\n";
    summary << "  " << pad("algorithm", 10) << pad("stage1", 13) << pad("family", 12) << pad("scope", 16)
            << "rate\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      char rate[32];
      std::snprintf(rate, sizeof rate, "%.4f", t.number(i, "rate"));
      summary << "  " << pad(t.text(i, "algorithm"), 10) << pad(t.text(i, "stage1"), 13)
              << pad(t.text(i, "family"), 12) << pad(t.text(i, "scope"), 16) << rate << "\n";
    }
  }
  if (exists(dir + "/rmse.csv")) {
    const CsvTable t = read_csv(dir + "/rmse.csv");
    std::vector<Series> series;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const std::string& name = t.text(i, "case");
      auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.name == name; });
      if (it == series.end()) it = series.insert(series.end(), Series{name, {}, {}});
      it->x.push_back(t.number(i, "k"));
      it->y.push_back(t.number(i, "value"));
    }
    write_line_plot(dir + "/rmse.svg", {"Estimation RMSE", "step k", "RMSE", false}, series);
  }
  if (exists(dir + "/ratio_error.csv")) {
    const CsvTable t = read_csv(dir + "/ratio_error.csv");
    std::vector<Series> series;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto g = static_cast<std::size_t>(t.number(i, "subset"));
      if (series.size() < g) series.resize(g);
      series[g - 1].x.push_back(t.number(i, "k"));
      series[g - 1].y.push_back(t.number(i, "wrmse"));
    }
    summary << "\nDistribution ratio error (mean W-RMSE per subset)\n";
    for (std::size_t g = 0; g < series.size(); ++g) {
      series[g].name = "subset " + std::to_string(g + 1);
      summary << "  subset " << g + 1 << ": " << format_number(mean(series[g].y)) << "\n";
    }
    write_line_plot(dir + "/ratio_error.svg", {"Distribution ratio error", "step k", "W-RMSE", false}, series);
  }
  if (exists(dir + "/occupancy.csv")) {
    const CsvTable t = read_csv(dir + "/occupancy.csv");
    std::vector<Series> series;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.text(i, "mode") != "analytic") continue;
      const std::string name = "m = " + t.text(i, "m");
      auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.name == name; });
      if (it == series.end()) it = series.insert(series.end(), Series{name, {}, {}});
      it->x.push_back(t.number(i, "d"));
      it->y.push_back(t.number(i, "frac"));
    }
    write_line_plot(dir + "/occupancy.svg", {"Fraction of attacked subsets", "attacked sensors d", "fraction", false},
                    series);
  }
  const std::string text = summary.str();
  std::ofstream(dir + "/summary.txt") << text;
  return text;
}

std::vector<OccupancyRow> sweep_occupancy(std::uint64_t seed, std::size_t N, std::size_t draws) {
  std::vector<OccupancyRow> rows;
  for (OccupancyMode mode : {OccupancyMode::analytic, OccupancyMode::montecarlo}) {
    for (std::size_t m : kOccupancySubsets) {
      for (std::size_t d = 1; d <= 96 && d <= N; d += 5) {
        RngStream rng = derive_stream(seed, "occupancy", m * 1000 + d);
        rows.push_back({m, d, occupancy(N, m, d, mode, &rng, draws), mode});
      }
    }
  }
  return rows;
}

void write_occupancy(const std::vector<OccupancyRow>& rows, const std::string& dir, bool plots) {
  ensure_directory(dir);
  {
    CsvWriter w(dir + "/occupancy.csv", {"m", "d", "mean", "frac", "mode"});
    for (const auto& r : rows) {
      w.row(r.m, r.d, r.value.mean, r.value.fraction, r.mode == OccupancyMode::analytic ? "analytic" : "montecarlo");
    }
  }
  if (plots) regenerate_report(dir);
}

std::string partition_report(const ScenarioConfig& cfg, const std::string& dir) {
  ensure_directory(dir);
  const Network net = build_network(cfg);
  const IdList& ids = net.graph.node(net.primary).neighbors_in;
  const std::vector<SensorNode> sensors = net.graph.gather(ids);
  CsvWriter part(dir + "/partition.csv", {"strategy", "subset", "member_id"});
  CsvWriter infl(dir + "/influence.csv", {"strategy", "g", "q", "inter"});
  CsvWriter corr(dir + "/correlation.csv", {"strategy", "g", "intra"});
  CsvWriter cost(dir + "/cost.csv", {"strategy", "subsets", "distance_evals"});
  std::ostringstream text;
  text << "Receiver " << net.primary << " with " << ids.size() << " in-neighbors\n";
  for (PartitionStrategy strategy : {PartitionStrategy::grassmann, PartitionStrategy::grassmann_improved,
                                     PartitionStrategy::min_mutual, PartitionStrategy::random,
                                     PartitionStrategy::balanced_cardinality}) {
    ScenarioConfig c = cfg;
    c.partition = strategy;
    const PartitionResult pr = partition_neighbors(net.graph, net.primary, c);
    const InfluenceReport rep = influence_report(pr, sensors);
    const std::string name(to_string(strategy));
    for (std::size_t g = 0; g < pr.size(); ++g) {
      for (SensorId id : pr.subsets[g]) part.row(name, g + 1, id);
      corr.row(name, g + 1, rep.intra(static_cast<Index>(g)));
      for (std::size_t q = 0; q < pr.size(); ++q) {
        if (q != g) infl.row(name, g + 1, q + 1, rep.inter(static_cast<Index>(g), static_cast<Index>(q)));
      }
    }
    cost.row(name, pr.size(), pr.distance_evals);
    text << "  " << pad(name, 22) << pr.size() << " subsets, " << pr.distance_evals << " distance evaluations\n";
  }
  return text.str();
}

}  // namespace dads
