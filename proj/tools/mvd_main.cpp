#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvd/adversary.hpp"
#include "mvd/communication.hpp"
#include "mvd/io.hpp"
#include "mvd/lp.hpp"
#include "mvd/metric.hpp"
#include "mvd/reproduce.hpp"
#include "mvd/rules.hpp"
#include "mvd/sample.hpp"

namespace {

using mvd::Json;

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw mvd::Error("cannot write " + out_path, 1);
  out << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw mvd::Error("cannot write " + out_path, 1);
  out << text;
}

int cmd_validate(const std::string& path) {
  mvd::Instance inst = mvd::load_instance(path);
  inst.profile.validate();
  Json report{{"ok", true}, {"n", inst.profile.n},
              {"ballots", inst.profile.ballots.size()}, {"violations", Json::array()}};
  if (inst.metric) {
    double tol = inst.metric->is_exact() ? 0.0 : mvd::lp_default_tol();
    auto violations = mvd::validate_metric(*inst.metric, inst.profile, tol);
    auto incons = mvd::is_consistent(*inst.metric, inst.profile, tol);
    for (const auto& v : violations) {
      report["violations"].push_back(
          {{"kind", v.kind == mvd::MetricViolation::Kind::Negative ? "negative" : "quadrilateral"},
           {"v", v.v},
           {"v2", v.v2},
           {"x", v.x},
           {"y", v.y},
           {"slack", mvd::format_decimal(v.slack)}});
    }
    if (!incons) report["violations"].push_back({{"kind", "ranking-consistency"}});
    report["consistent"] = incons;
    report["ok"] = violations.empty() && incons;
  }
  std::cout << report.dump(2) << "\n";
  return report["ok"].get<bool>() ? 0 : 1;
}

Json graph_json(const mvd::TopkCopelandResult& res) {
  Json edges = Json::array();
  const int n = res.graph.n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && res.graph.has_edge(x, y)) edges.push_back(Json::array({x, y}));
  Json mass = Json::array();
  for (const auto& q : res.topk_mass) mass.push_back(mvd::rat_to_string(q));
  return Json{{"alpha", mvd::rat_to_string(res.graph.alpha)},
              {"edges", std::move(edges)},
              {"topk_mass", std::move(mass)},
              {"s2", res.in_s2},
              {"s3", res.in_s3},
              {"outdegree", res.outdegree}};
}

int cmd_rule_run(const std::string& rule_str, const std::string& path, bool emit_graph,
                 const std::string& out_path) {
  auto spec = mvd::RuleSpec::parse(rule_str);
  mvd::Instance inst = mvd::load_instance(path);
  inst.profile.validate();
  Json out{{"rule", spec.to_string()}};
  if (spec.randomized()) {
    auto dist = mvd::run_rule(spec, inst.profile);
    out["distribution"] = mvd::distribution_to_json(dist);
  } else {
    out["winner"] = mvd::run_deterministic(spec, inst.profile);
    if (emit_graph &&
        (spec.kind == mvd::RuleSpec::Kind::TopkCopeland || spec.kind == mvd::RuleSpec::Kind::Copeland)) {
      int k = spec.kind == mvd::RuleSpec::Kind::Copeland ? inst.profile.n : spec.k;
      out["graph"] = graph_json(mvd::topk_copeland_full(inst.profile, k));
    }
  }
  emit(out, out_path);
  return 0;
}

int cmd_distortion(const std::string& rule_str, const std::string& path,
                   const std::string& out_path) {
  auto spec = mvd::RuleSpec::parse(rule_str);
  mvd::Instance inst = mvd::load_instance(path);
  inst.profile.validate();
  mvd::CandidateDistribution dist = mvd::run_rule(spec, inst.profile);
  auto report = mvd::distortion_report(inst.profile, dist);
  Json out{{"rule", spec.to_string()}, {"distribution", mvd::distribution_to_json(dist)}};
  if (!spec.randomized()) out["winner"] = mvd::run_deterministic(spec, inst.profile);
  out["distortion"] = report.distortion.infinite ? Json("inf")
                                                 : Json(mvd::format_decimal(report.distortion.value));
  out["worst_reference"] = report.worst_reference;
  if (!report.distortion.infinite && report.witness) {
    Json rows = Json::array();
    for (const auto& row : report.witness->rows()) {
      Json jr = Json::array();
      for (double v : row) jr.push_back(mvd::format_decimal(v));
      rows.push_back(std::move(jr));
    }
    out["witness_metric"] = Json{{"rows", std::move(rows)}};
  }
  emit(out, out_path);
  return 0;
}

struct AdversaryArgs {
  std::string kind;
  std::string rule_str = "plurality";
  int n = 0;
  std::vector<int> positions;
  int beta = 0;
  std::string epsilon = "1/100000";
  std::string delta = "1/1000";
  std::string partition_path;
  double slack_tol = 0.01;
  std::string out_path;
  std::string instance_out;
};

int cmd_adversary(const AdversaryArgs& a) {
  auto spec = mvd::RuleSpec::parse(a.rule_str);
  std::optional<mvd::AdversaryReport> rep;

  if (a.kind == "k-entry") {
    if (a.n < 2) throw mvd::BadN("k-entry adversary needs --n >= 2");
    if (a.positions.empty()) throw mvd::BadPositions("k-entry adversary needs --positions");
    auto K = mvd::PositionSet::of(a.positions);
    mvd::MessagePartition part = a.partition_path.empty()
                                     ? mvd::k_entry_partition(a.n, K)
                                     : mvd::load_partition(a.partition_path);
    auto rule = mvd::bounded_from_rule(spec, part);
    rep = mvd::gen_k_entry_adversary(rule, a.n, K, mvd::rat_from_string(a.epsilon));
  } else if (a.kind == "general") {
    if (a.n < 3) throw mvd::BadN("general adversary needs --n >= 3");
    mvd::MessagePartition part;
    if (!a.partition_path.empty()) {
      part = mvd::load_partition(a.partition_path);
    } else {
      if (a.beta < 1) throw mvd::BadParams("general adversary needs --beta >= 1");
      part = mvd::contiguous_partition(a.n, a.beta);
    }
    auto rule = mvd::bounded_from_rule(spec, part);
    rep = mvd::gen_general_adversary(rule, a.n, part.beta, mvd::rat_from_string(a.epsilon));
  } else if (a.kind == "unbounded") {
    mvd::MessagePartition part;
    if (!a.partition_path.empty()) {
      part = mvd::load_partition(a.partition_path);
    } else {
      if (a.n < 2 || a.beta < 1)
        throw mvd::BadParams("unbounded adversary needs --partition or --n/--beta");
      part = mvd::contiguous_partition(a.n, a.beta);
    }
    auto rule = mvd::bounded_from_rule(spec, part);
    rep = mvd::gen_unbounded_adversary(rule, mvd::rat_from_string(a.delta));
    if (!rep) {
      std::cerr << "every message class pins down the top choice; no unbounded family exists\n";
      return 1;
    }
  } else {
    throw mvd::BadParams("unknown adversary kind: " + a.kind);
  }

  Json out = mvd::report_to_json(*rep);
  emit(out, a.out_path);
  if (!a.instance_out.empty()) mvd::save_instance(rep->instance, a.instance_out);
  return rep->certified_ratio >= rep->theoretical_limit - a.slack_tol ? 0 : 1;
}

// "a..b" or a single integer.
std::vector<int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return {std::stoi(text)};
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  if (hi < lo) throw mvd::BadParams("empty range " + text);
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric-voting distortion workbench"};
  app.require_subcommand(1);

  // validate
  std::string val_path;
  auto* validate = app.add_subcommand("validate", "check an instance file's invariants");
  validate->add_option("file", val_path, "instance JSON")->required();

  // rule run
  auto* rule = app.add_subcommand("rule", "voting rule operations");
  rule->require_subcommand(1);
  std::string rr_rule, rr_path, rr_out;
  bool rr_graph = false;
  auto* rule_run = rule->add_subcommand("run", "apply a rule to an instance");
  rule_run->add_option("--rule", rr_rule, "rule spec, e.g. plurality or topk-copeland:k=2")
      ->required();
  rule_run->add_flag("--emit-graph", rr_graph, "include the comparison graph");
  rule_run->add_option("--out", rr_out, "write JSON here instead of stdout");
  rule_run->add_option("file", rr_path, "instance JSON")->required();

  // distortion
  std::string di_rule, di_path, di_out;
  auto* distortion = app.add_subcommand("distortion", "LP worst-case distortion of a rule");
  distortion->add_option("--rule", di_rule, "rule spec")->required();
  distortion->add_option("--out", di_out, "write JSON here instead of stdout");
  distortion->add_option("file", di_path, "instance JSON")->required();

  // adversary
  AdversaryArgs adv;
  auto* adversary = app.add_subcommand("adversary", "lower-bound instance generators");
  adversary->add_option("kind", adv.kind, "k-entry | general | unbounded")->required();
  adversary->add_option("--rule", adv.rule_str, "rule spec queried through the message partition");
  adversary->add_option("--n", adv.n, "number of candidates");
  adversary->add_option("--positions", adv.positions, "revealed positions, e.g. 1,2")
      ->delimiter(',');
  adversary->add_option("--beta", adv.beta, "message count for the default partition");
  adversary->add_option("--epsilon", adv.epsilon, "tie-break scale (exact rational or decimal)");
  adversary->add_option("--delta", adv.delta, "family scale for kind=unbounded");
  adversary->add_option("--partition", adv.partition_path, "partition JSON overriding the default");
  adversary->add_option("--slack-tol", adv.slack_tol, "allowed gap below the theoretical limit");
  adversary->add_option("--out", adv.out_path, "write the report here instead of stdout");
  adversary->add_option("--instance-out", adv.instance_out, "also write the bare instance JSON");

  // reproduce
  std::string rp_table, rp_n = "3..5", rp_out;
  std::vector<int> rp_k{1, 2};
  int rp_max_voters = 3;
  double rp_step = 1e-4;
  auto* reproduce = app.add_subcommand("reproduce", "emit result tables as CSV");
  reproduce->add_option("table", rp_table, "bounds | randomized | lemmas")->required();
  reproduce->add_option("--n", rp_n, "n or range a..b");
  reproduce->add_option("--k", rp_k, "k values for table=bounds")->delimiter(',');
  reproduce->add_option("--max-voters", rp_max_voters, "profile size cap for table=randomized");
  reproduce->add_option("--step", rp_step, "grid step for table=lemmas");
  reproduce->add_option("--out", rp_out, "write CSV here instead of stdout");

  // sample
  std::uint64_t sm_seed = 0;
  int sm_n = 3, sm_m = 1;
  std::string sm_out;
  auto* sample = app.add_subcommand("sample", "deterministic random instance");
  sample->add_option("--seed", sm_seed, "64-bit seed")->required();
  sample->add_option("--n", sm_n, "candidates (<= 7)")->required();
  sample->add_option("--m", sm_m, "ballots (<= 30)")->required();
  sample->add_option("--out", sm_out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) return cmd_validate(val_path);
    if (*rule_run) return cmd_rule_run(rr_rule, rr_path, rr_graph, rr_out);
    if (*distortion) return cmd_distortion(di_rule, di_path, di_out);
    if (*adversary) return cmd_adversary(adv);
    if (*reproduce) {
      std::vector<mvd::ResultRow> rows;
      if (rp_table == "bounds")
        rows = mvd::reproduce_bounds(parse_range(rp_n), rp_k);
      else if (rp_table == "randomized")
        rows = mvd::reproduce_randomized(parse_range(rp_n).front(), rp_max_voters);
      else if (rp_table == "lemmas")
        rows = mvd::reproduce_lemmas(parse_range(rp_n), rp_step);
      else
        throw mvd::BadParams("unknown table: " + rp_table);
      emit_text(mvd::rows_to_csv(rows), rp_out);
      return 0;
    }
    if (*sample) {
      mvd::Instance inst = mvd::sample_instance(sm_seed, sm_n, sm_m);
      emit_text(mvd::serialize_instance(inst), sm_out);
      return 0;
    }
  } catch (const mvd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
