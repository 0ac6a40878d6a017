#include "mvd/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mvd {

std::string format_decimal(double v, int sig) {
  std::ostringstream os;
  os.precision(sig);
  os << v;
  return os.str();
}

namespace {

Json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const Json& j, const char* what) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_number_float()) {
    // Decimal in the file; keep it exact by going through the string form.
    return rat_from_string(format_decimal(j.get<double>(), 17));
  }
  throw ParseError(std::string(what) + ": expected a number or \"p/q\" string");
}

// Floating-point entries always carry a '.' or exponent so they can be told
// apart from exact "p/q" / integer strings when reading the file back.
std::string decimal_cell(double v) {
  std::string s = format_decimal(v);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find('E') == std::string::npos && s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

Json metric_json(const Metric& metric) {
  Json rows = Json::array();
  if (metric.is_exact()) {
    for (const auto& row : metric.exact_rows()) {
      Json jr = Json::array();
      for (const auto& v : row) jr.push_back(rat_json(v));
      rows.push_back(std::move(jr));
    }
  } else {
    for (const auto& row : metric.rows()) {
      Json jr = Json::array();
      for (double v : row) jr.push_back(decimal_cell(v));
      rows.push_back(std::move(jr));
    }
  }
  return Json{{"rows", std::move(rows)}};
}

Metric metric_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    throw ParseError("metric: expected an object with a \"rows\" array");
  // Integer / "p/q" strings mean exact rationals; anything with a decimal
  // point, an exponent, or a plain JSON number means doubles.
  bool exact = true;
  for (const auto& row : j["rows"])
    for (const auto& cell : row) {
      if (!cell.is_string()) {
        exact = false;
      } else {
        const std::string s = cell.get<std::string>();
        if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
            s.find('E') != std::string::npos)
          exact = false;
      }
    }
  if (exact) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& row : j["rows"]) {
      if (!row.is_array()) throw ParseError("metric row: expected an array");
      std::vector<Rat> r;
      for (const auto& cell : row) r.push_back(rat_from_json(cell, "metric entry"));
      rows.push_back(std::move(r));
    }
    return Metric::exact(std::move(rows));
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["rows"]) {
    if (!row.is_array()) throw ParseError("metric row: expected an array");
    std::vector<double> r;
    for (const auto& cell : row) {
      if (cell.is_number())
        r.push_back(cell.get<double>());
      else if (cell.is_string())
        r.push_back(rat_to_double(rat_from_string(cell.get<std::string>())));
      else
        throw ParseError("metric entry: expected a number or string");
    }
    rows.push_back(std::move(r));
  }
  return Metric::approx(std::move(rows));
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json ballots = Json::array();
  for (const auto& b : inst.profile.ballots) {
    Json jr = Json::array();
    for (int i = 0; i < inst.profile.n; ++i) jr.push_back(b.ranking.at(i));
    ballots.push_back(Json{{"weight", rat_json(b.weight)}, {"ranking", std::move(jr)}});
  }
  Json out{{"n", inst.profile.n}, {"ballots", std::move(ballots)}};
  if (inst.metric) out["metric"] = metric_json(*inst.metric);
  return out;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("instance: missing integer field \"n\"");
  Instance inst;
  inst.profile.n = j["n"].get<int>();
  if (inst.profile.n < 1) throw ValidationError("instance: n must be positive");
  if (!j.contains("ballots") || !j["ballots"].is_array())
    throw ParseError("instance: missing \"ballots\" array");
  for (const auto& jb : j["ballots"]) {
    if (!jb.is_object() || !jb.contains("weight") || !jb.contains("ranking"))
      throw ParseError("ballot: expected {\"weight\", \"ranking\"}");
    WeightedBallot b;
    b.weight = rat_from_json(jb["weight"], "ballot weight");
    if (!jb["ranking"].is_array()) throw ParseError("ballot ranking: expected an array");
    std::vector<CandidateId> order;
    for (const auto& c : jb["ranking"]) {
      if (!c.is_number_integer()) throw ParseError("ballot ranking: expected integers");
      order.push_back(c.get<int>());
    }
    b.ranking = Ranking(std::move(order));
    if (b.ranking.n() != inst.profile.n)
      throw DimensionMismatch("ballot ranking length disagrees with n");
    inst.profile.ballots.push_back(std::move(b));
  }
  if (j.contains("metric")) inst.metric = metric_from_json(j["metric"]);
  if (inst.metric) {
    if (static_cast<int>(inst.metric->rows().size()) !=
        static_cast<int>(inst.profile.ballots.size()))
      throw DimensionMismatch("metric row count disagrees with ballot count");
    for (const auto& row : inst.metric->rows())
      if (static_cast<int>(row.size()) != inst.profile.n)
        throw DimensionMismatch("metric row length disagrees with n");
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path, 1);
  out << serialize_instance(inst);
}

Json partition_to_json(const MessagePartition& part) {
  return Json{{"n", part.n}, {"labels", part.labels}};
}

MessagePartition partition_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("labels"))
    throw ParseError("partition: expected {\"n\", \"labels\"}");
  MessagePartition part;
  part.n = j["n"].get<int>();
  if (!j["labels"].is_array()) throw ParseError("partition labels: expected an array");
  for (const auto& l : j["labels"]) {
    if (!l.is_number_integer()) throw ParseError("partition labels: expected integers");
    part.labels.push_back(l.get<int>());
  }
  int beta = 0;
  for (int l : part.labels) beta = std::max(beta, l);
  part.beta = beta;
  part.validate();
  return part;
}

MessagePartition load_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return partition_from_json(j);
}

Json distribution_to_json(const CandidateDistribution& dist) {
  Json probs = Json::array();
  for (const auto& p : dist.probs) probs.push_back(rat_json(p));
  Json approx = Json::array();
  for (const auto& p : dist.probs) approx.push_back(format_decimal(rat_to_double(p)));
  return Json{{"probs", std::move(probs)}, {"approx", std::move(approx)}};
}

Json ratio_to_json(const Ratio& r) {
  if (r.infinite) return Json{{"infinite", true}};
  return Json{{"infinite", false}, {"value", format_decimal(r.value)}};
}

Json report_to_json(const AdversaryReport& rep) {
  Json out{{"kind", rep.kind},
           {"winner", rep.winner},
           {"certified_ratio", format_decimal(rep.certified_ratio)},
           {"certified_exact", rat_to_string(rep.certified_exact)},
           {"theoretical_limit", format_decimal(rep.theoretical_limit)},
           {"parameters", rep.parameters},
           {"instance", instance_to_json(rep.instance)}};
  return out;
}

}  // namespace mvd
