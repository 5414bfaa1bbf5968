#include "symsector/cli.hpp"

#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "symsector/expansion.hpp"
#include "symsector/io.hpp"

namespace symsector::cli {

namespace {

using io::json;

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

double effective_tol(const JobConfig& c) {
  return c.tol > 0.0 ? c.tol : Tol::kDefiniteness;
}

json cmd_check(const JobConfig& c, const json& in) {
  BlockMap map = io::parse_block_map(in);
  bool sympl = is_symplectic(map);
  json rep{{"symplectic", sympl}};
  if (sympl)
    rep["class"] = to_string(monotonicity_class(map, effective_tol(c)));
  else
    rep["class"] = nullptr;
  return rep;
}

json cmd_factor(const JobConfig& c, const json& in) {
  BlockMap map = io::parse_block_map(in);
  QprFactorization f = factor_qpr(map, effective_tol(c));
  return json{{"A", io::square_matrix_json(f.a)},
              {"P", io::square_matrix_json(f.p)},
              {"R", io::square_matrix_json(f.r)},
              {"p_class", to_string(f.p_class.cls)},
              {"r_class", to_string(f.r_class.cls)},
              {"p_min_eig", f.p_class.min_eig},
              {"r_min_eig", f.r_class.min_eig},
              {"condition_a", f.condition_a}};
}

json cmd_canon(const JobConfig&, const json& in) {
  BlockMap map = io::parse_block_map(in);
  CanonicalForm cf = canonical_form(map);
  return json{
      {"t", std::vector<double>(cf.t.data(), cf.t.data() + cf.t.size())},
      {"left_iso", io::block_map_json(cf.left_iso)},
      {"right_iso", io::block_map_json(cf.right_iso)},
      {"core", io::block_map_json(cf.core)}};
}

json cmd_sigma(const JobConfig& c, const json& in) {
  BlockMap map = io::parse_block_map(in);
  ExpansionResult er = sigma(map);
  json rep{{"sigma", er.sigma}, {"t1", er.t1}};
  rep["witness"] = er.witness ? io::phase_vector_json(*er.witness) : json(nullptr);
  if (c.samples > 0) {
    double band = mc_inf_beta(map, c.samples, c.seed);
    rep["oracle"] =
        json{{"min_beta", band}, {"samples", c.samples}, {"seed", c.seed}};
  }
  return rep;
}

json cmd_oracle(const JobConfig& c, const json& in) {
  BlockMap map = io::parse_block_map(in);
  long samples = c.samples > 0 ? c.samples : 100000;
  ExpansionResult er = sigma(map);
  double band = mc_inf_beta(map, samples, c.seed);
  return json{{"sigma", er.sigma},
              {"min_beta", band},
              {"samples", samples},
              {"seed", c.seed}};
}

json cmd_dist(const JobConfig&, const json& in) {
  auto subspaces = io::parse_subspaces(in);
  std::size_t n = subspaces.size();
  if (n < 2) fail(ErrorCode::ParseError, "dist needs at least two subspaces");
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j)
      row.push_back(i == j ? 0.0 : distance(subspaces[i], subspaces[j]));
    rows.push_back(std::move(row));
  }
  return json{{"count", n}, {"distances", std::move(rows)}};
}

json cmd_mobius(const JobConfig&, const json& in) {
  if (!in.contains("map"))
    fail(ErrorCode::ParseError, "mobius input needs \"map\"");
  BlockMap map = io::parse_block_map(in.at("map"));
  auto subspaces = io::parse_subspaces(in);
  json images = json::array();
  for (const auto& e : subspaces)
    images.push_back(io::subspace_json(mobius(map, e)));
  // emitted under the same key as the input schema so the report can feed
  // dist/mobius directly
  return json{{"subspaces", std::move(images)}};
}

std::vector<PhaseVector> parse_probes(const json& in, Index d) {
  std::vector<PhaseVector> probes;
  if (in.contains("probes"))
    for (const json& p : in.at("probes"))
      probes.push_back(io::parse_phase_vector(p, d));
  if (probes.empty()) {
    // default interior probe (1,...,1 ; 1,...,1)
    probes.push_back({Vector::Ones(d), Vector::Ones(d)});
  }
  return probes;
}

json cmd_gen69(const JobConfig& c, const json& in, std::ostream& err) {
  if (!in.contains("example69"))
    fail(ErrorCode::ParseError, "gen69 input needs \"example69\"");
  Example69Spec spec = io::parse_example69(in.at("example69"), c.seed);
  MapSequence seq = build_example69(spec);

  if (c.output.empty())
    fail(ErrorCode::InvalidArgument, "gen69 requires --output for the sequence file");
  std::ofstream file(c.output);
  if (!file.good()) fail(ErrorCode::IoError, "cannot write " + c.output);
  file << io::sequence_json(seq).dump(2) << "\n";

  Index d = seq.maps.front().dim();
  int horizon = std::min<int>(c.horizon, spec.count());
  auto probes = parse_probes(in, d);
  auto res = check_criterion69(spec, horizon, probes.front(), c.growth_threshold);
  (void)err;
  return json{{"written", c.output},
              {"count", spec.count()},
              {"criterion", json{{"verdict", to_string(res.verdict)},
                                 {"series_partial", res.series_partial},
                                 {"q_growth", res.q_growth},
                                 {"q_nondecreasing", res.q_nondecreasing},
                                 {"ratio_bounds_hold", res.ratio_bounds_hold},
                                 {"horizon", horizon}}}};
}

struct AnalyzeOutcome {
  json report;
  bool conditioning_stop = false;
  SequenceReport raw;
};

AnalyzeOutcome cmd_analyze(const JobConfig& c, const json& in) {
  MapSequence seq = io::parse_sequence(in, c.seed);
  Index d = seq.maps.front().dim();
  int n_max = c.n_max > 0 ? c.n_max : static_cast<int>(seq.maps.size());
  auto probes = parse_probes(in, d);
  SequenceReport rep = analyze_sequence(seq, n_max, probes, c.growth_threshold);
  AnalyzeOutcome out;
  out.report = io::report_json(rep);
  out.conditioning_stop = rep.flags.conditioning_stop_at.has_value();
  out.raw = std::move(rep);
  return out;
}

void emit(const JobConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty() || c.command == "gen69") {
    out << text;
    return;
  }
  std::ofstream file(c.output);
  if (!file.good()) fail(ErrorCode::IoError, "cannot write " + c.output);
  file << text;
}

}  // namespace

int run_command(const JobConfig& c, std::ostream& out, std::ostream& err) {
  try {
    json in;
    if (!c.input.empty()) in = io::load_json_file(c.input);

    bool conditioning_stop = false;
    std::string payload;

    if (c.command == "analyze") {
      AnalyzeOutcome a = cmd_analyze(c, in);
      conditioning_stop = a.conditioning_stop;
      if (c.format == "csv") {
        std::ostringstream ss;
        io::write_analyze_csv(ss, a.raw);
        payload = ss.str();
      } else {
        json rep{{"command", c.command}, {"report", std::move(a.report)}};
        if (c.timestamp) rep["timestamp"] = utc_timestamp();
        payload = rep.dump(2) + "\n";
      }
    } else {
      if (c.format == "csv")
        fail(ErrorCode::InvalidArgument, "csv output is analyze-only");
      json body;
      if (c.command == "check") body = cmd_check(c, in);
      else if (c.command == "factor") body = cmd_factor(c, in);
      else if (c.command == "canon") body = cmd_canon(c, in);
      else if (c.command == "sigma") body = cmd_sigma(c, in);
      else if (c.command == "oracle") body = cmd_oracle(c, in);
      else if (c.command == "dist") body = cmd_dist(c, in);
      else if (c.command == "mobius") body = cmd_mobius(c, in);
      else if (c.command == "gen69") body = cmd_gen69(c, in, err);
      else fail(ErrorCode::InvalidArgument, "unknown command " + c.command);

      json rep{{"command", c.command}, {"report", std::move(body)}};
      if (c.timestamp) rep["timestamp"] = utc_timestamp();
      payload = rep.dump(2) + "\n";
    }

    emit(c, payload, out);
    return conditioning_stop ? kExitConditioningStop : kExitOk;
  } catch (const Error& e) {
    json rep{{"error", json{{"code", to_string(e.code())},
                            {"message", e.what()}}}};
    out << rep.dump(2) << "\n";
    err << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    json rep{{"error", json{{"code", "Internal"}, {"message", e.what()}}}};
    out << rep.dump(2) << "\n";
    err << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace symsector::cli
