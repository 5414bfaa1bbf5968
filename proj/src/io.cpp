#include "symsector/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace symsector::io {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Matrix rows_to_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty())
    fail(ErrorCode::ParseError, "\"rows\" must be a non-empty array");
  Index r = static_cast<Index>(rows.size());
  Index c = static_cast<Index>(rows[0].size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != c)
      fail(ErrorCode::ParseError, "ragged \"rows\" array");
    for (Index j = 0; j < c; ++j)
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  if (!m.allFinite())
    fail(ErrorCode::ParseError, "matrix entries must be finite");
  return m;
}

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;  // JSON has no inf
}

}  // namespace

Matrix parse_matrix(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("rows"))
    fail(ErrorCode::ParseError, "matrix object needs \"d\" and \"rows\"");
  Index d = j.at("d").get<Index>();
  if (d < 1) fail(ErrorCode::ParseError, "\"d\" must be positive");
  Matrix m = rows_to_matrix(j.at("rows"));
  if (m.rows() != m.cols())
    fail(ErrorCode::ParseError, "matrix must be square");
  if (m.rows() != d && m.rows() != 2 * d)
    fail(ErrorCode::ParseError, "rows must be d x d or 2d x 2d");
  return m;
}

BlockMap parse_block_map(const json& j) {
  Index d = j.at("d").get<Index>();
  Matrix m = parse_matrix(j);
  if (m.rows() != 2 * d)
    fail(ErrorCode::ParseError, "block map must be 2d x 2d");
  return BlockMap(std::move(m));
}

json block_map_json(const BlockMap& map) {
  return json{{"d", map.dim()}, {"rows", matrix_rows(map.full())}};
}

json square_matrix_json(const Matrix& m) {
  return json{{"d", m.rows()}, {"rows", matrix_rows(m)}};
}

PhaseVector parse_phase_vector(const json& j, Index d) {
  if (!j.is_object() || !j.contains("xi") || !j.contains("eta"))
    fail(ErrorCode::ParseError, "phase vector needs \"xi\" and \"eta\"");
  auto xi = j.at("xi").get<std::vector<double>>();
  auto eta = j.at("eta").get<std::vector<double>>();
  if (static_cast<Index>(xi.size()) != d ||
      static_cast<Index>(eta.size()) != d)
    fail(ErrorCode::ParseError, "phase vector length does not match d");
  PhaseVector w{Eigen::Map<const Vector>(xi.data(), d),
                Eigen::Map<const Vector>(eta.data(), d)};
  if (!w.xi.allFinite() || !w.eta.allFinite())
    fail(ErrorCode::ParseError, "phase vector entries must be finite");
  return w;
}

json phase_vector_json(const PhaseVector& w) {
  return json{{"xi", std::vector<double>(w.xi.data(), w.xi.data() + w.xi.size())},
              {"eta", std::vector<double>(w.eta.data(), w.eta.data() + w.eta.size())}};
}

std::vector<LagrangianSubspace> parse_subspaces(const json& j) {
  // reports wrap their payload; accept them back directly
  const json& root =
      (j.is_object() && j.contains("report")) ? j.at("report") : j;
  if (!root.is_object() || !root.contains("subspaces"))
    fail(ErrorCode::ParseError, "expected a \"subspaces\" array");
  std::vector<LagrangianSubspace> out;
  for (const json& item : root.at("subspaces")) {
    if (item.is_object() && item.contains("basis")) {
      out.push_back(LagrangianSubspace::from_basis(rows_to_matrix(item.at("basis"))));
    } else {
      Matrix u = parse_matrix(item);
      Index d = item.at("d").get<Index>();
      if (u.rows() != d)
        fail(ErrorCode::ParseError, "graph matrix must be d x d");
      out.push_back(LagrangianSubspace::from_graph(u));
    }
  }
  return out;
}

json subspace_json(const LagrangianSubspace& e) {
  if (e.has_graph()) return square_matrix_json(e.graph());
  return json{{"basis", matrix_rows(e.basis())}};
}

Example69Spec parse_example69(const json& j, std::uint64_t seed) {
  Example69Spec spec;
  int count = j.value("count", 0);

  auto broadcast = [&](const json& arr) {
    std::vector<Matrix> list;
    for (const json& item : arr) list.push_back(parse_matrix(item));
    if (count > 1 && list.size() == 1)
      list.assign(static_cast<std::size_t>(count), list.front());
    return list;
  };

  spec.a_list = broadcast(j.at("A"));
  spec.p_list = broadcast(j.at("P"));

  const json& tau = j.at("tau");
  if (tau.is_string()) {
    if (tau.get<std::string>() != "harmonic")
      fail(ErrorCode::ParseError, "unknown tau rule");
    if (count < 1)
      fail(ErrorCode::ParseError, "tau rule requires \"count\"");
    for (int n = 1; n <= count; ++n)
      spec.tau_list.emplace_back(1.0 / n, 1.0 / n);
  } else {
    for (const json& pair : tau) {
      if (!pair.is_array() || pair.size() != 2)
        fail(ErrorCode::ParseError, "tau entries must be [tau, tau']");
      spec.tau_list.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    if (count > 1 && spec.tau_list.size() == 1)
      spec.tau_list.assign(static_cast<std::size_t>(count),
                           spec.tau_list.front());
  }

  spec.c_bound = j.value("cBound", 0.0);
  if (spec.c_bound == 0.0) {
    double worst = 1.0;
    for (auto [lo, hi] : spec.tau_list)
      if (lo > 0.0) worst = std::max(worst, hi / lo);
    spec.c_bound = worst;
  }

  if (j.contains("R")) {
    for (const json& item : j.at("R")) spec.r_list.push_back(parse_matrix(item));
    if (count > 1 && spec.r_list.size() == 1)
      spec.r_list.assign(static_cast<std::size_t>(count), spec.r_list.front());
  } else {
    spec.derive_r(seed);
  }
  spec.validate();
  return spec;
}

MapSequence parse_sequence(const json& j, std::uint64_t seed) {
  const json& root =
      (j.is_object() && j.contains("report")) ? j.at("report") : j;
  if (root.is_object() && root.contains("maps")) {
    MapSequence seq;
    for (const json& item : root.at("maps"))
      seq.maps.push_back(parse_block_map(item));
    if (seq.maps.empty())
      fail(ErrorCode::ParseError, "\"maps\" must not be empty");
    return seq;
  }
  if (root.is_object() && root.contains("example69"))
    return build_example69(parse_example69(root.at("example69"), seed));
  fail(ErrorCode::ParseError, "sequence needs \"maps\" or \"example69\"");
}

json sequence_json(const MapSequence& seq) {
  json maps = json::array();
  for (const BlockMap& m : seq.maps) maps.push_back(block_map_json(m));
  return json{{"maps", std::move(maps)}};
}

json report_json(const SequenceReport& rep) {
  json steps = json::array();
  for (const StepRecord& s : rep.per_step) {
    json step{{"n", s.n},
              {"sigma_n", s.sigma_n},
              {"t1_n", s.t1_n},
              {"diameter_n", finite_or_null(s.diameter_n)},
              {"image_v1", subspace_json(s.image_v1)},
              {"image_v2", subspace_json(s.image_v2)},
              {"q_probes", s.probe_q}};
    steps.push_back(std::move(step));
  }
  json flags{{"certified_growth", rep.flags.certified_growth},
             {"certified_growth_prepended", rep.flags.certified_growth_prepended},
             {"sigma_final", rep.flags.sigma_final},
             {"sigma_prepended_final", rep.flags.sigma_prepended_final},
             {"growth_threshold", rep.growth_threshold}};
  flags["strict_at_step"] =
      rep.flags.strict_at_step ? json(*rep.flags.strict_at_step) : json(nullptr);
  flags["conditioning_stop_at"] = rep.flags.conditioning_stop_at
                                      ? json(*rep.flags.conditioning_stop_at)
                                      : json(nullptr);
  if (rep.flags.limit_estimate) {
    flags["limit_estimate"] = subspace_json(*rep.flags.limit_estimate);
    flags["limit_diameter_bound"] = finite_or_null(rep.flags.limit_diameter_bound);
  }
  return json{{"steps", std::move(steps)}, {"flags", std::move(flags)}};
}

void write_analyze_csv(std::ostream& out, const SequenceReport& rep) {
  std::size_t n_probes =
      rep.per_step.empty() ? 0 : rep.per_step.front().probe_q.size();
  out << "n,sigma_n,t1_n,diameter_n";
  for (std::size_t k = 0; k < n_probes; ++k) out << ",q_probe_" << k;
  out << "\n";
  for (const StepRecord& s : rep.per_step) {
    out << s.n << ',' << fmt17(s.sigma_n) << ',' << fmt17(s.t1_n) << ','
        << fmt17(s.diameter_n);
    for (double q : s.probe_q) out << ',' << fmt17(q);
    out << "\n";
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) fail(ErrorCode::IoError, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

}  // namespace symsector::io
