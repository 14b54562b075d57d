#include "tpds/specfile.hpp"

#include "tpds/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace tpds {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) schema(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!ok.contains(key)) schema(path, "unknown key '" + key + "'");
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> numbers_at(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number_at(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

Expr expr_at(const json& j, const std::string& path, const Scope& scope) {
  if (j.is_number()) return Expr::number(j.get<double>());
  if (!j.is_string()) schema(path, "expected a number or an expression string");
  try {
    return parse_expr(j.get<std::string>(), scope);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

json expr_json(const Expr& e) {
  if (e.kind() == Expr::Kind::Number) return e.value();
  return to_string(e);
}

std::vector<Expr> square_at(const json& j, int n, const std::string& path, const Scope& scope) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n)) schema(path, "expected " + std::to_string(n) + " rows");
  std::vector<Expr> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != static_cast<std::size_t>(n)) {
      schema(row_path, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < j[r].size(); ++c) out.push_back(expr_at(j[r][c], row_path + "[" + std::to_string(c) + "]", scope));
  }
  return out;
}

json square_json(const std::vector<Expr>& entries, int n) {
  json rows = json::array();
  for (int r = 0; r < n; ++r) {
    json row = json::array();
    for (int c = 0; c < n; ++c) row.push_back(expr_json(entries[static_cast<std::size_t>(r * n + c)]));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

Experiment parse_experiment(const json& j) {
  only_keys(j, "experiment", {"step", "samples", "horizon", "z0", "x0", "delta_floor", "samples_per_segment",
                              "max_iters", "q_max", "tol", "perturbation", "seeds", "coeff_first", "coeffs"});
  Experiment e;
  const auto num = [&](const char* key, std::optional<double>& dst) {
    if (j.contains(key)) dst = number_at(j[key], std::string("experiment.") + key);
  };
  const auto integer = [&](const char* key, std::optional<int>& dst) {
    if (j.contains(key)) dst = int_at(j[key], std::string("experiment.") + key);
  };
  const auto vec = [&](const char* key, std::optional<std::vector<double>>& dst) {
    if (j.contains(key)) dst = numbers_at(j[key], std::string("experiment.") + key);
  };
  num("step", e.step);
  integer("samples", e.samples);
  num("horizon", e.horizon);
  vec("z0", e.z0);
  vec("x0", e.x0);
  num("delta_floor", e.delta_floor);
  integer("samples_per_segment", e.samples_per_segment);
  integer("max_iters", e.max_iters);
  integer("q_max", e.q_max);
  num("tol", e.tol);
  num("perturbation", e.perturbation);
  integer("coeff_first", e.coeff_first);
  vec("coeffs", e.coeffs);
  if (j.contains("seeds")) {
    const json& s = j["seeds"];
    if (!s.is_array()) schema("experiment.seeds", "expected an array of integers");
    std::vector<std::uint64_t> seeds;
    for (const auto& v : s) {
      if (!v.is_number_unsigned()) schema("experiment.seeds", "expected nonnegative integers");
      seeds.push_back(v.get<std::uint64_t>());
    }
    e.seeds = std::move(seeds);
  }
  return e;
}

json experiment_json(const Experiment& e) {
  json j = json::object();
  const auto put = [&j](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("step", e.step);
  put("samples", e.samples);
  put("horizon", e.horizon);
  put("z0", e.z0);
  put("x0", e.x0);
  put("delta_floor", e.delta_floor);
  put("samples_per_segment", e.samples_per_segment);
  put("max_iters", e.max_iters);
  put("q_max", e.q_max);
  put("tol", e.tol);
  put("perturbation", e.perturbation);
  put("seeds", e.seeds);
  put("coeff_first", e.coeff_first);
  put("coeffs", e.coeffs);
  return j;
}

}  // namespace

const TimeVaryingSystem& SystemSpec::linear() const {
  if (!is_linear()) throw Error(ErrorCode::InvalidSystem, "'" + name + "' is not a linear system");
  return std::get<TimeVaryingSystem>(system);
}

const NonlinearSystem& SystemSpec::nonlinear() const {
  if (is_linear()) throw Error(ErrorCode::InvalidSystem, "'" + name + "' is not a nonlinear system");
  return std::get<NonlinearSystem>(system);
}

SystemSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "line " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
  }
  only_keys(doc, "document", {"meta", "linear", "nonlinear", "experiment"});
  if (!doc.contains("meta")) schema("document", "missing 'meta'");
  if (doc.contains("linear") == doc.contains("nonlinear")) {
    schema("document", "exactly one of 'linear' and 'nonlinear' is required");
  }

  const json& meta = doc["meta"];
  only_keys(meta, "meta", {"name", "n", "interval", "period"});
  if (!meta.contains("name") || !meta["name"].is_string()) schema("meta.name", "expected a string");
  if (!meta.contains("n")) schema("meta", "missing 'n'");
  const std::string name = meta["name"].get<std::string>();
  const int n = int_at(meta["n"], "meta.n");
  if (n < 1) schema("meta.n", "must be positive");
  std::optional<double> period;
  if (meta.contains("period") && !meta["period"].is_null()) period = number_at(meta["period"], "meta.period");
  double a = 0.0;
  double b = period.value_or(1.0);
  if (meta.contains("interval")) {
    const std::vector<double> iv = numbers_at(meta["interval"], "meta.interval");
    if (iv.size() != 2) schema("meta.interval", "expected [a, b]");
    a = iv[0];
    b = iv[1];
  } else if (doc.contains("linear")) {
    schema("meta", "missing 'interval'");
  }

  Experiment experiment;
  if (doc.contains("experiment")) experiment = parse_experiment(doc["experiment"]);

  if (doc.contains("linear")) {
    const json& lin = doc["linear"];
    only_keys(lin, "linear", {"segments"});
    if (!lin.contains("segments") || !lin["segments"].is_array()) schema("linear.segments", "expected an array");
    std::vector<Segment> segments;
    for (std::size_t k = 0; k < lin["segments"].size(); ++k) {
      const std::string path = "linear.segments[" + std::to_string(k) + "]";
      const json& s = lin["segments"][k];
      only_keys(s, path, {"start", "end", "matrix"});
      if (!s.contains("start") || !s.contains("end") || !s.contains("matrix")) schema(path, "needs start, end and matrix");
      segments.push_back(Segment{number_at(s["start"], path + ".start"), number_at(s["end"], path + ".end"),
                                 square_at(s["matrix"], n, path + ".matrix", Scope::time_only())});
    }
    return SystemSpec{name, n, a, b, period, TimeVaryingSystem(n, a, b, std::move(segments), period), experiment};
  }

  const json& nl = doc["nonlinear"];
  only_keys(nl, "nonlinear", {"rhs", "input", "jacobian", "domain_box"});
  std::optional<Expr> input;
  if (nl.contains("input")) input = expr_at(nl["input"], "nonlinear.input", Scope::time_only());
  const Scope scope = Scope::state(n, input.has_value());
  if (!nl.contains("rhs") || !nl["rhs"].is_array() || nl["rhs"].size() != static_cast<std::size_t>(n)) {
    schema("nonlinear.rhs", "expected " + std::to_string(n) + " expressions");
  }
  std::vector<Expr> rhs;
  for (std::size_t k = 0; k < nl["rhs"].size(); ++k) rhs.push_back(expr_at(nl["rhs"][k], "nonlinear.rhs[" + std::to_string(k) + "]", scope));
  std::optional<std::vector<Expr>> jac;
  if (nl.contains("jacobian")) jac = square_at(nl["jacobian"], n, "nonlinear.jacobian", scope);
  if (!nl.contains("domain_box") || !nl["domain_box"].is_array()) schema("nonlinear.domain_box", "expected an array");
  std::vector<std::pair<double, double>> box;
  for (std::size_t k = 0; k < nl["domain_box"].size(); ++k) {
    const std::string path = "nonlinear.domain_box[" + std::to_string(k) + "]";
    const std::vector<double> iv = numbers_at(nl["domain_box"][k], path);
    if (iv.size() != 2) schema(path, "expected [lo, hi]");
    box.emplace_back(iv[0], iv[1]);
  }
  return SystemSpec{name, n, a, b, period,
                    NonlinearSystem(std::move(rhs), std::move(input), std::move(jac), period, std::move(box)),
                    experiment};
}

SystemSpec read_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.filename().string() + ": " + e.what());
  }
}

std::string serialize_spec(const SystemSpec& spec) {
  json doc = json::object();
  json meta = json::object();
  meta["name"] = spec.name;
  meta["n"] = spec.n;
  meta["interval"] = json::array({spec.a, spec.b});
  if (spec.period) meta["period"] = *spec.period;
  doc["meta"] = std::move(meta);

  if (spec.is_linear()) {
    json segments = json::array();
    for (const Segment& s : spec.linear().segments()) {
      json seg = json::object();
      seg["start"] = s.t_start;
      seg["end"] = s.t_end;
      seg["matrix"] = square_json(s.entries, spec.n);
      segments.push_back(std::move(seg));
    }
    doc["linear"] = json{{"segments", std::move(segments)}};
  } else {
    const NonlinearSystem& sys = spec.nonlinear();
    json nl = json::object();
    json rhs = json::array();
    for (const Expr& e : sys.rhs()) rhs.push_back(expr_json(e));
    nl["rhs"] = std::move(rhs);
    if (sys.input()) nl["input"] = expr_json(*sys.input());
    if (sys.jacobian_exprs()) nl["jacobian"] = square_json(*sys.jacobian_exprs(), spec.n);
    json box = json::array();
    for (const auto& [lo, hi] : sys.domain_box()) box.push_back(json::array({lo, hi}));
    nl["domain_box"] = std::move(box);
    doc["nonlinear"] = std::move(nl);
  }
  json exp = experiment_json(spec.experiment);
  if (!exp.empty()) doc["experiment"] = std::move(exp);
  return doc.dump(2) + "\n";
}

bool same_spec(const SystemSpec& x, const SystemSpec& y) {
  if (x.name != y.name || x.n != y.n || x.a != y.a || x.b != y.b || x.period != y.period) return false;
  if (!(x.experiment == y.experiment) || x.is_linear() != y.is_linear()) return false;
  if (x.is_linear()) {
    const auto& sx = x.linear().segments();
    const auto& sy = y.linear().segments();
    if (sx.size() != sy.size()) return false;
    for (std::size_t k = 0; k < sx.size(); ++k) {
      if (sx[k].t_start != sy[k].t_start || sx[k].t_end != sy[k].t_end || sx[k].entries != sy[k].entries) return false;
    }
    return true;
  }
  const NonlinearSystem& nx = x.nonlinear();
  const NonlinearSystem& ny = y.nonlinear();
  return nx.rhs() == ny.rhs() && nx.input() == ny.input() && nx.jacobian_exprs() == ny.jacobian_exprs() &&
         nx.period() == ny.period() && nx.domain_box() == ny.domain_box();
}

}  // namespace tpds
