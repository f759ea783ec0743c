#include "prismres/cli.hpp"

#include "prismres/exact.hpp"
#include "prismres/genfib.hpp"
#include "prismres/prism.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace prismres::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string format_double_17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

struct OutputRecord {
  std::string command;
  ordered_json params = ordered_json::object();
  std::optional<std::string> exact;
  std::optional<double> value;
  std::string method;
  double elapsed_ms = 0.0;
};

void emit(const OutputRecord& record, bool as_json, std::ostream& out) {
  if (!as_json) {
    out << (record.exact ? *record.exact : format_double(record.value.value_or(0.0))) << '\n';
    return;
  }
  ordered_json j;
  j["command"] = record.command;
  j["params"] = record.params;
  if (record.exact) j["exact"] = *record.exact;
  if (record.value) j["float"] = *record.value;
  j["method"] = record.method;
  j["elapsed_ms"] = record.elapsed_ms;
  out << j.dump(2) << '\n';
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

PrismVertex parse_vertex(const std::string& label, int n) {
  PrismVertex v;
  try {
    v = PrismVertex::parse(label);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!v.valid_for(n)) throw UsageError("vertex " + label + " is not in Y_" + std::to_string(n));
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NetworkParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

BigRat parse_resistance(const nlohmann::json& r) {
  if (r.is_string()) return parse_rational(r.get<std::string>());
  if (r.is_number_integer()) return BigRat(BigInt(r.dump(), 10));
  if (r.is_number_float()) return parse_rational(r.dump());
  throw NetworkParseError("edge resistance must be a number or a rational string");
}

template <class Scalar>
std::string scalar_text(const Scalar& value) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return format_double(value);
  } else {
    return to_string(value);
  }
}

template <class Scalar>
std::string network_json(const Network<Scalar>& net) {
  ordered_json j;
  j["vertices"] = net.labels();
  j["edges"] = ordered_json::array();
  for (const auto& e : net.edges()) {
    ordered_json edge;
    edge["u"] = net.labels()[e.u];
    edge["v"] = net.labels()[e.v];
    if constexpr (std::is_same_v<Scalar, double>) {
      edge["r"] = e.resistance;
    } else {
      edge["r"] = to_string(e.resistance);
    }
    j["edges"].push_back(std::move(edge));
  }
  return j.dump(2) + "\n";
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> labels;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, ',')) {
    if (!current.empty()) labels.push_back(current);
  }
  return labels;
}

// --- Command bodies -------------------------------------------------------

struct ResistanceArgs {
  int n = 0;
  std::string from;
  std::string to;
  bool exact = false;
  bool as_float = false;
  bool json = false;
};

int cmd_resistance(const ResistanceArgs& args, std::ostream& out) {
  Stopwatch clock;
  const PrismVertex u = parse_vertex(args.from, args.n);
  const PrismVertex v = parse_vertex(args.to, args.n);
  OutputRecord record;
  record.command = "resistance";
  record.params = {{"n", args.n}, {"from", u.label()}, {"to", v.label()}};
  if (args.as_float) {
    record.value = prism_resistance_float(args.n, u, v);
    record.method = "closed-form-float";
  } else {
    const BigRat r = prism_resistance_exact(args.n, u, v);
    record.exact = to_string(r);
    record.value = to_double(r);
    record.method = "closed-form-exact";
  }
  record.elapsed_ms = clock.elapsed_ms();
  emit(record, args.json, out);
  return kSuccess;
}

struct KirchhoffArgs {
  int n = 0;
  std::string method = "closed";
  int oracle_cap = kDefaultOracleCap;
  bool exact = false;
  bool json = false;
};

int cmd_kirchhoff(const KirchhoffArgs& args, std::ostream& out) {
  Stopwatch clock;
  OutputRecord record;
  record.command = "kirchhoff";
  record.params = {{"n", args.n}, {"method", args.method}};
  record.method = args.method;
  if (args.method == "closed") {
    const BigRat kf = kirchhoff_closed(args.n);
    record.exact = to_string(kf);
    record.value = to_double(kf);
  } else if (args.method == "coth") {
    record.value = kirchhoff_float(args.n, KirchhoffRoute::Coth);
  } else if (args.method == "spectral") {
    record.value = kirchhoff_float(args.n, KirchhoffRoute::Spectral);
  } else {
    if (args.n > args.oracle_cap) {
      throw UsageError("n = " + std::to_string(args.n) + " exceeds the oracle cap " +
                       std::to_string(args.oracle_cap) + " (raise with --oracle-cap or " + kOracleCapEnv + ")");
    }
    if (args.exact) {
      const BigRat kf = kirchhoff_oracle(build_prism(args.n));
      record.exact = to_string(kf);
      record.value = to_double(kf);
    } else {
      record.value = kirchhoff_oracle(to_float(build_prism(args.n)));
    }
  }
  record.elapsed_ms = clock.elapsed_ms();
  emit(record, args.json, out);
  return kSuccess;
}

struct NetArgs {
  std::string file;
  std::string from;
  std::string to;
  std::string keep;
  std::string output;
  bool as_float = false;
  bool json = false;
};

int cmd_net_resistance(const NetArgs& args, std::ostream& out) {
  Stopwatch clock;
  const ExactNetwork net = parse_network_json(read_file(args.file));
  if (!net.find(args.from) || !net.find(args.to)) throw UsageError("unknown vertex label");
  OutputRecord record;
  record.command = "net resistance";
  record.params = {{"file", args.file}, {"from", args.from}, {"to", args.to}};
  record.method = "laplacian-pseudoinverse";
  if (args.as_float) {
    record.value = resistance_oracle(to_float(net), args.from, args.to);
  } else {
    const BigRat r = resistance_oracle(net, args.from, args.to);
    record.exact = to_string(r);
    record.value = to_double(r);
  }
  record.elapsed_ms = clock.elapsed_ms();
  emit(record, args.json, out);
  return kSuccess;
}

int cmd_net_kirchhoff(const NetArgs& args, std::ostream& out) {
  Stopwatch clock;
  const ExactNetwork net = parse_network_json(read_file(args.file));
  OutputRecord record;
  record.command = "net kirchhoff";
  record.params = {{"file", args.file}};
  record.method = "laplacian-pseudoinverse";
  if (args.as_float) {
    record.value = kirchhoff_oracle(to_float(net));
  } else {
    const BigRat kf = kirchhoff_oracle(net);
    record.exact = to_string(kf);
    record.value = to_double(kf);
  }
  record.elapsed_ms = clock.elapsed_ms();
  emit(record, args.json, out);
  return kSuccess;
}

int cmd_net_spantrees(const NetArgs& args, std::ostream& out) {
  Stopwatch clock;
  const ExactNetwork net = parse_network_json(read_file(args.file));
  OutputRecord record;
  record.command = "net spantrees";
  record.params = {{"file", args.file}};
  record.method = "matrix-tree";
  const BigInt count = matrix_tree_count(net);
  record.exact = count.get_str();
  record.value = count.get_d();
  record.elapsed_ms = clock.elapsed_ms();
  emit(record, args.json, out);
  return kSuccess;
}

int cmd_net_reduce(const NetArgs& args, std::ostream& out) {
  const ExactNetwork net = parse_network_json(read_file(args.file));
  const std::vector<std::string> labels = split_labels(args.keep);
  for (const auto& label : labels) {
    if (!net.find(label)) throw UsageError("unknown vertex '" + label + "'");
  }
  std::optional<TerminalSet> keep;
  try {
    keep.emplace(TerminalSet::from_labels(net, labels));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string text = args.as_float ? network_to_json(kron_reduce(to_float(net), *keep))
                                         : network_to_json(kron_reduce(net, *keep));
  write_output(text, args.output, out);
  return kSuccess;
}

int cmd_table(int n, const std::string& format, const std::string& output, std::ostream& out) {
  write_output(format == "json" ? resistance_table_json(n) : resistance_table_csv(n), output, out);
  return kSuccess;
}

int cmd_verify(int n_max, double tol, std::ostream& out) {
  const VerifyReport report = run_verification(n_max, tol);
  std::size_t passed = 0;
  for (const auto& check : report.checks) {
    if (check.passed) {
      ++passed;
      out << "PASS  " << check.name << " (" << check.cases << " cases)\n";
    } else {
      out << "FAIL  " << check.name << ": " << check.counterexample << '\n';
    }
  }
  out << passed << '/' << report.checks.size() << " checks passed for n <= " << n_max << ", tol " << tol << '\n';
  return report.passed() ? kSuccess : kFailure;
}

}  // namespace

ExactNetwork parse_network_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw NetworkParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges")) {
      throw NetworkParseError("network JSON needs \"vertices\" and \"edges\"");
    }
    ExactNetwork net;
    for (const auto& v : doc.at("vertices")) net.add_vertex(v.get<std::string>());
    for (const auto& e : doc.at("edges")) {
      const std::string u = e.at("u").get<std::string>();
      const std::string v = e.at("v").get<std::string>();
      if (!net.find(u) || !net.find(v)) throw NetworkParseError("edge references unknown vertex");
      net.add_edge(u, v, parse_resistance(e.at("r")));
    }
    return net;
  } catch (const NetworkParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw NetworkParseError(std::string("malformed network: ") + e.what());
  }
}

std::string network_to_json(const ExactNetwork& net) { return network_json(net); }
std::string network_to_json(const FloatNetwork& net) { return network_json(net); }

std::string resistance_table_csv(int n) {
  const auto labels = prism_labels(n);
  const auto table = resistance_table_exact(n);
  std::string text;
  for (const auto& label : labels) text += "," + label;
  text += '\n';
  for (std::size_t a = 0; a < labels.size(); ++a) {
    text += labels[a];
    for (std::size_t b = 0; b < labels.size(); ++b) text += "," + format_double_17(to_double(table[a][b]));
    text += '\n';
  }
  return text;
}

std::string resistance_table_json(int n) {
  const auto labels = prism_labels(n);
  const auto table = resistance_table_exact(n);
  ordered_json j;
  j["n"] = n;
  j["labels"] = labels;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table) {
    ordered_json cells = ordered_json::array();
    for (const auto& value : row) cells.push_back(to_string(value));
    rows.push_back(std::move(cells));
  }
  j["resistances"] = std::move(rows);
  return j.dump() + "\n";
}

int default_oracle_cap() {
  if (const char* env = std::getenv(kOracleCapEnv)) {
    try {
      std::size_t used = 0;
      const int cap = std::stoi(env, &used);
      if (used == std::string_view(env).size() && cap > 0) return cap;
    } catch (const std::exception&) {
    }
  }
  return kDefaultOracleCap;
}

bool VerifyReport::passed() const {
  for (const auto& check : checks) {
    if (!check.passed) return false;
  }
  return true;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective resistances, Kirchhoff indices and spanning trees of prism graphs", "prismres"};
  app.require_subcommand(1);

  ResistanceArgs res;
  auto* resistance = app.add_subcommand("resistance", "Effective resistance between two vertices of Y_n");
  resistance->add_option("--n", res.n, "Number of rungs")->required()->check(CLI::PositiveNumber);
  resistance->add_option("--from", res.from, "Vertex label, e.g. p1")->required();
  resistance->add_option("--to", res.to, "Vertex label, e.g. q3")->required();
  auto* exact_flag = resistance->add_flag("--exact", res.exact, "Exact rational output (default)");
  resistance->add_flag("--float", res.as_float, "Binary64 output")->excludes(exact_flag);
  resistance->add_flag("--json", res.json, "Print the full output record as JSON");

  KirchhoffArgs kf;
  kf.oracle_cap = default_oracle_cap();
  auto* kirchhoff = app.add_subcommand("kirchhoff", "Kirchhoff index of Y_n");
  kirchhoff->add_option("--n", kf.n, "Number of rungs")->required()->check(CLI::PositiveNumber);
  kirchhoff->add_option("--method", kf.method, "closed | coth | spectral | oracle")
      ->check(CLI::IsMember({"closed", "coth", "spectral", "oracle"}))
      ->capture_default_str();
  kirchhoff->add_option("--oracle-cap", kf.oracle_cap, "Largest n accepted by the oracle method")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  kirchhoff->add_flag("--exact", kf.exact, "Run the oracle in exact arithmetic");
  kirchhoff->add_flag("--json", kf.json, "Print the full output record as JSON");

  int table_n = 0;
  std::string table_format = "csv";
  std::string table_output;
  auto* table = app.add_subcommand("table", "All-pairs resistance matrix of Y_n");
  table->add_option("--n", table_n, "Number of rungs")->required()->check(CLI::PositiveNumber);
  table->add_option("--format", table_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  table->add_option("--output,-o", table_output, "Output file (default stdout)");

  int verify_n_max = 10;
  double verify_tol = 1e-9;
  auto* verify = app.add_subcommand("verify", "Run the identity suite for n = 1..n-max");
  verify->add_option("--n-max", verify_n_max, "Largest n to check")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--tol", verify_tol, "Float tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();

  NetArgs net_args;
  auto* net = app.add_subcommand("net", "Queries on a network JSON file");
  net->require_subcommand(1);
  auto* net_resistance = net->add_subcommand("resistance", "Effective resistance between two vertices");
  net_resistance->add_option("file", net_args.file, "Network JSON")->required();
  net_resistance->add_option("from", net_args.from, "Vertex label")->required();
  net_resistance->add_option("to", net_args.to, "Vertex label")->required();
  net_resistance->add_flag("--float", net_args.as_float, "Binary64 oracle");
  net_resistance->add_flag("--json", net_args.json, "Print the full output record as JSON");
  auto* net_reduce = net->add_subcommand("reduce", "Kron-reduce onto terminal vertices");
  net_reduce->add_option("file", net_args.file, "Network JSON")->required();
  net_reduce->add_option("--keep", net_args.keep, "Comma-separated terminal labels")->required();
  net_reduce->add_option("--output,-o", net_args.output, "Output file (default stdout)");
  net_reduce->add_flag("--float", net_args.as_float, "Binary64 reduction");
  auto* net_spantrees = net->add_subcommand("spantrees", "Spanning-tree count (matrix-tree theorem)");
  net_spantrees->add_option("file", net_args.file, "Network JSON")->required();
  net_spantrees->add_flag("--json", net_args.json, "Print the full output record as JSON");
  auto* net_kirchhoff = net->add_subcommand("kirchhoff", "Kirchhoff index");
  net_kirchhoff->add_option("file", net_args.file, "Network JSON")->required();
  net_kirchhoff->add_flag("--float", net_args.as_float, "Binary64 oracle");
  net_kirchhoff->add_flag("--json", net_args.json, "Print the full output record as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*resistance) return cmd_resistance(res, out);
    if (*kirchhoff) return cmd_kirchhoff(kf, out);
    if (*table) return cmd_table(table_n, table_format, table_output, out);
    if (*verify) return cmd_verify(verify_n_max, verify_tol, out);
    if (*net_resistance) return cmd_net_resistance(net_args, out);
    if (*net_reduce) return cmd_net_reduce(net_args, out);
    if (*net_spantrees) return cmd_net_spantrees(net_args, out);
    if (*net_kirchhoff) return cmd_net_kirchhoff(net_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NetworkParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DisconnectedNetwork& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  err << app.help();
  return kUsage;
}

}  // namespace prismres::cli
