// Command-line front end: dataset generation, simulation, analysis and
// model construction. Exit codes: 0 success, 2 usage, 3 validation, 4 I/O,
// 5 empty setting context.

#include <bellcp/analysis.hpp>
#include <bellcp/bchsh.hpp>
#include <bellcp/errors.hpp>
#include <bellcp/io.hpp>
#include <bellcp/kh.hpp>
#include <bellcp/quantum.hpp>
#include <bellcp/simulator.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using bellcp::Rational;
using bellcp::io::json;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;
constexpr int kExitEmptyContext = 5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  bool exact = false;
  std::string input;
  std::string out;
  std::string angles;
  std::string settings;
  std::string convention = "spin";
  std::string model;
  std::string source;
  std::optional<std::string> tol;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_angle(const std::string& token) {
  std::string_view body = token;
  double scale = 1.0;
  if (body.size() > 3 && body.substr(body.size() - 3) == "deg") {
    body.remove_suffix(3);
    scale = std::numbers::pi / 180.0;
  }
  double value = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) {
    throw UsageError("--angles: cannot parse '" + token + "' (radians, or degrees with a 'deg' suffix)");
  }
  return value * scale;
}

bellcp::AngleConfig parse_angles(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw UsageError("--angles: expected four comma-separated angles a1,a2,b1,b2");
  return {parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2]), parse_angle(parts[3])};
}

template <class T>
T to_scalar(const Rational& x) {
  if constexpr (bellcp::ScalarTraits<T>::kExact) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

template <class T>
T parse_scalar(const std::string& flag, const std::string& text) {
  try {
    return to_scalar<T>(bellcp::parse_rational(text));
  } catch (const bellcp::InvalidDataset&) {
    throw UsageError(flag + ": cannot parse '" + text + "'");
  }
}

template <class T>
bellcp::SettingDistribution<T> parse_settings(const std::string& text) {
  if (text.empty()) return {};
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw UsageError("--settings: expected four comma-separated probabilities p11,p12,p21,p22");
  std::array<T, 4> entries;
  for (std::size_t c = 0; c < 4; ++c) entries[c] = parse_scalar<T>("--settings", parts[c]);
  return bellcp::SettingDistribution<T>(entries);
}

template <class T>
T tolerance(const Options& opt) {
  if (opt.tol) return parse_scalar<T>("--tol", *opt.tol);
  return bellcp::ScalarTraits<T>::signaling_tolerance();
}

json parse_json_file(const std::string& path) {
  const std::string text = bellcp::io::read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw bellcp::InvalidDataset("'" + path + "' is not valid JSON: " + e.what());
  }
}

template <class T>
bellcp::ObservationalDataset<T> load_dataset(const std::string& path) {
  return bellcp::io::dataset_from_json<T>(parse_json_file(path));
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    bellcp::io::write_file(opt.out, text);
  }
}

json with_schema(json doc) {
  doc["schema"] = bellcp::io::kSchema;
  return doc;
}

template <class T>
json chsh_json(const bellcp::ObservationalDataset<T>& ds) {
  using bellcp::io::probability_to_json;
  const auto corr = bellcp::correlations(ds);
  json correlations = json::object();
  json variants = json::object();
  for (std::size_t c = 0; c < 4; ++c) {
    correlations[std::to_string(bellcp::kContexts[c].i) + std::to_string(bellcp::kContexts[c].j)] =
        probability_to_json(corr[c]);
  }
  for (const auto& v : bellcp::chsh_variants(corr)) variants[v.name()] = probability_to_json(v.value);
  return json{{"chsh", probability_to_json(bellcp::chsh_combination(corr))},
              {"correlations", correlations},
              {"chsh_variants", variants}};
}

template <class T>
int cmd_quantum(const Options& opt) {
  if (opt.angles.empty()) throw UsageError("--angles is required");
  const auto cfg = parse_angles(opt.angles);
  const auto convention = opt.convention == "photon" ? bellcp::AngleConvention::kPhotonPolarization
                                                     : bellcp::AngleConvention::kSpinSinglet;
  const auto ds = bellcp::singlet_dataset<T>(cfg, parse_settings<T>(opt.settings), convention);
  json summary = chsh_json(ds);
  summary["signaling"] = bellcp::io::signaling_to_json(bellcp::signaling_report(ds, tolerance<T>(opt)));
  const json dataset = bellcp::io::dataset_to_json(ds);
  if (opt.out.empty()) {
    summary["dataset"] = dataset;
  } else {
    bellcp::io::write_file(opt.out, bellcp::io::dump_canonical(with_schema(dataset)));
  }
  std::cout << bellcp::io::dump_canonical(with_schema(summary));
  return 0;
}

template <class T>
int cmd_simulate(const Options& opt) {
  if (opt.n == 0) throw UsageError("--n must be at least 1");
  const auto ds = load_dataset<T>(opt.input);
  const auto log = bellcp::simulate(ds, opt.n, opt.seed, opt.source.empty() ? opt.input : opt.source);
  std::ostringstream csv;
  bellcp::io::write_trial_csv(csv, log);
  emit(opt, csv.str());
  if (!opt.out.empty()) {
    bellcp::io::write_file(opt.out + ".meta.json",
                           bellcp::io::dump_canonical(with_schema(bellcp::io::meta_to_json(log.meta))));
  }
  return 0;
}

template <class T>
int cmd_analyze(const Options& opt) {
  std::istringstream in(bellcp::io::read_file(opt.input));
  const auto log = bellcp::io::read_trial_csv(in);
  const auto report = bellcp::analyze<T>(log);
  emit(opt, bellcp::io::dump_canonical(bellcp::io::analysis_to_json(report)));
  return 0;
}

template <class T>
int cmd_jpd(const Options& opt) {
  const auto ds = load_dataset<T>(opt.input);
  json doc{{"model", opt.model}};
  if (opt.model == "kh") {
    const auto jpd = bellcp::build_jpd(ds);
    const T zero = bellcp::ScalarTraits<T>::sum_tolerance();
    const auto matching = bellcp::matching_report(jpd, zero);
    const auto cc = bellcp::chsh_tilde(jpd);
    json conditional = json::object();
    for (std::size_t c = 0; c < 4; ++c) {
      conditional[std::to_string(bellcp::kContexts[c].i) + std::to_string(bellcp::kContexts[c].j)] =
          bellcp::io::probability_to_json(cc.values[c]);
    }
    doc["jpd"] = bellcp::io::six_jpd_to_json(jpd);
    doc["matching"] = json{{"a_excluded", matching.a_excluded},
                           {"b_excluded", matching.b_excluded},
                           {"zero_when_unselected", matching.zero_when_unselected},
                           {"decomposition", matching.decomposition},
                           {"nonzero_when_selected", matching.nonzero_when_selected},
                           {"all", matching.all()}};
    doc["conditional_correlations"] = conditional;
    doc["chsh_tilde"] = bellcp::io::probability_to_json(cc.chsh_tilde);
    doc["unconditional_chsh"] = bellcp::io::probability_to_json(bellcp::unconditional_chsh(jpd));
  } else if (opt.model == "bchsh-fine") {
    const T tol = opt.tol ? parse_scalar<T>("--tol", *opt.tol) : bellcp::ScalarTraits<T>::feasibility_tolerance();
    doc["verdict"] = bellcp::io::fine_verdict_to_json(bellcp::fine_feasibility(ds, tol));
  } else {
    throw UsageError("--model must be 'kh' or 'bchsh-fine'");
  }
  emit(opt, bellcp::io::dump_canonical(with_schema(doc)));
  return 0;
}

template <class T>
int cmd_signaling(const Options& opt) {
  const auto ds = load_dataset<T>(opt.input);
  const json doc = bellcp::io::signaling_to_json(bellcp::signaling_report(ds, tolerance<T>(opt)));
  emit(opt, bellcp::io::dump_canonical(with_schema(doc)));
  return 0;
}

template <class T>
int cmd_chsh(const Options& opt) {
  emit(opt, bellcp::io::dump_canonical(with_schema(chsh_json(load_dataset<T>(opt.input)))));
  return 0;
}

template <class T>
int dispatch(const std::string& command, const Options& opt) {
  if (command == "quantum") return cmd_quantum<T>(opt);
  if (command == "simulate") return cmd_simulate<T>(opt);
  if (command == "analyze") return cmd_analyze<T>(opt);
  if (command == "jpd") return cmd_jpd<T>(opt);
  if (command == "signaling") return cmd_signaling<T>(opt);
  return cmd_chsh<T>(opt);
}

bool exact_from_environment() {
  const char* mode = std::getenv("BELLCP_MODE");
  if (mode == nullptr || std::string_view(mode).empty()) return false;
  if (std::string_view(mode) == "exact") return true;
  if (std::string_view(mode) == "double") return false;
  throw UsageError("BELLCP_MODE must be 'exact' or 'double'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo analysis of CHSH-type experiments"};
  app.require_subcommand(1);
  Options opt;
  bool exact_flag = false;
  app.add_flag("--exact", exact_flag, "Exact rational arithmetic (overrides BELLCP_MODE)");

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--exact", exact_flag, "Exact rational arithmetic (overrides BELLCP_MODE)");
    sub->add_option("--out", opt.out, "Output file (default: standard output)");
  };

  auto* quantum = app.add_subcommand("quantum", "Singlet-state dataset from measurement angles");
  add_common(quantum);
  quantum->add_option("--angles", opt.angles, "a1,a2,b1,b2 in radians, or with a 'deg' suffix")->required();
  quantum->add_option("--settings", opt.settings, "p11,p12,p21,p22 (default uniform)");
  quantum->add_option("--convention", opt.convention, "spin or photon")
      ->check(CLI::IsMember({"spin", "photon"}));
  quantum->add_option("--tol", opt.tol, "Signaling tolerance");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trial log from a dataset");
  add_common(simulate);
  simulate->add_option("dataset", opt.input, "Dataset JSON")->required();
  simulate->add_option("--n", opt.n, "Number of trials")->required();
  simulate->add_option("--seed", opt.seed, "64-bit seed");
  simulate->add_option("--source", opt.source, "Source label for the meta sidecar");

  auto* analyze = app.add_subcommand("analyze", "Statistical report for a trial log");
  add_common(analyze);
  analyze->add_option("log", opt.input, "Trial CSV")->required();

  auto* jpd = app.add_subcommand("jpd", "Joint distribution for a dataset");
  add_common(jpd);
  jpd->add_option("dataset", opt.input, "Dataset JSON")->required();
  jpd->add_option("--model", opt.model, "kh or bchsh-fine")->required();
  jpd->add_option("--tol", opt.tol, "Feasibility tolerance (bchsh-fine)");

  auto* signaling = app.add_subcommand("signaling", "Marginal signaling deltas of a dataset");
  add_common(signaling);
  signaling->add_option("dataset", opt.input, "Dataset JSON")->required();
  signaling->add_option("--tol", opt.tol, "Signaling tolerance");

  auto* chsh = app.add_subcommand("chsh", "Correlations and CHSH values of a dataset");
  add_common(chsh);
  chsh->add_option("dataset", opt.input, "Dataset JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    opt.exact = exact_flag || exact_from_environment();
    return opt.exact ? dispatch<Rational>(command, opt) : dispatch<double>(command, opt);
  } catch (const UsageError& e) {
    std::cerr << "bellcp " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const bellcp::EmptyContext& e) {
    std::cerr << "bellcp " << command << ": " << e.what() << "\n";
    return kExitEmptyContext;
  } catch (const bellcp::IoError& e) {
    std::cerr << "bellcp " << command << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const bellcp::Error& e) {
    std::cerr << "bellcp " << command << ": " << e.what() << "\n";
    return kExitValidation;
  }
}
