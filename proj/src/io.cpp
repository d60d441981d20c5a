#include <bellcp/io.hpp>

#include <bellcp/errors.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bellcp::io {
namespace {

constexpr std::array<const char*, 4> kContextKeys{"11", "12", "21", "22"};
constexpr std::array<const char*, 4> kCellKeys{"++", "+-", "-+", "--"};

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InvalidDataset(std::string("missing key '") + key + "'");
  }
  return doc.at(key);
}

std::string side_name(Side side) { return side == Side::kA ? "A" : "B"; }

void dump(const json& doc, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (doc.type()) {
    case json::value_t::object: {
      if (doc.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : doc.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        dump(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (doc.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < doc.size(); ++k) {
        if (k > 0) out += ",\n";
        out += inner;
        dump(doc[k], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      // Negative zero prints as 0.
      const double value = doc.get<double>();
      out += format_double(value == 0 ? 0.0 : value);
      return;
    }
    default:
      out += doc.dump();
  }
}

std::string shortest_decimal(double value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  (void)ec;
  return std::string(buffer.data(), ptr);
}

}  // namespace

template <class T>
json probability_to_json(const T& value) {
  if constexpr (ScalarTraits<T>::kExact) {
    return format_rational(value);
  } else {
    return value;
  }
}

template <class T>
T probability_from_json(const json& value) {
  if (value.is_string()) {
    const Rational exact = parse_rational(value.get<std::string>());
    if constexpr (ScalarTraits<T>::kExact) {
      return exact;
    } else {
      return exact.convert_to<double>();
    }
  }
  if (!value.is_number()) throw InvalidDataset("probability must be a number or numeric string");
  const double d = value.get<double>();
  if constexpr (ScalarTraits<T>::kExact) {
    return parse_rational(shortest_decimal(d));
  } else {
    return d;
  }
}

template <class T>
json dataset_to_json(const ObservationalDataset<T>& ds) {
  json pairs = json::object();
  json settings = json::object();
  for (std::size_t c = 0; c < 4; ++c) {
    json entry = json::object();
    for (std::size_t k = 0; k < 4; ++k) {
      entry[kCellKeys[k]] = probability_to_json(ds.pairs()[c].entries()[k]);
    }
    pairs[kContextKeys[c]] = entry;
    settings[kContextKeys[c]] = probability_to_json(ds.settings().entries()[c]);
  }
  return json{{"pairs", pairs}, {"settings", settings}};
}

template <class T>
ObservationalDataset<T> dataset_from_json(const json& doc) {
  const json& pairs = require(doc, "pairs");
  const json& settings = require(doc, "settings");
  std::array<PairDistribution<T>, 4> dists;
  std::array<T, 4> setting_entries;
  for (std::size_t c = 0; c < 4; ++c) {
    const json& pair = require(pairs, kContextKeys[c]);
    std::array<T, 4> entries;
    for (std::size_t k = 0; k < 4; ++k) entries[k] = probability_from_json<T>(require(pair, kCellKeys[k]));
    dists[c] = PairDistribution<T>(entries);
    setting_entries[c] = probability_from_json<T>(require(settings, kContextKeys[c]));
  }
  return ObservationalDataset<T>(dists, SettingDistribution<T>(setting_entries));
}

template <class T>
json six_jpd_to_json(const SixVarJpd<T>& jpd) {
  std::map<SixAtom, T> all = jpd.weights();
  for (const SixAtom& atom : kSupport) all.try_emplace(atom, T(0));
  json records = json::array();
  for (const auto& [atom, p] : all) {
    records.push_back(json{{"a1", atom.a1}, {"a2", atom.a2}, {"b1", atom.b1}, {"b2", atom.b2},
                           {"ra", atom.ra}, {"rb", atom.rb}, {"p", probability_to_json(p)}});
  }
  return records;
}

template <class T>
SixVarJpd<T> six_jpd_from_json(const json& doc) {
  if (!doc.is_array()) throw InvalidDataset("jpd must be an array of atom records");
  std::map<SixAtom, T> weights;
  for (const json& rec : doc) {
    auto field = [&rec](const char* key) {
      const json& v = require(rec, key);
      if (!v.is_number_integer()) throw InvalidDataset(std::string("atom field '") + key + "' must be an integer");
      return v.get<int>();
    };
    const SixAtom atom{field("a1"), field("a2"), field("b1"), field("b2"), field("ra"), field("rb")};
    if (!weights.emplace(atom, probability_from_json<T>(require(rec, "p"))).second) {
      throw InvalidDataset("duplicate atom in jpd");
    }
  }
  return SixVarJpd<T>(std::move(weights));
}

template <class T>
json quad_jpd_to_json(const QuadJpd<T>& jpd) {
  json records = json::array();
  for (const QuadAtom& q : kQuadAtoms) {
    records.push_back(json{{"a1", q.a1}, {"a2", q.a2}, {"b1", q.b1}, {"b2", q.b2},
                           {"p", probability_to_json(jpd(q))}});
  }
  return records;
}

template <class T>
json fine_verdict_to_json(const FineVerdict<T>& verdict) {
  json variants = json::object();
  for (const auto& v : verdict.variants) variants[v.name()] = probability_to_json(v.value);
  json out{{"feasible", verdict.feasible},
           {"chsh_feasible", verdict.chsh_feasible},
           {"methods_agree", verdict.methods_agree},
           {"distance", probability_to_json(verdict.distance)},
           {"chsh_variants", variants}};
  out["witness"] = verdict.witness ? quad_jpd_to_json(*verdict.witness) : json(nullptr);
  out["violated_inequality"] = verdict.violated_inequality ? json(*verdict.violated_inequality) : json(nullptr);
  return out;
}

template <class T>
json signaling_to_json(const SignalingReport<T>& report) {
  json a = json::object();
  json b = json::object();
  for (int own : {1, 2}) {
    for (int value : {1, -1}) {
      const std::size_t k = setting_slot(own) * 2 + outcome_slot(value);
      const std::string key = std::to_string(own) + (value == 1 ? "+" : "-");
      a[key] = probability_to_json(report.a_side_deltas[k]);
      b[key] = probability_to_json(report.b_side_deltas[k]);
    }
  }
  return json{{"a_side_deltas", a},
              {"b_side_deltas", b},
              {"max_delta", probability_to_json(report.max_delta)},
              {"no_signaling", report.no_signaling}};
}

template <class T>
json analysis_to_json(const AnalysisReport<T>& report) {
  const auto& est = report.estimate;
  json counts = json::object();
  json per_context = json::object();
  for (std::size_t c = 0; c < 4; ++c) {
    json cells = json::object();
    for (std::size_t k = 0; k < 4; ++k) cells[kCellKeys[k]] = est.counts[c][k];
    counts[kContextKeys[c]] = cells;
    per_context[kContextKeys[c]] = est.context_counts[c];
  }
  json variants = json::object();
  for (const auto& v : report.variants) variants[v.name()] = probability_to_json(v.value);

  json tests = json::array();
  for (const auto& st : report.signaling_tests) {
    tests.push_back(json{{"side", side_name(st.side)},
                         {"setting", st.own},
                         {"outcome", st.value},
                         {"p1", st.test.p1},
                         {"p2", st.test.p2},
                         {"n1", st.test.n1},
                         {"n2", st.test.n2},
                         {"z", st.test.z},
                         {"p_value", st.test.p_value},
                         {"p_bonferroni", st.test.p_bonferroni}});
  }
  json signaling = signaling_to_json(report.signaling);
  signaling["tests"] = tests;

  json fine{{"status", report.fine_status}, {"tolerance", report.fine_tolerance}};
  if (report.fine) fine["verdict"] = fine_verdict_to_json(*report.fine);

  return json{{"schema", kSchema},
              {"n", est.n},
              {"n_per_context", per_context},
              {"counts", counts},
              {"empirical_dataset", dataset_to_json(est.dataset)},
              {"chsh", {{"value", probability_to_json(report.chsh)}, {"se", report.chsh_se}}},
              {"chsh_variants", variants},
              {"signaling", signaling},
              {"fine", fine}};
}

void write_trial_csv(std::ostream& out, const TrialLog& log) {
  out << "trial_id,ra,rb,a1,a2,b1,b2\n";
  std::string line;
  for (const TrialRecord& r : log.records) {
    line.clear();
    line += std::to_string(r.trial_id);
    for (int v : {r.ra, r.rb, r.a1, r.a2, r.b1, r.b2}) {
      line += ',';
      line += std::to_string(v);
    }
    line += '\n';
    out << line;
  }
}

TrialLog read_trial_csv(std::istream& in) {
  TrialLog log;
  std::string line;
  std::size_t line_no = 0;
  auto strip = [](std::string& s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  };
  if (!std::getline(in, line)) throw MalformedRecord(1, "missing header");
  ++line_no;
  strip(line);
  if (line != "trial_id,ra,rb,a1,a2,b1,b2") {
    throw MalformedRecord(1, "expected header 'trial_id,ra,rb,a1,a2,b1,b2'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    strip(line);
    if (line.empty()) continue;
    std::array<long long, 7> fields{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t f = 0; f < fields.size(); ++f) {
      auto [next, ec] = std::from_chars(p, end, fields[f]);
      if (ec != std::errc() || next == p) throw MalformedRecord(line_no, "field " + std::to_string(f + 1) + " is not an integer");
      p = next;
      if (f + 1 < fields.size()) {
        if (p == end || *p != ',') throw MalformedRecord(line_no, "expected 7 comma-separated fields");
        ++p;
      }
    }
    if (p != end) throw MalformedRecord(line_no, "trailing characters");
    if (fields[0] < 0) throw MalformedRecord(line_no, "negative trial_id");
    for (std::size_t f = 1; f < 7; ++f) {
      if (fields[f] < -1 || fields[f] > 2) throw MalformedRecord(line_no, "value out of range");
    }
    TrialRecord r;
    r.trial_id = static_cast<std::uint64_t>(fields[0]);
    r.ra = static_cast<int>(fields[1]);
    r.rb = static_cast<int>(fields[2]);
    r.a1 = static_cast<int>(fields[3]);
    r.a2 = static_cast<int>(fields[4]);
    r.b1 = static_cast<int>(fields[5]);
    r.b2 = static_cast<int>(fields[6]);
    if (!satisfies_zero_convention(r)) {
      throw MalformedRecord(line_no, "outcomes do not match the selected settings");
    }
    const std::uint64_t expected = log.records.empty() ? 0 : log.records.back().trial_id + 1;
    if (log.records.empty() ? r.trial_id != 0 : r.trial_id < expected) {
      throw MalformedRecord(line_no, "trial_id must start at 0 and increase strictly");
    }
    log.records.push_back(r);
  }
  log.meta.n = log.records.size();
  return log;
}

json meta_to_json(const TrialLogMeta& meta) {
  return json{{"seed", meta.seed}, {"n", meta.n}, {"source", meta.source}};
}

std::string dump_canonical(const json& doc) {
  std::string out;
  dump(doc, out, 0);
  out += '\n';
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

#define BELLCP_INSTANTIATE(T)                                                   \
  template json probability_to_json(const T&);                                  \
  template T probability_from_json(const json&);                                \
  template json dataset_to_json(const ObservationalDataset<T>&);                \
  template ObservationalDataset<T> dataset_from_json(const json&);              \
  template json six_jpd_to_json(const SixVarJpd<T>&);                           \
  template SixVarJpd<T> six_jpd_from_json(const json&);                         \
  template json quad_jpd_to_json(const QuadJpd<T>&);                            \
  template json fine_verdict_to_json(const FineVerdict<T>&);                    \
  template json signaling_to_json(const SignalingReport<T>&);                   \
  template json analysis_to_json(const AnalysisReport<T>&);

BELLCP_INSTANTIATE(double)
BELLCP_INSTANTIATE(Rational)

#undef BELLCP_INSTANTIATE

}  // namespace bellcp::io
