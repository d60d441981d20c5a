#pragma once

#include <bellcp/analysis.hpp>
#include <bellcp/bchsh.hpp>
#include <bellcp/kh.hpp>
#include <bellcp/observational.hpp>
#include <bellcp/simulator.hpp>

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace bellcp::io {

using nlohmann::json;

inline constexpr const char* kSchema = "bellcp/1";

/// Exact mode: decimal (or "p/q") string. Double mode: JSON number.
template <class T>
json probability_to_json(const T& value);

/// Accepts numbers and numeric strings in either mode. In exact mode a JSON
/// number is read through its shortest decimal form, so 0.1 means 1/10.
template <class T>
T probability_from_json(const json& value);

/// {"pairs": {"11": {"++": p, "+-": p, "-+": p, "--": p}, ...},
///  "settings": {"11": p, "12": p, "21": p, "22": p}}
template <class T>
json dataset_to_json(const ObservationalDataset<T>& ds);

/// Throws InvalidDataset on missing keys or invalid distributions.
template <class T>
ObservationalDataset<T> dataset_from_json(const json& doc);

/// Array of records {"a1", "a2", "b1", "b2", "ra", "rb", "p"} in
/// lexicographic atom order; all 16 support atoms are always present.
template <class T>
json six_jpd_to_json(const SixVarJpd<T>& jpd);

template <class T>
SixVarJpd<T> six_jpd_from_json(const json& doc);

template <class T>
json quad_jpd_to_json(const QuadJpd<T>& jpd);

template <class T>
json fine_verdict_to_json(const FineVerdict<T>& verdict);

template <class T>
json signaling_to_json(const SignalingReport<T>& report);

template <class T>
json analysis_to_json(const AnalysisReport<T>& report);

/// Header `trial_id,ra,rb,a1,a2,b1,b2`, one integer record per line.
void write_trial_csv(std::ostream& out, const TrialLog& log);

/// Throws MalformedRecord (with the 1-based line number) for a bad header,
/// non-integer fields, zero-convention violations or non-increasing ids.
TrialLog read_trial_csv(std::istream& in);

json meta_to_json(const TrialLogMeta& meta);

/// Sorted keys, two-space indent, doubles with 17 significant digits.
std::string dump_canonical(const json& doc);

/// Whole-file helpers; throw IoError on open/read/write failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace bellcp::io
