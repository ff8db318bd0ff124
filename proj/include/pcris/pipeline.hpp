#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pcris/reduction.hpp"

namespace pcris {

// p^pexp * (c_0 + c_1 X + ...) in the residue basis of O_F
struct ValueSpec {
  std::vector<i64> coords{0};
  int pexp = 0;
  OF materialize(const Ctx& ctx) const;
};

struct SlotSpec {
  bool explicit_matrix = false;
  TypeTag type = TypeTag::I;
  ValueSpec a1, a2, alpha{{1}, 0};
  ValueSpec m[2][2];
};

enum class Mode { Full, ClassifyOnly, ReduceOnly, OracleSuite };
const char* mode_name(Mode m);

struct JobConfig {
  i64 p = 0;
  int f = 0;
  int r = 0;  // 0 means r = f
  std::vector<std::pair<int, int>> weights;
  std::vector<SlotSpec> slots;
  std::optional<int> M, N;
  Mode mode = Mode::Full;
  std::uint64_t seed = 0;
  int trials = 100;
  int max_iter = 64;
  bool halt_on_reducible = true;
  bool record_timings = false;
};

// throws Error(ConfigError)
JobConfig parse_config_json(const nlohmann::json& j);
JobConfig parse_config_text(const std::string& text, bool toml);
JobConfig load_config(const std::string& path);

struct Precision {
  int M = 0, N = 0;
  bool overridden = false;
};

// M = 2 p c_max * 4 target iterations, N = max(k_max + 2, c_max + 4)
Precision preflight_precision(const JobConfig& cfg);

enum ExitCode { ExitOk = 0, ExitInternal = 1, ExitReducible = 2, ExitGate = 3, ExitConvergence = 4, ExitConfig = 5 };
int exit_code_for(ErrKind k);

struct RunReport {
  nlohmann::json json;
  int exit_code = ExitOk;
  std::string status;  // ok | reducible | error
  std::string stage;   // failing stage if any
  std::optional<CharDesc> character;
  std::optional<ReductionData> reduction;
  std::optional<DescentCertificate> descent;
  std::optional<Reducibility> reducibility;
  EmbTuple<TypeTag> types;
  std::string dump() const { return json.dump(2); }
};

RunReport run_pipeline(const JobConfig& cfg);

struct SuiteOptions {
  std::uint64_t seed = 1;
  int trials = 100;
  bool inject_adjugate_sign_bug = false;
};

struct SuiteCheck {
  std::string name;
  int trials = 0, failures = 0;
  std::string first_failure;
  bool pass() const { return failures == 0; }
};

struct SuiteSummary {
  std::vector<SuiteCheck> checks;
  bool pass() const;
  nlohmann::json to_json() const;
};

SuiteSummary oracle_suite(const SuiteOptions& opt);

nlohmann::json char_desc_json(const CharDesc& d);

}  // namespace pcris
