// commands.hpp — config ingestion and the data-producing subcommands.
// Each command validates its JSON config (unknown keys rejected), runs the
// experiment, and writes CSV/JSON outputs that are byte-identical across
// reruns with the same (config, seed).
#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "noisyvoter/errors.hpp"

namespace nvcli {

using json = nlohmann::json;

// 17 significant digits via to_chars: enough to round-trip any double.
std::string fmt17(double x);

json load_config(const std::string& path);

// Command-line flags that take precedence over config keys.
struct Overrides {
  std::optional<uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
};

// Each returns 0 on success and throws nv::Error otherwise.
int cmd_autocorr(json cfg, const Overrides& ov);
int cmd_tmix_table(json cfg, const Overrides& ov);
int cmd_tv_profile(json cfg, const Overrides& ov);
int cmd_sample(json cfg, const Overrides& ov);

// 3 for resource caps, 2 for config/usage/IO errors.
int exit_code_for(const nv::Error& e);

}  // namespace nvcli
