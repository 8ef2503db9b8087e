#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qdyn/exactnum/factor.hpp"

namespace qdyn::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class ExitCode : int { ok = 0, usage = 1, inconclusive_budget = 2 };

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  Effort effort;
  unsigned threads = 1;
  std::string format = "json";  // json or text
};

struct CommandResult {
  nlohmann::ordered_json doc;  // {input, config, results, version}
  ExitCode exit = ExitCode::ok;
  std::string csv;  // per-prime rows when requested
};

// Every command takes polynomial text and throws parse_error on bad input.
CommandResult cmd_orbit(const std::string& f, const std::string& g, unsigned depth, const RunConfig& cfg);
CommandResult cmd_stability(const std::string& f, const std::string& g, unsigned depth, const RunConfig& cfg);
CommandResult cmd_certify(const std::string& f, const std::string& g, unsigned depth, const RunConfig& cfg);
CommandResult cmd_density(const std::string& f, const std::string& a0, std::uint64_t limit, const std::string& g,
                          bool per_prime, unsigned bound_depth, const RunConfig& cfg);
CommandResult cmd_bound(const std::string& f, const std::string& g, unsigned depth, std::uint64_t limit,
                        const RunConfig& cfg);
// mode: enumerate | recursion | sample. mask: one char per level, 'm' for the
// full layer and 'o' for the order-2 layer; empty means all 'm'.
CommandResult cmd_galois(const std::string& mode, unsigned height, std::uint64_t trials, const std::string& mask,
                         const RunConfig& cfg);
CommandResult cmd_classify(const std::string& f, const RunConfig& cfg);

// Renders a document as JSON (format "json") or as flat "path: value" lines.
std::string render(const nlohmann::ordered_json& doc, const std::string& format);

}  // namespace qdyn::cli
