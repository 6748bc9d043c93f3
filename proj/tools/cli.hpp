#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmzv/numeval.hpp"

namespace cmzv::cli {

// Everything a run needs. Unset optionals fall back to per-command defaults.
struct CommandConfig {
    std::string subcommand;
    std::string group = "Z1";
    int degree = 3;
    std::string ring;  // empty: rational unless the input says otherwise
    std::optional<double> tol;
    long d = 0;        // 0: every divisor
    int N = 0;         // 0: no numeric level
    std::string k, z;  // comma lists for polylog
    long cutoff = kDefaultCutoff;
    std::string op;    // product: shuffle|harmonic|concat; duality-test: shuffle|harmonic
    std::vector<std::string> args;
    std::string input, output;

    bool operator==(const CommandConfig&) const = default;
};

// key=value lines, one "arg=" line per positional argument
std::string to_text(const CommandConfig& c);
// keys absent from the text keep the values already in base
CommandConfig config_from_text(const std::string& text, CommandConfig base = {});

// flags > config file > defaults; throws cmzv::parse_error or CLI::ParseError
CommandConfig parse_command(const std::vector<std::string>& args);

// exit status: 0 all checks pass, 1 some check failed, 2 bad input
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(const CommandConfig& c, std::ostream& out, std::ostream& err);

} // namespace cmzv::cli
