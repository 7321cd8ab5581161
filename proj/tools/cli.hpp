// The `earring` command line: one binary, subcommand style.

#ifndef EARRING_TOOLS_CLI_HPP_
#define EARRING_TOOLS_CLI_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace earring::cli {

  enum class Exit : int { ok = 0, usage = 1, violation = 2 };

  struct CommandResult {
    std::string              command;
    nlohmann::json           input  = nlohmann::json::object();
    nlohmann::json           output = nlohmann::json::object();
    Exit                     exit   = Exit::ok;
    std::string              message;
    std::vector<std::string> text;  // plain-text rendering, one entry per line
    bool                     json = false;

    bool ok() const noexcept { return exit == Exit::ok; }
    // Single JSON object, or the text lines; always newline-terminated.
    std::string render() const;
  };

  // args excludes the program name.
  CommandResult run(std::vector<std::string> const& args);

}  // namespace earring::cli

#endif  // EARRING_TOOLS_CLI_HPP_
