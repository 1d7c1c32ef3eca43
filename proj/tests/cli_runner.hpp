#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace opcalc::testing {

struct CliRun {
  int code;
  std::string out;
};

/// Runs the CLI binary with `args` (shell syntax), stderr discarded.
inline CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(OPCALC_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) throw std::runtime_error("cannot start " + cmd);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), f)) out.append(buf.data(), n);
  int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += (c == '\'') ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline std::string strip_newline(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

/// Built-in operator names with the variable set their printed form uses.
inline const std::vector<std::pair<std::string, std::string>>& builtin_operators() {
  static const std::vector<std::pair<std::string, std::string>> ops{
      {"h_a", "r,u"}, {"l_a", "r,u"}, {"b_a", "r,u"}, {"2b_a", "r,u"}, {"c", "r,u"},
      {"identity", "r,u"}, {"J0", "r,u"}, {"J1", "r,u"}, {"J2", "r,u"}, {"J3", "r,u"},
      {"J4", "r,u"}, {"R0", "r,u"}, {"R1", "r,u"}, {"R2", "r,u"}, {"T0", "r,u"},
      {"T1", "r,u"}, {"T2", "r,u"}, {"h", "r,rho"}, {"laplacian", "r,rho,phi"}, {"H", "x,y,z"},
      {"K", "x,y,z"}, {"L_x", "x,y,z"}, {"L_y", "x,y,z"}, {"L_z", "x,y,z"}, {"A_x", "x,y,z"},
      {"A_y", "x,y,z"}, {"A_z", "x,y,z"}, {"B_x", "x,y,z"}, {"B_y", "x,y,z"}, {"B_z", "x,y,z"}};
  return ops;
}

/// Name of the first built-in operator whose show/parse round trip changes
/// its printed form, or "" when all are stable.
inline std::string first_unstable_operator() {
  for (const auto& [name, vars] : builtin_operators()) {
    auto shown = run_cli("show " + name);
    if (shown.code != 0) return name;
    std::string printed = strip_newline(shown.out);
    auto reparsed = run_cli("parse --vars " + vars + " -- " + shell_quote(printed));
    if (reparsed.code != 0 || strip_newline(reparsed.out) != printed) return name;
  }
  return "";
}

}  // namespace opcalc::testing
