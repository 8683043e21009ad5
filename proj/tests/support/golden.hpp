#pragma once
// Golden CLI cases: NAME.args holds one argument per line, NAME.stdout and
// NAME.exit the expected output and exit code, NAME.stderr (optional) the
// expected diagnostics.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "perfclose/commands.hpp"
#include "perfclose/workspace.hpp"

namespace perfclose::golden {

namespace fs = std::filesystem;

inline fs::path root() { return fs::path(PERFCLOSE_GOLDEN_DIR); }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> read_args(const fs::path& p) {
  std::vector<std::string> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

struct Outcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline std::vector<std::string> case_names() {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(root()))
    if (e.path().extension() == ".args") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

inline Outcome run_case(const std::string& name) {
  Outcome o{name, false, {}};
  std::ostringstream out, err;
  int code = run_cli(read_args(root() / (name + ".args")), out, err);
  int want = std::stoi(slurp(root() / (name + ".exit")));
  if (code != want) {
    o.detail = "exit " + std::to_string(code) + ", expected " + std::to_string(want);
    return o;
  }
  if (out.str() != slurp(root() / (name + ".stdout"))) {
    o.detail = "stdout differs:\n" + out.str();
    return o;
  }
  fs::path e = root() / (name + ".stderr");
  if (fs::exists(e) && err.str() != slurp(e)) {
    o.detail = "stderr differs:\n" + err.str();
    return o;
  }
  o.pass = true;
  return o;
}

// Every line a --json case prints is one document with the common fields.
inline Outcome json_shape() {
  Outcome o{"json schema", false, {}};
  int documents = 0;
  for (const std::string& name : case_names()) {
    auto args = read_args(root() / (name + ".args"));
    if (std::find(args.begin(), args.end(), "--json") == args.end()) continue;
    std::istringstream lines(slurp(root() / (name + ".stdout")));
    for (std::string line; std::getline(lines, line);) {
      auto j = nlohmann::json::parse(line, nullptr, false);
      bool ok = !j.is_discarded() && j.is_object() && j.contains("command") && j["command"].is_string() &&
                j.contains("inputs") && j["inputs"].is_object() && j["inputs"].contains("p") &&
                j.contains("result") && j.contains("checks") && j["checks"].is_array();
      if (ok) {
        for (const auto& c : j["checks"])
          ok = ok && c.contains("name") && c["name"].is_string() && c.contains("pass") && c["pass"].is_boolean() &&
               c.contains("detail") && c["detail"].is_string();
      }
      if (!ok) {
        o.detail = name + ": " + line.substr(0, 120);
        return o;
      }
      ++documents;
    }
  }
  o.pass = documents > 0;
  o.detail = std::to_string(documents) + " documents";
  return o;
}

// Defines through the CLI, queries in a second invocation, compares the file
// with the stored copy, then checks load/save reproduces it byte for byte.
inline Outcome workspace_round_trip(const fs::path& scratch) {
  Outcome o{"workspace round trip", false, {}};
  fs::create_directories(scratch);
  fs::path ws = scratch / "session.json";
  fs::remove(ws);
  std::ostringstream out, err;
  int code = run_cli({"--p", "2", "--workspace", ws.string(), "elem", "def", "a", "rt(t,1)+1", ";", "ext", "def",
                      "L", "a", ";", "triple", "def", "X", "[[a, 0],[1, t]]"},
                     out, err);
  if (code != kExitOk || !out.str().empty()) {
    o.detail = "definitions failed: " + err.str();
    return o;
  }
  std::string first = slurp(ws);
  if (first != slurp(root() / "workspace" / "session.json")) {
    o.detail = "saved file differs from golden";
    return o;
  }
  std::ostringstream q, qerr;
  code = run_cli({"--workspace", ws.string(), "ext", "degree", "L", ";", "ext", "member", "L", "a*t"}, q, qerr);
  if (code != kExitOk || q.str() != "2\ntrue\n") {
    o.detail = "reload query gave: " + q.str() + qerr.str();
    return o;
  }
  if (slurp(ws) != first) {
    o.detail = "read-only session rewrote the file";
    return o;
  }
  fs::path again = scratch / "again.json";
  Workspace::load(ws).save(again);
  if (slurp(again) != first) {
    o.detail = "load/save is not byte-stable";
    return o;
  }
  o.pass = true;
  return o;
}

}  // namespace perfclose::golden
