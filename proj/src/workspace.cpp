#include "perfclose/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "perfclose/errors.hpp"

namespace perfclose {

namespace {

constexpr const char* kFormat = "perfclose-workspace";
constexpr int kVersion = 1;

template <class Entries>
auto find_entry(Entries& entries, const std::string& name) {
  return std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; });
}

}  // namespace

Workspace::Workspace(PrimeModulus m, int level_cap) : mod_(m), level_cap_(level_cap) {
  if (level_cap_ < 0) throw DomainError("level cap must be non-negative");
}

ParseContext Workspace::context() const {
  return ParseContext{mod_, level_cap_, [this](std::string_view name) -> std::optional<PerfElem> {
                        for (const auto& e : elements_) {
                          if (e.name == name) return e.value;
                        }
                        return std::nullopt;
                      }};
}

bool Workspace::has_name(const std::string& name) const {
  return find_entry(elements_, name) != elements_.end() || find_entry(extensions_, name) != extensions_.end() ||
         find_entry(triples_, name) != triples_.end();
}

void Workspace::claim(const std::string& name) const {
  if (!is_valid_name(name)) throw DomainError("invalid name '" + name + "'");
  if (has_name(name)) throw DomainError("name '" + name + "' is already defined");
}

void Workspace::define_element(const std::string& name, const std::string& expr) {
  claim(name);
  PerfElem value = parse(expr);
  elements_.push_back({name, expr, std::move(value)});
}

void Workspace::define_extension(const std::string& name, const std::vector<std::string>& generators) {
  claim(name);
  if (generators.empty()) throw DomainError("an extension needs at least one generator");
  std::vector<PerfElem> gens;
  for (const auto& g : generators) gens.push_back(parse(g));
  auto ext = std::make_shared<const InsepExt>(InsepExt::generate(mod_, gens, level_cap_));
  extensions_.push_back({name, generators, std::move(ext)});
}

void Workspace::define_triple(const std::string& name, const std::string& matrix) {
  claim(name);
  auto triple = std::make_shared<const TannakianTriple>(mod_, parse_matrix_text(matrix));
  triples_.push_back({name, matrix, std::move(triple)});
}

const PerfElem& Workspace::element(const std::string& name) const {
  auto it = find_entry(elements_, name);
  if (it == elements_.end()) throw DomainError("unknown element '" + name + "'");
  return it->value;
}

const BaseExt& Workspace::extension(const std::string& name) const {
  auto it = find_entry(extensions_, name);
  if (it == extensions_.end()) throw DomainError("unknown extension '" + name + "'");
  return it->value;
}

const TannakianTriple& Workspace::triple(const std::string& name) const {
  auto it = find_entry(triples_, name);
  if (it == triples_.end()) throw DomainError("unknown triple '" + name + "'");
  return *it->value;
}

std::string Workspace::to_json_text() const {
  nlohmann::ordered_json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["p"] = mod_.value();
  doc["level_cap"] = level_cap_;
  doc["elements"] = nlohmann::ordered_json::array();
  for (const auto& e : elements_) doc["elements"].push_back({{"name", e.name}, {"expr", e.expr}});
  doc["extensions"] = nlohmann::ordered_json::array();
  for (const auto& e : extensions_) doc["extensions"].push_back({{"name", e.name}, {"generators", e.generators}});
  doc["triples"] = nlohmann::ordered_json::array();
  for (const auto& e : triples_) doc["triples"].push_back({{"name", e.name}, {"matrix", e.matrix}});
  return doc.dump(2) + "\n";
}

void Workspace::save(const std::filesystem::path& path) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write workspace " + tmp.string());
    out << to_json_text();
    if (!out) throw std::runtime_error("failed writing workspace " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Workspace Workspace::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read workspace " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
    if (doc.at("format").get<std::string>() != kFormat) throw std::runtime_error("not a perfclose workspace");
    if (doc.at("version").get<int>() != kVersion) throw std::runtime_error("unsupported workspace version");
    Workspace ws(PrimeModulus(doc.at("p").get<std::uint64_t>()), doc.at("level_cap").get<int>());
    for (const auto& e : doc.at("elements")) {
      ws.define_element(e.at("name").get<std::string>(), e.at("expr").get<std::string>());
    }
    for (const auto& e : doc.at("extensions")) {
      ws.define_extension(e.at("name").get<std::string>(), e.at("generators").get<std::vector<std::string>>());
    }
    for (const auto& e : doc.at("triples")) {
      ws.define_triple(e.at("name").get<std::string>(), e.at("matrix").get<std::string>());
    }
    return ws;
  } catch (const nlohmann::json::exception& ex) {
    throw std::runtime_error("malformed workspace " + path.string() + ": " + ex.what());
  }
}

}  // namespace perfclose
