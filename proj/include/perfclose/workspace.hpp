#pragma once

// Named elements, extensions and triples, persisted as the expressions the
// user typed and re-elaborated in definition order on load.

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "perfclose/parser.hpp"

namespace perfclose {

class Workspace {
 public:
  Workspace(PrimeModulus m, int level_cap = kDefaultLevelCap);

  /// Throws std::runtime_error on unreadable files or malformed JSON, and the
  /// parser's errors when a stored expression no longer elaborates.
  static Workspace load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string to_json_text() const;

  PrimeModulus modulus() const { return mod_; }
  int level_cap() const { return level_cap_; }
  ParseContext context() const;

  PerfElem parse(std::string_view text) const { return parse_element(text, context()); }
  PerfMatrix parse_matrix_text(std::string_view text) const { return parse_matrix(text, context()); }

  /// Definitions throw DomainError on invalid or already-used names.
  void define_element(const std::string& name, const std::string& expr);
  void define_extension(const std::string& name, const std::vector<std::string>& generators);
  void define_triple(const std::string& name, const std::string& matrix);

  /// Throw DomainError for unknown names.
  const PerfElem& element(const std::string& name) const;
  const BaseExt& extension(const std::string& name) const;
  const TannakianTriple& triple(const std::string& name) const;

  bool has_name(const std::string& name) const;

 private:
  struct ElementEntry {
    std::string name;
    std::string expr;
    PerfElem value;
  };
  struct ExtensionEntry {
    std::string name;
    std::vector<std::string> generators;
    BaseExt value;
  };
  struct TripleEntry {
    std::string name;
    std::string matrix;
    std::shared_ptr<const TannakianTriple> value;
  };

  void claim(const std::string& name) const;

  PrimeModulus mod_;
  int level_cap_;
  std::vector<ElementEntry> elements_;
  std::vector<ExtensionEntry> extensions_;
  std::vector<TripleEntry> triples_;
};

}  // namespace perfclose
