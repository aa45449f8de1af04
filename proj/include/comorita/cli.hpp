#pragma once
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "comorita/errors.hpp"
#include "comorita/morita.hpp"

namespace comorita::cli {

// Malformed definition text, with the position of the offending token.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line), column(column) {}
  std::size_t line, column;
};

// Unknown command, entity or option.
struct UsageError : Error {
  using Error::Error;
};

struct NamedCoalgebra {
  std::string name;
  Coalgebra value;
};
struct NamedModule {
  std::string name;
  PresentedModule value;
};
struct NamedComodule {
  std::string name;
  std::string coalgebra;
  Comodule value;
};
struct NamedBicomodule {
  std::string name;
  std::string left, right;
  Bicomodule value;
};
struct NamedContext {
  std::string name;
  std::string d, c, m, n;
  MoritaContext value;
};

struct DefinitionFile {
  std::optional<Ring> ring;
  std::vector<NamedCoalgebra> coalgebras;
  std::vector<NamedModule> modules;
  std::vector<NamedComodule> comodules;
  std::vector<NamedBicomodule> bicomodules;
  std::vector<NamedContext> contexts;

  const NamedCoalgebra* coalgebra(const std::string& name) const;
  const NamedModule* module(const std::string& name) const;
  const NamedComodule* comodule(const std::string& name) const;
  const NamedBicomodule* bicomodule(const std::string& name) const;
  const NamedContext* context(const std::string& name) const;
  bool defines(const std::string& name) const;
};

DefinitionFile parse(const std::string& text);
// canonical, fully expanded text; parse(render(f)) describes the same objects
std::string render(const DefinitionFile& f);
bool same_definitions(const DefinitionFile& a, const DefinitionFile& b);
std::string digest(const std::string& text);

struct Options {
  std::string probes = "standard";
  std::vector<std::string> tests;
  std::optional<long> seed;
  std::size_t max_rank = 64;
  bool timings = false;
};

struct Outcome {
  int exit_code = 0; // 0 pass, 1 verification failure, 2 usage or parse error
  nlohmann::json report;
  std::string summary;
};

const std::vector<std::string>& commands();
Outcome run(const std::string& command, const std::string& text, const std::string& source,
            const std::vector<std::string>& args, const Options& options = {});

} // namespace comorita::cli
