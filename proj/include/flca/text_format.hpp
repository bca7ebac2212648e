#pragma once
// Line-oriented text formats. A tree file is a header `tree <n> <root-label>`
// followed by n-1 lines `<child-label> <parent-label>`; a query file holds
// lines `query <f> <label> <label> ...`. Labels are arbitrary non-whitespace
// tokens mapped to dense vertex ids in first-appearance order, so the root
// is always vertex 0. Query files may contain blank lines and `#` comments;
// tree files only blank lines.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "flca/tree.hpp"

namespace flca {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::int32_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::int32_t line() const { return line_; }

 private:
  std::int32_t line_;
};

class UnknownLabelError : public std::runtime_error {
 public:
  UnknownLabelError(std::int32_t line, const std::string& label)
      : std::runtime_error("line " + std::to_string(line) +
                           ": unknown label '" + label + "'"),
        line_(line),
        label_(label) {}

  std::int32_t line() const { return line_; }
  const std::string& label() const { return label_; }

 private:
  std::int32_t line_;
  std::string label_;
};

// Bidirectional label <-> dense id mapping in first-appearance order.
class LabelMap {
 public:
  VertexId intern(std::string_view token);
  std::optional<VertexId> find(std::string_view token) const;
  const std::string& name(VertexId id) const { return names_[id]; }
  std::int32_t size() const { return static_cast<std::int32_t>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> ids_;
};

struct TreeDocument {
  RootedTree tree;
  LabelMap labels;
};

TreeDocument read_tree(std::istream& in);
void write_tree(std::ostream& out, const TreeDocument& doc);

struct Query {
  std::int32_t fault_budget = 0;
  std::vector<VertexId> marks;
  std::int32_t line = 0;  // source line, for diagnostics
};

std::vector<Query> read_queries(std::istream& in, const LabelMap& labels);

}  // namespace flca
