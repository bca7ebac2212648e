#include "flca/text_format.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace flca {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(std::move(token));
  return tokens;
}

std::int32_t parse_int(const std::string& token, std::int32_t line,
                       const char* what) {
  std::int32_t value = 0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size()) {
    throw ParseError(line, std::string(what) + " '" + token +
                               "' is not an integer");
  }
  return value;
}

// Reads the next line that has any tokens; returns false at end of input.
bool next_content_line(std::istream& in, std::int32_t& line_no,
                       std::vector<std::string>& tokens, bool skip_comments) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (skip_comments && tokens.front().front() == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

VertexId LabelMap::intern(std::string_view token) {
  const auto [it, inserted] =
      ids_.try_emplace(std::string(token), static_cast<VertexId>(names_.size()));
  if (inserted) names_.emplace_back(token);
  return it->second;
}

std::optional<VertexId> LabelMap::find(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TreeDocument read_tree(std::istream& in) {
  std::int32_t line_no = 0;
  std::vector<std::string> tokens;

  if (!next_content_line(in, line_no, tokens, /*skip_comments=*/false)) {
    throw ParseError(line_no + 1, "missing 'tree <n> <root-label>' header");
  }
  const std::int32_t header_line = line_no;
  if (tokens.size() != 3 || tokens[0] != "tree") {
    throw ParseError(line_no, "expected 'tree <n> <root-label>'");
  }
  const std::int32_t n = parse_int(tokens[1], line_no, "vertex count");
  if (n < 1) {
    throw ParseError(line_no, "vertex count must be >= 1, got " + tokens[1]);
  }

  LabelMap labels;
  labels.intern(tokens[2]);  // root becomes vertex 0
  std::vector<VertexId> parents(static_cast<std::size_t>(n), kNoVertex);
  std::vector<bool> has_parent(static_cast<std::size_t>(n), false);

  auto intern_checked = [&](const std::string& token) {
    if (labels.find(token)) return labels.intern(token);
    if (labels.size() == n) {
      throw ParseError(line_no, "label '" + token + "' is distinct label number " +
                                    std::to_string(n + 1) +
                                    ", header declares " + std::to_string(n));
    }
    return labels.intern(token);
  };

  for (std::int32_t edge = 0; edge < n - 1; ++edge) {
    if (!next_content_line(in, line_no, tokens, /*skip_comments=*/false)) {
      throw ParseError(line_no + 1,
                       "expected " + std::to_string(n - 1) +
                           " edge lines, found " + std::to_string(edge));
    }
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected '<child-label> <parent-label>'");
    }
    const VertexId child = intern_checked(tokens[0]);
    const VertexId parent = intern_checked(tokens[1]);
    if (child == 0) {
      throw ParseError(line_no, "root '" + tokens[0] + "' listed as a child");
    }
    if (has_parent[child]) {
      throw ParseError(line_no, "vertex '" + tokens[0] + "' has two parents");
    }
    has_parent[child] = true;
    parents[child] = parent;
  }

  if (next_content_line(in, line_no, tokens, /*skip_comments=*/false)) {
    throw ParseError(line_no, "unexpected content after " +
                                  std::to_string(n - 1) + " edge lines");
  }

  try {
    return TreeDocument{RootedTree::from_parents(std::move(parents)),
                        std::move(labels)};
  } catch (const Error& e) {
    // Structurally a cycle among the edges; there is no single offending
    // line, so point at the header that promised a tree.
    throw ParseError(header_line, e.what());
  }
}

void write_tree(std::ostream& out, const TreeDocument& doc) {
  const RootedTree& tree = doc.tree;
  out << "tree " << tree.size() << ' ' << doc.labels.name(tree.root()) << '\n';
  for (VertexId v = 0; v < tree.size(); ++v) {
    if (v == tree.root()) continue;
    out << doc.labels.name(v) << ' ' << doc.labels.name(tree.parent(v)) << '\n';
  }
}

std::vector<Query> read_queries(std::istream& in, const LabelMap& labels) {
  std::vector<Query> queries;
  std::int32_t line_no = 0;
  std::vector<std::string> tokens;
  while (next_content_line(in, line_no, tokens, /*skip_comments=*/true)) {
    if (tokens[0] != "query") {
      throw ParseError(line_no, "expected 'query <f> <label> ...', got '" +
                                    tokens[0] + "'");
    }
    if (tokens.size() < 3) {
      throw ParseError(line_no, "query needs a budget and at least one label");
    }
    Query q;
    q.line = line_no;
    q.fault_budget = parse_int(tokens[1], line_no, "fault budget");
    if (q.fault_budget < 1) {
      throw ParseError(line_no, "fault budget must be >= 1, got " + tokens[1]);
    }
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const auto id = labels.find(tokens[i]);
      if (!id) throw UnknownLabelError(line_no, tokens[i]);
      q.marks.push_back(*id);
    }
    queries.push_back(std::move(q));
  }
  return queries;
}

}  // namespace flca
