#include "trollrole/embedding.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trollrole/errors.h"

namespace trollrole {

EmbeddingTable::EmbeddingTable(std::size_t dim, std::string name)
    : dim_(dim), name_(std::move(name)) {
  if (dim == 0) throw ConfigError("embedding dimension must be positive");
}

void EmbeddingTable::add(const NodeId& id, std::span<const float> values) {
  if (values.size() != dim_) {
    throw ConfigError("vector for " + id.str() + " has " +
                      std::to_string(values.size()) + " components, expected " +
                      std::to_string(dim_));
  }
  for (float v : values) {
    if (!std::isfinite(v)) {
      throw ConfigError("non-finite component in vector for " + id.str());
    }
  }
  if (!index_.emplace(id, ids_.size()).second) {
    throw ConfigError("duplicate id " + id.str() + " in table " + name_);
  }
  ids_.push_back(id);
  values_.insert(values_.end(), values.begin(), values.end());
}

std::optional<std::span<const float>> EmbeddingTable::find(
    const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

void write_embedding_text(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dim() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.ids()[i];
    for (float v : table.row(i)) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, end - buf);
    }
    out << '\n';
  }
}

void save_embedding_file(const std::filesystem::path& path,
                         const EmbeddingTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_embedding_text(out, table);
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

// Splits on runs of spaces/tabs.
std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingTable read_embedding_text(std::istream& in, std::string name) {
  auto fail = [&](std::size_t line_no, const std::string& what) -> FormatError {
    return FormatError((name.empty() ? std::string("vector file")
                                     : name) +
                       ": line " + std::to_string(line_no) + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line)) throw fail(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_ws(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(header[0], count) ||
      !parse_number(header[1], dim) || dim == 0) {
    throw fail(1, "header must be '<count> <dim>'");
  }
  EmbeddingTable table(dim, name);
  std::vector<float> values(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw fail(line_no, "expected " + std::to_string(dim) + " values, got " +
                              std::to_string(fields.size() - 1));
    }
    if (table.size() == count) {
      throw fail(line_no, "more rows than the declared " +
                              std::to_string(count));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      // from_chars rejects a leading '+'.
      std::string_view f = fields[k + 1];
      if (!f.empty() && f.front() == '+') f.remove_prefix(1);
      if (!parse_number(f, values[k])) {
        throw fail(line_no, "bad number '" + std::string(fields[k + 1]) + "'");
      }
      if (!std::isfinite(values[k])) throw fail(line_no, "non-finite value");
    }
    const NodeId id = NodeId::parse(fields[0]);
    if (table.contains(id)) throw fail(line_no, "duplicate id " + id.str());
    table.add(id, values);
  }
  if (table.size() != count) {
    throw fail(line_no, "header declares " + std::to_string(count) +
                            " rows, found " + std::to_string(table.size()));
  }
  return table;
}

EmbeddingTable load_embedding_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_embedding_text(in, path.stem().string());
}

RestrictResult restrict_table(const EmbeddingTable& table,
                              std::span<const NodeId> ids) {
  RestrictResult out{EmbeddingTable(table.dim(), table.name()), {}};
  for (const auto& id : ids) {
    if (out.table.contains(id)) continue;
    if (auto row = table.find(id)) {
      out.table.add(id, *row);
    } else {
      out.missing.push_back(id);
    }
  }
  return out;
}

}  // namespace trollrole
