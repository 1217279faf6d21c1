#pragma once

#include <cctype>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commnet/graph.hpp"
#include "commnet/timeutil.hpp"

namespace commnet {

struct CsvOptions {
  char delimiter = ',';
  bool header = true;    // a header row is required to map columns
  bool lenient = true;   // skip bad rows instead of stopping at the first
};

struct Diagnostic {
  std::size_t line = 0;  // 1-based, header included
  std::string message;
};

struct ParseResult {
  TemporalGraph graph;
  std::vector<Diagnostic> diagnostics;  // rejected rows (plus fatal errors)
  std::vector<Diagnostic> warnings;     // accepted rows with a note
  std::size_t rows_total = 0;           // data rows encountered
  std::size_t rows_accepted = 0;
  bool ok = true;  // false after a fatal error or a strict-mode rejection
};

namespace detail {

// One line split under RFC 4180 quoting: fields may be wrapped in double
// quotes, with "" as the escape.
inline std::vector<std::string> split_csv(std::string_view line, char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string csv_escape(std::string_view field, char delim) {
  bool needs = field.find(delim) != std::string_view::npos ||
               field.find('"') != std::string_view::npos ||
               field.find('\n') != std::string_view::npos ||
               field.find('\r') != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string trim_ws(std::string s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

struct ColumnMap {
  int source = -1;
  int target = -1;
  int kind = -1;
  int tweet_id = -1;  // optional column
  int timestamp = -1;

  std::optional<std::string> bind(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string name = trim_ws(header[i]);
      for (char& c : name) c = static_cast<char>(std::tolower(c));
      int idx = static_cast<int>(i);
      if (name == "source") source = idx;
      else if (name == "target") target = idx;
      else if (name == "kind") kind = idx;
      else if (name == "tweet_id") tweet_id = idx;
      else if (name == "timestamp") timestamp = idx;
    }
    if (source < 0) return "missing required column 'source'";
    if (target < 0) return "missing required column 'target'";
    if (kind < 0) return "missing required column 'kind'";
    if (timestamp < 0) return "missing required column 'timestamp'";
    return std::nullopt;
  }
};

}  // namespace detail

/// Parses an interaction edge list. Expected header columns: source, target,
/// kind, tweet_id, timestamp (any order, extras ignored, tweet_id may be
/// absent entirely). Lenient mode skips bad rows with a line-numbered
/// diagnostic; otherwise the first bad row stops the parse with ok=false.
/// Timestamps without a timezone are read as UTC and noted in warnings.
inline ParseResult parse_csv(std::istream& in,
                             const CsvOptions& opt = CsvOptions{}) {
  ParseResult res;
  std::vector<Interaction> rows;
  detail::ColumnMap cols;
  std::string line;
  std::size_t lineno = 0;
  bool have_cols = !opt.header;
  if (!opt.header) {
    cols.source = 0;
    cols.target = 1;
    cols.kind = 2;
    cols.tweet_id = 3;
    cols.timestamp = 4;
  }

  auto reject = [&](std::size_t ln, std::string msg) {
    res.diagnostics.push_back(Diagnostic{ln, std::move(msg)});
    if (!opt.lenient) res.ok = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = detail::split_csv(line, opt.delimiter);

    if (!have_cols) {
      if (auto err = cols.bind(fields)) {
        res.diagnostics.push_back(Diagnostic{lineno, *err});
        res.ok = false;
        return res;
      }
      have_cols = true;
      continue;
    }

    ++res.rows_total;
    auto field = [&](int idx) -> std::optional<std::string> {
      if (idx < 0) return std::string();
      if (static_cast<std::size_t>(idx) >= fields.size()) return std::nullopt;
      return fields[static_cast<std::size_t>(idx)];
    };

    auto src_raw = field(cols.source);
    auto tgt_raw = field(cols.target);
    auto kind_raw = field(cols.kind);
    auto ts_raw = field(cols.timestamp);
    auto tid_raw = field(cols.tweet_id);
    if (!src_raw || !tgt_raw || !kind_raw || !ts_raw) {
      reject(lineno, "row has fewer fields than the header");
      if (!res.ok) return res;
      continue;
    }

    auto src = UserId::parse(*src_raw);
    if (!src) {
      reject(lineno, "empty source handle");
      if (!res.ok) return res;
      continue;
    }
    auto tgt = UserId::parse(*tgt_raw);
    if (!tgt) {
      reject(lineno, "empty target handle");
      if (!res.ok) return res;
      continue;
    }
    auto kind = parse_kind(detail::trim_ws(*kind_raw));
    if (!kind) {
      reject(lineno, "unknown kind '" + detail::trim_ws(*kind_raw) + "'");
      if (!res.ok) return res;
      continue;
    }
    auto ts = parse_rfc3339(detail::trim_ws(*ts_raw));
    if (!ts) {
      reject(lineno, "unparseable timestamp '" + detail::trim_ws(*ts_raw) + "'");
      if (!res.ok) return res;
      continue;
    }
    if (!ts->had_zone)
      res.warnings.push_back(
          Diagnostic{lineno, "timestamp has no timezone, assuming UTC"});

    Interaction i{*src, *tgt, *kind, detail::trim_ws(tid_raw.value_or("")),
                  ts->value};
    if (auto err = validate_interaction(i)) {
      reject(lineno, *err);
      if (!res.ok) return res;
      continue;
    }
    ++res.rows_accepted;
    rows.push_back(std::move(i));
  }

  if (!have_cols) {
    res.diagnostics.push_back(Diagnostic{lineno, "missing header row"});
    res.ok = false;
  }
  res.graph = TemporalGraph::from_interactions(std::move(rows));
  return res;
}

/// Canonical CSV form of a temporal graph: fixed header, rows in time order,
/// RFC 3339 timestamps, minimal quoting. parse_csv of the output rebuilds an
/// identical graph.
inline std::string serialize_csv(const TemporalGraph& g, char delim = ',') {
  std::string out;
  const char* names[] = {"source", "target", "kind", "tweet_id", "timestamp"};
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) out += delim;
    out += names[i];
  }
  out += '\n';
  for (const Interaction& i : g.interactions()) {
    out += detail::csv_escape(i.source.str(), delim);
    out += delim;
    out += detail::csv_escape(i.target.str(), delim);
    out += delim;
    out += to_string(i.kind);
    out += delim;
    out += detail::csv_escape(i.tweet_id, delim);
    out += delim;
    out += format_rfc3339(i.timestamp);
    out += '\n';
  }
  return out;
}

}  // namespace commnet
