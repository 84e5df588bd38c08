#include "relset/ingest.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <istream>
#include <unordered_set>

namespace relset {

namespace {

[[noreturn]] void fail_at(const std::string& label, std::size_t line, const std::string& what) {
  throw IngestError(label + ":" + std::to_string(line) + ": " + what);
}

void validate_text(const std::string& text, const std::string& label, std::size_t line) {
  std::u32string cps;
  try {
    cps = decode_utf8(text);
  } catch (const IngestError& e) {
    fail_at(label, line, e.what());
  }
  if (cps.find(kSentinel) != std::u32string::npos) {
    fail_at(label, line, "input contains the reserved code point U+FFFF");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; };
  while (i < s.size()) {
    while (i < s.size() && space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

InputFormat parse_format(const std::string& name) {
  if (name == "lines") return InputFormat::Lines;
  if (name == "csv" || name == "csv-columns") return InputFormat::CsvColumns;
  throw ConfigError("unknown input format: " + name);
}

std::vector<RawSet> read_lines(std::istream& in, const std::string& delimiter,
                               const std::string& label) {
  const bool ws = delimiter == "ws";
  char sep = '\t';
  if (!ws && delimiter != "tab") {
    if (delimiter.size() != 1) throw ConfigError("delimiter must be tab, ws or one character");
    sep = delimiter[0];
  }
  std::vector<RawSet> out;
  std::unordered_set<std::string> ids;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    validate_text(line, label, lineno);
    RawSet set;
    if (ws) {
      set.id = std::to_string(lineno - 1);
      set.elements = split_ws(line);
    } else {
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) fail_at(label, lineno, "expected set_id<TAB>elements");
      set.id = line.substr(0, tab);
      if (set.id.empty()) fail_at(label, lineno, "empty set id");
      for (auto& e : split(line.substr(tab + 1), sep)) {
        if (!e.empty()) set.elements.push_back(std::move(e));
      }
    }
    if (!ids.insert(set.id).second) fail_at(label, lineno, "duplicate set id '" + set.id + "'");
    out.push_back(std::move(set));
  }
  if (in.bad()) throw IngestError(label + ": read error");
  return out;
}

std::vector<RawSet> read_csv_columns(std::istream& in, const std::string& label) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false, after_quote = false;
  std::size_t line = 1, record_line = 1;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = after_quote = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
    record_line = line;
  };
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in.peek() == '\n') in.get();
      ++line;
      end_record();
    } else if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else {
      if (after_quote) fail_at(label, line, "unexpected character after closing quote");
      field_started = true;
      field.push_back(c);
    }
  }
  if (in.bad()) throw IngestError(label + ": read error");
  if (quoted) fail_at(label, record_line, "unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  if (records.empty()) return {};

  const auto& header = records.front();
  std::vector<RawSet> out(header.size());
  std::vector<std::unordered_set<std::string>> seen(header.size());
  std::unordered_set<std::string> ids;
  for (std::size_t j = 0; j < header.size(); ++j) {
    out[j].id = label + ":" + header[j];
    if (!ids.insert(out[j].id).second) fail_at(label, 1, "duplicate column '" + header[j] + "'");
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      fail_at(label, r + 1,
              "record has " + std::to_string(rec.size()) + " fields, header has " +
                  std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < rec.size(); ++j) {
      if (rec[j].empty()) continue;
      validate_text(rec[j], label, r + 1);
      if (seen[j].insert(rec[j]).second) out[j].elements.push_back(rec[j]);
    }
  }
  return out;
}

std::vector<RawSet> load_raw(const DatasetSpec& spec) {
  const bool stdin_input = spec.path == "-";
  const std::string label =
      stdin_input ? "-" : std::filesystem::path(spec.path).filename().string();
  std::ifstream file;
  if (!stdin_input) {
    file.open(spec.path, std::ios::binary);
    if (!file) throw IngestError("cannot open " + spec.path);
  }
  std::istream& in = stdin_input ? std::cin : file;
  return spec.format == InputFormat::Lines ? read_lines(in, spec.delimiter, label)
                                           : read_csv_columns(in, label);
}

std::vector<SetRecord> tokenize_sets(const std::vector<RawSet>& raw, const Tokenizer& tok,
                                     std::size_t min_distinct_elements, TokenizeReport* report) {
  std::vector<SetRecord> out;
  out.reserve(raw.size());
  std::size_t dropped = 0;
  for (const auto& r : raw) {
    if (min_distinct_elements > 0) {
      std::unordered_set<std::string> distinct(r.elements.begin(), r.elements.end());
      if (distinct.size() < min_distinct_elements) {
        ++dropped;
        continue;
      }
    }
    SetRecord set = tok.make_set(r.id, r.elements);
    if (set.size() == 0) {
      ++dropped;
      continue;
    }
    out.push_back(std::move(set));
  }
  if (report) report->dropped_sets = dropped;
  return out;
}

}  // namespace relset
