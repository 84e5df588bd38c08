#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "relset/tokenize.hpp"

namespace relset {

enum class InputFormat { Lines, CsvColumns };

struct DatasetSpec {
  std::string path;  // "-" reads standard input
  InputFormat format = InputFormat::Lines;
  // Lines format element separator: "tab", a single character, or "ws" for
  // one set per line made of its whitespace separated words, named by the
  // 0-based line number.
  std::string delimiter = "tab";
  std::size_t min_distinct_elements = 0;
};

struct RawSet {
  std::string id;
  std::vector<std::string> elements;
};

// Lines format: "set_id<TAB>elem<DELIM>elem..." per non-empty line.
std::vector<RawSet> read_lines(std::istream& in, const std::string& delimiter,
                               const std::string& label);
// RFC 4180 CSV; every column becomes a set named "label:header" holding its
// distinct non-empty cells.
std::vector<RawSet> read_csv_columns(std::istream& in, const std::string& label);

std::vector<RawSet> load_raw(const DatasetSpec& spec);

struct TokenizeReport {
  std::size_t dropped_sets = 0;
};

// Sets left without elements, or with fewer distinct elements than
// min_distinct_elements, are dropped.
std::vector<SetRecord> tokenize_sets(const std::vector<RawSet>& raw, const Tokenizer& tok,
                                     std::size_t min_distinct_elements,
                                     TokenizeReport* report = nullptr);

InputFormat parse_format(const std::string& name);

}  // namespace relset
