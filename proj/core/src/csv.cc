#include "arimle/csv.h"

#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "arimle/error.h"

namespace arimle {
namespace {

std::vector<std::string> SplitFields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

// Distinguishes a malformed token (parse error) from a well-formed integer
// outside {-1, 1}, which the matrix validation reports as NonBinaryEntry.
int ParseVoteToken(const std::string& token, std::size_t line_no) {
  if (token == "1") return 1;
  if (token == "-1") return -1;
  std::size_t consumed = 0;
  int value = 0;
  try {
    value = std::stoi(token, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed == 0 || consumed != token.size()) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                       ": unparsable vote token '" + token +
                                       "'");
  }
  return value;
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  return in;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() +
                                    "' for writing");
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
  }
}

}  // namespace

PredictionMatrix ParsePredictionCsv(std::istream& in) {
  std::string line;
  if (!ReadLine(in, line) || line.empty()) {
    throw Error(ErrorCode::kEmptyMatrix, "missing header row");
  }
  std::vector<std::string> ids = SplitFields(line);
  std::vector<std::vector<int>> grid;
  std::size_t line_no = 1;
  bool saw_blank = false;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) {
      saw_blank = true;
      continue;
    }
    if (saw_blank) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": data after blank line");
    }
    const std::vector<std::string> fields = SplitFields(line);
    if (fields.size() != ids.size()) {
      throw Error(ErrorCode::kRaggedGrid,
                  "line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(ids.size()));
    }
    std::vector<int> row;
    row.reserve(fields.size());
    for (const auto& token : fields) {
      row.push_back(ParseVoteToken(token, line_no));
    }
    grid.push_back(std::move(row));
  }
  return PredictionMatrix::Validate(grid, std::move(ids));
}

PredictionMatrix ReadPredictionCsv(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  return ParsePredictionCsv(in);
}

std::string FormatPredictionCsv(const PredictionMatrix& matrix) {
  std::string out;
  out.reserve(matrix.n() * matrix.m() * 3 + 64);
  for (std::size_t i = 0; i < matrix.m(); ++i) {
    if (i > 0) out += ',';
    out += matrix.ids()[i];
  }
  out += '\n';
  for (std::size_t j = 0; j < matrix.n(); ++j) {
    for (std::size_t i = 0; i < matrix.m(); ++i) {
      if (i > 0) out += ',';
      out += matrix.vote(j, i) > 0 ? "1" : "-1";
    }
    out += '\n';
  }
  return out;
}

void WritePredictionCsv(const std::filesystem::path& path,
                        const PredictionMatrix& matrix) {
  WriteText(path, FormatPredictionCsv(matrix));
}

LabelVector ParseLabelCsv(std::istream& in) {
  std::string line;
  if (!ReadLine(in, line) || line != "label") {
    throw Error(ErrorCode::kParse, "label CSV must start with a 'label' header");
  }
  std::vector<Vote> labels;
  std::size_t line_no = 1;
  while (ReadLine(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const int v = ParseVoteToken(line, line_no);
    if (v != 1 && v != -1) {
      throw Error(ErrorCode::kNonBinaryEntry,
                  "line " + std::to_string(line_no) + ": label must be -1 or 1");
    }
    labels.push_back(static_cast<Vote>(v));
  }
  return LabelVector(std::move(labels));
}

LabelVector ReadLabelCsv(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  return ParseLabelCsv(in);
}

std::string FormatLabelCsv(const LabelVector& labels) {
  std::string out = "label\n";
  for (Vote v : labels.values()) {
    out += v > 0 ? "1\n" : "-1\n";
  }
  return out;
}

void WriteLabelCsv(const std::filesystem::path& path,
                   const LabelVector& labels) {
  WriteText(path, FormatLabelCsv(labels));
}

}  // namespace arimle
