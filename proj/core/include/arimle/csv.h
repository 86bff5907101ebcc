#ifndef ARIMLE_CSV_H_
#define ARIMLE_CSV_H_

#include <filesystem>
#include <istream>
#include <string>

#include "arimle/types.h"

namespace arimle {

// Vote CSV: a header row of classifier ids, then one row of m votes per
// sample. Each vote is the literal token "-1" or "1". No quoting. A trailing
// newline and CRLF line endings are accepted on input; output always uses LF.
PredictionMatrix ParsePredictionCsv(std::istream& in);
PredictionMatrix ReadPredictionCsv(const std::filesystem::path& path);
std::string FormatPredictionCsv(const PredictionMatrix& matrix);
void WritePredictionCsv(const std::filesystem::path& path,
                        const PredictionMatrix& matrix);

// Label CSV: a single "label" header followed by one -1/1 token per line.
LabelVector ParseLabelCsv(std::istream& in);
LabelVector ReadLabelCsv(const std::filesystem::path& path);
std::string FormatLabelCsv(const LabelVector& labels);
void WriteLabelCsv(const std::filesystem::path& path, const LabelVector& labels);

}  // namespace arimle

#endif  // ARIMLE_CSV_H_
