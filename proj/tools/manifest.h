#ifndef ARIMLE_TOOLS_MANIFEST_H_
#define ARIMLE_TOOLS_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

#include "arimle/json_util.h"

namespace arimle::cli {

// Hex SHA-256 of a file's bytes. Throws kIo if it cannot be read.
std::string Sha256File(const std::filesystem::path& path);

// UTC ISO-8601 time. Honours SOURCE_DATE_EPOCH so repeated runs can be made
// byte-identical.
std::string Timestamp();

std::string ToolVersion();

// {tool, version, subcommand, flags, inputs: [{path, sha256}], timestamp}
Json BuildManifest(const std::string& subcommand, Json flags,
                   const std::vector<std::filesystem::path>& inputs);

}  // namespace arimle::cli

#endif  // ARIMLE_TOOLS_MANIFEST_H_
