#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "lfree/certificate.hpp"
#include "lfree/group.hpp"

namespace lfree {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPresentationSchema = "lgroup-presentation/1";
inline constexpr const char* kCertificateSchema = "freeness-certificate/1";

/// A presentation file: the group plus optional chain parameters.
struct PresentationFile {
  GroupPresentation group;
  std::vector<Ordinal> alphas;
  std::vector<ClopenBlock> blocks;
};

Json ambient_to_json(const Ambient& amb);
AmbientPtr ambient_from_json(const Json& j);

Json presentation_to_json(const PresentationFile& p);
PresentationFile presentation_from_json(const Json& j);

Json certificate_to_json(const FreenessCertificate& cert);
FreenessCertificate certificate_from_json(const Json& j);

/// Reads and parses a JSON file; ErrorKind::Io on failure to open or parse.
Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

}  // namespace lfree
