#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pud/descriptor.hpp"
#include "pud/feature_index.hpp"
#include "pud/image.hpp"

namespace pud {

struct ManifestEntry {
    std::string relativePath;  // generic form, '/' separated
    std::string imageId;
    std::string classLabel;
};

struct DatasetManifest {
    std::filesystem::path root;
    std::vector<ManifestEntry> entries;  // sorted by relativePath
};

struct Rejection {
    std::string path;
    std::string reason;
};

struct IngestResult {
    DatasetManifest manifest;
    std::vector<Rejection> rejected;
};

// Accepts either a directory (class label = immediate parent directory name,
// image id = relative path) or a manifest text file whose lines read
// `relative/path.png,label[,id]`, resolved against the file's directory.
// Blank lines and lines starting with '#' are ignored. Entries that do not
// exist or have no known image decoder are rejected, not fatal.
IngestResult ingest(const std::filesystem::path& source);

// Decodes PNG/JPEG/BMP (anything the codec layer reads) into RGB.
RasterImage load_raster(const std::filesystem::path& path);

struct ExtractOptions {
    DescriptorKind kind = DescriptorKind::PUD;
    PudParams params;
};

struct ExtractResult {
    FeatureIndex index;
    std::vector<Rejection> rejected;
};

std::vector<double> compute_descriptor(const RasterImage& img, const ExtractOptions& options);

// One record per decodable manifest entry, in manifest order.
ExtractResult extract_index(const DatasetManifest& manifest, const ExtractOptions& options);

}  // namespace pud
