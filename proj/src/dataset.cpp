#include "pud/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "pud/errors.hpp"

namespace pud {
namespace fs = std::filesystem;
namespace {

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

std::string trim(std::string s) {
    const auto notSpace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notSpace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notSpace).base(), s.end());
    return s;
}

std::optional<std::string> check_readable(const fs::path& p) {
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) {
        return "file does not exist";
    }
    if (!cv::haveImageReader(p.string())) {
        return "no decoder recognises this file";
    }
    return std::nullopt;
}

IngestResult ingest_directory(const fs::path& root) {
    IngestResult result;
    result.manifest.root = root;
    for (const auto& de : fs::recursive_directory_iterator(root)) {
        if (!de.is_regular_file() || !has_image_extension(de.path())) {
            continue;
        }
        const fs::path rel = fs::relative(de.path(), root);
        ManifestEntry e;
        e.relativePath = rel.generic_string();
        e.imageId = e.relativePath;
        e.classLabel = rel.has_parent_path() ? rel.parent_path().filename().string() : "";
        if (e.classLabel.empty()) {
            result.rejected.push_back({e.relativePath, "image is not inside a class directory"});
            continue;
        }
        if (auto why = check_readable(de.path())) {
            result.rejected.push_back({e.relativePath, *why});
            continue;
        }
        result.manifest.entries.push_back(std::move(e));
    }
    return result;
}

IngestResult ingest_manifest_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open manifest '" + file.string() + "'");
    }
    IngestResult result;
    result.manifest.root = file.parent_path();
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(trim(field));
        }
        if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty()) {
            throw Error(ErrorCode::DataError, file.string() + ":" + std::to_string(lineNo) +
                                                  ": expected 'path,label[,id]'");
        }
        ManifestEntry e;
        e.relativePath = fs::path(fields[0]).generic_string();
        e.classLabel = fields[1];
        e.imageId = fields.size() == 3 && !fields[2].empty() ? fields[2] : e.relativePath;
        if (auto why = check_readable(result.manifest.root / e.relativePath)) {
            result.rejected.push_back({e.relativePath, *why});
            continue;
        }
        result.manifest.entries.push_back(std::move(e));
    }
    return result;
}

}  // namespace

IngestResult ingest(const fs::path& source) {
    std::error_code ec;
    IngestResult result;
    if (fs::is_directory(source, ec)) {
        result = ingest_directory(source);
    } else if (fs::is_regular_file(source, ec)) {
        result = ingest_manifest_file(source);
    } else {
        throw Error(ErrorCode::IoError, "dataset source '" + source.string() + "' does not exist");
    }

    auto& entries = result.manifest.entries;
    std::sort(entries.begin(), entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.relativePath < b.relativePath; });
    std::sort(result.rejected.begin(), result.rejected.end(),
              [](const Rejection& a, const Rejection& b) { return a.path < b.path; });

    std::set<std::string> ids;
    for (const ManifestEntry& e : entries) {
        if (!ids.insert(e.imageId).second) {
            throw Error(ErrorCode::DataError, "duplicate image id '" + e.imageId + "'");
        }
    }
    if (entries.empty() && result.rejected.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no images found in '" + source.string() + "'");
    }
    return result;
}

RasterImage load_raster(const fs::path& path) {
    const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (bgr.empty()) {
        throw Error(ErrorCode::DataError, "cannot decode image '" + path.string() + "'");
    }
    if (bgr.cols < RasterImage::kMinSide || bgr.rows < RasterImage::kMinSide) {
        throw Error(ErrorCode::ImageTooSmall, "image '" + path.string() + "' is " +
                                                  std::to_string(bgr.cols) + "x" +
                                                  std::to_string(bgr.rows));
    }
    std::vector<Rgb> pixels;
    pixels.reserve(static_cast<std::size_t>(bgr.rows) * static_cast<std::size_t>(bgr.cols));
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            pixels.push_back({row[x][2], row[x][1], row[x][0]});
        }
    }
    return RasterImage(bgr.cols, bgr.rows, std::move(pixels));
}

std::vector<double> compute_descriptor(const RasterImage& img, const ExtractOptions& options) {
    if (options.kind == DescriptorKind::HSV) {
        return extract_hsv_histogram(img);
    }
    return extract_pud(img, options.params).h;
}

ExtractResult extract_index(const DatasetManifest& manifest, const ExtractOptions& options) {
    const int n = static_cast<int>(manifest.entries.size());
    std::vector<std::optional<std::vector<double>>> descriptors(static_cast<std::size_t>(n));
    std::vector<std::string> errors(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) {
        const ManifestEntry& e = manifest.entries[static_cast<std::size_t>(i)];
        try {
            descriptors[static_cast<std::size_t>(i)] =
                compute_descriptor(load_raster(manifest.root / e.relativePath), options);
        } catch (const Error& err) {
            errors[static_cast<std::size_t>(i)] = std::string(to_string(err.code())) + ": " + err.what();
        } catch (const cv::Exception& err) {
            errors[static_cast<std::size_t>(i)] = std::string("DataError: ") + err.what();
        }
    }

    ExtractResult result;
    result.index.kind = options.kind;
    result.index.dim = options.kind == DescriptorKind::HSV ? kHsvHistogramDim : kPudDim;
    result.index.beta1 = options.kind == DescriptorKind::HSV ? 0.0 : options.params.beta1;
    result.index.beta2 = options.kind == DescriptorKind::HSV ? 0.0 : options.params.beta2;
    for (int i = 0; i < n; ++i) {
        const ManifestEntry& e = manifest.entries[static_cast<std::size_t>(i)];
        const auto& d = descriptors[static_cast<std::size_t>(i)];
        if (!d) {
            result.rejected.push_back({e.relativePath, errors[static_cast<std::size_t>(i)]});
            continue;
        }
        result.index.records.push_back(
            {e.imageId, e.classLabel, std::vector<float>(d->begin(), d->end())});
    }
    return result;
}

}  // namespace pud
